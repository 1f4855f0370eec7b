# coding: utf-8

# # Monte Carlo
#
# Each trial draws N points from its own counter-based stream and runs the
# exact search. Estimates carry a Wilson interval and are compared with the
# analytic bounds.

# In[1]:

from netsubset import Params
from netsubset.experiments import estimate_containment, estimate_occupancy, sweep
from netsubset.probability import occupancy_exact

# In[2]:

print(occupancy_exact(4, 2, 4), estimate_occupancy(4, 2, 4, 10**5, seed=42))

# In[3]:

rec = estimate_containment(Params(2, 1, 2, 4), trials=20000, master_seed=1)
print(rec.p_hat, (rec.ci_low, rec.ci_high), rec.exact)

# A sweep over N for b=2, m=2, d=2. The sufficient and necessary sample sizes
# are marked by row.

# In[4]:

res = sweep(Params(2, 2, 2), [8, 12, 16, 24, 32, 48, 64], trials=2000, master_seed=7)
print(res.to_csv())
print("sufficient", res.sufficient_N, "necessary", res.necessary_N)

# In one dimension there is a single pattern, so containment is plain
# occupancy.

# In[5]:

for N in [4, 8, 16]:
    r = estimate_containment(Params(2, 2, 1, N), trials=5000, master_seed=3)
    print(N, r.p_hat, occupancy_exact(4, 4, N))
