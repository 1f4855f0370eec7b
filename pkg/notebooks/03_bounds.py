# coding: utf-8

# # How likely is a random set to contain a net?
#
# Let p be the probability that N uniform points hit every cell of one fixed
# pattern. With A patterns the chance that some pattern is fully hit lies
# between a Paley-Zygmund lower bound and the union bound A p.

# In[1]:

import numpy as np

from netsubset import Params
from netsubset.probability import (
    exact_containment_bruteforce,
    na_bounds_p,
    necessary_N,
    occupancy_exact,
    pz_sandwich,
    sufficient_N,
)

# In[2]:

print(occupancy_exact(4, 2, 4))
r = pz_sandwich(Params(2, 1, 2, 4), with_exact=True)
print(r.pz_lower, r.exact, r.markov_upper)

# The sandwich across sample sizes at b=2, m=1, d=2.

# In[3]:

print(" N    pz      exact   markov")
for N in [2, 3, 4, 6, 8, 12, 16, 24, 32]:
    r = pz_sandwich(Params(2, 1, 2, N), with_exact=True)
    print(f"{N:2d}  {r.pz_lower:.4f}  {r.exact:.4f}  {min(r.markov_upper, 1):.4f}")

# p itself is squeezed between two product bounds that follow from negative
# association of the cell counts.

# In[4]:

for N in [4, 16, 64, 256]:
    params = Params(2, 2, 2, N)
    lo, hi = na_bounds_p(params)
    print(N, round(lo, 5), round(occupancy_exact(16, 4, N), 5), round(hi, 5))

# ## Thresholds
#
# Roughly b^(md) m ln b points suffice, and fewer than
# b^(md) / (b!)^(m(d-1)/b) are not enough for the expected count to grow.

# In[5]:

for b, d in [(2, 2), (3, 2), (2, 3)]:
    row = [(sufficient_N(b, d, m, 0.1), round(necessary_N(b, d, m), 1)) for m in range(1, 5)]
    print(b, d, row)

# In[6]:

ratio = np.array([sufficient_N(2, 2, m, 0.0) / necessary_N(2, 2, m) for m in range(1, 12)])
print(np.round(ratio, 2))
print(exact_containment_bruteforce(Params(2, 1, 3, 8)))
