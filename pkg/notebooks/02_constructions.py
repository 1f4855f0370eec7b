# coding: utf-8

# # Building and checking nets
#
# For a prime base b the Faure matrices give (0,m,d)-nets for every d up to
# b+1. The last coordinate is i/b^m and the rest are powers of the Pascal
# matrix applied to the digits of i.

# In[1]:

import numpy as np

from netsubset import Params, generate_net, is_net, star_discrepancy
from netsubset.constructions import NetExistenceError, pascal_matrix, sample_uniform

# In[2]:

print(pascal_matrix(3, 3, 1))
net = generate_net(3, 2, 3)
print(net.coords)
print(is_net(net, Params(3, 2, 3)))

# Every coordinate is an exact multiple of b^-m.

# In[3]:

print(np.asarray(net.exact)[:4])

# Beyond b+1 dimensions no net exists once m is at least 2.

# In[4]:

try:
    generate_net(2, 2, 4)
except NetExistenceError as exc:
    print(exc)

# A uniform sample of the same size almost never is a net. The check names
# the first elementary interval whose count is wrong.

# In[5]:

sample = sample_uniform(3, seed=1, count=9)
print(is_net(sample, Params(3, 2, 3)).reason)

# ## Discrepancy
#
# Nets have small star discrepancy. N D*_N stays bounded by a multiple of m
# for the constructed nets, while random points do worse.

# In[6]:

for m in range(1, 7):
    net = generate_net(2, m, 2)
    rand = sample_uniform(2, seed=m, count=2**m)
    print(f"m={m}: net {len(net) * star_discrepancy(net):6.3f}   random {len(rand) * star_discrepancy(rand):6.3f}")
