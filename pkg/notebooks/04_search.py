# coding: utf-8

# # Finding a net inside a point set
#
# The search asks whether some admissible pattern has all its cells
# occupied. For small families it scans the enumerated list, otherwise it
# backtracks column by column over the occupied cells.

# In[1]:

import numpy as np

from netsubset import Params, PointSet, find_net_subset, generate_net, is_net
from netsubset.constructions import sample_uniform
from netsubset.search import occupied_cells

# Hide a net among random points and get it back.

# In[2]:

params = Params(2, 3, 2)
rng = np.random.default_rng(5)
pts = np.vstack([generate_net(2, 3, 2).coords, rng.random((40, 2))])
P = PointSet(pts[rng.permutation(len(pts))], 2)
res = find_net_subset(P, params)
print(res.pattern.cells)
print(res.point_indices, bool(is_net(P.subset(res.point_indices), params)))

# Both strategies give the same answer.

# In[3]:

small = Params(2, 2, 2)
agree = 0
for seed in range(100):
    Q = sample_uniform(2, seed, 14)
    agree += find_net_subset(Q, small, "enumerate") == find_net_subset(Q, small, "backtrack")
print(agree)

# Occupied cells for a random sample: a net needs b^m of them, but that is
# not enough by itself.

# In[4]:

Q = sample_uniform(2, 3, 10)
occ = occupied_cells(Q, small)
print(len(occ), find_net_subset(Q, small).found)
