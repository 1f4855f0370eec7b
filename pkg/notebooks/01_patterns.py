# coding: utf-8

# # Admissible patterns
#
# A pattern is a set of b^m grid cells at resolution b^-m whose cells are
# separated by every elementary interval of volume b^-m. Any point set with
# one point in each cell of a pattern is a (0,m,d)-net. This notebook counts
# patterns, checks the strip bijection in two dimensions and looks at how
# patterns overlap.

# In[1]:

import math

import numpy as np

from netsubset import Params
from netsubset.patterns import (
    count_patterns_exact_d2,
    count_patterns_upper,
    enumerate_patterns,
    lps_compose,
    lps_decompose,
    overlap_census,
    project_pattern,
)

# ## Small families
#
# In two dimensions the count is (b!)^(m b^(m-1)). In higher dimensions the
# product of the two-dimensional counts over the last d-1 axes bounds it.

# In[2]:

for b, m, d in [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3), (2, 2, 3), (3, 1, 3)]:
    params = Params(b, m, d)
    A = len(enumerate_patterns(params))
    bound = math.exp(count_patterns_upper(params))
    print(f"b={b} m={m} d={d}: A={A:4d}  bound={bound:8.0f}")

# In[3]:

print(count_patterns_exact_d2(2, 3).exact, count_patterns_exact_d2(5, 4).log10)

# A pattern drawn as a 0/1 matrix. Each row, column and 2x2 block holds one cell.

# In[4]:

pat = enumerate_patterns(Params(2, 2, 2))[5]
grid = np.zeros((4, 4), dtype=int)
grid[tuple(np.array(pat.cells).T)] = 1
print(grid.T[::-1])

# ## Strips and permutations
#
# Splitting the first axis into b strips gives b patterns of order m-1,
# one per strip, and each row block carries a permutation telling which
# strip owns which sub-row.

# In[5]:

dec = lps_decompose(pat)
print(dec.perms)
print([p.cells for p in dec.subpatterns])
assert lps_compose(dec) == pat

# Projections of a three dimensional pattern onto any pair of axes are two
# dimensional patterns, which is where the counting bound comes from.

# In[6]:

p3 = enumerate_patterns(Params(2, 2, 3))[17]
for axes in [(0, 1), (0, 2), (1, 2)]:
    print(axes, project_pattern(p3, axes).cells)

# ## Overlaps
#
# The second moment of the number of fully occupied patterns depends on how
# many cells pairs of patterns share.

# In[7]:

census = overlap_census(enumerate_patterns(Params(2, 2, 3)))
print(census.A, census.M_value, census.N0, census.N0_lower_bound)
for ell, n in sorted(census.N_ell.items()):
    print(f"  share {ell} cells: {n} pairs")
