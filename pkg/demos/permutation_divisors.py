# %% [markdown]
# # Permutation matrices in positive characteristic
#
# Elementary divisors of a permutation matrix come from a closed form in the
# cycle type. Splitting off the p-regular cycles leaves the singular part.

# %%
from __future__ import annotations

from cma import perm_elementary_divisors, s_equivalent, strict_s_equivalent
from cma.perm import singular_part_type

for parts in [(6, 2), (6, 1)]:
    E = perm_elementary_divisors(parts, 3)
    print(parts, [f.label() for f in E.distinct()])

# %%
Es, Et = perm_elementary_divisors((6, 2), 3), perm_elementary_divisors((6, 1), 3)
print("full permutations:", s_equivalent(Es, Et).equivalent)

# %%
a, b = singular_part_type((6, 2), 3), singular_part_type((6, 1), 3)
Sa, Sb = perm_elementary_divisors(a, 3), perm_elementary_divisors(b, 3)
print(a, b, s_equivalent(Sa, Sb).equivalent, strict_s_equivalent(Sa, Sb).equivalent)
