# %% [markdown]
# # Elementary divisors and S-equivalence
#
# Two matrices are compared through their maximal reducible elementary divisors
# and the exponent sets attached to them. A match may use equal sets or the
# J-transform.

# %%
from __future__ import annotations

from cma import Rationals, elementary_divisors, j_transform, jordan_block, s_equivalent
from cma.matrix import block_diag

Q = Rationals()
c = block_diag(jordan_block(Q, 3, 0), jordan_block(Q, 1, 0), jordan_block(Q, 1, 1))
d = block_diag(jordan_block(Q, 3, 1), jordan_block(Q, 2, 1))
Ec, Ed = elementary_divisors(c), elementary_divisors(d)
print(Ec)
print(Ed)

# %% [markdown]
# The exponent set of `x^3` in `c` is {1, 3}; for `(x-1)^3` in `d` it is {2, 3}.
# The J-transform maps one onto the other.

# %%
print(sorted(j_transform({2, 3})))
verdict = s_equivalent(Ec, Ed)
print(verdict.to_json())

# %% [markdown]
# When no bijection exists the verdict carries a Hall-violating subset.

# %%
c2 = block_diag(*(jordan_block(Q, k, 0) for k in (5, 4, 1)))
d2 = block_diag(*(jordan_block(Q, k, 0) for k in (5, 2, 1)))
print(s_equivalent(elementary_divisors(c2), elementary_divisors(d2)).obstruction)
