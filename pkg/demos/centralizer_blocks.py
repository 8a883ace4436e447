# %% [markdown]
# # Centralizer block structure
#
# The centralizer of a matrix splits into one block per irreducible factor of
# its minimal polynomial. The block dimension follows from the exponents alone,
# and the commutation kernel gives an independent check.

# %%
from __future__ import annotations

from cma import PrimeField, brute_force_centralizer_dim, decompose, jordan_block
from cma.matrix import block_diag

F5 = PrimeField(5)
c = block_diag(jordan_block(F5, 3, 0), jordan_block(F5, 1, 0), jordan_block(F5, 1, 1))
report = decompose(c, oracle=True)
print(report.to_table())

# %%
print(report.total_dim, brute_force_centralizer_dim(c))
print("non-projective simples:", report.num_nonproj_simples)
