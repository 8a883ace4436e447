# %% [markdown]
# # Homological dimensions of a block
#
# A block is the endomorphism algebra of a generator over K[x]/(x^n). We build
# it from structure constants, resolve its simple modules, and compare a set of
# exponents with its syzygy image.

# %%
from __future__ import annotations

from cma import GeneratorModule, NakayamaData, hom_dim_report, omega_set, realize_block

U = NakayamaData(n=2)
alg = realize_block(U, GeneratorModule((1, 2)))
print(alg.dim, alg.cartan())

# %%
print(hom_dim_report(U, GeneratorModule((1, 2))).to_json())

# %% [markdown]
# The syzygy image of an exponent set has the same global and dominant dimensions.

# %%
n, E = 5, {1, 3, 5}
OE = omega_set(E, n)
for S in (E, OE):
    r = hom_dim_report(NakayamaData(n), GeneratorModule.of(n, S))
    print(sorted(S), r.gl_dim, r.dom_dim)
