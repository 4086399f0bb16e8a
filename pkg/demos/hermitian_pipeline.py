# %% [markdown]
# # Hermitian code to a qubit CCZ code
#
# Build the [8,2,6] Hermitian code over GF(4), turn it into a qudit CSS code
# with a transversal CCZ, then carry that gate down to qubits.

# %%
from __future__ import annotations

from transccz import (
    build_css,
    ccz_spec,
    hermitian_code,
    min_distance,
    mult_property_witness,
    q3_distance,
    run_pipeline,
    verify_pipeline,
    verify_transversal,
)

C = hermitian_code(2, 2)
print(C.label, "n =", C.n, "k =", C.k, "d =", min_distance(C))
print("multiplication property witness:", mult_property_witness(C))

# %% [markdown]
# Puncturing one coordinate gives a [[7,1]] code over GF(4).  Its CCZ check
# runs over all 4^3 logical triples and 4^3 coset shifts.

# %%
Q = build_css(C, 1)
v = verify_transversal(Q, ccz_spec(Q.field))
print(f"[[{Q.N},{Q.K}]] over GF({Q.field.q}): ok={v.ok} checks={v.checks}")

# %% [markdown]
# The three steps: self-dual expansion, a multiplication-friendly embedding
# with r = 8 slots, and the trivial reverse embedding.

# %%
res = run_pipeline(C, 1, "trivial")
print(res.params)
print("first schedule entries:", res.schedule.triples[:3])
print("exhaustive check:", verify_pipeline(res, "exhaustive").ok)
print("distances:", q3_distance(res))
