# %% [markdown]
# # Distillation estimates and simulation

# %%
from __future__ import annotations

from fractions import Fraction

from transccz import estimate, hermitian_code, make_field, rs_code, run_pipeline, simulate
from transccz.msd import exact_low_weight

for eps in (1e-3, 1e-6, 1e-9, 1e-12):
    plan = estimate(Fraction(1, 4), 0.2, 1.0, eps)
    print(f"eps={eps:g}: N={plan.N} K={plan.K} overhead={plan.overhead}")

# %% [markdown]
# Monte Carlo on the small [[24,1]] code, set against an exact bracket from
# all error patterns up to weight 3.

# %%
smoke = run_pipeline(rs_code(make_field(2), 1), 1)
mc = simulate(smoke, 0.01, 100_000, seed=1)
print("MC:", mc.logical_error_rate, mc.ci)
print("exact bracket:", exact_low_weight(smoke, 0.01, 3))

# %% [markdown]
# Under X noise alone the larger X distance of the Hermitian code shows up.

# %%
herm = run_pipeline(hermitian_code(2, 2), 1)
for name, res in (("smoke", smoke), ("hermitian", herm)):
    r = simulate(res, 0.2, 20_000, seed=3, channel="x")
    print(name, r.logical_error_rate, r.ci)
