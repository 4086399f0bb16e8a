# %% [markdown]
# # A larger qubit code, checked by sampling
#
# RS(16, 5) with two logical qudits gives an [[896,2]] qubit code.  Exhaustive
# checking is out of reach, so logical inputs and shifts are sampled.

# %%
from __future__ import annotations

from transccz import make_field, rs_code, run_pipeline, verify_pipeline

res = run_pipeline(rs_code(make_field(4), 5), 2, "trivial")
print(res.params)

# %%
v = verify_pipeline(res, "sampled", trials=20_000, seed=7)
print("sampled check:", v.ok, v.checks)

# %% [markdown]
# Dropping a single CCZ from the schedule is caught with a concrete input.

# %%
bad = verify_pipeline(res, "sampled", trials=20_000, seed=7, schedule=res.schedule.without(5))
print("after deletion:", bad.ok)
print("witness:", bad.witness)
