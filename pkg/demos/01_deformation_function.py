# %% [markdown]
# # The q-oscillator nonlinearity
# f(n) grows roughly like q^((n-1)/2) for q > 1, stays at 1 for q = 1 and
# is symmetric under q -> 1/q. Only f(1), f(2), f(3) enter the s <= 3 dynamics.

# %%
import matplotlib.pyplot as plt
import numpy as np

from _common import OUT
from qdicke import q_factor

n = np.arange(1, 9)
fig, ax = plt.subplots(figsize=(5, 3.5))
for q in (1.0, 1.5, 2.0, 5.0):
    ax.semilogy(n, [q_factor(k, q) for k in n], "o-", label=f"q = {q:g}")
ax.set_xlabel("n")
ax.set_ylabel("f(n)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "01_deformation_function.png", dpi=120)

# %%
for q in (2.0, 5.0, 20.0):
    print(f"q={q:>4g}  f(2)={q_factor(2, q):.6f}  f(3)={q_factor(3, q):.6f}  f(2; 1/q)={q_factor(2, 1 / q):.6f}")
