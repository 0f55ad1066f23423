# %% [markdown]
# # Numerical propagation against closed forms
# The eigenbasis propagator agrees with the closed forms to round-off. RK4
# converges at fourth order in the step.

# %%
import matplotlib.pyplot as plt
import numpy as np

from _common import OUT
from qdicke import ModelParams, build_hamiltonian
from qdicke.analytic import amplitudes
from qdicke.propagator import Method, TimeGrid, evolve, initial_state

p = ModelParams.qdeformed(6, 3, 2.0)
h = build_hamiltonian(p)
grid = TimeGrid(0.0, 10.0, 2001)
closed = amplitudes(p, grid.times())
exact = evolve(h, initial_state(3), grid, Method.EIGEN)
print(f"eigen vs closed form: {np.max(np.abs(exact.amplitudes - closed)):.2e}")

steps, errors = [], []
for sub in (1, 2, 4, 8):
    rk4 = evolve(h, initial_state(3), grid, Method.RK4, substeps=sub)
    steps.append(grid.dt / sub * h.gershgorin_bound())
    errors.append(np.max(np.abs(rk4.amplitudes - closed)))
    print(f"rk4 dt*||H||={steps[-1]:.4f}  max error {errors[-1]:.2e}")

fig, ax = plt.subplots(figsize=(4.5, 3.5))
ax.loglog(steps, errors, "o-")
ax.set_xlabel("dt ||H||")
ax.set_ylabel("max amplitude error")
fig.tight_layout()
fig.savefig(OUT / "04_rk4_convergence.png", dpi=120)
