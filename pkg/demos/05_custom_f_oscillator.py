# %% [markdown]
# # A custom f-oscillator beyond s = 3
# Any rule with f(1) = 1 can replace the q-factor. Here f(n) = sqrt(n)
# (registered as "sqrt") drives s = 5 excitations with the exact propagator.

# %%
import matplotlib.pyplot as plt

from _common import OUT
from qdicke import ModelParams, build_hamiltonian
from qdicke.deformation import DeformationSpec, get_registered
from qdicke.observables import inversion_group_series
from qdicke.propagator import TimeGrid, evolve, initial_state

grid = TimeGrid(0.0, 10.0, 4000)
fig, ax = plt.subplots(figsize=(6, 3.5))
for spec in (DeformationSpec.identity(), get_registered("sqrt")):
    p = ModelParams(8, 5, 1.0, spec)
    traj = evolve(build_hamiltonian(p), initial_state(5), grid, params=p)
    ax.plot(grid.times(), inversion_group_series(traj).values, lw=0.8, label=spec.label)
ax.set_xlabel("g t")
ax.set_ylabel("group inversion")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "05_custom_f_oscillator.png", dpi=120)
