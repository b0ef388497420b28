"""A real singularity just beyond the interval end, x = A > 1.

The maps pull the singularity's preimage away from [-1, 1].  At A = 4/3 the
Bernstein parameters grow from the plain rule through quadratic and
exponential to elliptic.
"""
import numpy as np

from nsquad.experiments import convergence_grid
from nsquad.methods import METHODS, prediction, singularity_for

for A in (4 / 3, 1.01):
    s = singularity_for("aperiodic_real", A=A)
    rhos = {m: prediction("aperiodic_real", m, s).value for m in METHODS["aperiodic_real"]}
    print(f"A = {A:.4f}: " + ", ".join(f"{k} {v:.3f}" for k, v in rhos.items()))

print("\nfirst n with relative error below 1e-12:")
for id_ in ("h1", "h2", "h3"):
    line = []
    for method in METHODS["aperiodic_real"]:
        rows = convergence_grid(id_, 1 / 300, method, range(2, 401, 2))
        hit = next((r.n for r in rows if r.rel_error < 1e-12), None)
        line.append(f"{method} {hit if hit else '>400'}")
    print(f"  {id_} eps=1/300: " + ", ".join(line))
