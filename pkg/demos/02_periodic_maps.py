"""Periodic integrands with a singularity close to the real axis.

f1 has a logarithmic branch point at x = i*eps.  The plain trapezoid rule
converges like exp(-eps n).  Each change of variables widens the strip of
analyticity, and the predicted rate is that strip's half-width.
"""
from nsquad.experiments import convergence_grid
from nsquad.methods import METHODS, prediction, singularity_for

sing = singularity_for("periodic", B=0.3)
print("predicted strip half-width at B = 0.3:")
for method in METHODS["periodic"]:
    print(f"  {method:9s} {prediction('periodic', method, sing).rate:.4f}")

print("\nrelative error on f1 with eps = 0.01:")
ns = [20, 40, 60, 80, 100]
print("  n        " + "".join(f"{n:>10d}" for n in ns))
for method in METHODS["periodic"]:
    errs = [r.rel_error for r in convergence_grid("f1", 0.01, method, ns)]
    print(f"  {method:9s}" + "".join(f"{e:10.1e}" for e in errs))
