"""Integrals on [-1, 1] with a complex singularity at A + iB.

Gauss-Legendre converges like rho^(-2n), where rho is the Bernstein ellipse
through the singularity.  A change of variables moves the singularity's
preimage t* farther out; the image of t* is checked to land exactly on A + iB.
"""
from nsquad.aperiodic_complex import ComplexSingularity, iterated_sinh_map, jvh_map, sinh_map
from nsquad.experiments import convergence_grid
from nsquad.methods import METHODS, prediction

s = ComplexSingularity(2 / 3, 1 / 30)
print("Bernstein parameter rho at A = 2/3, B = 1/30:")
for method in METHODS["aperiodic_complex"]:
    print(f"  {method:9s} {prediction('aperiodic_complex', method, s).value:.4f}")

for name, f in (("sinh", sinh_map), ("jvh", jvh_map), ("sinhsinh", iterated_sinh_map)):
    vm = f(s)
    t = vm.params["t_star"]
    print(f"  {name:9s} t* = {t:.6f}  ->  x(t*) = {complex(vm.forward(t)):.12f}")

print("\nrelative error on g3 (oscillatory) with eps = 1/3000:")
ns = [40, 80, 120, 160, 200]
print("  n        " + "".join(f"{n:>10d}" for n in ns))
for method in ("gl", "split", "sinh", "tee"):
    errs = [r.rel_error for r in convergence_grid("g3", 1 / 3000, method, ns)]
    print(f"  {method:9s}" + "".join(f"{e:10.1e}" for e in errs))
