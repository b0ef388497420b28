"""Predicted versus measured convergence rates.

The measured rate is a least-squares slope of log(error) against n over the
range 1e-13 < error < 1e-3, which skips the transient and the rounding floor.
"""
from nsquad.experiments import empirical_rate, family_of
from nsquad.methods import METHODS

for id_, eps in (("f1", 0.01), ("g1", 1 / 30), ("h1", 1 / 30)):
    print(f"{id_}, eps = {eps:.4g}")
    for method in METHODS[family_of(id_)]:
        pred, fit = empirical_rate(id_, eps, method)
        print(f"  {method:12s} predicted {pred:7.4f}  measured {fit:7.4f}  ratio {fit / pred:5.2f}")
