"""Jacobi elliptic functions at parameters extremely close to 1.

The Jacobi amplitude map evaluates sn, cn, dn with m = 4/(4 + B^2).  For a
singularity at height B = 1e-4 that is m = 1 - 2.5e-9, where power series in
m are useless.  The AGM/Landen implementation takes the complement 1 - m as a
separate argument so it is never formed by subtraction.
"""
import math

import numpy as np

from nsquad.special import complete_elliptic_K, jacobi_am, jacobi_sn_cn_dn

print("K(m) as m -> 1 grows like log(4/sqrt(1-m)):")
for mc in (1e-2, 1e-6, 1e-10, 1e-14):
    print(f"  1-m = {mc:7.0e}   K = {complete_elliptic_K(1 - mc, mc):.15f}   "
          f"log(4/sqrt(1-m)) = {math.log(4 / math.sqrt(mc)):.15f}")

B = 1e-4
m, mc = 4 / (4 + B * B), B * B / (4 + B * B)
u = np.linspace(-5, 5, 11)
sn, cn, dn = jacobi_sn_cn_dn(u, m, mc)
print(f"\nidentity residuals at m = 1 - {mc:.2e}:")
print(f"  max |sn^2 + cn^2 - 1|     = {np.abs(sn**2 + cn**2 - 1).max():.1e}")
print(f"  max |dn^2 - (1 - m sn^2)| = {np.abs(dn**2 - (mc + m * cn**2)).max():.1e}")

K = complete_elliptic_K(m, mc)
print(f"\nam(K) = {jacobi_am(K, m, mc):.16f}  (pi/2 = {math.pi / 2:.16f})")
