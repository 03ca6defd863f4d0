"""Presented modules: syzygies, resolutions, Ext, exterior powers, Fitting ideals.

Run:  python3 demos/02_modules_and_ext.py
"""

from extquot import (PolyMatrix, PresentedModule, Ring, ext, exterior_power,
                     fitting_ideal, format_poly, free_resolution, syzygy_matrix)

R = Ring(5, 2)
x, y = R.var(0), R.var(1)
z = R.zero()

print("== syzygies")
A = PolyMatrix(R, 1, 2, [[x, y]])
print("syz[x1 x2] columns:", syzygy_matrix(A).to_strings())

print()
print("== free resolutions")
M = PresentedModule.cyclic(R, [x, y])
res = free_resolution(M, 2)
print("R/(x1,x2) has the Koszul resolution with ranks", res.ranks())
res2 = free_resolution(PresentedModule.cyclic(R, [x * x, x * y]), 2)
print("R/(x1^2,x1*x2) resolves with ranks", res2.ranks(),
      "and second differential", res2.differentials[1].to_strings())

print()
print("== Ext groups from dualized resolutions")
E2 = ext(2, M)
print("Ext^2(R/(x1,x2), R) is again a length-one module:",
      "dim =", E2.dim_k(),
      "Fitt0 =", [format_poly(g) for g in fitting_ideal(0, E2).groebner()])
E1 = ext(1, PresentedModule.cyclic(R, [x * x]))
print("Ext^1(R/(x1^2), R) has Fitt0 =",
      [format_poly(g) for g in fitting_ideal(0, E1).groebner()])
print("Ext^3 of anything here vanishes:",
      ext(3, M).is_zero_module())

print()
print("== exterior powers and Fitting ideals")
diag = PresentedModule(R, 2, PolyMatrix(R, 2, 2, [[x, z], [z, y]]))
W = exterior_power(2, diag)
print("wedge^2 (R/(x1) + R/(x2)) = R/(x1,x2):",
      [format_poly(g) for g in fitting_ideal(0, W).groebner()])
print("Fitt0(coker diag) =",
      [format_poly(g) for g in fitting_ideal(0, diag).groebner()],
      " Fitt1 =",
      [format_poly(g) for g in fitting_ideal(1, diag).groebner()])
