"""Support invariants: torsion, pseudo-null parts, c1 and t2 classes,
localization lengths, and local freeness.

Run:  python3 demos/03_chern_invariants.py
"""

from extquot import (Ideal, PolyMatrix, PresentedModule, PrimeCertificate,
                     Ring, char_class_c1, chern_t2, format_poly, is_free_at,
                     localization_length, pseudo_null_part, support_codim,
                     torsion_submodule)

R = Ring(5, 2)
x, y = R.var(0), R.var(1)
z = R.zero()

print("== support codimension (r + 1 = 3 is the sentinel for the zero module)")
for gens, label in [((x,), "R/(x1)"), ((x, y), "R/(x1,x2)"),
                    ((x * x, x * y), "R/(x1^2,x1*x2)")]:
    M = PresentedModule.cyclic(R, list(gens))
    print(f"codim supp {label} = {support_codim(M)}")

print()
print("== torsion and pseudo-null parts")
M = PresentedModule(R, 2, PolyMatrix(R, 2, 1, [[x], [z]]))  # R/(x1) + R
T, _ = torsion_submodule(M)
print("torsion part of R/(x1) + R is nonzero:", not T.is_zero_module())
N = PresentedModule.cyclic(R, [x * x, x * y])
T2, _ = pseudo_null_part(N)
print("T2(R/(x1^2,x1*x2)) has length", T2.dim_k(),
      "and codim", support_codim(T2))

print()
print("== first Chern class = characteristic generator")
print("c1(R/(x1^2*x2))      =", format_poly(char_class_c1(
    PresentedModule.cyclic(R, [x * x * y])).principal_rep))
ds = PresentedModule(R, 2, PolyMatrix(R, 2, 2, [[x, z], [z, y]]))
print("c1(R/(x1) + R/(x2))  =", format_poly(char_class_c1(ds).principal_rep))

print()
print("== second Chern class over certified primes")
P = PrimeCertificate.rational_point(R, [0, 0])
print("t2(R/(x1^2,x1*x2)) =", chern_t2(N, [P]).to_payload())
print("length of R/(x1^2,x2) at (x1,x2):",
      localization_length(PresentedModule.cyclic(R, [x * x, y]), P))
Q = PrimeCertificate(Ideal(R, [R.parse("x1^2+2"), y]), 2, "maximal-in-2-vars")
print("a residue field of degree 2:",
      "length", localization_length(
          PresentedModule.cyclic(R, [R.parse("x1^2+2"), y]), Q),
      "over kappa with [kappa:k] =", Q.residue_degree())

print()
print("== local freeness by the Fitting criterion")
far = PrimeCertificate.rational_point(R, [1, 0])
print("R/(x1) + R free of rank 1 at (x1-1, x2):", is_free_at(M, far, 1))
print("R/(x1) + R free of rank 1 at (x1, x2):  ", is_free_at(M, P, 1))
