"""The exterior-quotient pipeline end to end: scalars, exact sequences,
and the second-Chern-class identity, on a hand-checkable instance and on
a randomized one.

Run:  python3 demos/04_exterior_quotients.py
"""

from extquot import (ExteriorScenario, PolyMatrix, PresentedModule,
                     PrimeCertificate, Ring, evaluate_theorem_A,
                     random_corollary_scenario)
from extquot.modules import submodule_from_columns

R = Ring(5, 2)
x, y = R.var(0), R.var(1)
P = PrimeCertificate.rational_point(R, [0, 0])

print("== a hand-checkable instance: X = F = R, I_1 = x(x,y), I_2 = y(x,y)")
X = PresentedModule.free(R, 1)
I_list, J_list = [], []
for gens, hull in [((x * x, x * y), x), ((x * y, y * y), y)]:
    Imod, incl = submodule_from_columns(X, [[g] for g in gens])
    I_list.append((Imod, incl))
    J_list.append(PolyMatrix(R, 1, 1, [[hull]]))
scn = ExteriorScenario(R, 1, X, PolyMatrix.identity(R, 1), I_list, J_list,
                       declared_primes=[P])
rep = evaluate_theorem_A(scn)

print("scalars:", rep.scalar_payload())
print("the error module ker g'/h(ker g) here is (R/(x,y))^2, dimension",
      rep.error_C.dim_k())
print("left-hand class  c2(R/(L1/t, L2/t)):", rep.c2_left.to_payload())
for key, cls in rep.c2_right_components.items():
    print(f"right-hand term {key}:", cls.to_payload())
print("identity verdict:", rep.verdicts["theoremA-c2-identity"])
print("every pipeline verdict:", all(rep.verdicts.values()))

print()
print("== a randomized instance (seed 7), regenerated exactly from its seed")
scn2 = random_corollary_scenario(R, 7)
rep2 = evaluate_theorem_A(scn2)
print("n =", scn2.n, " l =", scn2.ell, " scalars:", rep2.scalar_payload())
print("verdicts all pass:", all(rep2.verdicts.values()))
