"""Groebner bases, normal forms, and ideal arithmetic over F_p[x1, x2].

Run:  python3 demos/01_groebner_basics.py
"""

from extquot import Ideal, Ring, format_poly, ideal_ops, poly_gcd

R = Ring(5, 2)          # F_5[x1, x2], graded reverse lexicographic order
x, y = R.var(0), R.var(1)

print("== reduced Groebner bases")
I = Ideal(R, [x * x + y, y * y])
print("generators:        x1^2+x2, x2^2")
print("reduced basis:    ", ", ".join(format_poly(g) for g in I.groebner()))

print()
print("== normal forms decide membership")
f = y * y * y + x
print("NF(x2^3 + x1) =   ", format_poly(I.normal_form(f)))
print("x1^2*x2^2 in I?   ", I.contains(x * x * y * y))

print()
print("== ideal arithmetic")
meet = ideal_ops(Ideal(R, [x]), Ideal(R, [y]), "intersection")
print("(x1) cap (x2) =   ", ", ".join(format_poly(g) for g in meet.groebner()))
quo = ideal_ops(Ideal(R, [x * x, x * y]), Ideal(R, [x]), "quotient")
print("(x1^2,x1*x2):(x1)=", ", ".join(format_poly(g) for g in quo.groebner()))
sat = ideal_ops(Ideal(R, [x * x * y ** 3]), Ideal(R, [y]), "saturation")
print("saturate by x2 =  ", ", ".join(format_poly(g) for g in sat.groebner()))

print()
print("== gcd via the lcm identity, with an exact-division audit")
print("gcd(x1^2*x2, x1*x2^2) =", format_poly(poly_gcd(x * x * y, x * y * y)))
print("gcd(x1^2+x2, x2^2)    =", format_poly(poly_gcd(x * x + y, y * y)),
      "(coprime)")
