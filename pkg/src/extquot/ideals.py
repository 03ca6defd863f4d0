"""Ideals, Buchberger's algorithm, normal forms, and ideal arithmetic.

The reduced Groebner basis is the canonical form used for ideal equality
throughout the engine.  Intersections go through a standard auxiliary
variable elimination; quotients and saturations reduce to intersections;
gcds come from the UFD identity f*g = gcd*lcm with an exact-division
check that turns any kernel bug into a loud failure.
"""

from .errors import (DEFAULT_LIMITS, WORK, ExactDivisionError, InputError,
                     ResourceLimitError)
from .ring import Ring, exp_divides, exp_lcm, format_poly


class Ideal:
    """An ideal of F_p[x1..xr] given by generators, with a cached reduced GB.

    The zero ideal may be represented by a list of zero polynomials (this
    happens for degenerate Fitting ideals); an empty generator list is
    rejected.
    """

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring, generators):
        gens = list(generators)
        if not gens:
            raise InputError("ideal needs at least one generator")
        for g in gens:
            if g.ring != ring:
                raise InputError("ideal generators from mixed rings")
        self.ring = ring
        self.generators = gens
        self._gb = None

    def groebner(self, limits=None):
        """The reduced Groebner basis, cached; [] for the zero ideal."""
        if self._gb is None:
            self._gb = reduced_groebner(self.generators, limits or DEFAULT_LIMITS)
        return self._gb

    def normal_form(self, f, limits=None):
        return normal_form(f, self.groebner(limits))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def is_zero(self):
        return not self.groebner()

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_unit()

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.ring == other.ring
                and self.groebner() == other.groebner())

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(g.terms.items()) for g in self.groebner())))

    def __repr__(self):
        return "Ideal(" + ", ".join(format_poly(g) for g in self.generators) + ")"

    def canonical_strings(self):
        return [format_poly(g) for g in self.groebner()]


def spoly(f, g):
    ef, cf = f.lead()
    eg, cg = g.lead()
    l = exp_lcm(ef, eg)
    p = f.ring.p
    mf = tuple(a - b for a, b in zip(l, ef))
    mg = tuple(a - b for a, b in zip(l, eg))
    return f.mul_term(mf, pow(cf, -1, p)) - g.mul_term(mg, pow(cg, -1, p))


def normal_form(f, basis):
    """Fully reduced remainder of f modulo a list of polynomials."""
    ring = f.ring
    p = ring.p
    leads = [(g.lead_exp(), g) for g in basis if not g.is_zero()]
    work = dict(f.terms)
    rem = {}
    while work:
        e = max(work, key=ring.key)
        c = work.pop(e)
        for le, g in leads:
            if exp_divides(le, e):
                WORK.reductions += 1
                qe = tuple(a - b for a, b in zip(e, le))
                qc = (c * pow(g.lead()[1], -1, p)) % p
                for te, tc in g.terms.items():
                    if te == le:
                        continue
                    ne = tuple(a + b for a, b in zip(qe, te))
                    nc = (work.get(ne, 0) - qc * tc) % p
                    if nc:
                        work[ne] = nc
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
    return ring.poly(rem)


def buchberger(generators, limits=None):
    """A (non-reduced) Groebner basis for the span of `generators`."""
    limits = limits or DEFAULT_LIMITS
    basis = [g for g in generators if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]

    def pair_key(ij):
        i, j = ij
        return ring.key(exp_lcm(basis[i].lead_exp(), basis[j].lead_exp()))

    while pairs:
        pairs.sort(key=pair_key, reverse=True)
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        ef, eg = f.lead_exp(), g.lead_exp()
        if exp_lcm(ef, eg) == tuple(a + b for a, b in zip(ef, eg)):
            continue  # coprime leading terms: S-polynomial reduces to zero
        WORK.spolys += 1
        s = normal_form(spoly(f, g), basis)
        if s.is_zero():
            continue
        if s.degree() > limits.degree:
            raise ResourceLimitError(
                f"basis element degree {s.degree()} exceeds limit {limits.degree}")
        basis.append(s)
        if len(basis) > limits.gb:
            raise ResourceLimitError(f"basis size exceeds limit {limits.gb}")
        k = len(basis) - 1
        pairs.extend((i, k) for i in range(k))
    return basis


def reduce_basis(basis):
    """Minimize and inter-reduce a Groebner basis; output is the reduced GB."""
    basis = [g.monic() for g in basis if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    # leading-term divisibility implies order <=, so one ascending sweep minimizes
    basis.sort(key=lambda g: ring.key(g.lead_exp()))
    minimal = []
    for g in basis:
        if not any(exp_divides(h.lead_exp(), g.lead_exp()) for h in minimal):
            minimal.append(g)
    reduced = [normal_form(g, minimal[:i] + minimal[i + 1:]).monic()
               for i, g in enumerate(minimal)]
    reduced.sort(key=lambda g: ring.key(g.lead_exp()), reverse=True)
    return reduced


def reduced_groebner(generators, limits=None):
    basis = buchberger(generators, limits)
    if not basis:
        return []
    return reduce_basis(basis)


# ---- ideal arithmetic ----------------------------------------------------


def _extend(ring):
    """Ring with one extra elimination variable in front."""
    return Ring(ring.p, ring.r + 1, order="elim1")


def _lift(ext, f, shift=1):
    return ext.poly({(0,) * shift + e: c for e, c in f.terms.items()})


def _project(ring, f):
    """Keep terms not involving the first variable, dropping it."""
    terms = {}
    for e, c in f.terms.items():
        if e[0] == 0:
            terms[e[1:]] = c
    return ring.poly(terms)


def ideal_sum(I, J):
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I, J):
    gens = [f * g for f in I.generators for g in J.generators]
    return Ideal(I.ring, gens)


def ideal_intersection(I, J, limits=None):
    """(t*I + (1-t)*J) eliminated down to the original ring."""
    ring = I.ring
    ext = _extend(ring)
    if ext.r > 6 + 1:
        raise ResourceLimitError("intersection would need too many variables")
    t = ext.var(0)
    one = ext.one()
    gens = [t * _lift(ext, f) for f in I.generators]
    gens += [(one - t) * _lift(ext, g) for g in J.generators]
    gb = reduced_groebner(gens, limits)
    kept = [_project(ring, g) for g in gb if g.lead_exp()[0] == 0]
    kept = [g for g in kept if not g.is_zero()]
    if not kept:
        kept = [ring.zero()]
    return Ideal(ring, kept)


def ideal_quotient(I, J, limits=None):
    """(I : J) via (I : f) = (1/f) * (I cap (f)) intersected over generators."""
    ring = I.ring
    result = None
    nonzero = [f for f in J.generators if not f.is_zero()]
    if not nonzero:
        raise InputError("quotient by the zero ideal")
    for f in nonzero:
        meet = ideal_intersection(I, Ideal(ring, [f]), limits)
        gens = [g.exact_div(f) for g in meet.groebner() if not g.is_zero()]
        if not gens:
            gens = [ring.zero()]
        part = Ideal(ring, gens)
        result = part if result is None else ideal_intersection(result, part, limits)
    return result


def ideal_saturation(I, J, limits=None):
    """(I : J^infinity) by iterating quotients until the GB stabilizes."""
    current = I
    prev_gb = current.groebner(limits)
    while True:
        nxt = ideal_quotient(current, J, limits)
        gb = nxt.groebner(limits)
        if gb == prev_gb:
            return nxt
        current, prev_gb = nxt, gb


def ideal_ops(I, J, kind, limits=None):
    if I.ring != J.ring:
        raise InputError("ideal operation across different rings")
    if kind == "sum":
        return ideal_sum(I, J)
    if kind == "product":
        return ideal_product(I, J)
    if kind == "intersection":
        return ideal_intersection(I, J, limits)
    if kind == "quotient":
        return ideal_quotient(I, J, limits)
    if kind == "saturation":
        return ideal_saturation(I, J, limits)
    raise InputError(f"unknown ideal operation {kind!r}")


def poly_gcd(f, g, limits=None):
    """gcd via f*g = gcd*lcm, lcm a generator of (f) cap (g); monic output."""
    if f.is_zero() and g.is_zero():
        raise InputError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    meet = ideal_intersection(Ideal(f.ring, [f]), Ideal(g.ring, [g]), limits)
    gb = meet.groebner(limits)
    if len(gb) != 1:
        raise ExactDivisionError(
            "intersection of principal ideals is not principal; kernel bug")
    lcm = gb[0]
    d = (f * g).exact_div(lcm)
    if not d.divides(f) or not d.divides(g):
        raise ExactDivisionError("computed gcd fails to divide an argument")
    return d.monic()


def gcd_many(polys, limits=None):
    nonzero = [f for f in polys if not f.is_zero()]
    if not nonzero:
        raise InputError("gcd of all-zero family")
    acc = nonzero[0].monic()
    for f in nonzero[1:]:
        if acc.is_unit():
            return acc
        acc = poly_gcd(acc, f, limits)
    return acc


def radical_contains(I, f, limits=None):
    """True iff f lies in the radical of I (1 in (I : f^infinity))."""
    if f.is_zero():
        return True
    sat = ideal_saturation(I, Ideal(I.ring, [f]), limits)
    return sat.is_unit()
