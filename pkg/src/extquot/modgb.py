"""Groebner bases for submodules of free modules R^m.

Vector polynomials are maps (position, exponent) -> coefficient.  The
module order is position-over-term: any monomial in a lower-indexed
position beats any monomial in a higher-indexed one.  That makes the
trailing positions an elimination block, which is how syzygies and
lifts are computed: append tag coordinates recording the combination,
run Buchberger, and read syzygies off the pure-tag elements.
"""

from .errors import DEFAULT_LIMITS, WORK, ResourceLimitError
from .ring import exp_divides, exp_lcm


class VecPoly:
    """Element of R^m: dict {(pos, exp): coeff}, coefficients in 1..p-1."""

    __slots__ = ("ring", "rank", "terms", "_lead")

    def __init__(self, ring, rank, terms):
        self.ring = ring
        self.rank = rank
        self.terms = terms
        self._lead = None

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, VecPoly) and self.rank == other.rank
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def key(self, mono):
        pos, e = mono
        return (self.rank - pos, self.ring.key(e))

    def lead(self):
        if self._lead is None:
            mono = max(self.terms, key=self.key)
            self._lead = (mono, self.terms[mono])
        return self._lead

    def add(self, other):
        p = self.ring.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            nc = (t.get(m, 0) + c) % p
            if nc:
                t[m] = nc
            else:
                t.pop(m, None)
        return VecPoly(self.ring, self.rank, t)

    def mul_term(self, exponent, coeff):
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return VecPoly(self.ring, self.rank, {})
        return VecPoly(self.ring, self.rank, {
            (pos, tuple(a + b for a, b in zip(e, exponent))): (c * coeff) % p
            for (pos, e), c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead()
        inv = pow(c, -1, self.ring.p)
        return VecPoly(self.ring, self.rank,
                       {m: (v * inv) % self.ring.p for m, v in self.terms.items()})

    def component(self, pos):
        """The position-`pos` coordinate as a scalar polynomial."""
        return self.ring.poly({e: c for (q, e), c in self.terms.items() if q == pos})

    def restrict(self, lo, hi, shift=0):
        """Sub-vector on positions lo..hi-1, re-based at `shift`."""
        terms = {(q - lo + shift, e): c
                 for (q, e), c in self.terms.items() if lo <= q < hi}
        return VecPoly(self.ring, hi - lo + shift, terms)

    def max_degree(self):
        return max((sum(e) for (_, e) in self.terms), default=-1)


def vec_from_polys(ring, polys):
    terms = {}
    for pos, f in enumerate(polys):
        for e, c in f.terms.items():
            terms[(pos, e)] = c
    return VecPoly(ring, len(polys), terms)


def unit_vector(ring, rank, pos):
    return VecPoly(ring, rank, {(pos, ring.zero_exp()): 1})


def vec_normal_form(v, basis):
    """Fully reduce v against a list of VecPolys."""
    if v.is_zero() or not basis:
        return v
    ring = v.ring
    p = ring.p
    leads = [(g.lead(), g) for g in basis]
    work = dict(v.terms)
    rem = {}
    keyf = v.key
    while work:
        m = max(work, key=keyf)
        c = work.pop(m)
        pos, e = m
        for ((gpos, ge), gc), g in leads:
            if gpos == pos and exp_divides(ge, e):
                WORK.reductions += 1
                qe = tuple(a - b for a, b in zip(e, ge))
                qc = (c * pow(gc, -1, p)) % p
                for (tpos, te), tc in g.terms.items():
                    if tpos == gpos and te == ge:
                        continue  # lead already cancelled by the pop
                    nm = (tpos, tuple(a + b for a, b in zip(qe, te)))
                    nc = (work.get(nm, 0) - qc * tc) % p
                    if nc:
                        work[nm] = nc
                    else:
                        work.pop(nm, None)
                break
        else:
            rem[m] = c
    return VecPoly(ring, v.rank, rem)


def module_buchberger(vectors, limits=None):
    limits = limits or DEFAULT_LIMITS
    basis = [v for v in vectors if not v.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring

    def lead_pos(v):
        return v.lead()[0][0]

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
             if lead_pos(basis[i]) == lead_pos(basis[j])]

    def pair_key(ij):
        i, j = ij
        (pi, ei), _ = basis[i].lead()
        (_, ej), _ = basis[j].lead()
        return (pi, ring.key(exp_lcm(ei, ej)))

    while pairs:
        pairs.sort(key=pair_key, reverse=True)
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        (pos, ef), cf = f.lead()
        (_, eg), cg = g.lead()
        l = exp_lcm(ef, eg)
        p = ring.p
        WORK.spolys += 1
        s = f.mul_term(tuple(a - b for a, b in zip(l, ef)), pow(cf, -1, p)).add(
            g.mul_term(tuple(a - b for a, b in zip(l, eg)), -pow(cg, -1, p)))
        s = vec_normal_form(s, basis)
        if s.is_zero():
            continue
        if s.max_degree() > limits.degree:
            raise ResourceLimitError(
                f"module basis degree {s.max_degree()} exceeds limit {limits.degree}")
        basis.append(s)
        if len(basis) > limits.gb:
            raise ResourceLimitError(f"module basis size exceeds limit {limits.gb}")
        k = len(basis) - 1
        pairs.extend((i, k) for i in range(k) if lead_pos(basis[i]) == lead_pos(s))
    return basis


def reduce_module_basis(basis):
    """Canonical reduced module GB (unique given the order)."""
    basis = [v.monic() for v in basis if not v.is_zero()]
    if not basis:
        return []
    basis.sort(key=lambda v: v.key(v.lead()[0]))
    minimal = []
    for v in basis:
        (pos, e) = v.lead()[0]
        if not any(h.lead()[0][0] == pos and exp_divides(h.lead()[0][1], e)
                   for h in minimal):
            minimal.append(v)
    reduced = [vec_normal_form(v, minimal[:i] + minimal[i + 1:]).monic()
               for i, v in enumerate(minimal)]
    reduced.sort(key=lambda v: v.key(v.lead()[0]), reverse=True)
    return reduced


def module_groebner(vectors, limits=None):
    return reduce_module_basis(module_buchberger(vectors, limits))


class SubmoduleSpan:
    """Cached Groebner data for the span of a set of columns in R^m.

    Provides membership, canonical normal forms, lifting through the
    generators, and the syzygy module of the generators.
    """

    def __init__(self, ring, rank, columns, limits=None):
        self.ring = ring
        self.rank = rank
        self.columns = list(columns)
        self.limits = limits or DEFAULT_LIMITS
        self._gb = None
        self._graph_gb = None
        self._syz = None

    def gb(self):
        if self._gb is None:
            self._gb = module_groebner(self.columns, self.limits)
        return self._gb

    def normal_form(self, v):
        return vec_normal_form(v, self.gb())

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def contains_all(self, vectors):
        return all(self.contains(v) for v in vectors)

    def _graph(self):
        if self._graph_gb is None:
            s = len(self.columns)
            ext_rank = self.rank + s
            graph = []
            for j, col in enumerate(self.columns):
                terms = {(pos, e): c for (pos, e), c in col.terms.items()}
                terms[(self.rank + j, self.ring.zero_exp())] = 1
                graph.append(VecPoly(self.ring, ext_rank, terms))
            self._graph_gb = module_groebner(graph, self.limits)
        return self._graph_gb

    def lift(self, v):
        """Coefficients c with columns . c = v, or None if v is outside the span."""
        s = len(self.columns)
        ext_rank = self.rank + s
        ext = VecPoly(self.ring, ext_rank, dict(v.terms))
        rem = vec_normal_form(ext, self._graph())
        head = rem.restrict(0, self.rank)
        if not head.is_zero():
            return None
        tail = rem.restrict(self.rank, ext_rank)
        p = self.ring.p
        coeffs = [tail.component(j).scale(p - 1) for j in range(s)]
        return coeffs

    def syzygies(self):
        """Generators of {c in R^s : columns . c = 0}."""
        if self._syz is None:
            out = []
            for g in self._graph():
                head = g.restrict(0, self.rank)
                if head.is_zero():
                    out.append(g.restrict(self.rank, self.rank + len(self.columns)))
            self._syz = out
        return self._syz

    def equals(self, other):
        """Span equality inside the same ambient free module."""
        assert self.rank == other.rank
        return self.gb() == other.gb()
