"""Independent brute-force oracles: Macaulay-matrix membership and
exhaustive dimension counts.

These deliberately avoid the Groebner engine's shortcuts.  Membership is
linear algebra over F_p on the span of shifted generators, grown degree
by degree until the degree-bounded slice stabilizes; dimension is an
exhaustive normal-form enumeration of monomials, degree by degree, with
the order-ideal property supplying the stopping rule.
"""

from itertools import combinations_with_replacement

import numpy as np

from .errors import InputError


def monomials_up_to(r, degree):
    """All exponent tuples in r variables of total degree <= degree."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(r), d):
            e = [0] * r
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _rref_mod_p(mat, p):
    """Row-reduce a numpy int64 matrix mod p; returns (rref, pivot_cols)."""
    a = mat % p
    rows, cols = a.shape
    rank = 0
    pivots = []
    for c in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        for i in range(rows):
            if i != rank and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[rank]) % p
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return a[:rank], pivots


class MacaulaySpan:
    """Degree-bounded linear span of {monomial * generator} products.

    The span of products up to working degree W, intersected with the
    degree <= D slice, grows with W and stabilizes at the ideal's actual
    degree <= D part; the oracle grows W until two consecutive slices
    agree (and at least a couple of safety steps beyond the query degree).
    """

    def __init__(self, generators, query_degree, max_extra=10):
        if not generators:
            raise InputError("Macaulay span needs at least one generator")
        self.ring = generators[0].ring
        self.p = self.ring.p
        self.generators = [g for g in generators if not g.is_zero()]
        self.query_degree = query_degree
        self.max_extra = max_extra
        self._build()

    def _build(self):
        r = self.ring.r
        D = self.query_degree
        gdeg = max((g.degree() for g in self.generators), default=0)
        low_monos = monomials_up_to(r, D)
        self.index = {e: i for i, e in enumerate(low_monos)}
        self.low_monos = low_monos
        prev_rank = -1
        extra = 0
        while True:
            W = D + gdeg + extra
            rows = []
            for g in self.generators:
                for m in monomials_up_to(r, max(W - g.degree(), 0)):
                    rows.append(g.mul_term(m, 1))
            slice_rank, basis = self._eliminate(rows, W)
            if slice_rank == prev_rank and extra >= 2:
                self.slice_basis = basis
                return
            prev_rank = slice_rank
            extra += 1
            if extra > self.max_extra:
                self.slice_basis = basis
                return

    def _eliminate(self, polys, W):
        """Eliminate monomials of degree > D to find the degree <= D slice."""
        r = self.ring.r
        all_monos = monomials_up_to(r, W)
        # order columns: high-degree monomials first so eliminating them is
        # just taking the rref rows supported entirely in the low block
        high = [e for e in all_monos if sum(e) > self.query_degree]
        low = self.low_monos
        col_index = {}
        for i, e in enumerate(high):
            col_index[e] = i
        for i, e in enumerate(low):
            col_index[e] = len(high) + i
        mat = np.zeros((len(polys), len(high) + len(low)), dtype=np.int64)
        for i, f in enumerate(polys):
            for e, c in f.terms.items():
                mat[i, col_index[e]] = c
        rref, pivots = _rref_mod_p(mat, self.p)
        nhigh = len(high)
        rows_low = [rref[i, nhigh:] for i in range(rref.shape[0])
                    if all(rref[i, :nhigh] % self.p == 0)]
        if rows_low:
            basis = np.array(rows_low) % self.p
            basis, _ = _rref_mod_p(basis, self.p)
        else:
            basis = np.zeros((0, len(low)), dtype=np.int64)
        return basis.shape[0], basis

    def contains(self, f):
        """Membership of f (degree <= query bound) in the degree-bounded slice."""
        if f.is_zero():
            return True
        if f.degree() > self.query_degree:
            raise InputError("query degree exceeds the oracle bound")
        vec = np.zeros(len(self.low_monos), dtype=np.int64)
        for e, c in f.terms.items():
            vec[self.index[e]] = c
        residual = vec.copy()
        for row in self.slice_basis:
            lead = next((j for j in range(len(row)) if row[j] % self.p), None)
            if lead is None:
                continue
            if residual[lead] % self.p:
                factor = (residual[lead] * pow(int(row[lead]), -1, self.p)) % self.p
                residual = (residual - factor * row) % self.p
        return not residual.any()


def dimension_by_enumeration(ideal, cap_degree=64):
    """dim_k R/I by exhaustive normal-form monomial enumeration.

    A monomial contributes iff it is its own normal form; those are the
    standard monomials, which form a basis of the quotient and an order
    ideal, so the first empty degree ends the count.  Raises for
    quotients that are not finite dimensional.
    """
    ring = ideal.ring
    count = 0
    for d in range(cap_degree + 1):
        level = 0
        for combo in combinations_with_replacement(range(ring.r), d):
            e = [0] * ring.r
            for i in combo:
                e[i] += 1
            m = ring.monomial(e)
            if ideal.normal_form(m) == m:
                level += 1
        if level == 0:
            return count
        count += level
    raise InputError("quotient dimension did not stabilize; not finite")


def module_dimension_by_enumeration(module, cap_degree=64):
    """dim_k of a presented module by exhaustive vector-monomial reduction."""
    from .modgb import unit_vector, vec_normal_form
    ring = module.ring
    gb = module.rel_span().gb()
    count = 0
    for d in range(cap_degree + 1):
        level = 0
        for pos in range(module.ambient):
            for combo in combinations_with_replacement(range(ring.r), d):
                e = [0] * ring.r
                for i in combo:
                    e[i] += 1
                v = unit_vector(ring, module.ambient, pos).mul_term(tuple(e), 1)
                if vec_normal_form(v, gb) == v:
                    level += 1
        if level == 0:
            return count
        count += level
    raise InputError("module dimension did not stabilize; not finite")
