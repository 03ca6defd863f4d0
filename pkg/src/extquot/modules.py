"""Finitely presented modules over F_p[x1..xr] and their homological algebra.

A PresentedModule is coker(A : R^s -> R^m) for a polynomial matrix A.
Everything downstream (kernels, cokernels, resolutions, Ext, exterior
powers, Fitting ideals) reduces to syzygy computations and membership
tests on column spans, provided by the modgb engine.
"""

from itertools import combinations

from .errors import DEFAULT_LIMITS, HypothesisViolation, InputError
from .ideals import Ideal
from .modgb import SubmoduleSpan, VecPoly, unit_vector, vec_from_polys
from .ring import format_poly


class PolyMatrix:
    """Dense matrix of polynomials; rows x cols, entries[i][j]."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries
        assert len(entries) == rows and all(len(row) == cols for row in entries)

    @staticmethod
    def from_columns(ring, rows, columns):
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return PolyMatrix(ring, rows, len(columns), entries)

    @staticmethod
    def zero(ring, rows, cols):
        z = ring.zero()
        return PolyMatrix(ring, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(ring, n):
        one, z = ring.one(), ring.zero()
        return PolyMatrix(ring, n, n,
                          [[one if i == j else z for j in range(n)] for i in range(n)])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def column_vecs(self):
        return [vec_from_polys(self.ring, self.column(j)) for j in range(self.cols)]

    def transpose(self):
        return PolyMatrix(self.ring, self.cols, self.rows,
                          [[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)])

    def hstack(self, other):
        assert self.rows == other.rows
        return PolyMatrix(self.ring, self.rows, self.cols + other.cols,
                          [self.entries[i] + other.entries[i] for i in range(self.rows)])

    def matmul(self, other):
        assert self.cols == other.rows
        z = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, self.rows, other.cols, out)

    def apply_vec(self, vec):
        """Matrix times a VecPoly (viewed as a column of rank == cols)."""
        cols = self.column_vecs()
        out = VecPoly(self.ring, self.rows, {})
        for (pos, e), c in vec.terms.items():
            out = out.add(cols[pos].mul_term(e, c))
        return out

    def map_entries(self, fn):
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [[fn(x) for x in row] for row in self.entries])

    def drop_zero_columns(self):
        keep = [j for j in range(self.cols)
                if any(not self.entries[i][j].is_zero() for i in range(self.rows))]
        return PolyMatrix(self.ring, self.rows, len(keep),
                          [[self.entries[i][j] for j in keep] for i in range(self.rows)])

    def dedupe_columns(self):
        seen = set()
        keep = []
        for j in range(self.cols):
            sig = tuple(frozenset(self.entries[i][j].terms.items())
                        for i in range(self.rows))
            if sig not in seen:
                seen.add(sig)
                keep.append(j)
        return PolyMatrix(self.ring, self.rows, len(keep),
                          [[self.entries[i][j] for j in keep] for i in range(self.rows)])

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def to_strings(self):
        return [[format_poly(x) for x in row] for row in self.entries]

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def det(matrix_entries):
    """Determinant of a square list-of-lists of polynomials (column-subset DP)."""
    n = len(matrix_entries)
    if n == 0:
        raise InputError("determinant of empty matrix")
    ring = matrix_entries[0][0].ring
    if n == 1:
        return matrix_entries[0][0]
    # expand row by row over column subsets
    current = {frozenset([j]): matrix_entries[0][j] for j in range(n)}
    for i in range(1, n):
        nxt = {}
        for used, minor in current.items():
            if minor.is_zero():
                continue
            sign = 1
            for j in range(n):
                if j in used:
                    continue
                below = sum(1 for u in used if u < j)
                sgn = -1 if (below + i) % 2 else 1
                term = minor * matrix_entries[i][j]
                if sgn < 0:
                    term = -term
                key = used | {j}
                nxt[key] = nxt.get(key, ring.zero()) + term
        current = nxt
        if not current:
            return ring.zero()
    return current.get(frozenset(range(n)), ring.zero())


def matrix_rank(mat):
    """Rank over the fraction field, by fraction-free (Bareiss) elimination."""
    work = [row[:] for row in mat.entries]
    rows, cols = mat.rows, mat.cols
    ring = mat.ring
    rank = 0
    prev = ring.one()
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if not work[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                num = work[i][j] * pv - work[i][col] * work[rank][j]
                work[i][j] = num.exact_div(prev)
            work[i][col] = ring.zero()
        prev = pv
        rank += 1
        if rank == rows:
            break
    return rank


class PresentedModule:
    """coker(relations : R^s -> R^ambient)."""

    __slots__ = ("ring", "ambient", "relations", "_span", "limits")

    def __init__(self, ring, ambient, relations=None, limits=None):
        if ambient < 0:
            raise InputError("ambient rank must be nonnegative")
        self.ring = ring
        self.ambient = ambient
        self.relations = relations if relations is not None else PolyMatrix.zero(ring, ambient, 0)
        if self.relations.rows != ambient:
            raise InputError("relation matrix rows must equal ambient rank")
        self.limits = limits or DEFAULT_LIMITS
        self._span = None

    @staticmethod
    def free(ring, rank):
        return PresentedModule(ring, rank)

    @staticmethod
    def zero(ring):
        return PresentedModule(ring, 0)

    @staticmethod
    def cyclic(ring, ideal_gens):
        cols = PolyMatrix(ring, 1, len(ideal_gens), [list(ideal_gens)])
        return PresentedModule(ring, 1, cols)

    def rel_span(self):
        if self._span is None:
            self._span = SubmoduleSpan(self.ring, self.ambient,
                                       self.relations.column_vecs(), self.limits)
        return self._span

    def is_zero_module(self):
        if self.ambient == 0:
            return True
        span = self.rel_span()
        return all(span.contains(unit_vector(self.ring, self.ambient, i))
                   for i in range(self.ambient))

    def rank(self):
        """Generic rank = ambient - rank of the relation matrix."""
        return self.ambient - matrix_rank(self.relations)

    def same_presentation_span(self, other):
        """Semantic equality: same ambient and equal relation column spans."""
        if self.ambient != other.ambient or self.ring != other.ring:
            return False
        return self.rel_span().equals(other.rel_span())

    def dim_k(self, cap=4096):
        """Dimension over F_p of the module, or None if infinite.

        Counts module monomials outside the leading-term module of the
        relation span; these form an order ideal per position, so level
        enumeration stops at the first empty degree.
        """
        if self.ambient == 0:
            return 0
        gb = self.rel_span().gb()
        leads = {}
        for v in gb:
            (pos, e), _ = v.lead()
            leads.setdefault(pos, []).append(e)
        r = self.ring.r
        total = 0
        for pos in range(self.ambient):
            lt = leads.get(pos, [])
            if not lt:
                return None
            zero = self.ring.zero_exp()
            if any(e == zero for e in lt):
                continue
            level = {zero}
            count = 1
            while level:
                nxt = set()
                for e in level:
                    for i in range(r):
                        ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                        if ne in nxt:
                            continue
                        if any(all(a >= b for a, b in zip(ne, le)) for le in lt):
                            continue
                        nxt.add(ne)
                count += len(nxt)
                if count > cap:
                    return None
                level = nxt
            total += count
        return total

    def fitting_ideal(self, k):
        return fitting_ideal(k, self)

    def prune(self):
        return prune(self)

    def to_payload(self):
        return {"ambient_rank": self.ambient, "relations": self.relations.to_strings()}

    def __repr__(self):
        return f"PresentedModule(ambient={self.ambient}, relations={self.relations.cols})"


class ModuleMap:
    """Map coker(A) -> coker(B) given by an ambient matrix.

    Construction verifies well-definedness: every source relation column,
    pushed through the matrix, must lie in the target's relation span.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check=True):
        if matrix.rows != target.ambient or matrix.cols != source.ambient:
            raise InputError("module map matrix has wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            span = target.rel_span()
            for col in source.relations.column_vecs():
                if not span.contains(matrix.apply_vec(col)):
                    raise HypothesisViolation(
                        "module-map-well-defined",
                        "a source relation does not map into target relations")

    @staticmethod
    def identity(module):
        return ModuleMap(module, module, PolyMatrix.identity(module.ring, module.ambient),
                         check=False)

    def compose(self, inner):
        """self after inner."""
        return ModuleMap(inner.source, self.target, self.matrix.matmul(inner.matrix),
                         check=False)

    def is_zero_map(self):
        span = self.target.rel_span()
        return all(span.contains(vec_from_polys(self.target.ring, self.matrix.column(j)))
                   for j in range(self.matrix.cols))

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


# ---- kernels, cokernels, images ------------------------------------------


def syzygy_matrix(mat, limits=None):
    """Columns generating {c : mat . c = 0}."""
    span = SubmoduleSpan(mat.ring, mat.rows, mat.column_vecs(), limits)
    syz = span.syzygies()
    cols = [[v.component(j) for j in range(mat.cols)] for v in syz]
    if not cols:
        return PolyMatrix.zero(mat.ring, mat.cols, 0)
    return PolyMatrix.from_columns(mat.ring, mat.cols, cols).dedupe_columns()


def preimage_matrix(phi_matrix, target_relations, limits=None):
    """Columns generating {x : phi_matrix . x in span(target_relations)}."""
    combined = phi_matrix.hstack(target_relations)
    syz = syzygy_matrix(combined, limits)
    top = PolyMatrix(phi_matrix.ring, phi_matrix.cols, syz.cols,
                     [syz.entries[i] for i in range(phi_matrix.cols)])
    return top.drop_zero_columns().dedupe_columns()


def kernel_map(phi, limits=None):
    """(K, iota) with K = ker(phi) and iota : K -> source the inclusion."""
    src, tgt = phi.source, phi.target
    pre = preimage_matrix(phi.matrix, tgt.relations, limits)
    rel = preimage_matrix(pre, src.relations, limits)
    K = PresentedModule(src.ring, pre.cols, rel, limits=src.limits)
    return K, ModuleMap(K, src, pre, check=False)


def cokernel(phi):
    """(C, proj) with C = coker(phi) and proj : target -> C."""
    tgt = phi.target
    C = PresentedModule(tgt.ring, tgt.ambient, phi.matrix.hstack(tgt.relations),
                        limits=tgt.limits)
    return C, ModuleMap(tgt, C, PolyMatrix.identity(tgt.ring, tgt.ambient), check=False)


def image(phi, limits=None):
    """(I, incl, proj): I = im(phi), incl : I -> target, proj : source ->> I."""
    src, tgt = phi.source, phi.target
    rel = preimage_matrix(phi.matrix, tgt.relations, limits)
    I = PresentedModule(src.ring, src.ambient, rel, limits=src.limits)
    incl = ModuleMap(I, tgt, phi.matrix, check=False)
    proj = ModuleMap(src, I, PolyMatrix.identity(src.ring, src.ambient), check=False)
    return I, incl, proj


def submodule_from_columns(ambient_module, columns, limits=None):
    """Present the submodule of `ambient_module` generated by ambient columns.

    Returns (S, incl) with incl : S -> ambient_module having the columns
    as generator images.
    """
    ring = ambient_module.ring
    mat = PolyMatrix.from_columns(ring, ambient_module.ambient, columns) \
        if columns else PolyMatrix.zero(ring, ambient_module.ambient, 0)
    rel = preimage_matrix(mat, ambient_module.relations, limits)
    S = PresentedModule(ring, mat.cols, rel, limits=ambient_module.limits)
    return S, ModuleMap(S, ambient_module, mat, check=False)


def direct_sum(modules):
    ring = modules[0].ring
    amb = sum(m.ambient for m in modules)
    cols = []
    offset = 0
    for m in modules:
        for j in range(m.relations.cols):
            col = [ring.zero()] * amb
            for i in range(m.ambient):
                col[offset + i] = m.relations.entries[i][j]
            cols.append(col)
        offset += m.ambient
    mat = PolyMatrix.from_columns(ring, amb, cols) if cols else PolyMatrix.zero(ring, amb, 0)
    return PresentedModule(ring, amb, mat, limits=modules[0].limits)


# ---- resolutions and Ext ---------------------------------------------------


def _chain(module, length, limits=None):
    """Matrices [d1, d2, ...] of an exact chain of frees over the module."""
    diffs = []
    current = module.relations.drop_zero_columns().dedupe_columns()
    for _ in range(length):
        diffs.append(current)
        if current.cols == 0:
            break
        current = syzygy_matrix(current, limits)
    return diffs


class FreeResolution:
    """F_0 <- F_1 <- ... <- F_k with composition zero and interior exactness."""

    def __init__(self, module, differentials):
        self.module = module
        self.differentials = differentials

    @property
    def length(self):
        return len(self.differentials)

    def ranks(self):
        if not self.differentials:
            return [self.module.ambient]
        out = [self.differentials[0].rows]
        out.extend(d.cols for d in self.differentials)
        return out


def free_resolution(module, length=None, limits=None):
    """Free resolution out to `length` steps (at most r, per the syzygy bound)."""
    r = module.ring.r
    if length is None:
        length = r
    if length > r:
        raise InputError(f"resolution length {length} exceeds variable count {r}")
    diffs = _chain(module, length, limits)
    while diffs and diffs[-1].cols == 0:
        diffs.pop()
    return FreeResolution(module, diffs)


def twist_module(module, automorphism):
    """Transport the presentation entrywise through a ring automorphism."""
    if automorphism is None:
        return module
    return PresentedModule(module.ring, module.ambient,
                           module.relations.map_entries(automorphism.apply),
                           limits=module.limits)


def ext(i, module, twist=None, limits=None):
    """Ext^i of the automorphism-transported module, as a presented module.

    With the involution convention, pass the configured automorphism as
    `twist`; the default (None/identity) computes plain Ext^i(M, R).
    """
    if i < 0:
        raise InputError("ext degree must be nonnegative")
    M = twist_module(module, twist)
    ring = M.ring
    if M.ambient == 0:
        return PresentedModule.zero(ring)
    diffs = _chain(M, i + 1, limits)
    ranks = [M.ambient] + [d.cols for d in diffs]
    if i >= len(ranks) or ranks[i] == 0:
        return PresentedModule.zero(ring)
    n_i = ranks[i]
    # kernel of the dual of d_{i+1}
    if i + 1 <= len(diffs) and i + 1 <= len(ranks) - 1 and ranks[i + 1] > 0:
        d_next_T = diffs[i].transpose()
        K = syzygy_matrix(d_next_T, limits)
    else:
        K = PolyMatrix.identity(ring, n_i)
    if K.cols == 0:
        return PresentedModule.zero(ring)
    span = SubmoduleSpan(ring, n_i, K.column_vecs(), limits)
    rel_cols = []
    if i >= 1:
        d_i_T = diffs[i - 1].transpose()  # n_i x n_{i-1}
        for j in range(d_i_T.cols):
            v = vec_from_polys(ring, d_i_T.column(j))
            coeffs = span.lift(v)
            if coeffs is None:
                raise HypothesisViolation("ext-composite-zero",
                                          "image of dual differential outside kernel")
            rel_cols.append(coeffs)
    for s in span.syzygies():
        rel_cols.append([s.component(j) for j in range(K.cols)])
    rel = PolyMatrix.from_columns(ring, K.cols, rel_cols) if rel_cols \
        else PolyMatrix.zero(ring, K.cols, 0)
    H = PresentedModule(ring, K.cols, rel.drop_zero_columns().dedupe_columns(),
                        limits=M.limits)
    return prune(H)


def dual_map(phi, limits=None):
    """Hom(-, R) applied to a map, with the induced presentations.

    Returns (dual_of_target, dual_of_source, psi) where
    psi : target* -> source*.
    """
    ring = phi.source.ring
    src_star, src_K = module_dual(phi.source, limits)
    tgt_star, tgt_K = module_dual(phi.target, limits)
    span = SubmoduleSpan(ring, phi.source.ambient, src_K.column_vecs(), limits)
    phiT = phi.matrix.transpose()
    cols = []
    for j in range(tgt_K.cols):
        v = vec_from_polys(ring, phiT.matmul(
            PolyMatrix.from_columns(ring, tgt_K.rows, [tgt_K.column(j)])).column(0))
        coeffs = span.lift(v)
        if coeffs is None:
            raise HypothesisViolation("dual-map-lift",
                                      "dual functional not in span of dual generators")
        cols.append(coeffs)
    mat = PolyMatrix.from_columns(ring, src_K.cols, cols) if cols \
        else PolyMatrix.zero(ring, src_K.cols, 0)
    return tgt_star, src_star, ModuleMap(tgt_star, src_star, mat, check=False)


def module_dual(module, limits=None):
    """(M*, K): presentation of Hom(M, R) and the matrix of generator
    functionals; K's columns are the kernel of relations^T, i.e. each
    column is a functional on R^ambient."""
    ring = module.ring
    AT = module.relations.transpose()
    if AT.rows == 0:
        K = PolyMatrix.identity(ring, module.ambient)
    else:
        K = syzygy_matrix(AT, limits)
    rel = syzygy_matrix(K, limits) if K.cols else PolyMatrix.zero(ring, 0, 0)
    dual = PresentedModule(ring, K.cols, rel, limits=module.limits)
    return dual, K


def bidual_map(module, limits=None):
    """The canonical map M -> M**, with M** presented via module_dual twice."""
    ring = module.ring
    dual, K = module_dual(module, limits)
    ddual, K2 = module_dual(dual, limits)
    span = SubmoduleSpan(ring, dual.ambient, K2.column_vecs(), limits) if K2.cols else None
    cols = []
    for a in range(module.ambient):
        # evaluation of generator a against the dual generators = row a of K
        row = [K.entries[a][j] for j in range(K.cols)]
        if K2.cols == 0:
            cols.append([])
            continue
        v = vec_from_polys(ring, row)
        coeffs = span.lift(v)
        if coeffs is None:
            raise HypothesisViolation("bidual-lift",
                                      "evaluation functional not in bidual span")
        cols.append(coeffs)
    if ddual.ambient == 0:
        mat = PolyMatrix.zero(ring, 0, module.ambient)
    else:
        mat = PolyMatrix.from_columns(ring, ddual.ambient, cols)
    return ModuleMap(module, ddual, mat, check=True)


# ---- multilinear constructions --------------------------------------------


def exterior_power(ell, module):
    """Presentation of the ell-th exterior power of the module."""
    m = module.ambient
    if not 1 <= ell <= max(m, 1):
        raise InputError(f"exterior power degree {ell} outside 1..{m}")
    ring = module.ring
    basis = list(combinations(range(m), ell))
    index = {b: i for i, b in enumerate(basis)}
    cols = []
    for j in range(module.relations.cols):
        a = module.relations.column(j)
        for rest in combinations(range(m), ell - 1):
            col = [ring.zero()] * len(basis)
            restset = set(rest)
            for i in range(m):
                if i in restset or a[i].is_zero():
                    continue
                wedge = tuple(sorted(restset | {i}))
                sign = sum(1 for t in rest if t < i) % 2
                contrib = a[i] if sign == 0 else -a[i]
                col[index[wedge]] = col[index[wedge]] + contrib
            cols.append(col)
    mat = PolyMatrix.from_columns(ring, len(basis), cols) if cols \
        else PolyMatrix.zero(ring, len(basis), 0)
    return PresentedModule(ring, len(basis), mat.drop_zero_columns().dedupe_columns(),
                           limits=module.limits)


def compound_matrix(mat, ell):
    """The ell-th compound (matrix of ell x ell minors), functorial for wedge."""
    ring = mat.ring
    row_sets = list(combinations(range(mat.rows), ell))
    col_sets = list(combinations(range(mat.cols), ell))
    entries = []
    for rs in row_sets:
        row = []
        for cs in col_sets:
            sub = [[mat.entries[i][j] for j in cs] for i in rs]
            row.append(det(sub))
        entries.append(row)
    return PolyMatrix(ring, len(row_sets), len(col_sets), entries)


def exterior_power_map(ell, phi):
    src = exterior_power(ell, phi.source)
    tgt = exterior_power(ell, phi.target)
    return ModuleMap(src, tgt, compound_matrix(phi.matrix, ell), check=True)


def fitting_ideal(k, module):
    """Ideal of (ambient - k)-minors of the relation matrix."""
    if k < 0:
        raise InputError("fitting index must be nonnegative")
    ring = module.ring
    size = module.ambient - k
    if size <= 0:
        return Ideal(ring, [ring.one()])
    mat = module.relations
    if size > mat.rows or size > mat.cols:
        return Ideal(ring, [ring.zero()])
    minors = []
    for rs in combinations(range(mat.rows), size):
        for cs in combinations(range(mat.cols), size):
            sub = [[mat.entries[i][j] for j in cs] for i in rs]
            minors.append(det(sub))
    nonzero = [f for f in minors if not f.is_zero()]
    return Ideal(ring, nonzero or [ring.zero()])


def tensor_quotient(module, ideal):
    """M/IM, presented by adjoining ideal multiples of the ambient basis."""
    ring = module.ring
    cols = []
    for f in ideal.generators:
        if f.is_zero():
            continue
        for i in range(module.ambient):
            col = [ring.zero()] * module.ambient
            col[i] = f
            cols.append(col)
    extra = PolyMatrix.from_columns(ring, module.ambient, cols) if cols \
        else PolyMatrix.zero(ring, module.ambient, 0)
    return PresentedModule(ring, module.ambient, module.relations.hstack(extra),
                           limits=module.limits)


# ---- presentation cleanup --------------------------------------------------


def prune(module):
    """Smaller presentation of an isomorphic module: eliminate unit entries,
    drop zero and duplicate relation columns."""
    ring = module.ring
    amb = module.ambient
    work = [row[:] for row in module.relations.entries]
    cols = module.relations.cols
    alive_rows = list(range(amb))
    alive_cols = list(range(cols))
    changed = True
    while changed:
        changed = False
        pivot = None
        for i in alive_rows:
            for j in alive_cols:
                f = work[i][j]
                if not f.is_zero() and f.is_unit():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        c = work[i0][j0].constant_value()
        inv = pow(c, -1, ring.p)
        # column operations: clear row i0 in the other columns
        for j in alive_cols:
            if j == j0 or work[i0][j].is_zero():
                continue
            factor = work[i0][j].scale(inv)
            for i in alive_rows:
                work[i][j] = work[i][j] - factor * work[i][j0]
        # row operations: clear column j0 in the other rows
        for i in alive_rows:
            if i == i0 or work[i][j0].is_zero():
                continue
            factor = work[i][j0].scale(inv)
            for j in alive_cols:
                work[i][j] = work[i][j] - factor * work[i0][j]
        alive_rows.remove(i0)
        alive_cols.remove(j0)
        changed = True
    entries = [[work[i][j] for j in alive_cols] for i in alive_rows]
    mat = PolyMatrix(ring, len(alive_rows), len(alive_cols), entries)
    mat = mat.drop_zero_columns().dedupe_columns()
    return PresentedModule(ring, len(alive_rows), mat, limits=module.limits)
