import random

import pytest

from extquot.errors import HypothesisViolation, InputError
from extquot.ideals import Ideal, ideal_product
from extquot.invariants import (ChernClass, PrimeCertificate, annihilator,
                                char_class_c1, chern_t2, is_free_at,
                                is_pseudo_null, localization_length,
                                pseudo_null_part, reflexive_hull,
                                saturate_into_zero, support_codim,
                                torsion_free_quotient, torsion_submodule)
from extquot.modgb import SubmoduleSpan
from extquot.modules import (ModuleMap, PolyMatrix, PresentedModule, ext,
                             fitting_ideal, kernel_map, submodule_from_columns)
from extquot.oracle import module_dimension_by_enumeration
from extquot.ring import Ring, format_poly

from conftest import cyc, mat, mod, random_finite_length_module, random_poly


def spans_equal(ring, rank, mat_a, mat_b):
    return SubmoduleSpan(ring, rank, mat_a.column_vecs()).equals(
        SubmoduleSpan(ring, rank, mat_b.column_vecs()))


def test_support_codim_examples(R5):
    assert support_codim(cyc(R5, "x1")) == 1
    assert support_codim(cyc(R5, "x1", "x2")) == 2
    assert support_codim(cyc(R5, "x1^2", "x1*x2")) == 1
    assert support_codim(mod(R5, 1)) == 0
    assert support_codim(cyc(R5, "1")) == 3  # sentinel r + 1


def test_torsion_submodule_examples(R5):
    # direct sum R/(x) + R: torsion part is the R/(x) summand
    M = mod(R5, 2, [["x1"], ["0"]])
    T, incl = torsion_submodule(M)
    assert not T.is_zero_module() and T.rank() == 0
    assert spans_equal(R5, 2, incl.matrix.hstack(M.relations),
                       mat(R5, [["1", "x1"], ["0", "0"]]))
    assert torsion_submodule(mod(R5, 2))[0].is_zero_module()
    ideal_mod = mod(R5, 2, [["x2"], ["4*x1"]])
    assert torsion_submodule(ideal_mod)[0].is_zero_module()
    tf, _ = torsion_free_quotient(M)
    assert torsion_submodule(tf)[0].is_zero_module()


def test_reflexive_hull_examples(R5):
    ideal_mod = mod(R5, 2, [["x2"], ["4*x1"]])  # the ideal (x, y) as a module
    hull, can = reflexive_hull(ideal_mod)
    # the hull is free of rank one: Fitt_1 = R, Fitt_0 = 0
    assert fitting_ideal(1, hull).is_unit()
    assert fitting_ideal(0, hull).is_zero()
    from extquot.modules import cokernel
    C, _ = cokernel(can)
    assert support_codim(C) >= 2
    assert C.dim_k() == 1  # cokernel is R/(x,y)
    free = mod(R5, 2)
    hull2, can2 = reflexive_hull(free)
    K, _ = kernel_map(can2)
    assert K.is_zero_module()
    torsion = cyc(R5, "x1")
    hull3, _ = reflexive_hull(torsion)
    assert hull3.is_zero_module()


def test_biduality_consistency(R5):
    rng = random.Random(30)
    for _ in range(6):
        amb = rng.randint(1, 2)
        cols = [[random_poly(rng, R5, 2) for _ in range(amb)]
                for _ in range(rng.randint(1, 2))]
        M = PresentedModule(R5, amb, PolyMatrix.from_columns(R5, amb, cols))
        hull, can = reflexive_hull(M)
        K, inclK = kernel_map(can)
        T, inclT = torsion_submodule(M)
        assert spans_equal(R5, amb, inclK.matrix.hstack(M.relations),
                           inclT.matrix.hstack(M.relations))
        from extquot.modules import cokernel
        C, _ = cokernel(can)
        assert support_codim(C) >= 2


def test_pseudo_null_part_examples(R5):
    T2, _ = pseudo_null_part(cyc(R5, "x1", "x2"))
    assert T2.dim_k() == 1
    T2b, _ = pseudo_null_part(cyc(R5, "x1"))
    assert T2b.is_zero_module()
    M = cyc(R5, "x1^2", "x1*x2")
    T2c, incl = pseudo_null_part(M)
    assert T2c.dim_k() == 1
    assert support_codim(T2c) >= 2
    # saturation oracle: (0 : (x,y)^inf) inside M spans the same submodule
    sat = saturate_into_zero(M, [R5.var(0), R5.var(1)])
    assert spans_equal(R5, 1, incl.matrix.hstack(M.relations), sat)


def test_pseudo_null_saturation_oracle(R5):
    rng = random.Random(31)
    for _ in range(8):
        M, points = random_finite_length_module(rng, R5)
        T2, incl = pseudo_null_part(M)
        # finite length modules are all pseudo-null
        assert T2.dim_k() == M.dim_k() == module_dimension_by_enumeration(M)


def test_char_class_examples(R5):
    assert format_poly(char_class_c1(cyc(R5, "x1^2*x2")).principal_rep) == "x1^2*x2"
    ds = mod(R5, 2, [["x1", "0"], ["0", "x2"]])
    assert format_poly(char_class_c1(ds).principal_rep) == "x1*x2"
    dg = mod(R5, 2, [["x1", "0"], ["0", "x1+x2"]])
    assert format_poly(char_class_c1(dg).principal_rep) == "x1^2+x1*x2"
    free = mod(R5, 2)
    assert char_class_c1(free).principal_rep.is_unit()


def test_c1_additivity(R5):
    rng = random.Random(32)
    for _ in range(8):
        # torsion module and a torsion submodule generated by random elements
        M, _ = random_finite_length_module(rng, R5)
        cols = []
        for _ in range(rng.randint(1, 2)):
            cols.append([random_poly(rng, R5, 1) for _ in range(M.ambient)])
        S, inclS = submodule_from_columns(M, cols)
        quot = PresentedModule(R5, M.ambient,
                               inclS.matrix.hstack(M.relations))
        a = char_class_c1(S).principal_rep
        b = char_class_c1(quot).principal_rep
        c = char_class_c1(M).principal_rep
        assert c.is_associate(a * b)


def test_chern_class_equality_semantics(R5):
    c1a = ChernClass(1, {}, R5.parse("2*x1"))
    c1b = ChernClass(1, {}, R5.parse("x1"))
    assert c1a == c1b  # associates
    assert c1a != ChernClass(1, {}, R5.parse("x2"))
    P = PrimeCertificate.rational_point(R5, [0, 0])
    t2a = ChernClass(2, {P.ideal: 1})
    t2b = ChernClass(2, {Ideal(R5, [R5.parse("x2"), R5.parse("x1")]): 1})
    assert t2a == t2b


def test_prime_certification(R5):
    P = PrimeCertificate.rational_point(R5, [1, 2])
    assert P.verified and P.codim == 2 and P.residue_degree() == 1
    # declared maximal prime in two variables with a degree-2 residue field
    Q = PrimeCertificate(Ideal(R5, [R5.parse("x1^2+2"), R5.var(1)]), 2,
                         "maximal-in-2-vars")
    assert Q.verified and Q.residue_degree() == 2
    with pytest.raises(HypothesisViolation):
        PrimeCertificate(Ideal(R5, [R5.var(0)]), 2, "linear-form-generated")
    with pytest.raises(HypothesisViolation):
        PrimeCertificate(Ideal(R5, [R5.parse("x1^2")]), 1, "linear-form-generated")
    with pytest.raises(HypothesisViolation):
        # (x*(x-1), y) is not a field quotient: mult by x is not injective
        PrimeCertificate(Ideal(R5, [R5.parse("x1^2+4*x1"), R5.var(1)]), 2,
                         "maximal-in-2-vars")
    U = PrimeCertificate(Ideal(R5, [R5.parse("x1^2+2"), R5.var(1)]), 2)
    assert not U.verified  # user-declared carries the unverified flag


def test_localization_length_examples(R5):
    P = PrimeCertificate.rational_point(R5, [0, 0])
    assert localization_length(cyc(R5, "x1", "x2"), P) == 1
    assert localization_length(cyc(R5, "x1^2", "x2"), P) == 2
    M = mod(R5, 2, [["x1", "x2", "0", "0"], ["0", "0", "x1+4", "x2"]])
    assert localization_length(M, P) == 1


def test_localization_length_residue_degree(R5):
    Q = PrimeCertificate(Ideal(R5, [R5.parse("x1^2+2"), R5.var(1)]), 2,
                         "maximal-in-2-vars")
    M = cyc(R5, "x1^2+2", "x2")
    assert M.dim_k() == 2
    assert localization_length(M, Q) == 1


def test_chern_t2_examples(R5):
    P = PrimeCertificate.rational_point(R5, [0, 0])
    c = chern_t2(cyc(R5, "x1^2", "x1*x2"), [P])
    assert c.terms == {P.ideal: 1}
    c2 = chern_t2(cyc(R5, "x1", "x2^2"), [P])
    assert c2.terms == {P.ideal: 2}
    assert chern_t2(mod(R5, 1), [P]).is_trivial()


def test_chern_t2_coverage_failure(R5):
    P = PrimeCertificate.rational_point(R5, [1, 1])
    with pytest.raises(HypothesisViolation):
        chern_t2(cyc(R5, "x1", "x2"), [P])


def test_t2_additivity_on_pseudo_null(R5):
    rng = random.Random(33)
    for _ in range(6):
        M, grid = random_finite_length_module(rng, R5, points=[(0, 0), (1, 2)])
        prms = [PrimeCertificate.rational_point(R5, list(p)) for p in grid]
        cols = [[random_poly(rng, R5, 1) for _ in range(M.ambient)]]
        S, inclS = submodule_from_columns(M, cols)
        quot = PresentedModule(R5, M.ambient, inclS.matrix.hstack(M.relations))
        total = chern_t2(M, prms)
        parts = chern_t2(S, prms).plus(chern_t2(quot, prms))
        assert total == parts


def test_length_bookkeeping_exactness(R5):
    rng = random.Random(34)
    for _ in range(6):
        M, grid = random_finite_length_module(rng, R5, points=[(0, 0), (2, 3)])
        prms = [PrimeCertificate.rational_point(R5, list(p)) for p in grid]
        dim = module_dimension_by_enumeration(M)
        total = sum(localization_length(M, P) * P.residue_degree() for P in prms)
        assert total == dim


def test_is_free_at_examples(R5):
    M = mod(R5, 2, [["x1"], ["0"]])  # R/(x) + R
    P_far = PrimeCertificate.rational_point(R5, [1, 0])
    P_org = PrimeCertificate.rational_point(R5, [0, 0])
    assert is_free_at(M, P_far, 1)
    assert not is_free_at(M, P_org, 1)
    ds = mod(R5, 2, [["x1", "0"], ["0", "x2"]])
    P_mixed = PrimeCertificate.rational_point(R5, [0, 1])
    assert not is_free_at(ds, P_mixed, 1)
    assert is_free_at(mod(R5, 2), P_org, 2)


def _directly_free(M, P, rank):
    """Search for a basis among ambient generators: kernel and cokernel of
    the guessed map must be killed by something outside P."""
    from itertools import combinations
    ring = M.ring
    gb = P.ideal.groebner()
    from extquot.ideals import normal_form
    for subset in combinations(range(M.ambient), rank):
        cols = []
        for j in subset:
            col = [ring.zero()] * M.ambient
            col[j] = ring.one()
            cols.append(col)
        free = PresentedModule(ring, rank)
        matx = PolyMatrix.from_columns(ring, M.ambient, cols)
        phi = ModuleMap(free, M, matx, check=False)
        K, _ = kernel_map(phi)
        from extquot.modules import cokernel
        C, _ = cokernel(phi)
        annK = annihilator(K)
        annC = annihilator(C)
        okK = any(not normal_form(g, gb).is_zero() for g in annK.generators)
        okC = any(not normal_form(g, gb).is_zero() for g in annC.generators)
        if okK and okC:
            return True
    return False


def test_free_at_prime_soundness(R5):
    cases = [
        (mod(R5, 2, [["x1"], ["0"]]), [1, 0], 1),
        (mod(R5, 2, [["x1"], ["0"]]), [0, 0], 1),
        (mod(R5, 2, [["x1", "0"], ["0", "x2"]]), [0, 1], 1),
        (mod(R5, 2), [0, 0], 2),
        (mod(R5, 3, [["x1*x2"], ["0"], ["0"]]), [1, 1], 2),
    ]
    for M, pt, rank in cases:
        P = PrimeCertificate.rational_point(R5, pt)
        assert is_free_at(M, P, rank) == _directly_free(M, P, rank)


def test_annihilator(R5):
    M = mod(R5, 2, [["x1", "0", "0"], ["0", "x1", "x2"]])
    assert [format_poly(g) for g in annihilator(M).groebner()] == ["x1"]
    assert annihilator(mod(R5, 0)).is_unit()


def test_remark_c2_of_ext2(R5):
    rng = random.Random(35)
    for _ in range(5):
        M, grid = random_finite_length_module(rng, R5, points=[(0, 0), (1, 1)])
        prms = [PrimeCertificate.rational_point(R5, list(p)) for p in grid]
        assert chern_t2(ext(2, M), prms) == chern_t2(M, prms)
        assert ext(2, M).dim_k() == M.dim_k()


def test_r3_localization_paths():
    R3 = Ring(5, 3)
    M = PresentedModule.cyclic(R3, [R3.var(0), R3.var(1) * R3.var(1)])
    P = PrimeCertificate.linear(R3, [R3.var(0), R3.var(1)])
    assert P.codim == 2
    assert localization_length(M, P) == 2
    c = chern_t2(M, [P])
    assert c.terms == {P.ideal: 2}
    # coverage failure when candidates miss the support
    Q = PrimeCertificate.linear(R3, [R3.var(0), R3.var(2)])
    with pytest.raises(HypothesisViolation):
        chern_t2(M, [Q])
