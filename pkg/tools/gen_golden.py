"""Regenerate the golden scenario files under golden/.

Each instance was audited by hand (the koszul and nested quotients, the
error-term and nonzero-E instances) or cross-checked against the
enumeration oracle before being frozen here.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from extquot.ring import Ring, format_poly
from extquot.scenario import Scenario

OUT = os.path.join(os.path.dirname(__file__), "..", "golden")


def module(amb, rel_rows):
    return {"ambient_rank": amb, "relations": rel_rows}


def point(ring, a, b):
    def fmt(i, c):
        if c == 0:
            return f"x{i}"
        return f"x{i}+{(-c) % ring.p}"
    return {"generators": [fmt(1, a), fmt(2, b)], "codim": 2,
            "provenance": "linear-form-generated"}


def ideal_scenario_l1(ring, pairs, primes, kind="theorem-A", rhs=None, seed=None):
    """l=1 scenarios: X = F = R, lambda = id, I_i an ideal with J_i = (hull)."""
    payload = {
        "X": module(1, []),
        "lambda": [["1"]],
        "I": [{"module": module(len(gens), syz_rows(ring, gens)),
               "inclusion": [list(gens)]} for gens, _ in pairs],
        "J": [[[hull]] for _, hull in pairs],
        "primes": primes,
    }
    if rhs is not None:
        payload["rhs_modules"] = rhs
    return Scenario(kind, ring, payload, seed=seed)


def syz_rows(ring, gens):
    """Relation matrix rows (as strings) for an ideal presented on gens."""
    from extquot.ideals import Ideal
    from extquot.modules import PolyMatrix, syzygy_matrix
    from extquot.ring import parse_poly
    polys = [parse_poly(ring, g) for g in gens]
    mat = PolyMatrix(ring, 1, len(polys), [polys])
    syz = syzygy_matrix(mat)
    return [[format_poly(x) for x in row] for row in syz.entries]


def main():
    os.makedirs(OUT, exist_ok=True)
    R = Ring(5, 2)
    p00 = point(R, 0, 0)
    p01 = point(R, 0, 1)
    p10 = point(R, 1, 0)
    p11 = point(R, 1, 1)

    # -- theorem-A golden files ------------------------------------------
    ideal_scenario_l1(R, [(["x1"], "x1"), (["x2"], "x2")], [p00]) \
        .save(os.path.join(OUT, "koszul_l1.scn"))
    ideal_scenario_l1(R, [(["x1^2"], "x1^2"), (["x1*x2"], "x1*x2")], [p00]) \
        .save(os.path.join(OUT, "nested_l1.scn"))
    # B_i nonzero, error module C nonzero: I_1 = x(x,y) in (x), I_2 = y(x,y) in (y)
    ideal_scenario_l1(R, [(["x1^2", "x1*x2"], "x1"), (["x1*x2", "x2^2"], "x2")],
                      [p00]).save(os.path.join(OUT, "error_term.scn"))
    # Q(E) nonzero: X = (x,y) as a module, lambda the inclusion into R
    Scenario("theorem-A", R, {
        "X": module(2, [["x2"], ["4*x1"]]),
        "lambda": [["x1", "x2"]],
        "I": [{"module": module(2, [["x2"], ["4*x1"]]),
               "inclusion": [["x1^2", "0"], ["0", "x1^2"]]},
              {"module": module(2, [["x2"], ["4*x1"]]),
               "inclusion": [["x1*x2", "0"], ["0", "x1*x2"]]}],
        "J": [[["x1^2"]], [["x1*x2"]]],
        "primes": [p00],
    }).save(os.path.join(OUT, "nonzero_e.scn"))

    # -- theorem-B golden files ------------------------------------------
    thmB = []
    # 1: free rank 2, diagonal inclusions, lengths 0 at far prime
    thmB.append({
        "M": module(2, []),
        "I": [{"module": module(2, []), "inclusion": [["x1", "0"], ["0", "x1"]]},
              {"module": module(2, []), "inclusion": [["x2", "0"], ["0", "x2"]]}],
        "primes": [p11, p00], "rank": 2})
    # 2: lengths 2 at (x1, x2-1) via L = [x1^2, x2*(x2-1)]
    thmB.append({
        "M": module(1, []),
        "I": [{"module": module(1, []), "inclusion": [["x1^2"]]},
              {"module": module(1, []), "inclusion": [["x2^2+4*x2"]]}],
        "primes": [p01, p00, p11], "rank": 1})
    # 3: torsion summand excludes primes over (x1)
    thmB.append({
        "M": module(3, [["x1"], ["0"], ["0"]]),
        "I": [{"module": module(2, []),
               "inclusion": [["0", "0"], ["x1+4", "0"], ["0", "x2+4"]]}],
        "primes": [p00, p11], "rank": 2})
    # 4: unimodular twist of diagonals
    thmB.append({
        "M": module(2, []),
        "I": [{"module": module(2, []),
               "inclusion": [["x1", "x1*x2"], ["0", "x1"]]},
              {"module": module(2, []),
               "inclusion": [["x2", "0"], ["x2^2", "x2"]]}],
        "primes": [p00, p11], "rank": 2})
    # 5: single inclusion, length equality on a divisorial pair (infinite both)
    thmB.append({
        "M": module(1, []),
        "I": [{"module": module(1, []), "inclusion": [["x1*x2"]]}],
        "primes": [p00, p11], "rank": 1})
    # 6: three coprime-ish inclusions
    thmB.append({
        "M": module(1, []),
        "I": [{"module": module(1, []), "inclusion": [["x1"]]},
              {"module": module(1, []), "inclusion": [["x2"]]},
              {"module": module(1, []), "inclusion": [["x1+x2"]]}],
        "primes": [p00, p11], "rank": 1})
    # 7: rank-2 with nontrivial common factor
    thmB.append({
        "M": module(2, []),
        "I": [{"module": module(2, []),
               "inclusion": [["x1^2", "0"], ["0", "x1"]]},
              {"module": module(2, []),
               "inclusion": [["x1*x2", "0"], ["0", "x1"]]}],
        "primes": [p00, p11], "rank": 2})
    # 8: quadratic-extension point as declared prime (maximal-in-2-vars)
    thmB.append({
        "M": module(1, []),
        "I": [{"module": module(1, []), "inclusion": [["x1^2+2"]]},
              {"module": module(1, []), "inclusion": [["x2"]]}],
        "primes": [{"generators": ["x1^2+2", "x2"], "codim": 2,
                    "provenance": "maximal-in-2-vars"}, p00], "rank": 1})
    # 9: not free anywhere relevant (torsion block at both declared primes)
    thmB.append({
        "M": module(3, [["x1*x2"], ["0"], ["0"]]),
        "I": [{"module": module(2, []),
               "inclusion": [["0", "0"], ["x1", "0"], ["0", "x2"]]}],
        "primes": [p00], "rank": 2})
    # 10: mixed free/non-free declared primes
    thmB.append({
        "M": module(2, [["x1"], ["0"]]),
        "I": [{"module": module(1, []), "inclusion": [["0"], ["x2^2"]]}],
        "primes": [p00, p10, p11], "rank": 1})
    for i, payload in enumerate(thmB, 1):
        Scenario("theorem-B", R, payload).save(
            os.path.join(OUT, f"thmB_{i:02d}.scn"))

    # -- theorem-C golden files ------------------------------------------
    zero_mod = module(0, [])
    ideal_scenario_l1(R, [(["x1"], "x1"), (["x2"], "x2")], [p00],
                      kind="theorem-C",
                      rhs=[module(1, [["x1", "x2"]]), zero_mod, zero_mod, zero_mod]) \
        .save(os.path.join(OUT, "thmC_koszul.scn"))
    ideal_scenario_l1(R, [(["x1"], "x1"), (["x2^2+4*x2"], "x2^2+4*x2")],
                      [p00, p01],
                      kind="theorem-C",
                      rhs=[module(1, [["x1", "x2"]]),
                           module(1, [["x1", "x2+4"]]), zero_mod, zero_mod]) \
        .save(os.path.join(OUT, "thmC_two_prime.scn"))
    ideal_scenario_l1(R, [(["x1"], "x1"), (["x1*x2"], "x1*x2")], [p00],
                      kind="theorem-C",
                      rhs=[module(1, [["x1"]]), module(1, [["x1"]]),
                           zero_mod, zero_mod]) \
        .save(os.path.join(OUT, "thmC_non_coprime.scn"))
    print("golden files written to", OUT)


if __name__ == "__main__":
    main()
