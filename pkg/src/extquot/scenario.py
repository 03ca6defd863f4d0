"""Scenario files: canonical JSON-shaped text describing a ring, modules,
maps, primes, and requested checks.

Canonical form: UTF-8, keys sorted, indent 1, polynomials printed in
descending monomial order, trailing newline.  Serializing a parsed
scenario reproduces the canonical bytes exactly, which is what makes
certificates diffable and reruns byte-identical.
"""

import hashlib
import json

from .errors import InputError, Limits
from .ideals import Ideal
from .invariants import PrimeCertificate
from .modules import PolyMatrix, PresentedModule
from .ring import Ring, format_poly, parse_poly

SCENARIO_FORMAT = "extquot-scenario/1"

KINDS = ("groebner", "invariant", "exterior-lemma", "exterior-corollary",
         "theorem-A", "theorem-B", "theorem-C", "random-suite", "oracle")


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def digest(text):
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


class Scenario:
    """Parsed scenario plus its canonical serialization."""

    def __init__(self, kind, ring, payload, seed=None, limits=None):
        if kind not in KINDS:
            raise InputError(f"unknown scenario kind {kind!r}")
        self.kind = kind
        self.ring = ring
        self.payload = payload
        self.seed = seed
        self.limits = limits or Limits()

    # ---- serialization ------------------------------------------------

    def to_obj(self):
        obj = {"format": SCENARIO_FORMAT,
               "kind": self.kind,
               "ring": {"p": self.ring.p, "r": self.ring.r,
                        "order": self.ring.order,
                        "perm": list(self.ring.perm)},
               "payload": self.payload}
        if self.seed is not None:
            obj["seed"] = self.seed
        obj["limits"] = {"degree": self.limits.degree, "gb": self.limits.gb,
                         "seconds": self.limits.seconds}
        return obj

    def canonical_text(self):
        return canonical_dumps(self.to_obj())

    def digest(self):
        return digest(self.canonical_text())

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.canonical_text())

    # ---- parsing -------------------------------------------------------

    @staticmethod
    def from_text(text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"scenario parse error at line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}")
        if not isinstance(obj, dict):
            raise InputError("scenario must be a JSON object")
        if obj.get("format") != SCENARIO_FORMAT:
            raise InputError(f"unsupported scenario format {obj.get('format')!r}")
        kind = obj.get("kind")
        ring_spec = obj.get("ring")
        if not isinstance(ring_spec, dict):
            raise InputError("scenario missing ring spec")
        ring = Ring(int(ring_spec.get("p", 0)), int(ring_spec.get("r", 0)),
                    ring_spec.get("order", "grevlex"),
                    ring_spec.get("perm"))
        limits = Limits()
        lim = obj.get("limits", {})
        if "degree" in lim:
            limits.degree = int(lim["degree"])
        if "gb" in lim:
            limits.gb = int(lim["gb"])
        if "seconds" in lim:
            limits.seconds = float(lim["seconds"])
        payload = obj.get("payload")
        if not isinstance(payload, dict):
            raise InputError("scenario missing payload object")
        return Scenario(kind, ring, payload, obj.get("seed"), limits)

    @staticmethod
    def load(path):
        try:
            with open(path, encoding="utf-8") as fh:
                return Scenario.from_text(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read scenario: {exc}")


# ---- payload decoding helpers ----------------------------------------------


def decode_matrix(ring, rows_list, what="matrix"):
    if not isinstance(rows_list, list) or not all(isinstance(r, list) for r in rows_list):
        raise InputError(f"{what} must be a list of rows")
    rows = len(rows_list)
    cols = len(rows_list[0]) if rows else 0
    if any(len(r) != cols for r in rows_list):
        raise InputError(f"{what} has ragged rows")
    entries = [[parse_poly(ring, s) for s in row] for row in rows_list]
    return PolyMatrix(ring, rows, cols, entries)


def encode_matrix(mat):
    return [[format_poly(x) for x in row] for row in mat.entries]


def decode_module(ring, obj, what="module"):
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be an object")
    amb = obj.get("ambient_rank")
    if not isinstance(amb, int) or amb < 0:
        raise InputError(f"{what} needs a nonnegative ambient_rank")
    rel_rows = obj.get("relations", [])
    if rel_rows:
        mat = decode_matrix(ring, rel_rows, f"{what}.relations")
        if mat.rows != amb:
            raise InputError(f"{what}.relations row count differs from ambient_rank")
    else:
        mat = PolyMatrix.zero(ring, amb, 0)
    return PresentedModule(ring, amb, mat)


def encode_module(module):
    return {"ambient_rank": module.ambient,
            "relations": encode_matrix(module.relations)}


def decode_prime(ring, obj):
    if not isinstance(obj, dict):
        raise InputError("prime must be an object")
    gens = [parse_poly(ring, s) for s in obj.get("generators", [])]
    if not gens:
        raise InputError("prime needs generators")
    codim = obj.get("codim")
    prov = obj.get("provenance", "user-declared")
    return PrimeCertificate(Ideal(ring, gens), int(codim), prov)


def encode_prime(prime):
    return {"generators": [format_poly(g) for g in prime.ideal.generators],
            "codim": prime.codim,
            "provenance": prime.provenance}


def exterior_payload(scn):
    """Serialize an ExteriorScenario back into a scenario payload, so
    failing randomized instances can be persisted and replayed."""
    return {
        "X": encode_module(scn.X),
        "lambda": encode_matrix(scn.lam.matrix),
        "I": [{"module": encode_module(Imod),
               "inclusion": encode_matrix(incl.matrix)}
              for Imod, incl in scn.I_list],
        "J": [encode_matrix(J) for J in scn.J_list],
        "primes": [encode_prime(P) for P in scn.declared_primes],
        "rhs_modules": [encode_module(m) for m in scn.rhs_modules],
    }
