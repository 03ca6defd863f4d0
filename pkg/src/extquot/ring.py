"""Sparse multivariate polynomial arithmetic over a prime field F_p.

A Ring fixes the characteristic p, the number of variables r (named
x1..xr), and a monomial order (lexicographic or graded reverse
lexicographic, with an optional variable permutation).  Polynomials are
immutable maps from exponent vectors to nonzero coefficients in F_p.
"""

import re

from .errors import ExactDivisionError, InputError

MAX_VARS = 6

ORDER_TAGS = ("grevlex", "lex", "elim1")


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Ring:
    """F_p[x1..xr] with a fixed monomial order.

    ``order`` is one of "grevlex", "lex", or "elim1" (grevlex on x2..xr
    with x1 dominating every monomial in the remaining variables; used
    internally for elimination).  ``perm`` permutes the variables before
    comparison: perm[0] is the most significant variable index.
    """

    __slots__ = ("p", "r", "order", "perm", "_key")

    def __init__(self, p, r, order="grevlex", perm=None):
        if not _is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if not (1 <= r <= MAX_VARS):
            raise InputError(f"number of variables {r} outside 1..{MAX_VARS}")
        if order not in ORDER_TAGS:
            raise InputError(f"unknown monomial order {order!r}")
        self.p = p
        self.r = r
        self.order = order
        self.perm = tuple(perm) if perm is not None else tuple(range(r))
        if sorted(self.perm) != list(range(r)):
            raise InputError(f"perm {perm} is not a permutation of 0..{r - 1}")
        self._key = self._make_key()

    def _make_key(self):
        perm = self.perm
        if self.order == "lex":
            def key(e, perm=perm):
                return tuple(e[i] for i in perm)
        elif self.order == "grevlex":
            rev = tuple(reversed(perm))
            def key(e, rev=rev):
                return (sum(e),) + tuple(-e[i] for i in rev)
        else:  # elim1: x1 first, grevlex on the rest
            rev = tuple(i for i in reversed(range(1, self.r)))
            def key(e, rev=rev):
                return (e[0], sum(e[1:])) + tuple(-e[i] for i in rev)
        return key

    def key(self, exponent):
        """Sort key; larger key means larger monomial."""
        return self._key(exponent)

    def zero_exp(self):
        return (0,) * self.r

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.p == other.p and self.r == other.r
                and self.order == other.order and self.perm == other.perm)

    def __hash__(self):
        return hash((self.p, self.r, self.order, self.perm))

    def __repr__(self):
        return f"Ring(p={self.p}, r={self.r}, order={self.order!r})"

    # ---- polynomial constructors ------------------------------------

    def poly(self, terms):
        """Polynomial from {exponent tuple: int coefficient}; zeros dropped."""
        p = self.p
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                clean[tuple(e)] = c
        return Polynomial(self, clean)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.zero_exp(): 1})

    def const(self, c):
        return self.poly({self.zero_exp(): c})

    def var(self, i):
        if not 0 <= i < self.r:
            raise InputError(f"variable index {i} out of range")
        e = [0] * self.r
        e[i] = 1
        return self.poly({tuple(e): 1})

    def monomial(self, exponent, coeff=1):
        return self.poly({tuple(exponent): coeff})

    def parse(self, text):
        return parse_poly(self, text)


_TERM_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(ring, text):
    """Parse `2*x1^2*x2 + 3*x2 - 1` style syntax.  Round-trips with format."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial string")
    if s == "0":
        return ring.zero()
    # split into signed chunks
    chunks = []
    sign = 1
    if s[0] == "+":
        s = s[1:]
    elif s[0] == "-":
        sign = -1
        s = s[1:]
    buf = ""
    for ch in s:
        if ch in "+-":
            if not buf:
                raise InputError(f"dangling sign in {text!r}")
            chunks.append((sign, buf))
            sign = 1 if ch == "+" else -1
            buf = ""
        else:
            buf += ch
    if not buf:
        raise InputError(f"dangling sign in {text!r}")
    chunks.append((sign, buf))

    terms = {}
    for sign, chunk in chunks:
        coeff = sign
        exp = [0] * ring.r
        for factor in chunk.split("*"):
            if not factor:
                raise InputError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _TERM_RE.match(factor)
            if not m:
                raise InputError(f"bad factor {factor!r} in {text!r}")
            idx = int(m.group(1)) - 1
            if not 0 <= idx < ring.r:
                raise InputError(f"variable x{idx + 1} outside ring with r={ring.r}")
            exp[idx] += int(m.group(2)) if m.group(2) else 1
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + coeff
    return ring.poly(terms)


class Polynomial:
    """Immutable sparse polynomial; terms maps exponent tuple -> coeff in 1..p-1."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def lead(self):
        """(exponent, coeff) of the leading term under the ring order."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=self.ring.key)
            self._lead = (e, self.terms[e])
        return self._lead

    def lead_exp(self):
        return self.lead()[0]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_unit(self):
        return len(self.terms) == 1 and sum(self.lead_exp()) == 0

    def constant_value(self):
        return self.terms.get(self.ring.zero_exp(), 0)

    # ---- arithmetic --------------------------------------------------

    def __add__(self, other):
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = (t.get(e, 0) + c) % p
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    def __sub__(self, other):
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = (t.get(e, 0) - c) % p
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __mul__(self, other):
        p = self.ring.p
        out = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                nc = (out.get(e, 0) + ca * cb) % p
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, coeff):
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (c * coeff) % p for e, c in self.terms.items()})

    def mul_term(self, exponent, coeff):
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {
            tuple(x + y for x, y in zip(e, exponent)): (c * coeff) % p
            for e, c in self.terms.items()})

    def monic(self):
        """Scale so the leading coefficient is 1."""
        if not self.terms:
            return self
        _, c = self.lead()
        return self.scale(pow(c, -1, self.ring.p))

    # ---- division ----------------------------------------------------

    def divmod_single(self, divisor):
        """Quotient and remainder for division by a single polynomial.

        For an exact multiple the remainder is zero regardless of the
        monomial order, since leading terms are multiplicative.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        p = ring.p
        de, dc = divisor.lead()
        dc_inv = pow(dc, -1, p)
        quo = {}
        rem = {}
        work = dict(self.terms)
        while work:
            e = max(work, key=ring.key)
            c = work[e]
            if all(a >= b for a, b in zip(e, de)):
                qe = tuple(a - b for a, b in zip(e, de))
                qc = (c * dc_inv) % p
                quo[qe] = (quo.get(qe, 0) + qc) % p
                for te, tc in divisor.terms.items():
                    ne = tuple(a + b for a, b in zip(qe, te))
                    nc = (work.get(ne, 0) - qc * tc) % p
                    if nc:
                        work[ne] = nc
                    else:
                        work.pop(ne, None)
            else:
                rem[e] = c
                del work[e]
        return ring.poly(quo), ring.poly(rem)

    def exact_div(self, divisor):
        """Exact division; raises ExactDivisionError if the division leaves a remainder."""
        q, rem = self.divmod_single(divisor)
        if not rem.is_zero():
            raise ExactDivisionError(
                f"{format_poly(self)} is not divisible by {format_poly(divisor)}")
        return q

    def divides(self, other):
        if self.is_zero():
            return other.is_zero()
        try:
            other.exact_div(self)
            return True
        except ExactDivisionError:
            return False

    def is_associate(self, other):
        """Equal up to a unit (nonzero constant)."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def format_poly(f):
    """Canonical text: descending monomial order, coefficients in 1..p-1."""
    if f.is_zero():
        return "0"
    ring = f.ring
    parts = []
    for e in sorted(f.terms, key=ring.key, reverse=True):
        c = f.terms[e]
        factors = []
        if c != 1 or not any(e):
            factors.append(str(c))
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k > 1:
                factors.append(f"x{i + 1}^{k}")
        parts.append("*".join(factors))
    return "+".join(parts)


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class RingAutomorphism:
    """A verified ring automorphism given by variable images and their inverses.

    Construction checks that forward and inverse compose to the identity
    on the variables, in both orders.
    """

    __slots__ = ("ring", "forward", "inverse")

    def __init__(self, ring, forward, inverse):
        if len(forward) != ring.r or len(inverse) != ring.r:
            raise InputError("automorphism needs one image per variable")
        self.ring = ring
        self.forward = list(forward)
        self.inverse = list(inverse)
        for i in range(ring.r):
            xi = ring.var(i)
            if substitute(self.inverse[i], self.forward) != xi:
                raise InputError(f"inverse(forward) is not the identity on x{i + 1}")
            if substitute(self.forward[i], self.inverse) != xi:
                raise InputError(f"forward(inverse) is not the identity on x{i + 1}")

    @staticmethod
    def identity(ring):
        vars_ = [ring.var(i) for i in range(ring.r)]
        return RingAutomorphism(ring, vars_, vars_)

    @staticmethod
    def affine(ring, scales, shifts):
        """x_i -> scales[i]*x_i + shifts[i] with scales[i] invertible mod p."""
        p = ring.p
        fwd, inv = [], []
        for i in range(ring.r):
            a = scales[i] % p
            b = shifts[i] % p
            if a == 0:
                raise InputError("affine automorphism needs invertible scale")
            a_inv = pow(a, -1, p)
            fwd.append(ring.poly({tuple(1 if j == i else 0 for j in range(ring.r)): a,
                                  ring.zero_exp(): b}))
            inv.append(ring.poly({tuple(1 if j == i else 0 for j in range(ring.r)): a_inv,
                                  ring.zero_exp(): (-a_inv * b) % p}))
        return RingAutomorphism(ring, fwd, inv)

    def apply(self, f):
        return substitute(f, self.forward)

    def apply_inverse(self, f):
        return substitute(f, self.inverse)

    def inverted(self):
        return RingAutomorphism(self.ring, self.inverse, self.forward)


def substitute(f, images):
    """Evaluate f at the polynomial tuple `images` (one per variable)."""
    ring = f.ring
    out = ring.zero()
    pow_cache = [{0: ring.one()} for _ in range(ring.r)]
    for e, c in f.terms.items():
        term = ring.const(c)
        for i, k in enumerate(e):
            if k == 0:
                continue
            cache = pow_cache[i]
            if k not in cache:
                base = images[i]
                best = max(j for j in cache if j <= k)
                acc = cache[best]
                for j in range(best, k):
                    acc = acc * base
                    cache[j + 1] = acc
            term = term * cache[k]
        out = out + term
    return out
