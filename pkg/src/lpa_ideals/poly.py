"""Exact univariate polynomials over Q or a small prime field.

Coefficients are stored in ascending degree with no trailing zeros, so the
zero polynomial is the empty tuple.  Rationals use :class:`fractions.Fraction`;
residues mod p are plain ints in ``[0, p)``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as igcd, isqrt

DEFAULT_DEGREE_CAP = 12


class PolyError(ValueError):
    pass


class DegreeCapError(RuntimeError):
    pass


class Field:
    """Coefficient field.  Instances are interned: compare with ``is``/``==``."""

    characteristic = 0
    name = "QQ"

    def __call__(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Rationals(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __reduce__(self):
        return (_qq, ())


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
            raise PolyError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


def _qq():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """``"QQ"`` or ``"GF(p)"`` / ``"p"``."""
    s = name.strip().upper()
    if s in ("QQ", "Q"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        s = s[3:-1]
    try:
        return GF(int(s))
    except ValueError:
        raise PolyError(f"unknown field {name!r}") from None


class Poly:
    __slots__ = ("coeffs", "field", "_hash")

    def __init__(self, coeffs=(), field: Field = QQ):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, coeffs, field):
        # coeffs already reduced; strip zeros only
        p = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        p.coeffs = tuple(cs)
        p.field = field
        p._hash = None
        return p

    @classmethod
    def x(cls, field: Field = QQ) -> "Poly":
        return cls((0, 1), field)

    @classmethod
    def const(cls, c, field: Field = QQ) -> "Poly":
        return cls((c,), field)

    # -- basic accessors --

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other, self.field)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.name, self.coeffs))
        return self._hash

    def __lt__(self, other):
        return (self.degree(), [str(c) for c in reversed(self.coeffs)]) < (
            other.degree(), [str(c) for c in reversed(other.coeffs)])

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise PolyError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        f = self.field
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f(out[i] + c)
        return Poly._raw(out, f)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly._raw([f(-c) for c in self.coeffs], f)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.field)
        f = self.field
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw([f(c) for c in out], f)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative exponent")
        result = Poly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        r = list(self.coeffs)
        db = other.degree()
        inv_lc = f.inv(other.lc())
        q = [0] * max(len(r) - db, 0)
        for k in range(len(r) - db - 1, -1, -1):
            c = f(r[k + db] * inv_lc)
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] = f(r[k + j] - c * b)
        return Poly._raw(q, f), Poly._raw(r[:db] if db > 0 else [], f)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inv(self.lc())
        return Poly._raw([self.field(c * inv) for c in self.coeffs], self.field)

    def derivative(self) -> "Poly":
        f = self.field
        return Poly._raw([f(i * c) for i, c in enumerate(self.coeffs)][1:], f)

    def __call__(self, x):
        acc = self.field(0)
        for c in reversed(self.coeffs):
            acc = self.field(acc * x + c)
        return acc

    def valuation(self) -> int:
        """Exponent of the largest power of x dividing a nonzero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise PolyError("valuation of zero")

    # -- display --

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if self.field.characteristic:
                neg, mag = False, c
            else:
                neg, mag = c < 0, abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(f"-{body}" if neg else body)
            else:
                terms.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(terms)

    def __repr__(self):
        return f"Poly({self}, {self.field})"


# -- gcd family -----------------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is undefined."""
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly._raw((), a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(1, f), Poly._raw((), f)
    t0, t1 = Poly._raw((), f), Poly.const(1, f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    inv = f.inv(r0.lc())
    return r0.monic(), s0 * inv, t0 * inv


def _pth_root(f: Poly) -> Poly:
    # f has nonzero coefficients only in degrees divisible by p; Frobenius is the identity on GF(p)
    p = f.field.characteristic
    return Poly._raw(f.coeffs[::p], f.field)


def squarefree_decomposition(f: Poly) -> list:
    """[(g_i, i)] with f = lc * prod g_i^i, g_i monic squarefree and pairwise coprime."""
    if f.is_zero():
        raise PolyError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree() == 0:
        return []
    p = f.field.characteristic
    out = []
    d = f.derivative()
    if d.is_zero():
        return [(g, i * p) for g, i in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, d)
    w = f // c
    i = 1
    while w.degree() > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree() > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        # characteristic p leftovers: c is a p-th power
        for g, j in squarefree_decomposition(_pth_root(c)):
            out.append((g, j * p))
    merged: dict = {}
    for g, i in out:
        merged[i] = merged[i] * g if i in merged else g
    return sorted(((g.monic(), i) for i, g in merged.items()), key=lambda t: t[1])


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f."""
    if f.is_zero():
        raise PolyError("squarefree part of zero")
    one = Poly.const(1, f.field)
    return reduce(lambda a, b: a * b, (g for g, _ in squarefree_decomposition(f)), one).monic()


def laurent_canonical(f: Poly) -> Poly:
    """Canonical generator of the Laurent ideal <f>: strip powers of x, make monic."""
    if f.is_zero():
        raise PolyError("Laurent canonical form of zero")
    v = f.valuation()
    return Poly._raw(f.coeffs[v:], f.field).monic()


# -- factorization ----------------------------------------------------------

def factor_irreducible(f: Poly, cap: int = DEFAULT_DEGREE_CAP) -> list:
    """Monic irreducible factorization ``[(g, multiplicity), ...]`` of monic(f)."""
    if f.is_zero():
        raise PolyError("factorization of zero")
    if f.degree() > cap:
        raise DegreeCapError(f"degree {f.degree()} exceeds the factorization cap {cap}")
    out = []
    for g, i in squarefree_decomposition(f):
        for h in _factor_squarefree(g):
            out.append((h, i))
    return sorted(out, key=lambda t: (t[0].degree(), t[0], t[1]))


def is_irreducible(f: Poly, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    if f.degree() < 1:
        return False
    fs = factor_irreducible(f, cap)
    return len(fs) == 1 and fs[0][1] == 1


def _factor_squarefree(f: Poly) -> list:
    f = f.monic()
    if f.degree() <= 1:
        return [f] if f.degree() == 1 else []
    if f.field.characteristic:
        return _factor_fp(f)
    return _factor_qq(f)


# over GF(p): distinct-degree then equal-degree splitting

def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.const(1, base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _factor_fp(f: Poly) -> list:
    F = f.field
    p = F.characteristic
    x = Poly.x(F)
    out = []
    h = x
    d = 0
    rest = f
    parts = []
    while rest.degree() >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, rest)
        g = poly_gcd(rest, h - x)
        if g.degree() > 0:
            parts.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree() > 0:
        parts.append((rest.monic(), rest.degree()))
    rng = random.Random(0x5EED ^ p)
    for g, d in parts:
        out.extend(_equal_degree(g, d, rng))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list:
    if f.degree() == d:
        return [f.monic()]
    F = f.field
    p = F.characteristic
    n = f.degree()
    while True:
        a = Poly([rng.randrange(p) for _ in range(n)], F)
        if a.degree() < 1:
            continue
        if p == 2:
            t = a
            s = a
            for _ in range(d - 1):
                s = (s * s) % f
                t = t + s
            b = t
        else:
            b = _powmod(a, (p ** d - 1) // 2, f) - 1
        g = poly_gcd(f, b) if not b.is_zero() else f
        if 0 < g.degree() < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


# over Q: clear denominators, rational roots, then degree-restricted Kronecker search

def _to_primitive_int(f: Poly) -> list:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = reduce(igcd, ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_eval(cs, a) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * a + c
    return acc


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _possible_degrees(f: Poly) -> set:
    """Degrees a proper rational factor of f could have, from a few mod-p factorizations."""
    ints = _to_primitive_int(f)
    n = len(ints) - 1
    allowed = set(range(1, n))
    tried = 0
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if tried >= 4:
            break
        if ints[-1] % p == 0:
            continue
        fp = Poly(ints, GF(p))
        if poly_gcd(fp, fp.derivative()).degree() > 0:
            continue
        tried += 1
        degs = [g.degree() for g in _factor_fp(fp.monic())]
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        allowed &= sums
        if not allowed:
            break
    return allowed


def _interpolate(points, values) -> list | None:
    # Lagrange over Q, returns integer coefficients or None
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += Fraction(yi, denom) * basis[k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_divides(d: list, f: list) -> list | None:
    # exact division of integer polynomials, None if not exact
    r = list(f)
    q = [0] * (len(f) - len(d) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, m = divmod(r[k + len(d) - 1], d[-1])
        if m:
            return None
        q[k] = c
        for j, b in enumerate(d):
            r[k + j] -= c * b
    if any(r):
        return None
    return q


def _factor_qq(f: Poly) -> list:
    ints = _to_primitive_int(f)
    factors = []
    # rational roots
    while len(ints) > 2:
        root = None
        for p in _divisors(ints[0]) if ints[0] else [0]:
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    num = sum(c * cand ** i for i, c in enumerate(ints))
                    if num == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            break
        lin = [-root.numerator, root.denominator]
        ints = _int_divides(lin, ints)
        factors.append(Poly(lin, QQ).monic())
    if len(ints) == 2:
        factors.append(Poly(ints, QQ).monic())
        return factors
    if len(ints) <= 4:
        # degree 2 or 3 without rational roots
        factors.append(Poly(ints, QQ).monic())
        return factors
    return factors + _kronecker(ints)


def _kronecker(ints: list) -> list:
    n = len(ints) - 1
    allowed = sorted(d for d in _possible_degrees(Poly(ints, QQ)) if 2 <= d <= n // 2)
    for d in allowed:
        candidates = []
        a = 0
        while len(candidates) < 2 * d + 4:
            for x in ((a,) if a == 0 else (a, -a)):
                v = _int_eval(ints, x)
                if v != 0:
                    candidates.append((len(_divisors(v)), x, v))
            a += 1
        candidates.sort()
        pts = candidates[: d + 1]
        xs = [x for _, x, _ in pts]
        divs = [_divisors(v) for _, _, v in pts]
        # the first value is taken positive: g and -g are the same factor
        for choice in itertools.product(*divs[1:]):
            for signs in itertools.product((1, -1), repeat=d):
                for first in divs[0]:
                    vals = [first] + [s * c for s, c in zip(signs, choice)]
                    g = _interpolate(xs, vals)
                    if g is None or len(g) - 1 != d:
                        continue
                    q = _int_divides(g, ints)
                    if q is None:
                        continue
                    return _kronecker_or_done(g) + _kronecker_or_done(q)
    return [Poly(ints, QQ).monic()]


def _kronecker_or_done(ints: list) -> list:
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return _factor_qq(Poly(ints, QQ))


def parse_poly(text: str, field: Field = QQ) -> Poly:
    """Parse ``"x^2 - 1"`` or ``"(x-1)^2*(x+1)"``; products and powers are expanded."""
    from .dsl import parse_poly_text
    return parse_poly_text(text, field)
