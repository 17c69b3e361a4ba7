"""Polynomials over a finite field, and the divisor lattice of x^n - 1 over F_q.

:class:`Poly` works over any :class:`~rkpairs.ffield.FieldCtx` regarded as a
flat field.  Polynomials over F_q use ``ctx.base`` as their field, so their
coefficients are F_q values in the base encoding.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import CapabilityError, DomainError
from .ffield import FieldCtx
from .zarith import divisors, factor_int, mobius_int

EDF_SEED = 20240101


class Poly:
    """Immutable univariate polynomial, coefficients ascending by degree."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldCtx, coeffs: Sequence[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not 0 <= c < field.size:
                raise DomainError(f"coefficient {c} is not an element of the field")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def x(cls, field: FieldCtx) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldCtx, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def xn_minus_1(cls, field: FieldCtx, n: int) -> "Poly":
        return cls(field, [field.neg(1)] + [0] * (n - 1) + [1])

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.lead == 1

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field.size == other.field.size

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.size))

    def __iter__(self):
        return iter(self.coeffs)

    # arithmetic
    def _new(self, cs) -> "Poly":
        return Poly(self.field, cs)

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return self._new([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return self._new([self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, int):
            return self._new([F.mul(c, other) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return self._new(out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.deg
        if len(rem) - 1 < db:
            return self._new(()), self
        inv = F.inv(other.lead)
        quo = [0] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                c = F.mul(c, inv)
                quo[i - db] = c
                for j in range(db + 1):
                    if bc[j]:
                        rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, bc[j]))
        return self._new(quo), self._new(rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead)

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        return self._new([F.scale(c, i) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.field, 1)
        for _ in range(e):
            result = result * self
        return result


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    return divmod(a, b)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return ((a * b) // poly_gcd(a, b)).monic()


def parse_poly(field: FieldCtx, text: str) -> Poly:
    """Parse ``"c0,c1,...,cd"`` (ascending coefficients)."""
    try:
        cs = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise DomainError(f"bad polynomial {text!r}") from None
    return Poly(field, cs)


def format_poly(f: Poly) -> str:
    return ",".join(str(c) for c in f.coeffs) or "0"


# --------------------------------------------------------------------------
# factorization

def _pth_root(f: Poly) -> Poly:
    """g with g(x)^p = f(x) when f' = 0."""
    F = f.field
    e = F.size // F.p  # c -> c^(p^(m-1)) inverts the p-th power map
    return Poly(F, [F.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), F.p)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Return [(g_i, i)] with f = lead * prod g_i^i, g_i square-free, pairwise coprime."""
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.deg <= 0:
        return out
    p = f.field.p
    fp = f.derivative()
    if fp.is_zero():
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w // y
        if z.deg > 0:
            out.append((z.monic(), i))
        i += 1
        w, c = y, c // y
    if c.deg > 0:
        out += [(g, e * p) for g, e in squarefree_decomposition(_pth_root(c))]
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return list(merged.items())


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic square-free f into products of irreducibles of equal degree."""
    F = f.field
    out = []
    x = Poly.x(F)
    h = x % f
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.size, f)
        g = poly_gcd(h - x, f)
        if not g.is_one():
            out.append((g, d))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def equal_degree(f: Poly, d: int, seed: int = EDF_SEED) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a monic product of degree-d irreducibles."""
    f = f.monic()
    if f.deg == d:
        return [f]
    if f.deg <= 0:
        return []
    F = f.field
    rng = random.Random((seed, f.coeffs, d).__hash__() & 0xFFFFFFFF)
    Q = F.size
    while True:
        a = Poly(F, [rng.randrange(Q) for _ in range(f.deg)])
        if a.deg <= 0:
            continue
        g = poly_gcd(a, f)
        if 0 < g.deg < f.deg:
            break
        if F.p == 2:
            t, cur = a % f, a % f
            for _ in range(F.m * d - 1):
                cur = (cur * cur) % f
                t = t + cur
            g = poly_gcd(t, f)
        else:
            b = a.powmod((Q**d - 1) // 2, f) - Poly.const(F, 1)
            g = poly_gcd(b, f)
        if 0 < g.deg < f.deg:
            break
    return sorted(equal_degree(g, d, seed) + equal_degree(f // g, d, seed), key=_poly_key)


def _poly_key(f: Poly):
    return (f.deg, f.coeffs)


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    out = []
    for g, e in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            out += [(P, e) for P in equal_degree(h, d)]
    return sorted(out, key=lambda t: _poly_key(t[0]))


def poly_roots(f: Poly) -> list[int]:
    """Distinct roots of f in its coefficient field, sorted."""
    F = f.field
    f = f.monic()
    if f.deg <= 0:
        return []
    x = Poly.x(F)
    g = poly_gcd(x.powmod(F.size, f) - x, f)
    return sorted(F.neg(P.coeffs[0]) for P in equal_degree(g, 1)) if g.deg > 0 else []


def is_irreducible(f: Poly) -> bool:
    fs = factor_poly(f)
    return len(fs) == 1 and fs[0][1] == 1


# --------------------------------------------------------------------------
# arithmetic functions on F_q[x]

def _check_monic(f: Poly) -> None:
    if f.is_zero():
        raise DomainError("zero polynomial")
    if not f.is_monic():
        raise DomainError("polynomial must be monic")


def phi_q_poly(f: Poly) -> int:
    """Polynomial Euler totient: |(F_q[x]/f)^*|."""
    _check_monic(f)
    q = f.field.size
    out = 1
    for P, e in factor_poly(f):
        out *= q ** (P.deg * (e - 1)) * (q**P.deg - 1)
    return out


def mobius_poly(f: Poly) -> int:
    _check_monic(f)
    fs = factor_poly(f)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def W_poly(f: Poly) -> int:
    _check_monic(f)
    return 2 ** len(factor_poly(f))


def rad_poly(f: Poly) -> Poly:
    _check_monic(f)
    out = Poly.const(f.field, 1)
    for P, _ in factor_poly(f):
        out = out * P
    return out


def theta_poly(f: Poly) -> Fraction:
    """Phi_q(f) / q^deg(f)."""
    return Fraction(phi_q_poly(f), f.field.size**f.deg)


# --------------------------------------------------------------------------
# x^n - 1

@lru_cache(maxsize=256)
def cyclotomic_int_poly(d: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the d-th cyclotomic polynomial."""
    num = [1]
    den = [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    for e in sorted(divisors(factor_int(d))):
        mu = mobius_int(factor_int(d // e))
        xe = [-1] + [0] * (e - 1) + [1]
        if mu == 1:
            num = mul(num, xe)
        elif mu == -1:
            den = mul(den, xe)
    # exact division by a monic integer polynomial
    num = list(num)
    quo = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        quo[i - len(den) + 1] = c
        for j, y in enumerate(den):
            num[i - len(den) + 1 + j] -= c * y
    assert not any(num), "cyclotomic division left a remainder"
    return tuple(quo)


def multiplicative_order_mod(q: int, d: int) -> int:
    """ord_d(q) for gcd(q, d) = 1."""
    if d == 1:
        return 1
    if math.gcd(q, d) != 1:
        raise DomainError("q and d must be coprime")
    lam = 1
    phi = 1
    for p, e in factor_int(d).factors:
        phi *= (p - 1) * p ** (e - 1)
    order = phi
    for p, _ in factor_int(phi).factors:
        while order % p == 0 and pow(q, order // p, d) == 1:
            order //= p
    return order * lam


def split_n(n: int, p: int) -> tuple[int, int]:
    """n = p^a * n' with p not dividing n'; returns (p^a, n')."""
    pa = 1
    while n % p == 0:
        n //= p
        pa *= p
    return pa, n


def xn_minus_1_shape(q: int, n: int) -> list[tuple[int, int, int]]:
    """Irreducible-factor shape of x^n - 1 over F_q without building polynomials.

    Returns ``[(d, degree, count)]`` for each d | n': Phi_d splits into
    ``count`` irreducibles of the given degree; each has multiplicity p^a.
    """
    p = factor_int(q).factors[0][0]
    _, n1 = split_n(n, p)
    out = []
    for d in sorted(divisors(factor_int(n1))):
        e = multiplicative_order_mod(q, d)
        out.append((d, e, _euler_phi(d) // e))
    return out


def _euler_phi(d: int) -> int:
    out = 1
    for p, e in factor_int(d).factors:
        out *= (p - 1) * p ** (e - 1)
    return out


DIVISOR_CAP = 10**6


@dataclass(frozen=True)
class XnMinus1:
    """The factorization of x^n - 1 over F_q and its divisor lattice.

    Divisors are addressed by exponent vectors aligned with ``factors``.
    """

    field: FieldCtx
    n: int
    factors: tuple[tuple[Poly, int], ...]

    @property
    def q(self) -> int:
        return self.field.size

    @cached_property
    def poly(self) -> Poly:
        return Poly.xn_minus_1(self.field, self.n)

    @property
    def irreducibles(self) -> list[Poly]:
        return [P for P, _ in self.factors]

    @property
    def multiplicities(self) -> list[int]:
        return [e for _, e in self.factors]

    @property
    def degrees(self) -> list[int]:
        return [P.deg for P, _ in self.factors]

    def exponents(self, g: Poly) -> tuple[int, ...]:
        """Exponent vector of a monic divisor g of x^n - 1."""
        if g.is_zero() or not g.divides(self.poly):
            raise DomainError(f"{g} does not divide x^{self.n} - 1")
        g = g.monic()
        vec = []
        for P, e in self.factors:
            j = 0
            while j < e:
                quo, rem = divmod(g, P)
                if not rem.is_zero():
                    break
                g, j = quo, j + 1
            vec.append(j)
        assert g.deg == 0
        return tuple(vec)

    def build(self, vec: Sequence[int]) -> Poly:
        out = Poly.const(self.field, 1)
        for (P, _), j in zip(self.factors, vec):
            for _ in range(j):
                out = out * P
        return out

    def full(self) -> tuple[int, ...]:
        return tuple(self.multiplicities)

    def degree_of(self, vec: Sequence[int]) -> int:
        return sum(j * d for j, d in zip(vec, self.degrees))

    def omega_of(self, vec: Sequence[int]) -> int:
        return sum(1 for j in vec if j)

    def W_of(self, vec: Sequence[int]) -> int:
        return 2 ** self.omega_of(vec)

    def phi_of(self, vec: Sequence[int]) -> int:
        q = self.q
        out = 1
        for j, d in zip(vec, self.degrees):
            if j:
                out *= q ** (d * (j - 1)) * (q**d - 1)
        return out

    def mobius_of(self, vec: Sequence[int]) -> int:
        if any(j > 1 for j in vec):
            return 0
        return -1 if sum(vec) % 2 else 1

    def quotient(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Exponent vector of (x^n - 1) / g."""
        return tuple(e - j for e, j in zip(self.multiplicities, vec))

    def gcd_of(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(min(x, y) for x, y in zip(a, b))

    def divisor_count(self) -> int:
        return math.prod(e + 1 for e in self.multiplicities)

    def divisors(self, cap: int = DIVISOR_CAP) -> Iterator[tuple[int, ...]]:
        """All monic divisors as exponent vectors; refuses lattices larger than ``cap``."""
        if self.divisor_count() > cap:
            raise CapabilityError(f"x^{self.n} - 1 has {self.divisor_count()} monic divisors (cap {cap})")

        def rec(i, acc):
            if i == len(self.factors):
                yield tuple(acc)
                return
            for j in range(self.factors[i][1] + 1):
                yield from rec(i + 1, acc + [j])

        yield from rec(0, [])

    def divisors_of_degree(self, k: int) -> Iterator[tuple[int, ...]]:
        """Exponent vectors of degree k, larger exponents on earlier factors first."""
        degs, mults = self.degrees, self.multiplicities

        def rec(i, left, acc):
            if left == 0:
                yield tuple(acc + [0] * (len(degs) - i))
                return
            if i == len(degs):
                return
            for j in range(min(mults[i], left // degs[i]), -1, -1):
                yield from rec(i + 1, left - j * degs[i], acc + [j])

        yield from rec(0, k, [])


@lru_cache(maxsize=128)
def _factor_xn_cached(field: FieldCtx, n: int) -> XnMinus1:
    q, p = field.size, field.p
    pa, n1 = split_n(n, p)
    out = []
    for d in sorted(divisors(factor_int(n1))):
        cyc = Poly(field, [c % p for c in cyclotomic_int_poly(d)])
        e = multiplicative_order_mod(q, d)
        out += [(P, pa) for P in equal_degree(cyc, e)]
    return XnMinus1(field, n, tuple(out))


def factor_xn_minus_1(ctx: FieldCtx) -> XnMinus1:
    """x^{ctx.n} - 1 factored over F_q = ctx.base, grouped by cyclotomic index."""
    return _factor_xn_cached(ctx.base, ctx.n)


def factor_xn_minus_1_over(base: FieldCtx, n: int) -> XnMinus1:
    return _factor_xn_cached(base, n)


def exists_factor_of_degree(ctx: FieldCtx, k: int) -> tuple[bool, Poly | None]:
    """Whether x^n - 1 has a monic divisor of degree k over F_q, with a witness."""
    if not 0 <= k <= ctx.n:
        raise DomainError("need 0 <= k <= n")
    xn = factor_xn_minus_1(ctx)
    for vec in xn.divisors_of_degree(k):
        return True, xn.build(vec)
    return False, None
