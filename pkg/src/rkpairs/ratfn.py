"""Rational functions F = F1/F2 with coefficients in F_{q^n}."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .ffield import FieldCtx, FieldTables
from .fqpoly import Poly, factor_poly, poly_gcd, poly_roots


class _PoleType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Pole"

    def __reduce__(self):
        return (_PoleType, ())


POLE = _PoleType()
POLE_CODE = -1  # marker used by vectorized evaluation


@dataclass(frozen=True)
class RationalFn:
    """F1/F2 over ``field`` with gcd(F1, F2) = 1 and F2 monic."""

    field: FieldCtx
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise DomainError("denominator must be nonzero")
        if not self.den.is_monic():
            raise DomainError("denominator must be monic")
        if self.num.field.size != self.field.size or self.den.field.size != self.field.size:
            raise DomainError("coefficients must lie in the same field")
        if not self.num.is_zero() and poly_gcd(self.num, self.den).deg > 0:
            raise DomainError("numerator and denominator must be coprime")

    @classmethod
    def make(cls, field: FieldCtx, num, den=(1,)) -> "RationalFn":
        """Build and normalize: cancel the gcd and make the denominator monic."""
        N = num if isinstance(num, Poly) else Poly(field, num)
        D = den if isinstance(den, Poly) else Poly(field, den)
        if D.is_zero():
            raise DomainError("denominator must be nonzero")
        if not N.is_zero():
            g = poly_gcd(N, D)
            N, D = N // g, D // g
        c = field.inv(D.lead)
        return cls(field, N * c, D * c)

    @classmethod
    def identity(cls, field: FieldCtx) -> "RationalFn":
        return cls.make(field, (0, 1))

    @classmethod
    def parse(cls, field: FieldCtx, text: str) -> "RationalFn":
        """Parse ``num:<c0,c1,...>;den:<c0,...>`` (``den`` optional, defaults to 1)."""
        parts = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, sep, val = chunk.partition(":")
            if not sep or key.strip() not in ("num", "den"):
                raise DomainError(f"bad rational function {text!r}")
            try:
                parts[key.strip()] = [int(t) for t in val.split(",") if t.strip()]
            except ValueError:
                raise DomainError(f"bad rational function {text!r}") from None
        if "num" not in parts:
            raise DomainError("rational function needs a numerator")
        return cls.make(field, parts["num"], parts.get("den", [1]))

    def format(self) -> str:
        return "num:" + ",".join(map(str, self.num.coeffs or (0,))) + ";den:" + ",".join(map(str, self.den.coeffs))

    @property
    def n1(self) -> int:
        return max(self.num.deg, 0)

    @property
    def n2(self) -> int:
        return self.den.deg

    def __str__(self) -> str:
        return f"({self.num})/({self.den})" if self.den.deg > 0 else str(self.num)


def eval_at(F: RationalFn, eps: int):
    """F(eps), or :data:`POLE` when the denominator vanishes."""
    d = F.den(eps)
    if d == 0:
        return POLE
    return F.field.div(F.num(eps), d)


def _horner(T: FieldTables, poly: Poly, x: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(poly.coeffs):
        acc = T.add(T.mul(acc, x), np.full_like(x, c))
    return acc


def eval_many(F: RationalFn, T: FieldTables, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_at`; poles become ``POLE_CODE``."""
    x = np.asarray(x, dtype=np.int64)
    num = _horner(T, F.num, x)
    den = _horner(T, F.den, x)
    safe = np.where(den == 0, 1, den)
    out = T.mul(num, T.inv(safe))
    return np.where(den == 0, POLE_CODE, out)


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: tuple[Poly, int] | None
    Q: int
    reason: str


def lambda_membership(F: RationalFn, m1: int, m2: int, Q: int) -> Membership:
    """Decide whether F lies in Lambda_Q(m1, m2).

    Membership needs deg F1 <= m1, deg F2 <= m2, coprime F1, F2, and an
    irreducible g != x with g^m exactly dividing F1*F2 and gcd(m, Q - 1) = 1.
    ``Q`` is explicit because the coprimality condition depends on which field
    order the caller has in mind.
    """
    if Q < 2:
        raise DomainError("Q must be a field order")
    if F.num.is_zero():
        return Membership(False, None, Q, "numerator is zero")
    if F.num.deg > m1 or F.den.deg > m2:
        return Membership(False, None, Q, "degree bound exceeded")
    if poly_gcd(F.num, F.den).deg > 0:
        return Membership(False, None, Q, "numerator and denominator share a factor")
    prod = F.num * F.den
    if prod.deg <= 0:
        return Membership(False, None, Q, "constant function")
    x = Poly.x(F.field)
    for g, m in factor_poly(prod):
        if g != x and math.gcd(m, Q - 1) == 1:
            return Membership(True, (g, m), Q, "ok")
    return Membership(False, None, Q, "no irreducible factor other than x has multiplicity coprime to Q-1")


def zeros_poles(F: RationalFn) -> set[int]:
    """Zeros of F1 and of F2 inside the coefficient field (roots via gcd with x^Q - x)."""
    out = set(poly_roots(F.den))
    if not F.num.is_zero():
        out |= set(poly_roots(F.num))
    return out


def zeros_poles_scan(F: RationalFn, T: FieldTables) -> set[int]:
    """Same as :func:`zeros_poles`, by exhaustive evaluation over the table."""
    x = T.elements()
    hit = (_horner(T, F.num, x) == 0) | (_horner(T, F.den, x) == 0)
    return set(int(e) for e in x[hit])
