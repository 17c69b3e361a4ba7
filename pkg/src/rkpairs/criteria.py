"""Sufficient conditions for pairs (eps, F(eps)) with prescribed primitivity,
normality and traces, evaluated with three-valued verdicts.

Integer-valued conditions are compared exactly: ``q^(n/2 - K) > X`` is tested
as ``q^n > X^2 q^(2K)`` with K = k1 + k2 + 2, so no square roots or floats are
involved.  When the factorization of q^n - 1 is only partial, W values are
intervals and the verdict is ``Unknown`` unless both ends agree.  The
asymptotic bounds in q work in the log domain.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .ffield import FieldCtx
from .fqpoly import Poly, XnMinus1, factor_xn_minus_1, format_poly
from .normal import as_exponents
from .zarith import (
    DEFAULT_BUDGET,
    IntFactorization,
    Interval,
    W_int,
    factor_divisor,
    factor_int,
    factor_power_minus_one,
    log_A_alpha,
    log_A_alpha_beta,
    prime_form_scan,
    S_alpha_beta,
    v_alpha_beta,
)

LN10 = math.log(10)


class Verdict(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


@dataclass
class CriterionVerdict:
    verdict: Verdict
    stage: str
    lhs: str = ""
    rhs: str = ""
    reason: str | None = None
    witness: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_row(self, q: int, n: int) -> dict:
        verdict = self.verdict.value if self.reason is None else f"{self.verdict.value}({self.reason})"
        return {"q": str(q), "n": n, "stage": self.stage, "verdict": verdict, "witness": self.witness,
                "lhs": self.lhs, "rhs": self.rhs, "notes": list(self.notes)}


# ---- factorization provider ----------------------------------------------------

FactorProvider = Callable[[int, int, int], IntFactorization]
_provider: FactorProvider = factor_power_minus_one


def set_factor_provider(fn: FactorProvider | None) -> None:
    """Route factorizations of p^m - 1 through ``fn`` (e.g. a disk cache)."""
    global _provider
    _provider = fn or factor_power_minus_one


def order_factorization(ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> IntFactorization:
    return _provider(ctx.p, ctx.m, budget)


def pair_context(q: int, n: int) -> FieldCtx:
    """FieldCtx for F_{q^n} from the integer q (must be a prime power)."""
    if q < 2 or n < 1:
        raise DomainError("need q >= 2 and n >= 1")
    f = factor_int(q)
    if not f.complete or len(f.factors) != 1:
        raise DomainError(f"{q} is not a prime power")
    p, k = f.factors[0]
    return FieldCtx(p, k, n)


# ---- parameters -----------------------------------------------------------------

def big_M(m1: int, m2: int) -> int:
    """max{2(m1+m2)+1, m1+3m2+1}."""
    if m1 < 0 or m2 < 0 or m1 + m2 < 1:
        raise DomainError("need m1, m2 >= 0 with m1 + m2 >= 1")
    return max(2 * (m1 + m2) + 1, m1 + 3 * m2 + 1)


def big_M_branches(m1: int, m2: int) -> tuple[int, int]:
    """Both candidates of the max; the second one wins exactly when m1 < m2."""
    return 2 * (m1 + m2) + 1, m1 + 3 * m2 + 1


@dataclass(frozen=True)
class PairParams:
    q: int
    n: int
    r1: int
    r2: int
    k1: int
    k2: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.q < 2 or self.n < 1:
            raise DomainError("need q >= 2 and n >= 1")
        if self.r1 < 1 or self.r2 < 1:
            raise DomainError("r1, r2 must be positive")
        if not (0 <= self.k1 <= self.n and 0 <= self.k2 <= self.n):
            raise DomainError("need 0 <= k_i <= n")
        big_M(self.m1, self.m2)

    @property
    def M(self) -> int:
        return big_M(self.m1, self.m2)

    @property
    def K(self) -> int:
        return self.k1 + self.k2 + 2

    @property
    def order(self) -> int:
        return self.q**self.n - 1

    def check_r(self) -> None:
        N = self.order
        for name, r in (("r1", self.r1), ("r2", self.r2)):
            if N % r:
                raise DomainError(f"{name} = {r} does not divide q^n - 1")

    def with_qn(self, q: int, n: int) -> "PairParams":
        return PairParams(q, n, self.r1, self.r2, self.k1, self.k2, self.m1, self.m2)


FLAGSHIP = dict(r1=3, r2=2, k1=2, k2=1, m1=10, m2=11)


def flagship(q: int, n: int) -> PairParams:
    return PairParams(q, n, **FLAGSHIP)


def _check_ctx(ctx: FieldCtx, params: PairParams) -> None:
    if ctx.q != params.q or ctx.n != params.n:
        raise DomainError("field context and parameters disagree on (q, n)")
    params.check_r()


# ---- exact comparison helpers ----------------------------------------------------------

def _bounds(x) -> tuple[int, int]:
    return (x.lo, x.hi) if isinstance(x, Interval) else (x, x)


def _log10(x) -> float:
    if isinstance(x, Fraction):
        return _log10(x.numerator) - _log10(x.denominator)
    if x <= 0:
        return -math.inf
    if isinstance(x, int) and x.bit_length() > 1000:
        s = x.bit_length() - 900
        return math.log10(x >> s) + s * math.log10(2)
    return math.log10(x)


def _compare(params: PairParams, factor_lo, factor_hi, stage: str, what: str) -> CriterionVerdict:
    """Decide q^(n/2-K) > X for X in [factor_lo, factor_hi] exactly."""
    q, n, K = params.q, params.n, params.K
    lhs = q**n
    rhs_lo = factor_lo * factor_lo * q ** (2 * K)
    rhs_hi = factor_hi * factor_hi * q ** (2 * K)
    notes = [f"compared q^n against ({what})^2 * q^(2K) with K = {K}",
             f"log10 q^(n/2-K) = {(n / 2 - K) * _log10(q):.6f}",
             f"log10 {what} = {_log10(factor_hi):.6f}"]
    if lhs > rhs_hi:
        v, reason = Verdict.HOLDS, None
    elif lhs <= rhs_lo:
        v, reason = Verdict.FAILS, None
    else:
        v, reason = Verdict.UNKNOWN, "partial factorization"
    rhs = str(rhs_hi) if rhs_lo == rhs_hi else f"[{rhs_lo}, {rhs_hi}]"
    return CriterionVerdict(v, stage, str(lhs), rhs, reason, notes=notes)


def _W_of_divisor(fact: IntFactorization, R: int):
    return W_int(factor_divisor(fact, R))


def _vec(ctx: FieldCtx, g) -> tuple[int, ...]:
    return as_exponents(ctx, g)


def _fmt(xn: XnMinus1, vec) -> str:
    return format_poly(xn.build(vec))


def _pair_by_degree(xn: XnMinus1, params: PairParams, f1, f2, g1, g2):
    """Attach (f, g) pairs to k1, k2 by degree.

    Tables often list f_i in increasing degree; the inequalities are symmetric
    under exchanging (f1, g1) with (f2, g2), so a swapped pair is accepted and
    reported.  Returns (f1, f2, g1, g2, swapped).
    """
    d1, d2 = xn.degree_of(f1), xn.degree_of(f2)
    if (d1, d2) == (params.k1, params.k2):
        return f1, f2, g1, g2, False
    if (d2, d1) == (params.k1, params.k2):
        return f2, f1, g2, g1, True
    raise DomainError(f"need deg f1 = {params.k1} and deg f2 = {params.k2} (got {d1}, {d2})")


def trace_obstruction_note(xn: XnMinus1, f1) -> str | None:
    """Warn when x - 1 divides f1.

    Then every eps = f1 o sigma satisfies Tr(eps) = ((x^n-1)/(x-1)) o eps = 0,
    so the counting argument behind the inequality only reaches a = 0.
    """
    base = xn.field
    xm1 = Poly(base, (base.neg(1), 1))
    i = next((j for j, (P, _) in enumerate(xn.factors) if P == xm1), None)
    if i is not None and f1[i]:
        return "x-1 divides f1, so eps = f1 o sigma forces Tr(eps) = 0; the count is zero for a != 0"
    return None


# ---- main theorem and corollary ---------------------------------------------------------

def theorem_main_check(ctx: FieldCtx, params: PairParams, R1: int, R2: int, g1, g2, f1, f2,
                       budget: int = DEFAULT_BUDGET) -> CriterionVerdict:
    """q^(n/2-K) > M r1 r2 W(R1) W(R2) W(gcd(g1, (x^n-1)/f1)) W(gcd(g2, (x^n-1)/f2))."""
    _check_ctx(ctx, params)
    N = params.order
    for name, R, r in (("R1", R1, params.r1), ("R2", R2, params.r2)):
        if R < 1 or (N // r) % R:
            raise DomainError(f"{name} = {R} does not divide (q^n-1)/r")
    xn = factor_xn_minus_1(ctx)
    v1, v2, w1, w2 = (_vec(ctx, x) for x in (g1, g2, f1, f2))
    w1, w2, v1, v2, swapped = _pair_by_degree(xn, params, w1, w2, v1, v2)
    fact = order_factorization(ctx, budget)
    WR1, WR2 = _W_of_divisor(fact, R1), _W_of_divisor(fact, R2)
    gt1 = xn.gcd_of(v1, xn.quotient(w1))
    gt2 = xn.gcd_of(v2, xn.quotient(w2))
    Wg = xn.W_of(gt1) * xn.W_of(gt2)
    base = params.M * params.r1 * params.r2 * Wg
    lo1, hi1 = _bounds(WR1)
    lo2, hi2 = _bounds(WR2)
    out = _compare(params, base * lo1 * lo2, base * hi1 * hi2, "main", "M*Omega")
    out.witness = {"R1": str(R1), "R2": str(R2), "f1": _fmt(xn, w1), "f2": _fmt(xn, w2),
                   "g1": _fmt(xn, v1), "g2": _fmt(xn, v2)}
    if swapped:
        out.notes.append("(f1, g1) and (f2, g2) exchanged to match deg f_i = k_i")
    tn = trace_obstruction_note(xn, w1)
    if tn:
        out.notes.append(tn)
    out.notes.append(f"W(R1)={WR1}, W(R2)={WR2}, W(g~1)={xn.W_of(gt1)}, W(g~2)={xn.W_of(gt2)}")
    out.notes.append(f"factorization of q^n-1: {fact.status}")
    return out


def _best_f(xn: XnMinus1, k: int) -> tuple[int, ...] | None:
    """Degree-k divisor f of x^n-1 minimizing W((x^n-1)/f); first in search order on ties."""
    best, best_w = None, None
    for f in xn.divisors_of_degree(k):
        w = xn.omega_of(xn.quotient(f))
        if best is None or w < best_w:
            best, best_w = f, w
    return best


def corollary_check(ctx: FieldCtx, params: PairParams, budget: int = DEFAULT_BUDGET) -> CriterionVerdict:
    """Main theorem with R_i = (q^n-1)/r_i and g_i = x^n-1, optimized over f_i of degree k_i."""
    _check_ctx(ctx, params)
    xn = factor_xn_minus_1(ctx)
    f1, f2 = _best_f(xn, params.k1), _best_f(xn, params.k2)
    if f1 is None or f2 is None:
        return CriterionVerdict(Verdict.UNKNOWN, "main", reason="precondition",
                                notes=["x^n-1 has no divisor of the required degree"])
    N = params.order
    full = xn.full()
    out = theorem_main_check(ctx, params, N // params.r1, N // params.r2, full, full, f1, f2, budget)
    out.notes.append("f_i chosen to minimize W((x^n-1)/f_i) over all degree-k_i divisors")
    return out


def corollary_check_power_bound(ctx: FieldCtx, params: PairParams, budget: int = DEFAULT_BUDGET) -> CriterionVerdict:
    """Corollary with W((x^n-1)/f_i) replaced by 2^(n-k_i)."""
    _check_ctx(ctx, params)
    xn = factor_xn_minus_1(ctx)
    f1 = next(xn.divisors_of_degree(params.k1), None)
    f2 = next(xn.divisors_of_degree(params.k2), None)
    if f1 is None or f2 is None:
        return CriterionVerdict(Verdict.UNKNOWN, "bound", reason="precondition",
                                notes=["x^n-1 has no divisor of the required degree"])
    N = params.order
    fact = order_factorization(ctx, budget)
    lo1, hi1 = _bounds(_W_of_divisor(fact, N // params.r1))
    lo2, hi2 = _bounds(_W_of_divisor(fact, N // params.r2))
    base = params.M * params.r1 * params.r2 * 2 ** (2 * params.n - params.k1 - params.k2)
    out = _compare(params, base * lo1 * lo2, base * hi1 * hi2, "bound", "M*r1*r2*W*W*2^(2n-k1-k2)")
    out.witness = {"f1": _fmt(xn, f1), "f2": _fmt(xn, f2)}
    out.notes.append(f"factorization of q^n-1: {fact.status}")
    return out


# ---- sieve --------------------------------------------------------------------------------

@dataclass(frozen=True)
class SievePlan:
    l1: int
    l2: int
    f1: object
    f2: object
    g1: object
    g2: object


@dataclass(frozen=True)
class SieveData:
    """Derived quantities of a sieve plan."""

    u_primes: tuple[int, ...]
    v_primes: tuple[int, ...]
    s_degrees: tuple[int, ...]
    t_degrees: tuple[int, ...]
    delta: Fraction
    Delta: Fraction | None
    W_l1: int
    W_l2: int
    W_gt1: int
    W_gt2: int

    @property
    def u(self) -> int:
        return len(self.u_primes)

    @property
    def v(self) -> int:
        return len(self.v_primes)

    @property
    def s(self) -> int:
        return len(self.s_degrees)

    @property
    def t(self) -> int:
        return len(self.t_degrees)


def sieve_data(ctx: FieldCtx, params: PairParams, plan: SievePlan, fact: IntFactorization) -> SieveData:
    xn = factor_xn_minus_1(ctx)
    N, q = params.order, params.q
    w1, w2, v1, v2 = (_vec(ctx, x) for x in (plan.f1, plan.f2, plan.g1, plan.g2))
    w1, w2, v1, v2, _ = _pair_by_degree(xn, params, w1, w2, v1, v2)
    primes_N = set(fact.primes)
    lists = []
    for l, r in ((plan.l1, params.r1), (plan.l2, params.r2)):
        if l < 1:
            raise DomainError("l_i must be positive")
        lf = factor_int(l)
        if not set(lf.primes) <= primes_N:
            raise DomainError(f"every prime of l = {l} must divide q^n - 1")
        Rf = factor_divisor(fact, N // r)
        lists.append(tuple(p for p in Rf.primes if l % p))
    polys = []
    for f, g in ((w1, v1), (w2, v2)):
        quo = xn.quotient(f)
        polys.append(tuple(d for j, gj, d in zip(quo, g, xn.degrees) if j and not gj))
    delta = Fraction(1)
    for ps in lists:
        delta -= sum((Fraction(1, p) for p in ps), Fraction(0))
    for ds in polys:
        delta -= sum((Fraction(1, q**d) for d in ds), Fraction(0))
    terms = sum(len(x) for x in lists) + sum(len(x) for x in polys)
    Delta = Fraction(terms - 1) / delta + 2 if delta > 0 else None
    gt1 = xn.gcd_of(v1, xn.quotient(w1))
    gt2 = xn.gcd_of(v2, xn.quotient(w2))
    return SieveData(lists[0], lists[1], polys[0], polys[1], delta, Delta,
                     2 ** len(factor_int(plan.l1).factors), 2 ** len(factor_int(plan.l2).factors),
                     xn.W_of(gt1), xn.W_of(gt2))


def sieve_check(ctx: FieldCtx, params: PairParams, plan: SievePlan, budget: int = DEFAULT_BUDGET) -> CriterionVerdict:
    """q^(n/2-K) > M r1 r2 Delta W(l1) W(l2) W(g~1) W(g~2), with Delta from the excluded primes and factors."""
    _check_ctx(ctx, params)
    fact = order_factorization(ctx, budget)
    xn = factor_xn_minus_1(ctx)
    witness = {"l1": str(plan.l1), "l2": str(plan.l2)}
    for name in ("f1", "f2", "g1", "g2"):
        witness[name] = _fmt(xn, _vec(ctx, getattr(plan, name)))
    if not fact.complete:
        return CriterionVerdict(Verdict.UNKNOWN, "sieve", reason="partial factorization", witness=witness,
                                notes=["prime sets of (q^n-1)/r_i cannot be enumerated"])
    sd = sieve_data(ctx, params, plan, fact)
    swapped = _pair_by_degree(xn, params, *(_vec(ctx, getattr(plan, k)) for k in ("f1", "f2", "g1", "g2")))[4]
    notes = [f"u={sd.u} v={sd.v} s={sd.s} t={sd.t}", f"delta={float(sd.delta):.9f}",
             "s, t count irreducibles of (x^n-1)/f_i outside g_i"]
    if swapped:
        notes.append("(f1, g1) and (f2, g2) exchanged to match deg f_i = k_i")
    w1 = _pair_by_degree(xn, params, *(_vec(ctx, getattr(plan, k)) for k in ("f1", "f2", "g1", "g2")))[0]
    tn = trace_obstruction_note(xn, w1)
    if tn:
        notes.append(tn)
    N = params.order
    for l, r, name in ((plan.l1, params.r1, "l1"), (plan.l2, params.r2, "l2")):
        if (N // r) % l:
            notes.append(f"{name} = {l} does not divide (q^n-1)/r; only its primes are required to divide q^n-1")
    if sd.Delta is None:
        return CriterionVerdict(Verdict.UNKNOWN, "sieve", reason="delta-nonpositive", witness=witness, notes=notes)
    notes.append(f"Delta={float(sd.Delta):.9f}")
    X = params.M * params.r1 * params.r2 * sd.Delta * sd.W_l1 * sd.W_l2 * sd.W_gt1 * sd.W_gt2
    q, n, K = params.q, params.n, params.K
    lhs = q**n
    rhs = X * X * q ** (2 * K)
    v = Verdict.HOLDS if lhs > rhs else Verdict.FAILS
    notes.append(f"log10 q^(n/2-K) = {(n / 2 - K) * _log10(q):.6f}, log10 rhs = {_log10(X):.6f}")
    return CriterionVerdict(v, "sieve", str(lhs), f"{_log10(rhs):.9f} (log10)", witness=witness, notes=notes)


# ---- lemma with (2n-k1-k2+2) ---------------------------------------------------------------

def lemma_2nk_check(ctx: FieldCtx, params: PairParams, budget: int = DEFAULT_BUDGET) -> CriterionVerdict:
    """q^(n/2-K) > M r1 r2 (2n-k1-k2+2) W((q^n-1)/r1) W((q^n-1)/r2), under (2n-k1-k2)^2 < q."""
    _check_ctx(ctx, params)
    n, q, k1, k2 = params.n, params.q, params.k1, params.k2
    if (2 * n - k1 - k2) ** 2 >= q:
        return CriterionVerdict(Verdict.UNKNOWN, "lemma-2nk", reason="precondition",
                                notes=["requires (2n-k1-k2)^2 < q"])
    if 2 * params.K >= n:
        return CriterionVerdict(Verdict.UNKNOWN, "lemma-2nk", reason="precondition",
                                notes=["requires k1+k2+2 < n/2"])
    N = params.order
    fact = order_factorization(ctx, budget)
    lo1, hi1 = _bounds(_W_of_divisor(fact, N // params.r1))
    lo2, hi2 = _bounds(_W_of_divisor(fact, N // params.r2))
    base = params.M * params.r1 * params.r2 * (2 * n - k1 - k2 + 2)
    out = _compare(params, base * lo1 * lo2, base * hi1 * hi2, "lemma-2nk", "M*r1*r2*(2n-k1-k2+2)*W*W")
    out.notes.append(f"factorization of q^n-1: {fact.status}")
    return out


# ---- asymptotic bounds in q ------------------------------------------------------------------

def _exp10(x: float) -> float:
    return 10.0**x if x < 308 else math.inf


@dataclass(frozen=True)
class UVBound:
    alpha: float
    d: float
    log10_U: float
    log10_V: float
    log10_threshold: float

    @property
    def U(self) -> float:
        return _exp10(self.log10_U)

    @property
    def V(self) -> float:
        return _exp10(self.log10_V)

    @property
    def threshold(self) -> float:
        return _exp10(self.log10_threshold)


def _shape(params: PairParams) -> tuple[int, int, int]:
    n, k1, k2 = params.n, params.k1, params.k2
    gap = n - 2 * params.K
    if gap <= 0:
        raise DomainError("requires k1+k2+2 < n/2")
    return gap, 2 * n - k1 - k2, n


def bound_uv(params: PairParams, alpha: float) -> UVBound:
    """Threshold min{U, max{V, (2n-k1-k2)^2}} on q, from W(m) <= A_alpha m^(1/alpha)."""
    gap, s, n = _shape(params)
    den = alpha * gap - 4 * n
    if alpha <= 0 or den <= 0:
        raise DomainError(f"alpha must exceed 4n/(n-2(k1+k2+2)) = {4 * n / gap:.6f}")
    d = 2 * alpha / den
    base = math.log(params.M) + (1 - 1 / alpha) * math.log(params.r1 * params.r2) + 2 * log_A_alpha(alpha)
    lU = d * (base + s * math.log(2)) / LN10
    lV = d * (base + math.log(s + 2)) / LN10
    l_sq = 2 * math.log10(s)
    return UVBound(alpha, d, lU, lV, min(lU, max(lV, l_sq)))


@dataclass(frozen=True)
class ABBound:
    alpha: float
    beta: float
    d: float
    S: float
    v: int
    delta: float
    Delta: float
    log10_threshold: float

    @property
    def threshold(self) -> float:
        return _exp10(self.log10_threshold)


def bound_alpha_beta(params: PairParams, alpha: float, beta: float) -> ABBound:
    """Threshold on q using primes below 2^alpha exactly and sieving those in (2^alpha, 2^(alpha+beta))."""
    gap, s, n = _shape(params)
    ab = alpha + beta
    den = ab * gap - 4 * n
    if alpha <= 0 or beta <= 0 or den <= 0:
        raise DomainError(f"alpha+beta must exceed 4n/(n-2(k1+k2+2)) = {4 * n / gap:.6f}")
    S = S_alpha_beta(alpha, beta)
    v = v_alpha_beta(alpha, beta)
    delta = 1 - 2 * S - 1 / s
    if delta <= 0:
        raise DomainError("delta_{alpha,beta} must be positive")
    Delta = 2 + (2 * v + s - 1) / delta
    d = 2 * ab / den
    lt = d * (math.log(params.M) + (1 - 1 / ab) * math.log(params.r1 * params.r2)
              + 2 * log_A_alpha_beta(alpha, beta) + math.log(Delta)) / LN10
    return ABBound(alpha, beta, d, S, v, delta, Delta, lt)


def alpha_grid(params: PairParams, hi: float = 30.0, step: float = 0.1) -> list[float]:
    """Grid of alpha values (multiples of ``step``) strictly above the pole."""
    gap, _, n = _shape(params)
    pole = 4 * n / gap
    start = math.floor(pole / step + 1e-9) + 1
    return [round(i * step, 10) for i in range(start, int(round(hi / step)) + 1)]


def best_uv(params: PairParams, grid: Iterable[float] | None = None, patience: int = 8) -> UVBound:
    """Smallest threshold over the alpha grid.

    With the default grid the search stops after ``patience`` consecutive
    strict increases: past its minimum the threshold grows with alpha (before
    it, it may sit on the flat (2n-k1-k2)^2 plateau), and large alpha would
    need primes below 2^alpha.
    """
    stop_early = grid is None
    best, prev, rising = None, None, 0
    for a in (alpha_grid(params) if grid is None else grid):
        b = bound_uv(params, a)
        if best is None or b.log10_threshold < best.log10_threshold:
            best = b
        rising = rising + 1 if prev is not None and b.log10_threshold > prev else 0
        prev = b.log10_threshold
        if stop_early and rising >= patience:
            break
    if best is None:
        raise DomainError("empty alpha grid")
    return best


@dataclass(frozen=True)
class TableRow:
    n_lo: int
    n_hi: int | None
    worst_n: int
    alpha: float
    beta: float | None
    log10_bound: float

    @property
    def bound(self) -> float:
        return _exp10(self.log10_bound)


def table1_row(base: PairParams, n_lo: int, n_hi: int, grid: Iterable[float] | None = None) -> TableRow:
    """Bound valid for every n in [n_lo, n_hi]: the worst over n of the best alpha."""
    worst = None
    for n in range(n_lo, n_hi + 1):
        b = best_uv(base.with_qn(base.q, n), grid)
        if worst is None or b.log10_threshold > worst[1].log10_threshold:
            worst = (n, b)
    n, b = worst
    return TableRow(n_lo, n_hi, n, b.alpha, None, b.log10_threshold)


TABLE1_STARTS = (12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 25, 31, 62, 72, 100, 502)
TABLE2_ROWS = ((53, 5.7, 3.6), (36, 5.7, 3.5), (33, 5.7, 3.5), (30, 5.9, 3.6), (27, 6.1, 3.8),
               (24, 6.4, 4.1), (21, 6.7, 4.3), (18, 7.6, 4.8), (16, 8.5, 5.3), (15, 9.2, 5.7),
               (14, 10.3, 6.4), (13, 12.2, 7.5), (12, 16.4, 10.0))


def scan_table1(base: PairParams | None = None, starts: Sequence[int] = TABLE1_STARTS,
                open_end: int | None = None) -> list[TableRow]:
    """Rows in the style of the uv-bound table; a row covers n up to the next start - 1."""
    base = base or flagship(2, 64)
    rows = []
    for i, lo in enumerate(starts):
        hi = starts[i + 1] - 1 if i + 1 < len(starts) else (open_end or lo)
        rows.append(table1_row(base, lo, hi))
    return rows


def scan_table2(base: PairParams | None = None, rows: Sequence[tuple[int, float, float]] = TABLE2_ROWS) -> list[TableRow]:
    """Evaluate bound_alpha_beta per row; rows with a successor cover n up to it (exclusive)."""
    base = base or flagship(2, 64)
    out = []
    starts = [r[0] for r in rows]
    for lo, a, b in rows:
        higher = [s for s in starts if s > lo]
        hi = min(higher) - 1 if higher else lo
        worst = max((bound_alpha_beta(base.with_qn(base.q, n), a, b) for n in range(lo, hi + 1)),
                    key=lambda x: x.log10_threshold)
        n_w = lo + [bound_alpha_beta(base.with_qn(base.q, n), a, b).log10_threshold
                    for n in range(lo, hi + 1)].index(worst.log10_threshold)
        out.append(TableRow(lo, hi, n_w, a, b, worst.log10_threshold))
    return out


# ---- characteristic-13 pipeline ---------------------------------------------------------------

@dataclass(frozen=True)
class Lemma13Report:
    log10_q_cap: float
    log10_Pu_cap: float
    log10_Pv_cap: float
    u: int
    S_u: float
    v: int
    S_v: float
    st: int
    q_floor: float
    delta: float
    Delta: float
    alpha: float
    log10_threshold: float

    @property
    def threshold(self) -> float:
        return _exp10(self.log10_threshold)

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["threshold"] = self.threshold
        return d


def _log10_any(x) -> float:
    """log10 of a positive int, float, Fraction or decimal string (e.g. "4.75e1047")."""
    if isinstance(x, str):
        try:
            d = Decimal(x)
        except InvalidOperation:
            raise DomainError(f"not a number: {x!r}") from None
        if not d.is_finite() or d <= 0:
            raise DomainError("q_cap must be positive and finite")
        return float(d.log10())
    if isinstance(x, float) and not math.isfinite(x):
        raise DomainError("q_cap must be finite; pass large values as int or string")
    if x <= 0:
        raise DomainError("q_cap must be positive")
    return _log10(x)


def lemma13_pipeline(q_cap: float | int | str, alpha: float = 4.3, st: int = 23, q_floor: float = 1e4,
                     M: int = 44, r: int = 6) -> Lemma13Report:
    """Sieve constants for n = 13 when q <= q_cap.

    Primes dividing (q^13-1)/(q-1) are 1 mod 13, so the worst case packs the
    smallest such primes under q^12/3 (resp. q^12/2).  With s + t <= ``st``
    polynomial terms each at most 1/q <= 1/q_floor, this gives delta and
    Delta, and then the threshold (M r^(1-1/alpha) Delta A_alpha^2)^(2 alpha/(3 alpha - 4)).
    """
    lq = _log10_any(q_cap)
    cap_u = max(12 * lq - math.log10(3), 0.0)
    cap_v = max(12 * lq - math.log10(2), 0.0)
    su = prime_form_scan(13, 1, cap_u)
    sv = prime_form_scan(13, 1, cap_v)
    delta = 1 - su.recip_sum - sv.recip_sum - st / q_floor
    if delta <= 0:
        raise DomainError("delta is not positive")
    Delta = (su.count + sv.count + st - 1) / delta + 2
    lt = (2 * alpha / (3 * alpha - 4)) * (math.log(M) + (1 - 1 / alpha) * math.log(r) + math.log(Delta)
                                         + 2 * log_A_alpha(alpha)) / LN10
    return Lemma13Report(lq, 12 * lq - math.log10(3), 12 * lq - math.log10(2), su.count, su.recip_sum,
                         sv.count, sv.recip_sum, st, q_floor, delta, Delta, alpha, lt)


# ---- Theorem-style scan ------------------------------------------------------------------------

def _sieve_search(ctx: FieldCtx, params: PairParams, fact: IntFactorization, n_small: int = 6,
                  f_limit: int = 6, extra_g: Sequence = ()) -> SievePlan | None:
    """Float search over plans; returns the plan with the largest margin (delta > 0)."""
    xn = factor_xn_minus_1(ctx)
    N, q = params.order, params.q
    small = sorted(fact.primes)[:n_small]
    subsets = [tuple(c) for k in range(len(small) + 1) for c in itertools.combinations(small, k)]
    ls = np.array([math.prod(s) for s in subsets], dtype=object)
    wl = np.array([len(s) for s in subsets], dtype=float)

    def prime_part(r):
        ps = factor_divisor(fact, N // r).primes
        tot = math.fsum(1 / p for p in ps)
        out_s, out_c = [], []
        for s in subsets:
            hit = [p for p in ps if p in s]
            out_s.append(tot - math.fsum(1 / p for p in hit))
            out_c.append(len(ps) - len(hit))
        return np.array(out_s), np.array(out_c, dtype=float)

    S1, C1 = prime_part(params.r1)
    S2, C2 = prime_part(params.r2)
    fs1 = list(itertools.islice(xn.divisors_of_degree(params.k1), f_limit))
    fs2 = list(itertools.islice(xn.divisors_of_degree(params.k2), f_limit))
    b1, b2 = _best_f(xn, params.k1), _best_f(xn, params.k2)
    if b1 is not None and b1 not in fs1:
        fs1.append(b1)
    if b2 is not None and b2 not in fs2:
        fs2.append(b2)
    zero = tuple(0 for _ in xn.factors)
    extras = [as_exponents(ctx, g) for g in extra_g]
    lhs_log = (params.n / 2 - params.K) * math.log(q)
    base_log = math.log(params.M * params.r1 * params.r2)
    best, best_margin = None, -math.inf

    def poly_part(f, g):
        quo = xn.quotient(f)
        degs = [d for j, gj, d in zip(quo, g, xn.degrees) if j and not gj]
        return math.fsum(q ** (-d) for d in degs), len(degs), xn.omega_of(xn.gcd_of(g, quo))

    levels = sorted(set(xn.degrees))

    def g_choices(f):
        out = [f, zero] + extras
        for d in levels:
            low = tuple(max(j, e if deg <= d else 0) for j, e, deg in zip(f, xn.multiplicities, xn.degrees))
            if low not in out:
                out.append(low)
        return out

    for f1, f2 in itertools.product(fs1, fs2):
        for g1, g2 in itertools.product(g_choices(f1), g_choices(f2)):
            ps1, pc1, om1 = poly_part(f1, g1)
            ps2, pc2, om2 = poly_part(f2, g2)
            delta = 1 - S1[:, None] - S2[None, :] - ps1 - ps2
            terms = C1[:, None] + C2[None, :] + pc1 + pc2
            with np.errstate(divide="ignore", invalid="ignore"):
                Delta = np.where(delta > 0, (terms - 1) / delta + 2, np.inf)
                rhs = base_log + np.log(Delta) + (wl[:, None] + wl[None, :] + om1 + om2) * math.log(2)
            margin = np.where(delta > 0, lhs_log - rhs, -np.inf)
            i, j = np.unravel_index(np.argmax(margin), margin.shape)
            if margin[i, j] > best_margin:
                best_margin = margin[i, j]
                best = SievePlan(int(ls[i]), int(ls[j]), f1, f2, g1, g2)
    return best


def scan_pair(q: int, n: int, params: PairParams | None = None, budget: int = DEFAULT_BUDGET,
              extra_g: Sequence = ()) -> list[CriterionVerdict]:
    """Verdict ladder for one (q, n): power bound, then exact corollary, then sieve."""
    params = (params or flagship(q, n)).with_qn(q, n)
    ctx = pair_context(q, n)
    N = params.order
    if N % params.r1 or N % params.r2:
        return [CriterionVerdict(Verdict.UNKNOWN, "bound", reason="precondition", notes=["r_i must divide q^n-1"])]
    xn = factor_xn_minus_1(ctx)
    if next(xn.divisors_of_degree(params.k1), None) is None or next(xn.divisors_of_degree(params.k2), None) is None:
        return [CriterionVerdict(Verdict.UNKNOWN, "bound", reason="precondition",
                                 notes=["x^n-1 has no divisor of the required degree"])]
    ladder = [corollary_check_power_bound(ctx, params, budget)]
    if ladder[-1].holds:
        return ladder
    ladder.append(corollary_check(ctx, params, budget))
    if ladder[-1].holds:
        return ladder
    fact = order_factorization(ctx, budget)
    if not fact.complete:
        ladder.append(CriterionVerdict(Verdict.UNKNOWN, "sieve", reason="partial factorization"))
        return ladder
    plan = _sieve_search(ctx, params, fact, extra_g=extra_g)
    if plan is None:
        ladder.append(CriterionVerdict(Verdict.UNKNOWN, "sieve", reason="no plan with delta > 0"))
        return ladder
    v = sieve_check(ctx, params, plan, budget)
    v.notes.append("best plan found by the default search (l_i from the smallest primes of q^n-1, g_i in {f_i, 1} or f_i times all irreducibles up to a degree)")
    ladder.append(v)
    return ladder


def thm12_scan(q_list: Sequence[int], n_range: Iterable[int], params: PairParams | None = None,
               budget: int = DEFAULT_BUDGET, threads: int = 1, skip_n: Sequence[int] = (11,)) -> list[dict]:
    """Report rows for every (q, n) whose x^n - 1 has a factor of degree k1 (and k2)."""
    jobs = [(q, n) for q in q_list for n in n_range if n not in skip_n]

    def run(job):
        q, n = job
        try:
            ladder = scan_pair(q, n, params, budget)
        except DomainError as exc:
            ladder = [CriterionVerdict(Verdict.UNKNOWN, "bound", reason="domain", notes=[str(exc)])]
        return [v.to_row(q, n) for v in ladder]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    return [row for rows in results for row in rows]
