"""Exhaustive ground truth on small fields: counts, witnesses and triple counts.

Everything here enumerates the whole field with numpy, so results are exact
but sizes are capped (``ORACLE_CAP`` for single passes, ``TRIPLE_CAP`` for
triple counts).  A qualifying element must be nonzero and must not be a zero
or a pole of F.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import CapabilityError, DomainError
from .ffield import FieldCtx
from .fqpoly import Poly, factor_xn_minus_1
from .normal import as_exponents, g_free_mask, linear_map_matrix, order_exponents_all
from .ratfn import POLE_CODE, RationalFn, eval_many
from .zarith import factor_int, is_probable_prime

ORACLE_CAP = 2 * 10**6
TRIPLE_CAP = 10**4
RANK_CHUNK = 4096


def _require_cap(ctx: FieldCtx, cap: int) -> None:
    if ctx.size > cap:
        raise CapabilityError(f"exhaustive scan limited to {cap} elements (F has {ctx.size})")


def batched_rank_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Rank over F_p of each matrix in a stack of shape (B, rows, cols)."""
    A = np.array(A, dtype=np.int64) % p
    B, R, C = A.shape
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, -1, p) for x in range(1, p)]
    row = np.zeros(B, dtype=np.int64)
    ridx = np.arange(R)
    for col in range(C):
        cand = (A[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = cand[b].argmax(axis=1)
        r0 = row[b]
        top, pr = A[b, r0].copy(), A[b, piv].copy()
        A[b, piv] = top
        A[b, r0] = pr
        A[b, r0] = (A[b, r0] * inv[A[b, r0, col]][:, None]) % p
        fac = A[b, :, col].copy()
        fac[np.arange(len(b)), r0] = 0
        A[b] = (A[b] - fac[:, :, None] * A[b, r0][:, None, :]) % p
        row[b] += 1
    return row


def normality_degrees_by_rank(ctx: FieldCtx, elems=None) -> np.ndarray:
    """n - dim_{F_q} span(conjugates), from an F_p rank of {beta^j eps^(q^i)}."""
    T = ctx.tables()
    p, m, k, n = ctx.p, ctx.m, ctx.k, ctx.n
    Fr = ctx.frobenius_matrix
    pows = [np.eye(m, dtype=np.int64)]
    for _ in range(n - 1):
        pows.append((Fr @ pows[-1]) % p)
    maps = [(ctx.mul_matrix(bj) @ P) % p for bj in ctx._beta_powers for P in pows]
    stack = np.concatenate(maps, axis=0)  # (k*n*m, m)
    a = T.elements() if elems is None else np.asarray(elems, dtype=np.int64)
    out = np.empty(len(a), dtype=np.int64)
    for s in range(0, len(a), RANK_CHUNK):
        D = T.digits(a[s : s + RANK_CHUNK])
        rows = ((D @ stack.T) % p).reshape(len(D), k * n, m)
        out[s : s + RANK_CHUNK] = n - batched_rank_mod_p(rows, p) // k
    return out


class FieldScan:
    """Per-element data for a whole small field, computed once."""

    def __init__(self, ctx: FieldCtx, cap: int = ORACLE_CAP):
        _require_cap(ctx, cap)
        self.ctx = ctx
        self.T = ctx.tables(cap)
        self.N = ctx.big_order

    @cached_property
    def xn(self):
        return factor_xn_minus_1(self.ctx)

    @cached_property
    def orders(self) -> np.ndarray:
        return self.T.mult_orders(self.T.elements())

    @cached_property
    def order_exps(self) -> np.ndarray:
        return order_exponents_all(self.ctx)

    @cached_property
    def normality(self) -> np.ndarray:
        degs = np.array(self.xn.degrees, dtype=np.int64)
        return self.ctx.n - self.order_exps @ degs

    @cached_property
    def normality_by_rank(self) -> np.ndarray:
        return normality_degrees_by_rank(self.ctx)

    @cached_property
    def traces(self) -> np.ndarray:
        return self.T.traces()

    @cached_property
    def inverse_traces(self) -> np.ndarray:
        e = self.T.elements()
        inv = np.zeros_like(e)
        inv[1:] = self.T.inv(e[1:])
        return self.traces[inv]

    def rr_free(self, elems: np.ndarray, R: int, r: int) -> np.ndarray:
        """Mask of (R, r)-free elements, read off discrete logarithms."""
        _check_Rr(self.N, R, r)
        lg = self.T.log[elems]
        ok = (elems != 0) & (lg % r == 0)
        for l in factor_int(R).primes:
            ok &= lg % (r * l) != 0
        return ok


@lru_cache(maxsize=8)
def field_scan(ctx: FieldCtx, cap: int = ORACLE_CAP) -> FieldScan:
    return FieldScan(ctx, cap)


def _check_Rr(N: int, R: int, r: int) -> None:
    if r < 1 or N % r:
        raise DomainError(f"r = {r} does not divide q^n - 1 = {N}")
    if R < 1 or (N // r) % R:
        raise DomainError(f"R = {R} does not divide (q^n - 1)/r = {N // r}")


def _check_base_elem(ctx: FieldCtx, a: int, name: str) -> None:
    if not 0 <= a < ctx.q:
        raise DomainError(f"{name} = {a} is not an element of F_q")


# ---- counts -------------------------------------------------------------------

def count_r_primitive(ctx: FieldCtx, r: int, cap: int = ORACLE_CAP) -> int:
    S = field_scan(ctx, cap)
    if r < 1 or S.N % r:
        raise DomainError(f"r = {r} does not divide {S.N}")
    return int((S.orders == S.N // r).sum())


def count_k_normal(ctx: FieldCtx, k: int, cap: int = ORACLE_CAP, method: str = "order") -> int:
    """Number of k-normal elements; ``method='rank'`` uses the independent rank test."""
    if not 0 <= k <= ctx.n:
        raise DomainError("need 0 <= k <= n")
    if method == "rank":
        return int((field_scan(ctx, cap).normality_by_rank == k).sum())
    return int((field_scan(ctx, cap).normality == k).sum())


def count_trace_fiber(ctx: FieldCtx, a: int, cap: int = ORACLE_CAP) -> int:
    _check_base_elem(ctx, a, "a")
    return int((field_scan(ctx, cap).traces == a).sum())


def count_g_free(ctx: FieldCtx, g, cap: int = ORACLE_CAP) -> int:
    S = field_scan(ctx, cap)
    return int(g_free_mask(ctx, S.order_exps, as_exponents(ctx, g)).sum())


# ---- existence ------------------------------------------------------------------

@dataclass(frozen=True)
class ExistenceQuery:
    ctx: FieldCtx
    F: RationalFn
    a: int
    b: int
    r1: int
    r2: int
    k1: int
    k2: int

    def validate(self) -> None:
        N, n = self.ctx.big_order, self.ctx.n
        for name, r in (("r1", self.r1), ("r2", self.r2)):
            if r < 1 or N % r:
                raise DomainError(f"{name} = {r} does not divide q^n - 1 = {N}")
        for name, k in (("k1", self.k1), ("k2", self.k2)):
            if not 0 <= k <= n - 1:
                raise DomainError(f"{name} must lie in [0, n-1]")
        _check_base_elem(self.ctx, self.a, "a")
        _check_base_elem(self.ctx, self.b, "b")
        if self.F.field.size != self.ctx.size:
            raise DomainError("F must have coefficients in F_{q^n}")


def _qualifying(S: FieldScan, qy: ExistenceQuery, eps: np.ndarray) -> np.ndarray:
    N = S.N
    ok = (eps != 0) & (S.orders[eps] == N // qy.r1) & (S.normality[eps] == qy.k1)
    ok &= (S.traces[eps] == qy.a) & (S.inverse_traces[eps] == qy.b)
    Fe = eval_many(qy.F, S.T, eps)
    ok &= (Fe != POLE_CODE) & (Fe != 0)
    Fs = np.where(ok, Fe, 1)
    ok &= (S.orders[Fs] == N // qy.r2) & (S.normality[Fs] == qy.k2)
    return ok


def exists_witness(qy: ExistenceQuery, cap: int = ORACLE_CAP, threads: int = 1) -> int | None:
    """First qualifying element in generator-power order, or None if none exists."""
    qy.validate()
    S = field_scan(qy.ctx, cap)
    order = S.T.exp  # eps = g^0, g^1, ...
    step = 1 << 16
    chunks = [order[s : s + step] for s in range(0, len(order), step)]

    def first(chunk):
        hit = np.nonzero(_qualifying(S, qy, chunk))[0]
        return int(chunk[hit[0]]) if len(hit) else None

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(first, chunks))
    else:
        results = []
        for c in chunks:
            results.append(first(c))
            if results[-1] is not None:
                break
    return next((w for w in results if w is not None), None)


def count_witnesses(qy: ExistenceQuery, cap: int = ORACLE_CAP) -> int:
    qy.validate()
    S = field_scan(qy.ctx, cap)
    return int(_qualifying(S, qy, S.T.elements()).sum())


# ---- triple counts ------------------------------------------------------------------

@dataclass(frozen=True)
class TripleCountQuery:
    ctx: FieldCtx
    F: RationalFn
    a: int
    b: int
    r1: int
    r2: int
    R1: int
    R2: int
    f1: tuple = field(default=None)
    f2: tuple = field(default=None)
    g1: tuple = field(default=None)
    g2: tuple = field(default=None)

    def vectors(self):
        """(f1, f2, g1, g2) as exponent vectors; f defaults to 1 and g to 1."""
        xn = factor_xn_minus_1(self.ctx)
        one = tuple(0 for _ in xn.factors)
        return tuple(one if v is None else as_exponents(self.ctx, v) for v in (self.f1, self.f2, self.g1, self.g2))

    def replace(self, **kw) -> "TripleCountQuery":
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d.update(kw)
        return TripleCountQuery(**d)


def _fiber_counts(ctx: FieldCtx, S: FieldScan, f: Sequence[int], g: Sequence[int]) -> np.ndarray:
    """For each target t, the number of g-free sigma with f o sigma = t."""
    xn = S.xn
    sig = S.T.elements()
    free = g_free_mask(ctx, S.order_exps, g)
    image = S.T.apply_linear(sig[free], linear_map_matrix(ctx, xn.build(f)))
    return np.bincount(image, minlength=ctx.size)


def count_C_triples(qy: TripleCountQuery, cap: int = TRIPLE_CAP) -> int:
    """#{(eps, s1, s2)}: eps (R1,r1)-free, F(eps) (R2,r2)-free, s_i g_i-free,
    eps = f1 o s1, F(eps) = f2 o s2, Tr(eps) = a, Tr(1/eps) = b."""
    ctx = qy.ctx
    _require_cap(ctx, cap)
    N = ctx.big_order
    _check_Rr(N, qy.R1, qy.r1)
    _check_Rr(N, qy.R2, qy.r2)
    _check_base_elem(ctx, qy.a, "a")
    _check_base_elem(ctx, qy.b, "b")
    f1, f2, g1, g2 = qy.vectors()
    S = field_scan(ctx, max(cap, ORACLE_CAP))
    eps = S.T.elements()
    Fe = eval_many(qy.F, S.T, eps)
    ok = (eps != 0) & (Fe != POLE_CODE) & (Fe != 0)
    ok &= (S.traces == qy.a) & (S.inverse_traces == qy.b)
    ok &= S.rr_free(eps, qy.R1, qy.r1)
    Fs = np.where(ok, Fe, 1)
    ok &= S.rr_free(Fs, qy.R2, qy.r2)
    N1 = _fiber_counts(ctx, S, f1, g1)
    N2 = _fiber_counts(ctx, S, f2, g2)
    return int((N1[eps[ok]] * N2[Fs[ok]]).sum())


@dataclass(frozen=True)
class SieveLemmaReport:
    lhs: int
    rhs: int
    core: int
    refined: tuple[int, ...]
    terms: int

    @property
    def slack(self) -> int:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def verify_sieve_lemma_ineq(
    base: TripleCountQuery,
    primes1: Sequence[int] = (),
    primes2: Sequence[int] = (),
    polys1: Sequence[int] = (),
    polys2: Sequence[int] = (),
    cap: int = TRIPLE_CAP,
) -> SieveLemmaReport:
    """Compare C at the enlarged moduli against the inclusion-exclusion lower bound.

    ``base`` carries the core moduli (l1, l2 in R1, R2 and g1, g2).  The
    primes are added to l_i; ``polys`` are indices of irreducible factors of
    x^n - 1 to add to g_i.  The claim checked is
    C(full) >= sum of singly-refined C - (u+v+s+t-1) C(core).
    """
    ctx = base.ctx
    N = ctx.big_order
    xn = factor_xn_minus_1(ctx)
    _, _, g1, g2 = base.vectors()
    for ps in (primes1, primes2):
        if len(set(ps)) != len(ps):
            raise DomainError("repeated prime in a sieve delta")
    for ps, R, r in ((primes1, base.R1, base.r1), (primes2, base.R2, base.r2)):
        for pr in ps:
            if not is_probable_prime(pr) or (N // r) % pr or R % pr == 0:
                raise DomainError(f"{pr} must be a prime dividing (q^n-1)/r but not the core modulus")
    for idx, g in ((polys1, g1), (polys2, g2)):
        for i in idx:
            if not 0 <= i < len(xn.factors) or g[i]:
                raise DomainError(f"factor index {i} must be an irreducible of x^n-1 outside g")

    def with_poly(g, i):
        v = list(g)
        v[i] = xn.multiplicities[i]
        return tuple(v)

    def lcm(a, b):
        return a * b // math.gcd(a, b)

    full_R1 = math.prod(primes1) * base.R1
    full_R2 = math.prod(primes2) * base.R2
    G1, G2 = g1, g2
    for i in polys1:
        G1 = with_poly(G1, i)
    for i in polys2:
        G2 = with_poly(G2, i)
    lhs = count_C_triples(base.replace(R1=full_R1, R2=full_R2, g1=G1, g2=G2), cap)
    core = count_C_triples(base.replace(g1=g1, g2=g2), cap)
    refined = []
    refined += [count_C_triples(base.replace(R1=lcm(base.R1, pr), g1=g1, g2=g2), cap) for pr in primes1]
    refined += [count_C_triples(base.replace(R2=lcm(base.R2, pr), g1=g1, g2=g2), cap) for pr in primes2]
    refined += [count_C_triples(base.replace(g1=with_poly(g1, i), g2=g2), cap) for i in polys1]
    refined += [count_C_triples(base.replace(g1=g1, g2=with_poly(g2, i)), cap) for i in polys2]
    terms = len(refined)
    rhs = sum(refined) - (terms - 1) * core
    return SieveLemmaReport(lhs, rhs, core, tuple(refined), terms)


def poly_index(ctx: FieldCtx, P: Poly) -> int:
    """Position of an irreducible factor of x^n - 1 in the canonical factor list."""
    xn = factor_xn_minus_1(ctx)
    for i, (Q, _) in enumerate(xn.factors):
        if Q == P.monic():
            return i
    raise DomainError(f"{P} is not an irreducible factor of x^{ctx.n} - 1")
