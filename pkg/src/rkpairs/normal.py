"""The F_q[x]-module structure of F_{q^n}: linearized action, orders, normality, freeness.

A polynomial f = sum a_i x^i over F_q acts on F_{q^n} by
f o e = sum a_i e^(q^i).  The F_q-order Ord(e) is the monic generator of the
annihilator of e; it divides x^n - 1 and is stored as an exponent vector over
the irreducible factors of x^n - 1 (see :class:`~rkpairs.fqpoly.XnMinus1`).
"""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .errors import DomainError
from .ffield import FieldCtx, _solve_mod_p
from .fqpoly import Poly, XnMinus1, factor_xn_minus_1, poly_gcd

PolyLike = Union[Poly, Sequence[int]]


def _coeffs(ctx: FieldCtx, f: PolyLike) -> tuple[int, ...]:
    if isinstance(f, Poly):
        if f.field.size != ctx.q:
            raise DomainError("polynomial must have coefficients in F_q")
        return f.coeffs
    return Poly(ctx.base, f).coeffs


def as_exponents(ctx: FieldCtx, g: PolyLike | tuple[int, ...]) -> tuple[int, ...]:
    """Exponent vector of a divisor of x^n - 1 (a Poly, or already a vector)."""
    xn = factor_xn_minus_1(ctx)
    if isinstance(g, Poly):
        return xn.exponents(g)
    g = tuple(int(j) for j in g)
    if len(g) != len(xn.factors) or not all(0 <= j <= e for j, e in zip(g, xn.multiplicities)):
        raise DomainError(f"{g} is not an exponent vector for x^{ctx.n} - 1")
    return g


def linearized_apply(ctx: FieldCtx, f: PolyLike, eps: int) -> int:
    """f o eps = sum a_i eps^(q^i)."""
    acc, cur = 0, ctx.check(eps)
    for i, a in enumerate(_coeffs(ctx, f)):
        if i:
            cur = ctx.frobenius_q(cur)
        if a:
            acc = ctx.add(acc, ctx.mul(ctx.embed(a), cur))
    return acc


def linear_map_matrix(ctx: FieldCtx, f: PolyLike, dual: bool = False) -> np.ndarray:
    """F_p-matrix of eps -> f o eps on digit vectors.

    With ``dual`` the Frobenius powers run backwards, giving
    w -> sum a_i w^(q^(n-i)), the action transported to additive characters
    through w -> psi_w.
    """
    p, m, n = ctx.p, ctx.m, ctx.n
    Fr = ctx.frobenius_matrix
    powers = [np.eye(m, dtype=np.int64)]
    for _ in range(n - 1):
        powers.append((Fr @ powers[-1]) % p)
    M = np.zeros((m, m), dtype=np.int64)
    for i, a in enumerate(_coeffs(ctx, f)):
        if a:
            j = (n - i) % n if dual else i % n
            M = (M + ctx.mul_matrix(ctx.embed(a)) @ powers[j]) % p
    return M


def _cofactors(xn: XnMinus1) -> list[Poly]:
    """H_P = (x^n - 1) / P^e for each irreducible factor P."""
    out = []
    for i in range(len(xn.factors)):
        vec = list(xn.multiplicities)
        vec[i] = 0
        out.append(xn.build(vec))
    return out


def order_exponents(ctx: FieldCtx, eps: int) -> tuple[int, ...]:
    """Exponent vector of Ord(eps)."""
    xn = factor_xn_minus_1(ctx)
    out = []
    for (P, e), H in zip(xn.factors, _cofactors(xn)):
        v = linearized_apply(ctx, H, eps)
        j = 0
        while v:
            v = linearized_apply(ctx, P, v)
            j += 1
        assert j <= e
        out.append(j)
    return tuple(out)


def fq_order_elem(ctx: FieldCtx, eps: int) -> Poly:
    """The F_q-order of eps: the monic least-degree g with g o eps = 0."""
    return factor_xn_minus_1(ctx).build(order_exponents(ctx, eps))


def order_exponents_all(ctx: FieldCtx, elems=None, cap: int | None = None, dual: bool = False) -> np.ndarray:
    """Vectorized :func:`order_exponents`; one row per element (default: all of F_{q^n}).

    ``dual=True`` computes the F_q-orders of the additive characters psi_w instead.
    """
    T = ctx.tables(cap) if cap else ctx.tables()
    xn = factor_xn_minus_1(ctx)
    a = T.elements() if elems is None else np.asarray(elems, dtype=np.int64)
    out = np.zeros((len(a), len(xn.factors)), dtype=np.int64)
    for i, ((P, e), H) in enumerate(zip(xn.factors, _cofactors(xn))):
        MP = linear_map_matrix(ctx, P, dual)
        v = T.apply_linear(a, linear_map_matrix(ctx, H, dual))
        for _ in range(e):
            nz = v != 0
            if not nz.any():
                break
            out[:, i] += nz
            v = T.apply_linear(v, MP)
    return out


def normality_degree(ctx: FieldCtx, eps: int) -> int:
    """deg gcd(sum_i eps^(q^i) x^(n-1-i), x^n - 1); zero has degree n."""
    n = ctx.n
    conj = [ctx.check(eps)]
    for _ in range(n - 1):
        conj.append(ctx.frobenius_q(conj[-1]))
    big = Poly(ctx, [conj[n - 1 - j] for j in range(n)])
    if big.is_zero():
        return n
    return poly_gcd(big, Poly.xn_minus_1(ctx, n)).deg


def normality_degree_via_order(ctx: FieldCtx, eps: int) -> int:
    return ctx.n - factor_xn_minus_1(ctx).degree_of(order_exponents(ctx, eps))


def is_k_normal(ctx: FieldCtx, eps: int, k: int) -> bool:
    if not 0 <= k <= ctx.n:
        raise DomainError("need 0 <= k <= n")
    return normality_degree(ctx, eps) == k


def is_normal(ctx: FieldCtx, eps: int) -> bool:
    return is_k_normal(ctx, eps, 0)


def is_g_free(ctx: FieldCtx, eps: int, g: PolyLike | tuple[int, ...]) -> bool:
    """eps is g-free iff Ord(eps) carries the full P-part of x^n - 1 for each P | g."""
    gv = as_exponents(ctx, g)
    xn = factor_xn_minus_1(ctx)
    ov = order_exponents(ctx, eps)
    return all(j == e for gj, j, e in zip(gv, ov, xn.multiplicities) if gj)


def g_free_mask(ctx: FieldCtx, orders: np.ndarray, g: Sequence[int]) -> np.ndarray:
    """Rows of an order-exponent matrix that are g-free."""
    xn = factor_xn_minus_1(ctx)
    full = np.array(xn.multiplicities, dtype=np.int64)
    sel = np.array([j > 0 for j in g], dtype=bool)
    if not sel.any():
        return np.ones(len(orders), dtype=bool)
    return (orders[:, sel] == full[sel]).all(axis=1)


def is_g_free_bruteforce(ctx: FieldCtx, eps: int, g: PolyLike | tuple[int, ...]) -> bool:
    """Definition check: eps is not P o beta for any irreducible P | g and any beta."""
    gv = as_exponents(ctx, g)
    xn = factor_xn_minus_1(ctx)
    rhs = ctx.digits(ctx.check(eps))
    for (P, _), j in zip(xn.factors, gv):
        if j:
            M = linear_map_matrix(ctx, P).tolist()
            if _solve_mod_p(M, rhs, ctx.p) is not None:
                return False
    return True
