"""Complex-valued additive and multiplicative characters on small fields.

These evaluate the character-sum expressions for the trace condition, for
zero, for g-freeness and for (R, r)-freeness, so that each can be compared
against the plain boolean predicate element by element.
"""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import CapabilityError, DomainError
from .ffield import FieldCtx
from .fqpoly import factor_xn_minus_1
from .normal import as_exponents, order_exponents_all
from .zarith import divisors, euler_phi_int, factor_int, mobius_int, theta_int

CHAR_CAP = 10**5


class CharTable:
    """Logs, traces and root-of-unity data for one field F_{q^n} with q^n <= cap."""

    def __init__(self, ctx: FieldCtx, cap: int = CHAR_CAP):
        if ctx.size > cap:
            raise CapabilityError(f"character tables are limited to {cap} elements (got {ctx.size})")
        self.ctx = ctx
        self.T = ctx.tables()
        self.Tb = ctx.base.tables()
        self.Q = ctx.size
        self.N = ctx.big_order
        p = ctx.p
        elems = self.T.elements()
        D = self.T.digits(elems)
        self.abs_tr = (D @ np.array(ctx.abs_trace_vector, dtype=np.int64)) % p
        self.tr = self.T.traces()
        Db = self.Tb.digits(self.Tb.elements())
        self.abs_tr_base = (Db @ np.array(ctx.base.abs_trace_vector, dtype=np.int64)) % p
        self.zeta_p = np.exp(2j * np.pi * np.arange(p) / p)

    @property
    def generator(self) -> int:
        return self.T.generator

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no discrete logarithm")
        return int(self.T.log[a])

    # ---- additive -------------------------------------------------------

    def psi(self, w: int, eps) -> np.ndarray | complex:
        """psi_w(eps) = zeta_p^{AbsTr(w * eps)}."""
        return self.zeta_p[self.abs_tr[self.T.mul(w, eps)]]

    def eta(self, u: int, c) -> np.ndarray | complex:
        """Additive character of F_q: eta_u(c) = zeta_p^{AbsTr_q(u * c)}."""
        return self.zeta_p[self.abs_tr_base[self.Tb.mul(u, c)]]

    @cached_property
    def char_orders(self) -> np.ndarray:
        """F_q-order exponent vector of psi_w for every w."""
        return order_exponents_all(self.ctx, dual=True)

    def characters_of_order(self, h) -> np.ndarray:
        """All w whose character psi_w has F_q-order exactly h."""
        hv = np.array(as_exponents(self.ctx, h), dtype=np.int64)
        return np.nonzero((self.char_orders == hv).all(axis=1))[0]

    # ---- multiplicative -------------------------------------------------

    def chi(self, t: int, eps) -> np.ndarray:
        """chi_t(eps) = exp(2 pi i t log(eps) / (q^n - 1)); zero maps to 0."""
        eps = np.asarray(eps, dtype=np.int64)
        lg = self.T.log[eps]
        val = np.exp(2j * np.pi * ((t * np.where(lg < 0, 0, lg)) % self.N) / self.N)
        return np.where(eps == 0, 0, val)

    def chars_of_order(self, d: int) -> list[int]:
        """Indices t with chi_t of order exactly d."""
        if self.N % d:
            raise DomainError(f"{d} does not divide {self.N}")
        return [self.N // d * s for s in range(1, d + 1) if math.gcd(s, d) == 1]

    # ---- characteristic functions -----------------------------------------

    def eval_tau(self, eps, a: int) -> np.ndarray:
        """(1/q) sum_u eta_u(Tr(eps) - a); the indicator of Tr(eps) = a."""
        c = self.Tb.sub(self.tr[np.asarray(eps, dtype=np.int64)], np.int64(a))
        u = self.Tb.elements()
        vals = self.eta(u[:, None], np.atleast_1d(c)[None, :]).sum(axis=0) / self.ctx.q
        return vals.real if np.ndim(eps) else float(vals.real[0])

    def eval_I0(self, eps) -> np.ndarray:
        """(1/q^n) sum_w psi_w(eps); the indicator of eps = 0."""
        w = self.T.elements()
        e = np.atleast_1d(np.asarray(eps, dtype=np.int64))
        vals = self.psi(w[:, None], e[None, :]).sum(axis=0) / self.Q
        return vals.real if np.ndim(eps) else float(vals.real[0])

    def eval_omega_g(self, eps, g) -> np.ndarray:
        """Theta(g) sum_{h | g} mu(h)/Phi(h) sum_{psi of order h} psi(eps); indicator of g-free."""
        xn = factor_xn_minus_1(self.ctx)
        gv = np.array(as_exponents(self.ctx, g), dtype=np.int64)
        ords = self.char_orders
        keep = ((ords <= np.minimum(gv, 1)).all(axis=1))
        ws = np.nonzero(keep)[0]
        weights = np.array([xn.mobius_of(o) / xn.phi_of(o) for o in ords[ws]])
        theta = xn.phi_of(gv) / self.ctx.q ** xn.degree_of(gv)
        e = np.atleast_1d(np.asarray(eps, dtype=np.int64))
        vals = theta * (weights[:, None] * self.psi(ws[:, None], e[None, :])).sum(axis=0)
        return vals.real if np.ndim(eps) else float(vals.real[0])

    def eval_I_Rr(self, eps, R: int, r: int) -> np.ndarray:
        """Character-sum indicator of (R, r)-free elements.

        The average of the r characters of order dividing r detects the
        subgroup of order (q^n-1)/r; inside it, theta(R) sum_{d | R}
        mu(d)/phi(d) times the sum of the characters of exact order d on that
        subgroup detects R-freeness.
        """
        N = self.N
        if r < 1 or N % r:
            raise DomainError(f"r = {r} does not divide {N}")
        Nr = N // r
        if R < 1 or Nr % R:
            raise DomainError(f"R = {R} does not divide (q^n-1)/r = {Nr}")
        e = np.atleast_1d(np.asarray(eps, dtype=np.int64))
        sub = sum(self.chi(j * Nr, e) for j in range(r)) / r
        fR = factor_int(R)
        free = np.zeros(len(e), dtype=complex)
        for d in divisors(fR):
            fd = factor_int(d)
            mu = mobius_int(fd)
            if mu == 0:
                continue
            inner = sum(self.chi(Nr // d * s, e) for s in range(1, d + 1) if math.gcd(s, d) == 1)
            free += mu / euler_phi_int(fd) * inner
        vals = (sub * float(theta_int(fR)) * free).real
        return vals if np.ndim(eps) else float(vals[0])


# ---- boolean counterparts -------------------------------------------------

def is_Rr_free(ctx: FieldCtx, eps: int, R: int, r: int) -> bool:
    """eps^((Q-1)/r) = 1 and eps^((Q-1)/(r l)) != 1 for each prime l | R."""
    N = ctx.big_order
    if r < 1 or N % r or R < 1 or (N // r) % R:
        raise DomainError("need r | q^n - 1 and R | (q^n - 1)/r")
    if eps == 0 or ctx.pow(eps, N // r) != 1:
        return False
    return all(ctx.pow(eps, N // (r * l)) != 1 for l in factor_int(R).primes)


def verify_identities(ctx: FieldCtx, cap: int = CHAR_CAP) -> dict:
    """Sweep every element against every characteristic function; report max deviations."""
    from .normal import g_free_mask

    C = CharTable(ctx, cap)
    T, base = C.T, ctx.base
    elems = T.elements()
    xn = factor_xn_minus_1(ctx)
    rep: dict = {"field": repr(ctx), "size": ctx.size}

    dev = 0.0
    for a in range(ctx.q):
        dev = max(dev, float(np.abs(C.eval_tau(elems, a) - (C.tr == a)).max()))
    rep["tau_max_dev"] = dev
    rep["I0_max_dev"] = float(np.abs(C.eval_I0(elems) - (elems == 0)).max())

    orders = order_exponents_all(ctx)
    dev, count_ok = 0.0, True
    for g in xn.divisors():
        mask = g_free_mask(ctx, orders, g)
        dev = max(dev, float(np.abs(C.eval_omega_g(elems, g) - mask).max()))
        h_count = len(C.characters_of_order(g))
        count_ok &= h_count == xn.phi_of(g)
    rep["omega_max_dev"] = dev
    rep["char_order_counts_ok"] = bool(count_ok)

    N = ctx.big_order
    fN = factor_int(N)
    dev, sum_dev = 0.0, 0.0
    for r in divisors(fN):
        for R in divisors(factor_int(N // r)):
            truth = np.array([is_Rr_free(ctx, int(e), R, r) for e in elems])
            vals = C.eval_I_Rr(elems, R, r)
            dev = max(dev, float(np.abs(vals - truth).max()))
            expect = float(theta_int(factor_int(R))) * (N // r)
            sum_dev = max(sum_dev, abs(float(vals.sum()) - expect))
    rep["IRr_max_dev"] = dev
    rep["IRr_sum_max_dev"] = sum_dev

    nz = elems[elems != 0]
    orth = 0.0
    for t in range(1, N):
        orth = max(orth, abs(complex(C.chi(t, nz).sum())))
    for w in range(1, ctx.size):
        orth = max(orth, abs(complex(C.psi(w, elems).sum())))
    rep["orthogonality_max"] = orth
    rep["base_field"] = repr(base)
    rep["ok"] = (max(rep["tau_max_dev"], rep["I0_max_dev"], rep["omega_max_dev"], rep["IRr_max_dev"]) < 1e-9
                 and rep["IRr_sum_max_dev"] < 1e-6 and orth < 1e-6 and count_ok)
    return rep
