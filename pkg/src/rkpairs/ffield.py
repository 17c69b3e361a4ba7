"""Finite field tower F_p < F_q < F_{q^n} in a single flat representation.

Elements of F_{q^n} = F_p[x]/(modulus) are plain Python ints: the base-p
digits of the int are the coefficients of the residue polynomial, constant
term first.  F_q sits inside as the fixed set of eps -> eps^q.  Values of F_q
that appear as parameters (traces, polynomial coefficients) use the encoding
of the stand-alone field ``FieldCtx(p, k, 1)`` and are moved in and out of the
big field with :meth:`FieldCtx.embed` / :meth:`FieldCtx.to_base`.
"""
from __future__ import annotations

import math
from functools import cached_property
from itertools import product

import numpy as np

from .errors import CapabilityError, DomainError, UnknownOrderError
from .zarith import IntFactorization, factor_power_minus_one, is_probable_prime

AUTO_TABLE_CAP = 1 << 17
TABLE_CAP = 2_000_000


# --------------------------------------------------------------------------
# F_p[x] helpers (coefficient lists, constant term first)

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _ptrim(a[:df])


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod([c % p for c in out], f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, f, p)
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible_fp(f: list[int], p: int) -> bool:
    """Irreducibility test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    if p <= 257:
        for r in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * r + c) % p
            if acc == 0:
                return False
    # Ben-Or: reject as soon as a factor of degree <= m/2 shows up
    x = [0, 1]
    cur = x
    for _ in range(m // 2):
        cur = _ppowmod(cur, p, f, p)
        if len(_pgcd(f, _psub(cur, x, p), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F_p,
    comparing coefficients from the constant term up."""
    if m == 1:
        return (0, 1)
    for c0 in range(1, p):
        for rest in product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if is_irreducible_fp(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --------------------------------------------------------------------------

class FieldCtx:
    """The extension F_{q^n} of F_q = F_{p^k}, realized as F_p[x]/(modulus).

    The modulus (degree k*n) and the factorization of q^n - 1 are computed on
    first use, so a context for a huge field is cheap as long as only
    ``q``, ``n`` and the factorization are consulted.
    """

    def __init__(self, p: int, k: int = 1, n: int = 1, modulus=None):
        if p < 2 or not is_probable_prime(p) or p >= 1 << 64:
            raise DomainError(f"{p} is not a prime")
        if k < 1 or n < 1:
            raise DomainError("k and n must be positive")
        self.p, self.k, self.n = p, k, n
        self.m = k * n
        self.q = p**k
        self.size = p**self.m
        self.big_order = self.size - 1
        if modulus is not None:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != self.m + 1 or modulus[-1] != 1 or not is_irreducible_fp(list(modulus), p):
                raise DomainError("modulus must be monic irreducible of degree k*n")
            self.__dict__["modulus"] = modulus
        self._pw = [p**i for i in range(self.m)]
        self._tables: FieldTables | None = None

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, n={self.n})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx) and (self.p, self.k, self.n) == (other.p, other.k, other.n)
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.n))

    @cached_property
    def modulus(self) -> tuple[int, ...]:
        return smallest_irreducible(self.p, self.m)

    @cached_property
    def _neg_low(self) -> list[int]:
        return [(-c) % self.p for c in self.modulus[:-1]]

    @cached_property
    def base(self) -> "FieldCtx":
        """The subfield F_q as a stand-alone field (itself when n = 1)."""
        if self.n == 1:
            return self
        return FieldCtx(self.p, self.k, 1)

    @cached_property
    def order_factorization(self) -> IntFactorization:
        return factor_power_minus_one(self.p, self.m)

    # ---- digits -------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def from_digits(self, ds) -> int:
        out = 0
        for d in reversed(list(ds)):
            out = out * self.p + (int(d) % self.p)
        return out

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise DomainError(f"{a} is not an element of F_{self.p}^{self.m}")
        return a

    # ---- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, mul = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * mul
            mul *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, mul = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * mul
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        """Multiply by the prime-field constant c."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.from_digits(d * c for d in self.digits(a))

    def _mul_generic(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, m = self.p, self.m
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        low = self._neg_low
        for i in range(2 * m - 2, m - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(m):
                    prod[i - m + j] += c * low[j]
        return self.from_digits(prod[:m])

    def _auto_tables(self) -> FieldTables | None:
        if self._tables is None and self.size <= AUTO_TABLE_CAP:
            self._tables = FieldTables(self)
        return self._tables

    def mul(self, a: int, b: int) -> int:
        t = self._tables or self._auto_tables()
        if t is not None:
            if a == 0 or b == 0:
                return 0
            return t.exp_l[(t.log_l[a] + t.log_l[b]) % self.big_order]
        return self._mul_generic(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        t = self._tables or self._auto_tables()
        if t is not None:
            return t.exp_l[(t.log_l[a] * e) % self.big_order]
        return self._pow_generic(a, e)

    def _pow_generic(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_generic(result, base)
            e >>= 1
            if e:
                base = self._mul_generic(base, base)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        t = self._tables or self._auto_tables()
        if t is not None:
            return t.exp_l[(-t.log_l[a]) % self.big_order]
        return self.pow(a, self.size - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # ---- Frobenius, subfield, trace ----------------------------------

    def frobenius_q(self, a: int, times: int = 1) -> int:
        """a^(q^times)."""
        return self.pow(a, self.q ** (times % self.n))

    def conjugates(self, a: int) -> list[int]:
        """[a, a^q, ..., a^(q^(n-1))]."""
        out = [a]
        for _ in range(self.n - 1):
            out.append(self.pow(out[-1], self.q))
        return out

    def in_subfield(self, a: int) -> bool:
        return self.pow(a, self.q) == a

    def trace_to_base(self, a: int) -> int:
        """Tr_{F_{q^n}/F_q}(a), as an element of the big field lying in F_q."""
        acc = 0
        for c in self.conjugates(a):
            acc = self.add(acc, c)
        return acc

    def trace(self, a: int) -> int:
        """Tr_{F_{q^n}/F_q}(a) in the F_q encoding."""
        return self.to_base(self.trace_to_base(a))

    def abs_trace(self, a: int) -> int:
        """Tr_{F_{q^n}/F_p}(a) as an integer mod p."""
        vec = self.abs_trace_vector
        return sum(d * t for d, t in zip(self.digits(a), vec)) % self.p

    @cached_property
    def abs_trace_vector(self) -> list[int]:
        out = []
        for j in range(self.m):
            acc, c = 0, self.p**j
            for _ in range(self.m):
                acc = self.add(acc, c)
                c = self.pow(c, self.p)
            out.append(acc)
        return out

    @cached_property
    def subfield_generator(self) -> int:
        """The element beta with F_q = F_p(beta) used for the F_q encoding."""
        if self.k == 1:
            return 1
        if self.n == 1:
            return self.p  # the class of x
        from .fqpoly import Poly, poly_roots

        return min(poly_roots(Poly(self, self.base.modulus)))

    @cached_property
    def _beta_powers(self) -> list[int]:
        beta, out, cur = self.subfield_generator, [], 1
        for _ in range(self.k):
            out.append(cur)
            cur = self.mul(cur, beta)
        return out

    def embed(self, c: int) -> int:
        """Map an F_q value (0 <= c < q) into the big field."""
        if not 0 <= c < self.q:
            raise DomainError(f"{c} is not an F_{self.q} value")
        if self.n == 1 or self.k == 1:
            return c
        acc = 0
        for d, bp in zip(self.base.digits(c), self._beta_powers):
            if d:
                acc = self.add(acc, self.scale(bp, d))
        return acc

    @cached_property
    def _to_base_map(self):
        if self.q <= 1 << 16:
            return {self.embed(c): c for c in range(self.q)}
        return None

    def to_base(self, a: int) -> int:
        """Inverse of :meth:`embed`; raises DomainError outside F_q."""
        if self.n == 1 or self.k == 1:
            if self.n > 1 and a >= self.p:
                raise DomainError(f"{a} does not lie in F_{self.q}")
            return a
        lookup = self._to_base_map
        if lookup is not None:
            try:
                return lookup[a]
            except KeyError:
                raise DomainError(f"{a} does not lie in F_{self.q}") from None
        cols = [self.digits(bp) for bp in self._beta_powers]
        sol = _solve_mod_p([[cols[j][i] for j in range(self.k)] for i in range(self.m)],
                           self.digits(a), self.p)
        if sol is None:
            raise DomainError(f"{a} does not lie in F_{self.q}")
        return self.base.from_digits(sol)

    # ---- multiplicative structure ------------------------------------

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        t = self._tables or self._auto_tables()
        if t is not None:
            return self.big_order // math.gcd(t.log_l[a], self.big_order)
        f = self.order_factorization
        if not f.complete:
            raise UnknownOrderError(f"q^n - 1 = {self.big_order} is only partially factored")
        order = self.big_order
        for ell, _ in f.factors:
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def is_r_primitive(self, a: int, r: int) -> bool:
        if r < 1 or self.big_order % r:
            raise DomainError(f"r = {r} does not divide q^n - 1 = {self.big_order}")
        if a == 0:
            return False
        return self.mult_order(a) == self.big_order // r

    @cached_property
    def primitive_element(self) -> int:
        """The smallest (as an int) generator of the multiplicative group."""
        if self._tables is not None:
            return self._tables.generator
        return _find_generator(self)

    # ---- vectorized tables -------------------------------------------

    def tables(self, cap: int = TABLE_CAP) -> FieldTables:
        """Exp/log tables and vectorized arithmetic; raises CapabilityError above cap."""
        if self._tables is None:
            if self.size > cap:
                raise CapabilityError(f"field of size {self.size} exceeds table cap {cap}")
            self._tables = FieldTables(self)
        return self._tables

    def mul_matrix(self, c: int) -> np.ndarray:
        """Matrix over F_p of y -> c*y, acting on digit column vectors."""
        cols = [self.digits(self.mul(c, self._pw[j])) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix over F_p of y -> y^q."""
        cols = [self.digits(self.pow(self._pw[j], self.q)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    # ---- serialization ------------------------------------------------

    def format_element(self, a: int) -> str:
        return ",".join(str(d) for d in self.digits(self.check(a)))

    def parse_element(self, text: str) -> int:
        ds = [int(t) for t in text.split(",") if t.strip() != ""]
        if len(ds) > self.m or any(not 0 <= d < self.p for d in ds):
            raise DomainError(f"bad element string {text!r}")
        return self.from_digits(ds)


def _find_generator(ctx: FieldCtx) -> int:
    f = ctx.order_factorization
    if not f.complete:
        raise UnknownOrderError("need a complete factorization of q^n - 1 to find a generator")
    if ctx.big_order == 1:
        return 1
    for g in range(2 if ctx.size > 2 else 1, ctx.size):
        if all(ctx._pow_generic(g, ctx.big_order // ell) != 1 for ell, _ in f.factors):
            return g
    raise AssertionError("no generator")  # pragma: no cover


def _solve_mod_p(A: list[list[int]], b: list[int], p: int) -> list[int] | None:
    """Solve A x = b over F_p for a full-column-rank A; None if inconsistent."""
    rows, cols = len(A), len(A[0])
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    piv_row = 0
    where = [-1] * cols
    for c in range(cols):
        r = next((i for i in range(piv_row, rows) if M[i][c] % p), None)
        if r is None:
            continue
        M[piv_row], M[r] = M[r], M[piv_row]
        inv = pow(M[piv_row][c], -1, p)
        M[piv_row] = [v * inv % p for v in M[piv_row]]
        for i in range(rows):
            if i != piv_row and M[i][c] % p:
                f = M[i][c]
                M[i] = [(v - f * w) % p for v, w in zip(M[i], M[piv_row])]
        where[c] = piv_row
        piv_row += 1
    if any(all(v % p == 0 for v in M[i][:cols]) and M[i][cols] % p for i in range(rows)):
        return None
    return [M[where[c]][cols] if where[c] >= 0 else 0 for c in range(cols)]


class FieldTables:
    """Exp/log tables plus numpy-vectorized arithmetic over a whole small field."""

    CHUNK = 1 << 16

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        p, m, N = ctx.p, ctx.m, ctx.big_order
        self.pw = np.array([p**i for i in range(m)], dtype=np.int64)
        g = _find_generator(ctx)
        self.generator = g
        Mg = np.array([ctx.digits(ctx._mul_generic(g, p**j)) for j in range(m)], dtype=np.int64).T
        rows = np.zeros((1, m), dtype=np.int64)
        rows[0, 0] = 1
        step = Mg
        while len(rows) < N:
            rows = np.vstack([rows, (rows @ step.T) % p])
            step = (step @ step) % p
        exp = rows[:N] @ self.pw
        log = np.full(ctx.size, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if N and (log[1:] < 0).any():
            raise AssertionError("generator does not generate")  # pragma: no cover
        self.exp, self.log = exp, log
        self.exp_l, self.log_l = exp.tolist(), log.tolist()

    def elements(self) -> np.ndarray:
        return np.arange(self.ctx.size, dtype=np.int64)

    def digits(self, a: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64)[:, None] // self.pw) % self.ctx.p

    def encode(self, D: np.ndarray) -> np.ndarray:
        return D @ self.pw

    def add(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.ctx.p == 2:
            return a ^ b
        return self.encode((self.digits(a.ravel()) + self.digits(b.ravel())) % self.ctx.p).reshape(a.shape)

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.ctx.p == 2:
            return a
        return self.encode((-self.digits(a.ravel())) % self.ctx.p).reshape(a.shape)

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        zero = (a == 0) | (b == 0)
        out = self.exp[(self.log[a] + self.log[b]) % self.ctx.big_order]
        return np.where(zero, 0, out)

    def pow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        N = self.ctx.big_order
        out = self.exp[(self.log[a] % N) * (e % N) % N]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(-self.log[a]) % self.ctx.big_order]

    def mult_orders(self, a) -> np.ndarray:
        """Multiplicative order of each element (0 for the zero element)."""
        a = np.asarray(a, dtype=np.int64)
        N = self.ctx.big_order
        lg = self.log[a]
        out = N // np.gcd(np.where(lg < 0, 0, lg), N)
        return np.where(a == 0, 0, out)

    def traces(self) -> np.ndarray:
        """Tr_{F_{q^n}/F_q} of every element, in the F_q encoding (indexed by element)."""
        ctx, p = self.ctx, self.ctx.p
        cols = [ctx.base.digits(ctx.trace(p**j)) for j in range(ctx.m)]
        M = np.array(cols, dtype=np.int64).T
        D = self.digits(self.elements())
        return ((D @ M.T) % p) @ np.array([p**i for i in range(ctx.k)], dtype=np.int64)

    def apply_linear(self, a, L: np.ndarray) -> np.ndarray:
        """Apply an F_p-linear map (matrix on digit columns) elementwise."""
        a = np.asarray(a, dtype=np.int64)
        out = np.empty_like(a)
        flat, res = a.ravel(), out.ravel()
        for s in range(0, len(flat), self.CHUNK):
            D = self.digits(flat[s : s + self.CHUNK])
            res[s : s + self.CHUNK] = self.encode((D @ L.T) % self.ctx.p)
        return out
