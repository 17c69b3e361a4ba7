"""Integer number theory: factorization with partial results, totients, prime scans.

Factorizations are represented by :class:`IntFactorization`, which may be
*partial*: a composite cofactor that the effort budget could not split is kept
as-is, and counting functions (``omega_int``, ``W_int``) then return an
:class:`Interval` guaranteed to contain the exact value.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import DomainError, PreconditionError

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = 20_000_000

_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_PROBABLE_ROUNDS = 40


# --------------------------------------------------------------------------
# primes

@lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return np.flatnonzero(flags)


def primes_upto(limit: int) -> np.ndarray:
    """All primes ``p <= limit`` as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    # round the sieve size up so nearby requests share one cached sieve
    size = 1 << max(16, (int(limit) - 1).bit_length())
    ps = _sieve(size)
    return ps[: np.searchsorted(ps, limit, side="right")]


def primes_in(lo: float, hi: float) -> list[int]:
    """Primes ``p`` with ``lo < p < hi`` (both strict), in increasing order."""
    if lo < 0:
        raise DomainError("lo must be non-negative")
    if hi <= lo:
        return []
    ps = primes_upto(math.ceil(hi))
    return [int(p) for p in ps if lo < p < hi]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64, 40 seeded random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        bases: Iterable[int] = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = [2] + [rng.randrange(3, n - 1) for _ in range(_PROBABLE_ROUNDS - 1)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --------------------------------------------------------------------------
# factorization

class Interval(NamedTuple):
    """Closed integer interval ``[lo, hi]``."""

    lo: int
    hi: int

    def __contains__(self, x) -> bool:  # type: ignore[override]
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class IntFactorization:
    """A (possibly partial) prime factorization of ``value``.

    ``factors`` holds ``(prime, exponent)`` pairs in increasing prime order.
    When the factorization is partial, ``cofactor > 1`` is the unsplit
    remainder: every prime dividing it is at least ``cofactor_floor`` and
    it has at least ``cofactor_min_primes`` distinct prime factors.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    cofactor_floor: int = TRIAL_LIMIT
    cofactor_min_primes: int = 1

    def __post_init__(self):
        prod = self.cofactor
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    @property
    def status(self) -> str:
        return "complete" if self.cofactor == 1 else "partial"

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def require_complete(self, what: str = "operation") -> None:
        if not self.complete:
            raise PreconditionError(f"{what} needs a complete factorization of {self.value}")


def _pull_small(n: int, out: dict[int, int]) -> int:
    for p in primes_upto(TRIAL_LIMIT):
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if 1 < n < TRIAL_LIMIT * TRIAL_LIMIT:
        # all primes below TRIAL_LIMIT were tried, so what is left is prime
        out[n] = out.get(n, 0) + 1
        n = 1
    return n


def _brent(n: int, c: int, budget: int, m: int = 128) -> tuple[int | None, int]:
    """One Brent-cycle run of Pollard rho. Returns (factor or None, iterations)."""
    y, r, acc, g = 2, 1, 1, 1
    x = ys = y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                acc = acc * abs(x - y) % n
            g = math.gcd(acc, n)
            k += m
        spent += 2 * r
        r *= 2
        if g == 1 and spent > budget:
            return None, spent
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            spent += 1
        if g == n:
            return None, spent
    return g, spent


def _split(n: int, budget: int) -> tuple[dict[int, int], list[int], int]:
    """Split a composite ``n`` with no small factors. Returns (primes, leftovers, spent)."""
    found: dict[int, int] = {}
    leftovers: list[int] = []
    stack = [n]
    spent = 0
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = None
        c = 1
        while d is None and spent < budget:
            d, used = _brent(m, c, budget - spent)
            spent += used
            c += 1
        if d is None:
            leftovers.append(m)
        else:
            stack += [d, m // d]
    return found, leftovers, spent


@lru_cache(maxsize=4096)
def factor_int(n: int, budget: int = DEFAULT_BUDGET) -> IntFactorization:
    """Factor ``n`` by trial division through 10**6 and Brent-rho above.

    ``budget`` bounds the total number of rho iterations; composites that
    survive it are returned as the cofactor of a partial result.

    >>> factor_int(12).factors
    ((2, 2), (3, 1))
    """
    if n < 1:
        raise DomainError("factor_int needs n >= 1")
    small: dict[int, int] = {}
    rest = _pull_small(n, small)
    leftovers: list[int] = []
    if rest > 1:
        big, leftovers, _ = _split(rest, budget)
        for p, e in big.items():
            small[p] = small.get(p, 0) + e
    cof = reduce(lambda a, b: a * b, leftovers, 1)
    # leftovers may still be divisible by primes found elsewhere
    for p in list(small):
        while cof % p == 0 and cof > 1:
            cof //= p
            small[p] += 1
    return IntFactorization(n, tuple(sorted(small.items())), cof,
                            cofactor_min_primes=max(1, len(leftovers)) if cof > 1 else 1)


def combine(parts: Iterable[IntFactorization]) -> IntFactorization:
    """Factorization of the product of the given factorizations."""
    exps: dict[int, int] = {}
    value, cof, floor, min_primes = 1, 1, TRIAL_LIMIT, 0
    for f in parts:
        value *= f.value
        for p, e in f.factors:
            exps[p] = exps.get(p, 0) + e
        if not f.complete:
            cof *= f.cofactor
            floor = min(floor, f.cofactor_floor)
            min_primes = max(min_primes, f.cofactor_min_primes)
    for p in list(exps):
        while cof > 1 and cof % p == 0:
            cof //= p
            exps[p] += 1
    return IntFactorization(value, tuple(sorted(exps.items())), cof, floor, max(1, min_primes))


def cyclotomic_value(d: int, x: int) -> int:
    """Exact integer value of the d-th cyclotomic polynomial at ``x``."""
    if d < 1:
        raise DomainError("d must be positive")
    num, den = 1, 1
    for e in _divisors_small(d):
        mu = mobius_int(factor_int(d // e))
        if mu == 1:
            num *= x**e - 1
        elif mu == -1:
            den *= x**e - 1
    return num // den


def _divisors_small(n: int) -> list[int]:
    return sorted(divisors(factor_int(n)))


@lru_cache(maxsize=512)
def factor_power_minus_one(base: int, exp: int, budget: int = DEFAULT_BUDGET) -> IntFactorization:
    """Factor ``base**exp - 1`` piecewise through ``prod_{d | exp} Phi_d(base)``."""
    if base < 2 or exp < 1:
        raise DomainError("need base >= 2 and exp >= 1")
    pieces = [factor_int(cyclotomic_value(d, base), budget) for d in _divisors_small(exp)]
    out = combine(pieces)
    assert out.value == base**exp - 1
    return out


def factor_divisor(f: IntFactorization, R: int) -> IntFactorization:
    """Factorization of a divisor ``R`` of ``f.value`` derived from ``f``."""
    if R < 1 or f.value % R:
        raise DomainError(f"{R} does not divide {f.value}")
    exps = []
    rest = R
    for p, _ in f.factors:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            exps.append((p, e))
    if rest == 1:
        return IntFactorization(R, tuple(exps))
    if f.complete:
        raise AssertionError("unreachable: divisor outside a complete factorization")
    return IntFactorization(R, tuple(exps), rest, f.cofactor_floor, 1)


def divisors(f: IntFactorization) -> Iterator[int]:
    """All positive divisors (unordered) of a complete factorization."""
    f.require_complete("divisors")
    ranges = [[p**i for i in range(e + 1)] for p, e in f.factors]
    for combo in product(*ranges):
        yield math.prod(combo)


# --------------------------------------------------------------------------
# arithmetic functions

def _extra_prime_bound(f: IntFactorization) -> int:
    k, x = 0, 1
    while x * f.cofactor_floor <= f.cofactor:
        x *= f.cofactor_floor
        k += 1
    return max(k, f.cofactor_min_primes)


def omega_int(f: IntFactorization) -> int | Interval:
    """Number of distinct prime divisors; an :class:`Interval` when partial."""
    known = len(f.factors)
    if f.complete:
        return known
    return Interval(known + f.cofactor_min_primes, known + _extra_prime_bound(f))


def W_int(f: IntFactorization) -> int | Interval:
    """Number of square-free divisors, ``2**omega``."""
    w = omega_int(f)
    if isinstance(w, Interval):
        return Interval(2**w.lo, 2**w.hi)
    return 2**w


def euler_phi_int(f: IntFactorization) -> int:
    f.require_complete("euler_phi")
    out = 1
    for p, e in f.factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def mobius_int(f: IntFactorization) -> int:
    f.require_complete("mobius")
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def theta_int(f: IntFactorization) -> Fraction:
    """phi(R)/R as an exact fraction."""
    return Fraction(euler_phi_int(f), f.value)


def char_budget_sides(R: int, r: int) -> tuple[Fraction, int]:
    """Both sides of the divisor-sum identity used to bound the (R, r)-free sum.

    lhs = sum_{d | Rr} |mu(d_(r))| / phi(d_(r)) * phi(d),  d_(r) = d / gcd(d, r)
    rhs = gcd(R, r) * W(gcd(R, R_(r)))

    The two are returned separately; they are not equal in general.
    """
    if R < 1 or r < 1:
        raise DomainError("R and r must be positive")
    lhs = Fraction(0)
    for d in divisors(factor_int(R * r)):
        dr = factor_int(d // math.gcd(d, r))
        if mobius_int(dr) != 0:
            lhs += Fraction(euler_phi_int(factor_int(d)), euler_phi_int(dr))
    g = math.gcd(R, r)
    rhs = g * W_int(factor_int(math.gcd(R, R // g)))
    return lhs, rhs


# --------------------------------------------------------------------------
# prime-product constants

def _primes_below_pow2(a: float) -> np.ndarray:
    bound = 2.0**a
    ps = primes_upto(math.ceil(bound))
    return ps[ps < bound]


@lru_cache(maxsize=1024)
def _log_primes_below_pow2(a: float) -> tuple[int, float]:
    """(number of primes below 2^a, sum of their natural logs)."""
    ps = _primes_below_pow2(a)
    return len(ps), math.fsum(np.log(ps.astype(np.float64)).tolist())


def log_A_alpha(alpha: float) -> float:
    """Natural log of A_alpha = prod_{p < 2^alpha} 2 / p^(1/alpha)."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    k, lg = _log_primes_below_pow2(alpha)
    return k * math.log(2) - lg / alpha


def A_alpha(alpha: float) -> float:
    return math.exp(log_A_alpha(alpha))


def log_A_alpha_beta(alpha: float, beta: float) -> float:
    """Natural log of A_{alpha,beta} = prod_{p < 2^alpha} 2 / p^(1/(alpha+beta))."""
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha and beta must be positive")
    k, lg = _log_primes_below_pow2(alpha)
    return k * math.log(2) - lg / (alpha + beta)


def A_alpha_beta(alpha: float, beta: float) -> float:
    return math.exp(log_A_alpha_beta(alpha, beta))


def _primes_between_pow2(alpha: float, beta: float) -> np.ndarray:
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha and beta must be positive")
    lo, hi = 2.0**alpha, 2.0 ** (alpha + beta)
    ps = primes_upto(math.ceil(hi))
    return ps[(ps > lo) & (ps < hi)]


def S_alpha_beta(alpha: float, beta: float) -> float:
    """Sum of 1/p over primes strictly between 2^alpha and 2^(alpha+beta)."""
    return math.fsum(1.0 / int(p) for p in _primes_between_pow2(alpha, beta))


def v_alpha_beta(alpha: float, beta: float) -> int:
    """Number of primes strictly between 2^alpha and 2^(alpha+beta)."""
    return len(_primes_between_pow2(alpha, beta))


class PrimeFormScan(NamedTuple):
    count: int
    recip_sum: float
    log10_product: float
    last_prime: int | None


def prime_form_scan(modulus: int, residue: int, log10_cap: float) -> PrimeFormScan:
    """Greedily multiply primes ``p = residue (mod modulus)`` in increasing order
    while the product stays at most ``10**log10_cap``.
    """
    if log10_cap < 0:
        raise DomainError("cap must be non-negative")
    residue %= modulus
    count, logs, recips, last = 0, [], [], None
    total = 0.0
    limit = 1 << 16
    start = 0
    while True:
        ps = primes_upto(limit)
        cand = ps[start:]
        cand = cand[cand % modulus == residue]
        for p in cand:
            p = int(p)
            lp = math.log10(p)
            if total + lp > log10_cap:
                return PrimeFormScan(count, math.fsum(recips), total, last)
            logs.append(lp)
            recips.append(1.0 / p)
            total = math.fsum(logs)
            count += 1
            last = p
        start = len(ps)
        limit *= 2
