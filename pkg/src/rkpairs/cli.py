"""Command-line entry point: ``python3 -m rkpairs <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import criteria as C
from .cache import DEFAULT_CACHE, FactorCache
from .errors import CapabilityError, DomainError
from .ffield import FieldCtx
from .fqpoly import factor_xn_minus_1, format_poly, parse_poly
from .zarith import DEFAULT_BUDGET

EXIT_DOMAIN = 2
EXIT_CAPABILITY = 3


# ---- output --------------------------------------------------------------------

class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def line(self, text: str) -> None:
        print(text, file=self.out)

    def record(self, obj: dict, human: str | None = None) -> None:
        if self.fmt == "json":
            self.line(json.dumps(obj, default=str))
        elif self.fmt == "tsv":
            self.line("\t".join(_tsv_cell(v) for v in obj.values()))
        else:
            self.line(human if human is not None else _human(obj))


def _tsv_cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, default=str)
    return str(v)


def _human(obj: dict) -> str:
    return "\n".join(f"{k}: {_tsv_cell(v)}" for k, v in obj.items())


def _verdict_human(row: dict) -> str:
    head = f"(q={row['q']}, n={row['n']}) {row['stage']}: {row['verdict']}"
    extra = [f"  {k} = {v}" for k, v in row["witness"].items()]
    extra += [f"  - {note}" for note in row["notes"]]
    return "\n".join([head] + extra)


def _fmt_float(log10: float) -> str:
    if log10 < 15:
        return f"{10 ** log10:.6g}"
    mant = 10 ** (log10 - int(log10))
    return f"{mant:.4f}e{int(log10)}"


# ---- argument helpers -----------------------------------------------------------

def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def _n_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(_int(lo), _int(hi) + 1))
    return _int_list(text)


def _pair_args(p: argparse.ArgumentParser, need_qn: bool = True) -> None:
    d = C.FLAGSHIP
    if need_qn:
        p.add_argument("--q", type=_int, required=True, help="prime power q")
        p.add_argument("--n", type=_int, required=True, help="extension degree n")
    for name in ("r1", "r2", "k1", "k2", "m1", "m2"):
        p.add_argument(f"--{name}", type=_int, default=d[name], help=f"default {d[name]}")


def _params(a, q=None, n=None) -> C.PairParams:
    return C.PairParams(q if q is not None else a.q, n if n is not None else a.n,
                        a.r1, a.r2, a.k1, a.k2, a.m1, a.m2)


def _poly_or_default(ctx: FieldCtx, text: str | None, default):
    return default if text is None else parse_poly(ctx.base, text)


# ---- commands ---------------------------------------------------------------------

def cmd_field(a, em: Emitter) -> int:
    ctx = FieldCtx(a.p, a.k, a.n)
    fact = C.order_factorization(ctx, a.budget)
    xn = factor_xn_minus_1(ctx)
    em.record({
        "p": ctx.p, "k": ctx.k, "n": ctx.n, "q": str(ctx.q),
        "modulus": ",".join(map(str, ctx.modulus)) if ctx.size <= 10**60 or a.show_modulus else "(omitted)",
        "big_order": str(ctx.big_order),
        "factorization": " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fact.factors)
        + ("" if fact.complete else f" * [{fact.cofactor}]"),
        "status": fact.status,
        "xn_minus_1": [f"({format_poly(P)})^{e}" for P, e in xn.factors],
    })
    return 0


def cmd_check(a, em: Emitter) -> int:
    if a.kind == "scan":
        rows = C.thm12_scan(a.q_list, a.n_range, _params(a, 2, max(a.n_range)), a.budget, a.threads)
        for row in rows:
            em.record(row, _verdict_human(row))
        return 0
    params = _params(a)
    ctx = C.pair_context(a.q, a.n)
    if a.kind == "main":
        xn = factor_xn_minus_1(ctx)
        N = params.order
        full = xn.full()
        R1 = a.R1 if a.R1 is not None else N // params.r1
        R2 = a.R2 if a.R2 is not None else N // params.r2
        if a.f1 is None or a.f2 is None:
            raise DomainError("check main needs --f1 and --f2")
        v = C.theorem_main_check(ctx, params, R1, R2, _poly_or_default(ctx, a.g1, full),
                                 _poly_or_default(ctx, a.g2, full), parse_poly(ctx.base, a.f1),
                                 parse_poly(ctx.base, a.f2), a.budget)
    elif a.kind == "corollary":
        v = C.corollary_check(ctx, params, a.budget)
    elif a.kind == "corollary-bound":
        v = C.corollary_check_power_bound(ctx, params, a.budget)
    elif a.kind == "lemma-2nk":
        v = C.lemma_2nk_check(ctx, params, a.budget)
    else:
        if None in (a.l1, a.l2, a.f1, a.f2):
            raise DomainError("check sieve needs --l1 --l2 --f1 --f2")
        f1, f2 = parse_poly(ctx.base, a.f1), parse_poly(ctx.base, a.f2)
        plan = C.SievePlan(a.l1, a.l2, f1, f2, _poly_or_default(ctx, a.g1, f1), _poly_or_default(ctx, a.g2, f2))
        v = C.sieve_check(ctx, params, plan, a.budget)
    row = v.to_row(a.q, a.n)
    em.record(row, _verdict_human(row))
    return 0


def cmd_bound(a, em: Emitter) -> int:
    if a.scan_table1:
        for r in C.scan_table1(_params(a, 2, 64)):
            rng = f"{r.n_lo}" if r.n_hi == r.n_lo else f">={r.n_lo}"
            em.record({"n": rng, "alpha": f"{r.alpha:.1f}", "bound": _fmt_float(r.log10_bound)},
                      f"n {rng:>6}  alpha {r.alpha:5.1f}  q >= {_fmt_float(r.log10_bound)}  (worst n = {r.worst_n})")
        return 0
    if a.scan_table2:
        for r in C.scan_table2(_params(a, 2, 64)):
            rng = f">={r.n_lo}" if r.n_hi != r.n_lo or r.n_lo >= 18 else f"{r.n_lo}"
            em.record({"n": rng, "alpha,beta": f"{r.alpha:.1f},{r.beta:.1f}", "bound": _fmt_float(r.log10_bound)},
                      f"n {rng:>6}  (alpha,beta) ({r.alpha:.1f},{r.beta:.1f})  q >= {_fmt_float(r.log10_bound)}")
        return 0
    if a.n is None:
        raise DomainError("bound needs --n (or a table scan flag)")
    params = _params(a, 2, a.n)
    if a.kind == "uv":
        b = C.best_uv(params) if a.alpha is None else C.bound_uv(params, a.alpha)
        obj = {"n": a.n, "alpha": b.alpha, "log10_U": b.log10_U, "log10_V": b.log10_V,
               "log10_threshold": b.log10_threshold, "threshold": _fmt_float(b.log10_threshold)}
    else:
        if a.alpha is None or a.beta is None:
            raise DomainError("bound ab needs --alpha and --beta")
        b = C.bound_alpha_beta(params, a.alpha, a.beta)
        obj = {"n": a.n, "alpha": b.alpha, "beta": b.beta, "S": b.S, "v": b.v, "delta": b.delta,
               "Delta": b.Delta, "log10_threshold": b.log10_threshold, "threshold": _fmt_float(b.log10_threshold)}
    em.record(obj)
    return 0


def cmd_brute(a, em: Emitter) -> int:
    from . import oracle as O
    from .ratfn import RationalFn

    ctx = FieldCtx(a.p, a.k, a.n)
    cap = int(a.cap)
    if a.kind == "counts":
        N = ctx.big_order
        xn = factor_xn_minus_1(ctx)
        if a.what == "r-primitive":
            from .zarith import divisors, factor_int
            for r in divisors(factor_int(N)):
                em.record({"r": r, "count": O.count_r_primitive(ctx, r, cap)})
        elif a.what == "k-normal":
            for k in range(ctx.n + 1):
                em.record({"k": k, "count": O.count_k_normal(ctx, k, cap)})
        elif a.what == "trace":
            for t in range(ctx.q):
                em.record({"a": t, "count": O.count_trace_fiber(ctx, t, cap)})
        else:
            for g in xn.divisors():
                em.record({"g": format_poly(xn.build(g)), "count": O.count_g_free(ctx, g, cap)})
        return 0
    F = RationalFn.parse(ctx, a.F)
    if a.kind == "witness":
        qy = O.ExistenceQuery(ctx, F, a.a, a.b, a.r1, a.r2, a.k1, a.k2)
        w = O.exists_witness(qy, cap, a.threads)
        em.record({"witness": w, "count": O.count_witnesses(qy, cap) if a.count else None})
        return 0
    N = ctx.big_order
    qy = O.TripleCountQuery(ctx, F, a.a, a.b, a.r1, a.r2,
                            a.R1 if a.R1 is not None else N // a.r1, a.R2 if a.R2 is not None else N // a.r2,
                            *(None if t is None else parse_poly(ctx.base, t) for t in (a.f1, a.f2, a.g1, a.g2)))
    em.record({"C": O.count_C_triples(qy, cap)})
    return 0


def cmd_chars(a, em: Emitter) -> int:
    from .chars import verify_identities

    rep = verify_identities(FieldCtx(a.p, a.k, a.n), int(a.cap))
    em.record(rep)
    return 0 if rep["ok"] else 1


def cmd_lemma13(a, em: Emitter) -> int:
    rep = C.lemma13_pipeline(a.q_cap, alpha=a.alpha, q_floor=a.q_floor)
    d = rep.as_dict()
    d["threshold"] = _fmt_float(rep.log10_threshold)
    em.record(d)
    return 0


# ---- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--format", choices=("json", "tsv", "human"), default=S)
    common.add_argument("--threads", type=_int, default=S)
    common.add_argument("--no-cache", action="store_true", default=S)
    common.add_argument("--cache", type=Path, default=S, help="factorization cache file")
    common.add_argument("--budget", type=_int, default=S, help="factoring effort per number")

    top = argparse.ArgumentParser(prog="rkpairs", parents=[common],
                                  description="Existence criteria for primitive/normal pairs in finite fields.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe F_{q^n}")
    p.add_argument("--p", type=_int, required=True)
    p.add_argument("--k", type=_int, default=1)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--show-modulus", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("check", parents=[common], help="evaluate a sufficient condition")
    p.add_argument("kind", choices=("main", "corollary", "corollary-bound", "sieve", "lemma-2nk", "scan"))
    p.add_argument("--q", type=_int)
    p.add_argument("--n", type=_int)
    for name in ("r1", "r2", "k1", "k2", "m1", "m2"):
        p.add_argument(f"--{name}", type=_int, default=C.FLAGSHIP[name])
    for name in ("R1", "R2", "l1", "l2"):
        p.add_argument(f"--{name}", type=_int)
    for name in ("f1", "f2", "g1", "g2"):
        p.add_argument(f"--{name}", help="coefficients c0,c1,... over F_q")
    p.add_argument("--q-list", type=_int_list, help="scan: comma-separated q values")
    p.add_argument("--n-range", type=_n_range, help="scan: lo-hi or a comma list")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bound", parents=[common], help="thresholds on q for all large q")
    p.add_argument("kind", choices=("uv", "ab"))
    p.add_argument("--n", type=_int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    for name in ("r1", "r2", "k1", "k2", "m1", "m2"):
        p.add_argument(f"--{name}", type=_int, default=C.FLAGSHIP[name])
    p.add_argument("--scan-table1", action="store_true")
    p.add_argument("--scan-table2", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("brute", parents=[common], help="exhaustive oracle on small fields")
    p.add_argument("kind", choices=("witness", "counts", "triples"))
    p.add_argument("--p", type=_int, required=True)
    p.add_argument("--k", type=_int, default=1)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--what", choices=("r-primitive", "k-normal", "trace", "g-free"), default="k-normal")
    p.add_argument("--F", default="num:0,1", help="rational function num:c0,..;den:c0,..")
    p.add_argument("--a", type=_int, default=0)
    p.add_argument("--b", type=_int, default=0)
    for name in ("r1", "r2", "k1", "k2"):
        p.add_argument(f"--{name}", type=_int, default=1 if name[0] == "r" else 0)
    for name in ("R1", "R2"):
        p.add_argument(f"--{name}", type=_int)
    for name in ("f1", "f2", "g1", "g2"):
        p.add_argument(f"--{name}")
    p.add_argument("--count", action="store_true", help="witness: also count all witnesses")
    p.add_argument("--cap", type=float, default=2e6)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("chars", parents=[common], help="character-sum identities")
    p.add_argument("kind", choices=("verify",))
    p.add_argument("--p", type=_int, required=True)
    p.add_argument("--k", type=_int, default=1)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--cap", type=float, default=1e5)
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("lemma13", parents=[common], help="sieve constants for n = 13")
    p.add_argument("--q-cap", default="4.75e1047", help="upper end of the q range (decimal string)")
    p.add_argument("--alpha", type=float, default=4.3)
    p.add_argument("--q-floor", type=float, default=1e4)
    p.set_defaults(func=cmd_lemma13)
    return top


def main(argv=None, out=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    fmt = getattr(a, "format", "human")
    a.threads = getattr(a, "threads", 1)
    a.budget = getattr(a, "budget", DEFAULT_BUDGET)
    em = Emitter(fmt, out)
    if a.command == "check" and a.kind == "scan":
        if not a.q_list or not a.n_range:
            parser.error("check scan needs --q-list and --n-range")
    elif a.command == "check" and (a.q is None or a.n is None):
        parser.error("check needs --q and --n")
    if not getattr(a, "no_cache", False):
        C.set_factor_provider(FactorCache(getattr(a, "cache", DEFAULT_CACHE)).provider)
    try:
        return a.func(a, em)
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        C.set_factor_provider(None)


if __name__ == "__main__":
    sys.exit(main())
