"""Thresholds on q beyond which the flagship parameters always work.

The first table optimizes alpha per n; the second uses fixed (alpha, beta)
with a prime sieve; the last block computes the n = 13 constants.

Run: python3 demos/03_bounds_in_q.py
"""
from rkpairs import criteria as C
from rkpairs.cli import _fmt_float

print("Bounds from W(m) <= A_alpha m^(1/alpha):")
for row in C.scan_table1():
    span = f">= {row.n_lo}" if row.n_hi is None or row.n_hi != row.n_lo else f"{row.n_lo}"
    print(f"  n {span:>6}  alpha {row.alpha:4.1f}  q >= {_fmt_float(row.log10_bound)}  (worst n = {row.worst_n})")

print("\nBounds with a prime sieve between 2^alpha and 2^(alpha+beta):")
for row in C.scan_table2():
    print(f"  n >= {row.n_lo:>2}  ({row.alpha}, {row.beta})  q >= {_fmt_float(row.log10_bound)}")

rep = C.lemma13_pipeline("4.75e1047")
print(f"\nn = 13 with q <= 4.75e1047: u = {rep.u}, S_u = {rep.S_u:.7f}, delta = {rep.delta:.6f},"
      f" Delta = {rep.Delta:.2f}, so q >= {rep.threshold:.4e} suffices")
