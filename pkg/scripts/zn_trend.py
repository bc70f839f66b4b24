"""Z_n at the discrete-faithful candidates as |n| grows.

Tracks Re(Z), |Im(Z)| for the candidate nearest the expected limit
-eps(3/2 +- i/2); this is a trend table, not a convergence proof.
"""

import argparse

from bundlechar.arithmetic import discrete_faithful, twisted_alexander
from bundlechar.cli import parse_range

ap = argparse.ArgumentParser()
ap.add_argument("--range", type=parse_range, default=range(3, 31))
args = ap.parse_args()

print(f"{'n':>4} {'eps':>4} {'Re Z':>12} {'|Im Z|':>12} {'dist':>10} {'real?':>6}")
for n in args.range:
    for sign in (1, -1):
        m = sign * n
        if abs(m) <= 2:
            continue
        best = None
        for c in discrete_faithful(m):
            Z = twisted_alexander(c.point).Z
            target = -c.eps * complex(1.5, 0.5 if Z.imag * -c.eps >= 0 else -0.5)
            d = abs(Z - target)
            if best is None or d < best[0]:
                best = (d, c.eps, Z)
        if best:
            d, eps, Z = best
            print(f"{m:>4} {eps:>4} {Z.real:>12.6f} {abs(Z.imag):>12.6f} {d:>10.2e} {'yes' if abs(Z.imag) < 1e-9 else 'no':>6}")
