"""Print genus, dilatation and the d = 2g + alpha check for a range of n."""

import argparse

from bundlechar.arithmetic import genus_relation
from bundlechar.cli import parse_range

ap = argparse.ArgumentParser()
ap.add_argument("--range", type=parse_range, default=range(-20, 21))
args = ap.parse_args()

print(f"{'n':>4} {'dilatation':>12} {'d':>3} {'g':>3} {'alpha':>5}  ok")
for n in args.range:
    if abs(n) <= 2:
        continue
    g = genus_relation(n)
    print(f"{n:>4} {g.dilatation:>12.7f} {g.d:>3} {g.g:>3} {g.alpha:>5}  {'yes' if g.holds else 'NO'}")
