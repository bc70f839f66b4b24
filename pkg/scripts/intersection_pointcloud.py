"""Write the special-point cloud of one bundle to CSV for plotting."""

import argparse
import sys

from bundlechar.report import point_cloud_csv, report

ap = argparse.ArgumentParser()
ap.add_argument("-n", type=int, default=7)
ap.add_argument("--out", default="-")
args = ap.parse_args()

text = point_cloud_csv(report(args.n).point_cloud())
if args.out == "-":
    sys.stdout.write(text)
else:
    with open(args.out, "w") as fh:
        fh.write(text)
