#!/usr/bin/env python3
"""Kernel scans behind the three figures: K_{5,5}, K_{7,3} and K^1 for (5.2, 11.2).

Writes CSV data and SVG plots to --out-dir (default ./figures).
"""

import argparse
import logging
import os
import time

from dedekind_kernels.dedekind import DedekindSumSpec
from dedekind_kernels.formats import ScanTable, to_csv, to_svg
from dedekind_kernels.kernel import all_pair_specs, scan_kernel

# (name, q1, q2, pair or None for the intersection, subgroup)
FIGURES = [
    ("fig1a_k55", 5, 5, None, "gamma0"),
    ("fig1b_k73", 7, 3, None, "gamma0"),
    ("fig3_k1_5.2_11.2", 5, 11, ("5.2", "11.2"), "gamma1"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    os.makedirs(args.out_dir, exist_ok=True)
    for name, q1, q2, pair, subgroup in FIGURES:
        t0 = time.perf_counter()
        specs = DedekindSumSpec.from_labels(*pair) if pair else all_pair_specs(q1, q2)
        c_max = 1100 if pair else 10 * q1 * q2
        res = scan_kernel(specs, c_max, subgroup, args.threads)
        table = ScanTable.from_result(res)
        for ext, render in (("csv", to_csv), ("svg", to_svg)):
            with open(os.path.join(args.out_dir, f"{name}.{ext}"), "w") as fh:
                fh.write(render(table))
        off = sorted((c, a) for a, c in res.point_set() if a not in (1, c - 1))
        logging.info("%s: %d points (%d off the a = +-1 lines), %.1fs", name, len(res.points), len(off),
                     time.perf_counter() - t0)
        if off:
            logging.info("  first off-line points: %s", off[:6])


if __name__ == "__main__":
    main()
