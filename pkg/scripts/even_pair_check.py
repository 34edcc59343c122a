#!/usr/bin/env python3
"""Does the even quadratic pair mod 5 vanish at (49, 100) and (51, 100)?

Answers with the fast evaluator and with the term-by-term oracle from the
test suite, then lists the even-pair zeros that no predicate explains.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from dedekind_kernels.dedekind import DedekindSumSpec, dedekind_sum  # noqa: E402
from dedekind_kernels.kernel import verify_prediction_soundness  # noqa: E402
from oracles import naive_sum_exact  # noqa: E402


def main():
    spec = DedekindSumSpec.from_labels("5.4", "5.4")
    for a in (49, 51):
        fast = dedekind_sum(spec, a, 100)
        slow = naive_sum_exact(spec.chi1, spec.chi2, a, 100)
        print(f"S_{spec.label}({a}, 100) = {fast}   oracle: {slow}")
    rep = verify_prediction_soundness(spec, 250, strict=False)
    print(f"c <= 250: {rep.scanned} zeros, {rep.predicted} predicted, breaches {rep.breaches}")
    print(f"unexplained zeros ({len(rep.unexplained)}): {rep.unexplained[:20]}")


if __name__ == "__main__":
    main()
