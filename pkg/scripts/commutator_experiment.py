#!/usr/bin/env python3
"""Commutators of Gamma(Q) elements land in Gamma(Q^2) and in every kernel."""

import argparse

from dedekind_kernels.kernel import commutator_in_kernel_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for q1, q2 in [(3, 3), (3, 5), (5, 5)]:
        rep = commutator_in_kernel_experiment(q1, q2, args.samples, args.seed)
        print(f"Q={q1 * q2}: {rep.in_principal_square}/{len(rep.samples)} in Gamma(Q^2), "
              f"{rep.zero_for_all_pairs}/{len(rep.samples)} zero for every pair, ok={rep.ok}")
        for w in rep.witnesses:
            print(f"   witness {w['matrix']}: in kernel {w['in_kernel']}, in Gamma(Q^2) {w['in_gamma_Q2']}")


if __name__ == "__main__":
    main()
