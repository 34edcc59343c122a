"""Kernel scans, predicted kernel points, commutator experiments, Galois orbits."""

from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .characters import enumerate_pairs
from .cyclotomic import euler_phi
from .dedekind import DedekindSumSpec, IdentityViolation, dedekind_sum_is_zero, dedekind_sum_matrix
from .modular import (
    UnimodularMatrix,
    commutator,
    random_principal,
    subgroup_membership,
)

log = logging.getLogger(__name__)

__all__ = [
    "PREDICATES",
    "KernelPoint",
    "KernelScanResult",
    "all_pair_specs",
    "scan_domain",
    "scan_kernel",
    "predicted_kernel",
    "SoundnessReport",
    "verify_prediction_soundness",
    "CommutatorReport",
    "commutator_in_kernel_experiment",
    "Orbit",
    "galois_orbits",
    "scan_with_orbit_dedup",
    "nonvanishing_witness",
]

PREDICATES = ("a-equals-1", "reflection", "unit-square", "minus-one-square", "scaling-family")
SUBGROUPS = ("gamma0", "gamma1")


@dataclass(frozen=True)
class KernelPoint:
    a: int
    c: int
    in_gamma1: bool
    predicted_by: str | None = None

    @property
    def key(self) -> tuple[int, int]:
        return self.c, self.a


@dataclass
class KernelScanResult:
    q1: int
    q2: int
    specs: tuple[DedekindSumSpec, ...]
    c_max: int
    subgroup: str
    points: list[KernelPoint]
    orbit: dict = field(default_factory=dict)

    @property
    def Q(self) -> int:
        return self.q1 * self.q2

    @property
    def is_intersection(self) -> bool:
        return len(self.specs) > 1 and set(self.specs) == set(all_pair_specs(self.q1, self.q2))

    @property
    def chi_labels(self) -> tuple[str, str]:
        if self.is_intersection:
            return "*", "*"
        return (
            "|".join(s.chi1.label for s in self.specs),
            "|".join(s.chi2.label for s in self.specs),
        )

    def point_set(self) -> set[tuple[int, int]]:
        return {(p.a, p.c) for p in self.points}


def all_pair_specs(q1: int, q2: int) -> list[DedekindSumSpec]:
    return [DedekindSumSpec(c1, c2) for c1, c2 in enumerate_pairs(q1, q2)]


def _as_specs(spec_set) -> tuple[DedekindSumSpec, ...]:
    if isinstance(spec_set, DedekindSumSpec):
        return (spec_set,)
    specs = tuple(spec_set)
    if not specs:
        raise ValueError("empty character-pair set")
    Qs = {s.Q for s in specs}
    moduli = {(s.q1, s.q2) for s in specs}
    if len(Qs) != 1 or len(moduli) != 1:
        raise ValueError("all pairs in a scan must share (q1, q2)")
    return specs


def scan_domain(Q: int, c_max: int, subgroup: str = "gamma0") -> list[tuple[int, list[int]]]:
    """(c, admissible a values) for Q | c <= c_max, 0 < a < c, gcd(a, c) = 1."""
    if subgroup not in SUBGROUPS:
        raise ValueError(f"subgroup must be one of {SUBGROUPS}")
    out = []
    for c in range(Q, c_max + 1, Q):
        if subgroup == "gamma1":
            a_vals = [a for a in range(1, c, Q) if math.gcd(a, c) == 1]
        else:
            a_vals = [a for a in range(1, c) if math.gcd(a, c) == 1]
        out.append((c, a_vals))
    return out


def _psi_sign(spec: DedekindSumSpec, a: int) -> int | None:
    """psi(a) as +1 / -1 when it is one of those, otherwise None."""
    psi = spec.psi
    e = psi.exponent(a)
    if e == 0:
        return 1
    if 2 * e == psi.order:
        return -1
    return None


def _canonical_side(a: int, c: int, Q: int) -> bool:
    """Which member of the reflection pair {a, c - a} carries the base tag."""
    b = c - a
    a1, b1 = a % Q == 1 % Q, b % Q == 1 % Q
    if a1 != b1:
        return a1
    return a <= b


def _tagger(specs: Sequence[DedekindSumSpec], Q: int, zeros: dict[int, set[int]],
            seed_is_zero: Callable[[int, int], bool]):
    def tag(a: int, c: int) -> str | None:
        if a == 1:
            return "a-equals-1"
        if not _canonical_side(a, c, Q) and (c - a) in zeros.get(c, ()):
            return "reflection"
        if a * a % c == 1 and all(_psi_sign(s, a) == -s.chi2.parity for s in specs):
            return "unit-square"
        if (a * a + 1) % c == 0 and all(_psi_sign(s, a) == 1 for s in specs):
            return "minus-one-square"
        d = 1
        while d * d * Q <= c:
            base = d * d * Q
            if c % base == 0 and c // base >= 2:
                k = c // base
                step = k * d * Q
                if (a - 1) % step == 0:
                    n = ((a - 1) // step) % d
                    if seed_is_zero((1 + n * d * Q) % base, base):
                        return "scaling-family"
            d += 1
        return None

    return tag


def _ordered_by_cost(specs: Iterable[DedekindSumSpec]) -> list[DedekindSumSpec]:
    return sorted(specs, key=lambda s: (s.value_order, s.chi1.index, s.chi2.index))


def _zeros_for_c(specs: Sequence[DedekindSumSpec], c: int, a_vals: Sequence[int]) -> list[int]:
    return [a for a in a_vals if all(dedekind_sum_is_zero(s, a, c) for s in specs)]


def _run_scan(specs, domain, threads: int) -> dict[int, list[int]]:
    if threads <= 1 or len(domain) <= 1:
        return {c: _zeros_for_c(specs, c, a_vals) for c, a_vals in domain}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda item: _zeros_for_c(specs, *item), domain))
    return {c: zs for (c, _), zs in zip(domain, results)}


def scan_kernel(spec_set, c_max: int, subgroup: str = "gamma0", threads: int = 1) -> KernelScanResult:
    """All (a, c) in the scan domain where every Dedekind sum in ``spec_set`` vanishes."""
    specs = _as_specs(spec_set)
    Q = specs[0].Q
    domain = scan_domain(Q, c_max, subgroup)
    zeros_list = _run_scan(_ordered_by_cost(specs), domain, threads)
    zeros = {c: set(v) for c, v in zeros_list.items()}

    def seed_is_zero(a, c):
        if c in zeros:
            return a in zeros[c]
        return all(dedekind_sum_is_zero(s, a, c) for s in specs)

    tag = _tagger(specs, Q, zeros, seed_is_zero)
    points = [
        KernelPoint(a, c, a % Q == 1 % Q, tag(a, c))
        for c in sorted(zeros_list)
        for a in sorted(zeros_list[c])
    ]
    return KernelScanResult(specs[0].q1, specs[0].q2, specs, c_max, subgroup, points)


def predicted_kernel(spec: DedekindSumSpec, c_max: int, subgroup: str = "gamma0") -> list[KernelPoint]:
    """Kernel points forced by the vanishing results, without a full scan.

    Scaling families need a confirmed zero of shape (1 + ndQ, d^2 Q) as seed;
    those few seed points are evaluated exactly.
    """
    specs = (spec,)
    Q = spec.Q
    pred: dict[int, set[int]] = {}
    for c, a_vals in scan_domain(Q, c_max, "gamma0"):
        s = pred.setdefault(c, set())
        s.add(1)
        for a in a_vals:
            if a * a % c == 1 and _psi_sign(spec, a) == -spec.chi2.parity:
                s.add(a)
            elif (a * a + 1) % c == 0 and _psi_sign(spec, a) == 1:
                s.add(a)
    seeds: dict[tuple[int, int], bool] = {}

    def seed_is_zero(a, c):
        if (a, c) not in seeds:
            seeds[(a, c)] = dedekind_sum_is_zero(spec, a, c)
        return seeds[(a, c)]

    d = 2
    while d * d * Q <= c_max:
        base = d * d * Q
        for n in range(d):
            a_s = (1 + n * d * Q) % base
            if math.gcd(a_s, base) != 1 or not seed_is_zero(a_s, base):
                continue
            k = 2
            while k * base <= c_max:
                pred.setdefault(k * base, set()).add((1 + k * n * d * Q) % (k * base))
                k += 1
        d += 1
    for c, s in pred.items():
        s.update({c - a for a in s})
    tag = _tagger(specs, Q, pred, seed_is_zero)
    points = []
    for c in sorted(pred):
        for a in sorted(pred[c]):
            if subgroup == "gamma1" and a % Q != 1 % Q:
                continue
            points.append(KernelPoint(a, c, a % Q == 1 % Q, tag(a, c)))
    return points


@dataclass
class SoundnessReport:
    spec: DedekindSumSpec
    c_max: int
    predicted: int
    scanned: int
    breaches: list[tuple[int, int]]
    unexplained: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.breaches


def verify_prediction_soundness(spec: DedekindSumSpec, c_max: int, threads: int = 1,
                                strict: bool = True) -> SoundnessReport:
    """Check predicted points are zeros; list scan zeros that no predicate explains."""
    scan = scan_kernel(spec, c_max, "gamma0", threads)
    pred = predicted_kernel(spec, c_max)
    scanned = scan.point_set()
    predicted = {(p.a, p.c) for p in pred}
    breaches = sorted(predicted - scanned, key=lambda t: (t[1], t[0]))
    unexplained = sorted(scanned - predicted, key=lambda t: (t[1], t[0]))
    report = SoundnessReport(spec, c_max, len(predicted), len(scanned), breaches, unexplained)
    if strict and breaches:
        a, c = breaches[0]
        raise IdentityViolation(
            f"predicted kernel point ({a},{c}) is not a zero of S_{spec.label}",
            {"pair": spec.label, "a": a, "c": c},
        )
    return report


@dataclass
class CommutatorReport:
    q1: int
    q2: int
    samples: list[tuple[UnimodularMatrix, UnimodularMatrix, UnimodularMatrix]]
    in_principal_square: int
    zero_for_all_pairs: int
    failures: list[dict]
    witnesses: list[dict]

    @property
    def ok(self) -> bool:
        return (
            not self.failures
            and self.in_principal_square == len(self.samples)
            and self.zero_for_all_pairs == len(self.samples)
            and any(w["in_kernel"] and not w["in_gamma_Q2"] for w in self.witnesses)
        )


def commutator_in_kernel_experiment(q1: int, q2: int, samples: int, seed: int = 0,
                                    max_lower_left: int = 2_000_000) -> CommutatorReport:
    """Commutators of random elements of Gamma(Q) against Gamma(Q^2) and every kernel.

    Pairs that commute and commutators whose lower-left entry exceeds
    ``max_lower_left`` are redrawn; the evaluation cost is linear in that entry.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    Q = q1 * q2
    rng = random.Random(seed)
    specs = all_pair_specs(q1, q2)
    ident = UnimodularMatrix.identity()
    drawn = []
    while len(drawn) < samples:
        x = random_principal(rng, Q, length=2)
        y = random_principal(rng, Q, length=2)
        k = commutator(x, y)
        if k == ident or abs(k.c) > max_lower_left:
            continue
        drawn.append((x, y, k))
    in_sq = zero = 0
    failures = []
    for x, y, k in drawn:
        member = subgroup_membership(k, Q * Q).gamma
        in_sq += member
        bad = [s.label for s in specs if not dedekind_sum_matrix(s, k).is_zero()]
        zero += not bad
        if bad or not member:
            failures.append({"x": str(x), "y": str(y), "commutator": str(k),
                             "in_gamma_Q2": member, "nonzero_pairs": bad})
    witnesses = []
    for kk in (1, 2):
        if (kk * Q) % (Q * Q) == 0:
            continue
        w = UnimodularMatrix(1, 0, kk * Q, 1)
        witnesses.append({
            "matrix": str(w),
            "in_gamma1": subgroup_membership(w, Q).gamma1,
            "in_kernel": all(dedekind_sum_matrix(s, w).is_zero() for s in specs),
            "in_gamma_Q2": subgroup_membership(w, Q * Q).gamma,
        })
    return CommutatorReport(q1, q2, drawn, in_sq, zero, failures, witnesses)


@dataclass(frozen=True)
class Orbit:
    representative: DedekindSumSpec
    members: tuple[DedekindSumSpec, ...]

    def __len__(self):
        return len(self.members)


def _spec_key(s: DedekindSumSpec) -> tuple[int, int]:
    return s.chi1.index, s.chi2.index


def galois_orbits(q1: int, q2: int) -> list[Orbit]:
    """Orbits of the primitive pairs under simultaneous sigma_k, k coprime to lcm(phi(q1), phi(q2))."""
    M = math.lcm(euler_phi(q1), euler_phi(q2))
    ks = [k for k in range(1, M + 1) if math.gcd(k, M) == 1]
    remaining = sorted(all_pair_specs(q1, q2), key=_spec_key)
    seen: set[DedekindSumSpec] = set()
    orbits = []
    for spec in remaining:
        if spec in seen:
            continue
        members = sorted({spec.galois(k) for k in ks}, key=_spec_key)
        seen.update(members)
        orbits.append(Orbit(members[0], tuple(members)))
    return orbits


def scan_with_orbit_dedup(q1: int, q2: int, c_max: int, subgroup: str = "gamma1", seed: int = 0,
                          threads: int = 1, audit_points: int = 10) -> list[KernelScanResult]:
    """Scan one representative per Galois orbit; audit one other member on sampled points."""
    rng = random.Random(seed)
    domain = [(a, c) for c, a_vals in scan_domain(q1 * q2, c_max, subgroup) for a in a_vals]
    results = []
    for orbit in galois_orbits(q1, q2):
        t0 = time.perf_counter()
        res = scan_kernel(orbit.representative, c_max, subgroup, threads)
        elapsed = time.perf_counter() - t0
        meta = {
            "representative": orbit.representative.label,
            "members": [m.label for m in orbit.members],
            "scan_seconds": elapsed,
            "audited": None,
            "audit_points": [],
        }
        others = [m for m in orbit.members if m != orbit.representative]
        if others and domain:
            audited = rng.choice(others)
            zeros = sorted(res.point_set(), key=lambda t: (t[1], t[0]))
            n_zero = min(len(zeros), audit_points // 2)
            sample = rng.sample(zeros, n_zero)
            chosen = set(sample)
            rest = [p for p in domain if p not in chosen]
            sample += rng.sample(rest, min(len(rest), audit_points - n_zero))
            kernel = res.point_set()
            for a, c in sample:
                if dedekind_sum_is_zero(audited, a, c) != ((a, c) in kernel):
                    raise IdentityViolation(
                        f"orbit audit mismatch at ({a},{c}) between {orbit.representative.label} "
                        f"and {audited.label}",
                        {"representative": orbit.representative.label, "audited": audited.label,
                         "a": a, "c": c},
                    )
            meta["audited"] = audited.label
            meta["audit_points"] = sorted(sample, key=lambda t: (t[1], t[0]))
        log.info("orbit %s: %d members, scan %.3fs (saves ~%dx)", orbit.representative.label,
                 len(orbit), elapsed, len(orbit))
        res.orbit = meta
        results.append(res)
    return results


def nonvanishing_witness(spec: DedekindSumSpec, c: int) -> int | None:
    """Smallest 0 < a < c, gcd(a, c) = 1, with S(a, c) != 0."""
    for a in range(1, c):
        if math.gcd(a, c) == 1 and not dedekind_sum_is_zero(spec, a, c):
            return a
    return None
