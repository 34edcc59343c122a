"""``dedekind-kernels`` command line.

Exit codes: 0 success, 1 an exact identity failed, 2 bad input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .characters import enumerate_primitive, parse_label
from .dedekind import DedekindSumSpec, IdentityViolation, dedekind_sum
from .formats import ScanTable, read_table, to_csv, to_json, to_svg
from .kernel import all_pair_specs, galois_orbits, scan_kernel, scan_with_orbit_dedup
from .modular import UnimodularMatrix
from .verify import CHECKS, run_verify

log = logging.getLogger("dedekind_kernels")

THREADS_ENV = "DEDEKIND_THREADS"
COMMANDS = ("chars", "sum", "scan", "orbits", "verify", "plot")

EXIT_OK, EXIT_IDENTITY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    q1: list[int] = field(default_factory=list)
    q2: list[int] = field(default_factory=list)
    chi1: str | None = None
    chi2: str | None = None
    gamma: str | None = None
    a: int | None = None
    c: int | None = None
    c_max: int | None = None
    subgroup: str | None = None
    format: str | None = None
    out: str | None = None
    input: str | None = None
    seed: int = 0
    threads: int | str | None = None
    samples: int = 200
    only: list[str] = field(default_factory=list)

    @property
    def moduli(self) -> tuple[int, int]:
        if len(self.q1) > 1 or len(self.q2) > 1:
            raise InputError(f"{self.command} takes a single (q1, q2)")
        q1 = self.q1[0] if self.q1 else None
        q2 = self.q2[0] if self.q2 else None
        # moduli can be read off full labels
        if q1 is None and self.chi1 and "." in self.chi1:
            q1 = int(self.chi1.split(".")[0])
        if q2 is None and self.chi2 and "." in self.chi2:
            q2 = int(self.chi2.split(".")[0])
        if q1 is None or q2 is None:
            raise InputError("q1 and q2 are required")
        return q1, q2

    def resolved_c_max(self) -> int:
        q1, q2 = self.moduli
        return self.c_max if self.c_max is not None else 10 * q1 * q2

    def resolved_threads(self) -> int:
        raw = self.threads if self.threads is not None else os.environ.get(THREADS_ENV, 1)
        if raw == "auto":
            return os.cpu_count() or 1
        try:
            n = int(raw)
        except (TypeError, ValueError):
            raise InputError(f"threads must be an integer or 'auto', got {raw!r}") from None
        if n < 1:
            raise InputError("threads must be positive")
        return n

    def specs(self) -> list[DedekindSumSpec]:
        """The single pair named by chi1/chi2, else every primitive pair."""
        q1, q2 = self.moduli
        if self.chi1 is None and self.chi2 is None:
            specs = all_pair_specs(q1, q2)
            if not specs:
                raise InputError(f"no primitive pairs with q1={q1}, q2={q2}")
            return specs
        if self.chi1 is None or self.chi2 is None:
            raise InputError("give both chi1 and chi2, or neither")
        return [DedekindSumSpec(parse_label(self.chi1, q1), parse_label(self.chi2, q2))]


def format_value(x) -> str:
    x = x.canonicalize_order()
    if x.is_zero():
        return "0"
    z = complex(x)
    re_, im = (0.0 if abs(v) < 1e-13 else v for v in (z.real, z.imag))
    sign = "-" if im < 0 else "+"
    return f"{x} ({re_:.12g} {sign} {abs(im):.12g}i)"


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# -- commands --------------------------------------------------------------

def cmd_chars(cfg: RunConfig) -> int:
    moduli = sorted(set(cfg.q1 + cfg.q2))
    if not moduli:
        raise InputError("give at least one modulus with --q1/--q2")
    rows = []
    for q in moduli:
        for chi in enumerate_primitive(q):
            rows.append({"label": chi.label, "order": chi.order, "parity": chi.parity,
                         "conductor": chi.conductor, "exponents": list(chi.exponents)})
    if cfg.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", cfg.out)
    else:
        lines = [f"{r['label']}\torder={r['order']}\tparity={r['parity']:+d}" for r in rows]
        _emit("\n".join(lines) + ("\n" if lines else ""), cfg.out)
    return EXIT_OK


def cmd_sum(cfg: RunConfig) -> int:
    specs = cfg.specs()
    if len(specs) != 1:
        raise InputError("sum needs chi1 and chi2")
    spec = specs[0]
    if cfg.gamma is not None:
        g = UnimodularMatrix.parse(cfg.gamma)
        a, c = g.a, g.c
    elif cfg.a is not None and cfg.c is not None:
        a, c = cfg.a, cfg.c
    else:
        raise InputError("sum needs --gamma or both --a and --c")
    if c % spec.Q:
        raise InputError(f"c not divisible by q1*q2 (c={c}, q1*q2={spec.Q})")
    _emit(format_value(dedekind_sum(spec, a, c)) + "\n", cfg.out)
    return EXIT_OK


def _scan_table(cfg: RunConfig, default_subgroup: str) -> ScanTable:
    if cfg.input:
        return read_table(cfg.input)
    specs = cfg.specs()
    res = scan_kernel(specs, cfg.resolved_c_max(), cfg.subgroup or default_subgroup,
                      cfg.resolved_threads())
    return ScanTable.from_result(res, cfg.seed)


def cmd_scan(cfg: RunConfig) -> int:
    table = _scan_table(cfg, "gamma0")
    fmt = cfg.format or ("json" if (cfg.out or "").endswith(".json") else "csv")
    if fmt == "csv":
        _emit(to_csv(table), cfg.out)
    elif fmt == "json":
        _emit(to_json(table), cfg.out)
    elif fmt == "svg":
        _emit(to_svg(table), cfg.out)
    else:
        raise InputError(f"unknown format {fmt!r}")
    return EXIT_OK


def cmd_plot(cfg: RunConfig) -> int:
    _emit(to_svg(_scan_table(cfg, "gamma1")), cfg.out)
    return EXIT_OK


def cmd_orbits(cfg: RunConfig) -> int:
    q1, q2 = cfg.moduli
    if cfg.c_max is None:
        doc = [{"representative": o.representative.label, "size": len(o),
                "members": [m.label for m in o.members]} for o in galois_orbits(q1, q2)]
    else:
        doc = []
        for res in scan_with_orbit_dedup(q1, q2, cfg.c_max, cfg.subgroup or "gamma1", cfg.seed,
                                         cfg.resolved_threads()):
            meta = res.orbit
            doc.append({
                "representative": meta["representative"],
                "size": len(meta["members"]),
                "members": meta["members"],
                "audited": meta["audited"],
                "audit_points": [list(p) for p in meta["audit_points"]],
                "points": [[p.a, p.c] for p in sorted(res.points, key=lambda p: (p.c, p.a))],
            })
    _emit(json.dumps(doc, indent=2) + "\n", cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    q1s = cfg.q1 or [3, 5]
    q2s = cfg.q2 or q1s
    grid = [q for q in itertools.product(q1s, q2s) if all_pair_specs(*q)]
    report = run_verify(grid, cfg.samples, cfg.seed, cfg.only or None)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", cfg.out)
    bad = report.first_failure()
    if bad is not None:
        print(f"identity failure: {bad.check} at q={bad.moduli}: {bad.witness}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


HANDLERS = {
    "chars": cmd_chars,
    "sum": cmd_sum,
    "scan": cmd_scan,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


# -- argument parsing ------------------------------------------------------

def _threads(text: str):
    return text if text == "auto" else int(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dedekind-kernels", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, multi=False):
        nargs = "+" if multi else None
        sp.add_argument("--q1", type=int, nargs=nargs)
        sp.add_argument("--q2", type=int, nargs=nargs)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", "-o")
        return sp

    def chars_opts(sp):
        sp.add_argument("--chi1")
        sp.add_argument("--chi2")

    def scan_opts(sp):
        chars_opts(sp)
        sp.add_argument("--c-max", type=int)
        sp.add_argument("--subgroup", choices=("gamma0", "gamma1"))
        sp.add_argument("--threads", type=_threads)

    sp = common(sub.add_parser("chars", help="list primitive characters"), multi=True)
    sp.add_argument("--format", choices=("text", "json"))

    sp = common(sub.add_parser("sum", help="evaluate one Dedekind sum"))
    chars_opts(sp)
    sp.add_argument("--gamma", help='matrix "a,b,c,d"')
    sp.add_argument("--a", type=int)
    sp.add_argument("--c", type=int)

    sp = common(sub.add_parser("scan", help="scan a kernel"))
    scan_opts(sp)
    sp.add_argument("--format", choices=("csv", "json", "svg"))

    sp = common(sub.add_parser("orbits", help="Galois orbits, optionally with deduplicated scans"))
    scan_opts(sp)

    sp = common(sub.add_parser("verify", help="run the identity suite"), multi=True)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--only", action="append", choices=CHECKS, default=[])

    sp = common(sub.add_parser("plot", help="SVG scatter of a kernel"))
    scan_opts(sp)
    sp.add_argument("--input", "-i", help="CSV or JSON scan to plot instead of scanning")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    def as_list(v):
        if v is None:
            return []
        return list(v) if isinstance(v, list) else [v]

    return RunConfig(
        command=ns.command,
        q1=as_list(ns.q1),
        q2=as_list(ns.q2),
        chi1=getattr(ns, "chi1", None),
        chi2=getattr(ns, "chi2", None),
        gamma=getattr(ns, "gamma", None),
        a=getattr(ns, "a", None),
        c=getattr(ns, "c", None),
        c_max=getattr(ns, "c_max", None),
        subgroup=getattr(ns, "subgroup", None),
        format=getattr(ns, "format", None),
        out=ns.out,
        input=getattr(ns, "input", None),
        seed=ns.seed,
        threads=getattr(ns, "threads", None),
        samples=getattr(ns, "samples", 200),
        only=getattr(ns, "only", []) or [],
    )


def run(cfg: RunConfig) -> int:
    try:
        return HANDLERS[cfg.command](cfg)
    except IdentityViolation as e:
        print(f"identity failure: {e} witness={e.witness}", file=sys.stderr)
        return EXIT_IDENTITY
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
