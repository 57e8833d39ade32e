"""Command-line interface: ``hlab <command> [options]``.

Every command writes one JSON document (or CSV for ``hurwitz --format csv``)
to stdout, or to ``--out FILE``.  Exit status: 0 on success, 1 when a
``verify`` suite finds failures, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import cache
from .characters import character_table
from .coupling import coupling_char, coupling_string
from .errors import HlabError
from .expansion import (
    cancellation_check,
    concentration_scan,
    large_N_trend,
    phi_coefficients,
    stable_critical_check,
    trend_spectra,
)
from .hurwitz import (
    connected_table,
    connected_walk_count_char,
    disconnected_table,
    large_genus_ratio,
    radius_trend,
    sorting_inequalities,
    walk_count_brute,
    walk_count_char,
)
from .montecarlo import estimate_integral
from .partitions import Partition, as_partition, enumerate_partitions


class UsageError(Exception):
    pass


def fmt_partition(p: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def fmt_rational(x) -> str:
    return str(Fraction(x))


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}") from exc


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected RE,IM but got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageError(f"bad complex number {text!r}") from exc


def parse_complex_list(text: str) -> list[complex]:
    # entries separated by ';', each "re" or "re,im"
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        out.append(parse_complex(item) if "," in item else complex(float(item)))
    return out


# -- payload builders (these are what the cache stores) ---------------------


def chars_payload(d: int) -> dict:
    table = character_table(d)
    return {
        "d": d,
        "partitions": [fmt_partition(p) for p in table.partitions],
        "chi": [[str(v) for v in row] for row in table.chi],
    }


def hurwitz_payload(mode: int, connected: bool, d_max: int, genus_max: int) -> dict:
    table = (connected_table if connected else disconnected_table)(mode, d_max, genus_max)
    rows = []
    ones = Partition.ones
    for d in range(1, d_max + 1):
        parts = enumerate_partitions(d)
        alphas = parts if mode >= 1 else [ones(d)]
        for g in table.genus_range(d):
            for a in alphas:
                betas = parts if mode == 2 else [ones(d)]
                for b in betas:
                    rows.append([d, g, fmt_partition(a), fmt_partition(b), str(table.get(d, g, a, b))])
    return {
        "mode": mode,
        "connected": connected,
        "d_max": d_max,
        "genus_max": genus_max,
        "columns": ["d", "g", "alpha", "beta", "value"],
        "entries": rows,
    }


def hurwitz_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(payload["columns"])
    writer.writerows(payload["entries"])
    return buf.getvalue()


# -- verification suites ----------------------------------------------------


def suite_oracle(dmax: int, rmax: int = 6) -> list[dict]:
    failures = []
    for d in range(1, min(dmax, 5) + 1):
        parts = enumerate_partitions(d)
        for flavor in ("monotone", "classical"):
            for r in range(rmax + 1):
                for a in parts:
                    for b in parts:
                        pairs = [
                            ("disconnected", walk_count_char(a, b, r, flavor), walk_count_brute(a, b, r, flavor)),
                            (
                                "connected",
                                connected_walk_count_char(a, b, r, flavor),
                                walk_count_brute(a, b, r, flavor, connected=True),
                            ),
                        ]
                        for kind, x, y in pairs:
                            if x != y:
                                failures.append(
                                    {"check": "oracle", "kind": kind, "flavor": flavor, "alpha": fmt_partition(a),
                                     "beta": fmt_partition(b), "r": r, "char": str(x), "brute": str(y)}
                                )
    return failures


def suite_cancellation(dmax: int, gmax: int) -> list[dict]:
    failures = []
    for d in range(1, dmax + 1):
        for g in range(0, gmax + 1):
            if (d, g) == (1, 0):
                continue
            rep = cancellation_check(d, g)
            for a, s in rep.sums.items():
                if s:
                    failures.append({"check": "cancellation", "d": d, "g": g, "alpha": fmt_partition(a), "sum": str(s)})
    return failures


def suite_sorting(dmax: int, gmax: int) -> list[dict]:
    failures = []
    for d in range(1, dmax + 1):
        for connected, lo in ((True, 0), (False, -d + 1)):
            for g in range(lo, gmax + 1):
                rep = sorting_inequalities(d, g, connected)
                if not rep.vacuous and not rep.holds:
                    failures.append(
                        {"check": "sorting", "d": d, "g": g, "connected": connected, "sums": [str(x) for x in rep.sums]}
                    )
    return failures


def suite_stable(Nmax: int, kmax: int = 2) -> list[dict]:
    failures = []
    for N in range(1, Nmax + 1):
        for k in range(kmax + 1):
            for d in range(1, N + 1):
                c = stable_critical_check(N, k, d)
                if not c.holds:
                    failures.append(
                        {"check": "stable", "N": N, "k": k, "d": d, "phi": fmt_rational(c.phi),
                         "truncated": fmt_rational(c.truncated), "tail_bound": fmt_rational(c.tail_bound)}
                    )
            for p in phi_coefficients(2, N, k, max(1, N * N // 4)):
                if p.value != 0:
                    failures.append({"check": "phi-ones", "N": N, "k": k, "d": p.d, "value": fmt_rational(p.value)})
    return failures


def suite_concentration(Nmax: int) -> list[dict]:
    failures = []
    # from N = 3 on, so the window d <= N^2/4 contains more than d = 1
    Ns = range(3, max(3, Nmax) + 1)
    rep = concentration_scan(0, 0, Ns)
    if not rep.non_increasing:
        failures.append({"check": "concentration", "m": 0, "scaled": [fmt_rational(x) for x in rep.scaled]})
    rep = concentration_scan(2, 0, Ns)
    if any(x != 0 for x in rep.scaled):
        failures.append({"check": "concentration", "m": 2, "scaled": [fmt_rational(x) for x in rep.scaled]})
    return failures


SUITES = ("oracle", "cancellation", "sorting", "stable", "concentration")


def run_suite(name: str, dmax: int, gmax: int, Nmax: int) -> list[dict]:
    if name == "oracle":
        return suite_oracle(dmax)
    if name == "cancellation":
        return suite_cancellation(dmax, gmax)
    if name == "sorting":
        return suite_sorting(dmax, gmax)
    if name == "stable":
        return suite_stable(Nmax)
    if name == "concentration":
        return suite_concentration(Nmax)
    raise UsageError(f"unknown suite {name!r}")


# -- commands ---------------------------------------------------------------


def cmd_chars(args) -> tuple[str, int]:
    payload = cache.cached("chars", f"d{args.d}", lambda: chars_payload(args.d))
    return json.dumps(payload, indent=2), 0


def cmd_hurwitz(args) -> tuple[str, int]:
    kind = "hurwitz-conn" if args.connected else "hurwitz-disc"
    key = f"m{args.mode}-d{args.dmax}-g{args.gmax}"
    payload = cache.cached(kind, key, lambda: hurwitz_payload(args.mode, args.connected, args.dmax, args.gmax))
    if args.format == "csv":
        return hurwitz_csv(payload), 0
    return json.dumps(payload, indent=2), 0


def cmd_coupling(args) -> tuple[str, int]:
    spectra = []
    if args.m >= 1:
        spectra.append(parse_rationals(args.spectrum_a) if args.spectrum_a else [Fraction(1)] * args.N)
    if args.m == 2:
        spectra.append(parse_rationals(args.spectrum_b) if args.spectrum_b else [Fraction(1)] * args.N)
    try:
        char = coupling_char(args.m, args.d, args.N, spectra)
        string = coupling_string(args.m, args.d, args.N, spectra)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = {
        "m": args.m,
        "N": args.N,
        "d": args.d,
        "spectra": [[fmt_rational(x) for x in s] for s in char.spectra],
        "value": fmt_rational(char.value),
        "string_form": fmt_rational(string.value),
        "forms_agree": char.value == string.value,
    }
    return json.dumps(out, indent=2), 0


def cmd_verify(args) -> tuple[str, int]:
    names = SUITES if args.suite == "all" else (args.suite,)
    failures = []
    for name in names:
        failures.extend(run_suite(name, args.dmax, args.gmax, args.Nmax))
    out = {"suite": args.suite, "dmax": args.dmax, "gmax": args.gmax, "Nmax": args.Nmax,
           "passed": not failures, "failures": failures}
    return json.dumps(out, indent=2), 0 if not failures else 1


def cmd_scan(args) -> tuple[str, int]:
    Ns = range(args.Nmin, args.Nmax + 1)
    if args.kind == "concentration":
        rep = concentration_scan(args.m, args.k, Ns, Fraction(args.xi), policy=args.policy)
        out = {
            "kind": "concentration", "m": args.m, "k": args.k, "xi": args.xi, "policy": args.policy,
            "rows": [{"N": N, "d_max": dm, "s": fmt_rational(s), "scaled": fmt_rational(sc), "scaled_float": float(sc)}
                     for N, dm, s, sc in rep.rows],
            "non_increasing": rep.non_increasing,
        }
    elif args.kind == "largeN":
        sp = trend_spectra(args.m, args.seed) if args.m else None
        rep = large_N_trend(args.m, args.d, args.k, Ns, sp)
        out = {
            "kind": "largeN", "m": args.m, "d": args.d, "k": args.k, "seed": args.seed,
            "rows": [{"N": N, "remainder": fmt_rational(R), "scaled_float": float(sc)} for N, R, sc in rep.rows],
            "strictly_decreasing": rep.strictly_decreasing,
            "identically_zero": rep.identically_zero,
        }
    else:
        ratios = [{"g": g, "ratio": fmt_rational(large_genus_ratio(args.d, g)),
                   "ratio_float": float(large_genus_ratio(args.d, g))} for g in range(0, args.gmax + 1)]
        out = {"kind": "asymptotics", "d": args.d, "ratios": ratios,
               "radius_trend": radius_trend(args.dmax), "target": 13.5}
    return json.dumps(out, indent=2), 0


def cmd_mc(args) -> tuple[str, int]:
    z = parse_complex(args.z)
    a = parse_complex_list(args.spectrum_a) if args.spectrum_a else [1 + 0j] * args.N
    b = parse_complex_list(args.spectrum_b) if args.spectrum_b else [1 + 0j] * args.N
    try:
        rep = estimate_integral(args.m, args.N, z, [a, b], args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return json.dumps(rep.to_json(), indent=2), 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hlab", description="Exact monotone Hurwitz and unitary-integral computations.")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("chars", help="character table of S(d)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("hurwitz", help="monotone Hurwitz numbers")
    p.add_argument("--mode", type=int, choices=(0, 1, 2), required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("coupling", help="exact coupling coefficient")
    p.add_argument("--m", type=int, choices=(0, 1, 2), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--spectrum-a", dest="spectrum_a")
    p.add_argument("--spectrum-b", dest="spectrum_b")
    p.set_defaults(func=cmd_coupling)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--dmax", type=int, default=5)
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--Nmax", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="numerical trend scans")
    p.add_argument("--kind", choices=("concentration", "largeN", "asymptotics"), required=True)
    p.add_argument("--m", type=int, choices=(0, 1, 2), default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--Nmin", type=int, default=2)
    p.add_argument("--Nmax", type=int, default=5)
    p.add_argument("--xi", default="1/100")
    p.add_argument("--policy", choices=("ones", "l1"), default="ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gmax", type=int, default=30)
    p.add_argument("--dmax", type=int, default=10)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("mc", help="Monte Carlo Haar integration")
    p.add_argument("--m", type=int, choices=(1, 2), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--z", required=True, help="RE,IM")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spectrum-a", dest="spectrum_a", help="entries 're' or 're,im' separated by ';'")
    p.add_argument("--spectrum-b", dest="spectrum_b")
    p.set_defaults(func=cmd_mc)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        text, code = args.func(args)
    except UsageError as exc:
        print(f"hlab: usage error: {exc}", file=sys.stderr)
        return 2
    except HlabError as exc:
        print(f"hlab: {exc}", file=sys.stderr)
        return 2
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
