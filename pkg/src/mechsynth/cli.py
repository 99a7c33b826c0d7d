"""Command-line front end.

Exit codes: 0 accepted or succeeded, 1 mathematically rejected, 2 usage or
format error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence, TextIO

from .errors import InternalInvariantError, MechSynthError, ParseError
from .exactalg import CoefficientVector, format_rat, parse_rat, parse_rational_function
from .netmodel import admittance_matrix, driving_point, loads_netlist, to_netlist_dict
from .paramount3 import is_paramount, parse_matrix
from .resistive3 import Reject, necessity_sweep, theorem1

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(MechSynthError, ValueError):
    """Arguments that parse but make no sense together."""


class Output:
    """Collects records; prints JSON lines (structured) or aligned key/value text."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    def emit(self, record: dict[str, Any]) -> None:
        if self.fmt == "structured":
            self.stream.write(json.dumps(record, separators=(",", ":")) + "\n")
            return
        width = max((len(k) for k in record), default=0)
        for key, value in record.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            self.stream.write(f"{key.ljust(width)}  {value}\n")
        self.stream.write("\n")

    def text(self, line: str) -> None:
        self.stream.write(line + "\n")


def _rat_list(text: str, n: int, what: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"{what} needs {n} comma-separated rationals, got {text!r}")
    return [parse_rat(p) for p in parts]


def coefficient_vector(num: str, den: str) -> CoefficientVector:
    """From ``a3,a2,a1,a0`` and ``b4,b3,b2,b1``; a nonzero b4 is scaled to 1."""
    a = _rat_list(num, 4, "--num")
    b = _rat_list(den, 4, "--den")
    if b[0] not in (0, 1):
        if b[0] < 0:
            raise UsageError("b4 must be non-negative")
        a = [x / b[0] for x in a]
        b = [x / b[0] for x in b]
    return CoefficientVector.of(a, b[1:], beta4=int(b[0]))


def _seed(default: int = 0) -> int:
    raw = os.environ.get("MECHSYNTH_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"MECHSYNTH_SEED must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_paramount_check(args, out: Output) -> int:
    M = parse_matrix(args.matrix)
    ok = is_paramount(M)
    out.emit({"matrix": M.to_text(), "paramount": ok})
    return EXIT_OK if ok else EXIT_REJECT


def cmd_resistive3_synth(args, out: Output) -> int:
    M = parse_matrix(args.matrix)
    res = theorem1(M)
    if isinstance(res, Reject):
        out.emit({"matrix": M.to_text(), "result": "rejected", "reason": res.reason, "details": res.details})
        return EXIT_REJECT
    out.emit({"matrix": M.to_text(), **res.to_record()})
    return EXIT_OK


def _classify(cv: CoefficientVector, mode: str):
    from .oneport.arbitrary import classify_arbitrary_springs
    from .oneport.theorem5 import classify_theorem5
    from .oneport.theorem6 import Mode, classify_theorem6

    if cv.beta4 == 0:
        res = classify_theorem6(cv, Mode(mode))
        return res, (res.label() if res else None)
    res = classify_theorem5(cv)
    if res:
        return res, f"Theorem 5 {res.label()}"
    verdict = classify_arbitrary_springs(cv)
    return verdict, (verdict.label() if verdict else None)


def cmd_oneport_classify(args, out: Output) -> int:
    cv = coefficient_vector(args.num, args.den)
    res, label = _classify(cv, args.mode)
    if label is None:
        out.emit({"coefficients": str(cv), "result": "rejected", "reason": res.reason})
        return EXIT_REJECT
    record = {"coefficients": str(cv), "result": label}
    if hasattr(res, "lam"):
        record["lambda"] = format_rat(res.lam)
    out.emit(record)
    return EXIT_OK


def cmd_oneport_synth(args, out: Output) -> int:
    from .oneport.fig2 import synth_fig2
    from .oneport.foster import foster_synthesize
    from .oneport.theorem5 import Branch
    from .oneport.theorem6 import Theorem6Result, synth_fig3

    cv = coefficient_vector(args.num, args.den)
    res, label = _classify(cv, args.mode)
    if label is None or not isinstance(res, (Branch, Theorem6Result)):
        reason = getattr(res, "reason", None) or f"{label}: no at-most-three-springs realization"
        out.emit({"coefficients": str(cv), "result": "rejected", "reason": reason})
        return EXIT_REJECT
    if isinstance(res, Theorem6Result):
        net = synth_fig3(cv, res.condition, res.lam)
    elif res.kind == "Cond2":
        net = synth_fig2(cv, res)
    else:
        net = foster_synthesize(cv.to_rf())
    verified = driving_point(net) == cv.to_rf()
    if not verified:  # the synthesizers already check; this is the printed certificate
        raise InternalInvariantError("synthesized network failed re-verification")
    out.emit({"coefficients": str(cv), "branch": label, "netlist": to_netlist_dict(net), "verified": verified})
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    net = loads_netlist(Path(args.netlist).read_text())
    if args.admittance is not None:
        target = parse_rational_function(args.admittance)
        got = driving_point(net)
        match = got == target
        out.emit({"netlist": args.netlist, "admittance": str(got), "expected": str(target),
                  "result": "exact match" if match else "mismatch"})
    else:
        M = parse_matrix(args.matrix)
        Y = admittance_matrix(net)
        n = net.n_ports
        if n != 3:
            raise UsageError(f"--matrix needs a three-port netlist, got {n} ports")
        match = all(Y[i][j] == M[i, j] for i in range(3) for j in range(3))
        out.emit({"netlist": args.netlist, "admittance": [[str(y) for y in row] for row in Y],
                  "expected": M.to_text(), "result": "exact match" if match else "mismatch"})
    return EXIT_OK if match else EXIT_REJECT


def cmd_region_map(args, out: Output) -> int:
    from .oneport.arbitrary import region_map

    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    lo, hi = parse_rat(args.lo), parse_rat(args.hi)
    if lo >= hi:
        raise UsageError("--lo must be below --hi")
    text = region_map(parse_rat(args.g1), parse_rat(args.g2), parse_rat(args.g3), parse_rat(args.g4),
                      args.grid, lo, hi)
    if args.output:
        Path(args.output).write_text(text)
        out.emit({"output": args.output, "rows": text.count("\n") - 1})
    else:
        out.stream.write(text)
    return EXIT_OK


def cmd_regen_fig2_catalog(args, out: Output) -> int:
    from .oneport.fig2 import CASES, regenerate_catalog

    doc = regenerate_catalog(args.output, seed=_seed(2015))
    counts = {e["case"]: e["matches"] for e in doc["entries"]}
    out.emit({"topologies_examined": doc["search"]["topologies_examined"], "matches": counts,
              "output": args.output or "(not written)"})
    return EXIT_OK if all(counts.get(c) == 1 for c in CASES) else EXIT_REJECT


def cmd_enumerate_oracle(args, out: Output) -> int:
    rng = random.Random(_seed(0))
    report = necessity_sweep(rng, args.max_elements, args.max_vertices, args.valuations)
    out.emit({"networks": report.networks, "valuations": report.checked,
              "counterexamples": len(report.counterexamples)})
    for ce in report.counterexamples[:10]:
        out.emit(ce)
    return EXIT_OK if not report.counterexamples else EXIT_REJECT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mechsynth", description="Exact synthesis and classification of small mechanical networks.")
    p.add_argument("--format", choices=("table", "structured"), default="table",
                   help="human-readable table (default) or one JSON record per line")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("paramount-check", help="is a symmetric 3x3 matrix paramount")
    s.add_argument("--matrix", required=True, help='e.g. "[[1,1,0],[1,2,-1],[0,-1,1]]"')
    s.set_defaults(func=cmd_paramount_check)

    s = sub.add_parser("resistive3-synth", help="three-port resistive network with at most three elements")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_resistive3_synth)

    for name, func, help_ in (
        ("oneport-classify", cmd_oneport_classify, "classify a one-port admittance"),
        ("oneport-synth", cmd_oneport_synth, "realize a one-port admittance with at most three springs"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--num", required=True, help="a3,a2,a1,a0")
        s.add_argument("--den", required=True, help="b4,b3,b2,b1 (b4 is 0 or 1)")
        s.add_argument("--mode", choices=("as-written", "scale-search"), default="scale-search")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="compare a netlist's admittance with a target, exactly")
    s.add_argument("--netlist", required=True)
    target = s.add_mutually_exclusive_group(required=True)
    target.add_argument("--admittance", help='one-port target, e.g. "(s^3+2s^2+2s+3)/(s^3+s^2+2s)"')
    target.add_argument("--matrix", help="three-port resistive target")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("region-map", help="classify a lattice of (G5, G6) points as CSV")
    s.add_argument("--g1", default="1")
    s.add_argument("--g2", default="1")
    s.add_argument("--g3", default="1")
    s.add_argument("--g4", default="1/2")
    s.add_argument("--grid", type=int, default=201)
    s.add_argument("--lo", default="-1")
    s.add_argument("--hi", default="1")
    s.add_argument("--output", help="write the CSV here instead of stdout")
    s.set_defaults(func=cmd_region_map)

    s = sub.add_parser("regen-fig2-catalog", help="recover the bridge topologies by exhaustive search")
    s.add_argument("--output", help="path for the catalog JSON")
    s.set_defaults(func=cmd_regen_fig2_catalog)

    s = sub.add_parser("enumerate-oracle", help="check every small resistive three-port against the decision procedure")
    s.add_argument("--max-elements", type=int, default=3)
    s.add_argument("--max-vertices", type=int, default=7)
    s.add_argument("--valuations", type=int, default=20)
    s.set_defaults(func=cmd_enumerate_oracle)
    return p


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except InternalInvariantError as exc:
        stderr.write(f"internal error ({type(exc).__name__}): {exc}\n")
        return EXIT_INTERNAL
    except (MechSynthError, OSError, ValueError) as exc:
        stderr.write(f"error ({type(exc).__name__}): {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
