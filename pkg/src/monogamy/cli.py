"""``monogamy`` command-line front end.

Every subcommand prints one JSON report ``{"command", "inputs", "results"}``.
Exact rationals appear as ``"p/q"`` strings.  Exit status is 0 on success,
1 for invalid input and 2 when an exact algorithm hits its size limit.

Graph, objective, behavior and spec arguments may be a file path, a path
inside the bundled data directory (``fixtures/fig1.json``) or, for graphs,
a bare fixture name (``fig1``).  The objective ``unit`` weighs every vertex 1.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algorithms import clique_cover_number, independence_number, is_chordal
from .analyzer import check_monogamy, minimality_scan, parse_specs
from .behavior import Behavior, format_fraction
from .bell import BellScenario, chsh, local_max, ns_lp_max, rearranged_chsh_pair
from .errors import MonogamyError, SizeLimitError, ValidationError
from .fixtures import BUILDERS, PENTAGON_A, PENTAGON_B, data_path, load_fixture
from .graph import CommutationGraph, parse_graph
from .jpd import construct_jpd, jpd_exists_lp, verify_marginals
from .ndpolytope import LinearObjective, classical_max, nd_max
from . import quantum

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SIZE = 2


class _UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit 1."""

    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


# -- input resolution --------------------------------------------------------


def _read_text(arg: str, kind: str) -> tuple[str, str]:
    path = Path(arg)
    if path.is_file():
        return path.read_text(), str(path)
    bundled = data_path(*Path(arg).parts) if arg else None
    if bundled is not None and bundled.is_file():
        return bundled.read_text(), f"<bundled>/{arg}"
    raise ValidationError(f"{kind} file {arg!r} not found (neither on disk nor in the bundled data)")


def _load_json(arg: str, kind: str) -> tuple[object, str]:
    text, source = _read_text(arg, kind)
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{kind} file {source}: invalid JSON ({exc})") from None


def load_graph(arg: str) -> tuple[CommutationGraph, str]:
    if arg in BUILDERS and not Path(arg).exists():
        return load_fixture(arg), f"<fixture>/{arg}"
    text, source = _read_text(arg, "graph")
    try:
        return parse_graph(text), source
    except ValidationError as exc:
        raise ValidationError(f"graph file {source}: {exc}") from None


def load_objective(arg: str, g: CommutationGraph) -> tuple[LinearObjective, str]:
    if arg == "unit":
        return LinearObjective.unit(g.vertices), "unit"
    data, source = _load_json(arg, "objective")
    try:
        obj = LinearObjective.from_dict(data)  # type: ignore[arg-type]
        obj.check(g)
    except ValidationError as exc:
        raise ValidationError(f"objective file {source}: {exc}") from None
    return obj, source


# -- subcommands -------------------------------------------------------------


def _graph_inputs(g: CommutationGraph, source: str) -> dict:
    return {"graph": source, "vertices": len(g), "edges": g.num_edges()}


def cmd_chordal(args) -> dict:
    g, src = load_graph(args.graph)
    res = is_chordal(g)
    summary = "chordal" if res.chordal else f"not chordal, induced cycle of length {len(res.witness_cycle or ())}"
    return _report("chordal", _graph_inputs(g, src), res.to_dict(), summary)


def cmd_alpha(args) -> dict:
    g, src = load_graph(args.graph)
    value, witness = independence_number(g)
    return _report(
        "alpha",
        _graph_inputs(g, src),
        {"alpha": value, "independent_set": list(witness)},
        f"independence number {value}",
    )


def cmd_clique_cover(args) -> dict:
    g, src = load_graph(args.graph)
    value, cover = clique_cover_number(g)
    return _report(
        "clique-cover",
        _graph_inputs(g, src),
        {"clique_cover_number": value, "cover": cover.to_list()},
        f"clique cover number {value}",
    )


def _objective_inputs(g, src, obj, obj_src) -> dict:
    out = _graph_inputs(g, src)
    out["objective"] = obj_src
    out["weights"] = obj.to_dict()["weights"]
    return out


def cmd_nd_max(args) -> dict:
    g, src = load_graph(args.graph)
    obj, obj_src = load_objective(args.objective, g)
    outcome = nd_max(g, obj)
    return _report(
        "nd-max",
        _objective_inputs(g, src, obj, obj_src),
        outcome.to_dict(),
        f"no-disturbance maximum {format_fraction(outcome.value)}",
    )


def cmd_classical_max(args) -> dict:
    g, src = load_graph(args.graph)
    obj, obj_src = load_objective(args.objective, g)
    value, assignment = classical_max(g, obj)
    return _report(
        "classical-max",
        _objective_inputs(g, src, obj, obj_src),
        {"value": format_fraction(value), "assignment": assignment},
        f"classical maximum {format_fraction(value)}",
    )


def cmd_jpd(args) -> dict:
    g, src = load_graph(args.graph)
    data, b_src = _load_json(args.behavior, "behavior")
    try:
        b = Behavior.from_dict(data)  # type: ignore[arg-type]
    except ValidationError as exc:
        raise ValidationError(f"behavior file {b_src}: {exc}") from None
    jpd = construct_jpd(g, b)
    report = verify_marginals(jpd, b)
    exists = jpd_exists_lp(g, b)
    inputs = _graph_inputs(g, src)
    inputs["behavior"] = b_src
    return _report(
        "jpd",
        inputs,
        {"jpd": jpd.to_dict(), "marginals": report.to_dict(), "lp_feasible": exists},
        f"joint distribution with {len(jpd.support)} support points; marginals "
        + ("reproduced" if report.passed else "MISMATCH"),
    )


def cmd_monogamy(args) -> dict:
    g, src = load_graph(args.graph)
    data, s_src = _load_json(args.specs, "specs")
    specs = parse_specs(data, g)  # type: ignore[arg-type]
    verdict = check_monogamy(g, specs)
    inputs = _graph_inputs(g, src)
    inputs["specs"] = s_src
    inputs["inequalities"] = [s.to_dict() for s in specs]
    return _report(
        "monogamy",
        inputs,
        verdict.to_dict(),
        f"{verdict.classification}: clique cover number {verdict.clique_cover_number}, "
        f"target {verdict.target}",
    )


def cmd_minimality_scan(args) -> dict:
    report = minimality_scan(args.k, exclusive=not args.non_exclusive)
    minimal = report.minimal_k
    return _report(
        "minimality-scan",
        {"k": args.k, "exclusive_cross_edges": not args.non_exclusive},
        report.to_dict(),
        "no two-pentagon graph reaches clique cover number 4"
        if minimal is None
        else f"fewest cross edges giving clique cover number 4: {minimal}",
    )


def _spectrum_dict(f: quantum.ProjectorFamily, labels: Sequence[str]) -> list[float]:
    vals, _ = quantum.operator_spectrum(f, quantum.unit_weights(labels))
    return [float(v) for v in vals]


def cmd_quantum(args) -> dict:
    tolerances = {
        "orthogonality": quantum.ORTHO_TOL,
        "eigen_residual": quantum.EIGEN_TOL,
        "bound_slack": quantum.BOUND_SLACK,
    }
    if args.scan is not None:
        scan = quantum.parameter_scan(args.scan, args.seed)
        results = scan.to_dict()
        results["bound_holds"] = scan.max_total <= 4 + quantum.BOUND_SLACK
        results["tolerances"] = tolerances
        return _report(
            "quantum",
            {"scan": args.scan, "seed": args.seed},
            results,
            f"{scan.points} parameter sets, largest unit-weight eigenvalue {scan.max_total:.12f}",
        )
    angles = args.angles
    if len(angles) == 5:
        p = quantum.ParameterSet.solve_delta(*angles)
    elif len(angles) == 6:
        p = quantum.ParameterSet(*angles)
    else:
        raise ValidationError(
            "--angles takes theta alpha beta gamma [delta] epsilon (5 values solve delta)"
        )
    if not all(math.isfinite(a) for a in angles):
        raise ValidationError("angles must be finite")
    fam = quantum.build_family(p)
    graph = quantum.orthogonality_graph(fam)
    full = _spectrum_dict(fam, quantum.LABELS)
    results = {
        "parameters": p.to_dict(),
        "vectors": {lab: [float(x) for x in fam.vector(lab)] for lab in fam.labels},
        "edges": [list(e) for e in graph.edges],
        "eigenvalues": full,
        "max_eigenvalue": full[0],
        "pentagon_A_max": _spectrum_dict(fam, PENTAGON_A)[0],
        "pentagon_Aprime_max": _spectrum_dict(fam, PENTAGON_B)[0],
        "bound": 4,
        "bound_holds": full[0] <= 4 + quantum.BOUND_SLACK,
        "tolerances": tolerances,
    }
    return _report("quantum", {"angles": p.to_dict()}, results, f"largest eigenvalue {full[0]:.12f}")


def _bell_entry(s: BellScenario, exprs) -> dict:
    ns = ns_lp_max(s, exprs)
    local, strategy = local_max(s, exprs)
    return {
        "ns_max": format_fraction(ns.value),
        "local_max": format_fraction(local),
        "ns_witness": ns.witness.to_dict(),
        "local_strategy": {m: 1 - 2 * bit for m, bit in strategy.items()},
    }


def cmd_bell_monogamy(args) -> dict:
    shared = args.shared_settings
    single = BellScenario.standard(2)
    results = {"single_chsh": _bell_entry(single, [chsh("A1", "A2", "B1", "B2")])}
    if shared:
        s = BellScenario.standard(3)
        pair = [chsh("A1", "A2", "B1", "B2"), chsh("A1", "A2", "C1", "C2")]
        results["pair"] = _bell_entry(s, pair)
        left, right = rearranged_chsh_pair(s)
        results["rearranged"] = [
            {"terms": [list(ms) for ms, _ in e.terms], "ns_max": format_fraction(ns_lp_max(s, [e]).value)}
            for e in (left, right)
        ]
    else:
        s = BellScenario({"A": ("A1", "A2", "A3", "A4"), "B": ("B1", "B2"), "C": ("C1", "C2")})
        pair = [chsh("A1", "A2", "B1", "B2"), chsh("A3", "A4", "C1", "C2")]
        results["pair"] = _bell_entry(s, pair)
    results["bound_2R"] = 4
    results["monogamous"] = results["pair"]["ns_max"] == "4"
    return _report(
        "bell-monogamy",
        {"shared_settings": shared, "settings": {p: list(ms) for p, ms in s.settings.items()}},
        results,
        f"CHSH(A,B) + CHSH(A,C) no-signaling maximum {results['pair']['ns_max']}",
    )


def _report(command: str, inputs: dict, results: dict, summary: str) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "summary": summary}


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monogamy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--pretty", action="store_true", help="indented JSON with a summary line")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    for name, func, help_text in (
        ("chordal", cmd_chordal, "chordality with a PEO or induced-cycle witness"),
        ("alpha", cmd_alpha, "independence number and a maximum independent set"),
        ("clique-cover", cmd_clique_cover, "vertex clique cover number and an optimal cover"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph")
        p.set_defaults(func=func)

    for name, func, help_text in (
        ("nd-max", cmd_nd_max, "exact maximum over the no-disturbance polytope"),
        ("classical-max", cmd_classical_max, "maximum over deterministic noncontextual assignments"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph")
        p.add_argument("objective", help="objective JSON or 'unit'")
        p.set_defaults(func=func)

    p = sub.add_parser("jpd", help="joint distribution for a behavior on a chordal graph")
    p.add_argument("graph")
    p.add_argument("behavior")
    p.set_defaults(func=cmd_jpd)

    p = sub.add_parser("monogamy", help="clique-cover monogamy verdict for a family of inequalities")
    p.add_argument("graph")
    p.add_argument("specs")
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("minimality-scan", help="two-pentagon graphs with k cross edges")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--non-exclusive", action="store_true", help="mark cross edges non-exclusive")
    p.set_defaults(func=cmd_minimality_scan)

    p = sub.add_parser("quantum", help="4D projector family: orthogonality graph and eigenvalues")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--angles", type=float, nargs="+", metavar="RAD")
    group.add_argument("--scan", type=_positive, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("bell-monogamy", help="CHSH monogamy for three parties")
    p.add_argument("--shared-settings", type=_bool, required=True, metavar="{true,false}")
    p.set_defaults(func=cmd_bell_monogamy)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with contextlib.redirect_stdout(stdout):
            args = build_parser().parse_args(argv)
        report = args.func(args)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=stderr)
        return EXIT_SIZE
    except (ValidationError, MonogamyError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    if args.pretty:
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        report.pop("summary")
        stdout.write(json.dumps(report, separators=(",", ":")) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
