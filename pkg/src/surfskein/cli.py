"""Command-line front end: analyze, bracket, bounds, verify, generate.

Exit codes: 0 success, 1 input error, 2 hypothesis or verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .geometry_bounds import (
    HEEGAARD,
    LOWER_GUTS,
    LOWER_MAX,
    LOWER_SHIFTED,
    THICKENED,
    AmbientContext,
    AmbientError,
    Coefficients,
    Setting,
    analyze_bounds,
    diagram_facts,
)
from .kauffman_states import A, B, apply_state, is_bks_adequate, reduce_state_graph, side_state, state_graph
from .laurent import LaurentPolynomial
from .link_diagram import (
    DiagramError,
    HypothesesNotMet,
    LinkDiagram,
    diagram_from_dict,
    diagram_to_dict,
    edge_representativity_class,
    is_prime,
    to_spd,
    twist_regions,
)
from .oracle.generator import ConstraintExhausted, GeneratorSpec, generate
from .oracle.verify import FAIL, read_corpus, verify_report
from .skein_poly import (
    DEFAULT_MAX_CROSSINGS,
    TooManyCrossings,
    bracket_decomposition,
    bracket_zero,
    format_t_terms,
    jones_j0,
)
from .surface_map import MapError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2

WARN_CROSSINGS = 22


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_input(args) -> LinkDiagram:
    if args.spd is not None:
        text = args.spd
    elif args.input is not None:
        text = _read_text(args.input)
    else:
        raise InputError("give --in FILE or --spd TEXT")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if isinstance(doc, dict) and "diagram" in doc and isinstance(doc["diagram"], dict) and "spd" in doc["diagram"]:
        doc = doc["diagram"]["spd"]  # a report produced by this tool
    return diagram_from_dict(doc)


def _check_limit(diagram: LinkDiagram, limit: int) -> None:
    if diagram.num_crossings > limit:
        raise TooManyCrossings(diagram.num_crossings, limit)
    if diagram.num_crossings > WARN_CROSSINGS:
        print(
            f"warning: {diagram.num_crossings} crossings means {2 ** diagram.num_crossings} states; this may take a while",
            file=sys.stderr,
        )


def ambient_from_args(args) -> AmbientContext:
    return AmbientContext(
        setting=Setting(args.ambient),
        chi_boundary=args.chi_boundary,
        surface_incompressible=args.assert_surface_incompressible,
        boundary_incompressible=args.assert_boundary_incompressible,
        atoroidal_anannular=args.assert_atoroidal_anannular,
        r_gt_4=args.assert_r_gt_4,
    )


# ---------------------------------------------------------------------------
# report pieces
# ---------------------------------------------------------------------------


def _timestamp() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def diagram_summary(diagram: LinkDiagram) -> dict:
    return {
        "name": diagram.name,
        "crossings": diagram.num_crossings,
        "genus": diagram.genus,
        "euler_characteristic": diagram.euler_characteristic,
        "writhe": diagram.writhe,
        "components": len(diagram.components),
        "spd": diagram_to_dict(diagram),
    }


def _side_graph(diagram: LinkDiagram, side: str) -> dict:
    state = side_state(diagram, side)
    circles = apply_state(diagram, state)
    graph = state_graph(diagram, state, circles)
    e_prime = None
    if not graph.loops:
        e_prime = reduce_state_graph(diagram, graph).e_prime
    return {
        "circles": circles.count,
        "noncontractible_circles": circles.noncontractible_count,
        "edges": diagram.num_crossings,
        "loops": len(graph.loops),
        "e_prime": e_prime,
        "source": "state-graph",
    }


def _poly_json(poly) -> list:
    return poly.to_pairs()


def bracket_section(diagram: LinkDiagram, limit: int) -> tuple[dict, Coefficients | None]:
    zero = bracket_zero(diagram, limit)
    j0 = jones_j0(diagram, zero)
    out = {"bracket_zero": {"terms": _poly_json(zero.polynomial), "source": "contractible-state-sum"}}
    if zero.polynomial.is_zero():
        out["jones_j0"] = {"terms": [], "writhe": diagram.writhe, "source": "writhe-normalization"}
        return out, None
    out["jones_j0"] = {
        "terms": j0.to_json(),
        "m": str(j0.m),
        "n": str(j0.n),
        "writhe": diagram.writhe,
        "source": "writhe-normalization",
    }
    coeffs = Coefficients(j0.a_m, j0.a_m1, j0.b_n1, j0.b_n)
    out["coefficients"] = {
        **coeffs.to_json(),
        "degree_top": zero.max_degree,
        "degree_bottom": zero.min_degree,
        "degree_gap": 4,
        "source": "extreme-coefficients-of-contractible-part",
    }
    return out, coeffs


def analysis_report(diagram: LinkDiagram, context: AmbientContext, limit: int) -> dict:
    facts = diagram_facts(diagram)
    hyp = {
        **facts.to_json(),
        "prime": is_prime(diagram),
        "edge_representativity": str(edge_representativity_class(diagram)),
        "bks_adequate_a": is_bks_adequate(diagram, A),
        "bks_adequate_b": is_bks_adequate(diagram, B),
        "source": "computed",
    }
    twist = twist_regions(diagram)
    report = {
        "command": "analyze",
        "tool_version": __version__,
        "diagram": diagram_summary(diagram),
        "hypotheses": hyp,
        "state_graphs": {"A": _side_graph(diagram, A), "B": _side_graph(diagram, B)},
        "twist_regions": {"count": twist.count, "regions": [list(r) for r in twist.regions], "source": "bigon-chains"},
    }
    section, coeffs = bracket_section(diagram, limit)
    report.update(section)
    predictions = {}
    for side, key in ((A, "A"), (B, "B")):
        g = report["state_graphs"][key]
        if g["e_prime"] is not None and g["noncontractible_circles"] == 0:
            predictions[key] = {"top": 1, "second": g["e_prime"] - g["circles"] + 1, "source": "coefficient-formula"}
        else:
            predictions[key] = None
    report["predictions"] = predictions
    if coeffs is not None:
        report.update(analyze_bounds(facts, coeffs, context).to_json())
    report["timestamp"] = _timestamp()
    return report


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _fmt_pairs(pairs) -> str:
    return str(LaurentPolynomial.from_pairs(pairs))


def render_text(report: dict) -> str:
    lines = []
    cmd = report.get("command")
    if "diagram" in report:
        d = report["diagram"]
        lines.append(
            f"{d['name'] or '(unnamed)'}: {d['crossings']} crossings, genus {d['genus']}, writhe {d['writhe']}"
        )
    if "hypotheses" in report:
        h = report["hypotheses"]
        flags = ("alternating", "colorable", "prime", "reduced", "twist_reduced", "adequate_a", "adequate_b")
        lines.append("hypotheses: " + ", ".join(f"{k}={'yes' if h[k] else 'no'}" for k in flags))
        lines.append(f"edge representativity: {h['edge_representativity']}")
    if "state_graphs" in report:
        for side, g in report["state_graphs"].items():
            lines.append(f"G_{side}: {g['circles']} circles, {g['loops']} loops, e'={g['e_prime']}")
    if "bracket_zero" in report:
        lines.append("<D>_0 = " + _fmt_pairs(report["bracket_zero"]["terms"]))
    if "jones_j0" in report:
        terms = report["jones_j0"]["terms"]
        lines.append("J_0 = " + format_t_terms((Fraction(e), c) for e, c in terms))
    if "coefficients" in report:
        c = report["coefficients"]
        lines.append(f"|a_m|={c['a_m']} |a_m-1|={c['a_m1']} |b_n+1|={c['b_n1']} |b_n|={c['b_n']}")
    if "twist_regions" in report:
        lines.append(f"twist regions: {report['twist_regions']['count']}")
    if "decomposition" in report:
        for entry in report["decomposition"]["keys"]:
            lines.append(f"X={entry['key']}: cleared {_fmt_pairs(entry['cleared'])} ({entry['states']} states)")
    if "bounds" in report:
        for tag, b in report["bounds"].items():
            if "lower" in b:
                lines.append(f"{tag}: {b['lower']:.5f} <= vol < {b['upper']:.5f}")
            elif "value" in b:
                lines.append(f"{tag}: {b['value']}")
            else:
                lines.append(f"{tag}: A={b['A']} B={b['B']}")
        for tag, cl in report["hypothesis_report"]["checklists"].items():
            if not cl["ok"]:
                lines.append(f"{tag}: not emitted, failed {', '.join(cl['failed'])}")
    if cmd == "verify":
        for r in report["reports"]:
            bad = [x["name"] for x in r["records"] if x["status"] == FAIL]
            lines.append(f"{r['name'] or '(unnamed)'}: {'ok' if r['ok'] else 'FAILED ' + ', '.join(bad)}")
        s = report["summary"]
        lines.append(f"diagrams {s['diagrams']}, pass {s['pass']}, fail {s['fail']}, not applicable {s['not-applicable']}")
    if cmd == "generate":
        lines.append(f"wrote {report['count']} diagram(s)")
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(render_text(report) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> tuple[dict, int]:
    diagram = load_input(args)
    _check_limit(diagram, args.max_crossings)
    return analysis_report(diagram, ambient_from_args(args), args.max_crossings), EXIT_OK


def cmd_bracket(args) -> tuple[dict, int]:
    diagram = load_input(args)
    _check_limit(diagram, args.max_crossings)
    section, _ = bracket_section(diagram, args.max_crossings)
    report = {"command": "bracket", "tool_version": __version__, "diagram": diagram_summary(diagram), **section}
    if args.decomposition:
        dec = bracket_decomposition(diagram, args.max_crossings)
        report["decomposition"] = {
            "keys": [
                {
                    "key": key.to_json() | {"label": str(key)},
                    "cleared": dec.terms[key].to_pairs(),
                    "states": dec.states_by_key[key],
                }
                for key in dec.terms
            ],
            "states_zero": dec.states_zero,
            "source": "multicurve-state-sum",
        }
    report["timestamp"] = _timestamp()
    return report, EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    diagram = load_input(args)
    _check_limit(diagram, args.max_crossings)
    context = ambient_from_args(args)
    facts = diagram_facts(diagram)
    section, coeffs = bracket_section(diagram, args.max_crossings)
    report = {"command": "bounds", "tool_version": __version__, "diagram": diagram_summary(diagram), **section}
    if coeffs is None:
        report["error"] = "the contractible part of the bracket vanishes"
        report["timestamp"] = _timestamp()
        return report, EXIT_HYPOTHESIS
    bounds = analyze_bounds(facts, coeffs, context)
    report.update(bounds.to_json())
    report["timestamp"] = _timestamp()
    wanted = {Setting.THICKENED: (THICKENED,), Setting.HEEGAARD: (HEEGAARD,)}.get(
        context.setting, (LOWER_MAX, LOWER_SHIFTED, LOWER_GUTS)
    )
    if not any(tag in bounds.values for tag in wanted):
        failed = sorted({f for tag in wanted for f in bounds.checklists[tag].failed})
        report["error"] = "hypotheses not met: " + ", ".join(failed)
        return report, EXIT_HYPOTHESIS
    return report, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.corpus is not None:
        try:
            diagrams = read_corpus(args.corpus)
        except OSError as exc:
            raise InputError(f"cannot read {args.corpus}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid corpus line: {exc.msg}") from exc
    else:
        diagrams = [load_input(args)]
    limit = min(args.max_crossings, 20)
    reports = []
    summary = {"diagrams": 0, "pass": 0, "fail": 0, "not-applicable": 0}
    for d in diagrams:
        r = verify_report(d, limit, dual_path=d.num_crossings <= limit)
        reports.append(r.to_json())
        summary["diagrams"] += 1
        for k, v in r.counts().items():
            summary[k] += v
    report = {"command": "verify", "tool_version": __version__, "reports": reports, "summary": summary}
    report["timestamp"] = _timestamp()
    return report, EXIT_OK if summary["fail"] == 0 else EXIT_HYPOTHESIS


def cmd_generate(args) -> tuple[dict, int]:
    spec_args = dict(
        genus=args.genus,
        crossings=args.crossings,
        require_alternating=not args.allow_nonalternating,
        require_colorable=args.require_colorable,
        require_reduced=args.require_reduced,
        require_twist_reduced=args.require_twist_reduced,
        max_attempts=args.max_attempts,
    )
    try:
        diagrams = [generate(GeneratorSpec(seed=args.seed + k, **spec_args)) for k in range(args.count)]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.out is None:
        docs = [diagram_to_dict(d) for d in diagrams]
        return {"command": "generate", "count": len(docs), "diagrams": docs, "timestamp": _timestamp()}, EXIT_OK
    out = Path(args.out)
    if args.count == 1 and out.suffix != ".jsonl":
        out.write_text(to_spd(diagrams[0]), encoding="utf-8")
    else:
        with out.open("w", encoding="utf-8") as fh:
            for d in diagrams:
                fh.write(json.dumps({"spd": diagram_to_dict(d)}, sort_keys=True) + "\n")
    return {"command": "generate", "count": len(diagrams), "path": str(out), "timestamp": _timestamp()}, EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", help="SPD file (or a report produced by this tool); - for stdin")
    p.add_argument("--spd", help="inline SPD document")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)


def _add_ambient(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ambient", choices=[s.value for s in Setting], default="general")
    p.add_argument("--chi-boundary", type=int, default=None)
    p.add_argument("--assert-r-gt-4", action="store_true")
    p.add_argument("--assert-surface-incompressible", action="store_true")
    p.add_argument("--assert-boundary-incompressible", action="store_true")
    p.add_argument("--assert-atoroidal-anannular", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfskein", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one diagram")
    _add_input(p)
    _add_ambient(p)
    _add_common(p)

    p = sub.add_parser("bracket", help="contractible part, J_0 and optionally the multicurve decomposition")
    _add_input(p)
    _add_common(p)
    p.add_argument("--decomposition", action="store_true")

    p = sub.add_parser("bounds", help="volume bounds; exit 2 if hypotheses fail")
    _add_input(p)
    _add_ambient(p)
    _add_common(p)

    p = sub.add_parser("verify", help="identity checks on a diagram or corpus")
    _add_input(p)
    p.add_argument("--corpus", help="JSON lines file of SPD documents")
    _add_common(p)

    p = sub.add_parser("generate", help="random diagrams")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--crossings", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--allow-nonalternating", action="store_true")
    p.add_argument("--require-colorable", action="store_true")
    p.add_argument("--require-reduced", action="store_true")
    p.add_argument("--require-twist-reduced", action="store_true")
    p.add_argument("--max-attempts", type=int, default=2000)
    p.add_argument("--out", help="SPD file, or .jsonl corpus when --count > 1")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "bracket": cmd_bracket,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def run(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    fmt = getattr(args, "format", "json")
    try:
        report, code = COMMANDS[args.command](args)
    except HypothesesNotMet as exc:
        report, code = {"command": args.command, "error": str(exc), "failed": list(exc.failed)}, EXIT_HYPOTHESIS
    except (InputError, DiagramError, MapError, AmbientError, TooManyCrossings, ConstraintExhausted) as exc:
        report, code = {"command": args.command, "error": str(exc), "error_type": type(exc).__name__}, EXIT_INPUT
    emit(report, fmt, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
