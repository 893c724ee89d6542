"""Command line interface: ``kaehleraut <subcommand> ...``.

Exit codes: 0 success, 1 parse or validation error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional, Sequence, Union

from . import worked_examples
from .ga import (PolyEndo, compose_poly, invert_block_triangular, is_block_triangular, is_elementary,
                 is_triangular, jacobian_determinant)
from .kaehler import DifferentialContext, higher_differential
from .parser import Naming, ParseError, parse_polynomial, parse_series_map
from .poly import Polynomial
from .rep import alpha, embed_ga
from .series import TruncatedSeriesMap, compose, invert
from .verify import run_verification

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class CliError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--m", type=int, help="number of variables")
    p.add_argument("--N", type=int, help="truncation order")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("plain", "latex", "json"), default="plain")
    p.add_argument("--input", action="append", default=[], metavar="FILE", help="JSON map file (repeatable)")
    p.add_argument("--output", metavar="FILE")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kaehleraut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diff", parents=[common], help="print d^1 f .. d^N f")
    p.add_argument("f", help="polynomial in x1..xm (or x when m = 1)")

    p = sub.add_parser("alpha", parents=[common], help="polynomial automorphism alpha(phi)")
    p.add_argument("components", nargs="*", help="one expression per component of phi")
    p.add_argument("--verify", action="store_true", help="cross-check against the reduced differentials")

    for name, helptext in (("compose", "compose two maps, left o right"),
                           ("invert", "invert a (block-)triangular map"),
                           ("classify", "structural predicates of a polynomial map"),
                           ("embed", "lift an automorphism of affine m-space to m + N*m variables")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--map", action="append", default=[], dest="maps",
                       help="map given inline as 'f1; f2; ...' (repeatable)")
        p.add_argument("--series", action="store_true", help="read inline maps as truncated series maps")
        if name in ("invert", "classify"):
            p.add_argument("--block-size", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="randomized property harness")
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    sub.add_parser("examples", parents=[common], help="recompute the classical worked examples")
    return parser


# -- input helpers ---------------------------------------------------------------


def _load_records(paths: Sequence[str]) -> List[dict]:
    out = []
    for path in paths:
        try:
            with open(path) as fh:
                out.append(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read {path}: {exc}") from None
    return out


def _from_record(rec: dict) -> Union[TruncatedSeriesMap, PolyEndo]:
    kind = rec.get("kind")
    if kind == "series_map":
        return TruncatedSeriesMap.from_record(rec)
    if kind == "poly_endo":
        return PolyEndo.from_record(rec)
    raise CliError(f"unknown record kind {kind!r}")


def _split(text: str) -> List[str]:
    return [t.strip() for t in text.split(";") if t.strip()]


def _inline_map(text: str, args) -> Union[TruncatedSeriesMap, PolyEndo]:
    parts = _split(text)
    if args.series:
        if args.N is None:
            raise CliError("--N is required for series maps")
        return parse_series_map(parts, len(parts), args.N)
    naming = Naming.endo(len(parts))
    return PolyEndo.of([parse_polynomial(t, naming) for t in parts])


def _maps(args) -> List[Union[TruncatedSeriesMap, PolyEndo]]:
    return [_inline_map(t, args) for t in args.maps] + [_from_record(r) for r in _load_records(args.input)]


def _endo_names(f: PolyEndo, latex: bool) -> List[str]:
    if latex:
        return [f"y_{{{i}}}" for i in range(1, f.n + 1)]
    return Naming.endo(f.n).names


def _render_map(obj, fmt: str, names: Optional[List[str]] = None, targets: Optional[List[str]] = None) -> str:
    if fmt == "json":
        return json.dumps(obj.to_record(), indent=2)
    latex = fmt == "latex"
    if isinstance(obj, TruncatedSeriesMap):
        names = names or (Naming.x(obj.m).names if not latex else [f"x_{{{i}}}" for i in range(1, obj.m + 1)])
    else:
        names = names or _endo_names(obj, latex)
    targets = targets or names
    arrow = r" \mapsto " if latex else " -> "
    return "\n".join(f"{t}{arrow}{p.render(names, latex)}" for t, p in zip(targets, obj.components))


# -- subcommands -------------------------------------------------------------------


def cmd_diff(args) -> str:
    m = args.m or 1
    N = args.N or 1
    if N < 1:
        raise CliError("--N must be at least 1")
    f = parse_polynomial(args.f, Naming.x(m))
    ctx = DifferentialContext(m, N)
    latex = args.format == "latex"
    names = ctx.names(latex)
    diffs = [higher_differential(f, n, ctx) for n in range(1, N + 1)]
    if args.format == "json":
        return json.dumps({
            "f": f.render(Naming.x(m).names), "m": m, "N": N,
            "variables": ctx.names(),
            "differentials": [{"n": n, "text": d.render(ctx.names()), "terms": d.to_records()}
                              for n, d in enumerate(diffs, start=1)],
        }, indent=2)
    if latex:
        return "\n".join(f"d^{{{n}}}f = {d.render(names, True)}" for n, d in enumerate(diffs, start=1))
    return "\n".join(f"d^{n}f = {d.render(names)}" for n, d in enumerate(diffs, start=1))


def cmd_alpha(args) -> str:
    if args.components:
        m = args.m or len(args.components)
        if args.N is None:
            raise CliError("--N is required")
        phi = parse_series_map(args.components, m, args.N)
    else:
        recs = _load_records(args.input)
        if len(recs) != 1:
            raise CliError("alpha needs inline components or exactly one --input file")
        phi = TruncatedSeriesMap.from_record(recs[0])
    if not phi.is_automorphism():
        raise CliError(f"not an automorphism: linear part {_matrix_text(phi.linear_part())} is singular")
    image = alpha(phi, verify=args.verify)
    if args.format == "json":
        rec = image.base.to_record()
        rec.update({"m": phi.m, "N": phi.N, "variables": image.names()})
        return json.dumps(rec, indent=2)
    latex = args.format == "latex"
    lines = image.render(latex)
    if latex:
        lines = [line.replace(" -> ", r" \mapsto ") for line in lines]
    if args.verify:
        lines.append("# coefficient formula and reduced differentials agree")
    return "\n".join(lines)


def _matrix_text(a) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in a) + "]"


def cmd_compose(args) -> str:
    maps = _maps(args)
    if len(maps) != 2:
        raise CliError(f"compose needs exactly two maps, got {len(maps)}")
    left, right = maps
    if isinstance(left, TruncatedSeriesMap) and isinstance(right, TruncatedSeriesMap):
        return _render_map(compose(left, right), args.format)
    if isinstance(left, PolyEndo) and isinstance(right, PolyEndo):
        return _render_map(compose_poly(left, right), args.format)
    raise CliError("cannot compose a series map with a polynomial map")


def _single(args):
    maps = _maps(args)
    if len(maps) != 1:
        raise CliError(f"expected exactly one map, got {len(maps)}")
    return maps[0]


def cmd_invert(args) -> str:
    f = _single(args)
    if isinstance(f, TruncatedSeriesMap):
        return _render_map(invert(f), args.format)
    return _render_map(invert_block_triangular(f, args.block_size).inverse, args.format)


def cmd_classify(args) -> str:
    f = _single(args)
    if isinstance(f, TruncatedSeriesMap):
        raise CliError("classify works on polynomial maps")
    det = jacobian_determinant(f)
    names = Naming.endo(f.n).names
    info = {
        "n": f.n,
        "triangular": is_triangular(f),
        "elementary": is_elementary(f),
        "block_triangular": is_block_triangular(f, args.block_size),
        "block_size": args.block_size,
        "linear": f.is_linear(),
        "jacobian_determinant": det.render(names),
        "jacobian_constant_nonzero": det.is_constant() and not det.is_zero(),
    }
    if args.format == "json":
        return json.dumps(info, indent=2)
    return "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in info.items())


def cmd_embed(args) -> str:
    f = _single(args)
    if isinstance(f, TruncatedSeriesMap):
        f = PolyEndo.of(f.components)
    N = args.N or 1
    lifted = embed_ga(f, N).forward
    if args.format == "json":
        rec = lifted.to_record()
        rec.update({"m": f.n, "N": N, "variables": DifferentialContext(f.n, N).names()})
        return json.dumps(rec, indent=2)
    latex = args.format == "latex"
    names = DifferentialContext(f.n, N).names(latex)
    return _render_map(lifted, args.format, names=names)


def cmd_verify(args) -> tuple:
    if args.trials < 1:
        raise CliError("--trials must be at least 1")
    alpha_fn = alpha
    if args.corrupt:
        def alpha_fn(phi):
            image = alpha(phi)
            comps = list(image.base.components)
            comps[-1] = comps[-1] + Polynomial.variable(image.base.n, 0) ** image.source_N
            return type(image)(PolyEndo(image.base.n, tuple(comps)), image.source_m, image.source_N)
    grid = ((args.m, args.N),) if args.m and args.N else None
    kwargs = {"grid": grid} if grid else {}
    report = run_verification(trials=args.trials, seed=args.seed, alpha_fn=alpha_fn, **kwargs)
    if args.format == "json":
        text = json.dumps(report.to_record(), indent=2)
    else:
        text = "\n".join(report.lines() + [("all suites passed" if report.ok else "verification FAILED")])
    return text, (EXIT_OK if report.ok else EXIT_VERIFY)


def cmd_examples(args) -> str:
    data = worked_examples.report()
    if args.format == "json":
        return json.dumps(data, indent=2)
    lines = []
    for block in data["alpha"]:
        lines.append(f"== alpha, m={block['m']}, N={block['N']}: {'match' if block['match'] else 'MISMATCH'}")
        for c in block["components"]:
            lines.append(f"  {c['variable']} -> {c['computed']}")
            lines.append(f"      reference: {c['reference']}  [{'match' if c['match'] else 'MISMATCH'}]")
            if c["note"]:
                lines.append(f"      note: {c['note']}")
    for block in data["differentials"]:
        lines.append(f"== differential, m={block['m']}, n={block['n']}: {'match' if block['match'] else 'MISMATCH'}")
        lines.append(f"  {block['display']}")
    return "\n".join(lines)


COMMANDS = {
    "diff": cmd_diff, "alpha": cmd_alpha, "compose": cmd_compose, "invert": cmd_invert,
    "classify": cmd_classify, "embed": cmd_embed, "verify": cmd_verify, "examples": cmd_examples,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = COMMANDS[args.command](args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except (CliError, ParseError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, tuple):
        result, code = result
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(result + "\n")
    else:
        print(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
