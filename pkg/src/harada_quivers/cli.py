"""Command-line driver: ``harada-quivers {check,extend,qf,harada,verify} FILE``.

Exit codes: 0 success, 1 parse/validation error, 2 computation failure,
3 verification mismatch.
"""
from __future__ import annotations

import argparse
import sys

from . import dsl
from .algebra import NotFiniteDimensionalError, UnsupportedFieldError, build_algebra, loewy_length, quiver_of_algebra
from .block import BlockSpec, block_presentation_from, block_quiver
from .harada import NoSoclePathError, NotQFError, StaircaseSpec, harada_construction, qf_check
from .pipeline import PipelineConfig, verify_pipeline
from .quiver import QuiverError, validate_presentation
from .scalars import field_from_spec

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with "computation failure"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _staircase(text: str) -> tuple[tuple[int, ...], ...]:
    return tuple(_int_tuple(row) for row in text.split(";"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="input .qpr file")
    common.add_argument("--field", default="q", help="q (rationals, default) or gf:<p>")
    common.add_argument("--max-len", type=int, default=64, help="path-length bound for normal forms")
    common.add_argument("--format", choices=["text", "json", "dot", "qpr"], default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for the isomorphism search")
    common.add_argument("--n", type=_int_tuple, help="block sizes, e.g. 3,2 (overrides extend)")
    common.add_argument("--stair", type=_staircase, help="staircase rows, e.g. '1,2,2;1,2'")

    p = _Parser(prog="harada-quivers", description="Block extensions and Harada algebras from quivers with relations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="validate and build the algebra")
    sub.add_parser("extend", parents=[common], help="quiver with relations of the block extension")
    sub.add_parser("qf", parents=[common], help="quasi-Frobenius test and Nakayama permutation")
    sub.add_parser("harada", parents=[common], help="presentation of the upper staircase factor algebra")
    sub.add_parser("verify", parents=[common], help="cross-check everything against the matrix model")
    return p


def _load(args) -> dsl.SourceFile:
    F = field_from_spec(args.field)
    src = dsl.parse_file(args.file, F)
    diag = validate_presentation(src.presentation)
    if not diag.ok:
        raise UsageError("; ".join(diag.problems))
    if args.n is not None:
        src.block = BlockSpec(args.n)
    if args.stair is not None:
        src.staircase = StaircaseSpec(args.stair)
    m = src.presentation.quiver.num_vertices
    if src.block is not None and len(src.block.n) != m:
        raise UsageError(f"block spec needs {m} sizes")
    return src


def _need_format(args, allowed):
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for '{args.command}'")


def cmd_check(args, src) -> tuple[str, int]:
    _need_format(args, ("text", "json", "dot", "qpr"))
    pres = src.presentation
    if args.format == "dot":
        return dsl.emit_dot(pres.quiver, pres.name), EXIT_OK
    if args.format == "qpr":
        return dsl.emit_canonical(pres, src.block, src.staircase, src.socle_paths), EXIT_OK
    R = build_algebra(pres, args.max_len)
    aq = quiver_of_algebra(R)
    if args.format == "json":
        data = dsl.presentation_to_dict(pres)
        data.update(dims={"R": R.dim}, basis=R.labels, loewy_length=loewy_length(R),
                    arrow_counts=[{"src": R.vertices[i], "tgt": R.vertices[j], "count": c}
                                  for (i, j), c in sorted(aq.counts.items())])
        return dsl.emit_json(data), EXIT_OK
    q = pres.quiver
    lines = [f"{pres.name}: {q.num_vertices} vertices, {len(q.arrows)} arrows, {len(pres.relations)} relations",
             f"field: {pres.field.name}",
             f"dim = {R.dim}",
             f"Loewy length = {loewy_length(R)}",
             "basis: " + ", ".join(R.labels),
             "arrows of the algebra's quiver:"]
    for (i, j), c in sorted(aq.counts.items()):
        lines.append(f"  {R.vertices[i]} -> {R.vertices[j]}: {c}")
    return "\n".join(lines) + "\n", EXIT_OK


def _block(args, src) -> BlockSpec:
    if src.block is None:
        raise UsageError("no block sizes: add an extend(...) clause or pass --n")
    return src.block


def _text_presentation(pres, bq=None) -> list[str]:
    q = pres.quiver
    lines = [f"{pres.name}: {q.num_vertices} vertices, {len(q.arrows)} arrows, {len(pres.relations)} relations",
             "vertices: " + ", ".join(q.vertices), "arrows:"]
    for a in q.arrows:
        lines.append(f"  {dsl.pretty_arrow(a.label)}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    lines.append("relations:")
    for r in pres.relations:
        lines.append(f"  {dsl.pretty_combination(r, pres.field)} = 0")
    return lines


def cmd_extend(args, src) -> tuple[str, int]:
    spec = _block(args, src)
    bq = block_quiver(src.presentation, spec)
    pres2 = block_presentation_from(bq)
    if args.format == "dot":
        return dsl.emit_dot(bq.quiver, pres2.name), EXIT_OK
    if args.format == "qpr":
        return dsl.emit_canonical(pres2), EXIT_OK
    if args.format == "json":
        return dsl.emit_json(pres2, block_quiver=bq), EXIT_OK
    return "\n".join(_text_presentation(pres2, bq)) + "\n", EXIT_OK


def cmd_qf(args, src) -> tuple[str, int]:
    _need_format(args, ("text", "json"))
    R = build_algebra(src.presentation, args.max_len)
    check = qf_check(R)
    if args.format == "json":
        data = {"qf": check.is_qf, "problems": check.problems}
        if check.is_qf:
            data["sigma"] = {R.vertices[i]: R.vertices[s] for i, s in enumerate(check.permutation.sigma)}
        return dsl.emit_json(data), EXIT_OK
    if not check.is_qf:
        return "not quasi-Frobenius:\n" + "".join(f"  {p}\n" for p in check.problems), EXIT_OK
    pairs = ", ".join(f"{R.vertices[i]} -> {R.vertices[s]}" for i, s in enumerate(check.permutation.sigma))
    return f"quasi-Frobenius; Nakayama permutation: {pairs}\n", EXIT_OK


def cmd_harada(args, src) -> tuple[str, int]:
    spec = _block(args, src)
    if src.staircase is None:
        raise UsageError("no staircase data: add a staircase {...} clause or pass --stair")
    hc = harada_construction(src.presentation, spec, src.staircase, thetas=src.socle_paths, max_len=args.max_len)
    pres = hc.presentation
    if args.format == "dot":
        return dsl.emit_dot(pres.quiver, pres.name), EXIT_OK
    if args.format == "qpr":
        return dsl.emit_canonical(pres), EXIT_OK
    q0 = src.presentation.quiver
    Q = pres.quiver
    if args.format == "json":
        gens = [{"vertex": q0.vertices[g.i], "j": g.j, "u": g.u, "v": g.v,
                 "path": [Q.arrows[k].label for k in g.path.arrows]} for g in hc.generators]
        return dsl.emit_json(pres, block_quiver=hc.block,
                             breakpoints={q0.vertices[i]: list(ls) for i, ls in enumerate(hc.breakpoints.l)},
                             socle_paths={q0.vertices[i]: [q0.arrows[k].label for k in p.arrows]
                                          for i, p in enumerate(hc.thetas)},
                             generators=gens), EXIT_OK
    lines = []
    for i, ls in enumerate(hc.breakpoints.l):
        lines.append(f"breakpoints at {q0.vertices[i]}: " + ", ".join(map(str, ls[1:])))
    for i, p in enumerate(hc.thetas):
        lines.append(f"socle path at {q0.vertices[i]}: {q0.format_path(p)}")
    lines.append("additional relations:")
    for g in hc.generators:
        word = "·".join(dsl.pretty_arrow(Q.arrows[k].label) for k in g.path.arrows)
        lines.append(f"  {word} = 0")
    lines.extend(_text_presentation(pres))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args, src) -> tuple[str, int]:
    _need_format(args, ("text", "json"))
    res = verify_pipeline(src.presentation, src.block, src.staircase, src.socle_paths,
                          PipelineConfig(max_len=args.max_len, seed=args.seed))
    code = EXIT_OK if res.ok else EXIT_MISMATCH
    if args.format == "json":
        return dsl.emit_json(res), code
    order = ["R", "P", "P/X"]
    lines = ["dims: " + " -> ".join(f"{k} {res.dims[k]}" for k in order if k in res.dims)]
    if "X" in res.dims:
        lines.append(f"dim X = {res.dims['X']}")
    if res.info.get("qf"):
        lines.append("Nakayama permutation: " + ", ".join(res.info["sigma"]))
    else:
        lines.append("input is not quasi-Frobenius; Harada checks skipped")
    for rep in res.reports:
        lines.append(f"[{'ok' if rep.ok else 'FAIL'}] {rep.title}")
        for leg in rep.legs:
            mark = {True: "ok", False: "FAIL", None: "undecided"}[leg.ok]
            lines.append(f"    {mark:9s} {leg.name}" + (f"  ({leg.detail})" if leg.detail else ""))
    lines.append("verification passed" if res.ok else "verification FAILED")
    return "\n".join(lines) + "\n", code


COMMANDS = {"check": cmd_check, "extend": cmd_extend, "qf": cmd_qf, "harada": cmd_harada, "verify": cmd_verify}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        src = _load(args)
        text, code = COMMANDS[args.command](args, src)
    except (NotFiniteDimensionalError, NotQFError, NoSoclePathError, UnsupportedFieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (dsl.ParseError, QuiverError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
