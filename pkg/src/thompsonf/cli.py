"""Command-line interface: JSON on stdout, JSON error objects on stderr."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .convexity import AuditError, BallResourceError, audit_path, ball, witness_search
from .dynamics import RotationError, apply_rotation, rotation_preconditions
from .element import GENERATORS, Element, StructureError, apply_generator, invert, multiply
from .metric import caret_pairings, fordham_length
from .normalform import NormalForm, NormalFormError, normal_form_to_pair, pair_to_normal_form
from .tree import TreeParseError, dot_body, parse
from .witness import WitnessResourceError, build_witness

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as JSON instead of exiting with text."""

    def error(self, message):
        raise CliError("usage_error", message, usage=self.format_usage().strip())


def _read_text(arg: Optional[str]) -> str:
    """Literal argument text, the contents of a file it names, or stdin."""
    if arg is None or arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _load_element(arg: Optional[str]) -> Element:
    text = _read_text(arg)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("parse_error", f"malformed element JSON: {exc.msg}",
                       offset=exc.pos, line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict) or not {"neg", "pos"} <= data.keys():
        raise CliError("parse_error", 'element JSON must be an object with "neg" and "pos"')
    for field in ("neg", "pos"):
        if not isinstance(data[field], str):
            raise CliError("parse_error", f'"{field}" must be a bitstring', field=field)
    try:
        return Element.from_dict(data)
    except TreeParseError as exc:
        bad = "pos"
        try:
            parse(data["neg"])
        except TreeParseError:
            bad = "neg"
        raise CliError("parse_error", str(exc), field=bad, offset=exc.offset) from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_len(args) -> None:
    e = _load_element(args.element)
    print(fordham_length(e))
    if args.verbose:
        print("caret\tneg\tpos\tweight")
        for i, (a, b, w) in enumerate(caret_pairings(e)):
            print(f"{i}\t{a}\t{b}\t{w}")


def cmd_nf(args) -> None:
    print(pair_to_normal_form(_load_element(args.element)))


def cmd_pair(args) -> None:
    text = _read_text(args.normal_form).strip()
    try:
        nf = NormalForm.parse(text)
    except NormalFormError as exc:
        raise CliError("parse_error", str(exc)) from None
    _emit(normal_form_to_pair(nf).to_dict())


def cmd_mul(args) -> None:
    _emit(multiply(_load_element(args.left), _load_element(args.right)).to_dict())


def cmd_inv(args) -> None:
    _emit(invert(_load_element(args.element)).to_dict())


def cmd_apply(args) -> None:
    e = _load_element(args.element)
    if args.force_general:
        out = apply_generator(e, args.gen)
    elif args.force_rotation:
        pre = rotation_preconditions(e, args.gen)
        if not pre.ok:
            raise CliError("rotation_error", f"{args.gen} is not applicable as a rotation",
                           structural=pre.structural, keeps_reduced=pre.keeps_reduced)
        out = apply_rotation(e, args.gen)
    else:
        pre = rotation_preconditions(e, args.gen)
        out = apply_rotation(e, args.gen) if pre.ok else apply_generator(e, args.gen)
    _emit(out.to_dict())


def cmd_ball(args) -> None:
    b = ball(args.n, bound=args.bound)
    if args.emit_distances:
        for key, d in b.members.items():
            _emit({"key": key, "distance": d})
    else:
        mismatches = sum(1 for key, d in b.members.items()
                         if fordham_length(b.elements[key]) != d)
        _emit({"n": b.n, "size": len(b), "sphere_sizes": b.sphere_sizes,
               "length_mismatches": mismatches})
    if args.plot:
        from .plotting import plot_sphere_sizes
        plot_sphere_sizes(b.sphere_sizes, args.plot)


def cmd_witness(args) -> None:
    w = build_witness(args.k, max_k=args.max_k)
    _emit({"element": w.element.to_dict(), "metadata": w.metadata()})


def cmd_acfalsify(args) -> None:
    w = build_witness(args.k, max_k=args.max_k)
    cap = args.k + 4 if args.cap is None else args.cap
    rep = witness_search(w, cap, radius=args.radius, jobs=args.jobs,
                         time_budget=args.time_budget)
    out = rep.to_dict()
    out["witness"] = w.metadata()
    _emit(out)
    if args.plot:
        from .plotting import plot_search
        plot_search(rep, args.plot)


def cmd_audit(args) -> None:
    w = build_witness(args.k, max_k=args.max_k)
    rep = audit_path(w, args.m, args.eta)
    _emit(rep.to_dict())
    if args.plot:
        from .plotting import plot_audit
        plot_audit(rep, args.plot)


def cmd_dot(args) -> None:
    e = _load_element(args.element)
    lines = ["digraph pair {", "  node [fontname=Helvetica];"]
    for name, t in (("neg", e.neg), ("pos", e.pos)):
        lines.append(f"  subgraph cluster_{name} {{")
        lines.append(f'    label="{name}";')
        lines.extend("    " + line for line in dot_body(t, prefix=f"{name}_"))
        lines.append("  }")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thompsonf", description="Exact computation in Thompson's group F.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    elem_help = "element JSON text, a file holding it, or '-' for stdin (default)"

    s = sub.add_parser("len", help="word length of an element")
    s.add_argument("element", nargs="?", help=elem_help)
    s.add_argument("--verbose", "-v", action="store_true",
                   help="also print per-caret type pairs and weights")
    s.set_defaults(func=cmd_len)

    s = sub.add_parser("nf", help="normal form of an element")
    s.add_argument("element", nargs="?", help=elem_help)
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("pair", help="element JSON from a normal form such as 'x0^2 x1 x0^-1'")
    s.add_argument("normal_form", nargs="?")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("mul", help="product of two elements")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("inv", help="inverse of an element")
    s.add_argument("element", nargs="?", help=elem_help)
    s.set_defaults(func=cmd_inv)

    s = sub.add_parser("apply", help="right-multiply by a generator")
    s.add_argument("element", nargs="?", help=elem_help)
    s.add_argument("--gen", required=True, choices=GENERATORS)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--force-general", action="store_true",
                      help="always use tree-pair multiplication")
    mode.add_argument("--force-rotation", action="store_true",
                      help="use the rotation; fail if it does not apply")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("ball", help="breadth-first ball about the identity")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit-distances", action="store_true",
                   help="JSON lines of canonical form and distance")
    s.add_argument("--bound", type=int, default=7, help="largest radius allowed")
    s.add_argument("--plot", metavar="PATH", help="write a sphere-size figure")
    s.set_defaults(func=cmd_ball)

    def witness_args(s):
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--max-k", type=int, default=5, help="refuse larger k")

    s = sub.add_parser("witness", help="witness element of the family C(k)")
    witness_args(s)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("acfalsify", help="inside-ball search between w x0 and w x0^-1")
    witness_args(s)
    s.add_argument("--cap", type=int, help="maximum path length (default k+4)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--radius", type=int, help="ball radius (default |w|-1)")
    s.add_argument("--time-budget", type=float, help="seconds before the search stops")
    s.add_argument("--plot", metavar="PATH", help="write a histogram of tracked-caret exits")
    s.set_defaults(func=cmd_acfalsify)

    s = sub.add_parser("audit", help="caret audit of the path w x0^m eta")
    witness_args(s)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--eta", required=True, help="generator word such as 'X0x1'")
    s.add_argument("--plot", metavar="PATH", help="write the length profile")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("dot", help="Graphviz DOT for both trees of an element")
    s.add_argument("element", nargs="?", help=elem_help)
    s.add_argument("--out", help="write to this file instead of stdout")
    s.set_defaults(func=cmd_dot)
    return p


_ERROR_KINDS = (
    (TreeParseError, "parse_error"),
    (NormalFormError, "parse_error"),
    (StructureError, "structure_error"),
    (RotationError, "rotation_error"),
    (AuditError, "audit_error"),
    (WitnessResourceError, "resource_error"),
    (BallResourceError, "resource_error"),
    (ValueError, "value_error"),
)


def _report(kind: str, message: str, code: int, **extra) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except CliError as exc:
        code = EXIT_USAGE if exc.kind == "usage_error" else EXIT_ERROR
        return _report(exc.kind, str(exc), code, **exc.extra)
    except OSError as exc:
        return _report("io_error", str(exc), EXIT_ERROR)
    except tuple(cls for cls, _ in _ERROR_KINDS) as exc:
        kind = next(k for cls, k in _ERROR_KINDS if isinstance(exc, cls))
        extra = {}
        if isinstance(exc, TreeParseError):
            extra["offset"] = exc.offset
        if isinstance(exc, AuditError):
            extra["step"] = exc.step_index
        return _report(kind, str(exc), EXIT_ERROR, **extra)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
