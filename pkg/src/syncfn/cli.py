"""Command line front end.

Exit codes: 0 on success, 1 when a verification finds a mismatch, 2 on
usage errors (bad flags or parameters outside a construction's range).
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import (
    FabdParams, division_sync, mult_add_sync, mult_sync, orbit, prefix_accel, prefix_fabd,
    suffix_fabd, default_pad_limit,
)
from .closure import ClosureMachine
from .numerals import decode_lsd, decode_msd, encode_lsd, encode_msd, format_word
from .powers import composed_power, explicit_power, mu, section_int
from .render import RenderSpec, render_cone, render_machine
from .synchronized import apply_suffix, identity_prefix, load_machine
from .verify import KINDS, run_verify


class UsageError(Exception):
    pass


def _params(args) -> FabdParams:
    if args.accel:
        return FabdParams.accelerated(args.a, args.b)
    return FabdParams(args.a, args.b, args.d)


def _add_params(p, need_b=True):
    p.add_argument("--a", type=int, default=3)
    if need_b:
        p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--accel", action="store_true", help="halve the odd branch (d = 2)")


def _add_output(p, table=False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="print the machine as JSON (default)")
    g.add_argument("--dot", action="store_true", help="print Graphviz DOT with fixed positions")
    if table:
        g.add_argument("--table", action="store_true")


def _emit(machine, args, name):
    if getattr(args, "dot", False):
        layout = "circular" if getattr(machine, "positions", None) else "layered"
        sys.stdout.write(render_machine(machine, RenderSpec(layout=layout), name=name))
    else:
        print(json.dumps(machine.to_json(), indent=1))


# -- commands -----------------------------------------------------------------


def cmd_build(args) -> int:
    kind = args.kind
    if kind == "mult":
        m = mult_sync(args.d, args.a)
    elif kind == "multadd":
        m = mult_add_sync(args.d, args.a, args.b)
    elif kind == "div":
        m = division_sync(args.a, args.d, args.r, method=args.method)
    elif kind == "suffix-f":
        m = suffix_fabd(FabdParams(args.a, args.b, args.d))
    elif kind == "prefix-f":
        m = prefix_fabd(_params(args))
    else:
        m = prefix_accel(args.a, args.b)
    _emit(m, args, kind)
    return 0


def cmd_eval(args) -> int:
    params = _params(args)
    if args.kind == "suffix":
        m = suffix_fabd(params)
        word = encode_lsd(args.k, params.d)
        out = apply_suffix(m, word, args.pad if args.pad is not None else default_pad_limit(params))
        value = None if out is None else decode_lsd(out, params.d)
        base = params.d
    else:
        base = params.base
        word = encode_msd(args.k, base)
        if args.kind == "prefix":
            out = prefix_fabd(params).apply(word)
        elif args.kind == "power":
            out = explicit_power(params, args.n).apply(word)
        else:
            out = ClosureMachine(params).eval_iterations(word, args.n)
        value = None if out is None else decode_msd(out, base)
    if out is None:
        print(f"{format_word(word, base, args.empty)} rejected")
        return 1
    print(f"{format_word(word, base, args.empty)} -> {format_word(out, base, args.empty)}  ({args.k} -> {value})")
    return 0


def cmd_power(args) -> int:
    params = _params(args)
    m = explicit_power(params, args.n)
    status = 0
    if args.verify_bound:
        report = run_verify("power", params, args.n, args.verify_bound)
        print(report.summary(), file=sys.stderr)
        status = 0 if report.ok else 1
    if args.table:
        d, base = params.divisor, params.base
        print("i\tf^n(i)\tmu(i)\tomega(i)")
        for w in sorted(m.states, key=lambda w: section_int(w, d)):
            i = section_int(w, d)
            value = decode_msd(m.terminal[w], base)
            print(f"{i}\t{value}\t{mu(params, args.n, i)}\t{format_word(m.terminal[w], base, args.empty)}")
    elif args.composed:
        _emit(composed_power(params, args.n), args, f"power{args.n}")
    else:
        _emit(m, args, f"power{args.n}")
    return status


def cmd_closure(args) -> int:
    m = ClosureMachine(_params(args))
    if args.action == "eval":
        print(m.eval_integer(args.k, args.n))
        return 0
    if args.action == "section":
        sec = m.section_export(args.n)
        if args.table:
            for w in sorted(sec.machine.states, key=lambda w: section_int(w, m.d)):
                print(f"{format_word(w, m.d, args.empty)}\t{format_word(sec.machine.terminal[w], m.base, args.empty)}")
        elif args.dot:
            sys.stdout.write(render_machine(sec.machine, RenderSpec(layout="layered"), name=f"section{args.n}"))
        else:
            data = sec.machine.to_json()
            data["cone_edges"] = [[list(p), c, list(q)] for p, c, q in sec.cone_edges]
            print(json.dumps(data, indent=1))
        return 0
    hits = m.find_cycles(args.n, args.bound)
    for hit in hits:
        line = f"{hit.k}: orbit {' -> '.join(map(str, hit.orbit))}"
        if hit.witness is not None:
            w = hit.witness
            line += (f"; path {format_word(w.u + w.v, m.base, args.empty)} / {format_word(w.output, m.base, args.empty)}"
                     f" to {format_word(w.end, m.d, args.empty)}, terminal {format_word(w.v, m.base, args.empty)}")
        print(line)
    return 0


def cmd_verify(args) -> int:
    report = run_verify(args.kind, _params(args), args.n, args.bound)
    print(report.summary())
    for k, want, got in report.mismatches[:20]:
        print(f"  {k}: expected {want}, got {got}")
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    spec = RenderSpec(layout=args.layout or "circular")
    if args.what == "div":
        text = render_machine(division_sync(args.a, args.d, args.r), spec, name=f"div_{args.a}_{args.d}")
    elif args.what == "identity":
        text = render_machine(identity_prefix(args.a), spec, name="identity")
    elif args.what == "cone":
        text = render_cone(ClosureMachine(_params(args)), args.n, RenderSpec(layout="cone"))
    else:
        if not args.file:
            raise UsageError("render json needs a FILE argument")
        with open(args.file) as fh:
            machine = load_machine(json.load(fh))
        text = render_machine(machine, spec, name=args.file)
    sys.stdout.write(text)
    return 0


def cmd_orbit(args) -> int:
    params = _params(args)
    points = orbit(params, args.k, args.steps)
    print("step\tvalue\tbranch\tcount")
    count = 0
    for i, x in enumerate(points):
        if i == args.steps:
            print(f"{i}\t{x}")
            break
        branch = "div" if x % params.d == 0 else "mul"
        count += branch == "mul"
        print(f"{i}\t{x}\t{branch}\t{count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syncfn", description="Transducers for n -> n/d or a*n + b.")
    parser.add_argument("--empty", default="ε", choices=["ε", "0"],
                        help="how to print the empty word (the numeral of 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build one of the basic machines")
    p.add_argument("kind", choices=["mult", "multadd", "div", "suffix-f", "prefix-f", "prefix-accel"])
    _add_params(p)
    p.add_argument("--r", type=int, default=0, help="remainder accepted by the division machine")
    p.add_argument("--method", choices=["equation", "incremental"], default="equation")
    _add_output(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="evaluate a machine on an integer")
    p.add_argument("kind", choices=["prefix", "suffix", "power", "closure"])
    _add_params(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--pad", type=int, default=None, help="zero padding for suffix machines")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("power", help="the machine for the n-th iterate")
    _add_params(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-bound", type=int, default=0)
    p.add_argument("--composed", action="store_true", help="build by repeated composition")
    _add_output(p, table=True)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("closure", help="the machine for all iterates at once")
    _add_params(p)
    csub = p.add_subparsers(dest="action", required=True)
    c = csub.add_parser("eval")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("section")
    c.add_argument("--n", type=int, required=True)
    _add_output(c, table=True)
    c = csub.add_parser("cycles")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--bound", type=int, default=100)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("verify", help="sweep a machine against the arithmetic")
    p.add_argument("kind", choices=KINDS)
    _add_params(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--bound", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="DOT output with fixed positions")
    p.add_argument("what", choices=["div", "cone", "identity", "json"])
    p.add_argument("file", nargs="?")
    _add_params(p)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--layout", choices=["circular", "layered"])
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("orbit", help="print an orbit with branch flags")
    _add_params(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_orbit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, UsageError) as exc:
        print(f"syncfn: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
