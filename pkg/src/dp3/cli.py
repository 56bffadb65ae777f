"""Command-line front end: ``dp3 mutate | formula | verify | render``.

Exit codes: 0 success, 1 a verification failed, 2 usage or construction error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import castle as cs
from .alcove import InvalidAlcove, canonical_path, parse_alcove, word_str
from .closed_form import cluster_at, pretty, run_presentation
from .cluster import parse_word, run_word
from .laurent import to_text
from . import verify as vf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _alcove(text):
    try:
        a = parse_alcove(text)
    except InvalidAlcove as exc:
        raise UsageError(str(exc)) from None
    return a


def cmd_mutate(args, out) -> int:
    word = args.word if args.word is not None else args.word_pos
    if word is None:
        raise UsageError("mutate needs a word, e.g. 'dp3 mutate 123'")
    try:
        word = parse_word(word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    seed, _ = run_word(word)
    pres = run_presentation(word)
    if args.json:
        data = seed.to_json()
        data["word"] = word_str(word)
        data["factored"] = [pretty(*pres.entry(k)) for k in range(6)]
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"word: {word_str(word) or '(empty)'}\n")
    for k in range(6):
        out.write(f"  vertex {k}: {pretty(*pres.entry(k))} = {to_text(seed.vars[k])}\n")
    return EXIT_OK


def cmd_formula(args, out) -> int:
    a = _alcove(args.alcove)
    if a.is_origin():
        pres = run_presentation(())
    else:
        pres = cluster_at(a)
    data = {"alcove": str(a), "region": a.region if not a.is_origin() else "I",
            "path": word_str(canonical_path(a)), "cluster": pres.to_json(),
            "factored": [pretty(*pres.entry(k)) for k in range(6)]}
    if args.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(f"{a} in region {data['region']}, canonical path {data['path'] or '(empty)'}\n")
        for k, text in enumerate(data["factored"]):
            out.write(f"  vertex {k}: {text}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.alcove and args.range is not None:
        raise UsageError("give either --alcove or --range, not both")
    if args.alcove:
        a = _alcove(args.alcove)
        if a.is_origin():
            raise UsageError("the origin (0,0) has no mutated variables to verify")
        alcoves = [a]
    elif args.range is not None:
        if args.range < 0:
            raise UsageError("--range must be non-negative")
        alcoves = vf.alcoves_in_range(args.range)
    else:
        raise UsageError("verify needs --alcove or --range")
    reports = vf.verify_many(alcoves, args.mode, args.seed, cap=args.cap)
    lines = [r.dumps(timing=args.timing) for r in reports]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_render(args, out) -> int:
    if bool(args.tuple) == bool(args.alcove):
        raise UsageError("render needs exactly one of --tuple or --alcove")
    if args.tuple:
        try:
            t = cs.parse_tuple(args.tuple)
        except cs.NotClosed:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        g = cs.trace(t)
        title = str(t)
    else:
        a = _alcove(args.alcove)
        if a.is_origin():
            raise UsageError("the origin (0,0) has no castle")
        asg = vf.assign(a)
        g = asg.castles()[1 if args.sigma else 0]
        title = f"{'sigma ' if args.sigma else ''}castle for {a}: {asg.name}"
    if args.sigma and args.tuple:
        g = cs.symmetry_image(g, "sigma")
        title = "sigma " + title
    svg = g.svg(title=title)
    if args.json:
        svg_path = args.out
        payload = g.to_json()
        if svg_path:
            with open(svg_path, "w") as fh:
                fh.write(svg)
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_OK
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        out.write(svg + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dp3", description="tau-mutations of the dP3 quiver and Aztec castles")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mutate", help="print the ordered cluster after a tau-word")
    m.add_argument("word_pos", nargs="?", metavar="WORD")
    m.add_argument("--word")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_mutate)

    f = sub.add_parser("formula", help="closed-form cluster at an alcove")
    f.add_argument("--alcove", required=True)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_formula)

    v = sub.add_parser("verify", help="check y = c(G) and y' = c(sigma G)")
    v.add_argument("--alcove")
    v.add_argument("--range", type=int, metavar="N")
    v.add_argument("--mode", choices=(vf.EXACT, vf.FINGERPRINT), default=vf.EXACT)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cap", type=int, default=4096)
    v.add_argument("--out")
    v.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG of a castle")
    r.add_argument("--tuple")
    r.add_argument("--alcove")
    r.add_argument("--sigma", action="store_true", help="render the sigma image")
    r.add_argument("--out")
    r.add_argument("--json", action="store_true", help="print the castle as JSON")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"dp3 {args.command}: {exc}\n")
        return EXIT_USAGE
    except (cs.NotClosed, cs.OutOfDomain, cs.SelfIntersecting) as exc:
        sys.stderr.write(f"dp3 {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
