"""Command-line front end.

Frames are passed as ``builtin:<name>`` (e.g. ``builtin:F3``, ``builtin:T2``,
``builtin:chain4``), a path to a frame JSON file, or ``-`` for stdin.  Exit
codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import acceptance, construct, decision, formulas as fm, morphisms as M
from . import frames as F
from . import ordinals as O
from . import roach as R
from . import semantics as S
from .errors import RoachkitError

_PARAM_BUILTIN_RE = re.compile(r"^(T|chain)(\d+)$")
_BARE_BUILTIN_RE = re.compile(r"^(F1|F2|F3|G|point|two_fork|T\d+|chain\d+)$")


def _builtin_frame(name: str) -> F.Frame:
    match = _PARAM_BUILTIN_RE.match(name)
    if match:
        return R.builtin(match.group(1), int(match.group(2)))
    return R.builtin(name)


def resolve_frame(arg: str, strict: bool = False) -> F.Frame:
    if arg.startswith("builtin:"):
        return _builtin_frame(arg[len("builtin:"):])
    if _BARE_BUILTIN_RE.match(arg) and not os.path.exists(arg):
        return _builtin_frame(arg)
    if arg == "-":
        return F.frame_from_json(sys.stdin.read())
    with open(arg, "r", encoding="utf-8") as handle:
        text = handle.read()
    frame = F.frame_from_json(text)
    if strict:
        frame = F.normalize_frame(frame.pairs(), frame.size, labels=frame.labels, strict=True)
    return frame


def _emit_frame(frame: F.Frame) -> dict:
    data = {"size": frame.size, "le": [[u, w] for u, w in frame.pairs()]}
    if frame.labels:
        data["labels"] = list(frame.labels)
    return data


def cmd_check(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    memberships = {}
    first = None
    for n in range(1, 6):
        cert = R.splitting_certificate(frame, n)
        memberships[f"R{n}"] = cert is not None
        if cert is not None and first is None:
            first = (n, cert)
    willow = R.is_willow_tree(frame)
    if args.json:
        out = {"memberships": memberships, "willow": willow is not None}
        if first:
            out["splitting_point"] = first[1].s
            out["t_map"] = list(first[1].t)
        if willow:
            out["willow_splitting_point"] = willow.certificate.s
        print(json.dumps(out))
        return 0
    two = R.is_2_roach(frame)
    print("2-roach" if two else "not a 2-roach")
    classes = [name for name, member in memberships.items() if member]
    print("classes:", ", ".join(classes) if classes else "(none up to R5)")
    if first:
        print(f"splitting point: {frame.label(first[1].s)} (world {first[1].s})")
    print("willow tree" if willow else "not a willow tree")
    if not two:
        print("forbidden-configuration witness available: run the witness command")
    return 0


def cmd_witness(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    witness = R.minimal_forbidden_witness(frame)
    payload = {
        "which": witness.which,
        "generator": witness.generator,
        "embedding": list(witness.embedding),
        "map": list(witness.morphism.mapping),
        "target": _emit_frame(witness.morphism.target),
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"forbidden configuration {witness.which} is a p-morphic image of the "
              f"subframe generated at world {witness.generator}")
        print(f"map (subframe world -> {witness.which} world): {list(witness.morphism.mapping)}")
    return 0


def cmd_morphism_find(args) -> int:
    source = resolve_frame(args.source, args.strict)
    target = resolve_frame(args.target, args.strict)
    pm = M.find_onto_p_morphism(source, target)
    if args.json:
        print(json.dumps({"map": list(pm.mapping) if pm else None}))
    else:
        print(" ".join(map(str, pm.mapping)) if pm else "none")
    return 0


def cmd_permissible(args) -> int:
    config = resolve_frame(args.config, args.strict)
    host = resolve_frame(args.host, args.strict)
    found = M.is_permissible(config, host)
    if args.json:
        out = None
        if found:
            out = {"generator": found.generator, "embedding": list(found.embedding),
                   "map": list(found.morphism.mapping)}
        print(json.dumps({"witness": out}))
    elif found:
        print(f"permissible: generator {found.generator}, map {list(found.morphism.mapping)}")
    else:
        print("none")
    return 0


def cmd_eval(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    phi = fm.parse(args.formula)
    valuation = {}
    if args.valuation:
        raw = json.loads(args.valuation)
        if not isinstance(raw, dict) or not all(
            isinstance(ws, list) and all(isinstance(w, int) for w in ws)
            for ws in raw.values()
        ):
            raise RoachkitError('valuation must look like {"p": [0, 2]}')
        valuation = {name: set(worlds) for name, worlds in raw.items()}
    result = sorted(S.extension(S.Model(frame, valuation), phi))
    print(json.dumps(result) if args.json else " ".join(map(str, result)) or "(empty)")
    return 0


def cmd_validate(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    phi = fm.parse(args.formula)
    refutation = S.find_refutation(frame, phi)
    if args.json:
        out = {"valid": refutation is None}
        if refutation is not None:
            valuation, world = refutation
            out["valuation"] = {k: sorted(v) for k, v in valuation.items()}
            out["world"] = world
        print(json.dumps(out))
    elif refutation is None:
        print("valid")
    else:
        valuation, world = refutation
        print(f"invalid at world {world} under {{{', '.join(f'{k}: {sorted(v)}' for k, v in valuation.items())}}}")
    return 0


def cmd_fine_jankov(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    chi = fm.fine_jankov(frame)
    print(json.dumps({"formula": fm.render(chi)}) if args.json else fm.render(chi))
    return 0


def cmd_unravel(args) -> int:
    frame = resolve_frame(args.frame, args.strict)
    if args.mode == "willow":
        result = construct.roach_to_willow(frame)
    else:
        result = construct.unravel_to_quasi_tree(frame)
    print(json.dumps({"tree": _emit_frame(result.tree), "map": list(result.morphism.mapping)}))
    return 0


def cmd_decide(args) -> int:
    phi = fm.parse(args.formula)
    verdict = decision.decide_lr2(phi, args.bound)
    if isinstance(verdict, decision.Refuted):
        payload = {
            "verdict": "refuted",
            "frame": _emit_frame(verdict.model.frame),
            "valuation": {k: sorted(v) for k, v in verdict.model.valuation.items()},
            "world": verdict.world,
        }
        if args.json:
            print(json.dumps(payload))
        else:
            print(f"Refuted on a {verdict.model.frame.size}-world 2-roach at world {verdict.world}")
            print(json.dumps(payload["frame"]))
            print("valuation:", json.dumps(payload["valuation"]))
    else:
        if args.json:
            print(json.dumps({"verdict": "no-countermodel", "bound": verdict.bound}))
        else:
            print(f"NoCountermodelUpTo({verdict.bound})")
    return 0


def cmd_enumerate(args) -> int:
    count = 0
    for frame in F.enumerate_frames(args.size, args.filter):
        count += 1
        if not args.count:
            print(json.dumps(_emit_frame(frame)))
    if args.count:
        print(count)
    return 0


def cmd_ordinal_classify(args) -> int:
    gamma = O.parse_ordinal(args.ordinal)
    logic = O.classify_beta_logic(gamma)
    alpha1 = gamma.least_exponent()
    decomposition = None
    if not alpha1.is_zero():
        gamma_prime, a1 = O.tear_off(gamma)
        decomposition = {"gamma_prime": str(gamma_prime), "alpha_1": str(a1)}
    if args.json:
        print(json.dumps({"ordinal": str(gamma), "logic": logic.describe(),
                          "tear_off": decomposition}))
    else:
        print(logic.describe())
        if decomposition:
            print(f"tear-off: gamma' = {decomposition['gamma_prime']}, "
                  f"alpha_1 = {decomposition['alpha_1']}")
        else:
            print("compact: the compactification is the ordinal itself")
    return 0


def cmd_ordinal_logic_of(args) -> int:
    gamma = O.parse_ordinal(args.ordinal)
    logic = O.logic_of_ordinal_space(gamma)
    print(json.dumps({"ordinal": str(gamma), "logic": logic.short()}) if args.json
          else logic.short())
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run(only=args.only)
    if args.only and not results:
        names = ", ".join(name for name, _ in acceptance.CRITERIA)
        print(f"unknown criterion {args.only!r}; known: {names}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps([
            {"name": r.name, "passed": r.passed, "detail": r.detail,
             "seconds": round(r.seconds, 3)} for r in results
        ]))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail} ({r.seconds:.2f}s)")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roachkit",
        description="finite-frame combinatorics: roaches, willow trees, frame formulas, "
                    "and ordinal-logic classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def frame_cmd(name, fn, help_text, needs_frame=True):
        p = sub.add_parser(name, help=help_text)
        if needs_frame:
            p.add_argument("frame", help="builtin:<name>, a JSON file path, or - for stdin")
        p.add_argument("--json", action="store_true")
        p.add_argument("--strict", action="store_true",
                       help="reject frame files whose relation is not already closed")
        p.set_defaults(fn=fn)
        return p

    frame_cmd("check", cmd_check, "roach-class membership with certificates")
    frame_cmd("witness", cmd_witness, "minimal forbidden configuration with its morphism")

    p = frame_cmd("morphism-find", cmd_morphism_find, "search for an onto p-morphism",
                  needs_frame=False)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)

    p = frame_cmd("permissible", cmd_permissible,
                  "is the config an image of a generated subframe of the host?",
                  needs_frame=False)
    p.add_argument("--config", required=True)
    p.add_argument("--host", required=True)

    p = frame_cmd("eval", cmd_eval, "extension of a formula in a model")
    p.add_argument("--formula", required=True)
    p.add_argument("--valuation", help='JSON like {"p": [0, 2]}')

    p = frame_cmd("validate", cmd_validate, "brute-force frame validity")
    p.add_argument("--formula", required=True)

    frame_cmd("fine-jankov", cmd_fine_jankov, "frame formula of a rooted frame")

    p = frame_cmd("unravel", cmd_unravel, "unravel into a quasi-tree or willow tree")
    p.add_argument("--mode", choices=("quasi-tree", "willow"), default="quasi-tree")

    p = sub.add_parser("decide", help="bounded countermodel search over 2-roaches")
    p.add_argument("--formula", required=True)
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("enumerate", help="frames up to isomorphism")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--filter", choices=F.FILTER_NAMES, default="all")
    p.add_argument("--count", action="store_true", help="print only the class count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("ordinal-classify", help="logic of the compactified ordinal")
    p.add_argument("ordinal", help='e.g. "w^w + w^2*3 + 1"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ordinal_classify)

    p = sub.add_parser("ordinal-logic-of", help="logic of the ordinal space itself")
    p.add_argument("ordinal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ordinal_logic_of)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", help="run a single named criterion")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RoachkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
