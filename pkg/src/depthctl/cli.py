"""Command line front end: ``depthctl <command> ...``; results are JSON on stdout."""

import argparse
import json
import os
import sys

from .build import program_ideal, program_map, program_rmodule
from .corpus import PROFILES, verify_corpus
from .depth import (
    att_min_at_point, depth_formula, depth_oracle_ext, depth_oracle_koszul, fdim_at_point,
    lambda_independence, lambda_set,
)
from .errors import DepthctlError, InputError, InternalError
from .parser import parse_input
from .primes import INF

METHODS = {"formula": depth_formula, "koszul": depth_oracle_koszul, "ext": depth_oracle_ext}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _num(v):
    return None if v == INF else int(v)


def _prime(P):
    return list(P.ideal.canonical()) if hasattr(P, "ideal") else list(P.canonical())


def _ring(prog):
    return {"field": str(prog.ring.field), "vars": list(prog.ring.vars)}


def _module(prog, args, name, J, default="zero"):
    """Build the module and fix the decomposition seed before anything caches Lambda."""
    M = program_rmodule(prog, name, J, default)
    lambda_set(M, seed=args.seed)
    return M


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_input(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _point(text, ring):
    try:
        return [ring.field(a.strip()) for a in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad point {text!r}") from None


def _depth_json(r):
    w = r.witness
    return {
        "value": _num(r.value),
        "infinite": r.value == INF,
        "witness": None if w is None else {
            "prime": _prime(w.prime),
            "height": _num(w.height),
            "local_depth": _num(w.local_depth),
        },
    }


def cmd_depth(args):
    prog = _load(args.file)
    M = _module(prog, args, args.module, args.J)
    I = program_ideal(prog, args.ideal)
    out = {"command": "depth", "ring": _ring(prog), "seed": args.seed, "method": args.method}
    if args.method == "all":
        results = {name: fn(M, I) for name, fn in METHODS.items()}
        values = {r.value for r in results.values()}
        if len(values) != 1:
            raise InternalError(
                "depth methods disagree: " + ", ".join(f"{k}={_num(r.value)}" for k, r in results.items()))
        out.update(_depth_json(results["formula"]))
        out["methods"] = {k: _num(r.value) for k, r in results.items()}
    else:
        out.update(_depth_json(METHODS[args.method](M, I)))
    if args.json:
        return out
    v = "inf" if out["infinite"] else out["value"]
    lines = [f"depth = {v}"]
    if out["witness"]:
        w = out["witness"]
        lines.append(f"witness ({', '.join(w['prime']) or '0'}): {w['height']} + {w['local_depth']}")
    return "\n".join(lines)


def cmd_lambda(args):
    prog = _load(args.file)
    M = _module(prog, args, args.module, args.J)
    L = lambda_set(M)
    out = {"command": "lambda", "ring": _ring(prog), "seed": args.seed,
           "lambda": [{"generators": _prime(e.prime)} for e in L]}
    if args.json:
        return out
    rows = []
    for e in L:
        gens = ", ".join(_prime(e.prime)) or "0"
        rows.append(f"({gens})  ext {list(e.ext_indices)}  ht {_num(e.height)}  "
                    f"depth {_num(e.local_depth)}")
    return "\n".join(rows) if rows else "(empty)"


def cmd_fdim(args):
    prog = _load(args.file)
    M = _module(prog, args, args.module, args.J)
    I = program_ideal(prog, args.ideal)
    point = _point(args.point, prog.ring)
    v = fdim_at_point(M, I, point, experimental_global=args.experimental_global)
    return {"command": "fdim", "ring": _ring(prog), "seed": args.seed, "point": [str(a) for a in point],
            "experimental_global": args.experimental_global,
            "value": _num(v), "infinite": v == INF}


def cmd_att(args):
    prog = _load(args.file)
    M = program_rmodule(prog, args.module, args.J)
    point = _point(args.point, prog.ring)
    primes = att_min_at_point(M, point, args.index, seed=args.seed)
    return {"command": "att", "ring": _ring(prog), "seed": args.seed, "point": [str(a) for a in point],
            "index": args.index, "primes": [_prime(P) for P in primes]}


def cmd_indep(args):
    prog1 = _load(args.file)
    prog2 = _load(args.file2)
    M1 = _module(prog1, args, args.module, args.J, default="ann")
    M2 = _module(prog2, args, args.module2, args.K, default="ann")
    phi = program_map(prog1, args.map, prog2.ring)
    ok = lambda_independence(M1, M2, phi)
    return {"command": "indep", "ring": _ring(prog1), "source_ring": _ring(prog2), "seed": args.seed,
            "independent": ok,
            "lambda_M": [_prime(P) for P in lambda_set(M1).primes],
            "lambda_N": [_prime(P) for P in lambda_set(M2).primes]}


def cmd_verify(args):
    rep = verify_corpus(args.seed, args.count, args.profile, jobs=args.jobs)
    doc = {"command": "verify", "ring": None}
    doc.update(rep.to_dict())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(_dump(doc))
        summary = {"command": "verify", "ring": None, "seed": rep.seed, "count": rep.count,
                   "profile": rep.profile, "pass": rep.passed, "report": args.report}
    else:
        summary = doc
    code = 0 if rep.passed else 3
    return summary, code


def build_parser():
    p = _Parser(prog="depthctl", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, module=True):
        sp.add_argument("-f", "--file", required=True)
        if module:
            sp.add_argument("-M", "--module", required=True)
            sp.add_argument("-J", default=None, help="ideal J with R = S/J (default: 0)")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("depth")
    common(sp)
    sp.add_argument("-I", "--ideal", required=True)
    sp.add_argument("--method", choices=[*METHODS, "all"], default="formula")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("lambda")
    common(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("fdim")
    common(sp)
    sp.add_argument("-I", "--ideal", required=True)
    sp.add_argument("--point", required=True, help="a1,...,an (use --point=-1,0 for negatives)")
    sp.add_argument("--experimental-global", action="store_true",
                    help="minimum over all of Lambda_M outside V(I), ignoring the point")

    sp = sub.add_parser("att")
    common(sp)
    sp.add_argument("--point", required=True)
    sp.add_argument("-i", "--index", type=int, required=True)

    sp = sub.add_parser("indep")
    common(sp, module=False)
    sp.add_argument("-g", "--file2", required=True)
    sp.add_argument("--map", required=True, help="map in FILE sending FILE2's variables into FILE's ring")
    sp.add_argument("-M", "--module", required=True)
    sp.add_argument("-N", "--module2", required=True)
    sp.add_argument("-J", default=None, help="ideal of FILE (default: Ann M)")
    sp.add_argument("-K", default=None, help="ideal of FILE2 (default: Ann N)")

    sp = sub.add_parser("verify")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--profile", choices=PROFILES, required=True)
    sp.add_argument("--report", default=None)
    sp.add_argument("--jobs", type=int, default=1)
    return p


COMMANDS = {"depth": cmd_depth, "lambda": cmd_lambda, "fdim": cmd_fdim, "att": cmd_att,
            "indep": cmd_indep, "verify": cmd_verify}


def _dump(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _seed_override(args):
    env = os.environ.get("DEPTHCTL_SEED")
    if env is None or env == "":
        return
    try:
        args.seed = int(env)
    except ValueError:
        raise InputError(f"DEPTHCTL_SEED must be an integer, got {env!r}") from None


def run(argv, out=sys.stdout, err=sys.stderr):
    """Run one command; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        _seed_override(args)
        result = COMMANDS[args.command](args)
        code = 0
        if isinstance(result, tuple):
            result, code = result
        out.write(result + "\n" if isinstance(result, str) else _dump(result))
        return code
    except DepthctlError as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}}
        if getattr(exc, "line", None) is not None:
            doc["error"]["line"] = exc.line
            doc["error"]["column"] = exc.column
        err.write(_dump(doc))
        return exc.exit_code
    except RecursionError as exc:
        err.write(_dump({"error": {"type": "InternalError", "message": str(exc), "exit_code": 3}}))
        return 3


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
