"""Line-oriented front end: parse problem files describing a carrier,
operations, relations and relation pairs, run library computations or checks,
and emit canonical text or JSON.

Exit codes: 0 success/pass, 1 check failed, 2 refused by a complexity cap,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .core import (
    CapExceeded,
    Carrier,
    DomainError,
    OpFamily,
    Operation,
    PairFamily,
    Relation,
    RelationPair,
    enc,
)
from .generation import (
    clone_nary_part,
    decide_projections,
    gamma_fixpoint,
    semiclone_nary_part,
    semigroup_generate,
)
from .preserve import inv, invp, pol, polp, preserves, sloc_ops
from .relpairs import (
    SuperpositionSpec,
    general_superposition,
    rpclone_generate,
    sloc_pairs,
)
from . import harness


class ProblemError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class Problem:
    carrier: Carrier
    ops: dict[str, Operation] = field(default_factory=dict)
    rels: dict[str, Relation] = field(default_factory=dict)
    pairs: dict[str, RelationPair] = field(default_factory=dict)


def _parse_tuple(text: str, arity: int, k: int, line: int, col: int) -> tuple[int, ...]:
    if text == "eps":
        if arity != 0:
            raise ProblemError(line, col, "'eps' only denotes the empty tuple at arity 0")
        return ()
    if len(text) != arity:
        raise ProblemError(line, col, f"tuple '{text}' does not have arity {arity}")
    out = []
    for ch in text:
        if not ch.isdigit() or int(ch) >= k:
            raise ProblemError(line, col, f"tuple entry '{ch}' outside carrier of size {k}")
        out.append(int(ch))
    return tuple(out)


def parse_problem(text: str) -> Problem:
    carrier: Carrier | None = None
    problem: Problem | None = None
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        col = raw.index(keyword) + 1
        if keyword == "domain":
            if carrier is not None:
                raise ProblemError(lineno, col, "duplicate 'domain' line")
            try:
                k = int(rest.strip())
            except ValueError:
                raise ProblemError(lineno, col, f"invalid carrier size '{rest.strip()}'")
            if k < 0:
                raise ProblemError(lineno, col, "carrier size must be >= 0")
            carrier = Carrier(k)
            problem = Problem(carrier)
            continue
        if carrier is None or problem is None:
            raise ProblemError(lineno, col, "'domain <k>' must come first")
        if "=" not in rest:
            raise ProblemError(lineno, col, "expected '=' in declaration")
        head, value = rest.split("=", 1)
        head = head.strip()
        value = value.strip()
        if keyword in ("op", "rel"):
            if "/" not in head:
                raise ProblemError(lineno, col, f"expected '<name>/<arity>', got '{head}'")
            name, arity_text = head.rsplit("/", 1)
            name = name.strip()
            try:
                arity = int(arity_text)
            except ValueError:
                raise ProblemError(lineno, col, f"invalid arity '{arity_text}'")
            if arity < 0:
                raise ProblemError(lineno, col, "arity must be >= 0")
        else:
            name = head
            arity = -1
        if not name or not name.replace("_", "").replace("-", "").isalnum():
            raise ProblemError(lineno, col, f"invalid name '{name}'")
        if name in names:
            raise ProblemError(lineno, col, f"duplicate name '{name}'")
        if keyword == "op":
            expected = carrier.k ** arity
            if len(value) != expected or not all(c.isdigit() for c in value):
                raise ProblemError(
                    lineno, col,
                    f"operation table must be {expected} digits, got '{value}'")
            table = tuple(int(c) for c in value)
            if any(v >= carrier.k for v in table):
                raise ProblemError(lineno, col, "table value outside carrier")
            problem.ops[name] = Operation(carrier.k, arity, table)
        elif keyword == "rel":
            if not (value.startswith("{") and value.endswith("}")):
                raise ProblemError(lineno, col, "relation value must be '{ ... }'")
            inner = value[1:-1].strip()
            tuples = []
            if inner:
                for item in inner.split(","):
                    tuples.append(_parse_tuple(item.strip(), arity, carrier.k, lineno, col))
            try:
                problem.rels[name] = Relation.from_tuples(carrier, arity, tuples)
            except DomainError as e:
                raise ProblemError(lineno, col, str(e))
        elif keyword == "pair":
            if not (value.startswith("(") and value.endswith(")")):
                raise ProblemError(lineno, col, "pair value must be '(<rel>, <rel>)'")
            inner = value[1:-1]
            pieces = [x.strip() for x in inner.split(",")]
            if len(pieces) != 2:
                raise ProblemError(lineno, col, "pair value must name exactly two relations")
            for piece in pieces:
                if piece not in problem.rels:
                    raise ProblemError(lineno, col, f"unknown relation '{piece}'")
            rho, rho_prime = problem.rels[pieces[0]], problem.rels[pieces[1]]
            try:
                problem.pairs[name] = RelationPair.of(rho, rho_prime)
            except DomainError as e:
                raise ProblemError(lineno, col, str(e))
        else:
            raise ProblemError(lineno, col, f"unknown keyword '{keyword}'")
        names.add(name)
    if problem is None:
        raise ProblemError(1, 1, "missing 'domain <k>' line")
    return problem


def format_tuple(t: tuple[int, ...]) -> str:
    return "eps" if not t else "".join(str(x) for x in t)


def format_op(f: Operation) -> str:
    return f"op/{f.arity} = " + "".join(str(v) for v in f.table)


def format_rel(r: Relation) -> str:
    items = [format_tuple(t) for t in r.tuples()]
    return f"rel/{r.arity} = {{" + ",".join(items) + "}"


def format_pair(p: RelationPair) -> str:
    return f"pair/{p.arity} = (" + format_rel(p.rho) + ", " + format_rel(p.rho_prime) + ")"


def op_to_obj(f: Operation) -> dict:
    return {"arity": f.arity, "table": "".join(str(v) for v in f.table)}


def rel_to_obj(r: Relation) -> dict:
    return {"arity": r.arity, "tuples": [format_tuple(t) for t in r.tuples()]}


def pair_to_obj(p: RelationPair) -> dict:
    return {"arity": p.arity, "rho": rel_to_obj(p.rho), "rho_prime": rel_to_obj(p.rho_prime)}


def serialise_problem(problem: Problem) -> str:
    lines = [f"domain {problem.carrier.k}"]
    for name in sorted(problem.ops):
        f = problem.ops[name]
        lines.append(f"op {name}/{f.arity} = " + "".join(str(v) for v in f.table))
    for name in sorted(problem.rels):
        r = problem.rels[name]
        items = ",".join(format_tuple(t) for t in r.tuples())
        lines.append(f"rel {name}/{r.arity} = {{{items}}}")
    for name in sorted(problem.pairs):
        p = problem.pairs[name]
        rho_name = next(n for n in sorted(problem.rels) if problem.rels[n] == p.rho)
        rp_name = next(n for n in sorted(problem.rels) if problem.rels[n] == p.rho_prime)
        lines.append(f"pair {name} = ({rho_name}, {rp_name})")
    return "\n".join(lines) + "\n"


def _named(problem: Problem, kind: str, names: list[str]):
    table = {"ops": problem.ops, "rels": problem.rels, "pairs": problem.pairs}[kind]
    out = []
    for n in names:
        if n not in table:
            raise ProblemError(0, 0, f"unknown {kind[:-1]} name '{n}'")
        out.append(table[n])
    return out


def _emit(args, text_lines: list[str], obj) -> None:
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finclone",
        description="Computations with finitary operations and relation pairs "
                    "on small finite carriers.")
    parser.add_argument("command", choices=[
        "preserves", "polp", "invp", "pol", "inv", "gen-semiclone", "gen-clone",
        "gen-semigroup", "sloc", "sloc-pairs", "enc", "gamma", "superpose",
        "rpclone", "decide-proj", "check"])
    parser.add_argument("name", nargs="?", default=None,
                        help="check name for the 'check' command")
    parser.add_argument("--problem", help="path to a problem file ('-' for stdin)")
    parser.add_argument("--ops", nargs="*", default=[], help="operation names")
    parser.add_argument("--rels", nargs="*", default=[], help="relation names")
    parser.add_argument("--pairs", nargs="*", default=[], help="pair names")
    parser.add_argument("--arity", type=int, default=None)
    parser.add_argument("--max-arity", type=int, default=None)
    parser.add_argument("--s", type=int, default=None)
    parser.add_argument("--intermediate-cap", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--caps", type=int, default=2 ** 20,
                        help="complexity cap before refusing")
    parser.add_argument("--k", type=int, default=None,
                        help="carrier size when no problem file is given")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--symbol", default=None,
                        help="iterative operator or superposition data")
    parser.add_argument("--spec", default=None,
                        help="superposition spec as JSON: "
                             '{"mu":..,"m":..,"beta":[..],"alphas":[[..],..]}')
    parser.add_argument("--seed-tuples", nargs="*", default=[],
                        help="seed tuples for the gamma command")
    parser.add_argument("--ksize", type=int, default=None,
                        help="index-set size for the gamma command")
    return parser


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ProblemError(0, 0, message)


def run_command(args) -> int:
    problem: Problem | None = None
    if args.problem:
        text = sys.stdin.read() if args.problem == "-" else open(args.problem).read()
        problem = parse_problem(text)
    k = problem.carrier.k if problem else args.k
    if args.command != "check":
        _require(problem is not None, "a problem file is required (--problem)")
    cap = args.caps

    if args.command == "preserves":
        _require(len(args.ops) == 1 and len(args.pairs) == 1,
                 "preserves needs exactly one --ops name and one --pairs name")
        f = _named(problem, "ops", args.ops)[0]
        p = _named(problem, "pairs", args.pairs)[0]
        result = preserves(f, p)
        _emit(args, ["true" if result else "false"], {"preserves": result})
        return 0

    if args.command in ("polp", "pol"):
        _require(args.arity is not None, "--arity is required")
        if args.command == "polp":
            pairs = _named(problem, "pairs", args.pairs)
            fam = polp(pairs, args.arity, k, cap)
        else:
            rels = _named(problem, "rels", args.rels)
            fam = pol(rels, args.arity, k, cap)
        _emit(args, [format_op(f) for f in fam], {"ops": [op_to_obj(f) for f in fam]})
        return 0

    if args.command in ("invp", "inv"):
        _require(args.arity is not None, "--arity is required")
        ops = _named(problem, "ops", args.ops)
        if args.command == "invp":
            fam = invp(ops, args.arity, k, cap)
            _emit(args, [format_pair(p) for p in fam],
                  {"pairs": [pair_to_obj(p) for p in fam]})
        else:
            rels = inv(ops, args.arity, k, cap)
            _emit(args, [format_rel(r) for r in rels],
                  {"rels": [rel_to_obj(r) for r in rels]})
        return 0

    if args.command in ("gen-semiclone", "gen-clone"):
        _require(args.arity is not None, "--arity is required")
        ops = _named(problem, "ops", args.ops)
        part = (semiclone_nary_part if args.command == "gen-semiclone"
                else clone_nary_part)(ops, args.arity, k, cap)
        _emit(args, [format_op(f) for f in part], {"ops": [op_to_obj(f) for f in part]})
        return 0

    if args.command == "gen-semigroup":
        ops = _named(problem, "ops", args.ops)
        fam = semigroup_generate(ops)
        _emit(args, [format_op(f) for f in fam], {"ops": [op_to_obj(f) for f in fam]})
        return 0

    if args.command == "sloc":
        _require(args.arity is not None and args.s is not None,
                 "--arity and --s are required")
        ops = _named(problem, "ops", args.ops)
        fam = sloc_ops(ops, args.s, args.arity, k, cap)
        _emit(args, [format_op(f) for f in fam], {"ops": [op_to_obj(f) for f in fam]})
        return 0

    if args.command == "sloc-pairs":
        _require(args.arity is not None and args.s is not None,
                 "--arity and --s are required")
        pairs = _named(problem, "pairs", args.pairs)
        fam = sloc_pairs(pairs, args.s, args.arity, k, cap)
        _emit(args, [format_pair(p) for p in fam],
              {"pairs": [pair_to_obj(p) for p in fam]})
        return 0

    if args.command == "enc":
        pairs = _named(problem, "pairs", args.pairs)
        fam = enc(pairs)
        _emit(args, [format_pair(p) for p in fam],
              {"pairs": [pair_to_obj(p) for p in fam]})
        return 0

    if args.command == "gamma":
        _require(args.ksize is not None, "--ksize is required")
        ops = _named(problem, "ops", args.ops)
        seed = [tuple(int(c) for c in t) if t != "eps" else ()
                for t in args.seed_tuples]
        result = gamma_fixpoint(ops, args.ksize, seed, k, cap)
        r_sorted = sorted(result.R)
        s_sorted = sorted(result.S)
        lines = (["R:"] + ["  " + format_tuple(t) for t in r_sorted]
                 + ["S:"] + ["  " + format_tuple(t) for t in s_sorted]
                 + [f"steps: {result.steps}"])
        _emit(args, lines, {
            "R": [format_tuple(t) for t in r_sorted],
            "S": [format_tuple(t) for t in s_sorted],
            "steps": result.steps,
        })
        return 0

    if args.command == "superpose":
        _require(args.spec is not None, "--spec is required")
        try:
            raw = json.loads(args.spec)
            spec = SuperpositionSpec(
                raw["mu"], raw["m"], tuple(raw["beta"]),
                tuple(tuple(a) for a in raw["alphas"]))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ProblemError(0, 0, f"invalid superposition spec: {e}")
        pairs = _named(problem, "pairs", args.pairs)
        result = general_superposition(spec, pairs, k, cap)
        _emit(args, [format_pair(result)], pair_to_obj(result))
        return 0

    if args.command == "rpclone":
        _require(args.max_arity is not None, "--max-arity is required")
        pairs = _named(problem, "pairs", args.pairs)
        result = rpclone_generate(pairs, args.max_arity, args.intermediate_cap,
                                  k, cap)
        lines = [format_pair(p) for p in result.pairs]
        lines.append(f"intermediate-cap: {result.intermediate_cap}")
        lines.append(f"slice-changed-at-last-cap: "
                     f"{'true' if result.slice_changed_at_last_cap else 'false'}")
        _emit(args, lines, {
            "pairs": [pair_to_obj(p) for p in result.pairs],
            "intermediate_cap": result.intermediate_cap,
            "slice_changed_at_last_cap": result.slice_changed_at_last_cap,
        })
        return 0

    if args.command == "decide-proj":
        ops = _named(problem, "ops", args.ops)
        result = decide_projections(ops, k, cap)
        _emit(args, ["true" if result else "false"], {"decide_proj": result})
        return 0

    if args.command == "check":
        _require(args.name is not None, "check requires a name or 'all'")
        kk = k if k is not None else 2
        try:
            reports = harness.run_checks(args.name, kk, args.seed, cap)
        except KeyError:
            raise ProblemError(0, 0, f"unknown check '{args.name}'")
        lines = []
        failed = False
        refused = False
        for r in reports:
            lines.append(f"{r.name}: {r.verdict} ({r.runtime_ms} ms)")
            if r.verdict == "fail":
                failed = True
                lines.append(f"  counterexample: {json.dumps(r.counterexample, sort_keys=True)}")
            if r.verdict == "refused":
                refused = True
        _emit(args, lines, {"reports": [r.to_dict() for r in reports]})
        if failed:
            return 1
        if refused:
            return 2
        return 0

    raise ProblemError(0, 0, f"unknown command '{args.command}'")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run_command(args)
    except ProblemError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 3
    except (DomainError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 3
    except CapExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
