"""Command line entry point.

Positional ``key=value`` tokens and flags are interchangeable, e.g.

    nowheredense gen P:n=3,r=1 out.g
    nowheredense types out.g "dist<=1" A=v-part
    nowheredense uqw star.g A=leaves r=2 t=3 --out cert.json
    nowheredense verify star.g cert.json

Exit codes: 0 success, 1 usage or input error, 2 budget exceeded (or target
not reached in guaranteed mode), 3 certificate verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import corpus
from .graph import BudgetExceeded, Graph, InvalidInput, PreconditionError
from .locality import determination_check
from .logic.formula import FormulaSyntaxError, parse_formula
from .logic.ladder import ladder_length
from .logic.types import type_space
from .metrics import (SweepConfig, definable_family, packing_number, rows_to_csv,
                      transversal_number, vc_density_sweep)
from .tuples import (parse_tuples, tuple_outcome_from_json, tuple_outcome_to_json,
                     tuple_uqw_solve, verify_tuple_outcome)
from .uqw import (BEST_EFFORT, CertificateError, TargetNotMet, UqwParams,
                  dumps_certificate, outcome_to_json, uqw_solve)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CERT = 0, 1, 2, 3
SPEC_COMMENT = "# spec: "


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- argument helpers

def load_graph(ref: str) -> tuple[Graph, str | None]:
    """A graph file, or a generator spec such as ``grid:5x5``. Also returns the
    generator spec recorded in the file, if any."""
    path = Path(ref)
    if path.exists():
        text = path.read_text()
        spec = None
        for line in text.splitlines():
            if line.startswith(SPEC_COMMENT):
                spec = line[len(SPEC_COMMENT):].strip()
        return corpus.parse_graph(text), spec
    if ":" in ref:
        return corpus.generate(ref), ref
    raise InvalidInput(f"no graph file {ref!r}")


def vertex_list(g: Graph, spec: str | None, text: str | None) -> list[int]:
    """Comma separated ids, ``@file``, or one of all / leaves / v-part."""
    if text is None:
        raise InvalidInput("missing vertex list")
    if text.startswith("@"):
        text = Path(text[1:]).read_text().replace("\n", ",")
    if text == "all":
        return list(range(g.n))
    if text == "leaves":
        return [v for v in range(g.n) if g.degree(v) == 1]
    if text == "v-part":
        m = re.match(r"P:n=(\d+)", spec or "")
        if not m:
            raise InvalidInput("v-part needs a graph generated from a P:n=... spec")
        return corpus.powerset_branch(int(m.group(1)))
    if text.strip() in ("", "none"):
        return []
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]
    except ValueError:
        raise InvalidInput(f"bad vertex list {text!r}") from None


def _split_tokens(tokens: list[str]) -> tuple[list[str], dict[str, str]]:
    pos, kv = [], {}
    for tok in tokens:
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_-]*)=(.*)", tok)
        if m and not tok.startswith("dist<="):
            kv[m.group(1)] = m.group(2)
        else:
            pos.append(tok)
    return pos, kv


def _pick(args, kv: dict, pos: list, name: str, cast=str, default=None, positional: bool = False):
    val = getattr(args, name, None)
    if val is None:
        val = kv.pop(name, None)
    if val is None and positional and pos:
        val = pos.pop(0)
    if val is None:
        return default
    try:
        return cast(val)
    except ValueError:
        raise InvalidInput(f"bad value {val!r} for {name}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _formula(text: str, split: str | None):
    if split:
        xs, _, ys = split.partition(";")
        return parse_formula(text, [v for v in xs.split(",") if v], [v for v in ys.split(",") if v])
    return parse_formula(text)


# ---------------------------------------------------------------- subcommands

def cmd_gen(args, pos, kv) -> int:
    spec = _pick(args, kv, pos, "spec", positional=True)
    out = _pick(args, kv, pos, "out", positional=True)
    if spec is None:
        raise UsageError("gen needs a spec")
    g = corpus.generate(spec)
    _emit(SPEC_COMMENT + spec + "\n" + corpus.format_graph(g), out)
    return EXIT_OK


def cmd_uqw(args, pos, kv) -> int:
    g, spec = load_graph(_pick(args, kv, pos, "graph", positional=True))
    a = vertex_list(g, spec, _pick(args, kv, pos, "A", default="all"))
    params = UqwParams(_pick(args, kv, pos, "r", int, 1), _pick(args, kv, pos, "t", int, 3),
                       _pick(args, kv, pos, "m", int), _pick(args, kv, pos, "mode", str, BEST_EFFORT))
    try:
        outcome = uqw_solve(g, a, params)
    except TargetNotMet as exc:
        print(f"target not met: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(dumps_certificate(outcome_to_json(outcome)), args.out)
    print(f"{outcome.variant}: verify pass", file=sys.stderr)
    return EXIT_OK


def cmd_tuple_uqw(args, pos, kv) -> int:
    g, _ = load_graph(_pick(args, kv, pos, "graph", positional=True))
    tfile = _pick(args, kv, pos, "tuples", positional=True)
    if tfile is None:
        raise UsageError("tuple-uqw needs a tuple file")
    ts = parse_tuples(Path(tfile).read_text())
    outcome = tuple_uqw_solve(g, ts, _pick(args, kv, pos, "r", int, 1), _pick(args, kv, pos, "t", int, 3),
                              _pick(args, kv, pos, "m", int))
    _emit(dumps_certificate(tuple_outcome_to_json(outcome)), args.out)
    print(f"{outcome.variant}: verify pass", file=sys.stderr)
    return EXIT_OK


def cmd_types(args, pos, kv) -> int:
    g, spec = load_graph(_pick(args, kv, pos, "graph", positional=True))
    f = _formula(_pick(args, kv, pos, "formula", positional=True), args.split)
    a = vertex_list(g, spec, _pick(args, kv, pos, "A", default="all"))
    w = _pick(args, kv, pos, "W")
    w = None if w is None else vertex_list(g, spec, w)
    types = type_space(g, f, w, a, args.budget_types)
    lines = [str(len(types))]
    if args.dump:
        lines += sorted(t.bitstring() for t in types)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_ladder(args, pos, kv) -> int:
    g, _ = load_graph(_pick(args, kv, pos, "graph", positional=True))
    f = _formula(_pick(args, kv, pos, "formula", positional=True), args.split)
    n = ladder_length(g, f, _pick(args, kv, pos, "cap", int, 8), node_budget=args.budget_ladder)
    _emit(f"{n}\n", args.out)
    return EXIT_OK


def _looks_like_spec(tok: str) -> bool:
    return re.match(r"[A-Za-z]+:", tok) is not None and ":=" not in tok


def cmd_sweep(args, pos, kv) -> int:
    graphs = tuple(args.graphs or []) + tuple(p for p in pos if _looks_like_spec(p))
    rest = [p for p in pos if p not in graphs]
    formula = _pick(args, kv, rest, "formula", positional=True, default="dist<=1")
    sizes = _pick(args, kv, rest, "sizes", default="8,16,32")
    cfg = SweepConfig(graphs, formula, tuple(int(s) for s in sizes.split(",")),
                      _pick(args, kv, rest, "trials", int, 5), _pick(args, kv, rest, "seed", int, 0),
                      _pick(args, kv, rest, "jobs", int, 1), args.timing, args.budget_types)
    if not graphs:
        raise UsageError("sweep needs at least one graph spec")
    _emit(rows_to_csv(vc_density_sweep(cfg)), args.out)
    return EXIT_OK


def cmd_duality(args, pos, kv) -> int:
    g, _ = load_graph(_pick(args, kv, pos, "graph", positional=True))
    f = _formula(_pick(args, kv, pos, "formula", positional=True), args.split)
    mode = _pick(args, kv, pos, "mode", positional=True, default="exact")
    fam = definable_family(g, f)
    nu = packing_number(fam, mode, args.budget_duality)
    tau = transversal_number(fam, mode, args.budget_duality)
    _emit(f"nu={nu} tau={'inf' if tau is None else tau}\n", args.out)
    return EXIT_OK


def cmd_locality(args, pos, kv) -> int:
    g, spec = load_graph(_pick(args, kv, pos, "graph", positional=True))
    f = _formula(_pick(args, kv, pos, "formula", positional=True), args.split)
    a = vertex_list(g, spec, _pick(args, kv, pos, "A"))
    b = vertex_list(g, spec, _pick(args, kv, pos, "B"))
    s = vertex_list(g, spec, _pick(args, kv, pos, "S", default="none"))
    rep = determination_check(g, a, b, s, f, _pick(args, kv, pos, "p_max", int, 10), args.budget_ef)
    _emit(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args, pos, kv) -> int:
    g, _ = load_graph(_pick(args, kv, pos, "graph", positional=True))
    cert_path = _pick(args, kv, pos, "certificate", positional=True)
    if cert_path is None:
        raise UsageError("verify needs a certificate file")
    try:
        data = json.loads(Path(cert_path).read_text())
        outcome = tuple_outcome_from_json(data)
        problems = verify_tuple_outcome(g, outcome)
    except (json.JSONDecodeError, CertificateError, InvalidInput, TypeError) as exc:
        problems = [f"unreadable certificate: {exc}"]
    if problems:
        for p in problems:
            print(f"FAIL: {p}")
        return EXIT_CERT
    print("PASS")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "uqw": cmd_uqw, "tuple-uqw": cmd_tuple_uqw, "types": cmd_types,
            "ladder": cmd_ladder, "sweep": cmd_sweep, "duality": cmd_duality,
            "locality": cmd_locality, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nowheredense", description="Uniform quasi-wideness, definable types and VC-density.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("tokens", nargs="*", help="positional arguments and key=value pairs")
        s.add_argument("--graph")
        s.add_argument("--formula")
        s.add_argument("--split", help="object;parameter variables, e.g. x;y")
        s.add_argument("--A", dest="A")
        s.add_argument("--B", dest="B")
        s.add_argument("--S", dest="S")
        s.add_argument("--W", dest="W")
        s.add_argument("--r", type=int)
        s.add_argument("--t", type=int)
        s.add_argument("--m", type=int)
        s.add_argument("--mode")
        s.add_argument("--cap", type=int)
        s.add_argument("--p-max", dest="p_max", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--jobs", type=int)
        s.add_argument("--trials", type=int)
        s.add_argument("--sizes")
        s.add_argument("--graphs", nargs="+")
        s.add_argument("--out")
        s.add_argument("--dump", action="store_true", help="also list the types as bitstrings")
        s.add_argument("--timing", action="store_true", help="fill the elapsed_ms CSV column")
        s.add_argument("--budget-types", type=int, default=20_000_000)
        s.add_argument("--budget-ladder", type=int, default=2_000_000)
        s.add_argument("--budget-ef", type=int, default=5_000_000)
        s.add_argument("--budget-duality", type=int, default=2_000_000)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        pos, kv = _split_tokens(args.tokens)
        return COMMANDS[args.command](args, pos, kv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (InvalidInput, PreconditionError, FormulaSyntaxError, corpus.GraphFormatError,
            OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
