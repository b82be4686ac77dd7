"""Command-line front end.

Subcommands: ``enumerate`` streams objects, ``count`` evaluates closed forms
against optional enumeration oracles, ``table``/``qtable`` emit golden-file
CSV tables, ``biject`` maps stdin objects through the named bijections,
``series``/``expect`` expose the generating-function layer, and ``verify``
runs the re-derivation suites.  Exit codes: 0 success, 1 identity violation,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .biject import (
    compose,
    contract_path,
    decompose,
    expand_path,
    path_from_tableau,
    perm_from_tableau,
    tableau_from_path,
    tableau_from_perm,
    Triple,
)
from .closedform import (
    act_count,
    ballot_count,
    catalan,
    e_count,
    f_count,
    narayana,
    peaks_count,
)
from .core import ColoredPath, Permutation, SetValuedTableau, SvtabError
from .enumerate import (
    count_paths,
    count_svsyt,
    count_two_row_union,
    gen_avoid321,
    gen_ballotlike,
    gen_paths,
    gen_svsyt,
    gen_two_row_union,
)
from .series import SeriesContext, expected_steps
from .stats import dyck_type, set_valued_q_catalan, set_valued_q_narayana
from .verify import (
    SUITES,
    available_threads,
    build_tasks,
    report_dict,
    report_text,
    run_tasks,
)

__all__ = ["RunConfig", "main"]

PATH_FAMILY_NAMES = ("motz", "motzE", "motzT", "motzET", "ballotlike")


@dataclass
class RunConfig:
    """Validated invocation: one command, its parameters, and output plumbing."""

    command: str
    params: dict = field(default_factory=dict)
    fmt: str = "text"
    threads: int | None = None
    output: str | None = None


class UsageError(SvtabError):
    pass


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad shape {text!r}; expected like 3,3") from None
    if not parts or any(p < 0 for p in parts):
        raise UsageError(f"bad shape {text!r}")
    return parts


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected like 4..12 or 7") from None
    if b < a:
        raise UsageError(f"empty range {text!r}")
    return range(a, b + 1)


def _require(args: argparse.Namespace, *names: str) -> list:
    got = []
    for name in names:
        value = getattr(args, name.replace("-", "_"), None)
        if value is None:
            raise UsageError(f"--{name} is required here")
        got.append(value)
    return got


def _write(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# object serialization shared by enumerate and biject


def _tableau_from_text(text: str) -> SetValuedTableau:
    rows = []
    for row_text in text.split("/"):
        cells = []
        for cell_text in row_text.split():
            inner = cell_text.strip().lstrip("{").rstrip("}")
            if not inner:
                raise UsageError(f"empty cell in {text!r}")
            cells.append([int(v) for v in inner.split(",")])
        if not cells:
            raise UsageError(f"empty row in {text!r}")
        rows.append(cells)
    return SetValuedTableau.from_rows(rows)


def _obj_text(obj) -> str:
    if isinstance(obj, SetValuedTableau):
        return str(obj)
    if isinstance(obj, Permutation):
        return obj.to_text()
    if isinstance(obj, ColoredPath):
        return obj.word
    if isinstance(obj, Triple):
        return json.dumps(obj.to_json_dict())
    raise AssertionError(f"unexpected object {obj!r}")


def _obj_json(obj):
    if isinstance(obj, SetValuedTableau):
        return obj.to_json_dict()
    if isinstance(obj, Permutation):
        return list(obj.word)
    if isinstance(obj, ColoredPath):
        return obj.word
    if isinstance(obj, Triple):
        return obj.to_json_dict()
    raise AssertionError(f"unexpected object {obj!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(cfg: RunConfig, args: argparse.Namespace) -> int:
    family = args.family
    if family == "svsyt":
        (shape,) = _require(args, "shape")
        stream = gen_svsyt(_parse_shape(shape), args.k)
    elif family == "two-row-union":
        (n,) = _require(args, "n")
        stream = gen_two_row_union(n)
    elif family == "avoid321":
        (n,) = _require(args, "n")
        stream = gen_avoid321(n)
    elif family == "ballotlike" and args.i is not None:
        (n,) = _require(args, "n")
        stream = gen_ballotlike(n, args.i)
    else:
        (n,) = _require(args, "n")
        stream = gen_paths(family, n)

    if args.emit == "count":
        _write(cfg, str(sum(1 for _ in stream)))
        return 0
    lines = []
    for obj in stream:
        if args.emit == "json":
            lines.append(json.dumps(_obj_json(obj)))
        else:
            lines.append(_obj_text(obj))
    _write(cfg, "\n".join(lines) if lines else "")
    return 0


_FORMULAS: dict[str, tuple[tuple[str, ...], Callable, Callable | None]] = {
    # name -> (parameter names, closed form, enumeration oracle or None)
    "ballot": (
        ("n", "i"),
        ballot_count,
        lambda n, i: sum(1 for _ in gen_ballotlike(n, i)),
    ),
    "e": (("n", "i"), e_count, None),
    "f": (("n", "i"), f_count, None),
    "act": (("b", "k"), act_count, lambda b, k: count_svsyt((b, b), k)),
    "peaks": (("b", "k"), peaks_count, lambda b, k: count_svsyt((b, b), k)),
    "catalan": (("n",), catalan, lambda n: sum(1 for _ in gen_avoid321(n))),
    "narayana": (
        ("n", "m"),
        narayana,
        lambda n, m: sum(1 for t in gen_two_row_union(n + 1) if dyck_type(t)[0] == m),
    ),
}

_FAMILY_COUNTS: dict[str, tuple[tuple[str, ...], Callable, Callable]] = {
    "two-row-union": (
        ("n",),
        count_two_row_union,
        lambda n: sum(1 for _ in gen_two_row_union(n)),
    ),
    "svsyt": (
        ("shape", "k"),
        lambda shape, k: count_svsyt(_parse_shape(shape), k),
        lambda shape, k: sum(1 for _ in gen_svsyt(_parse_shape(shape), k)),
    ),
    "avoid321": (("n",), catalan, lambda n: sum(1 for _ in gen_avoid321(n))),
    **{
        fam: (
            ("n",),
            (lambda f: lambda n: count_paths(f, n))(fam),
            (lambda f: lambda n: sum(1 for _ in gen_paths(f, n)))(fam),
        )
        for fam in PATH_FAMILY_NAMES
    },
}


def cmd_count(cfg: RunConfig, args: argparse.Namespace) -> int:
    if (args.formula is None) == (args.family is None):
        raise UsageError("give exactly one of --formula / --family")
    table = _FORMULAS if args.formula else _FAMILY_COUNTS
    key = args.formula or args.family
    if key not in table:
        raise UsageError(f"unknown {'formula' if args.formula else 'family'} {key!r}")
    names, value_fn, oracle_fn = table[key]
    params = dict(zip(names, _require(args, *names)))
    value = value_fn(**params)
    if not args.oracle:
        _write(cfg, str(value))
        return 0
    if oracle_fn is None:
        raise UsageError(f"no enumeration oracle for --formula {key}")
    oracle = oracle_fn(**params)
    agree = value == oracle
    _write(cfg, f"{value},{oracle},{'ok' if agree else 'MISMATCH'}")
    return 0 if agree else 1


def cmd_table(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.name != "ef":
        raise UsageError(f"unknown table {args.name!r}")
    rows = [("n", "i", "e", "f", "total")]
    for n in range(args.max_n + 1):
        for i in range(n + 1):
            e, f = e_count(n, i), f_count(n, i)
            rows.append((str(n), str(i), str(e), str(f), str(e + f)))
    if cfg.fmt == "csv":
        _write(cfg, "\n".join(",".join(r) for r in rows))
    else:
        widths = [max(len(r[j]) for r in rows) for j in range(5)]
        _write(
            cfg,
            "\n".join(
                "  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in rows
            ),
        )
    return 0


def cmd_qtable(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.stat == "catalan":
        polys = {
            str(n): set_valued_q_catalan(n) for n in range(1, args.max_n + 1)
        }
    else:
        polys = {
            f"{n},{m}": set_valued_q_narayana(n, m)
            for n in range(1, args.max_n + 1)
            for m in range(1, n + 1)
        }
    if cfg.fmt == "json":
        _write(
            cfg,
            json.dumps({key: list(p.coeffs) for key, p in polys.items()}, indent=2),
        )
    else:
        _write(
            cfg,
            "\n".join(",".join(map(str, p.coeffs)) for p in polys.values()),
        )
    return 0


_BIJECTIONS: dict[str, tuple[str, Callable]] = {
    # map name -> (input kind, function)
    "alpha": ("tableau", perm_from_tableau),
    "alpha-inv": ("perm", tableau_from_perm),
    "beta": ("tableau", path_from_tableau),
    "beta-inv": ("path", tableau_from_path),
    "phi": ("path", contract_path),
    "phi-inv": ("path", expand_path),
    "decompose": ("tableau", decompose),
    "compose": ("triple", compose),
}


def _read_object(kind: str, line: str, input_fmt: str):
    if input_fmt == "json":
        data = json.loads(line)
        if kind == "tableau":
            return SetValuedTableau.from_json_dict(data)
        if kind == "perm":
            return Permutation(tuple(int(x) for x in data))
        if kind == "path":
            return ColoredPath(str(data))
        return Triple.from_json_dict(data)
    if kind == "tableau":
        return _tableau_from_text(line)
    if kind == "perm":
        return Permutation.from_text(line)
    if kind == "path":
        return ColoredPath(line.strip())
    raise UsageError("triples are JSON-only; use --input json")


def cmd_biject(cfg: RunConfig, args: argparse.Namespace) -> int:
    kind, fn = _BIJECTIONS[args.map]
    lines_out = []
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            continue
        try:
            obj = _read_object(kind, line, args.input)
        except (json.JSONDecodeError, ValueError) as exc:
            raise UsageError(f"bad input line {line!r}: {exc}") from None
        image = fn(obj)
        if args.input == "json":
            lines_out.append(
                json.dumps({"input": _obj_json(obj), "output": _obj_json(image)})
            )
        else:
            lines_out.append(f"{_obj_text(obj)} => {_obj_text(image)}")
    _write(cfg, "\n".join(lines_out) if lines_out else "")
    return 0


def cmd_series(cfg: RunConfig, args: argparse.Namespace) -> int:
    ctx = SeriesContext.build(args.order)
    series = {"E": ctx.E, "E1": ctx.E1, "E2": ctx.E2, "E12": ctx.E12}[args.which]
    values = {}
    for n in range(args.order + 1):
        coeff = series.coeff(n)
        values[str(n)] = coeff.at_ones() if args.spec == "all-ones" else str(coeff)
    if cfg.fmt == "json":
        _write(
            cfg,
            json.dumps(
                {"which": args.which, "order": args.order, "values": values}, indent=2
            ),
        )
    else:
        _write(cfg, "\n".join(f"{n},{v}" for n, v in values.items()))
    return 0


def cmd_expect(cfg: RunConfig, args: argparse.Namespace) -> int:
    values = {str(n): expected_steps(n, args.step) for n in _parse_range(args.n)}
    if cfg.fmt == "json":
        _write(
            cfg,
            json.dumps(
                {"step": args.step, "values": {k: str(v) for k, v in values.items()}},
                indent=2,
            ),
        )
    else:
        _write(cfg, "\n".join(f"{n},{v}" for n, v in values.items()))
    return 0


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    tasks = build_tasks(
        suites,
        budget=args.budget,
        series_order=args.order,
        max_elements=args.max_elements,
        max_k=args.max_k,
    )
    threads = cfg.threads if cfg.threads is not None else available_threads()
    results = run_tasks(tasks, threads=threads)
    if args.report == "json":
        _write(cfg, json.dumps(report_dict(results, threads), indent=2))
    else:
        _write(cfg, report_text(results))
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svtab",
        description="verified enumeration of set-valued tableaux and friends",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("enumerate", help="stream objects of a family")
    p.add_argument(
        "--family",
        required=True,
        choices=("svsyt", "two-row-union", "avoid321") + PATH_FAMILY_NAMES,
    )
    p.add_argument("--shape", help="comma-separated partition, e.g. 3,3")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--emit", choices=("text", "json", "count"), default="text")
    add_output(p)

    p = sub.add_parser("count", help="closed form, optionally against an oracle")
    p.add_argument("--formula", choices=sorted(_FORMULAS))
    p.add_argument("--family", choices=sorted(_FAMILY_COUNTS))
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--shape")
    p.add_argument("--oracle", action="store_true")
    add_output(p)

    p = sub.add_parser("table", help="integer tables as CSV")
    p.add_argument("--name", required=True)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    add_output(p)

    p = sub.add_parser("qtable", help="q-polynomial coefficient tables")
    p.add_argument("--stat", required=True, choices=("catalan", "narayana"))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output(p)

    p = sub.add_parser("biject", help="map stdin objects through a bijection")
    p.add_argument("--map", required=True, choices=sorted(_BIJECTIONS))
    p.add_argument("--input", choices=("text", "json"), default="text")
    add_output(p)

    p = sub.add_parser("series", help="generating-function coefficients")
    p.add_argument("--which", required=True, choices=("E", "E1", "E2", "E12"))
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--spec", choices=("all-ones", "full"), default="all-ones")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output(p)

    p = sub.add_parser("expect", help="expected step counts")
    p.add_argument("--step", required=True, choices=("U", "D", "u", "d"))
    p.add_argument("--n", required=True, help="range like 4..12 or a single value")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output(p)

    p = sub.add_parser("verify", help="run the re-derivation suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--budget", choices=("desk", "quick"), default="desk")
    p.add_argument("--order", type=int)
    p.add_argument("--max-elements", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument(
        "--parallel",
        type=int,
        help="worker count; default is SVTAB_THREADS or the logical core count",
    )
    add_output(p)

    return parser


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "table": cmd_table,
    "qtable": cmd_qtable,
    "biject": cmd_biject,
    "series": cmd_series,
    "expect": cmd_expect,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        command=args.command,
        fmt=getattr(args, "format", "text"),
        threads=getattr(args, "parallel", None),
        output=args.output,
    )
    try:
        return _COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SvtabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
