"""Command line front end over the enumeration modules.

Subcommands map one to one onto the library: catalogue listing,
profile enumeration, growth analysis, witness families, poset
linearization, fragment glueing, and the constant table. Output is
deterministic for a fixed command line and input files, so runs can
be diffed byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .catalogue import age_predictor, get_entry, list_entry_ids
from .errors import OligoError, ParameterError
from .glueing import fragments_from_json_dict, glue
from .growth import constants_table, growth_estimate
from .posets import FinitePoset, linearize
from .profiles import DEFAULT_BUDGET, profile
from .witnesses import build_family, construction_ids, verify_pairwise_nonisomorphic


@dataclass(frozen=True)
class RunConfig:
    seed: int
    budget: int
    output_format: str
    in_path: str | None
    out_path: str | None
    jobs: int

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ParameterError(f"budget must be > 0, got {self.budget}")
        if self.jobs < 1:
            raise ParameterError(f"jobs must be > 0, got {self.jobs}")


def _env_jobs() -> int:
    raw = os.environ.get("OLIGO_JOBS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _real(x: float) -> float:
    return float(f"{x:.6g}")


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_catalogue_list(args, cfg: RunConfig) -> str:
    entries = list_entry_ids()
    if cfg.output_format == "json":
        return _json_text({"entries": list(entries)})
    return "".join(e + "\n" for e in entries)


def _cmd_profile(args, cfg: RunConfig) -> str:
    seq = profile(args.entry, args.n_max, budget=cfg.budget, jobs=cfg.jobs)
    if cfg.output_format == "json":
        return _json_text(seq.to_json_dict())
    return seq.to_csv()


def _growth_values(args, cfg: RunConfig) -> list[int]:
    if args.file is not None:
        payload = _load_json(args.file)
        try:
            return [int(v) for v in payload["values"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed sequence file: {exc}") from None
    entry = get_entry(args.entry)
    if entry.predictor is not None:
        return [age_predictor(entry, n) for n in range(1, args.n_max + 1)]
    return list(profile(args.entry, args.n_max, budget=cfg.budget, jobs=cfg.jobs).values)


def _cmd_growth(args, cfg: RunConfig) -> str:
    values = _growth_values(args, cfg)
    report = growth_estimate(values)
    if cfg.output_format == "json":
        return _json_text(report.to_json_dict())
    rows = []
    for i, v in enumerate(values):
        ratio = "" if i == 0 else f"{_real(report.ratios[i - 1]):g}"
        rows.append((i + 1, v, f"{_real(report.nth_roots[i]):g}", ratio))
    if cfg.output_format == "csv":
        lines = ["n,value,nth_root,ratio"]
        lines += [f"{n},{v},{r},{q}" for n, v, r, q in rows]
        return "\n".join(lines) + "\n"
    width = max(len(str(v)) for _, v, _, _ in rows)
    lines = [f"{'n':>3}  {'value':>{width}}  {'nth_root':>9}  {'ratio':>9}"]
    lines += [f"{n:>3}  {v:>{width}}  {r:>9}  {q:>9}" for n, v, r, q in rows]
    lines.append(
        f"limit estimate {_real(report.limit_estimate):g}"
        f" ({'monotone' if report.monotone else 'not monotone'} values)"
    )
    return "\n".join(lines) + "\n"


def _cmd_witness(args, cfg: RunConfig) -> str:
    family = build_family(args.construction, args.n, args.max_part)
    report = verify_pairwise_nonisomorphic(family, jobs=cfg.jobs)
    return _json_text(
        {"family": family.to_json_dict(), "report": report.to_json_dict()}
    )


def _cmd_linearize(args, cfg: RunConfig) -> str:
    poset = FinitePoset.from_json_dict(_load_json(cfg.in_path))
    result = linearize(poset)
    return _json_text(result.to_json_dict())


def _cmd_glue(args, cfg: RunConfig) -> str:
    fragments = fragments_from_json_dict(_load_json(cfg.in_path))
    components = glue(list(fragments))
    return _json_text({"components": [c.to_json_dict() for c in components]})


def _cmd_constants(args, cfg: RunConfig) -> str:
    table = constants_table()
    if cfg.output_format == "json":
        return _json_text(
            [
                {"key": c.key, "value": _real(c.value), "note": c.note}
                for c in table
            ]
        )
    key_w = max(len(c.key) for c in table)
    lines = [f"{c.key:<{key_w}}  {_real(c.value):<8g} {c.note}" for c in table]
    return "\n".join(lines) + "\n"


_HANDLERS = {
    "catalogue-list": _cmd_catalogue_list,
    "profile": _cmd_profile,
    "growth": _cmd_growth,
    "witness": _cmd_witness,
    "linearize": _cmd_linearize,
    "glue": _cmd_glue,
    "constants": _cmd_constants,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="run seed, recorded for reproducibility")
    common.add_argument("--jobs", type=int, default=None, help="worker processes; defaults to OLIGO_JOBS or 1")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max subsets to enumerate per count")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="oligoprofile",
        description="orbit profiles, growth rates, witness families, and order reconstruction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalogue-list", parents=[common], help="list catalogue entry ids")
    cat.add_argument("--format", dest="fmt", choices=("plain", "json"), default="plain")

    prof = sub.add_parser("profile", parents=[common], help="enumerate f_1..f_n for an entry")
    prof.add_argument("entry")
    prof.add_argument("--n-max", type=int, required=True)
    prof.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    gro = sub.add_parser("growth", parents=[common], help="nth roots and ratios of a counting sequence")
    gro.add_argument("entry", nargs="?", default=None)
    gro.add_argument("--file", default=None, help="JSON file with a 'values' list")
    gro.add_argument("--n-max", type=int, default=24)
    gro.add_argument("--format", dest="fmt", choices=("table", "csv", "json"), default="table")

    wit = sub.add_parser("witness", parents=[common], help="build and verify a witness family")
    wit.add_argument("construction", choices=construction_ids())
    wit.add_argument("--n", type=int, required=True)
    wit.add_argument("--max-part", type=int, default=None)
    wit.add_argument("--format", dest="fmt", choices=("json",), default="json")

    lin = sub.add_parser("linearize", parents=[common], help="collapse a poset to ordered antichain classes")
    lin.add_argument("--in", dest="in_path", required=True)
    lin.add_argument("--format", dest="fmt", choices=("json",), default="json")

    glu = sub.add_parser("glue", parents=[common], help="assemble order fragments into components")
    glu.add_argument("--in", dest="in_path", required=True)
    glu.add_argument("--format", dest="fmt", choices=("json",), default="json")

    con = sub.add_parser("constants", parents=[common], help="print the named growth constants")
    con.add_argument("--format", dest="fmt", choices=("table", "json"), default="table")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "growth" and (args.entry is None) == (args.file is None):
        print("error: growth needs exactly one of <entry> or --file", file=sys.stderr)
        return 2
    try:
        cfg = RunConfig(
            seed=args.seed,
            budget=args.budget,
            output_format=args.fmt,
            in_path=getattr(args, "in_path", None),
            out_path=args.out,
            jobs=args.jobs if args.jobs is not None else _env_jobs(),
        )
        text = _HANDLERS[args.command](args, cfg)
    except OligoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 1
    if cfg.out_path is not None:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
