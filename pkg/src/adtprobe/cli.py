"""Command-line front end.

Exit status: 0 conformant (no failure evidence), 1 guilty method named,
2 failures but inconclusive, 3 no model or budget exhausted, 4 usage or
input error.
"""

from __future__ import annotations

import argparse
import importlib
import pathlib
import sys

from .adapter import ClassAdapter
from .errors import (AdtProbeError, BudgetExhaustedError, MappingError,
                     NoModelError, SpecSyntaxError, SpecValidationError,
                     UnknownFixtureError)
from .finder import DEFAULT_BUDGET, Scope, structure_to_json
from .fixtures import CASES, fixture_ids, load_fixture
from .harness import Mode
from .mapping import bind_mapping, parse_mapping
from .parser import parse_specification
from .pipeline import run_pipeline
from .report import render_json, render_text
from .validate import validate_module

USAGE_ERROR = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit with the documented code
        self.print_usage(sys.stderr)
        raise SystemExit(self._fail(message))

    @staticmethod
    def _fail(message: str) -> int:
        print(f"error: {message}", file=sys.stderr)
        return USAGE_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adtprobe",
                description="Compare an ADT implementation against a "
                            "specification-satisfying structure and locate "
                            "the faulty method.")
    p.add_argument("--impl", required=True,
                   help="implementation under test: a fixture id such as "
                        "'sortedset:isEmpty-1' (see --list) or a plugin "
                        "'module.path:attribute'")
    p.add_argument("--spec", metavar="DIR",
                   help="directory of .spec files (required for plugin "
                        "implementations)")
    p.add_argument("--map", metavar="FILE", dest="map_file",
                   help="refinement mapping file (required for plugin "
                        "implementations)")
    p.add_argument("--scope", action="append", default=[], metavar="SORT=N",
                   help="carrier size for a sort (repeatable)")
    p.add_argument("--mode", choices=["equals", "observers"], default="equals",
                   help="comparison oracle for transformer results")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="node budget for the model search")
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.add_argument("--dump-model", metavar="FILE",
                   help="write the found structure as JSON")
    p.add_argument("--list", action="store_true",
                   help="list fixture ids and exit")
    return p


def _parse_scopes(pairs: list[str]) -> dict[str, int]:
    out = {}
    for pair in pairs:
        name, _, num = pair.partition("=")
        if not name or not num:
            raise ValueError(f"bad --scope {pair!r}, expected SORT=N")
        out[name] = int(num)
    return out


def _load_plugin(spec: str):
    module_name, _, attr = spec.partition(":")
    obj = getattr(importlib.import_module(module_name), attr)
    if isinstance(obj, type):
        return ClassAdapter(obj)
    if callable(obj):
        return obj()
    return obj


def _read_spec_dir(path: str) -> str:
    files = sorted(pathlib.Path(path).glob("*.spec"))
    if not files:
        raise FileNotFoundError(f"no .spec files in {path!r}")
    return "\n".join(f.read_text() for f in files)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for fid in fixture_ids():
            print(fid)
        return 0

    try:
        scopes = _parse_scopes(args.scope)
    except ValueError as exc:
        print(f"error: [stage=config] {exc}", file=sys.stderr)
        return USAGE_ERROR

    case, _, variant = args.impl.partition(":")
    try:
        if case in CASES:
            fixture = load_fixture(case, variant or "correct")
            vm, mapping, adapter = fixture.vm, fixture.mapping, fixture.adapter
            counts = dict(fixture.scope_counts)
        else:
            if not args.spec or not args.map_file:
                print("error: [stage=config] plugin implementations need "
                      "--spec and --map", file=sys.stderr)
                return USAGE_ERROR
            vm = validate_module(parse_specification(_read_spec_dir(args.spec)))
            mapping = bind_mapping(
                parse_mapping(pathlib.Path(args.map_file).read_text()),
                vm)
            adapter = _load_plugin(args.impl)
            counts = {s.name: Scope.default_for(vm).count(s.name)
                      for s in vm.module.sorts}
    except UnknownFixtureError as exc:
        print(f"error: [stage=fixture] {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SpecSyntaxError as exc:
        print(f"error: [stage=parse] {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SpecValidationError as exc:
        print("error: [stage=validate]", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return USAGE_ERROR
    except MappingError as exc:
        print(f"error: [stage=mapping] {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (OSError, ImportError, AttributeError) as exc:
        print(f"error: [stage=load] {exc}", file=sys.stderr)
        return USAGE_ERROR

    counts.update(scopes)
    mode = Mode.EQUALS if args.mode == "equals" else Mode.OBSERVERS_ONLY
    try:
        result = run_pipeline(vm, mapping, adapter, Scope(counts), mode,
                              args.seed, args.budget)
    except NoModelError as exc:
        print(f"error: [stage=find-structure] {exc}", file=sys.stderr)
        return 3
    except BudgetExhaustedError as exc:
        print(f"error: [stage=find-structure] {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: [stage=config] {exc}", file=sys.stderr)
        return USAGE_ERROR
    except AdtProbeError as exc:
        print(f"error: [stage=pipeline] {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.dump_model:
        pathlib.Path(args.dump_model).write_text(
            structure_to_json(result.structure) + "\n")

    if args.report == "json":
        print(render_json(result))
    else:
        print(render_text(result))
    return result.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
