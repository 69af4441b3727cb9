"""Command line entry point.

Precedence, lowest to highest: scenario defaults, ``--scenario`` file,
command-line flags (``--seed``, ``--param``, ``--expect``).  Reports go to
``--out``, else to ``$CAUSALCOVER_OUT/<scenario>.json`` when that variable is
set, else to stdout.  Exit status: 0 on success, 1 when an expectation is not
met, 2 on usage or scenario errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import yaml

from .report import Scenario, ScenarioError, default_expectations, run_scenario, to_json, validate
from .svg import UnsupportedDiagramError, emit_svg

OUT_ENV = "CAUSALCOVER_OUT"

COMMANDS = {
    ("verify", "cone"): "cone-cover-closure",
    ("verify", "punctured"): "punctured-reflectivity",
    ("verify", "sphere"): "sphere-trapped",
    ("certify", "criterion"): "criterion-certificate",
    ("oracle", "compare"): "oracle-compare",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", type=Path, help="YAML scenario file (name, params, seed, expect)")
    p.add_argument("--seed", type=int, help="random seed (overrides the file)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="override one parameter; VALUE is parsed as YAML")
    p.add_argument("--out", type=Path, help="write the JSON report here")
    p.add_argument("--svg", type=Path, help="write the scenario diagram here")
    p.add_argument("--expect", metavar="FILE|default",
                   help="check verdicts against a YAML mapping, or the stock expectations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="causalcover", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    subs = {}
    for group, what in COMMANDS:
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="what", required=True)
        _common(subs[group].add_parser(what, help=f"run the {COMMANDS[(group, what)]} scenario"))
    return parser


def _load_file(path: Path) -> dict:
    data = yaml.safe_load(path.read_text()) or {}
    if not isinstance(data, dict):
        raise ScenarioError(f"{path}: scenario file must be a mapping")
    unknown = set(data) - {"name", "params", "seed", "expect"}
    if unknown:
        raise ScenarioError(f"{path}: unknown keys {sorted(unknown)}")
    return data


def scenario_from_args(args) -> Scenario:
    name = COMMANDS[(args.group, args.what)]
    data = _load_file(args.scenario) if args.scenario else {}
    if data.get("name", name) != name:
        raise ScenarioError(f"scenario file names {data['name']!r} but the command runs {name!r}")
    params = dict(data.get("params") or {})
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise ScenarioError(f"--param expects KEY=VALUE, got {item!r}")
        params[key.strip()] = yaml.safe_load(value)
    seed = args.seed if args.seed is not None else data.get("seed")
    expect = dict(data.get("expect") or {})
    if args.expect == "default":
        expect = default_expectations(name)
    elif args.expect:
        loaded = yaml.safe_load(Path(args.expect).read_text()) or {}
        if not isinstance(loaded, dict):
            raise ScenarioError("expectation file must be a mapping")
        expect = loaded
    return Scenario(name, params, seed, expect)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = scenario_from_args(args)
        report = run_scenario(scenario)
        validate(report)
        svg = emit_svg(scenario, report) if args.svg else None
    except (ScenarioError, UnsupportedDiagramError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = to_json(report) + "\n"
    out = args.out
    if out is None and os.environ.get(OUT_ENV):
        out = Path(os.environ[OUT_ENV]) / f"{scenario.name}.json"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    if svg is not None:
        args.svg.parent.mkdir(parents=True, exist_ok=True)
        args.svg.write_text(svg)

    exp = report["expectations"]
    if exp["checked"] and not exp["passed"]:
        for m in exp["mismatches"]:
            print(f"mismatch: {m['verdict']}: expected {m['expected']!r}, got {m['actual']!r}",
                  file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
