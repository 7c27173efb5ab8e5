"""``modcheck`` command line.

Exit status: 0 all verdicts pass, 1 some verdict fails, 2 input could not
be read, parsed or bound to the class diagram, 3 a check could not be
completed (resource limit or internal error).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .frontend import ParseError, check_context, parse_cd, parse_mod, print_object_model
from .model import DEFAULT_DOMAINS, Domains, EnumLit, ModelError, ObjectModel, Specification
from .solver import export_dimacs
from .verifier import Backend, Result, VerificationReport, domains_for, verify_spec

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    cd_path: Path
    mod_paths: list
    scope: int = 6
    backend: Backend = Backend.SAT
    int_range: Optional[tuple] = None
    report_format: str = "text"
    counterexample_dir: Optional[Path] = None
    dimacs_dir: Optional[Path] = None
    minimize: bool = False
    jobs: int = 1


def _int_range(text: str) -> tuple:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"expected lo..hi with lo <= hi, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _non_negative(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        k = -1
    if k < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcheck",
                                description="Check a class diagram against modal object diagrams.")
    p.add_argument("--cd", required=True, type=Path, help="class diagram (.cd)")
    p.add_argument("--mods", required=True, nargs="+", type=Path, help="object diagram files (.od)")
    p.add_argument("--scope", type=_non_negative, default=6, help="objects per class for invariants (default 6)")
    p.add_argument("--backend", choices=[b.value for b in Backend], default="sat")
    p.add_argument("--format", choices=["text", "json"], default="text", dest="report_format")
    p.add_argument("--cex", type=Path, help="write counterexample object diagrams here")
    p.add_argument("--dimacs", type=Path, help="write each grounded CNF here")
    p.add_argument("--int-range", type=_int_range, help="integer attribute domain, lo..hi (default -128..127)")
    p.add_argument("--minimize", action="store_true", help="search for counterexamples with fewest objects")
    p.add_argument("--jobs", type=_non_negative, default=1, help="parallel worker processes")
    return p


def _file_stem(name: str, index) -> str:
    return name if index is None else f"{name}_{index}"


def model_json(om: ObjectModel) -> dict:
    def value(v):
        return str(v) if isinstance(v, EnumLit) else v

    return {
        "objects": [{"id": o.id, "class": o.cls, "attributes": {a: value(v) for a, v in o.attrs.items()}}
                    for o in om.objects.values()],
        "links": [{"association": l.assoc, "left": l.left, "right": l.right} for l in sorted(om.links)],
    }


def report_json(report: VerificationReport) -> dict:
    rows = []
    for v in report.verdicts:
        row = {
            "mod": v.mod_name,
            "modality": v.modality.value,
            "result": v.result.value,
            "stats": {"variables": v.stats.get("variables", 0), "clauses": v.stats.get("clauses", 0),
                      "millis": v.stats.get("millis", 0.0)},
        }
        if v.ground_index is not None:
            row["instance"] = v.ground_index
        if v.counterexample is not None:
            row["counterexample"] = model_json(v.counterexample)
        if v.message:
            row["message"] = v.message
        rows.append(row)
    return {"cd": report.cd_name, "scope": report.scope, "verdicts": rows, "overall": report.overall}


def report_text(report: VerificationReport) -> str:
    head = f"{'MOD':<16} {'Mod.':<4} {'k':>3} {'Result':<6} {'Vars':>7} {'Clauses':>8} {'Time(ms)':>9}"
    lines = [f"class diagram {report.cd_name}", head, "-" * len(head)]
    for v in report.verdicts:
        name = v.mod_name if v.ground_index is None else f"{v.mod_name}[{v.ground_index}]"
        k = "-" if v.modality.value in ("PE", "NE") else str(report.scope)
        lines.append(f"{name:<16} {v.modality.value:<4} {k:>3} {v.result.value:<6} "
                     f"{v.stats.get('variables', 0):>7} {v.stats.get('clauses', 0):>8} "
                     f"{v.stats.get('millis', 0.0):>9.1f}")
        if v.message:
            lines.append(f"    {v.message}")
        for viol in v.violations if v.result is Result.FAIL else ():
            lines.append(f"    {viol}")
    passed = sum(1 for v in report.verdicts if v.passed)
    lines.append(f"overall: {report.status.value} ({passed}/{len(report.verdicts)} passed)")
    return "\n".join(lines) + "\n"


def exit_code(report: VerificationReport) -> int:
    status = report.status
    if status is Result.ERROR:
        return EXIT_INTERNAL
    return EXIT_PASS if status is Result.PASS else EXIT_FAIL


def run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cd = parse_cd(config.cd_path.read_bytes(), str(config.cd_path))
        mods, origin = [], {}
        for path in config.mod_paths:
            for m in parse_mod(path.read_bytes(), str(path)):
                mods.append(m)
                origin[m.name] = str(path)
        spec = Specification(mods)
    except ParseError as e:
        for d in e.diagnostics:
            print(d, file=err)
        return EXIT_INPUT
    except (OSError, ModelError) as e:
        print(f"modcheck: {e}", file=err)
        return EXIT_INPUT

    failed = False
    for m in mods:
        for d in check_context(m, cd, file=origin[m.name]):
            print(d, file=err)
            failed |= d.is_error
    if failed:
        return EXIT_INPUT

    base = DEFAULT_DOMAINS if config.int_range is None else Domains(*config.int_range)
    domains = domains_for(mods, base)

    on_problem = None
    if config.dimacs_dir is not None:
        config.dimacs_dir.mkdir(parents=True, exist_ok=True)

        def on_problem(name, index, problem):
            (config.dimacs_dir / f"{_file_stem(name, index)}.cnf").write_text(export_dimacs(problem))

    try:
        report = verify_spec(cd, spec, config.scope, config.backend, domains, jobs=config.jobs,
                             minimize=config.minimize, on_problem=on_problem)
    except Exception as e:  # an internal consistency check fired
        print(f"modcheck: internal error: {e}", file=err)
        return EXIT_INTERNAL

    if config.counterexample_dir is not None:
        config.counterexample_dir.mkdir(parents=True, exist_ok=True)
        for v in report.verdicts:
            if v.counterexample is None:
                continue
            stem = _file_stem(v.mod_name, v.ground_index)
            what = "not embedded" if v.modality.value == "PI" else "embedded"
            comment = (f"counterexample for {v.modality.value} {v.mod_name}"
                       + ("" if v.ground_index is None else f" instance {v.ground_index}")
                       + f" against {cd.name}, scope {config.scope}\n"
                       + f"member of {cd.name}; the diagram's pattern is {what}")
            text = print_object_model(v.counterexample, cd, f"{stem}_cex", comment)
            (config.counterexample_dir / f"{stem}.od").write_text(text)

    if config.report_format == "json":
        print(json.dumps(report_json(report), indent=2), file=out)
    else:
        out.write(report_text(report))
    return exit_code(report)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(args.cd, args.mods, args.scope, Backend(args.backend), args.int_range,
                       args.report_format, args.cex, args.dimacs, args.minimize, max(1, args.jobs))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
