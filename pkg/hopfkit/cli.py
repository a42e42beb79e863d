"""
Command-line front door.
Parses flags into a JobSpec, runs it and prints the report; the process exit
code is the report's.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from hopfkit.config import settings
from hopfkit.models import Command, JobSpec, Report, ReportFormat
from hopfkit.services.corpus_service import list_corpus
from hopfkit.workers.job_worker import run

NAME_WIDTH = 44
STATUS_WIDTH = 6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfkit",
        description="Exact checks for Hopf monads on finite-dimensional and finite-set inputs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="input file path or bundled corpus name")
    common.add_argument("--field", help="override the ground field: Q or Fp:<p>")
    common.add_argument("--dim-bound", type=int, help="largest dimension of V and W to test")
    common.add_argument("--max", dest="max_size", type=int, help="largest finite set in the skeleton")
    common.add_argument("--format", choices=[f.value for f in ReportFormat], default=settings.REPORT_FORMAT)
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        commands.add_parser(command.value, parents=[common])
    commands.add_parser("corpus", help="list bundled example inputs")
    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def render_text(report: Report) -> str:
    """Fixed-width table of the checks, followed by the verdict line."""
    lines = [f"{report.tool} {report.version}: {report.job.command.value} {report.job.input}"]
    for check in report.checks:
        value = "" if check.value is None else str(check.value)
        line = f"{check.name:<{NAME_WIDTH}} {check.status.value:<{STATUS_WIDTH}} {value}"
        if check.witness:
            line += f"  ({check.witness})"
        lines.append(line.rstrip())
        if check.matrix is not None:
            lines.extend(f"{'':<{NAME_WIDTH}}   {row}" for row in check.matrix)
    if report.error:
        lines.append(f"error: {report.error}")
    if report.timing_seconds is not None:
        lines.append(f"time: {report.timing_seconds:.3f}s")
    lines.append(f"verdict: {'pass' if report.passed else 'fail'} (exit {report.exit_code})")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if settings.DEBUG else settings.LOG_LEVEL,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "corpus":
        for name in list_corpus():
            print(name)
        return 0
    options = {"dim_bound": args.dim_bound, "max_size": args.max_size}
    try:
        job = JobSpec(
            command=args.command,
            input=args.input,
            field=args.field,
            format=args.format,
            timing=args.timing,
            **{k: v for k, v in options.items() if v is not None},
        )
    except ValidationError as exc:
        first = exc.errors()[0]
        print(f"error: {'.'.join(str(p) for p in first['loc'])}: {first['msg']}", file=sys.stderr)
        return 2
    report = run(job)
    if job.format == ReportFormat.MACHINE:
        print(report.model_dump_json(indent=2))
    else:
        print(render_text(report))
    return report.exit_code
