# src/gpfsums/cli.py
"""
Command line for the series computations.

    sb | sa --x X [--mode raw|accel] [--checkpoint PATH [--resume]]
    oracle --n N [--export DIR]
    pz [--order 0|1|2] [--s S]
    check-bounds --from LO --to HI [--family tight|dusart|axler]
    self-test

Exit codes: 0 success, 1 computation failure or failed check, 2 invalid
arguments, 3 precondition, 4 I/O or checkpoint failure.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from types import SimpleNamespace
from typing import Any, Dict, List, Optional

from .bounds import BOUND_FAMILIES
from .engine import MODE_ACCELERATED, MODE_RAW
from .errors import GpfSumsError
from .loaders import render_structured
from .pipeline import ComputationPipeline
from .utils import RunConfig, setup_logging, validate_run_config
from .utils.validators import MODE_FLAGS


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 4

DEFAULTS = SimpleNamespace(
    THREADS=1,
    SEGMENT_SIZE=2 ** 20,
    BLOCK_SPAN=2 ** 24,
    ANCHOR_INTERVAL=2 ** 20,
    CHECKPOINT_EVERY=1,
    ORACLE_MAX_N=10 ** 7,
    ORACLE_BLOCK_SIZE=10 ** 7,
    ORACLE_MEMORY_CAP_BYTES=512 * 2 ** 20,
    PRIME_ZETA_SPLIT=1000,
    PRIME_ZETA_K_MAX=60,
    BOUNDS_CAP=10 ** 9,
    DEFAULT_DIGITS=31,
    REFERENCE_DIR=None,
)


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting"""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser(settings: Any = DEFAULTS) -> argparse.ArgumentParser:
    parser = _Parser(prog="gpfsums", description="Certified digits of the greatest-prime-factor sums")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=settings.THREADS, help="Worker threads")
    common.add_argument("--segment-size", type=int, default=settings.SEGMENT_SIZE, help="Sieve segment length")
    common.add_argument("--format", choices=("text", "structured"), default="text", help="Output format")
    common.add_argument("--digits", type=int, default=settings.DEFAULT_DIGITS, help="Significant digits printed")
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (("sb", "Sum of 1/(n G(n))"), ("sa", "Sum of d(n)/(n G(n))")):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("--x", type=int, required=True, help="Sum over primes p <= x")
        cmd.add_argument("--mode", choices=sorted(MODE_FLAGS), default="accel", help="raw lower bound or accelerated enclosure")
        cmd.add_argument("--checkpoint", type=Path, help="Checkpoint file")
        cmd.add_argument("--resume", action="store_true", help="Resume from --checkpoint")

    oracle = sub.add_parser("oracle", parents=[common], help="Brute-force partial sums")
    oracle.add_argument("--n", type=int, required=True, help="Last term index")
    oracle.add_argument(
        "--export", type=Path, help="Write the series as parquet and the report as JSON under this directory"
    )

    pz = sub.add_parser("pz", parents=[common], help="Prime zeta P, P' or P''")
    pz.add_argument("--order", type=int, default=2, help="Derivative order 0, 1 or 2")
    pz.add_argument("--s", type=float, help="Argument s >= 2 (default: the published table)")

    bounds = sub.add_parser("check-bounds", parents=[common], help="Check Mertens-product bounds prime by prime")
    bounds.add_argument("--from", dest="lo", type=int, required=True, help="First x checked")
    bounds.add_argument("--to", dest="hi", type=int, required=True, help="Last x checked")
    bounds.add_argument("--family", choices=sorted(BOUND_FAMILIES), default="tight", help="Inequality checked")

    sub.add_parser("self-test", parents=[common], help="Constants, P'' table, oracle rows, smooth identities")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return validate_run_config(
        RunConfig(
            command=args.command,
            x=getattr(args, "x", None),
            n=getattr(args, "n", None),
            mode=MODE_FLAGS.get(getattr(args, "mode", "accel"), MODE_ACCELERATED),
            threads=args.threads,
            segment_size=args.segment_size,
            checkpoint=getattr(args, "checkpoint", None),
            resume=getattr(args, "resume", False),
            output_format=args.format,
            digits=args.digits,
            order=getattr(args, "order", 2),
            s=getattr(args, "s", None),
            lo=getattr(args, "lo", None),
            hi=getattr(args, "hi", None),
            family=getattr(args, "family", "tight"),
            export=getattr(args, "export", None),
        )
    )


def _mark(ok: bool) -> str:
    return "✅" if ok else "❌"


def _decimal(record: Optional[Dict[str, Any]]) -> str:
    return "-" if record is None else record["decimal"]


def _text_sum(result: Dict[str, Any]) -> List[str]:
    enclosure = result["enclosure"]
    lines = [
        f"🚀 {result['kind']} ({result['mode']}) up to x = {result['x']:,}",
        f"   primes used: {result['primes_used']:,}",
        f"   partial:     {_decimal(result['partial'])}",
    ]
    if result["mode"] == MODE_RAW:
        lines.append(f"   lower bound: {_decimal(enclosure['lo'])}")
    else:
        lines.extend([
            f"   constant:    {_decimal(result['constant'])}",
            f"   remainder:   [{_decimal(result['remainder_lo'])}, {_decimal(result['remainder_hi'])}]",
            f"   enclosure:   [{_decimal(enclosure['lo'])}, {_decimal(enclosure['hi'])}]",
            f"   certified:   {enclosure['certified_digits'] or '(none)'}",
        ])
    lines.append(f"   elapsed:     {result['elapsed_ms']:,} ms")
    reference = result.get("reference")
    if reference is not None:
        if "below" in reference:
            lines.append(f"{_mark(reference['below'])} lower bound below {reference['value']}")
        else:
            lines.append(f"{_mark(reference['contains'])} enclosure contains {reference['value']}")
            lines.append(f"{_mark(reference['certified_prefix'])} certified digits match")
            lines.append(f"{_mark(reference['width_ok'])} enclosure width")
    return lines


def _text_oracle(result: Dict[str, Any]) -> List[str]:
    lines = [f"📊 Partial sums up to N = {result['n']:,}"]
    for row in result["rows"]:
        line = f"   n = {row['n']:>12,}  Sa = {row['sa']['decimal']}  Sb = {row['sb']['decimal']}"
        for key in ("sa_check", "sb_check"):
            if key in row:
                check = row[key]
                line += f"  {check['label']} vs {check['printed']}: {'PASS' if check['passed'] else 'FAIL'}"
        lines.append(line)
    fit = result.get("fit")
    if fit is not None:
        lines.append(f"   fit: Sa_n ~ {fit['a']:.6f} - {fit['b']:.6f} n^-{fit['c']:.6f}")
    if result.get("export"):
        lines.append(f"   Saved to: {result['export']}")
    if result.get("report"):
        lines.append(f"   Report: {result['report']}")
    return lines


def _text_pz(result: Dict[str, Any]) -> List[str]:
    lines = [f"📊 Prime zeta order {result['order']} (split at {result['split_x']})"]
    for row in result["rows"]:
        line = f"   s = {row['s']:g}: {row['value']}"
        if "check" in row:
            line += f"  {'PASS' if row['check']['passed'] else 'FAIL'}"
        lines.append(line)
    return lines


def _text_bounds(result: Dict[str, Any]) -> List[str]:
    lines = [
        f"📋 {result['family']} bounds on [{result['lo']:,}, {result['hi']:,}]",
        f"   primes checked:   {result['primes_checked']:,}",
        f"   min upper margin: {result['min_upper_margin']} at {result['argmin_upper']}",
        f"   min lower margin: {result['min_lower_margin']} at {result['argmin_lower']}",
    ]
    if result["first_violation"] is not None:
        lines.append(f"❌ first violation at p = {result['first_violation']} ({result['violation_side']} side)")
    else:
        lines.append("✅ no violations")
    return lines


def _text_self_test(result: Dict[str, Any]) -> List[str]:
    lines = ["🧪 Self-test"]
    for name, ok in result["checks"].items():
        lines.append(f"   {name}: {'PASS' if ok else 'FAIL'} {_mark(ok)}")
    return lines


TEXT_RENDERERS = {
    "sb": _text_sum,
    "sa": _text_sum,
    "oracle": _text_oracle,
    "pz": _text_pz,
    "check-bounds": _text_bounds,
    "self-test": _text_self_test,
}


def _passed(command: str, result: Dict[str, Any]) -> bool:
    if command in ("sb", "sa"):
        reference = result.get("reference") or {}
        return all(value for key, value in reference.items() if key != "value")
    return bool(result.get("passed", True))


def execute(config: RunConfig, pipeline: ComputationPipeline) -> Dict[str, Any]:
    """Route a validated config to the pipeline"""
    if config.command == "sb":
        return pipeline.run_sb(config.x, mode=config.mode, checkpoint_path=config.checkpoint, resume=config.resume)
    if config.command == "sa":
        return pipeline.run_sa(config.x, mode=config.mode, checkpoint_path=config.checkpoint, resume=config.resume)
    if config.command == "oracle":
        return pipeline.oracle(config.n, export_dir=config.export)
    if config.command == "pz":
        return pipeline.prime_zeta(order=config.order, s=config.s)
    if config.command == "check-bounds":
        return pipeline.check_bounds(config.lo, config.hi, family=config.family)
    return pipeline.self_test()


def main(argv: Optional[List[str]] = None, settings: Any = None) -> int:
    settings = settings or DEFAULTS
    started = time.perf_counter()

    try:
        args = build_parser(settings).parse_args(argv)
    except _UsageError as e:
        print(f"❌ Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(logging.DEBUG if args.verbose else logging.INFO)

    try:
        config = _run_config(args)
        pipeline = ComputationPipeline(
            threads=config.threads,
            segment_size=config.segment_size,
            block_span=settings.BLOCK_SPAN,
            anchor_interval=settings.ANCHOR_INTERVAL,
            checkpoint_every=settings.CHECKPOINT_EVERY,
            oracle_max_n=settings.ORACLE_MAX_N,
            oracle_block_size=settings.ORACLE_BLOCK_SIZE,
            oracle_memory_cap_bytes=settings.ORACLE_MEMORY_CAP_BYTES,
            prime_zeta_split=settings.PRIME_ZETA_SPLIT,
            prime_zeta_k_max=settings.PRIME_ZETA_K_MAX,
            bounds_cap=settings.BOUNDS_CAP,
            digits=config.digits,
            reference_dir=settings.REFERENCE_DIR,
        )
        result = execute(config, pipeline)
    except GpfSumsError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        print(f"❌ I/O error: {e}", file=sys.stderr)
        return EXIT_IO

    if config.output_format == "structured":
        sys.stdout.write(render_structured(pipeline.document(config.command, result, started)))
    else:
        print("\n".join(TEXT_RENDERERS[config.command](result)))

    return EXIT_OK if _passed(config.command, result) else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
