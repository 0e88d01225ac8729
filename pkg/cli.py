import argparse
import logging
import re
import sys
import time
from fractions import Fraction

from app.audit import audit_datum
from app.combinatorics import GroundSet, members, size, stirling2
from app.config import (
    DEFAULT_JOBS,
    DEFAULT_MAX_DENOMINATOR,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    LARGE_N_GUARD,
    validate_config,
)
from app.divisors import (
    boundary_keys,
    collapsed_coefficient,
    delta,
    delta_prime,
    difference,
    jsum_coefficient,
    pullback_pushforward,
    pushforward,
)
from app.models import grid_data, model_descriptor, scan
from app.picard import expected_picard_rank, pairing_rank
from app.report import FORMATS, ReportDocument, emit
from app.sampling import sample_weights
from app.verifier import run_suite, suite_data
from app.weights import Regime, WeightDatum

TOKEN = re.compile(r"^[+-]?(\d+/\d+|\d+(\.\d*)?|\.\d+)$")

# flags that never change the emitted bytes
UNECHOED = {"command", "func", "jobs", "out", "verbose", "timing", "force", "format"}


class MalformedWeightError(ValueError):
    pass


class LargeInstanceError(ValueError):
    pass


def setup_logging(verbose=False):
    """Setup logging with appropriate level and format."""
    level = logging.DEBUG if verbose else logging.INFO
    format_string = '[%(asctime)s] %(levelname)s: %(message)s'

    # stdout carries the report bytes, so logs go to stderr
    logging.basicConfig(
        level=level,
        format=format_string,
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )


def parse_weights(text):
    """Parse "p/q" or finite-decimal tokens into an exact weight datum."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if not TOKEN.match(token):
            raise MalformedWeightError(f"malformed weight token {token!r}: expected p/q or a finite decimal")
        try:
            values.append(Fraction(token))
        except ZeroDivisionError:
            raise MalformedWeightError(f"malformed weight token {token!r}: zero denominator")
    return WeightDatum(tuple(values))


def guard_size(n, force):
    """Refuse curve enumeration above the large-n threshold unless forced."""
    GroundSet(n)
    if n > LARGE_N_GUARD and not force:
        raise LargeInstanceError(
            f"n={n} would enumerate {stirling2(n, 4)} vital curves; pass --force to proceed")
    if n > LARGE_N_GUARD:
        logging.warning(f"⚠️ Enumerating {stirling2(n, 4)} vital curves for n={n}")


def command_echo(args):
    options = {}
    for key, value in sorted(vars(args).items()):
        if key in UNECHOED or value is None or value is False:
            continue
        options[key.replace("_", "-")] = value if isinstance(value, (bool, int)) else str(value)
    return {"name": args.command, "options": options}


def _subset_key(mask):
    return (size(mask), members(mask))


def class_payload(name, divisor, datum, **extra):
    terms = sorted(divisor.terms(datum), key=lambda term: _subset_key(term[0]))
    payload = {
        "class": name,
        "coefficients": [{"subset": list(members(rep)), "coefficient": value} for rep, value in terms],
    }
    payload.update(extra)
    return payload


def run_class(args):
    datum = parse_weights(args.weights)
    name = args.command
    logging.info(f"🔍 Computing {name} for weights {','.join(datum.as_strings())} ({datum.regime.value})")
    if name == "delta":
        payload = class_payload(name, delta(datum), datum)
    elif name == "pushforward":
        pushed = pushforward(delta(datum), datum)
        contracted = sorted((c.members for c in pushed.contracted if c.size >= 2), key=_subset_key)
        payload = class_payload(name, pushed.divisor, datum, contracted=[list(members(m)) for m in contracted])
    elif name == "pullback":
        form = jsum_coefficient if args.form == "jsum" else collapsed_coefficient
        payload = class_payload(name, pullback_pushforward(datum, form), datum, form=args.form)
    elif name == "difference":
        payload = class_payload(name, difference(datum), datum)
    else:
        payload = class_payload(name, delta_prime(datum), datum)
    logging.info(f"✅ {len(payload['coefficients'])} nonzero coefficients")
    return ReportDocument("class", command_echo(args), datum.n, datum.as_strings(), payload), 0


def run_curves(args):
    datum = parse_weights(args.weights)
    guard_size(datum.n, args.force)
    logging.info(f"🔍 Enumerating {stirling2(datum.n, 4)} vital curves for n={datum.n}")
    result = audit_datum(datum, args.jobs, keep_rows=True)
    curves = []
    for row in result.rows:
        entry = {
            "partition": row.partition,
            "contracted": row.contracted,
            "type": row.curve_type,
            "table_value": None,
            "direct_value": None,
            "match": None,
        }
        if args.table_check:
            entry.update(table_value=row.table_value, direct_value=row.direct_value, match=row.match)
        curves.append(entry)
    payload = {
        "curves": curves,
        "summary": {
            "curves": result.curves,
            "contracted": result.contracted,
            "types": dict(sorted(result.types.items())),
            "failures": dict(sorted(result.failures.items())) if args.table_check else {},
        },
    }
    status = 1 if args.table_check and not result.ok else 0
    if args.table_check:
        if status:
            logging.error(f"❌ Table check failed: {', '.join(sorted(result.failures))}")
        else:
            logging.info(f"✅ Table check passed on {result.curves} curves")
    return ReportDocument("curves", command_echo(args), datum.n, datum.as_strings(), payload), status


def run_verify(args):
    if args.weights:
        data = [parse_weights(args.weights)]
        n = data[0].n
        guard_size(n, args.force)
    else:
        n = args.n
        guard_size(n, args.force)
        data = suite_data(n, args.samples, args.seed, args.max_denominator, structured=not args.no_structured)
    report = run_suite(n, data, args.jobs)
    weights = data[0].as_strings() if args.weights else None
    document = ReportDocument("verification", command_echo(args), n, weights,
                              report.to_payload(include_timing=args.timing))
    return document, 0 if report.passed else 1


def run_model(args):
    datum = parse_weights(args.weights)
    if not args.no_ample_check:
        guard_size(datum.n, args.force)
    descriptor = model_descriptor(datum, check_ample=not args.no_ample_check, jobs=args.jobs)
    logging.info(f"✅ Model: {descriptor.kind}")
    status = 1 if descriptor.verified_ample is False else 0
    return ReportDocument("model", command_echo(args), datum.n, datum.as_strings(), descriptor.to_payload()), status


def run_rank(args):
    guard_size(args.n, args.force)
    ground = GroundSet(args.n)
    start_time = time.time()
    rank = pairing_rank(ground)
    expected = expected_picard_rank(args.n)
    logging.info(f"📊 Pairing rank {rank} (expected {expected}) in {time.time() - start_time:.2f} seconds")
    payload = {
        "rank": rank,
        "expected": expected,
        "rows": stirling2(args.n, 4),
        "columns": len(boundary_keys(args.n)),
        "match": rank == expected,
    }
    return ReportDocument("rank", command_echo(args), args.n, None, payload), 0 if rank == expected else 1


def run_scan(args):
    n = args.n
    GroundSet(n)
    if not args.no_ample_check:
        guard_size(n, args.force)
    regimes = [Regime.INTERIOR, Regime.BOUNDARY] if args.regime == "all" else [Regime(args.regime)]
    if args.grid:
        data = [d for d in grid_data(n, args.grid) if d.regime in regimes]
    else:
        data = []
        for offset, regime in enumerate(regimes):
            data.extend(sample_weights(n, regime, args.samples, args.seed + offset, args.max_denominator).entries)
    logging.info(f"🔍 Scanning {len(data)} weight data for n={n}")
    descriptors, summary = scan(data, check_ample=not args.no_ample_check, jobs=args.jobs)
    payload = {"descriptors": [d.to_payload() for d in descriptors], "summary": summary}
    return ReportDocument("scan", command_echo(args), n, None, payload), 0


def write_output(blob, out):
    if out:
        with open(out, "wb") as f:
            f.write(blob)
        logging.info(f"📄 Report written to: {out}")
    else:
        sys.stdout.buffer.write(blob)
        sys.stdout.flush()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="Report format (default: json)")
    common.add_argument("--out", help="Write the report to FILE instead of stdout")
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker processes for curve enumeration")
    common.add_argument("--force", action="store_true", help=f"Allow curve enumeration above n={LARGE_N_GUARD}")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Seeded weight data per regime")
    sampling.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed for the corpus")
    sampling.add_argument("--max-denominator", type=int, default=DEFAULT_MAX_DENOMINATOR,
                          help="Largest common denominator of sampled weights")

    parser = argparse.ArgumentParser(
        description="m0n: exact divisor and vital-curve computations on moduli of pointed rational curves",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py delta --weights 1,1,1,2/5,2/5 --format json
  python cli.py curves --weights 1,1,1,1,1 --table-check
  python cli.py verify --n 7 --samples 200 --seed 42
  python cli.py model --weights 0.5,0.5,0.5,0.5
  python cli.py rank --n 6
  python cli.py scan --n 5 --samples 500 --seed 1

Note: weights are exact; each entry is p/q or a finite decimal.
      Exit codes: 0 success, 1 verification failure, 2 invalid input.
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("delta", "K + sum a_i psi_i in the boundary basis"),
                       ("pushforward", "Drop the contracted coordinates of delta (total weight > 2)"),
                       ("pullback", "Pullback of the pushforward of delta (total weight > 2)"),
                       ("difference", "delta minus the pullback of its pushforward (total weight > 2)"),
                       ("delta-prime", "The total-weight-2 comparison class")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--weights", required=True, help="Comma-separated weights, e.g. 1,1,1,2/5,2/5")
        if name == "pullback":
            p.add_argument("--form", choices=["collapsed", "jsum"], default="collapsed",
                           help="Contracted coefficients in collapsed or summed-over-pairs form")
        p.set_defaults(func=run_class)

    p = sub.add_parser("curves", parents=[common], help="Enumerate vital curves with their types")
    p.add_argument("--weights", required=True)
    p.add_argument("--table-check", action="store_true", help="Compare tabulated and direct intersection numbers")
    p.set_defaults(func=run_curves)

    p = sub.add_parser("verify", parents=[common, sampling], help="Run the verification suite")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=int, help="Number of marked points")
    target.add_argument("--weights", help="Verify a single weight datum")
    p.add_argument("--no-structured", action="store_true", help="Skip the hand-picked structured cases")
    p.add_argument("--timing", action="store_true", help="Include elapsed time in the report")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("model", parents=[common], help="Describe the birational model a weight datum selects")
    p.add_argument("--weights", required=True)
    p.add_argument("--no-ample-check", action="store_true", help="Skip the vital-curve positivity check")
    p.set_defaults(func=run_model)

    p = sub.add_parser("rank", parents=[common], help="Rank of the boundary/vital-curve pairing matrix")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=run_rank)

    p = sub.add_parser("scan", parents=[common, sampling], help="Model descriptors across many weight data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, help="Scan every weight k/GRID instead of sampling")
    p.add_argument("--regime", choices=["interior", "boundary", "all"], default="all")
    p.add_argument("--no-ample-check", action="store_true", help="Skip the vital-curve positivity check")
    p.set_defaults(func=run_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    setup_logging(args.verbose)

    try:
        validate_config()
        if args.jobs == 0:
            raise ValueError("--jobs must be nonzero (use -1 for every core)")
        logging.info(f"🚀 m0n {args.command}")
        start_time = time.time()
        document, status = args.func(args)
        write_output(emit(document, args.format), args.out)
        logging.info(f"🎉 Done in {time.time() - start_time:.2f} seconds")
        return status

    except KeyboardInterrupt:
        logging.info("\n⏹️  Operation cancelled by user")
        return 1
    except OSError as e:
        logging.error(f"❌ Cannot write report: {e}")
        return 1
    except ValueError as e:
        logging.error(f"❌ Invalid input: {e}")
        return 2
    except Exception as e:
        logging.error(f"❌ Unexpected error: {e}")
        if args.verbose:
            import traceback
            logging.debug(traceback.format_exc())
        return 1


if __name__ == "__main__":
    sys.exit(main())
