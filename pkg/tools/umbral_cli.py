#!/usr/bin/env python3
"""
Umbral Toolkit Command Line
===========================
Batch front end over the exact umbral-calculus engine.

Features:
✅ family    - build a named Sheffer family with its delta and Sheffer operators
✅ construct - run the generalized Sheffer pipeline on a user sequence (JSON/YAML)
✅ verify    - run a verification suite, optionally writing an HTML/Excel/JSON report
✅ Exact "p/q" rationals everywhere, canonical JSON on stdout with --format json

Exit codes: 0 all checks pass, 1 a check or degree condition fails, 2 usage error.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import CONFIG, setup_logging  # noqa: E402
from exactalg import Poly1, parse_rational  # noqa: E402
from families import (  # noqa: E402
    FAMILIES_WITH_P, FAMILY_PARAMS, FamilySpec, family_P, family_Q, family_sequence,
    make_spec, spec_from_preset,
)
from operators import expand_in_xD  # noqa: E402
from report_generator import VerificationReportGenerator  # noqa: E402
from suites import FAMILY_SUITES, RANDOM_TRUNCATION, SUITES, SuiteResult, run_suite  # noqa: E402
from symfunc import SEQUENCE_KINDS  # noqa: E402
from umbral_core import generalized_sheffer, parse_poly_seq, verify_convolution  # noqa: E402
from umbral_errors import (  # noqa: E402
    FamilyError, PreconditionError, RationalParseError, SequenceDegreeError, UmbralError,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

FAMILY_SUITE_CHOICES = FAMILY_SUITES
SUITE_CHOICES = tuple(SUITES) + ('all',)


class UsageError(UmbralError):
    """Arguments that parse but do not make sense together."""


# =============================================================================
# OPERATIONS (shared with the web layer)
# =============================================================================

def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False)


def xd_form(coeffs: Sequence[Poly1]) -> List[List[str]]:
    """a_k(x) coefficient lists, trailing zero terms dropped."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return [a.to_json() for a in coeffs]


def family_payload(spec: FamilySpec) -> Dict:
    """Sequence, Q as sum a_k(x) D^k, and P when the family states one."""
    seq = family_sequence(spec)
    payload = {
        "family": spec.to_json(),
        "polys": [p.to_json() for p in seq],
        "Q": xd_form(expand_in_xD(family_Q(spec))),
        "P": xd_form(expand_in_xD(family_P(spec))) if spec.name in FAMILIES_WITH_P else None,
    }
    return payload


def load_sequence_document(path: str):
    """Parsed JSON or YAML document; '-' reads JSON from stdin."""
    if path == '-':
        return json.load(sys.stdin)
    file_path = Path(path)
    if not file_path.is_file():
        raise UsageError(f"input file not found: {path}")
    with open(file_path, 'r', encoding='utf-8') as f:
        if file_path.suffix.lower() in ('.yaml', '.yml'):
            return yaml.safe_load(f)
        return json.load(f)


def construct_payload(document, trunc: Optional[int] = None) -> Dict:
    """Generalized Sheffer data for a sequence document plus its convolution report."""
    seq = parse_poly_seq(document)
    if trunc is not None and trunc < seq.trunc:
        seq = seq.truncate(trunc)
    elif trunc is not None and trunc > seq.trunc:
        logger.warning(f"input stops at degree {seq.trunc}, below the requested {trunc}")
    data = generalized_sheffer(seq)
    report = verify_convolution(data.F, seq)
    payload = data.to_json()
    payload["Q"] = xd_form(expand_in_xD(data.Q))
    payload["report"] = report.to_json()
    return payload


def resolve_spec(family: Optional[str], preset: Optional[str], trunc: int,
                 nu=None, alpha=None, a=None) -> FamilySpec:
    if preset:
        return spec_from_preset(preset, trunc)
    if not family:
        raise UsageError("a family name or --preset is required")
    return make_spec(family, trunc, nu=nu, alpha=alpha, a=a)


def collect_runs(suite: str, spec: Optional[FamilySpec], trunc: int,
                 params: Dict, workers: int = 4) -> List[Tuple[str, List[SuiteResult]]]:
    """Run one suite, or every family suite for 'all', in a stable order."""
    names = list(FAMILY_SUITE_CHOICES) if suite == 'all' else [suite]
    needs_family = [n for n in names if n in FAMILY_SUITE_CHOICES]
    if needs_family and spec is None:
        raise UsageError(f"suite '{suite}' needs --family or --preset")

    def run(name: str) -> Tuple[str, List[SuiteResult]]:
        return name, run_suite(name, spec=spec, trunc=trunc, **params)

    if len(names) == 1:
        return [run(names[0])]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, names))


# =============================================================================
# RENDERING
# =============================================================================

def _render_xd(coeffs: List[List[str]]) -> str:
    terms = []
    for k, entry in enumerate(coeffs):
        a = Poly1(parse_rational(c) for c in entry)
        if a.is_zero():
            continue
        op = "" if k == 0 else ("D" if k == 1 else f"D^{k}")
        terms.append(f"({a}) {op}".rstrip())
    return " + ".join(terms) or "0"


def print_family(payload: Dict):
    fam = payload["family"]
    params = ", ".join(f"{k}={v}" for k, v in fam["params"].items())
    print(f"\n{'='*70}")
    print(f"FAMILY {fam['name']}" + (f" ({params})" if params else "") + f"  N={fam['trunc']}")
    print(f"{'='*70}\n")
    for n, entry in enumerate(payload["polys"]):
        print(f"  p_{n}(x) = {Poly1(parse_rational(c) for c in entry)}")
    print(f"\n  Q = {_render_xd(payload['Q'])}")
    if payload["P"] is not None:
        print(f"  P = {_render_xd(payload['P'])}")
    else:
        print("  P = (not stated for this family)")


def print_construct(payload: Dict):
    report = payload["report"]
    print(f"\n{'='*70}")
    print("GENERALIZED SHEFFER CONSTRUCTION")
    print(f"{'='*70}\n")
    print(f"  Q = {_render_xd(payload['Q'])}")
    for n, entry in enumerate(payload["basic"]["polys"]):
        print(f"  q_{n}(x) = {Poly1(parse_rational(c) for c in entry)}")
    status = "✅ convolution identity holds" if report["ok"] else "❌ convolution identity fails"
    lo, hi = report["checked_degrees"]
    print(f"\n  {status} (degrees {lo}..{hi})")


def print_runs(runs: List[Tuple[str, List[SuiteResult]]]):
    for suite, results in runs:
        print(f"\n{'='*70}")
        print(f"SUITE {suite}")
        print(f"{'='*70}")
        for result in results:
            icon = "✅" if result.ok else "❌"
            lo, hi = result.report.checked_degrees
            print(f"  {icon} {result.label}" + (f"  [degrees {lo}..{hi}]" if hi >= lo else ""))
            for v in result.report.violations[:3]:
                print(f"       degree {v.degree}: {v.note}")
                if v.lhs is not None:
                    print(f"         lhs = {v.lhs}")
                    print(f"         rhs = {v.rhs}")
            if len(result.report.violations) > 3:
                print(f"       ... {len(result.report.violations) - 3} more")
            for key, value in result.details.items():
                print(f"       {key}: {value}")
    total = sum(len(results) for _, results in runs)
    passed = sum(1 for _, results in runs for r in results if r.ok)
    print(f"\n📊 {passed}/{total} checks passed")


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_family(args) -> int:
    spec = resolve_spec(args.name, args.preset, args.degree, args.nu, args.alpha, args.a)
    payload = family_payload(spec)
    if args.format == 'json':
        print(dumps(payload))
    else:
        print_family(payload)
    return EXIT_OK


def cmd_construct(args) -> int:
    payload = construct_payload(load_sequence_document(args.input), args.degree)
    if args.format == 'json':
        print(dumps(payload))
    else:
        print_construct(payload)
    return EXIT_OK if payload["report"]["ok"] else EXIT_VIOLATION


def cmd_verify(args) -> int:
    spec = None
    if args.family or args.preset:
        spec = resolve_spec(args.family, args.preset, args.degree, args.nu, args.alpha, args.a)
    params = {"seed": args.seed, "sequence": args.sequence,
              "scale": parse_rational(args.scale), "c": parse_rational(args.c),
              "workers": args.workers}
    if args.runs is not None:
        params["runs"] = args.runs
    runs = collect_runs(args.suite, spec, args.degree, params, workers=args.workers)

    generator = VerificationReportGenerator(runs)
    if args.output:
        generator.save(args.output)
        if args.format != 'json':
            print(f"📄 Report saved to: {args.output}")
    if args.format == 'json':
        print(dumps(generator.to_dict()))
    else:
        print_runs(runs)
    return EXIT_OK if all(r.ok for _, results in runs for r in results) else EXIT_VIOLATION


# =============================================================================
# ARGUMENTS
# =============================================================================

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-n', '--degree', type=int,
                        help=f"truncation degree N (default: {CONFIG['TRUNCATION']}, "
                             f"{RANDOM_TRUNCATION} for the random suite)")
    common.add_argument('--format', choices=('text', 'json'), default=CONFIG['OUTPUT_FORMAT'],
                        help='stdout format (default: %(default)s)')
    common.add_argument('--seed', type=int, default=CONFIG['SEED'],
                        help='seed for property runs (default: %(default)s)')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    return common


def _family_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--preset', help='named preset from data/family_presets.json')
    parser.add_argument('--nu', help='hermite variance, p/q')
    parser.add_argument('--alpha', help='laguerre parameter, p/q')
    parser.add_argument('--a', help='abel parameter, p/q')


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='umbral_cli.py',
        description='Umbral Toolkit: exact Sheffer sequences, operators and identity checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Bernoulli polynomials of the second kind up to degree 2
  python umbral_cli.py family bernoulli2 --degree 2

  # Hermite family as canonical JSON
  python umbral_cli.py family hermite --nu 3/2 -n 6 --format json

  # Generalized Sheffer pipeline on a user sequence
  python umbral_cli.py construct sequence.yaml

  # Coalgebra suite with an Excel report
  python umbral_cli.py verify coalgebra --family hermite --nu 3/2 -n 10 -o coalgebra.xlsx

  # Symmetric-function suite on the conjugate monomial sequence
  python umbral_cli.py verify sym --sequence m-conjugate -n 6
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    fam = sub.add_parser('family', parents=[common], help='build a named family')
    fam.add_argument('name', nargs='?', choices=tuple(FAMILY_PARAMS), help='family name')
    _family_flags(fam)
    fam.set_defaults(handler=cmd_family)

    con = sub.add_parser('construct', parents=[common], help='run the pipeline on a sequence')
    con.add_argument('input', help="PolySeq document (.json, .yaml/.yml, or '-' for stdin JSON)")
    con.set_defaults(handler=cmd_construct)

    ver = sub.add_parser('verify', parents=[common], help='run a verification suite')
    ver.add_argument('suite', choices=SUITE_CHOICES, help='suite name')
    ver.add_argument('--family', choices=tuple(FAMILY_PARAMS), help='family for the family suites')
    _family_flags(ver)
    ver.add_argument('--c', default='0', help='shift constant for the coalgebra suite (default: 0)')
    ver.add_argument('--sequence', choices=SEQUENCE_KINDS, default='e',
                     help='full sequence for the sym suite (default: e)')
    ver.add_argument('--scale', default='1', help='scale factor for the sym sequence (default: 1)')
    ver.add_argument('--runs', type=int, help='number of seeded runs (expansion, random)')
    ver.add_argument('--workers', type=int, default=4, help='parallel workers (default: 4)')
    ver.add_argument('-o', '--output', help='report file (.json, .html or .xlsx)')
    ver.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.degree is None:
        random_suite = getattr(args, 'suite', None) == 'random'
        args.degree = RANDOM_TRUNCATION if random_suite else CONFIG['TRUNCATION']
    if args.degree < 0:
        parser.error(f"--degree must be >= 0, got {args.degree}")
    setup_logging(stream=sys.stderr)
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        return args.handler(args)
    except (RationalParseError, FamilyError, UsageError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        print(f"❌ Error: could not parse input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SequenceDegreeError as e:
        print(f"❌ Error: {e} (index {e.index})", file=sys.stderr)
        return EXIT_VIOLATION
    except PreconditionError as e:
        print(f"❌ Precondition failed: {e}", file=sys.stderr)
        if e.report is not None and args.format == 'json':
            print(dumps({"ok": False, "precondition": e.report.to_json()}))
        return EXIT_VIOLATION
    except ValueError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UmbralError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == '__main__':
    sys.exit(main())
