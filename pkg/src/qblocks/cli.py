"""Command-line experiment driver.

Each subcommand runs a family of checks and writes a JSON report of the
form {"command", "params", "checks": [{"name", "pass", "detail"}],
"pass"}.  Exit code 0 means every check passed; 2 flags a periodicity
violation (the report carries the witness index); 1 covers any other
failure, including malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .analytic import (
    CertificateError,
    GammaPoleError,
    ZetaPoleError,
    completed_lambda,
    functional_eq_residual,
    gamma_ratio_zero_check,
    l_value,
    partial_zeta_value,
    zero_free_certificate,
    zero_scan,
)
from .arith import is_squarefree
from .chars import character_by_index, enumerate_characters, principal_character
from .csvio import CsvFormatError, dump_scalars_csv, load_block_values_csv
from .cyclo import as_cyclo
from .dseries import DirichletSeriesCoeffs
from .lift import (
    LiftParams,
    block_series,
    master_identity_residual,
    remark_variant_residual,
    shimura_A,
)
from .qseries import CoefficientBlock, block, theta_series

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PERIODICITY = 2


def detect_period(values, min_repeats: int = 3) -> int | None:
    """Smallest p with values[n] = values[n+p] throughout, seen >= 3 times.

    Returns None when no period shows at least min_repeats full cycles;
    a finite sample can flag a period but never prove aperiodicity.
    """
    values = list(values)
    if len(values) < 16:
        raise ValueError("need at least 16 samples to report a period")
    for p in range(1, len(values) // min_repeats + 1):
        good = True
        for n in range(len(values) - p):
            a, b = values[n], values[n + p]
            if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
                if a != b:
                    good = False
                    break
            elif as_cyclo(a) != as_cyclo(b):
                good = False
                break
        if good:
            return p
    return None


def _check(name: str, ok: bool, detail) -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


def _emit_report(report: dict, output_path: str | None) -> None:
    text = json.dumps(report, indent=2, default=str)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _finish(command: str, params: dict, checks: list[dict], args,
            periodicity_failure: bool = False) -> int:
    report = {
        "command": command,
        "params": params,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    _emit_report(report, args.output)
    if report["pass"]:
        return EXIT_OK
    return EXIT_PERIODICITY if periodicity_failure else EXIT_FAIL


def _select_psi(args):
    return character_by_index(args.psi_modulus, args.psi_index)


def _validate_common(args) -> None:
    if getattr(args, "nmax", None) is not None and args.nmax < 16:
        raise ValueError("nmax must be >= 16")
    if getattr(args, "d", None) is not None and not is_squarefree(args.d):
        raise ValueError(f"d = {args.d} must be square-free")


def _load_block(args, scale_exponent: int = 0) -> CoefficientBlock:
    if args.block_file:
        values = load_block_values_csv(args.block_file)
        return CoefficientBlock(d=args.d, scale_exponent=scale_exponent,
                                values=values,
                                source_precision=args.d * len(values) ** 2 + 1)
    if args.block_const is not None:
        c = Fraction(args.block_const)
        c = c.numerator if c.denominator == 1 else c
        return CoefficientBlock(d=args.d, scale_exponent=scale_exponent,
                                values=[c] * args.nmax,
                                source_precision=args.d * args.nmax**2 + 1)
    psi = _select_psi(args)
    f = theta_series(psi, args.d, weight3half=scale_exponent >= 1,
                     precision=args.d * args.nmax**2 + 1)
    return block(f, args.d, scale_exponent)


# -- subcommands --------------------------------------------------------


def cmd_theta_demo(args) -> int:
    psi = _select_psi(args)
    f = theta_series(psi, args.d, weight3half=args.weight32, precision=args.nmax)
    blk = block(f, args.d, args.i)
    checks = []
    period = detect_period(blk.values) if len(blk) >= 16 else None
    checks.append(_check(
        "block_period_detected", period is not None,
        {"period": period, "block_length": len(blk)},
    ))
    if period is not None and psi.modulus >= 1:
        checks.append(_check(
            "period_divides_modulus",
            psi.modulus % period == 0,
            {"period": period, "psi_modulus": psi.modulus},
        ))
    if not args.weight32 and args.i == 0:
        match = all(
            as_cyclo(blk.values[n - 1]) == psi.eval(n) for n in range(1, len(blk) + 1)
        )
        checks.append(_check("block_equals_psi_values", match, {}))
    if args.format == "csv" and args.output:
        dump_scalars_csv(args.output, [(n + 1, v) for n, v in enumerate(blk.values)],
                         exact=args.exact,
                         meta=f"theta block d={args.d} i={args.i} psi={psi.dump_line()}")
        args = argparse.Namespace(**{**vars(args), "output": None})
    params = {"psi_modulus": psi.modulus, "psi_index": args.psi_index,
              "d": args.d, "i": args.i, "nmax": args.nmax,
              "weight32": args.weight32}
    return _finish("theta-demo", params, checks, args)


def cmd_lift(args) -> int:
    psi = _select_psi(args)
    blk = _load_block(args)
    params = LiftParams(k=args.k, d=args.d, psi=psi, period=max(args.l, 1))
    nmax = min(args.nmax, len(blk))
    series = shimura_A(blk, params, nmax)
    checks = [_check("lift_leading_coefficient",
                     series.coeff(1) == blk.values[0],
                     {"A(1)": str(series.coeff(1))})]
    for p in (2, 3, 5):
        if p <= nmax:
            expect = as_cyclo(blk.values[p - 1]) + \
                params.psi_d.eval(p) * p ** (args.k - 1) * as_cyclo(blk.values[0])
            checks.append(_check(f"lift_prime_coefficient_p{p}",
                                 as_cyclo(series.coeff(p)) == expect, {}))
    if args.format == "csv" and args.output:
        dump_scalars_csv(args.output,
                         [(n, series.coeff(n)) for n in range(1, nmax + 1)],
                         exact=args.exact,
                         meta=f"lift coefficients k={args.k} d={args.d}")
        args = argparse.Namespace(**{**vars(args), "output": None})
    cli_params = {"psi_modulus": psi.modulus, "psi_index": args.psi_index,
                  "k": args.k, "d": args.d, "nmax": nmax}
    return _finish("lift", cli_params, checks, args)


def cmd_identity_check(args) -> int:
    psi = _select_psi(args)
    blk = _load_block(args)
    params = LiftParams(k=args.k, d=args.d, psi=psi, period=args.l)
    nmax = min(args.nmax, len(blk))
    result = master_identity_residual(blk, params, nmax)
    checks = [_check("master_identity_residual", result.exact_zero,
                     result.to_report("master_identity", params, nmax))]
    cli_params = {"k": args.k, "d": args.d, "l": args.l, "nmax": nmax,
                  "psi_modulus": psi.modulus, "psi_index": args.psi_index}
    return _finish("identity-check", cli_params, checks, args,
                   periodicity_failure=not result.exact_zero)


def cmd_remark_check(args) -> int:
    psi = _select_psi(args)
    if args.i < 1:
        raise ValueError("remark-check needs a scale exponent i >= 1")
    blk = _load_block(args, scale_exponent=args.i)
    params = LiftParams(k=args.k, d=args.d, psi=psi, period=args.l)
    nmax = min(args.nmax, len(blk))
    result = remark_variant_residual(blk, params, nmax)
    checks = [_check("remark_variant_residual", result.exact_zero,
                     result.to_report("remark_variant", params, nmax))]
    if args.i == args.k:
        checks.append(_check("scale_exponent_differs_from_weight", True,
                             {"flag": "i == k accepted for the identity; the "
                                      "vanishing conclusion does not apply"}))
    cli_params = {"k": args.k, "d": args.d, "l": args.l, "i": args.i,
                  "nmax": nmax, "psi_modulus": psi.modulus,
                  "psi_index": args.psi_index}
    return _finish("remark-check", cli_params, checks, args,
                   periodicity_failure=not result.exact_zero)


def cmd_analytic_check(args) -> int:
    checks = []
    tol = args.tol
    grid = [complex(sig, t)
            for sig in (-1.5, -0.5, 0.5, 1.25, 2.0)
            for t in (-7.0, -2.0, 0.25, 3.0)]
    for chi in enumerate_characters(args.modulus):
        if not chi.is_primitive():
            continue
        worst = 0.0
        used = 0
        for s in grid:
            try:
                r = functional_eq_residual(chi, s)
            except (GammaPoleError, ZetaPoleError):
                continue
            scale = max(1.0, abs(completed_lambda(chi, s)))
            worst = max(worst, r / scale)
            used += 1
        checks.append(_check(
            f"functional_equation_mod{chi.modulus}_idx{enumerate_characters(args.modulus).index(chi)}",
            worst <= tol and used >= 10,
            {"worst_scaled_residual": worst, "points": used, "tolerance": tol},
        ))
    delta = args.k % 2
    probe = [-(2 * j + 1) for j in range(args.k, args.k + 10)]
    vals = gamma_ratio_zero_check(args.k, delta, probe)
    worst = max(abs(v) for v in vals)
    checks.append(_check("gamma_ratio_trivial_zeros", worst <= 1e-12,
                         {"k": args.k, "delta": delta, "worst_abs": worst}))
    chars = [c for c in enumerate_characters(args.modulus)]
    worst_pz = 0.0
    for chi in chars[: 4]:
        for s in (1.5 + 0.3j, 2.5 - 1j):
            direct = l_value(chi, s)
            summed = sum(
                chi.eval_complex(h) * partial_zeta_value(h, chi.modulus, s)
                for h in range(1, chi.modulus + 1)
            )
            worst_pz = max(worst_pz, abs(direct - summed))
    checks.append(_check("partial_zeta_consistency", worst_pz <= 1e-9,
                         {"worst_abs": worst_pz}))
    params = {"modulus": args.modulus, "k": args.k, "tolerance": tol}
    return _finish("analytic-check", params, checks, args)


def cmd_lemma_check(args) -> int:
    values = load_block_values_csv(args.coeff_file)
    coeffs = DirichletSeriesCoeffs(values)
    try:
        cert = zero_free_certificate(coeffs, C=args.C, lam=args.lam, n1=args.n1 or coeffs.nmax)
    except CertificateError as exc:
        checks = [_check("zero_free_certificate", False, {"error": str(exc)})]
        return _finish("lemma-check", {"coeff_file": args.coeff_file}, checks, args)
    checks = [_check("zero_free_certificate", True, {
        "sigma0": cert.sigma0, "n0": cert.n0, "lead_abs": cert.lead_abs,
        "tail_bound_at_sigma0": cert.tail_bound_at_sigma0,
    })]
    flagged = zero_scan(coeffs, cert.sigma0, cert.sigma0 + args.scan_width,
                        args.t_max, args.grid_step, C=args.C, lam=args.lam)
    checks.append(_check("zero_scan_certified_region_empty", not flagged,
                         {"flagged": [[z.real, z.imag] for z in flagged[:10]]}))
    params = {"coeff_file": args.coeff_file, "C": args.C, "lambda": args.lam,
              "n1": args.n1, "nmax": coeffs.nmax}
    return _finish("lemma-check", params, checks, args)


# -- argument plumbing ---------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", help="report destination (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="json",
                   help="artifact format for coefficient-producing commands")
    p.add_argument("--exact", action="store_true",
                   help="exact cyclotomic CSV columns instead of embedded floats")


def _add_psi(p: argparse.ArgumentParser) -> None:
    p.add_argument("--psi-modulus", type=int, default=1, dest="psi_modulus")
    p.add_argument("--psi-index", type=int, default=0, dest="psi_index",
                   help="index into the deterministic character enumeration")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qblocks",
        description="Exact and analytic checks for periodic coefficient blocks "
                    "of half-integral weight q-expansions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theta-demo", help="theta block extraction and periodicity")
    _add_psi(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--nmax", type=int, default=2000)
    p.add_argument("--weight32", action="store_true",
                   help="n-weighted theta of weight 3/2 instead of weight 1/2")
    _add_common(p)
    p.set_defaults(func=cmd_theta_demo)

    p = sub.add_parser("lift", help="convolution lift coefficients of a block")
    _add_psi(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--nmax", type=int, default=200)
    p.add_argument("--block-file", dest="block_file")
    p.add_argument("--block-const", dest="block_const")
    _add_common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("identity-check", help="exact master identity residual")
    _add_psi(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--nmax", type=int, default=2000)
    p.add_argument("--block-file", dest="block_file")
    p.add_argument("--block-const", dest="block_const")
    _add_common(p)
    p.set_defaults(func=cmd_identity_check)

    p = sub.add_parser("remark-check", help="scaled-block identity residual")
    _add_psi(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--nmax", type=int, default=2000)
    p.add_argument("--block-file", dest="block_file")
    p.add_argument("--block-const", dest="block_const")
    _add_common(p)
    p.set_defaults(func=cmd_remark_check)

    p = sub.add_parser("analytic-check", help="functional equations and trivial zeros")
    p.add_argument("--modulus", type=int, default=5)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)
    p.set_defaults(func=cmd_analytic_check)

    p = sub.add_parser("lemma-check", help="zero-free certificate plus scan")
    p.add_argument("--coeff-file", dest="coeff_file", required=True)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--lambda", type=float, default=0.0, dest="lam")
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--scan-width", type=float, default=4.0, dest="scan_width")
    p.add_argument("--t-max", type=float, default=10.0, dest="t_max")
    p.add_argument("--grid-step", type=float, default=0.25, dest="grid_step")
    _add_common(p)
    p.set_defaults(func=cmd_lemma_check)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_common(args)
        return args.func(args)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
