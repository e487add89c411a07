"""Command-line interface.

Subcommands: optimal, evaluate, search-product, sweep, certify.
Results go to stdout (JSON reports, or CSV for sweeps); diagnostics to
stderr. Exit codes: 0 ok (certify: ACCEPT), 1 certify REJECT, 2 parse or
invalid range, 3 validation, 4 dimension mismatch, 5 search failure.
"""
from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone

import numpy as np

from .entropies import conditional_h, conditional_hmax, optimal_values
from .exceptions import (
    DimensionMismatch,
    InfeasibleK,
    NoSuccess,
    ParseError,
    QrandcertError,
)
from .guessing import GAP_THRESHOLD, dual_certificate, pguess_fixed
from .measurements import (
    condition_residuals,
    eigenbasis_descending,
    qutrit_family,
    unbiased_basis,
)
from .serialize import basis_to_json, dump_report, load_basis, load_state, matrix_to_json
from .states import qubit_m_state

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DIMENSION = 4
EXIT_SEARCH = 5


def _provenance(seed=None, **tolerances) -> dict:
    from . import __version__

    return {
        "version": __version__,
        "seed": seed,
        "tolerances": tolerances,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def _optimal_payload(ov) -> dict:
    return {
        "p_guess_star": ov.p_guess_star,
        "h_min_star": ov.h_min_star,
        "h_star": ov.h_star,
        "h_max_star": ov.h_max_star,
    }


def cmd_optimal(args) -> int:
    rho = load_state(args.state, tol=args.tol_psd)
    ov = optimal_values(rho)
    report = {
        "command": "optimal",
        "input": {"state_file": args.state, "dim": rho.dim},
        "optimal_values": _optimal_payload(ov),
        "achieving_basis": basis_to_json(unbiased_basis(rho)),
        "provenance": _provenance(tol_psd=args.tol_psd),
    }
    print(dump_report(report))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    rho = load_state(args.state, tol=args.tol_psd)
    basis = load_basis(args.measurement)
    result = pguess_fixed(rho, basis, seed=args.seed, restarts=args.restarts)
    res = condition_residuals(rho, basis)
    h = conditional_h(rho, basis)
    hmax = conditional_hmax(rho, basis)
    gap_tol = args.tol_bracket
    report = {
        "command": "evaluate",
        "input": {
            "state_file": args.state,
            "measurement_file": args.measurement,
            "dim": rho.dim,
        },
        "p_guess": {
            "value": result.value,
            "h_min": float(-np.log2(result.value)),
            "label": "exact" if result.bracket.gap <= gap_tol else "bracketed",
            "bracket": {
                "lower": result.bracket.lower,
                "upper": result.bracket.upper,
                "gap": result.bracket.gap,
                "witness_x": matrix_to_json(result.bracket.witness_x),
            },
        },
        "h": h,
        "h_max": {
            "value": hmax.h_max,
            "p_secr": hmax.p_secr,
            "iterations": hmax.iterations,
        },
        "condition_residuals": {
            "hmin": [float(x) for x in res.hmin_residuals],
            "h": [float(x) for x in res.h_residuals],
            "hmax": [float(x) for x in res.hmax_residuals],
            "hmax_degenerate_feasible": res.hmax_degenerate_feasible,
            "hmax_witness_weights": (
                None
                if res.hmax_witness_weights is None
                else [float(x) for x in res.hmax_witness_weights]
            ),
        },
        "optimal_values": _optimal_payload(optimal_values(rho)),
        "provenance": _provenance(
            seed=args.seed, tol_psd=args.tol_psd, tol_bracket=gap_tol
        ),
    }
    print(dump_report(report))
    return EXIT_OK


def _search_payload(sr, success: bool) -> dict:
    return {
        "success": success,
        "basis": basis_to_json(sr.basis),
        "residual": sr.residual,
        "target": sr.target,
        "mode": sr.mode,
        "restarts_used": sr.restarts_used,
        "seed": sr.seed,
    }


def cmd_search_product(args) -> int:
    from .search import find_product_basis

    rho = load_state(args.state, tol=args.tol_psd)
    try:
        sr = find_product_basis(
            rho, args.target, args.mode, seed=args.seed, restarts=args.restarts, tol=args.tol
        )
        payload, code = _search_payload(sr, True), EXIT_OK
    except NoSuccess as exc:
        payload, code = _search_payload(exc.result, False), EXIT_SEARCH
    report = {
        "command": "search-product",
        "input": {"state_file": args.state, "dim": rho.dim},
        "search": payload,
        "provenance": _provenance(seed=args.seed, tol=args.tol, tol_psd=args.tol_psd),
    }
    print(dump_report(report))
    return code


def _csv_rows(rows) -> str:
    lines = ["param,p_guess,h_min,h,h_max"]
    for row in rows:
        lines.append(",".join(f"{x:.12g}" for x in row))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    grid = np.linspace(args.start, args.stop, args.steps)
    rows = []
    if args.family == "qubit-m":
        if not (0.0 <= args.start <= 1.0 and 0.0 <= args.stop <= 1.0):
            print("qubit-m range must lie within [0, 1]", file=sys.stderr)
            return EXIT_PARSE
        for m in grid:
            ov = optimal_values(qubit_m_state(float(m)))
            rows.append((m, ov.p_guess_star, ov.h_min_star, ov.h_star, ov.h_max_star))
    else:  # qutrit-k
        if args.state is None or args.gamma_mode is None:
            print("qutrit-k sweep needs --state and --gamma-mode", file=sys.stderr)
            return EXIT_PARSE
        rho = load_state(args.state, tol=args.tol_psd)
        if rho.dim != 3:
            raise DimensionMismatch(f"qutrit-k sweep needs a qutrit state, got dim {rho.dim}")
        lam = rho.eigen.eigenvalues[::-1]
        if args.gamma_mode == "sqrt-spectrum":
            gamma = np.sqrt(lam)
        elif args.gamma_mode == "spectrum":
            gamma = lam
        else:  # degenerate
            gamma = np.array([lam[0], (lam[1] + lam[2]) / 2.0, (lam[1] + lam[2]) / 2.0])
        eb = eigenbasis_descending(rho)
        try:
            for k in grid:
                basis = qutrit_family(gamma, float(k), eb)
                res = pguess_fixed(rho, basis, seed=args.seed)
                h = conditional_h(rho, basis)
                hm = conditional_hmax(rho, basis)
                rows.append((k, res.value, float(-np.log2(res.value)), h, hm.h_max))
        except InfeasibleK as exc:
            print(f"infeasible k in sweep range: {exc}", file=sys.stderr)
            return EXIT_PARSE
    text = _csv_rows(rows)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_certify(args) -> int:
    rho = load_state(args.state, tol=args.tol_psd)
    basis = load_basis(args.measurement)
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    bracket = dual_certificate(rho, basis)
    certified = float(-np.log2(bracket.upper))
    accept = certified >= args.claimed_hmin - args.tol_accept
    report = {
        "command": "certify",
        "input": {
            "state_file": args.state,
            "measurement_file": args.measurement,
            "dim": rho.dim,
        },
        "verdict": "ACCEPT" if accept else "REJECT",
        "claimed_hmin": args.claimed_hmin,
        "certified_hmin_lower": certified,
        "p_guess_upper": bracket.upper,
        "p_guess_achieved_lower": bracket.lower,
        "witness_x": matrix_to_json(bracket.witness_x),
        "witness_note": "X dominates each projector on the support of the state",
        "provenance": _provenance(tol_psd=args.tol_psd, tol_accept=args.tol_accept),
    }
    print(dump_report(report))
    return EXIT_OK if accept else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrandcert",
        description="Intrinsic-randomness quantification and certification "
        "for finite-dimensional quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol_psd(p):
        p.add_argument(
            "--tol-psd",
            type=float,
            default=1e-10,
            help="state validation tolerance (default 1e-10)",
        )

    p_opt = sub.add_parser("optimal", help="closed-form optima over all measurements")
    p_opt.add_argument("state", help="state JSON file")
    add_tol_psd(p_opt)
    p_opt.set_defaults(func=cmd_optimal)

    p_eval = sub.add_parser("evaluate", help="quantities for a fixed measurement")
    p_eval.add_argument("state", help="state JSON file")
    p_eval.add_argument("measurement", help="measurement JSON file")
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--restarts", type=int, default=32)
    p_eval.add_argument(
        "--tol-bracket",
        type=float,
        default=GAP_THRESHOLD,
        help="gap threshold for the exact/bracketed label (default 1e-5)",
    )
    add_tol_psd(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_search = sub.add_parser(
        "search-product", help="find a product basis meeting an optimality condition"
    )
    p_search.add_argument("state", help="two-qubit state JSON file")
    p_search.add_argument("--target", choices=("hmin", "h", "hmax"), required=True)
    p_search.add_argument("--mode", choices=("general", "restricted"), default="general")
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--restarts", type=int, default=200)
    p_search.add_argument("--tol", type=float, default=1e-10)
    add_tol_psd(p_search)
    p_search.set_defaults(func=cmd_search_product)

    p_sweep = sub.add_parser("sweep", help="CSV sweep over a named state family")
    p_sweep.add_argument("family", choices=("qubit-m", "qutrit-k"))
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", default=None, help="CSV path ('-' or omit for stdout)")
    p_sweep.add_argument("--state", default=None, help="qutrit state JSON (qutrit-k)")
    p_sweep.add_argument(
        "--gamma-mode",
        choices=("sqrt-spectrum", "spectrum", "degenerate"),
        default=None,
        help="family weights: sqrt of spectrum, spectrum, or degenerate pair",
    )
    p_sweep.add_argument("--seed", type=int, default=0)
    add_tol_psd(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cert = sub.add_parser(
        "certify", help="verdict on a claimed min-entropy via the dual witness"
    )
    p_cert.add_argument("state", help="state JSON file")
    p_cert.add_argument("measurement", help="measurement JSON file")
    p_cert.add_argument("claimed_hmin", type=float, help="claimed bits of min-entropy")
    p_cert.add_argument(
        "--tol-accept",
        type=float,
        default=1e-6,
        help="slack on the accept comparison (default 1e-6)",
    )
    add_tol_psd(p_cert)
    p_cert.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except NoSuccess as exc:  # pragma: no cover - commands handle their own
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except QrandcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
