"""Command-line front end: single estimates, sweeps, references, reports."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import harness, iqae, mlqae
from .integrator import (
    IntegralSpec,
    amplitude_to_integral,
    exact_reference,
    relative_error,
    riemann_sum,
    true_amplitude,
)
from .oracle import OracleSpec
from .sampler import NoiseSpec


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for
    # sweeps containing unconverged rows
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_shots(text: str) -> tuple[int, ...]:
    try:
        shots = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shot list {text!r}")
    if not shots or any(s < 1 for s in shots):
        raise argparse.ArgumentTypeError("shot counts must be positive")
    return shots


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algorithm", choices=("mlqae", "iqae"), required=True)
    parser.add_argument("--qubits", type=int, default=2, help="domain qubits n")
    parser.add_argument("--m", type=int, default=3, help="mlqae schedule depth")
    parser.add_argument("--epsilon", type=float, default=0.01, help="iqae target half-width")
    parser.add_argument("--alpha-conf", type=float, default=0.05, help="iqae failure probability")
    parser.add_argument("--noise-depol", type=float, default=0.0)
    parser.add_argument("--noise-readout", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qaemc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    est = sub.add_parser("estimate", help="one estimator run")
    _add_common(est)
    est.add_argument("--shots", type=int, default=1024, help="shots per circuit/round")

    sweep = sub.add_parser("sweep", help="shot sweep with repeated trials, written as CSV")
    _add_common(sweep)
    sweep.add_argument("--shots", type=_parse_shots, default=_parse_shots("16,32,64,128,256,512,1024"),
                       help="single shot count or comma list")
    sweep.add_argument("--trials", type=int, default=30)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--out", type=Path, required=True, help="output CSV path")
    sweep.add_argument("--figures", action="store_true",
                       help="also render summary figures next to the CSV")

    exact = sub.add_parser("exact", help="print reference values for a domain size")
    exact.add_argument("--qubits", type=int, default=2)

    report = sub.add_parser("report", help="summary table and figures from a sweep CSV")
    report.add_argument("csv", type=Path)
    report.add_argument("--out-dir", type=Path, default=None,
                        help="where to write outputs (default: next to the CSV)")
    return parser


def _cmd_estimate(args: argparse.Namespace) -> int:
    spec = OracleSpec(n=args.qubits, b=math.pi / 4, alpha=0.5)
    noise = NoiseSpec(p_depol=args.noise_depol, p_readout=args.noise_readout)
    truth = true_amplitude(args.qubits)
    print(f"algorithm      {args.algorithm}")
    print(f"domain qubits  {args.qubits}  (true amplitude {truth!r})")
    if args.algorithm == "mlqae":
        res = mlqae.estimate(
            spec, mlqae.MlqaeConfig(m=args.m, shots_per_circuit=args.shots), noise, args.seed
        )
        print(f"a_hat          {res.a_hat!r}")
        print(f"theta_hat      {res.theta_hat!r}")
    else:
        res = iqae.estimate(
            spec,
            iqae.IqaeConfig(epsilon=args.epsilon, alpha_conf=args.alpha_conf,
                            shots_per_round=args.shots),
            noise,
            args.seed,
        )
        print(f"a_hat          {res.a_hat!r}")
        print(f"a interval     [{res.a_lo!r}, {res.a_hi!r}]")
        print(f"rounds         {len(res.rounds)}  (max power {res.max_power}, "
              f"converged {str(res.converged).lower()})")
    print(f"rel_error      {relative_error(res.a_hat, truth)!r}")
    print(f"integral       {amplitude_to_integral(res.a_hat, math.pi / 4)!r}")
    print(f"oracle_calls   {res.oracle_calls}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = harness.ExperimentConfig(
        algorithm=args.algorithm,
        n=args.qubits,
        shots_list=args.shots,
        trials=args.trials,
        m=args.m,
        epsilon=args.epsilon,
        alpha_conf=args.alpha_conf,
        noise=NoiseSpec(p_depol=args.noise_depol, p_readout=args.noise_readout),
        seed=args.seed,
        workers=args.workers,
        output_path=str(args.out),
    )
    rows = harness.run_sweep(cfg)
    harness.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.figures:
        from .report import render_report

        for path in render_report(rows, args.out.parent, args.out.stem):
            print(f"wrote {path}")
    return 2 if any(not r.converged for r in rows) else 0


def _cmd_exact(args: argparse.Namespace) -> int:
    n = args.qubits
    n_sub = 2**n
    print(f"domain qubits    {n}  ({n_sub} subintervals)")
    print(f"midpoint sum     {riemann_sum(IntegralSpec(n_sub=n_sub))!r}")
    print(f"exact integral   {exact_reference('sin2')!r}")
    print(f"exact amplitude  {exact_reference('sin2_amplitude')!r}")
    print(f"true amplitude   {true_amplitude(n)!r}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    rows = harness.read_csv(args.csv)
    out_dir = args.out_dir if args.out_dir is not None else args.csv.parent
    from .report import render_report

    for path in render_report(rows, out_dir, args.csv.stem):
        print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "exact":
            return _cmd_exact(args)
        return _cmd_report(args)
    except (ValueError, OSError) as exc:
        print(f"qaemc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
