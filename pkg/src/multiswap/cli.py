"""Command-line surface: build, estimate, replay, analyze, export-table.

Exit codes: 0 success, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analytics, fixtures
from .builder import build_un, derive_permutation_table, pad_inputs
from .circuits import count_resources
from .estimation import estimate_all_overlaps, plan_for, replay
from .fileio import (
    DataError,
    ESTIMATE_COLUMNS,
    REPLAY_COLUMNS,
    estimate_rows,
    load_states,
    read_counts,
    read_reference_estimates,
    replay_rows,
    table_to_dict,
    write_counts,
    write_csv,
)
from .qasm import to_qasm
from .san import build_san_un


class ConfigError(ValueError):
    """Invalid configuration (bad flag values, impossible engine choice)."""


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of an estimation run."""

    scheme: str = "new"
    shots: int = 8192
    seed: int = 0
    final_variant: str = "standard"
    engine: str = "auto"
    input_path: str = ""
    out_dir: str = "."
    normalize: bool = False

    def __post_init__(self):
        if self.shots < 1:
            raise ConfigError(f"shots must be >= 1, got {self.shots}")
        if self.scheme not in ("new", "san"):
            raise ConfigError(f"scheme must be 'new' or 'san', got {self.scheme!r}")
        if self.final_variant not in ("standard", "destructive"):
            raise ConfigError(
                f"final variant must be 'standard' or 'destructive', got {self.final_variant!r}"
            )
        if self.engine not in ("statevector", "oracle", "auto"):
            raise ConfigError(f"unknown engine {self.engine!r}")


def _add_common(parser, *, shots=True):
    parser.add_argument("states", help="input state file (JSON)")
    parser.add_argument("--scheme", choices=("new", "san"), default="new")
    parser.add_argument(
        "--final", choices=("standard", "destructive"), default="standard",
        help="final swap-test variant",
    )
    parser.add_argument(
        "--normalize", action="store_true",
        help="renormalize inputs regardless of how far off their norm is",
    )
    if shots:
        parser.add_argument("--shots", type=int, default=8192)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--engine", choices=("statevector", "oracle", "auto"), default="auto")
        parser.add_argument("--out-dir", default=".")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiswap",
        description="Build and simulate multi-state swap-test circuits and "
        "estimate all pairwise overlaps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a circuit and report its resources")
    _add_common(p, shots=False)
    p.add_argument("--qasm", metavar="FILE", help="write the circuit as OpenQASM 2.0")
    p.add_argument(
        "--decompose-cswap", action="store_true",
        help="expand cswap/swap into cx and ccx in the QASM output",
    )

    p = sub.add_parser("estimate", help="run the full estimation pipeline")
    _add_common(p)

    p = sub.add_parser("replay", help="decode a recorded counts file")
    p.add_argument("counts", help="counts file (or 'bundled' for the shipped record)")
    p.add_argument("states", help="input state file (or 'bundled')")
    p.add_argument(
        "--reference", default="exact",
        help="'exact', 'bundled', or a CSV of reference values per pair",
    )
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out-dir", help="write replay.csv here instead of printing")

    p = sub.add_parser("analyze", help="emit resource and precision tables")
    p.add_argument("--max-k", type=int, default=5, help="largest size is n = 2**max_k")
    p.add_argument("--shots", type=int, default=8192)
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("export-table", help="export a decoder table as JSON")
    p.add_argument("--n", type=int, required=True, help="register count (power of two)")
    p.add_argument("--scheme", choices=("new", "san"), default="new")
    p.add_argument("--width", type=int, default=1)
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    return parser


def _load(path: str, normalize: bool):
    if path == "bundled":
        return fixtures.load_ensemble(0)
    return load_states(path, renormalize=normalize)


def cmd_build(args) -> int:
    ensemble = _load(args.states, args.normalize)
    padded, pad_labels = pad_inputs(ensemble)
    if args.scheme == "new":
        circuit, plan = build_un(padded.n, padded.width, args.final)
    else:
        circuit, plan = build_san_un(padded.n, padded.width, args.final)
    profile = count_resources(circuit)
    final_cswaps = len(plan.slots) * plan.width if args.final == "standard" else 0
    network_cswaps = profile.cswap_count - final_cswaps
    print(f"scheme: {args.scheme}")
    if pad_labels:
        print(
            f"inputs: {ensemble.n}, padding to {padded.n} with "
            f"{len(pad_labels)} |0> states"
        )
    print(
        f"summary: {padded.n} inputs, {plan.ancilla_count} ancillas, "
        f"{network_cswaps} CSWAPs (+{len(plan.slots)} final tests)"
    )
    print(f"final variant: {args.final}")
    print(f"qubits: {circuit.qubit_count}, gates: {profile.gate_count_total}")
    if args.qasm:
        Path(args.qasm).write_text(
            to_qasm(circuit, decompose_cswap=args.decompose_cswap)
        )
        print(f"qasm written to {args.qasm}")
    return 0


def cmd_estimate(args) -> int:
    config = RunConfig(
        scheme=args.scheme,
        shots=args.shots,
        seed=args.seed,
        final_variant=args.final,
        engine=args.engine,
        input_path=args.states,
        out_dir=args.out_dir,
        normalize=args.normalize,
    )
    ensemble = _load(config.input_path, config.normalize)
    result = estimate_all_overlaps(
        ensemble,
        scheme=config.scheme,
        shots=config.shots,
        seed=config.seed,
        final_variant=config.final_variant,
        engine=config.engine,
    )
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "estimates.csv", ESTIMATE_COLUMNS, estimate_rows(result.estimates))
    rows, summary = analytics.scatter_data(result.estimates)
    write_csv(out / "scatter.csv", analytics.SCATTER_COLUMNS, rows)
    write_counts(
        out / "counts.txt",
        result.counts,
        comments=(
            f"engine={result.engine} shots={config.shots} seed={config.seed} "
            f"final={config.final_variant}",
        ),
    )
    print(f"{len(result.estimates)} pair estimates written to {out / 'estimates.csv'}")
    print(f"engine: {result.engine}")
    print(f"max |estimate - exact|: {summary.max_abs_error:.4f}, rmse: {summary.rmse:.4f}")
    return 0


def cmd_replay(args) -> int:
    ensemble = _load(args.states, args.normalize)
    if args.counts == "bundled":
        counts = fixtures.reference_counts()
    else:
        counts = read_counts(args.counts)
    padded, pad_labels = pad_inputs(ensemble)
    scheme = counts.scheme or "new"
    _, _, _, plan, table = plan_for(ensemble, scheme, "standard")
    expected = plan.measured_labels()
    destructive_labels = None
    if counts.labels != expected:
        _, _, _, plan_d, _ = plan_for(ensemble, scheme, "destructive")
        destructive_labels = plan_d.measured_labels()
        if counts.labels != destructive_labels:
            raise DataError(
                "counts layout does not match the states: expected "
                f"{' '.join(expected)} (or the destructive form), found "
                f"{' '.join(counts.labels)}"
            )
    if args.reference == "exact":
        reference = None
    elif args.reference == "bundled":
        reference = fixtures.reference_estimates()
    else:
        reference = read_reference_estimates(args.reference)
    report = replay(
        counts,
        table,
        ensemble,
        pad_labels=pad_labels,
        width=padded.width,
        reference=reference,
        tolerance=args.tolerance,
    )
    rows = replay_rows(report)
    print(f"total shots: {report.total_shots}")
    flagged = {p: f for p, f in report.flags.items() if f != "ok"}
    print(f"pairs: {len(report.estimates)}, flagged: {len(flagged)}")
    for pair, flag in sorted(flagged.items()):
        print(f"  {pair}: {flag}")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_csv(out / "replay.csv", REPLAY_COLUMNS, rows)
        print(f"report written to {out / 'replay.csv'}")
    else:
        for row in rows:
            print(
                f"({row['pair_i']},{row['pair_j']}) exact={row['exact']:.4f} "
                + (
                    f"estimate={row['estimate']:.4f}"
                    if row["estimate"] is not None
                    else "unsampled"
                )
                + f" samples={row['samples']} flag={row['flag']}"
            )
    return 0


def cmd_analyze(args) -> int:
    if args.max_k < 2:
        raise ConfigError("--max-k must be >= 2")
    if args.shots < 1:
        raise ConfigError("--shots must be >= 1")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = analytics.resource_report(args.max_k)
    write_csv(out / "resources.csv", analytics.RESOURCE_COLUMNS, rows)
    precision_rows = []
    for row in rows:
        model = analytics.precision(row["n"], args.shots)
        precision_rows.append(
            {
                "n": model.n,
                "shots": model.shots,
                "baseline_per_pair": model.baseline_per_pair,
                "multiplexed_per_pair": model.multiplexed_per_pair,
                "ratio": model.ratio,
            }
        )
    write_csv(
        out / "precision.csv",
        ("n", "shots", "baseline_per_pair", "multiplexed_per_pair", "ratio"),
        precision_rows,
    )
    conflicts = sum(1 for r in rows if r["formula_conflict"])
    print(f"{len(rows)} rows written to {out / 'resources.csv'} and precision.csv")
    print(f"rows with conflicting circulated formulas: {conflicts}")
    return 0


def cmd_export_table(args) -> int:
    n, width = args.n, args.width
    if n < 4 or n & (n - 1):
        raise ConfigError(f"--n must be a power of two >= 4, got {n}")
    if args.scheme == "new":
        _, plan = build_un(n, width, "standard")
        ref_name = {4: "new_n4", 8: "new_n8"}.get(n)
    else:
        _, plan = build_san_un(n, width, "standard")
        ref_name = {4: "san_n4"}.get(n)
    table = derive_permutation_table(plan)
    reference = fixtures.reference_table_rows(ref_name) if ref_name else None
    doc = table_to_dict(table, scheme=args.scheme, reference_rows=reference)
    text = json.dumps(doc, indent=1)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"table written to {args.output}")
    else:
        print(text)
    return 0


_COMMANDS = {
    "build": cmd_build,
    "estimate": cmd_estimate,
    "replay": cmd_replay,
    "analyze": cmd_analyze,
    "export-table": cmd_export_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
