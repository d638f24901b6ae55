"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 golden-value mismatch (``reproduce``).
Transmission coefficients given with ``--eta`` are amplitudes; an intensity
transmittance T corresponds to ``eta = sqrt(T)``.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import golden
from .measures import metrics
from .optimize import MODES, find_concentration, optimize_eof, sweep, turning_point, write_csv
from .protocol import BeamSplitterSettings, bs_transform, distill_settings_vh_hv, distill_settings_vv_hh
from .states import (
    DensityMatrix,
    StateFamilyParams,
    StateValidationError,
    bell,
    mixed_family,
    pure_vh_hv,
    pure_vv_hh,
    validate,
    werner,
)

EXIT_OK, EXIT_INPUT, EXIT_GOLDEN = 0, 2, 3


class InputError(Exception):
    pass


def _number(text: str) -> complex | float:
    value = complex(text.strip().replace(" ", ""))
    return value.real if value.imag == 0 else value


def _numbers(text: str, count: int, flag: str) -> list:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise InputError(f"{flag} expects {count} comma-separated values, got {text!r}")
    try:
        return [_number(p) for p in parts]
    except ValueError:
        raise InputError(f"{flag}: could not parse {text!r}") from None


def _real(value, flag):
    if isinstance(value, complex):
        raise InputError(f"{flag}: expected a real number, got {value}")
    return float(value)


def load_state(args) -> tuple[DensityMatrix, StateFamilyParams | None]:
    if args.family:
        e1, e2, phi, gamma = _numbers(args.family, 4, "--family")
        params = StateFamilyParams(e1, e2, _real(phi, "--family"), _real(gamma, "--family"))
        return mixed_family(params), params
    if args.pure:
        e1, e2, phi = _numbers(args.pure, 3, "--pure")
        params = StateFamilyParams(e1, e2, _real(phi, "--pure"))
        build = pure_vh_hv if args.pure_form == "vh_hv" else pure_vv_hh
        return build(params), params
    if args.bell:
        return bell(args.bell), None
    if args.file:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
        return DensityMatrix.from_json(text), None
    raise InputError("no state given: use one of --family, --pure, --bell, --file")


def load_settings(text: str | None) -> BeamSplitterSettings:
    if text is None:
        return BeamSplitterSettings()
    vals = [_real(v, "--eta") for v in _numbers(text, 4, "--eta")]
    return BeamSplitterSettings.from_sequence(vals)


def format_matrix(m, decimals: int = 3) -> str:
    m = np.asarray(m)
    real = np.max(np.abs(m.imag)) < 0.5 * 10**-decimals
    rows = []
    for row in m:
        if real:
            cells = [f"{x.real:>{decimals + 4}.{decimals}f}" for x in row]
        else:
            cells = [f"{x.real:.{decimals}f}{x.imag:+.{decimals}f}j" for x in row]
        rows.append("  ".join(cells))
    return "\n".join(rows)


def _metrics_lines(m) -> list[str]:
    return [
        f"concurrence  {m.concurrence:.4f}",
        f"EOF          {m.eof:.4f}",
        f"entropy      {m.entropy:.4f}",
        f"purity       {m.purity:.4f}",
    ]


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit(args, text: str):
    with _output(args.out) as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def cmd_analyze(args) -> int:
    rho, _ = load_state(args)
    m = metrics(rho)
    report = validate(rho.mat)
    if args.format == "json":
        data = rho.to_dict()
        data["metrics"] = m.as_dict()
        data["validation"] = {
            "hermiticity_deviation": report.hermiticity_deviation,
            "trace_deviation": report.trace_deviation,
            "min_eigenvalue": report.min_eigenvalue,
            "ok": report.ok,
        }
        _emit(args, json.dumps(data, indent=2))
    elif args.format == "csv":
        with _output(args.out) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["concurrence", "eof", "entropy", "purity"])
            w.writerow([repr(v) for v in m.as_dict().values()])
    else:
        lines = ["state (VV, VH, HV, HH):", format_matrix(rho.mat), ""]
        lines += _metrics_lines(m)
        lines.append(
            "valid        {} (hermiticity {:.1e}, trace {:.1e}, min eigenvalue {:.1e})".format(
                "yes" if report.ok else "no",
                report.hermiticity_deviation,
                report.trace_deviation,
                report.min_eigenvalue,
            )
        )
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_transform(args) -> int:
    rho, _ = load_state(args)
    settings = load_settings(args.eta)
    outcome = bs_transform(rho, settings)
    m_in, m_out = metrics(rho), metrics(outcome.output)
    if args.format == "json":
        data = outcome.output.to_dict()
        data["success_probability"] = outcome.success_probability
        data["settings"] = settings.as_dict()
        data["metrics_before"] = m_in.as_dict()
        data["metrics_after"] = m_out.as_dict()
        _emit(args, json.dumps(data, indent=2))
    elif args.format == "csv":
        with _output(args.out) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["eta_va", "eta_ha", "eta_vb", "eta_hb", "entropy", "eof", "probability"])
            w.writerow([repr(v) for v in settings.as_tuple()] + [repr(m_out.entropy), repr(m_out.eof), repr(outcome.success_probability)])
    else:
        lines = [
            "settings     va={:.4f} ha={:.4f} vb={:.4f} hb={:.4f}".format(*settings.as_tuple()),
            "output state:",
            format_matrix(outcome.output.mat),
            "",
            f"probability  {outcome.success_probability:.4f}",
            f"EOF          {m_in.eof:.4f} -> {m_out.eof:.4f}",
            f"entropy      {m_in.entropy:.4f} -> {m_out.entropy:.4f}",
        ]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.n < 2:
        raise InputError(f"-n must be at least 2, got {args.n}")
    rho, _ = load_state(args)
    curve = sweep(rho, args.n)
    if args.format == "json":
        rows = [{"eta_v": p.eta_v, "entropy": p.entropy, "eof": p.eof, "probability": p.probability} for p in curve]
        _emit(args, json.dumps({"points": rows, "skipped": curve.skipped}, indent=2))
    elif args.format == "human":
        tp = turning_point(curve)
        lines = [f"{'eta_v':>8} {'entropy':>8} {'eof':>8} {'prob':>8}"]
        step = max(1, len(curve) // 16)
        for p in list(curve)[::step]:
            lines.append(f"{p.eta_v:8.4f} {p.entropy:8.4f} {p.eof:8.4f} {p.probability:8.4f}")
        lines.append(f"turning point: eta_v={tp.eta_v:.4f} (S, EOF)=({tp.entropy:.4f}, {tp.eof:.4f})")
        _emit(args, "\n".join(lines))
    else:
        with _output(args.out) as fh:
            write_csv(curve, fh)
    return EXIT_OK


def cmd_optimize(args) -> int:
    rho, params = load_state(args)
    best = optimize_eof(rho, args.mode, args.n)
    report = find_concentration(rho, args.mode, args.n)
    analytic = None
    if args.pure and params is not None:
        solver = distill_settings_vh_hv if args.pure_form == "vh_hv" else distill_settings_vv_hh
        analytic = solver(params.eps1, params.eps2)
    if args.format == "json":
        data = {
            "mode": args.mode,
            "max_eof": {"settings": best.settings.as_dict(), "eof": best.eof, "entropy": best.entropy, "probability": best.probability},
            "initial": report.initial.as_dict(),
            "concentration": {
                "achievable": report.achievable,
                "classification": report.classification,
                "settings": report.best.settings.as_dict(),
                "eof": report.best.eof,
                "entropy": report.best.entropy,
                "probability": report.best.probability,
            },
        }
        if analytic is not None:
            data["analytic_settings"] = analytic.as_dict()
        _emit(args, json.dumps(data, indent=2))
    else:
        fmt = "va={:.4f} ha={:.4f} vb={:.4f} hb={:.4f}"
        lines = [
            f"mode               {args.mode}",
            f"initial            S={report.initial.entropy:.4f} EOF={report.initial.eof:.4f}",
            f"max EOF settings   {fmt.format(*best.settings.as_tuple())}",
            f"  -> S={best.entropy:.4f} EOF={best.eof:.4f} P={best.probability:.4f}",
            f"classification     {report.classification} (concentration achievable: {'yes' if report.achievable else 'no'})",
            f"  best point       {fmt.format(*report.best.settings.as_tuple())} S={report.best.entropy:.4f} EOF={report.best.eof:.4f}",
        ]
        if analytic is not None:
            lines.append(f"analytic settings  {fmt.format(*analytic.as_tuple())}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rho, outcome, checks = golden.worked_example()
    m_in, m_out = metrics(rho), metrics(outcome.output)
    if args.format == "json":
        data = {
            "params": {"eps1": 1.0, "eps2": 0.1, "phi": 0.0, "gamma": 0.3},
            "settings": golden.WORKED_SETTINGS.as_dict(),
            "input": rho.to_dict(),
            "output": outcome.output.to_dict(),
            "metrics_before": m_in.as_dict(),
            "metrics_after": m_out.as_dict(),
            "success_probability": outcome.success_probability,
            "checks": [{"name": c.name, "value": c.value, "expected": c.expected, "tol": c.tol, "passed": c.passed} for c in checks],
        }
        _emit(args, json.dumps(data, indent=2))
    else:
        lines = [
            "(eps1, eps2, phi, gamma) = (1, 0.1, 0, 0.3); eta_v = sqrt(0.1), eta_h = 1",
            "input state:",
            format_matrix(rho.mat),
            "output state:",
            format_matrix(outcome.output.mat),
            "",
            f"EOF          {m_in.eof:.4f} -> {m_out.eof:.4f}",
            f"entropy      {m_in.entropy:.4f} -> {m_out.entropy:.4f}",
            f"probability  {100 * outcome.success_probability:.2f}%",
            "",
        ]
        lines += [c.line() for c in checks]
        _emit(args, "\n".join(lines))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_GOLDEN


def werner_demo_rows(eps=(1.0, 0.5), fractions=None, n_points: int = 512):
    """Filter Werner states built on ``eps1|VV> + eps2|HH>`` along the one-knob curve.

    For each fraction reports the initial and best (S, EOF), whether every
    EOF-raising setting also raised the entropy, and whether the best EOF stays
    below that of the Werner state with the same fraction built on a Bell state.
    """
    if fractions is None:
        fractions = [round(0.1 * k, 1) for k in range(1, 11)]
    pure = pure_vv_hh(StateFamilyParams(*eps))
    rows = []
    for f in fractions:
        rho = werner(f, pure)
        m0 = metrics(rho)
        curve = sweep(rho, n_points)
        tp = turning_point(curve)
        raised = [p for p in curve if p.eof > m0.eof]
        bound = metrics(werner(f, bell("phi+"))).eof
        rows.append({
            "fraction": f,
            "entropy": m0.entropy,
            "eof": m0.eof,
            "best_eta_v": tp.eta_v,
            "best_entropy": tp.entropy,
            "best_eof": tp.eof,
            "eof_gain_costs_purity": all(p.entropy > m0.entropy for p in raised),
            "bell_werner_eof": bound,
            "within_bell_bound": tp.eof <= bound + 1e-12,
        })
    return rows


def cmd_werner_demo(args) -> int:
    eps = tuple(_real(v, "--werner-pure") for v in _numbers(args.werner_pure, 2, "--werner-pure"))
    fractions = None
    if args.fractions:
        fractions = [float(x) for x in args.fractions.split(",")]
        if any(not 0.0 <= x <= 1.0 for x in fractions):
            raise InputError("--fractions must lie in [0, 1]")
    rows = werner_demo_rows(eps, fractions, args.n)
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2))
    elif args.format == "csv":
        with _output(args.out) as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    else:
        lines = [f"{'frac':>5} {'S':>7} {'EOF':>7} {'eta_v*':>7} {'S*':>7} {'EOF*':>7} {'costs purity':>13} {'Bell EOF':>9} {'bounded':>8}"]
        for r in rows:
            lines.append(
                f"{r['fraction']:5.2f} {r['entropy']:7.4f} {r['eof']:7.4f} {r['best_eta_v']:7.4f} "
                f"{r['best_entropy']:7.4f} {r['best_eof']:7.4f} {str(r['eof_gain_costs_purity']):>13} {r['bell_werner_eof']:9.4f} {str(r['within_bell_bound']):>8}"
            )
        _emit(args, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsconc", description="Beam-splitter entanglement concentration of two-qubit polarization states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format="human"):
        p.add_argument("--format", choices=("human", "json", "csv"), default=default_format)
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    def add_state(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--family", metavar="E1,E2,PHI,GAMMA", help="gamma-mixed VV/HH + VH/HV family")
        src.add_argument("--pure", metavar="E1,E2,PHI", help="pure state e1|VV> + e2 exp(i phi)|HH>")
        src.add_argument("--bell", choices=("phi+", "phi-", "psi+", "psi-"))
        src.add_argument("--file", metavar="PATH", help="JSON state file")
        p.add_argument("--pure-form", choices=("vv_hh", "vh_hv"), default="vv_hh", help="basis pair used by --pure")

    p = sub.add_parser("analyze", help="entanglement and purity measures of a state")
    add_state(p)
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("transform", help="apply beam-splitter settings")
    add_state(p)
    p.add_argument("--eta", metavar="VA,HA,VB,HB", help="amplitude transmission coefficients (default 1,1,1,1)")
    add_common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("sweep", help="(S, EOF) curve over eta_va = eta_vb")
    add_state(p)
    p.add_argument("-n", type=int, default=512)
    add_common(p, "csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="maximize EOF and look for concentration")
    add_state(p)
    p.add_argument("--mode", choices=MODES, default="one_knob")
    p.add_argument("-n", type=int, default=512)
    add_common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="run the published worked example and check it")
    add_common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("werner-demo", help="filter Werner states over eta_v")
    p.add_argument("--werner-pure", default="1,0.5", metavar="E1,E2", help="pure component e1|VV> + e2|HH>")
    p.add_argument("--fractions", default=None, help="comma-separated Werner fractions")
    p.add_argument("-n", type=int, default=512)
    add_common(p)
    p.set_defaults(func=cmd_werner_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, StateValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
