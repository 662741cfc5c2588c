"""
Command-line front end.

    djcm spectrum --gA 2 --gB 3 --nA 0:3 --nB 0
    djcm rabi --theta 0.5236 --tmax 20 --samples 2001 --out rabi.csv
    djcm revival --alpha-sq 20 --case I --weighting twin --out revival.csv
    djcm verify --format json --out report.json

Any flag can also come from a flat ``key = value`` file given with
``--config``; flags on the command line win.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .ensemble import CoherentConfig, detect_collapse_revival, ensemble_inversion
from .evolution import InitialAmplitudes, evolve, initial_block_state
from .measurement import InversionConvention, excited_populations, inversion_paper
from .model import (BlockIndex, DiagonalConvention, SystemParams, block_spectrum,
                    interaction_block)
from .verify import run_verify

FLOAT_FMT = "{:.16e}"
CSV_HEADER = "t,W_A_paper,W_B_paper,W_A_exact,W_B_exact"
_WEIGHTING = {"twin": "twin_diagonal", "product": "independent_product"}


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return FLOAT_FMT.format(float(x))


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (np.floating, np.integer)):
        return _json_value(x.item())
    return x


def _json_config(args: argparse.Namespace) -> dict:
    return {k: _json_value(v) for k, v in sorted(vars(args).items())}


def _parse_range(text: str, name: str) -> range:
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"{name}: expected N or LO:HI, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"{name}: bad range {text!r}")
    return range(lo, hi + 1)


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="flat key=value file with default flag values")
    p.add_argument("--scenario", choices=["I", "II"], default="I")
    p.add_argument("--theta", type=float, default=0.0,
                   help="Bell superposition angle: c_phi = cos(theta), c_psi = sin(theta)")
    p.add_argument("--gA", type=float, default=1.0)
    p.add_argument("--gB", type=float, default=1.0)
    p.add_argument("--wA", type=float, default=1.0)
    p.add_argument("--wB", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--nA", default="0", help="photon number N or range LO:HI (spectrum)")
    p.add_argument("--nB", default="0", help="photon number N or range LO:HI (spectrum)")
    p.add_argument("--alpha-sq", dest="alpha_sq", type=float, default=20.0)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--case", choices=["I", "II"], default="I")
    p.add_argument("--weighting", choices=["twin", "product"], default="twin")
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0, help="random seed for verify")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    common = _common_parser()
    if defaults:
        known = {a.dest for a in common._actions}
        unknown = sorted(set(defaults) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        # string defaults go through each flag's type conversion during parsing
        common.set_defaults(**defaults)
    parser = argparse.ArgumentParser(prog="djcm", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="block eigenvalues")
    sub.add_parser("rabi", parents=[common], help="single-block inversion series")
    sub.add_parser("revival", parents=[common], help="coherent-ensemble collapse and revival")
    sub.add_parser("verify", parents=[common], help="formula audit report")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    defaults = None
    if known.config:
        try:
            defaults = read_config_file(known.config)
            parser = build_parser(defaults)
        except (OSError, UsageError) as exc:
            build_parser().error(f"config file: {exc}")
    else:
        parser = build_parser()
    args = parser.parse_args(argv)
    for key in ("scenario", "case", "weighting", "format"):
        allowed = {"scenario": ("I", "II"), "case": ("I", "II"),
                   "weighting": tuple(_WEIGHTING), "format": ("csv", "json")}[key]
        if getattr(args, key) not in allowed:
            parser.error(f"{key} must be one of {allowed}, got {getattr(args, key)!r}")
    return args


def resolve(args: argparse.Namespace) -> dict:
    """Validate everything up front; returns the resolved configuration."""
    try:
        params = SystemParams(omega_A=args.wA, omega_B=args.wB, g_A=args.gA, g_B=args.gB,
                              delta=args.delta, scenario=args.scenario)
        if args.samples < 2 or not args.tmax > 0:
            raise ValueError("need tmax > 0 and samples >= 2")
        coherent = None
        if args.command == "revival":
            coherent = CoherentConfig(alpha_sq=args.alpha_sq, cutoff=args.cutoff,
                                      mode_coupling=_WEIGHTING[args.weighting], case=args.case)
        if args.command in ("rabi", "revival"):
            params.require_resonant()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n_a = _parse_range(args.nA, "--nA")
    n_b = _parse_range(args.nB, "--nB")
    if args.command == "rabi" and (len(n_a) != 1 or len(n_b) != 1):
        raise UsageError("rabi takes a single block: --nA N --nB N")
    return {"params": params, "coherent": coherent, "n_A": n_a, "n_B": n_b,
            "times": np.linspace(0.0, args.tmax, args.samples)}


def config_header(args: argparse.Namespace) -> list[str]:
    items = sorted((k, v) for k, v in vars(args).items())
    return [f"# djcm {args.command}"] + [f"# {k} = {v}" for k, v in items if k != "command"]


def _series_csv(header, times, columns) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    buf.write(CSV_HEADER + "\n")
    for row in zip(times, *columns):
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue()


def cmd_spectrum(args, resolved) -> str:
    params = resolved["params"]
    rows = []
    for na in resolved["n_A"]:
        for nb in resolved["n_B"]:
            block = BlockIndex(na, nb)
            for mode in ("interaction", DiagonalConvention.EXCITATION_CONSERVING.value,
                         DiagonalConvention.PAPER_PRINTED.value):
                conv = (DiagonalConvention.EXCITATION_CONSERVING if mode == "interaction"
                        else DiagonalConvention(mode))
                ham = interaction_block(params, block, conv)
                values = block_spectrum(ham, include_diagonal=mode != "interaction").eigenvalues
                rows.append({"n_A": na, "n_B": nb, "mode": mode,
                             "eigenvalues": [float(v) for v in values]})
    if args.format == "json":
        payload = {"config": _json_config(args), "blocks": rows}
        return json.dumps(payload, indent=2) + "\n"
    lines = config_header(args) + ["n_A,n_B,mode,E1,E2,E3,E4"]
    for r in rows:
        lines.append(",".join([str(r["n_A"]), str(r["n_B"]), r["mode"]]
                              + [_fmt(v) for v in r["eigenvalues"]]))
    return "\n".join(lines) + "\n"


def rabi_columns(params: SystemParams, block: BlockIndex, theta: float, times):
    """W_A/W_B in both conventions for one block and one superposition angle."""
    amps = InitialAmplitudes.from_theta(theta, params.scenario)
    ham = interaction_block(params, block)
    w_a_paper, w_b_paper = inversion_paper(amps, ham.omega_Rabi_A, ham.omega_Rabi_B, times)
    v = evolve(initial_block_state(params.scenario, amps, block), ham, times)
    probs = np.abs(v) ** 2
    p_a, p_b = excited_populations(v)
    w_a_exact = p_a - (probs[:, 0] + probs[:, 1])
    w_b_exact = p_b - (probs[:, 0] + probs[:, 2])
    return w_a_paper, w_b_paper, w_a_exact, w_b_exact


def cmd_rabi(args, resolved) -> str:
    block = BlockIndex(resolved["n_A"][0], resolved["n_B"][0])
    times = resolved["times"]
    cols = rabi_columns(resolved["params"], block, args.theta, times)
    if args.format == "json":
        payload = {"config": _json_config(args),
                   "columns": dict(zip(CSV_HEADER.split(","),
                                       [[float(x) for x in c] for c in (times, *cols)]))}
        return json.dumps(payload) + "\n"
    return _series_csv(config_header(args), times, cols)


def revival_run(params: SystemParams, coherent: CoherentConfig, times):
    paper = ensemble_inversion(params, coherent, times, InversionConvention.PAPER_BELL)
    exact = ensemble_inversion(params, coherent, times, InversionConvention.EXACT)
    g = 0.5 * (params.g_A + params.g_B)
    analysis = detect_collapse_revival(paper, g, coherent.alpha_sq)
    return paper, exact, analysis


def cmd_revival(args, resolved) -> tuple[str, dict]:
    times = resolved["times"]
    paper, exact, analysis = revival_run(resolved["params"], resolved["coherent"], times)
    summary = {k: _json_value(v) for k, v in analysis.summary().items()}
    if args.format == "json":
        payload = dict(summary)
        payload["config"] = _json_config(args)
        return json.dumps(payload, indent=2) + "\n", summary
    header = config_header(args) + [f"# summary {k} = {v}" for k, v in summary.items()]
    text = _series_csv(header, times, (paper.W_A, paper.W_B, exact.W_A, exact.W_B))
    return text, summary


def cmd_verify(args, resolved):
    report = run_verify(seed=args.seed)
    records = []
    for rec in report.records:
        d = rec.as_dict()
        d["inputs"] = dict(d["inputs"], seed=args.seed)
        records.append(d)
    if args.format == "json":
        return json.dumps(records, indent=2) + "\n", report
    lines = config_header(args) + ["name,value,threshold,status,inputs"]
    for d in records:
        thr = d["threshold"] if isinstance(d["threshold"], str) else _fmt(d["threshold"])
        inputs = json.dumps(d["inputs"], sort_keys=True).replace('"', "'")
        lines.append(f'{d["name"]},{_fmt(d["value"])},{thr},{d["status"]},"{inputs}"')
    return "\n".join(lines) + "\n", report


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, newline="\n")


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        resolved = resolve(args)
    except UsageError as exc:
        print(f"djcm {args.command}: error: {exc}", file=sys.stderr)
        return 2

    status = 0
    if args.command == "spectrum":
        text = cmd_spectrum(args, resolved)
    elif args.command == "rabi":
        text = cmd_rabi(args, resolved)
    elif args.command == "revival":
        text, summary = cmd_revival(args, resolved)
        if args.out is not None:
            print(json.dumps(summary))
    else:
        text, report = cmd_verify(args, resolved)
        if not report.ok:
            status = 1
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"djcm {args.command}: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    if status:
        names = ", ".join(r.name for r in report.failures)
        print(f"djcm verify: hard checks failed: {names}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
