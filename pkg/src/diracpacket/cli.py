"""Command-line front end: CSV output with reproducible run manifests.

Five subcommands mirror the library surface: ``timescales`` (the T(k)
hierarchy plus the spin-orbit and Kepler rows, sweepable over Z and N),
``autocorr`` (A(t) series), ``spin`` (spin expectation series),
``density`` (equatorial-plane grid in long format), and ``smallnorm``
(small-component norm surface over Z and N).

Every CSV starts with a one-line JSON manifest comment: the subcommand,
tool version, alpha, the natural-unit definition, and the full parameter
set that produced the file.  Feeding that file back through ``--config``
reruns the identical computation, so any output can be regenerated
byte-for-byte from its own header.  ``--config`` also accepts a plain
JSON file with the same flat keys; explicit flags override config values.

Numbers are written with 17 significant digits (round-trip exact for
doubles), '.' decimal separator, CRLF line endings.

Exit status 0 when every output was written; 2 when a parameter violates
a precondition (the message names it); 1 for unexpected failures.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .constants import DEFAULT_CONSTANTS
from .density import PlaneGridSpec, density_grid
from .dirac_coulomb import SupercriticalChargeError
from .packet import (
    PacketSpec,
    autocorrelation,
    build_tables,
    small_norm,
    spin_expect,
    timescales,
)

_UNITS = ("natural", "kepler", "tls", "seconds")

_DEFAULTS = {
    "sigma": 2.0,
    "a": math.sqrt(0.5),
    "b": math.sqrt(0.5),
    "tmin": 0.0,
    "tmax": 10.0,
    "samples": 2000,
    "unit": "tls",
    "time": 0.0,
    "grid": 256,
    "extent": 1.6,
    "kmax": 4,
    "no_delta": False,
    "no_small": False,
    "workers": None,
}

# Parameters echoed into the manifest, per subcommand.  Everything that
# influences the output bytes is listed; workers is deliberately absent
# because grids are bit-identical for any worker count.
_MANIFEST_KEYS = {
    "timescales": ("Z", "N", "kmax"),
    "autocorr": ("Z", "N", "sigma", "a", "b", "tmin", "tmax", "samples", "unit", "no_small"),
    "spin": (
        "Z", "N", "sigma", "a", "b", "tmin", "tmax", "samples", "unit",
        "no_delta", "no_small",
    ),
    "density": ("Z", "N", "sigma", "a", "b", "time", "unit", "grid", "extent"),
    "smallnorm": ("Z", "N", "sigma", "a", "b"),
}


class CliError(Exception):
    """Parameter or configuration problem; message names the precondition."""


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def parse_range(text, name: str) -> list[int]:
    """Parse an integer or an inclusive START:STOP[:STEP] range."""
    parts = str(text).split(":")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise CliError(
            f"{name} must be an integer or START:STOP[:STEP] range, got {text!r}"
        ) from None
    if len(numbers) == 1:
        return numbers
    if len(numbers) == 2:
        start, stop = numbers
        step = 1
    elif len(numbers) == 3:
        start, stop, step = numbers
    else:
        raise CliError(
            f"{name} must be an integer or START:STOP[:STEP] range, got {text!r}"
        )
    if step <= 0:
        raise CliError(f"{name} range step must be positive, got {step}")
    if stop < start:
        raise CliError(f"{name} range is empty: {text!r}")
    return list(range(start, stop + 1, step))


def _single(text, name: str) -> int:
    values = parse_range(text, name)
    if len(values) != 1:
        raise CliError(f"{name} must be a single integer here, got range {text!r}")
    return values[0]


def _load_config(path: str) -> dict:
    """Flat JSON config, or a previously written CSV whose manifest is reused."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            first = fh.readline()
            if first.startswith("#"):
                manifest = json.loads(first[1:].strip())
                params = manifest.get("params")
                if not isinstance(params, dict):
                    raise CliError(f"manifest in {path!r} carries no params object")
                return params
            rest = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc}") from None
    try:
        data = json.loads(first + rest)
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path!r} is neither JSON nor a manifest CSV: {exc}") from None
    if not isinstance(data, dict):
        raise CliError(f"config {path!r} must hold a JSON object of parameters")
    return data


def _resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file, and explicit flags (flags win)."""
    merged = dict(_DEFAULTS)
    merged["Z"] = None
    merged["N"] = None
    merged["out"] = None
    if args.config is not None:
        config = _load_config(args.config)
        unknown = set(config) - set(merged)
        if unknown:
            raise CliError(f"unknown config keys: {sorted(unknown)}")
        merged.update(config)
    for key in merged:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if merged["Z"] is None:
        raise CliError("Z is required (flag --Z or config key)")
    if merged["N"] is None:
        raise CliError("N is required (flag --N or config key)")
    if merged["unit"] not in _UNITS:
        raise CliError(f"unit must be one of {_UNITS}, got {merged['unit']!r}")
    return merged


def _write_csv(out_path, manifest: dict, header: list[str], rows) -> None:
    buf = io.StringIO()
    buf.write("# " + json.dumps(manifest, sort_keys=True) + "\r\n")
    buf.write(",".join(header) + "\r\n")
    for row in rows:
        buf.write(",".join(row) + "\r\n")
    data = buf.getvalue()
    if out_path is None:
        sys.stdout.write(data)
    else:
        try:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(data)
        except OSError as exc:
            raise CliError(f"cannot write output {out_path!r}: {exc}") from None


def _packet_spec(cfg: dict) -> PacketSpec:
    return PacketSpec(
        Z=_single(cfg["Z"], "Z"),
        N=_single(cfg["N"], "N"),
        sigma_g=float(cfg["sigma"]),
        a=float(cfg["a"]),
        b=float(cfg["b"]),
    )


def cmd_timescales(cfg: dict) -> tuple[dict, list[str], list]:
    z_values = parse_range(cfg["Z"], "Z")
    n_values = parse_range(cfg["N"], "N")
    kmax = int(cfg["kmax"])
    seconds = DEFAULT_CONSTANTS.compton_time_seconds
    rows = []
    for Z in z_values:
        for N in n_values:
            scales = timescales(Z, N, k_max=kmax)
            t1 = scales.t[1]
            for k in range(1, kmax + 1):
                tk = scales.t[k]
                rows.append(
                    [str(Z), str(N), str(k), _fmt(tk), _fmt(tk / t1), _fmt(tk * seconds)]
                )
            rows.append(
                [str(Z), str(N), "ls", _fmt(scales.t_ls), _fmt(scales.t_ls / t1),
                 _fmt(scales.t_ls * seconds)]
            )
            rows.append(
                [str(Z), str(N), "cl", _fmt(scales.t_cl), _fmt(scales.t_cl / t1),
                 _fmt(scales.t_cl * seconds)]
            )
    header = ["Z", "N", "k", "T_k_natural", "T_k_over_T1", "T_k_seconds"]
    return {}, header, rows


def _time_grid(cfg: dict, spec: PacketSpec):
    tmin = float(cfg["tmin"])
    tmax = float(cfg["tmax"])
    samples = int(cfg["samples"])
    if samples < 2:
        raise CliError(f"samples must be >= 2, got {samples}")
    if not (math.isfinite(tmin) and math.isfinite(tmax)) or tmax <= tmin:
        raise CliError(f"need finite tmax > tmin, got [{tmin}, {tmax}]")
    scales = timescales(spec.Z, spec.N, constants=spec.constants)
    factor = scales.unit_scale(cfg["unit"])
    t_unit = np.linspace(tmin, tmax, samples)
    return t_unit, t_unit * factor, scales


def cmd_autocorr(cfg: dict) -> tuple[dict, list[str], list]:
    spec = _packet_spec(cfg)
    tables = build_tables(spec, nonrelativistic_radial=bool(cfg["no_small"]))
    t_unit, t_nat, _ = _time_grid(cfg, spec)
    amp = autocorrelation(tables, t_nat)
    rows = [
        [_fmt(tu), _fmt(tn), _fmt(a.real), _fmt(a.imag), _fmt(abs(a) ** 2)]
        for tu, tn, a in zip(t_unit, t_nat, amp)
    ]
    header = ["t_in_selected_unit", "t_natural", "re_A", "im_A", "abs_A_squared"]
    return {}, header, rows


def cmd_spin(cfg: dict) -> tuple[dict, list[str], list]:
    spec = _packet_spec(cfg)
    tables = build_tables(spec, nonrelativistic_radial=bool(cfg["no_small"]))
    t_unit, t_nat, _ = _time_grid(cfg, spec)
    sx, sy, sz = spin_expect(tables, t_nat, include_delta=not cfg["no_delta"])
    length = np.sqrt(sx * sx + sy * sy + sz * sz)
    rows = [
        [_fmt(t), _fmt(x), _fmt(y), _fmt(z), _fmt(s)]
        for t, x, y, z, s in zip(t_unit, sx, sy, sz, length)
    ]
    header = ["t", "sx", "sy", "sz", "spin_length"]
    return {}, header, rows


def cmd_density(cfg: dict) -> tuple[dict, list[str], list]:
    spec = _packet_spec(cfg)
    tables = build_tables(spec)
    scales = timescales(spec.Z, spec.N, constants=spec.constants)
    t_nat = float(cfg["time"]) * scales.unit_scale(cfg["unit"])
    grid_spec = PlaneGridSpec(extent=float(cfg["extent"]), resolution=int(cfg["grid"]))
    workers = cfg["workers"]
    if workers is not None:
        workers = int(workers)
    grid = density_grid(tables, grid_spec, t_nat, workers=workers)
    r_n = grid.r_n
    rows = []
    for i in range(grid_spec.resolution):
        y = grid.y[i] / r_n
        for j in range(grid_spec.resolution):
            up = grid.spin_up[i, j]
            down = grid.spin_down[i, j]
            rows.append(
                [_fmt(grid.x[j] / r_n), _fmt(y), _fmt(up), _fmt(down), _fmt(up + down)]
            )
    header = ["x_over_rN", "y_over_rN", "rho_up", "rho_down", "rho_total"]
    extra = {
        "r_N_compton": r_n,
        "t_natural": t_nat,
        "t_kepler": scales.to_kepler(t_nat),
        "t_tls": scales.to_tls(t_nat),
        "t_seconds": scales.to_seconds(t_nat),
    }
    return extra, header, rows


def cmd_smallnorm(cfg: dict) -> tuple[dict, list[str], list]:
    z_values = parse_range(cfg["Z"], "Z")
    n_values = parse_range(cfg["N"], "N")
    rows = []
    for Z in z_values:
        for N in n_values:
            spec = PacketSpec(
                Z=Z, N=N, sigma_g=float(cfg["sigma"]), a=float(cfg["a"]), b=float(cfg["b"])
            )
            norm = small_norm(build_tables(spec))
            rows.append(
                [str(Z), str(N), _fmt(norm.c3_norm), _fmt(norm.c4_norm), _fmt(norm.total)]
            )
    header = ["Z", "N", "c3_norm", "c4_norm", "total"]
    return {}, header, rows


_COMMANDS = {
    "timescales": cmd_timescales,
    "autocorr": cmd_autocorr,
    "spin": cmd_spin,
    "density": cmd_density,
    "smallnorm": cmd_smallnorm,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracpacket",
        description="Circular Dirac-Coulomb wave packets: time scales, "
        "autocorrelation, spin dynamics, and spatial densities as CSV.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("timescales", "T(k) hierarchy, spin-orbit and Kepler times; Z/N sweepable"),
        ("autocorr", "autocorrelation series A(t)"),
        ("spin", "spin expectation series"),
        ("density", "equatorial-plane density grid (long CSV)"),
        ("smallnorm", "small-component norm over Z/N sweeps"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--Z", help="nuclear charge, or START:STOP[:STEP] where sweepable")
        p.add_argument("--N", help="mean principal quantum number, or a range where sweepable")
        p.add_argument("--sigma", type=float, help="Gaussian width of |w_n|^2 (default 2.0)")
        p.add_argument("--a", type=float, help="spin-up amplitude (default 1/sqrt 2)")
        p.add_argument("--b", type=float, help="spin-down amplitude (default 1/sqrt 2)")
        p.add_argument("--tmin", type=float, help="series start time in --unit (default 0)")
        p.add_argument("--tmax", type=float, help="series end time in --unit (default 10)")
        p.add_argument("--samples", type=int, help="number of time samples (default 2000)")
        p.add_argument("--unit", choices=_UNITS, help="time unit for inputs/outputs (default tls)")
        p.add_argument("--time", type=float, help="density: sample time in --unit (default 0)")
        p.add_argument("--grid", type=int, help="density: nodes per axis (default 256)")
        p.add_argument("--extent", type=float, help="density: half-width in r_N units (default 1.6)")
        p.add_argument("--kmax", type=int, help="timescales: highest derivative order (default 4)")
        p.add_argument("--workers", type=int, help="density: thread count (default: CPU count)")
        p.add_argument(
            "--no-delta", dest="no_delta", action="store_const", const=True,
            help="spin: drop the cross-shell correction terms",
        )
        p.add_argument(
            "--no-small", dest="no_small", action="store_const", const=True,
            help="diagnostics: replace radial integrals by their limit values "
            "(large-component overlaps 1, small-component integrals 0)",
        )
        p.add_argument("--config", help="JSON config file, or a CSV written by this tool")
        p.add_argument("--out", help="output CSV path (default: stdout)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        extra, header, rows = _COMMANDS[args.command](cfg)
        params = {}
        for key in _MANIFEST_KEYS[args.command]:
            value = cfg[key]
            params[key] = str(value) if key in ("Z", "N") else value
        manifest = {
            "command": args.command,
            "version": __version__,
            "alpha": DEFAULT_CONSTANTS.alpha,
            "time_unit_seconds": DEFAULT_CONSTANTS.compton_time_seconds,
            "units": "natural units m_e = hbar = c = 1",
            "params": params,
        }
        manifest.update(extra)
        _write_csv(cfg["out"], manifest, header, rows)
    except (CliError, SupercriticalChargeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())
