"""Command-line front end emitting CSV figure data and JSON bound queries.

Subcommands
-----------
bound     closed-form bound for the psi_xi / rho_xi families (JSON)
strategy  numeric search result with per-k detail (JSON)
figure1   Lorenz-curve comparison of the combined bound vs the
          single-particle bound over a (xi, theta) grid (CSV)
figure2   entropy floors h_sum / cmur_lb / berta_lb over a grid (CSV)
figure3   steerability region scan over (xi, p) (CSV)
steer     steering witness for one state (JSON)
join      lattice join of explicit vectors (JSON)

Options may come from a JSON file via ``--config``; explicit flags win.
Angles are radians.  Exit codes: 0 success, 2 configuration/usage error,
3 domain error.  CMUR_THREADS caps grid-sweep parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .bounds import (
    SearchConfig,
    conditional_bound,
    qubit_closed_form,
    single_particle_bound,
    violation_report,
)
from .entropic import entropy_report
from .errors import CmurError, ConfigError, DomainError
from .majorization import UncertaintyVec, combine, lattice_join
from .qcore import DensityMatrix, ProjectiveMeasurement, build_state
from .steering import hemisphere_functional, region_scan, steering_witness

_FIG1_XI = (0.0, math.pi / 16, math.pi / 8, math.pi / 4)
_FIG2_XI = (0.0, math.pi / 8, math.pi / 4)

_SEARCH_KEYS = ("starts", "max_iters", "tol", "search_seed")


def _float_list_arg(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty float list")
    return values


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _thread_count() -> int:
    raw = os.environ.get("CMUR_THREADS", "1").strip()
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"CMUR_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ConfigError("CMUR_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _pmap(fn, items):
    """Map preserving item order; threads capped by CMUR_THREADS."""
    items = list(items)
    n = min(_thread_count(), len(items)) if items else 1
    if n <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmur",
        description="Majorization-based uncertainty bounds, entropy floors, "
        "and steering witnesses for two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument(
            "--config",
            default=None,
            help="JSON file supplying option values; explicit flags win",
        )
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        return sp

    def add_state(sp, families):
        sp.add_argument("--family", choices=families, default=None, help="state family")
        sp.add_argument("--xi", type=float, default=None, help="family angle in [0, pi/4]")
        sp.add_argument("--p", type=float, default=None, help="mixing weight in [0, 1]")
        sp.add_argument("--seed", type=int, default=None, help="seed (default: 0)")

    def add_search(sp):
        sp.add_argument("--starts", type=int, default=None, help="search starts (default: 32)")
        sp.add_argument("--max-iters", type=int, default=None, help="refinement cap (default: 200)")
        sp.add_argument("--tol", type=float, default=None, help="search tolerance (default: 1e-10)")
        sp.add_argument("--search-seed", type=int, default=None, help="search seed (default: 0)")

    sp = add("bound", "closed-form bound and optimal helper angles (JSON)")
    add_state(sp, ("psi_xi", "rho_xi"))
    sp.add_argument("--theta", type=float, default=None, help="measurement polar angle")
    sp.add_argument("--phi", type=float, default=None, help="measurement azimuth (default: 0)")
    sp.add_argument(
        "--direction",
        choices=("reduce_A_by_B", "reduce_B_by_A"),
        default=None,
        help="which side the helper assists (default: reduce_A_by_B)",
    )

    sp = add("strategy", "numeric per-k search and joined bound (JSON)")
    add_state(sp, ("psi_xi", "rho_xi", "random_pure", "random_mixed"))
    sp.add_argument("--theta", type=float, default=None, help="measurement polar angle")
    sp.add_argument("--phi", type=float, default=None, help="measurement azimuth (default: 0)")
    add_search(sp)

    sp = add("figure1", "combined vs single-particle Lorenz data (CSV)")
    sp.add_argument(
        "--xi-list",
        type=_float_list_arg,
        default=None,
        help="comma-separated xi values (default: 0, pi/16, pi/8, pi/4)",
    )
    sp.add_argument(
        "--theta-steps",
        type=int,
        default=None,
        help="theta grid points on [0, pi/2] (default: 25)",
    )

    sp = add("figure2", "entropy floor curves (CSV)")
    sp.add_argument(
        "--xi-list",
        type=_float_list_arg,
        default=None,
        help="comma-separated xi values (default: 0, pi/8, pi/4)",
    )
    sp.add_argument(
        "--theta-steps",
        type=int,
        default=None,
        help="theta grid points on [0, pi] (default: 50)",
    )

    sp = add("figure3", "steerability region scan (CSV)")
    sp.add_argument("--xi-steps", type=int, default=None, help="xi grid points (default: 64)")
    sp.add_argument("--p-steps", type=int, default=None, help="p grid points (default: 64)")

    sp = add("steer", "steering witness verdicts (JSON)")
    add_state(sp, ("psi_xi", "rho_xi", "random_pure", "random_mixed"))
    sp.add_argument(
        "--hemisphere",
        type=int,
        default=None,
        help="also average the leading bound component over this many directions",
    )
    sp.add_argument(
        "--sampler",
        choices=("fibonacci", "uniform"),
        default=None,
        help="hemisphere sampler (default: fibonacci)",
    )

    sp = add("join", "lattice join of explicit vectors (JSON)")
    sp.add_argument(
        "--vecs",
        default=None,
        help='vectors as "[a,b,...],[c,d,...]" (JSON rows)',
    )

    return parser


_DEFAULTS = {
    "bound": {
        "family": None,
        "xi": None,
        "p": None,
        "seed": 0,
        "theta": None,
        "phi": 0.0,
        "direction": "reduce_A_by_B",
    },
    "strategy": {
        "family": None,
        "xi": None,
        "p": None,
        "seed": 0,
        "theta": None,
        "phi": 0.0,
        "starts": 32,
        "max_iters": 200,
        "tol": 1e-10,
        "search_seed": 0,
    },
    "figure1": {"xi_list": _FIG1_XI, "theta_steps": 25},
    "figure2": {"xi_list": _FIG2_XI, "theta_steps": 50},
    "figure3": {"xi_steps": 64, "p_steps": 64},
    "steer": {
        "family": None,
        "xi": None,
        "p": None,
        "seed": 0,
        "hemisphere": None,
        "sampler": "fibonacci",
    },
    "join": {"vecs": None},
}

_REQUIRED = {
    "bound": ("family", "xi", "theta"),
    "strategy": ("family", "theta"),
    "figure1": (),
    "figure2": (),
    "figure3": (),
    "steer": ("family",),
    "join": ("vecs",),
}


def _load_config_file(path: str, command: str) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path!r} must hold a JSON object")
    allowed = set(_DEFAULTS[command]) | {"out"}
    if command == "strategy":
        allowed.add("search")
    for key in data:
        if key not in allowed:
            raise ConfigError(f"unknown config key {key!r} for command {command!r}")
    return data


def _resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config-file values, and explicit flags (flags win)."""
    command = args.command
    file_cfg = _load_config_file(args.config, command) if args.config else {}
    search_section = file_cfg.pop("search", None)
    cfg = dict(_DEFAULTS[command])
    cfg["out"] = None
    for key, value in file_cfg.items():
        if key == "xi_list":
            if not isinstance(value, list) or not value:
                raise ConfigError("config key 'xi_list' must be a nonempty list")
            value = tuple(float(v) for v in value)
        cfg[key] = value
    if search_section is not None:
        if not isinstance(search_section, dict):
            raise ConfigError("config key 'search' must hold an object")
        unknown = sorted(set(search_section) - {"starts", "max_iters", "tol", "seed"})
        if unknown:
            raise ConfigError(f"unknown search config keys: {', '.join(unknown)}")
        for key in ("starts", "max_iters", "tol"):
            if key in search_section:
                cfg[key] = search_section[key]
        if "seed" in search_section:
            cfg["search_seed"] = search_section["seed"]
    for key in cfg:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            cfg[key] = flag_value
    missing = [key for key in _REQUIRED[command] if cfg.get(key) is None]
    if missing:
        flags = ", ".join("--" + key.replace("_", "-") for key in missing)
        raise ConfigError(f"missing required option(s): {flags}")
    cfg["command"] = command
    return cfg


def _family_state(cfg: dict) -> DensityMatrix:
    family = cfg["family"]
    if family in ("psi_xi", "rho_xi"):
        return build_state(family, xi=cfg.get("xi"), p=cfg.get("p"))
    return build_state(family, seed=int(cfg.get("seed") or 0))


def _search_config(cfg: dict) -> SearchConfig:
    return SearchConfig(
        starts=int(cfg["starts"]),
        max_iters=int(cfg["max_iters"]),
        tol=float(cfg["tol"]),
        seed=int(cfg["search_seed"]),
    )


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_bound(cfg: dict) -> str:
    result = qubit_closed_form(
        cfg["family"],
        (float(cfg["theta"]), float(cfg["phi"])),
        xi=float(cfg["xi"]),
        p=None if cfg.get("p") is None else float(cfg["p"]),
        direction=cfg["direction"],
    )
    return _json_text(result.to_json_dict())


def _cmd_strategy(cfg: dict) -> str:
    rho = _family_state(cfg)
    x = ProjectiveMeasurement.from_bloch_angles(float(cfg["theta"]), float(cfg["phi"]))
    result = conditional_bound(rho, x, _search_config(cfg))
    return _json_text(result.to_json_dict())


def _figure1_block(point: tuple[float, float]) -> list[str]:
    xi, theta = point
    sx = qubit_closed_form("psi_xi", (theta, 0.0), xi=xi).s_vec
    sy = qubit_closed_form("psi_xi", (theta, math.pi), xi=xi).s_vec
    s_mem = combine(sx, sy, "direct_sum")
    x = ProjectiveMeasurement.from_bloch_angles(theta, 0.0)
    y = ProjectiveMeasurement.from_bloch_angles(theta, math.pi)
    s_single = single_particle_bound(x, y, method="qubit_closed_form")
    report = violation_report(s_mem, s_single)
    cum_mem = s_mem.prefix_sums()
    cum_single = s_single.prefix_sums()
    flag = int(report.violated)
    return [
        f"{_fmt(xi)},{_fmt(theta)},{k},{_fmt(cum_mem[k])},{_fmt(cum_single[k])},{flag}"
        for k in range(len(cum_mem))
    ]


def _cmd_figure1(cfg: dict) -> str:
    steps = int(cfg["theta_steps"])
    if steps < 2:
        raise DomainError("theta-steps must be at least 2")
    thetas = np.linspace(0.0, math.pi / 2, steps)
    points = [(float(xi), float(th)) for xi in cfg["xi_list"] for th in thetas]
    lines = ["xi,theta,k,cum_mem,cum_single,violated"]
    for block in _pmap(_figure1_block, points):
        lines.extend(block)
    return "\n".join(lines) + "\n"


def _figure2_row(point: tuple[float, float]) -> str:
    xi, theta = point
    rho = build_state("psi_xi", xi=xi)
    x = ProjectiveMeasurement.from_bloch_angles(theta, 0.0)
    y = ProjectiveMeasurement.from_bloch_angles(theta, math.pi)
    sx = qubit_closed_form("psi_xi", (theta, 0.0), xi=xi).s_vec
    sy = qubit_closed_form("psi_xi", (theta, math.pi), xi=xi).s_vec
    report = entropy_report(rho, x, y, sx, sy)
    return (
        f"{_fmt(theta)},{_fmt(xi)},{_fmt(report.h_sum)},"
        f"{_fmt(report.cmur_lb)},{_fmt(report.berta_lb)}"
    )


def _cmd_figure2(cfg: dict) -> str:
    steps = int(cfg["theta_steps"])
    if steps < 2:
        raise DomainError("theta-steps must be at least 2")
    thetas = np.linspace(0.0, math.pi, steps)
    points = [(float(xi), float(th)) for xi in cfg["xi_list"] for th in thetas]
    lines = ["theta,xi,h_sum,cmur_lb,berta_lb"]
    lines.extend(_pmap(_figure2_row, points))
    return "\n".join(lines) + "\n"


def _cmd_figure3(cfg: dict) -> str:
    rows = region_scan(int(cfg["xi_steps"]), int(cfg["p_steps"]))
    lines = ["xi,p,rg_value,v_two,v_three,v_inf"]
    lines.extend(
        f"{_fmt(r.xi)},{_fmt(r.p)},{_fmt(r.rg_value)},"
        f"{int(r.v_two)},{int(r.v_three)},{int(r.v_inf)}"
        for r in rows
    )
    return "\n".join(lines) + "\n"


def _cmd_steer(cfg: dict) -> str:
    rho = _family_state(cfg)
    payload = steering_witness(rho).to_json_dict()
    if cfg.get("hemisphere") is not None:
        m = int(cfg["hemisphere"])
        result = hemisphere_functional(
            rho, m, seed=int(cfg.get("seed") or 0), sampler=cfg["sampler"]
        )
        payload["hemisphere"] = {
            "finite_sum_avg": result.finite_sum_avg,
            "analytic_avg": result.analytic_avg,
            "benchmark_avg": result.benchmark_avg,
        }
    return _json_text(payload)


def _cmd_join(cfg: dict) -> str:
    raw = cfg["vecs"]
    if isinstance(raw, str):
        try:
            rows = json.loads("[" + raw + "]")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse --vecs: {exc}")
    else:
        rows = raw
    if not isinstance(rows, list) or not rows or not all(
        isinstance(row, list) for row in rows
    ):
        raise ConfigError("--vecs must give one or more JSON rows of numbers")
    joined = lattice_join([UncertaintyVec.of(row) for row in rows])
    return _json_text({"join": joined.to_json()})


_HANDLERS = {
    "bound": _cmd_bound,
    "strategy": _cmd_strategy,
    "figure1": _cmd_figure1,
    "figure2": _cmd_figure2,
    "figure3": _cmd_figure3,
    "steer": _cmd_steer,
    "join": _cmd_join,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    try:
        cfg = _resolve(args)
        text = _HANDLERS[cfg["command"]](cfg)
        if cfg.get("out"):
            Path(cfg["out"]).write_text(text)
        else:
            sys.stdout.write(text)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CmurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
