"""Command-line front end.

Subcommands: moments, opnorm, kernel, verify, gwco, classify.  A single
JSON config document names the space parameters, the map library (complex
coefficients as [re, im] pairs), quadrature sizes, tolerances, seed and
output defaults; unknown keys anywhere in the document are rejected.  Runs
are deterministic: the same config and seed produce byte-identical JSON.

Exit codes: 0 success / all applicable checks passed, 1 a verification
check failed, 2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import harness
from .kernels import KernelPoint, kernel_norm_closed_form, kernel_norm_truncated, kernel_pairing
from .maps import AnalyticMap, certify_self_map, differentiate
from .operators import classify, composition_matrix, operator_norm
from .quadrature import disk_integral, disk_rule
from .space import CoefficientSeries, SpaceParams, evaluate, weight_sequence

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


DEFAULT_CONFIG = {
    "alpha": 0.0,
    "degree_cap": 64,
    "fiber_dim": 3,
    "maps": {
        "rotation": [[0.0, 0.0], [float(np.cos(np.pi / 4)), float(np.sin(np.pi / 4))]],
        "contraction": [[0.0, 0.0], [0.5, 0.0]],
        "affine": [[0.3, 0.0], [0.4, 0.0]],
        "squaring": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
        "origin_fixed_quadratic": [[0.0, 0.0], [0.5, 0.0], [0.3, 0.0]],
        "constant_half": [[0.5, 0.0]],
        "scaling08": [[0.0, 0.0], [0.8, 0.0]],
    },
    "quadrature": {"radial": 64, "angular": 256},
    "tolerances": {"exact": 1e-12, "analytic": 1e-6},
    "seed": 0,
    "output": {"path": None, "format": "json"},
    "verify": {},
}

_VERIFY_KEYS = {"rotation_lambda", "hermitian_lambda", "normal_lambda", "adjoint_lambda"}


def _merge_section(base: dict, user: dict, path: str) -> dict:
    out = dict(base)
    for key, value in user.items():
        if key not in base:
            raise ConfigError(f"unknown config key '{path}{key}'")
        if isinstance(base[key], dict) and key != "maps" and key != "verify":
            if not isinstance(value, dict):
                raise ConfigError(f"config key '{path}{key}' must be an object")
            out[key] = _merge_section(base[key], value, f"{path}{key}.")
        else:
            out[key] = value
    return out


def load_config(path: str | None) -> dict:
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))  # deep copy
    if path is not None:
        try:
            with open(path) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config document must be a JSON object")
        cfg = _merge_section(cfg, user, "")
    if not isinstance(cfg["maps"], dict):
        raise ConfigError("'maps' must map names to coefficient-pair lists")
    for key in cfg["verify"]:
        if key not in _VERIFY_KEYS:
            raise ConfigError(f"unknown config key 'verify.{key}'")
    if not cfg["alpha"] > -1:
        raise ConfigError(f"alpha must be > -1, got {cfg['alpha']}")
    if int(cfg["degree_cap"]) < 0 or int(cfg["fiber_dim"]) < 1:
        raise ConfigError("degree_cap must be >= 0 and fiber_dim >= 1")
    if cfg["output"]["format"] not in ("json", "csv"):
        raise ConfigError("output.format must be 'json' or 'csv'")
    return cfg


def _get_map(cfg: dict, name: str) -> AnalyticMap:
    maps = cfg["maps"]
    if not maps:
        raise ConfigError("config has an empty map set")
    if name not in maps:
        raise ConfigError(f"unknown map '{name}' (have: {', '.join(sorted(maps))})")
    try:
        return AnalyticMap.from_pairs(maps[name])
    except ValueError as exc:
        raise ConfigError(f"map '{name}' is malformed: {exc}") from exc


def parse_complex(text: str) -> complex:
    """Accept '0.5', '0.3+0.1j', or 're,im'."""
    try:
        return complex(text)
    except ValueError:
        pass
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            pass
    raise ConfigError(f"cannot parse complex number from '{text}'")


def _parse_degree_list(text: str) -> list[int]:
    try:
        degrees = [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad degree list '{text}'") from exc
    if not degrees or any(d < 0 for d in degrees):
        raise ConfigError(f"bad degree list '{text}'")
    return degrees


def _jsonable(obj):
    return harness._jsonable(obj)


def _emit(payload: dict, rows: list[dict], args, cfg) -> None:
    """Print a human summary; write JSON or CSV to --out when requested."""
    out_path = args.out or cfg["output"]["path"]
    fmt = args.format or cfg["output"]["format"]
    if out_path:
        if fmt == "json":
            text = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
        else:
            buf = io.StringIO()
            if rows:
                writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
                writer.writeheader()
                for row in rows:
                    writer.writerow({k: _csv_cell(v) for k, v in row.items()})
            text = buf.getvalue()
        with open(out_path, "w") as fh:
            fh.write(text)


def _csv_cell(v):
    if isinstance(v, (complex, np.complexfloating)):
        return f"{float(v.real)!r},{float(v.imag)!r}"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def _print_rows(rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0].keys())
    print("  ".join(f"{c:>14}" for c in cols))
    for row in rows:
        print("  ".join(f"{_fmt_cell(row[c]):>14}" for c in cols))


def _fmt_cell(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, complex):
        return f"{v:.6g}"
    return str(v)


# ---------------------------------------------------------------------------
# subcommands

def cmd_moments(args, cfg) -> int:
    alpha = cfg["alpha"]
    rule = disk_rule(alpha, cfg["quadrature"]["radial"], cfg["quadrature"]["angular"])
    w = weight_sequence(args.n_max, alpha)
    mod2 = np.abs(rule.nodes) ** 2
    rows = []
    for n in range(args.n_max + 1):
        q = float(np.real(disk_integral(mod2**n, rule)))
        rows.append({"n": n, "closed_form": float(w[n]), "quadrature": q,
                     "rel_err": abs(q - w[n]) / w[n]})
    _print_rows(rows)
    worst = max(r["rel_err"] for r in rows)
    print(f"max relative error: {worst:.3e}")
    _emit({"command": "moments", "alpha": alpha, "rows": rows}, rows, args, cfg)
    return EXIT_OK


def _degrees_for(args, cfg) -> list[int]:
    if args.degree_sweep:
        return _parse_degree_list(args.degree_sweep)
    return [args.degree if args.degree is not None else int(cfg["degree_cap"])]


def cmd_opnorm(args, cfg) -> int:
    alpha = cfg["alpha"]
    phi = _get_map(cfg, args.map)
    cert = certify_self_map(phi)
    if not cert.accepted:
        raise ConfigError(
            f"map '{args.map}' failed self-map certification "
            f"(sup estimate {cert.sup_estimate:.6g})"
        )
    c0 = abs(complex(phi(0.0)))
    lower = (1.0 - c0**2) ** (-(2.0 + alpha) / 2.0)
    upper = ((1.0 + c0) / (1.0 - c0)) ** ((2.0 + alpha) / 2.0)
    tol = args.tol if args.tol is not None else cfg["tolerances"]["exact"]
    rows = []
    for n in _degrees_for(args, cfg):
        B = composition_matrix(phi, alpha, n, n, allow_uncertified=True)
        nv = operator_norm(B, tol=tol, seed=int(args.seed if args.seed is not None else cfg["seed"]))
        rows.append({"degree": n, "norm": nv, "lower_bound": lower, "upper_bound": upper,
                     "within_bounds": bool(lower - 1e-6 <= nv <= upper + 1e-6)})
    _print_rows(rows)
    _emit({"command": "opnorm", "map": args.map, "alpha": alpha, "rows": rows},
          rows, args, cfg)
    return EXIT_OK


def cmd_kernel(args, cfg) -> int:
    alpha = cfg["alpha"]
    z = parse_complex(args.z)
    p = KernelPoint(z, args.j)
    cf = kernel_norm_closed_form(p, alpha)
    rows = []
    for n in _degrees_for(args, cfg):
        params = SpaceParams(alpha=alpha, degree_cap=n,
                             fiber_dim=max(int(cfg["fiber_dim"]), args.j + 1))
        tr = kernel_norm_truncated(p, n, alpha)
        # reproducing residual on a deterministic test series
        coeffs = np.zeros((n + 1, params.fiber_dim), dtype=complex)
        coeffs[: min(n, 8) + 1, args.j] = 1.0 / (np.arange(min(n, 8) + 1) + 1.0)
        f = CoefficientSeries(params, coeffs)
        reproduced = kernel_pairing(f, p)
        pointwise = complex(evaluate(f, z)[args.j])
        rows.append({
            "degree": n, "truncated_norm": tr, "closed_form": cf,
            "rel_gap": (cf - tr) / cf,
            "reproducing_residual": abs(reproduced - pointwise),
        })
    _print_rows(rows)
    _emit({"command": "kernel", "z": z, "fiber_index": args.j, "alpha": alpha,
           "rows": rows}, rows, args, cfg)
    return EXIT_OK


def cmd_classify(args, cfg) -> int:
    alpha = cfg["alpha"]
    phi = _get_map(cfg, args.map)
    tol = args.tol if args.tol is not None else cfg["tolerances"]["exact"]
    rows = []
    for n in _degrees_for(args, cfg):
        B = composition_matrix(phi, alpha, n, n, allow_uncertified=True)
        rep = classify(B, tol=tol)
        rows.append({
            "degree": n,
            "isometry_residual": rep.isometry_residual,
            "coisometry_residual": rep.coisometry_residual,
            "hermitian_residual": rep.hermitian_residual,
            "normality_residual": rep.normality_residual,
            "isometry": rep.is_isometry, "coisometry": rep.is_coisometry,
            "unitary": rep.is_unitary, "hermitian": rep.is_hermitian,
            "normal": rep.is_normal,
        })
    _print_rows(rows)
    print("note: flags are finite-truncation evidence at the listed degree, not proofs")
    _emit({"command": "classify", "map": args.map, "alpha": alpha, "tol": tol,
           "rows": rows}, rows, args, cfg)
    return EXIT_OK


def cmd_gwco(args, cfg) -> int:
    alpha = cfg["alpha"]
    phi = _get_map(cfg, args.map)
    if args.weight == "one":
        psi = AnalyticMap.constant(1.0)
    elif args.weight == "dphi":
        psi = differentiate(phi, 1)
    else:
        psi = _get_map(cfg, args.weight)
    tol = args.tol if args.tol is not None else 1e-10
    report = harness.check_gwco_boundedness(
        phi, psi, r=args.r, m_max=args.m_max, alpha=alpha,
        radial_count=cfg["quadrature"]["radial"],
        angular_count=cfg["quadrature"]["angular"],
        agree_tol=tol,
        seed=int(args.seed if args.seed is not None else cfg["seed"]),
    )
    if report.status == harness.STATUS_HYPOTHESIS_NOT_MET:
        print(f"hypothesis not met: orthogonality defect "
              f"{report.residuals['orthogonality_defect']:.3e}; no verdict")
        _emit({"command": "gwco", "report": report.to_dict()}, [], args, cfg)
        return EXIT_OK
    seq = report.parameters["criterion_sequence"]
    rows = [{"m": m, "s_m": v} for m, v in zip(range(args.r, args.m_max + 1), seq)]
    _print_rows(rows)
    print(f"estimated K = {report.parameters['estimated_K']:.9g} "
          f"at m = {report.parameters['arg_max_m']}; "
          f"tail-quarter max = {report.parameters['tail_quarter_max']:.3e}; "
          f"paths agree to {report.residuals['path_disagreement']:.3e}")
    _emit({"command": "gwco", "report": report.to_dict()}, rows, args, cfg)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_verify(args, cfg) -> int:
    if not cfg["maps"]:
        raise ConfigError("verify needs a nonempty map set")
    seed = int(args.seed if args.seed is not None else cfg["seed"])
    overrides = {k: complex(v[0], v[1]) if isinstance(v, list) else parse_complex(str(v))
                 for k, v in cfg["verify"].items()}
    threads = harness.harness_threads()
    degrees = _parse_degree_list(args.degree_sweep) if args.degree_sweep else [None]
    if args.degree is not None and not args.degree_sweep:
        degrees = [args.degree]
    all_reports = []
    for n in degrees:
        reports = harness.run_default_suite(seed=seed, degree_override=n,
                                            overrides=overrides, threads=threads)
        all_reports.extend(reports)
        for r in reports:
            if r.status == harness.STATUS_HYPOTHESIS_NOT_MET:
                flag = "SKIP (hypothesis not met)"
            else:
                flag = "PASS" if r.passed else "FAIL"
            sweep = f" @N={n}" if n is not None else ""
            print(f"{flag:>26}  {r.theorem_id}{sweep}")
    out_path = args.out or cfg["output"]["path"] or "verification_report.json"
    meta = {"seed": seed, "alpha_default": cfg["alpha"],
            "degree_override": [d for d in degrees if d is not None]}
    fmt = args.format or cfg["output"]["format"]
    if fmt == "csv":
        text = harness.reports_csv(all_reports)
    else:
        text = harness.reports_json(all_reports, meta)
    with open(out_path, "w") as fh:
        fh.write(text)
    print(f"report written to {out_path}")
    failed = [r for r in all_reports
              if r.status == harness.STATUS_CHECKED and not r.passed]
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergman-lab",
        description="Numerical checks for composition-type operators on the "
                    "weighted Bergman space of the unit disk.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config document")
    common.add_argument("--out", metavar="PATH", help="write machine-readable output here")
    common.add_argument("--format", choices=("json", "csv"), help="output format for --out")
    common.add_argument("--degree", type=int, help="truncation degree override")
    common.add_argument("--degree-sweep", metavar="N1,N2,...",
                        help="run at each listed truncation degree")
    common.add_argument("--seed", type=int, help="seed for randomized starts")
    common.add_argument("--tol", type=float, help="tolerance override")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common],
                       help="moment identity: quadrature vs weight recurrence")
    p.add_argument("--n-max", type=int, default=40)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("opnorm", parents=[common],
                       help="operator norm with closed-form sandwich bounds")
    p.add_argument("map", help="map name from the config map set")
    p.set_defaults(func=cmd_opnorm)

    p = sub.add_parser("kernel", parents=[common],
                       help="truncated vs closed-form kernel norm at a point")
    p.add_argument("--z", required=True, help="point in the open disk, e.g. 0.5 or 0.3,0.1")
    p.add_argument("--j", type=int, default=0, help="fiber index")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", parents=[common],
                       help="run the full verification suite and write a report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gwco", parents=[common],
                       help="boundedness criterion sequence for psi*(f^(r) o phi)")
    p.add_argument("map", help="inducing map name")
    p.add_argument("weight", help="weight map name, or 'one', or 'dphi'")
    p.add_argument("-r", type=int, default=1, help="derivative order")
    p.add_argument("--m-max", type=int, default=40)
    p.set_defaults(func=cmd_gwco)

    p = sub.add_parser("classify", parents=[common],
                       help="isometry/co-isometry/Hermitian/normality residuals")
    p.add_argument("map", help="map name from the config map set")
    p.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
