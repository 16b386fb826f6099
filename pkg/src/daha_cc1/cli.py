"""Command-line front end.

Subcommands: classify, construct, scan, ds-check, spectrum, selftest.
Reports are JSON objects with the stable top-level fields
{tool_version, params, command, results, residuals, exit_code}; scan can
also emit CSV.  Exit codes: 0 success, 1 property failure, 2 input
error, 3 off-stratum, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import __version__, dsbridge, rep as rep_mod
from .core import (
    AmbiguousMatchError,
    Params,
    Tolerance,
    format_scalar,
    match_q_power,
    parse_scalar,
    validate_params,
)
from .rep import (
    IdealNotInvariantError,
    NotOnStratumError,
    RelationResidualError,
    SignVector,
    build_quotient_rep,
    build_truncated_polyrep,
    commutant_dim,
    dim_vector,
    kernel_dims,
    rep_from_json,
    rep_to_json,
    rho_ladder,
    rigidity_D,
    spectrum_of_z,
    verify_relations,
)
from .roots import (
    Imaginary,
    RootVector,
    Type1E,
    Type1F,
    Type2,
    enumerate_strict_roots,
    kind_from_str,
    kind_to_str,
    root_of_kind,
    tits_form,
)
from .strata import (
    _random_q_half,
    _random_unit,
    classify_params,
    sample_generic_params,
    sample_stratum_params,
    sigma_membership,
    verdict_to_json,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_OFF_STRATUM = 3
EXIT_VERIFY = 4

_PARAM_KEYS = ("k0", "k1", "u0", "u1", "q_half")


@dataclass
class RunConfig:
    params: Optional[Params]
    n_max: int = 6
    fmt: str = "json"
    jobs: int = 1
    seed: int = 0
    eq_tol: float = 1e-9


def _read_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line {line!r}")
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def _build_config(args: argparse.Namespace) -> RunConfig:
    file_vals: dict[str, str] = {}
    if getattr(args, "config", None):
        file_vals = _read_config_file(args.config)

    def pick(key: str, flag_val):
        return flag_val if flag_val is not None else file_vals.get(key)

    scalars = {}
    for key in _PARAM_KEYS:
        v = pick(key, getattr(args, key, None))
        scalars[key] = parse_scalar(v) if isinstance(v, str) else v
    eq_tol = pick("tol", getattr(args, "tol", None))
    eq_tol = float(eq_tol) if eq_tol is not None else 1e-9
    n_max = pick("n_max", getattr(args, "n_max", None))
    n_max = int(n_max) if n_max is not None else 6
    if n_max > 20:
        raise ValueError("n_max must be <= 20")
    fmt = pick("format", getattr(args, "format", None)) or "json"
    if fmt not in ("json", "csv", "text"):
        raise ValueError(f"unknown output format {fmt!r}")
    jobs = pick("jobs", getattr(args, "jobs", None))
    jobs = int(jobs) if jobs is not None else 1
    seed = pick("seed", getattr(args, "seed", None))
    seed = int(seed) if seed is not None else 0

    tol = Tolerance(eq_tol=eq_tol, rank_tol=eq_tol)
    params = None
    if all(scalars[k] is not None for k in _PARAM_KEYS):
        params = Params(tol=tol, **scalars)
    elif any(scalars[k] is not None for k in _PARAM_KEYS):
        missing = [k for k in _PARAM_KEYS if scalars[k] is None]
        raise ValueError(f"missing parameters: {', '.join(missing)}")
    return RunConfig(
        params=params, n_max=n_max, fmt=fmt, jobs=jobs, seed=seed, eq_tol=eq_tol
    )


def _params_json(p: Optional[Params]) -> Optional[dict]:
    if p is None:
        return None
    return {k: format_scalar(getattr(p, k)) for k in _PARAM_KEYS}


def _report(
    command: str,
    params: Optional[Params],
    results,
    residuals: Optional[dict] = None,
    exit_code: int = EXIT_OK,
) -> dict:
    return {
        "tool_version": __version__,
        "params": _params_json(params),
        "command": command,
        "results": results,
        "residuals": residuals or {},
        "exit_code": exit_code,
    }


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "text":
        out.write(f"# {report['command']} (v{report['tool_version']})\n")
        out.write(json.dumps(report["results"], indent=2, sort_keys=True))
        out.write("\n")
    else:
        out.write(json.dumps(report, indent=2, sort_keys=True))
        out.write("\n")


def _require_params(cfg: RunConfig) -> Params:
    if cfg.params is None:
        raise ValueError("parameters k0, k1, u0, u1, q_half are required")
    return cfg.params


# -- classify ------------------------------------------------------------


def cmd_classify(cfg: RunConfig, explain: bool) -> tuple[dict, int]:
    p = _require_params(cfg)
    validate_params(p)
    hits = classify_params(p, cfg.n_max)
    rows = [
        {"kind": kind_to_str(kind), "root": str(vec)} for kind, vec in hits
    ]
    results: dict = {"hits": rows, "n_max": cfg.n_max}
    if explain:
        near = []
        for kind, vec in enumerate_strict_roots(cfg.n_max):
            if isinstance(kind, Imaginary):
                continue
            v = sigma_membership(p, kind)
            if not v.member and len(v.failed_conditions) <= 1:
                near.append(
                    {"kind": kind_to_str(kind), **verdict_to_json(v)}
                )
        results["near_misses"] = near
    return _report("classify", p, results), EXIT_OK


# -- construct -----------------------------------------------------------


def _construct_results(kind, r, p: Params) -> tuple[dict, dict]:
    dv = dim_vector(r, p)
    residuals = verify_relations(r, p)
    t = dsbridge.to_ds_tuple(r, p)
    vec = RootVector(*dv.as_tuple())
    specs = dsbridge.class_spec_from_root(vec, p)
    ds_block = {
        "product_residual": t.product_residual(),
        "class_membership": dsbridge.verify_class_membership(t, specs, p.tol),
        "existence_predicate": dsbridge.ds_existence_predicate(vec, p, p.tol),
    }
    results = {
        "kind": kind_to_str(kind),
        "rep": rep_to_json(r),
        "dim_vector": list(dv.as_tuple()),
        "spectrum_z": sorted(
            (format_scalar(v) for v in spectrum_of_z(r, p))
        ),
        "commutant_dim": commutant_dim(r),
        "rigidity_D": rigidity_D(r.dim, *kernel_dims(r, p)),
        "ds": ds_block,
    }
    return results, residuals


def cmd_construct(
    cfg: RunConfig, kind_str: str, force: bool, out_path: Optional[str]
) -> tuple[dict, int]:
    p = _require_params(cfg)
    validate_params(p)
    kind = kind_from_str(kind_str)
    r = build_quotient_rep(kind, None, p, force=force)
    results, residuals = _construct_results(kind, r, p)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(rep_to_json(r), fh, indent=2, sort_keys=True)
        results["rep_file"] = out_path
    return _report("construct", p, results, residuals), EXIT_OK


# -- spectrum ------------------------------------------------------------


def cmd_spectrum(cfg: RunConfig, kind_str: str) -> tuple[dict, int]:
    p = _require_params(cfg)
    validate_params(p)
    kind = kind_from_str(kind_str)
    r = build_quotient_rep(kind, None, p)
    eigs = sorted(format_scalar(v) for v in spectrum_of_z(r, p))
    results = {"kind": kind_to_str(kind), "spectrum_z": eigs}
    if isinstance(kind, Type2):
        expected = rho_ladder(SignVector(*kind.signs), kind.n, p)
        results["expected_ladder"] = sorted(format_scalar(v) for v in expected)
    return _report("spectrum", p, results), EXIT_OK


# -- scan ----------------------------------------------------------------


def _scan_point(idx: int, seed: int, n_max: int, eq_tol: float) -> Params:
    rng = np.random.default_rng([seed, idx])
    tol = Tolerance(eq_tol=eq_tol, rank_tol=eq_tol)
    return Params(
        k0=_random_unit(rng),
        k1=_random_unit(rng),
        u0=_random_unit(rng),
        u1=_random_unit(rng),
        q_half=_random_q_half(rng),
        tol=tol,
    )


def _scan_worker(job: tuple) -> tuple[int, dict]:
    """Module-level so ProcessPoolExecutor can pickle it.  Each index
    derives its own RNG stream, so results are independent of how jobs
    are distributed across workers."""
    idx, seed, n_max, eq_tol, explicit = job
    if explicit is not None:
        tol = Tolerance(eq_tol=eq_tol, rank_tol=eq_tol)
        p = Params(*[complex(re, im) for re, im in explicit], tol=tol)
    else:
        p = _scan_point(idx, seed, n_max, eq_tol)
    try:
        validate_params(p)
        hits = [kind_to_str(k) for k, _ in classify_params(p, n_max)]
    except ValueError as exc:
        hits = [f"error:{type(exc).__name__}"]
    row = {
        "idx": idx,
        **{k: format_scalar(getattr(p, k)) for k in _PARAM_KEYS},
        "hits": hits,
    }
    return idx, row


def _load_points_file(path: str) -> list[tuple]:
    points = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            vals = [parse_scalar(x) for x in line.split(",")]
            if len(vals) != 5:
                raise ValueError(f"point line needs 5 values: {line!r}")
            points.append(tuple((v.real, v.imag) for v in vals))
    return points


def cmd_scan(
    cfg: RunConfig, count: Optional[int], points_file: Optional[str]
) -> tuple[dict, int]:
    if points_file is not None:
        explicit = _load_points_file(points_file)
        jobs = [
            (i, cfg.seed, cfg.n_max, cfg.eq_tol, pt)
            for i, pt in enumerate(explicit)
        ]
    elif count is not None:
        if count < 1:
            raise ValueError("count must be >= 1")
        jobs = [(i, cfg.seed, cfg.n_max, cfg.eq_tol, None) for i in range(count)]
    else:
        p = _require_params(cfg)
        pt = tuple(
            (getattr(p, k).real, getattr(p, k).imag) for k in _PARAM_KEYS
        )
        jobs = [(0, cfg.seed, cfg.n_max, cfg.eq_tol, pt)]

    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = dict(pool.map(_scan_worker, jobs, chunksize=8))
    else:
        rows = dict(map(_scan_worker, jobs))
    ordered = [rows[i] for i in sorted(rows)]
    results = {"rows": ordered, "n_points": len(ordered)}
    return _report("scan", cfg.params, results), EXIT_OK


def _scan_csv(report: dict) -> str:
    lines = ["idx,k0,k1,u0,u1,q_half,hits"]
    for row in report["results"]["rows"]:
        hits = ";".join(row["hits"])
        lines.append(
            f"{row['idx']},{row['k0']},{row['k1']},{row['u0']},"
            f"{row['u1']},{row['q_half']},{hits}"
        )
    return "\n".join(lines) + "\n"


# -- ds-check ------------------------------------------------------------


def cmd_ds_check(cfg: RunConfig, rep_path: str) -> tuple[dict, int]:
    p = _require_params(cfg)
    validate_params(p)
    with open(rep_path, encoding="utf-8") as fh:
        r = rep_from_json(json.load(fh))
    residuals = verify_relations(r, p)
    t = dsbridge.to_ds_tuple(r, p)
    dv = dim_vector(r, p)
    vec = RootVector(*dv.as_tuple())
    specs = dsbridge.class_spec_from_root(vec, p)
    membership = dsbridge.verify_class_membership(t, specs, p.tol)
    det_prod = complex(
        np.prod([np.linalg.det(M) for M in t.matrices()])
    )
    results = {
        "rep_file": rep_path,
        "dim_vector": list(dv.as_tuple()),
        "product_residual": t.product_residual(),
        "class_membership": membership,
        "existence_predicate": dsbridge.ds_existence_predicate(vec, p, p.tol),
        "det_product": format_scalar(det_prod),
    }
    code = EXIT_OK if membership else EXIT_VERIFY
    return _report("ds-check", p, results, residuals, code), code


# -- selftest ------------------------------------------------------------


def _selftest_properties(cfg: RunConfig) -> tuple[list[dict], dict]:
    rng = np.random.default_rng(cfg.seed)
    tol = Tolerance(eq_tol=cfg.eq_tol, rank_tol=min(cfg.eq_tol, 1e-6))
    checks: list[dict] = []
    residuals: dict[str, float] = {}

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks.append({"name": name, "passed": bool(ok), "detail": detail})

    # truncated polynomial action: pins the operator convention
    try:
        p = sample_generic_params(rng, tol)
        worst = 0.0
        for side in ("P", "Pbar"):
            mats = build_truncated_polyrep(side, SignVector(), 5, p)
            pairs = (
                (("T0", p.k0), ("T1", p.k1))
                if side == "P"
                else (("T0v", p.u0), ("T1v", p.u1))
            )
            for name, t in pairs:
                M = mats[name]
                eye = np.eye(M.shape[0])
                res = np.linalg.norm((M - t * eye) @ (M + eye / t), 2)
                worst = max(worst, float(res / max(1.0, np.linalg.norm(M, 2) ** 2)))
        residuals["truncated_quadratic"] = worst
        record("operator-convention", worst < 1e-9, f"residual {worst:.3e}")
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        record("operator-convention", False, f"{type(exc).__name__}: {exc}")

    # exponent-matching guard must stay unambiguous at the working tolerance
    try:
        p = sample_generic_params(rng, tol)
        match_q_power(p.q**3, p.q, 0, 8, tol)
        record("q-power-guard", True)
    except (AmbiguousMatchError, RuntimeError) as exc:
        record("q-power-guard", False, f"{type(exc).__name__}: {exc}")

    # relation suite on a sample of kinds
    kinds = [Type2(*s, n) for n in (0, 1) for s in product((1, -1), repeat=4)]
    kinds += [Type1E(i, s, 1) for i in (0, 1) for s in (1, -1)]
    kinds += [Type1F(i, s, 1) for i in (0, 1) for s in (1, -1)]
    worst_rel = 0.0
    ok = True
    detail = ""
    for kind in kinds:
        try:
            p = sample_stratum_params(kind, rng, tol)
            r = build_quotient_rep(kind, None, p)
            worst_rel = max(worst_rel, max(verify_relations(r, p).values()))
            if dim_vector(r, p).as_tuple() != tuple(root_of_kind(kind)):
                ok, detail = False, f"dim vector mismatch at {kind_to_str(kind)}"
                break
            if commutant_dim(r) != 1:
                ok, detail = False, f"reducible at {kind_to_str(kind)}"
                break
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            ok, detail = False, f"{kind_to_str(kind)}: {type(exc).__name__}"
            break
    residuals["relations"] = worst_rel
    if ok and worst_rel >= 1e-8:
        ok, detail = False, f"relation residual {worst_rel:.3e}"
    record("relation-suite", ok, detail)

    # negative control: generic parameters admit nothing
    try:
        p = sample_generic_params(rng, tol)
        empty = not classify_params(p, 4, tol)
        record("generic-empty", empty)
    except RuntimeError as exc:
        record("generic-empty", False, str(exc))

    # rigidity closed forms
    record(
        "rigidity-counts",
        rigidity_D(3, 2, 2, 2, 2) == 0 and rigidity_D(2, 1, 1, 1, 1) == 2,
    )

    # root combinatorics
    roots = enumerate_strict_roots(8)
    ok = len(roots) == 16 * 9 + 9 * 8 and all(
        tits_form(v) == (0 if isinstance(k, Imaginary) else 1) for k, v in roots
    )
    record("root-combinatorics", ok)
    return checks, residuals


def cmd_selftest(cfg: RunConfig, flip_convention: bool) -> tuple[dict, int]:
    if flip_convention:
        rep_mod._FLIP_CONVENTION = True
    try:
        checks, residuals = _selftest_properties(cfg)
    finally:
        rep_mod._FLIP_CONVENTION = False
    failed = [c["name"] for c in checks if not c["passed"]]
    code = EXIT_OK if not failed else EXIT_PROPERTY
    results = {
        "checks": checks,
        "failed": failed,
        "summary": "all properties passed" if not failed else "failures present",
    }
    return _report("selftest", cfg.params, results, residuals, code), code


# -- argument parsing ----------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file")
    for key in _PARAM_KEYS:
        flag = "--" + key.replace("_", "-")
        sub.add_argument(flag, dest=key, help=f"{key} as an a+bi literal")
    sub.add_argument("--n-max", dest="n_max", type=int)
    sub.add_argument("--tol", type=float, help="equality tolerance")
    sub.add_argument("--format", choices=("json", "csv", "text"))
    sub.add_argument("--jobs", type=int)
    sub.add_argument("--seed", type=int)


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daha-cc1",
        description=(
            "Classify parameters and construct the finite-dimensional "
            "irreducible representations of the rank-1 four-parameter "
            "double affine Hecke algebra."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("classify", help="list admissible strata")
    _add_common(sp)
    sp.add_argument("--explain", action="store_true")

    sp = subs.add_parser("construct", help="build a quotient representation")
    _add_common(sp)
    sp.add_argument("--kind", required=True, help='e.g. "T2[++,++;n=1]"')
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--out", help="write the representation to a JSON file")

    sp = subs.add_parser("scan", help="sweep parameter points")
    _add_common(sp)
    sp.add_argument("--count", type=int, help="number of random points")
    sp.add_argument("--points-file", help="CSV of explicit points")

    sp = subs.add_parser("ds-check", help="verify a stored representation")
    _add_common(sp)
    sp.add_argument("--rep", required=True, help="representation JSON file")

    sp = subs.add_parser("spectrum", help="z-spectrum of a quotient")
    _add_common(sp)
    sp.add_argument("--kind", required=True)

    sp = subs.add_parser("selftest", help="run the property suite")
    _add_common(sp)
    sp.add_argument(
        "--debug-flip-convention",
        action="store_true",
        help=argparse.SUPPRESS,
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
    except (ValueError, OSError) as exc:
        _emit(
            _report(args.command, None, {"error": str(exc)}, None, EXIT_INPUT),
            "json",
        )
        return EXIT_INPUT
    try:
        if args.command == "classify":
            report, code = cmd_classify(cfg, args.explain)
        elif args.command == "construct":
            report, code = cmd_construct(cfg, args.kind, args.force, args.out)
        elif args.command == "scan":
            report, code = cmd_scan(cfg, args.count, args.points_file)
        elif args.command == "ds-check":
            report, code = cmd_ds_check(cfg, args.rep)
        elif args.command == "spectrum":
            report, code = cmd_spectrum(cfg, args.kind)
        else:
            report, code = cmd_selftest(cfg, args.debug_flip_convention)
    except NotOnStratumError as exc:
        _emit(
            _report(
                args.command,
                cfg.params,
                {"error": str(exc), "failed": exc.failed},
                None,
                EXIT_OFF_STRATUM,
            ),
            "json",
        )
        return EXIT_OFF_STRATUM
    except (IdealNotInvariantError, RelationResidualError, dsbridge.ProductNotIdentityError) as exc:
        _emit(
            _report(
                args.command,
                cfg.params,
                {"error": f"{type(exc).__name__}: {exc}"},
                None,
                EXIT_VERIFY,
            ),
            "json",
        )
        return EXIT_VERIFY
    except (ValueError, OSError) as exc:
        _emit(
            _report(
                args.command,
                cfg.params,
                {"error": f"{type(exc).__name__}: {exc}"},
                None,
                EXIT_INPUT,
            ),
            "json",
        )
        return EXIT_INPUT
    if args.command == "scan" and cfg.fmt == "csv":
        sys.stdout.write(_scan_csv(report))
    else:
        _emit(report, cfg.fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
