"""Command-line front door with bit-stable JSON and markdown reports.

Subcommands: catalog (model listing), verify (run every condition check on
one catalog model), random (property sweeps on randomized structures),
oracle riccati (query the radial integrator), jet (scalar residual rows for
a tilted local jet).  Reports carry a versioned schema key; floats are
printed with 17 significant digits so parsing them back is exact.  With
--deterministic the timestamp is omitted and identical configs produce
byte-identical output.

Exit codes: 0 every check row matched its expectation, 1 at least one row
did not (or the oracle hit a focal point), 2 usage or configuration error.
Negative-control rows (family B) carry "expected": false, so a B run that
fails exactly where it must still exits 0.
"""
from __future__ import annotations

import argparse
import math
import numbers
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .curvature_engine import (CurvatureContext, MissingNablaAError, codazzi_residual,
                               commutator, gauss_curvature, jacobi_closed_form,
                               jacobi_from_curvature, jacobi_operator)
from .hopf_conditions import (KER_ETA, SPAN_XI, NotHopfError,
                              VERDICT_HYPOTHESIS_FAILS, VERDICT_INDETERMINATE,
                              VERDICT_TYPE_A, check_l_A_commute, check_nabla_xi_l,
                              check_phi_l_commute, classify, decompose_A_xi,
                              theorem_pipeline)
from .lemma_lab import (JetError, consistent_jet, contradiction_certificate,
                        jet_from_mapping, jet_residuals)
from .model_catalog import (CatalogError, DEFAULT_STEP, FocalPointError, ModelSpec,
                            OracleMismatchError, ORACLE_TOL, catalog_rows,
                            instantiate, riccati_shape_evolution)
from .sampling import (random_context, random_gram, random_hopf_context,
                       random_structure)
from .tensor_core import (DEFAULT_TOL, DegenerateSeedError, StructuralError,
                          validate_acs)

SCHEMA = "hyperlab/1"

VERIFY_CHECKS = ("structure-axioms", "hopf-decomposition", "shape-phi-commute",
                 "phi-l-commute", "l-A-commute", "nabla-xi-l", "mu-vanishes",
                 "codazzi", "spectral-oracle", "jacobi-cross-check",
                 "theorem-verdict")
RANDOM_PROPERTIES = ("acs-axioms", "gauss-symmetry", "hopf-commutator",
                     "jacobi-cross-check", "phi-skew")


# ---------------------------------------------------------------- emitters

def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value in report: {x!r}")
    return f"{x:.17g}"


def to_canonical_json(value, indent: int = 0) -> str:
    """Hand-rolled JSON with %.17g floats; dict order is emission order."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return _fmt(float(value))
    if isinstance(value, str):
        import json as _json
        return _json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f'{inner}{to_canonical_json(str(k))}: {to_canonical_json(v, indent + 1)}'
                for k, v in value.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        rows = [f"{inner}{to_canonical_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _md_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return _fmt(float(v))
    return str(v)


def _md_block(value, indent: int, lines: list[str]):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list, tuple)) and len(v):
                lines.append(f"{pad}- {k}:")
                _md_block(v, indent + 1, lines)
            else:
                shown = "{}" if isinstance(v, dict) else "[]" if isinstance(v, (list, tuple)) else _md_scalar(v)
                lines.append(f"{pad}- {k}: {shown}")
    else:
        for v in value:
            if isinstance(v, (dict, list, tuple)):
                lines.append(f"{pad}-")
                _md_block(v, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_md_scalar(v)}")


def _md_table(rows: list[dict], lines: list[str]):
    cols: list[str] = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    lines.append("| " + " | ".join(cols) + " |")
    lines.append("|" + "|".join(" --- " for _ in cols) + "|")
    for row in rows:
        lines.append("| " + " | ".join(
            _md_scalar(row[k]) if k in row else "" for k in cols) + " |")


def to_markdown(report: dict) -> str:
    lines = [f"# hyperlab report: {report['command']}", ""]
    for key in ("schema", "version", "timestamp"):
        if key in report:
            lines.append(f"- {key}: {report[key]}")
    lines.append("")
    for key, value in report.items():
        if key in ("schema", "version", "timestamp", "command"):
            continue
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"## {key}")
            lines.append("")
            _md_table(value, lines)
            lines.append("")
        elif isinstance(value, (dict, list)):
            lines.append(f"## {key}")
            lines.append("")
            _md_block(value, 0, lines)
            lines.append("")
        else:
            lines.append(f"- {key}: {_md_scalar(value)}")
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines)


# ------------------------------------------------------------ config layer

def _as_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def load_config(path: str) -> dict[str, str]:
    """Flat `key = value` file; blank lines and # comments skipped."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, raw = line.partition("=")
            out[key.strip()] = raw.strip()
    return out


class Resolver:
    """Option resolution: flag, then config file, then environment/default."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key: str, kind=str, default=None, required: bool = False):
        value = getattr(self.args, key, None)
        if value is None and key in self.config:
            value = kind(self.config[key]) if kind is not bool else _as_bool(self.config[key])
        if value is None:
            value = default
        if value is None and required:
            raise ValueError(f"missing required option --{key.replace('_', '-')}")
        return value

    def flag(self, key: str) -> bool:
        if getattr(self.args, key, False):
            return True
        if key in self.config:
            return _as_bool(self.config[key])
        return False

    @property
    def tolerance(self) -> float:
        value = self.get("tolerance", float)
        if value is None:
            env = os.environ.get("HYPERLAB_TOL")
            value = float(env) if env else DEFAULT_TOL
        if value <= 0:
            raise ValueError("tolerance must be positive")
        return value

    @property
    def format(self) -> str:
        return self.get("format", str, "json")

    @property
    def deterministic(self) -> bool:
        return self.flag("deterministic")


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default=None)
    common.add_argument("--out", default=None, help="write the report to a file")
    common.add_argument("--config", default=None, help="flat key = value defaults file")
    common.add_argument("--tolerance", type=float, default=None,
                        help="check tolerance (default 1e-9, or HYPERLAB_TOL)")
    common.add_argument("--deterministic", action="store_true", default=False,
                        help="omit the timestamp for byte-identical reports")

    parser = argparse.ArgumentParser(
        prog="hyperlab",
        description="verification engine for real hypersurfaces in complex space forms")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", parents=[common], help="list the model catalog")

    ver = sub.add_parser("verify", parents=[common],
                         help="run condition checks on one catalog model")
    ver.add_argument("--ambient", choices=("CP", "CH"), default=None)
    ver.add_argument("--n", type=int, default=None, help="complex dimension, >= 2")
    ver.add_argument("--family", choices=("A0", "A1", "A2", "B"), default=None)
    ver.add_argument("--c", type=float, default=None,
                     help="holomorphic curvature (default +4 CP / -4 CH)")
    ver.add_argument("--radius", type=float, default=None)
    ver.add_argument("--k", type=int, default=None, help="core complex dimension")
    ver.add_argument("--flip-normal", dest="flip_normal", action="store_true",
                     default=False)
    ver.add_argument("--seed", type=int, default=None, help="frame seed (default 0)")
    ver.add_argument("--samples", type=int, default=None,
                     help="sampled pairs for the codazzi row (default 25)")
    ver.add_argument("--checks", default=None,
                     help="comma-separated row names, or 'all'")
    ver.add_argument("--emit-structure", dest="emit_structure", action="store_true",
                     default=False, help="embed the realized tensors in the report")

    rnd = sub.add_parser("random", parents=[common],
                         help="property sweeps over randomized structures")
    rnd.add_argument("--dim", type=int, default=None, help="odd tangent dimension >= 3")
    rnd.add_argument("--samples", type=int, default=None, help="default 1000")
    rnd.add_argument("--seed", type=int, default=None, help="default 0")
    rnd.add_argument("--property", dest="prop", default=None,
                     choices=RANDOM_PROPERTIES + ("all",))

    orc = sub.add_parser("oracle", help="numerical oracles")
    orc_sub = orc.add_subparsers(dest="oracle_command", required=True)
    ric = orc_sub.add_parser("riccati", parents=[common],
                             help="integrate the radial shape equation")
    ric.add_argument("--kappa", type=float, default=None, required=False,
                     help="normal curvature of the branch (c or c/4)")
    ric.add_argument("--r", type=float, default=None, help="target radius")
    ric.add_argument("--r0", type=float, default=None, help="anchor radius (default 0.01)")
    ric.add_argument("--lambda0", type=float, default=None,
                     help="anchor value (default: tube asymptote at r0)")
    ric.add_argument("--step", type=float, default=None,
                     help=f"integration step (default {DEFAULT_STEP:g})")

    jet = sub.add_parser("jet", parents=[common],
                         help="scalar residual rows for a tilted local jet")
    jet.add_argument("--alpha", type=float, default=None)
    jet.add_argument("--beta", type=float, default=None)
    jet.add_argument("--c", type=float, default=None)
    jet.add_argument("--kappa3", type=float, default=None)
    return parser


# ------------------------------------------------------------- assembly

def _skeleton(command: str, config: dict) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": command,
            "config": config}


def _finalize(report: dict, rows: list[dict], res: Resolver) -> int:
    rows = sorted(rows, key=lambda r: (r["check"], r.get("subspace", "")))
    report["checks"] = rows
    unexpected = sum(1 for r in rows if r["pass"] != r.get("expected", True))
    report["summary"] = {"rows": len(rows), "unexpected": unexpected,
                         "all_ok": unexpected == 0}
    if not res.deterministic:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return 0 if unexpected == 0 else 1


def _emit(report: dict, res: Resolver):
    text = (to_canonical_json(report) if res.format == "json"
            else to_markdown(report)) + "\n"
    out = res.get("out", str)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _row(report, expected: bool = True) -> dict:
    out = report.to_jsonable()
    out["expected"] = expected
    return out


# ------------------------------------------------------------- commands

def cmd_catalog(res: Resolver) -> tuple[dict, int]:
    report = _skeleton("catalog", {"format": res.format,
                                   "deterministic": res.deterministic})
    report["catalog"] = catalog_rows()
    code = _finalize(report, [], res)
    return report, code


def _model_spec(res: Resolver) -> ModelSpec:
    return ModelSpec(
        ambient=res.get("ambient", str, required=True),
        n=res.get("n", int, required=True),
        family=res.get("family", str, required=True),
        c=res.get("c", float),
        radius=res.get("radius", float),
        k=res.get("k", int),
        flip_normal=res.flag("flip_normal"),
    )


def cmd_verify(res: Resolver) -> tuple[dict, int]:
    spec = _model_spec(res)
    seed = res.get("seed", int, 0)
    samples = res.get("samples", int, 25)
    if samples <= 0:
        raise ValueError("samples must be positive")
    tol = res.tolerance
    wanted = res.get("checks", str, "all")
    if wanted != "all":
        names = tuple(w.strip() for w in wanted.split(",") if w.strip())
        unknown = sorted(set(names) - set(VERIFY_CHECKS))
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(unknown)}")
    else:
        names = VERIFY_CHECKS

    inst = instantiate(spec, seed=seed)
    ctx, acs = inst.ctx, inst.ctx.acs
    negative_control = spec.family == "B" and not inst.spectral.alpha_is_zero
    expected_false = ({("shape-phi-commute", "all"), ("phi-l-commute", "ker-eta")}
                      if negative_control else set())

    config = spec.to_jsonable()
    config.update({"seed": seed, "samples": samples, "tolerance": tol,
                   "checks": ",".join(names) if names != VERIFY_CHECKS else "all",
                   "format": res.format, "deterministic": res.deterministic})
    report = _skeleton("verify", config)
    report["spectral"] = inst.spectral.to_jsonable()

    rows: list[dict] = []

    def add(name, subspace, residual, tolerance, extra: dict | None = None):
        row = {"check": name, "subspace": subspace, "residual": float(residual),
               "tolerance": float(tolerance),
               "pass": bool(float(residual) <= float(tolerance))}
        if extra:
            row.update(extra)
        row["expected"] = (name, subspace) not in expected_false
        rows.append(row)

    if "structure-axioms" in names:
        add("structure-axioms", "all", max(validate_acs(acs).values()), tol)
    if "hopf-decomposition" in names:
        dec = decompose_A_xi(ctx, tol)
        add("hopf-decomposition", "span-xi", dec.beta, dec.tolerance,
            {"alpha": dec.alpha})
    if "shape-phi-commute" in names:
        swap = float(np.max(np.abs(ctx.shape_operator @ acs.phi
                                   - acs.phi @ ctx.shape_operator)))
        add("shape-phi-commute", "all", swap, tol)
    if "phi-l-commute" in names:
        for subspace in (KER_ETA, SPAN_XI):
            rows.append(_row(check_phi_l_commute(ctx, subspace, tol),
                             expected=("phi-l-commute", subspace) not in expected_false))
    if "l-A-commute" in names:
        for subspace in (KER_ETA, SPAN_XI):
            rows.append(_row(check_l_A_commute(ctx, subspace, tol)))
    if "jacobi-cross-check" in names:
        diff = float(np.max(np.abs(jacobi_from_curvature(ctx) - jacobi_closed_form(ctx))))
        add("jacobi-cross-check", "all", diff, tol)
    if "spectral-oracle" in names and inst.spectral.oracle_deviation is not None:
        add("spectral-oracle", "all", inst.spectral.oracle_deviation, ORACLE_TOL)

    notes: list[str] = []
    if inst.nabla_a is None:
        skipped = [n for n in ("nabla-xi-l", "mu-vanishes", "codazzi") if n in names]
        if skipped:
            notes.append(", ".join(skipped)
                         + " omitted: family B ships no derivative provider")
    else:
        if "nabla-xi-l" in names or "mu-vanishes" in names:
            for subspace in (KER_ETA, SPAN_XI):
                rep = check_nabla_xi_l(ctx, inst.nabla_a, subspace, tol)
                if "nabla-xi-l" in names:
                    rows.append(_row(rep))
                if "mu-vanishes" in names:
                    add("mu-vanishes", subspace, abs(rep.mu), tol)
        if "codazzi" in names:
            rng = np.random.default_rng(seed + 1)
            worst = 0.0
            for _ in range(samples):
                x = rng.standard_normal(ctx.dim)
                y = rng.standard_normal(ctx.dim)
                worst = max(worst, acs.norm(codazzi_residual(ctx, inst.nabla_a, x, y)))
            add("codazzi", "all", worst, tol)

    if "theorem-verdict" in names:
        verdict = theorem_pipeline(ctx, tol)
        if negative_control:
            expected_verdict = VERDICT_HYPOTHESIS_FAILS
        elif inst.spectral.alpha_is_zero:
            expected_verdict = VERDICT_INDETERMINATE
        else:
            expected_verdict = VERDICT_TYPE_A
        matches = verdict.verdict == expected_verdict
        add("theorem-verdict", "all", 0.0 if matches else 1.0, 0.5)
        block = verdict.to_jsonable()
        block["expected_verdict"] = expected_verdict
        report["theorem"] = block

    cls = classify(ctx, inst.nabla_a, tol)
    report["classification"] = {"labels": sorted(cls.labels),
                                "unknown": sorted(cls.unknown)}
    if notes:
        report["notes"] = notes
    if res.flag("emit_structure"):
        report["structure"] = ctx.to_jsonable()
    code = _finalize(report, rows, res)
    return report, code


def _sweep_acs(rng, dim, samples, collect):
    n = (dim + 1) // 2
    worst = 0.0
    for i in range(samples):
        gram = random_gram(dim, rng) if i % 2 else None
        acs = random_structure(n, rng, gram=gram)
        worst = max(worst, collect(acs))
    return worst


def _run_property(prop: str, dim: int, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed + RANDOM_PROPERTIES.index(prop))
    n = (dim + 1) // 2
    if prop == "acs-axioms":
        return _sweep_acs(rng, dim, samples,
                          lambda acs: max(validate_acs(acs).values()))
    if prop == "phi-skew":
        return _sweep_acs(rng, dim, samples,
                          lambda acs: validate_acs(acs)["skew"])
    if prop == "jacobi-cross-check":
        worst = 0.0
        for _ in range(samples):
            ctx = random_context(n, rng)
            worst = max(worst, float(np.max(np.abs(
                jacobi_from_curvature(ctx) - jacobi_closed_form(ctx)))))
        return worst
    if prop == "hopf-commutator":
        worst = 0.0
        for _ in range(samples):
            ctx = random_hopf_context(n, rng)
            ell = jacobi_operator(ctx)
            phi, a = ctx.acs.phi, ctx.shape_operator
            lhs = commutator(phi, ell)
            rhs = ctx.alpha * (phi @ a - a @ phi)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))),
                        float(np.max(np.abs(commutator(ell, a)))))
        return worst
    if prop == "gauss-symmetry":
        worst = 0.0
        for _ in range(samples):
            ctx = random_context(n, rng)
            x, y, z, w = (rng.standard_normal(dim) for _ in range(4))
            r_xyz = gauss_curvature(ctx, x, y, z)
            worst = max(worst, float(np.max(np.abs(r_xyz + gauss_curvature(ctx, y, x, z)))))
            worst = max(worst, abs(ctx.g(r_xyz, w) + ctx.g(gauss_curvature(ctx, x, y, w), z)))
            bianchi = r_xyz + gauss_curvature(ctx, y, z, x) + gauss_curvature(ctx, z, x, y)
            worst = max(worst, float(np.max(np.abs(bianchi))))
        return worst
    raise ValueError(f"unknown property {prop!r}")


def cmd_random(res: Resolver) -> tuple[dict, int]:
    dim = res.get("dim", int, 5)
    samples = res.get("samples", int, 1000)
    seed = res.get("seed", int, 0)
    prop = res.get("prop", str) or res.get("property", str, "all")
    if dim < 3 or dim % 2 == 0:
        raise ValueError("dim must be odd and >= 3")
    if samples <= 0:
        raise ValueError("samples must be positive")
    tol = res.tolerance
    props = RANDOM_PROPERTIES if prop == "all" else (prop,)
    config = {"dim": dim, "samples": samples, "seed": seed, "property": prop,
              "tolerance": tol, "format": res.format,
              "deterministic": res.deterministic}
    report = _skeleton("random", config)
    rows = []
    for name in props:
        residual = _run_property(name, dim, samples, seed)
        rows.append({"check": name, "subspace": "all", "residual": float(residual),
                     "tolerance": tol, "pass": residual <= tol, "expected": True})
    code = _finalize(report, rows, res)
    return report, code


def _default_anchor(kappa: float, r0: float) -> float:
    """Small-radius tube asymptote: 1/r - kappa r/3 - kappa^2 r^3/45."""
    return 1.0 / r0 - kappa * r0 / 3.0 - kappa * kappa * r0 ** 3 / 45.0


def cmd_oracle_riccati(res: Resolver) -> tuple[dict, int]:
    kappa = res.get("kappa", float, required=True)
    r = res.get("r", float, required=True)
    r0 = res.get("r0", float, 0.01)
    lambda0 = res.get("lambda0", float)
    if lambda0 is None:
        lambda0 = _default_anchor(kappa, r0)
    step = res.get("step", float, DEFAULT_STEP)
    config = {"kappa": kappa, "r": r, "r0": r0, "lambda0": lambda0, "step": step,
              "format": res.format, "deterministic": res.deterministic}
    report = _skeleton("oracle riccati", config)
    try:
        value = riccati_shape_evolution(kappa, r, (r0, lambda0), step=step)
    except FocalPointError as exc:
        report["oracle"] = {"error": str(exc)}
        _finalize(report, [], res)
        report["summary"]["all_ok"] = False
        return report, 1
    report["oracle"] = {"value": value}
    code = _finalize(report, [], res)
    return report, code


_JET_CONFIG_KEYS = ("gamma", "lambda", "lam", "kappa1", "kappa2",
                    "dalpha_xi", "dalpha_U", "dalpha_phiU", "dalpha_phiW2",
                    "dalpha_W3", "dbeta_xi", "dbeta_U", "dbeta_phiU",
                    "dbeta_phiW1", "w1_norm_sq", "d2beta_phiU_xi",
                    "d2alpha_phiU_U")


def cmd_jet(res: Resolver) -> tuple[dict, int]:
    alpha = res.get("alpha", float, required=True)
    beta = res.get("beta", float, required=True)
    c = res.get("c", float, required=True)
    kappa3 = res.get("kappa3", float, 0.0)
    tol = res.tolerance
    mapping_extras = {k: float(res.config[k]) for k in _JET_CONFIG_KEYS
                      if k in res.config}
    if mapping_extras:
        mapping = {"alpha": alpha, "beta": beta, "c": c, "kappa3": kappa3}
        mapping.update(mapping_extras)
        jet = jet_from_mapping(mapping)
    else:
        jet = consistent_jet(alpha, beta, c, kappa3=kappa3)
    config = {"alpha": alpha, "beta": beta, "c": c, "kappa3": kappa3,
              "tolerance": tol, "format": res.format,
              "deterministic": res.deterministic}
    report = _skeleton("jet", config)
    report["jet"] = jet.to_jsonable()
    report["certificate"] = contradiction_certificate(
        c, alpha, beta, w1_norm_sq=jet.w1_norm_sq).to_jsonable()
    rows = []
    for row in jet_residuals(jet, tol):
        out = row.to_jsonable()
        out["subspace"] = "scalar"
        out["expected"] = True
        rows.append(out)
    code = _finalize(report, rows, res)
    return report, code


# ------------------------------------------------------------- entry points

def _dispatch(args: argparse.Namespace) -> tuple[dict, int, Resolver]:
    res = Resolver(args)
    if args.command == "catalog":
        report, code = cmd_catalog(res)
    elif args.command == "verify":
        report, code = cmd_verify(res)
    elif args.command == "random":
        report, code = cmd_random(res)
    elif args.command == "oracle":
        report, code = cmd_oracle_riccati(res)
    elif args.command == "jet":
        report, code = cmd_jet(res)
    else:
        raise ValueError(f"unknown command {args.command!r}")
    return report, code, res


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        report, code, res = _dispatch(args)
    except (OracleMismatchError, FocalPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CatalogError, JetError, StructuralError, DegenerateSeedError,
            NotHopfError, MissingNablaAError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, res)
    return code


def main() -> None:
    raise SystemExit(run())
