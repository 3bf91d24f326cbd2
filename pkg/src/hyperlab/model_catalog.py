"""Catalog of model hypersurfaces and the radial Riccati oracle.

Families, for ambient CP (c > 0) and CH (c < 0), with s = sqrt(|c|)/2:

  A0  horosphere (CH only):       alpha = 2s,            s x (2n-2)
  A1  geodesic sphere (CP/CH)     alpha = 2s cot(2sr),   s cot(sr) x (2n-2)
      or tube over a complex      alpha = 2s coth(2sr),  s coth(sr) / s tanh(sr)
      hyperplane (CH, k = n-1)
  A2  tube over a totally geo-    alpha as A1,           s cot(sr) x 2(n-1-k),
      desic complex k-subspace                           -s tan(sr) x 2k
                                                         (coth/tanh in CH)
  B   tube over a real form /     CP: alpha = 2s cot(2sr),  s cot(sr -+ pi/4),
      complex quadric             CH: alpha = 2s tanh(2sr), s coth / s tanh,
      (negative control)          phi-swapped pairs of multiplicity n-1

Every spectral value is validated at construction against an independent
fixed-step RK4 integration of the radial Riccati equation

    lambda' = -(lambda^2 + kappa),

with kappa = c on the xi line and kappa = c/4 on its complement.  In CH the
alpha branch never vanishes; in CP it vanishes exactly at s r = pi/4, which
is allowed but flagged.  Flipping the unit normal negates the whole table;
the flip is applied after the oracle check, since the flipped branch solves
the radial equation only under reversed traversal.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .curvature_engine import CurvatureContext, NablaAProvider
from .tensor_core import build_phi_basis, canonical_structure, PhiBasis

DEFAULT_STEP = 5e-5
ORACLE_TOL = 1e-6
BLOWUP_LIMIT = 1e6

FAMILIES = ("A0", "A1", "A2", "B")
AMBIENTS = ("CP", "CH")


class CatalogError(ValueError):
    """Invalid model parameters (ambient/family/radius/k constraints)."""


class FocalPointError(RuntimeError):
    """The Riccati flow blew up inside the requested interval."""


class OracleMismatchError(RuntimeError):
    """A spectral closed form disagrees with the Riccati integration."""


def riccati_shape_evolution(kappa: float, r: float,
                            lambda0: tuple[float, float],
                            step: float = DEFAULT_STEP) -> float:
    """Integrate lambda' = -(lambda^2 + kappa) from (r0, value) to r.

    Fixed-step classical RK4; this is the independent oracle the catalog
    closed forms are checked against, so it deliberately shares no code
    with them.  |lambda| crossing 1e6 (a focal point) raises.
    """
    r0, lam = float(lambda0[0]), float(lambda0[1])
    kappa = float(kappa)
    if step <= 0:
        raise ValueError("step must be positive")
    if abs(lam) > BLOWUP_LIMIT:
        raise FocalPointError("initial value beyond the blow-up guard")
    span = float(r) - r0
    if span == 0.0:
        return lam
    nsteps = max(1, math.ceil(abs(span) / step))
    h = span / nsteps
    for _ in range(nsteps):
        k1 = -(lam * lam + kappa)
        y = lam + 0.5 * h * k1
        k2 = -(y * y + kappa)
        y = lam + 0.5 * h * k2
        k3 = -(y * y + kappa)
        y = lam + h * k3
        k4 = -(y * y + kappa)
        lam += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not math.isfinite(lam) or abs(lam) > BLOWUP_LIMIT:
            raise FocalPointError(
                f"shape curvature passed a focal point near r = {r0 + (_ + 1) * h:.6f}")
    return lam


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


@dataclass(frozen=True)
class ModelSpec:
    """Parameters selecting one catalog model.

    k is the complex dimension of the tube core for A2 (1 <= k <= n-2).
    For CH A1 it doubles as the variant selector: 0 (default) is the
    geodesic sphere, n-1 the tube over a complex hyperplane; no separate
    key exists in the config schema.  A0 takes no radius.
    """

    ambient: str
    n: int
    family: str
    c: float | None = None
    radius: float | None = None
    k: int | None = None
    flip_normal: bool = False

    def __post_init__(self):
        if self.ambient not in AMBIENTS:
            raise CatalogError(f"ambient must be one of {AMBIENTS}, got {self.ambient!r}")
        if self.family not in FAMILIES:
            raise CatalogError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise CatalogError(f"n must be an integer >= 2, got {self.n!r}")
        c = self.c
        if c is None:
            c = 4.0 if self.ambient == "CP" else -4.0
        c = float(c)
        if self.ambient == "CP" and c <= 0:
            raise CatalogError("CP requires c > 0")
        if self.ambient == "CH" and c >= 0:
            raise CatalogError("CH requires c < 0")
        object.__setattr__(self, "c", c)
        self._validate_radius()
        self._validate_k()

    def _validate_radius(self):
        if self.family == "A0":
            if self.ambient != "CH":
                raise CatalogError("family A0 (horosphere) exists only in CH")
            if self.radius is not None:
                raise CatalogError("family A0 takes no radius")
            return
        if self.radius is None:
            raise CatalogError(f"family {self.family} requires a radius")
        r = float(self.radius)
        if r <= 0:
            raise CatalogError("radius must be positive")
        object.__setattr__(self, "radius", r)
        if self.ambient == "CP":
            bound = (math.pi / 4.0 if self.family == "B" else math.pi / 2.0) / self.scale
            if r >= bound:
                raise CatalogError(
                    f"CP family {self.family} requires 0 < r < {bound:.6f} for c = {self.c}")

    def _validate_k(self):
        if self.family == "A2":
            if self.k is None:
                raise CatalogError("family A2 requires k")
            if not isinstance(self.k, int) or not 1 <= self.k <= self.n - 2:
                raise CatalogError(f"family A2 requires 1 <= k <= n-2, got k = {self.k!r}")
            return
        if self.family == "A1" and self.ambient == "CH":
            if self.k not in (None, 0, self.n - 1):
                raise CatalogError(
                    "CH A1 takes k = 0 (geodesic sphere) or k = n-1 (hyperplane tube)")
            return
        if self.k is not None:
            raise CatalogError(f"family {self.family} takes no k")

    @property
    def scale(self) -> float:
        """s = sqrt(|c|)/2; radius formulas are stated for |c| = 4 and rescaled by s."""
        return math.sqrt(abs(self.c)) / 2.0

    @property
    def dim(self) -> int:
        return 2 * self.n - 1

    def to_jsonable(self) -> dict:
        out = {"ambient": self.ambient, "n": self.n, "family": self.family, "c": self.c}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.k is not None:
            out["k"] = self.k
        if self.flip_normal:
            out["flip_normal"] = True
        return out


@dataclass(frozen=True)
class SpectralEntry:
    value: float
    multiplicity: int
    phi_invariant: bool


@dataclass(frozen=True)
class SpectralTable:
    """Principal curvatures of a model: alpha on xi plus the ker(eta) entries."""

    alpha: float
    entries: tuple[SpectralEntry, ...]
    alpha_is_zero: bool
    oracle_deviation: float | None
    flipped: bool = False

    def multiplicity_total(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def eigenvalues(self) -> list[float]:
        return [e.value for e in self.entries]

    def to_jsonable(self) -> dict:
        out = {
            "alpha": self.alpha,
            "alpha_is_zero": self.alpha_is_zero,
            "entries": [
                {"value": e.value, "multiplicity": e.multiplicity,
                 "phi_invariant": e.phi_invariant}
                for e in self.entries
            ],
        }
        if self.oracle_deviation is not None:
            out["oracle_deviation"] = self.oracle_deviation
        if self.flipped:
            out["flipped"] = True
        return out


def _branches(spec: ModelSpec):
    """(alpha_fn, [(lambda_fn, multiplicity, phi_invariant), ...]) closed forms."""
    s = spec.scale
    n, k = spec.n, spec.k
    fam, amb = spec.family, spec.ambient
    if amb == "CP":
        alpha_fn = lambda r: 2.0 * s * _cot(2.0 * s * r)
        if fam == "A1":
            lams = [(lambda r: s * _cot(s * r), 2 * n - 2, True)]
        elif fam == "A2":
            lams = [
                (lambda r: s * _cot(s * r), 2 * (n - 1 - k), True),
                (lambda r: -s * math.tan(s * r), 2 * k, True),
            ]
        else:  # B
            lams = [
                (lambda r: s * _cot(s * r - math.pi / 4.0), n - 1, False),
                (lambda r: s * _cot(s * r + math.pi / 4.0), n - 1, False),
            ]
        return alpha_fn, lams
    # CH
    if fam == "A0":
        return (lambda r: 2.0 * s), [(lambda r: s, 2 * n - 2, True)]
    if fam == "B":
        alpha_fn = lambda r: 2.0 * s * math.tanh(2.0 * s * r)
        lams = [
            (lambda r: s / math.tanh(s * r), n - 1, False),
            (lambda r: s * math.tanh(s * r), n - 1, False),
        ]
        return alpha_fn, lams
    alpha_fn = lambda r: 2.0 * s / math.tanh(2.0 * s * r)
    k_eff = k if fam == "A2" else (spec.k or 0)
    lams = []
    if n - 1 - k_eff > 0:
        lams.append((lambda r: s / math.tanh(s * r), 2 * (n - 1 - k_eff), True))
    if k_eff > 0:
        lams.append((lambda r: s * math.tanh(s * r), 2 * k_eff, True))
    return alpha_fn, lams


def _oracle_deviation(spec: ModelSpec, alpha_fn, lams, step: float) -> float:
    """Worst disagreement between the closed forms and the Riccati flow.

    Tube branches are anchored at the closed-form value just off the core
    (s r0 = 0.01) and integrated out to the model radius; the radius-free
    horosphere is checked as a fixed point over a unit interval.
    """
    s = spec.scale
    h = step / max(s, 1.0)
    r = spec.radius if spec.radius is not None else 1.0 / s
    r0 = 0.01 / s if spec.radius is not None else 0.0
    worst = 0.0
    for fn, kappa in [(alpha_fn, spec.c)] + [(lf, spec.c / 4.0) for lf, _, _ in lams]:
        anchor = fn(r0) if spec.radius is not None else fn(0.0)
        got = riccati_shape_evolution(kappa, r, (r0, anchor), step=h)
        worst = max(worst, abs(got - fn(r)))
    return worst


def principal_curvatures(spec: ModelSpec, oracle_check: bool = True,
                         step: float = DEFAULT_STEP) -> SpectralTable:
    """Evaluate the model's spectral table, oracle-checked at construction."""
    alpha_fn, lams = _branches(spec)
    deviation = None
    if oracle_check:
        deviation = _oracle_deviation(spec, alpha_fn, lams, step)
        if deviation > ORACLE_TOL:
            raise OracleMismatchError(
                f"spectral table disagrees with the Riccati oracle by {deviation:.3e}")
    r = spec.radius if spec.radius is not None else 0.0
    alpha = alpha_fn(r)
    entries = tuple(SpectralEntry(fn(r), mult, inv) for fn, mult, inv in lams)
    if sum(e.multiplicity for e in entries) != 2 * spec.n - 2:
        raise OracleMismatchError("spectral multiplicities do not fill ker(eta)")
    for e in entries:
        if e.phi_invariant and e.multiplicity % 2 != 0:
            raise OracleMismatchError("phi-invariant eigenspaces need even multiplicity")
    alpha_zero = abs(alpha) <= 1e-12 * (1.0 + 2.0 * spec.scale)
    if spec.flip_normal:
        alpha = -alpha
        entries = tuple(SpectralEntry(-e.value, e.multiplicity, e.phi_invariant)
                        for e in entries)
    return SpectralTable(alpha, entries, alpha_zero, deviation, flipped=spec.flip_normal)


@dataclass(frozen=True)
class ModelInstance:
    """Realized tangent-space data for one model at one point."""

    spec: ModelSpec
    ctx: CurvatureContext
    spectral: SpectralTable
    nabla_a: NablaAProvider | None
    basis: PhiBasis

    @property
    def alpha(self) -> float:
        return self.spectral.alpha


def instantiate(spec: ModelSpec, seed: int = 0) -> ModelInstance:
    """Realize the model on a concrete tangent space.

    The shape operator is assembled diagonally on a phi-basis drawn from the
    seeded generator, so instances are reproducible yet not frame-aligned.
    For the A families the eigenvalues are phi-invariant (A phi = phi A);
    family B gets the phi-swapped layout, so A phi != phi A, and ships
    without a nabla-A provider (its derivative data is not type A).
    """
    table = principal_curvatures(spec)
    acs = canonical_structure(spec.n)
    rng = np.random.default_rng(seed)
    basis = build_phi_basis(acs, rng=rng)
    f = basis.matrix
    if spec.family == "B":
        first, second = table.entries
        v_vals = [first.value] * first.multiplicity
        w_vals = [second.value] * second.multiplicity
    else:
        v_vals = []
        for e in table.entries:
            v_vals.extend([e.value] * (e.multiplicity // 2))
        w_vals = list(v_vals)
    diag = np.array(v_vals + w_vals + [table.alpha])
    a = (f * diag) @ f.T
    ctx = CurvatureContext(acs, a, spec.c)
    nabla = None if spec.family == "B" else type_a_nabla_a(ctx, warn_non_type_a=False)
    return ModelInstance(spec, ctx, table, nabla, basis)


def type_a_nabla_a(ctx: CurvatureContext, warn_non_type_a: bool = True) -> NablaAProvider:
    """The nabla-A provider of a type-A model.

    (nabla_X A)Y = -(c/4)[eta(Y) phiX + g(phiX, Y) xi].  This makes the
    Codazzi residual vanish identically and gives nabla_xi l = 0.  Attaching
    it to a context whose shape operator is not type A (non-Hopf, or
    A phi != phi A) emits a warning: the provider stays Codazzi-consistent
    but no longer describes that context's geometry.
    """
    acs = ctx.acs
    quarter = ctx.c / 4.0
    gram = acs.space.gram
    if warn_non_type_a:
        beta = acs.norm(ctx.a_xi - ctx.alpha * acs.xi)
        swap = float(np.max(np.abs(ctx.shape_operator @ acs.phi
                                   - acs.phi @ ctx.shape_operator)))
        tol = 1e-9 * (1.0 + float(np.linalg.norm(ctx.shape_operator)))
        if beta > tol or swap > tol:
            warnings.warn("shape operator is not type A; the provider is "
                          "Codazzi-consistent but not this context's geometry",
                          stacklevel=2)

    def fn(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        px = acs.phi @ x
        return -quarter * (acs.eta_of(y) * px + acs.g(px, y) * acs.xi)

    def endo(w: np.ndarray) -> np.ndarray:
        pw = acs.phi @ w
        return -quarter * (np.outer(pw, acs.eta) + np.outer(acs.xi, gram @ pw))

    return NablaAProvider(fn, acs.dim, endomorphism_fn=endo)


def catalog_rows() -> list[dict]:
    """Static catalog documentation rows for the listing subcommand."""
    return [
        {"ambient": "CH", "family": "A0", "core": "horosphere",
         "radius_domain": "none (radius-free)",
         "alpha": "2s", "eigenvalues": "s x (2n-2)"},
        {"ambient": "CP", "family": "A1", "core": "point / complex hyperplane",
         "radius_domain": "0 < s r < pi/2",
         "alpha": "2s cot(2 s r)", "eigenvalues": "s cot(s r) x (2n-2)"},
        {"ambient": "CH", "family": "A1", "core": "point (k=0) / complex hyperplane (k=n-1)",
         "radius_domain": "r > 0",
         "alpha": "2s coth(2 s r)",
         "eigenvalues": "s coth(s r) x (2n-2) | s tanh(s r) x (2n-2)"},
        {"ambient": "CP", "family": "A2", "core": "totally geodesic complex k-subspace",
         "radius_domain": "0 < s r < pi/2, 1 <= k <= n-2",
         "alpha": "2s cot(2 s r)",
         "eigenvalues": "s cot(s r) x 2(n-1-k), -s tan(s r) x 2k"},
        {"ambient": "CH", "family": "A2", "core": "totally geodesic complex k-subspace",
         "radius_domain": "r > 0, 1 <= k <= n-2",
         "alpha": "2s coth(2 s r)",
         "eigenvalues": "s coth(s r) x 2(n-1-k), s tanh(s r) x 2k"},
        {"ambient": "CP", "family": "B", "core": "complex quadric (negative control)",
         "radius_domain": "0 < s r < pi/4",
         "alpha": "2s cot(2 s r)",
         "eigenvalues": "s cot(s r - pi/4), s cot(s r + pi/4), phi-swapped x (n-1) each"},
        {"ambient": "CH", "family": "B", "core": "real form (negative control)",
         "radius_domain": "r > 0",
         "alpha": "2s tanh(2 s r)",
         "eigenvalues": "s coth(s r), s tanh(s r), phi-swapped x (n-1) each"},
    ]
