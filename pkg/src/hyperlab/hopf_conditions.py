"""Commutation and derivative conditions on the structure Jacobi operator.

The conditions live on two distinguished subspaces: ker(eta) and span{xi}.
A point is Hopf when A xi has no ker(eta) component (beta below threshold);
on Hopf data phi l - l phi = alpha (phi A - A phi) holds identically, which
is what the verdict pipeline exploits.  The span{xi} reading of lA = Al is
the vector identity lA(xi) = Al(xi); `strict=True` additionally penalizes
any component of either side outside span{xi}.

Only pointwise data exists here, so the derivative condition
(nabla_xi l)X = mu xi is checked with a shared fitted mu per subspace and
the spread of the per-direction estimates is reported alongside; whether
mu is smooth in any neighbourhood is out of reach by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature_engine import (
    CurvatureContext,
    MissingNablaAError,
    NablaAProvider,
    commutator,
    jacobi_operator,
    nabla_l,
)
from .tensor_core import DEFAULT_TOL, build_phi_basis

KER_ETA = "ker-eta"
SPAN_XI = "span-xi"
ALL = "all"

CLASS_LABELS = ("A", "B", "C", "D")


class NotHopfError(ValueError):
    """The operation requires Hopf input (A xi proportional to xi)."""


@dataclass(frozen=True)
class HopfDecomposition:
    """A xi = alpha xi + beta U with U a g-unit vector in ker(eta)."""

    alpha: float
    beta: float
    u: np.ndarray | None
    is_hopf: bool
    tolerance: float

    def reconstruct(self, xi: np.ndarray) -> np.ndarray:
        out = self.alpha * xi
        if self.u is not None:
            out = out + self.beta * self.u
        return out


def decompose_A_xi(ctx: CurvatureContext, tol: float | None = None) -> HopfDecomposition:
    """Split A xi into its xi component and its ker(eta) remainder.

    The Hopf threshold is relative: beta <= tol * (1 + |A|_F), so scaling
    the shape operator does not flip the verdict.
    """
    tol = DEFAULT_TOL if tol is None else tol
    acs = ctx.acs
    a_xi = ctx.a_xi
    alpha = acs.g(a_xi, acs.xi)
    rem = a_xi - alpha * acs.xi
    beta = acs.norm(rem)
    threshold = tol * (1.0 + float(np.linalg.norm(ctx.shape_operator)))
    hopf = beta <= threshold
    u = None if hopf else rem / beta
    return HopfDecomposition(alpha, beta, u, hopf, threshold)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one condition check on one subspace."""

    name: str
    subspace: str
    residual: float
    tolerance: float
    passed: bool
    mu: float | None = None
    mu_spread: float | None = None

    def to_jsonable(self) -> dict:
        out = {
            "check": self.name,
            "subspace": self.subspace,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.mu is not None:
            out["mu"] = self.mu
            out["mu_spread"] = self.mu_spread
        return out


def _subspace_vectors(ctx: CurvatureContext, subspace: str) -> list[np.ndarray]:
    """Deterministic g-orthonormal test vectors spanning the subspace.

    For ker(eta) the basis is phi-adapted and, off Hopf, seeded with the
    decomposition's U so that residual magnitudes hit the adapted-frame
    values exactly (U and phi U are both in the basis).
    """
    if subspace == SPAN_XI:
        return [ctx.acs.xi]
    if subspace not in (KER_ETA, ALL):
        raise ValueError(f"unknown subspace {subspace!r}")
    dec = decompose_A_xi(ctx)
    seeds = [dec.u] if dec.u is not None else None
    basis = build_phi_basis(ctx.acs, seeds=seeds)
    vecs = basis.ker_eta()
    if subspace == ALL:
        vecs = vecs + [ctx.acs.xi]
    return vecs


def check_phi_l_commute(ctx: CurvatureContext, subspace: str = KER_ETA,
                        tol: float | None = None) -> ConditionReport:
    """Residual of phi l = l phi: max |(phi l - l phi)X| over the subspace basis."""
    tol = DEFAULT_TOL if tol is None else tol
    l = jacobi_operator(ctx)
    comm = commutator(ctx.acs.phi, l)
    residual = max(ctx.acs.norm(comm @ v) for v in _subspace_vectors(ctx, subspace))
    return ConditionReport("phi-l-commute", subspace, residual, tol, residual <= tol)


def check_l_A_commute(ctx: CurvatureContext, subspace: str = KER_ETA,
                      tol: float | None = None, strict: bool = False) -> ConditionReport:
    """Residual of lA = Al on the subspace.

    On span{xi} this is |lA(xi) - Al(xi)|; `strict` adds the components of
    lA(xi) and Al(xi) outside span{xi} to the residual (the stronger,
    span-invariant reading).
    """
    tol = DEFAULT_TOL if tol is None else tol
    acs = ctx.acs
    l = jacobi_operator(ctx)
    comm = l @ ctx.shape_operator - ctx.shape_operator @ l
    vectors = _subspace_vectors(ctx, subspace)
    residual = max(acs.norm(comm @ v) for v in vectors)
    if strict and subspace == SPAN_XI:
        for m in (l @ ctx.shape_operator, ctx.shape_operator @ l):
            img = m @ acs.xi
            off = img - acs.eta_of(img) * acs.xi
            residual = max(residual, acs.norm(off))
    return ConditionReport("l-A-commute", subspace, residual, tol, residual <= tol)


def check_nabla_xi_l(ctx: CurvatureContext, nabla_a: NablaAProvider,
                     subspace: str = KER_ETA,
                     tol: float | None = None) -> ConditionReport:
    """Residual of (nabla_xi l)X = mu xi with one shared mu over the subspace.

    mu is fitted as the mean of mu_X = g((nabla_xi l)X, xi) across the
    basis; the per-direction spread (max - min) is reported so a direction-
    dependent mu is visible even when the residual is small.
    """
    if nabla_a is None:
        raise MissingNablaAError("check_nabla_xi_l needs a nabla-A provider")
    tol = DEFAULT_TOL if tol is None else tol
    acs = ctx.acs
    m = nabla_l(ctx, nabla_a, acs.xi)
    vectors = _subspace_vectors(ctx, subspace)
    mus = [acs.g(m @ v, acs.xi) for v in vectors]
    residual = max(acs.norm(m @ v - mu_v * acs.xi) for v, mu_v in zip(vectors, mus))
    mu = float(np.mean(mus))
    spread = float(max(mus) - min(mus))
    return ConditionReport("nabla-xi-l", subspace, residual, tol, residual <= tol,
                           mu=mu, mu_spread=spread)


@dataclass(frozen=True)
class Classification:
    """Condition-class membership: labels that hold, labels that are undecidable."""

    labels: frozenset[str]
    unknown: frozenset[str]
    reports: dict[str, ConditionReport]


def classify(ctx: CurvatureContext, nabla_a: NablaAProvider | None = None,
             tol: float | None = None) -> Classification:
    """Assign the commutation/derivative condition classes.

    A: phi l = l phi and lA = Al on ker(eta).
    B: phi l = l phi and lA = Al on span{xi}.
    C: phi l = l phi and (nabla_xi l) = mu xi on ker(eta).
    D: phi l = l phi and (nabla_xi l) = mu xi on span{xi}.

    C and D need a nabla-A provider; without one they are "unknown" unless
    the shared phi-commutation condition already fails, which settles them.
    Loosening the tolerance never removes a label.
    """
    reports: dict[str, ConditionReport] = {}
    r_phi = check_phi_l_commute(ctx, KER_ETA, tol)
    reports["phi-l/ker-eta"] = r_phi
    r_a = check_l_A_commute(ctx, KER_ETA, tol)
    reports["l-A/ker-eta"] = r_a
    r_b = check_l_A_commute(ctx, SPAN_XI, tol)
    reports["l-A/span-xi"] = r_b

    labels = set()
    unknown = set()
    if r_phi.passed and r_a.passed:
        labels.add("A")
    if r_phi.passed and r_b.passed:
        labels.add("B")
    if not r_phi.passed:
        pass  # C and D share the failed hypothesis: settled, not unknown
    elif nabla_a is None:
        unknown.update({"C", "D"})
    else:
        r_c = check_nabla_xi_l(ctx, nabla_a, KER_ETA, tol)
        reports["nabla-xi-l/ker-eta"] = r_c
        r_d = check_nabla_xi_l(ctx, nabla_a, SPAN_XI, tol)
        reports["nabla-xi-l/span-xi"] = r_d
        if r_c.passed:
            labels.add("C")
        if r_d.passed:
            labels.add("D")
    return Classification(frozenset(labels), frozenset(unknown), reports)


VERDICT_TYPE_A = "type-A-compatible"
VERDICT_HYPOTHESIS_FAILS = "phi-l-hypothesis-fails"
VERDICT_INDETERMINATE = "indeterminate-eta-A-xi-zero"


@dataclass(frozen=True)
class TheoremVerdict:
    """Outcome of the pointwise forward pipeline on Hopf data."""

    hopf: bool
    alpha: float
    beta_residual: float
    phi_l_commutator_norm: float
    phi_l_commutator_fro: float
    commutator_a_phi_norm: float
    commutator_a_phi_fro: float
    verdict: str

    def to_jsonable(self) -> dict:
        return {
            "hopf": self.hopf,
            "alpha": self.alpha,
            "beta_residual": self.beta_residual,
            "phi_l_commutator_norm": self.phi_l_commutator_norm,
            "commutator_A_phi_norm": self.commutator_a_phi_norm,
            "verdict": self.verdict,
        }


def theorem_pipeline(ctx: CurvatureContext, tol: float | None = None) -> TheoremVerdict:
    """Pointwise forward direction: Hopf + phi l = l phi + alpha != 0 force A phi = phi A.

    Non-Hopf input raises NotHopfError (the Hopf property is an input
    requirement here, not a conclusion).  When alpha vanishes the verdict
    is indeterminate: the argument divides by eta(A xi), and the catalog's
    zero-alpha radius is exactly the case it cannot see.  Norms reported
    are spectral, with Frobenius (which dominates) used for pass/fail.
    """
    tol = DEFAULT_TOL if tol is None else tol
    dec = decompose_A_xi(ctx, tol)
    if not dec.is_hopf:
        raise NotHopfError(f"A xi has ker(eta) component beta = {dec.beta:.3e}")
    l = jacobi_operator(ctx)
    phi = ctx.acs.phi
    a = ctx.shape_operator
    c_phi_l = commutator(phi, l)
    c_a_phi = a @ phi - phi @ a
    scale = 1.0 + float(np.linalg.norm(a)) ** 2 + abs(ctx.c)
    phi_l_fro = float(np.linalg.norm(c_phi_l))
    a_phi_fro = float(np.linalg.norm(c_a_phi))
    if phi_l_fro > tol * scale:
        verdict = VERDICT_HYPOTHESIS_FAILS
    elif abs(dec.alpha) <= tol * (1.0 + float(np.linalg.norm(a))):
        verdict = VERDICT_INDETERMINATE
    else:
        verdict = VERDICT_TYPE_A
    return TheoremVerdict(
        hopf=True,
        alpha=dec.alpha,
        beta_residual=dec.beta,
        phi_l_commutator_norm=float(np.linalg.norm(c_phi_l, 2)),
        phi_l_commutator_fro=phi_l_fro,
        commutator_a_phi_norm=float(np.linalg.norm(c_a_phi, 2)),
        commutator_a_phi_fro=a_phi_fro,
        verdict=verdict,
    )
