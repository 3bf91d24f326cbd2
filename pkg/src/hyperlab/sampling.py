"""Seeded random structures, shape operators and contexts for property sweeps.

Everything here is driven by an explicit numpy Generator so that test
sweeps and the `random` CLI subcommand are reproducible bit for bit.
"""
from __future__ import annotations

import numpy as np

from .curvature_engine import CurvatureContext
from .tensor_core import AlmostContactStructure, build_phi_basis, random_structure


def random_gram(dim: int, rng: np.random.Generator, spread: float = 0.3) -> np.ndarray:
    """A well-conditioned symmetric positive-definite Gram matrix."""
    s = rng.standard_normal((dim, dim))
    s = (s + s.T) / 2.0
    s = s / max(float(np.linalg.norm(s, 2)), 1e-12)
    return np.eye(dim) + spread * s


def random_nonzero_c(rng: np.random.Generator, lo: float = 0.5, hi: float = 8.0) -> float:
    c = float(rng.uniform(lo, hi))
    return c if rng.integers(2) == 0 else -c


def random_unit_ker_eta(acs: AlmostContactStructure, rng: np.random.Generator) -> np.ndarray:
    """A g-unit vector in ker(eta) (the g-orthogonal complement of xi)."""
    while True:
        v = rng.standard_normal(acs.dim)
        v = v - acs.g(v, acs.xi) * acs.xi
        nrm = acs.norm(v)
        if nrm > 1e-6:
            return v / nrm


def random_symmetric_shape(acs: AlmostContactStructure, rng: np.random.Generator,
                           scale: float = 1.0) -> np.ndarray:
    """A random g-symmetric endomorphism (no Hopf constraint)."""
    basis = build_phi_basis(acs, rng=rng)
    f = basis.matrix
    s = rng.standard_normal((acs.dim, acs.dim)) * scale
    s = (s + s.T) / 2.0
    return f @ s @ (f.T @ acs.space.gram)


def random_hopf_shape(acs: AlmostContactStructure, rng: np.random.Generator,
                      alpha: float | None = None, scale: float = 1.0) -> np.ndarray:
    """A random g-symmetric endomorphism with A xi = alpha xi."""
    basis = build_phi_basis(acs, rng=rng)
    f = basis.matrix
    k = acs.dim - 1
    s = np.zeros((acs.dim, acs.dim))
    blk = rng.standard_normal((k, k)) * scale
    s[:k, :k] = (blk + blk.T) / 2.0
    s[k, k] = float(rng.uniform(-2.0, 2.0)) if alpha is None else alpha
    return f @ s @ (f.T @ acs.space.gram)


def random_context(n: int, rng: np.random.Generator, c: float | None = None,
                   gram: np.ndarray | None = None) -> CurvatureContext:
    acs = random_structure(n, rng, gram=gram)
    a = random_symmetric_shape(acs, rng)
    return CurvatureContext(acs, a, random_nonzero_c(rng) if c is None else c)


def random_hopf_context(n: int, rng: np.random.Generator, c: float | None = None,
                        alpha: float | None = None,
                        gram: np.ndarray | None = None) -> CurvatureContext:
    acs = random_structure(n, rng, gram=gram)
    a = random_hopf_shape(acs, rng, alpha=alpha)
    return CurvatureContext(acs, a, random_nonzero_c(rng) if c is None else c)
