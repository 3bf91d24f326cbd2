"""Frame-level linear algebra for almost contact metric structures.

Every tensor in this package is stored as components in a fixed working
frame on a single (2n-1)-dimensional tangent space.  The metric defaults
to the identity Gram matrix (orthonormal working frame); a general
symmetric positive-definite Gram matrix is supported for stress testing.

Sign conventions: the structure vector xi is -J N for the chosen unit
normal N, eta = g(., xi), and the canonical phi maps V_i -> phiV_i and
phiV_i -> -V_i on each holomorphic plane while killing xi.  Reversing the
orientation of phi on ker(eta) flips the sign of every formula that is
odd in phi; the catalog and the checks all assume this fixed orientation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


class StructuralError(ValueError):
    """Malformed input (wrong shapes, bad Gram matrix) as opposed to a failed identity."""


class DegenerateSeedError(ValueError):
    """A basis seed projected to numerical zero; retry with a fresh seed."""


def _read_only(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out


def _check_vector(v, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (dim,):
        raise StructuralError(f"{name} must have shape ({dim},), got {arr.shape}")
    return arr


def _check_matrix(m, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (dim, dim):
        raise StructuralError(f"{name} must have shape ({dim}, {dim}), got {arr.shape}")
    return arr


@dataclass(frozen=True)
class TangentSpace:
    """A (2n-1)-dimensional real tangent space with a fixed Gram matrix."""

    dim: int
    gram: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 3 or self.dim % 2 == 0:
            raise StructuralError(f"dimension must be odd and >= 3, got {self.dim}")
        gram = np.eye(self.dim) if self.gram is None else np.asarray(self.gram, dtype=float)
        gram = _check_matrix(gram, self.dim, "gram")
        if np.max(np.abs(gram - gram.T)) > 1e-12:
            raise StructuralError("gram matrix must be symmetric")
        if np.min(np.linalg.eigvalsh(gram)) <= 0:
            raise StructuralError("gram matrix must be positive definite")
        object.__setattr__(self, "gram", _read_only(gram))

    @property
    def n(self) -> int:
        return (self.dim + 1) // 2

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(x @ self.gram @ y)

    def norm(self, x: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))


@dataclass(frozen=True)
class AlmostContactStructure:
    """Components (phi, xi, eta, g) of an almost contact metric structure.

    The constructor validates shapes only.  Whether the defining identities
    actually hold is the job of `validate_acs`, so that perturbed or
    deliberately broken structures can still be constructed and measured.
    """

    space: TangentSpace
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        d = self.space.dim
        object.__setattr__(self, "phi", _read_only(_check_matrix(self.phi, d, "phi")))
        object.__setattr__(self, "xi", _read_only(_check_vector(self.xi, d, "xi")))
        object.__setattr__(self, "eta", _read_only(_check_vector(self.eta, d, "eta")))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def n(self) -> int:
        return self.space.n

    def g(self, x: np.ndarray, y: np.ndarray) -> float:
        return self.space.inner(x, y)

    def norm(self, x: np.ndarray) -> float:
        return self.space.norm(x)

    def eta_of(self, x: np.ndarray) -> float:
        return float(self.eta @ x)

    def to_jsonable(self) -> dict:
        return {
            "dim": self.dim,
            "gram": [float(v) for v in self.space.gram.ravel()],
            "phi": [float(v) for v in self.phi.ravel()],
            "xi": [float(v) for v in self.xi],
            "eta": [float(v) for v in self.eta],
        }


def canonical_structure(n: int) -> AlmostContactStructure:
    """The standard structure in the orthonormal working frame.

    Basis order is V_1..V_{n-1}, phiV_1..phiV_{n-1}, xi; phi is the block
    rotation sending V_i to phiV_i and phiV_i to -V_i, and xi spans its
    kernel.
    """
    if n < 2:
        raise StructuralError(f"n must be >= 2, got {n}")
    dim = 2 * n - 1
    k = n - 1
    phi = np.zeros((dim, dim))
    phi[k:2 * k, :k] = np.eye(k)
    phi[:k, k:2 * k] = -np.eye(k)
    xi = np.zeros(dim)
    xi[-1] = 1.0
    return AlmostContactStructure(TangentSpace(dim), phi, xi, xi.copy())


def structure_from_frame(space: TangentSpace, frame: np.ndarray) -> AlmostContactStructure:
    """Build the structure whose adapted frame is the given g-orthonormal columns.

    Column order must be V_1..V_{n-1}, phiV_1..phiV_{n-1}, xi.  The result
    satisfies the structure identities exactly to the extent that the frame
    is exactly g-orthonormal.
    """
    frame = _check_matrix(frame, space.dim, "frame")
    k = space.n - 1
    gram = space.gram
    ortho = frame.T @ gram @ frame - np.eye(space.dim)
    if np.max(np.abs(ortho)) > 1e-6:
        raise StructuralError("frame columns are not g-orthonormal")
    v, w, xi = frame[:, :k], frame[:, k:2 * k], frame[:, -1]
    phi = w @ (gram @ v).T - v @ (gram @ w).T
    return AlmostContactStructure(space, phi, xi, gram @ xi)


def random_structure(n: int, rng: np.random.Generator,
                     gram: np.ndarray | None = None) -> AlmostContactStructure:
    """A valid structure in a uniformly random g-orthonormal frame."""
    dim = 2 * n - 1
    space = TangentSpace(dim, gram)
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    if gram is not None:
        chol = np.linalg.cholesky(space.gram)
        q = np.linalg.solve(chol.T, q)
    return structure_from_frame(space, q)


def validate_acs(acs: AlmostContactStructure) -> dict[str, float]:
    """Max-abs residuals of the defining identities, keyed by identity name.

    A structurally malformed input raises; a structure that merely fails
    the identities comes back with nonzero residuals.  The residual map is
    the zero map exactly when every identity holds exactly.
    """
    gram = acs.space.gram
    phi, xi, eta = acs.phi, acs.xi, acs.eta
    eye = np.eye(acs.dim)

    def maxabs(a) -> float:
        return float(np.max(np.abs(a))) if np.size(a) else 0.0

    return {
        "phi-square": maxabs(phi @ phi + eye - np.outer(xi, eta)),
        "eta-phi": maxabs(eta @ phi),
        "phi-xi": maxabs(phi @ xi),
        "eta-xi": abs(float(eta @ xi) - 1.0),
        "metric-compat": maxabs(phi.T @ gram @ phi - (gram - np.outer(eta, eta))),
        "skew": maxabs(gram @ phi + phi.T @ gram),
        "eta-from-metric": maxabs(eta - gram @ xi),
    }


@dataclass(frozen=True)
class PhiBasis:
    """g-orthonormal frame adapted to phi: V_1..V_{n-1}, phiV_1..phiV_{n-1}, xi.

    Entry n-1+i is phi applied to entry i, exactly as constructed (no
    re-orthonormalization of the phi images).
    """

    matrix: np.ndarray
    n: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", _read_only(self.matrix))

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.matrix[:, j] for j in range(self.matrix.shape[1])]

    @property
    def xi(self) -> np.ndarray:
        return self.matrix[:, -1]

    def v(self, i: int) -> np.ndarray:
        return self.matrix[:, i]

    def phi_v(self, i: int) -> np.ndarray:
        return self.matrix[:, self.n - 1 + i]

    def ker_eta(self) -> list[np.ndarray]:
        return [self.matrix[:, j] for j in range(2 * (self.n - 1))]

    def gram_residual(self, space: TangentSpace) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.T @ space.gram @ m - np.eye(space.dim))))


def build_phi_basis(acs: AlmostContactStructure,
                    seeds: list[np.ndarray] | None = None,
                    rng: np.random.Generator | None = None,
                    tol: float = 1e-8) -> PhiBasis:
    """Complete xi to a phi-adapted g-orthonormal basis.

    Each new V_i comes from the next seed, projected g-orthogonally onto
    the complement of everything chosen so far (which lands it in ker(eta))
    and normalized; phiV_i is appended as the literal phi image.  Seeds are
    consumed in order: the explicit `seeds` list first, then draws from
    `rng` if given, then a deterministic sweep of the standard basis.  An
    explicit seed whose projection is numerically zero raises
    DegenerateSeedError; sweep candidates that degenerate are skipped.
    """
    dim, k = acs.dim, acs.n - 1
    gram = acs.space.gram
    chosen: list[np.ndarray] = [acs.xi]
    vs: list[np.ndarray] = []
    ws: list[np.ndarray] = []

    def candidates():
        if seeds is not None:
            for s in seeds:
                yield _check_vector(s, dim, "seed"), True
        if rng is not None:
            for _ in range(16 * dim):
                yield rng.standard_normal(dim), False
        for j in range(dim):
            e = np.zeros(dim)
            e[j] = 1.0
            yield e, False

    source = candidates()
    while len(vs) < k:
        try:
            cand, explicit = next(source)
        except StopIteration:
            raise DegenerateSeedError("ran out of seed candidates before completing the basis")
        w = cand.astype(float)
        for b in chosen:
            w = w - acs.g(w, b) * b
        nrm = acs.norm(w)
        if nrm <= tol:
            if explicit:
                raise DegenerateSeedError("seed lies (numerically) in the span already chosen")
            continue
        v = w / nrm
        fv = acs.phi @ v
        vs.append(v)
        ws.append(fv)
        chosen.extend([v, fv])
    return PhiBasis(np.column_stack(vs + ws + [acs.xi]), acs.n)


def nabla_xi(acs: AlmostContactStructure, shape_operator: np.ndarray,
             x: np.ndarray) -> np.ndarray:
    """Covariant derivative of xi along x: phi(A x)."""
    a = _check_matrix(shape_operator, acs.dim, "shape_operator")
    return acs.phi @ (a @ _check_vector(x, acs.dim, "x"))


def nabla_phi(acs: AlmostContactStructure, shape_operator: np.ndarray,
              x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Covariant derivative of phi: (nabla_x phi)y = eta(y) A x - g(A x, y) xi."""
    a = _check_matrix(shape_operator, acs.dim, "shape_operator")
    x = _check_vector(x, acs.dim, "x")
    y = _check_vector(y, acs.dim, "y")
    ax = a @ x
    return acs.eta_of(y) * ax - acs.g(ax, y) * acs.xi
