"""Dense 3x3 linear algebra.

Matrices are ``(3, 3)`` float64 arrays and vectors ``(3,)`` arrays. The
kernels are written out explicitly rather than delegated to LAPACK so that
each one can serve as an independent check on the others: cofactor
determinant, Gaussian elimination, adjugate inverse, and a one-sided Jacobi
SVD used for minimum-norm least-squares solutions.
"""

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, SingularMatrixError

__all__ = [
    "Svd3",
    "as_mat3",
    "as_vec3",
    "identity3",
    "det3",
    "singular_threshold",
    "is_singular",
    "solve3",
    "inverse3",
    "svd3",
    "pseudo_solve3",
    "norm2",
    "max_norm",
]

DET_RTOL = 1e-12
SVD_RCOND = 1e-12
MAX_SWEEPS = 100


class Svd3(NamedTuple):
    U: np.ndarray
    sigma: np.ndarray
    Vt: np.ndarray


def as_mat3(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.float64)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.float64)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector entries must be finite")
    return a


def identity3() -> np.ndarray:
    return np.eye(3)


def norm2(v) -> float:
    """Euclidean norm of a vector (spectral norm is not needed here)."""
    v = np.asarray(v, dtype=np.float64)
    return float(np.sqrt(np.dot(v, v)))


def max_norm(m) -> float:
    return float(np.max(np.abs(m)))


def det3(m) -> float:
    """Determinant by cofactor expansion along the first row."""
    a = as_mat3(m)
    return float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def singular_threshold(m) -> float:
    """Scale-aware cutoff below which ``|det3(m)|`` counts as zero."""
    return DET_RTOL * (1.0 + max_norm(m) ** 3)


def is_singular(m) -> bool:
    a = as_mat3(m)
    return abs(det3(a)) < singular_threshold(a)


def solve3(m, v, *, atol=None) -> np.ndarray:
    """Solve ``m @ x = v`` by Gaussian elimination with partial pivoting.

    Parameters
    ----------
    m : (3, 3) array_like
    v : (3,) array_like
    atol : float, optional
        Determinant magnitude below which ``m`` is rejected as singular.
        Defaults to :func:`singular_threshold`. Callers that have already
        established invertibility by other means may pass ``0.0`` so that
        only an exactly zero pivot is refused.

    Raises
    ------
    SingularMatrixError
        If ``|det3(m)|`` does not exceed ``atol``.
    """
    a = as_mat3(m).copy()
    b = as_vec3(v).copy()
    limit = singular_threshold(a) if atol is None else atol
    d = det3(a)
    if abs(d) <= limit:
        raise SingularMatrixError(f"matrix is singular: |det| = {abs(d):.3e} <= {limit:.3e}")

    for col in range(3):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0.0:
            raise SingularMatrixError("zero pivot in elimination")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        for row in range(col + 1, 3):
            f = a[row, col] / a[col, col]
            if f != 0.0:
                a[row, col:] -= f * a[col, col:]
                b[row] -= f * b[col]

    x = np.empty(3)
    for row in (2, 1, 0):
        s = b[row]
        for k in range(row + 1, 3):
            s -= a[row, k] * x[k]
        x[row] = s / a[row, row]
    return x


def inverse3(m) -> np.ndarray:
    """Inverse through the adjugate (transposed cofactor matrix)."""
    a = as_mat3(m)
    d = det3(a)
    limit = singular_threshold(a)
    if abs(d) < limit:
        raise SingularMatrixError(f"matrix is singular: |det| = {abs(d):.3e} < {limit:.3e}")
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0], c[0]] * a[r[1], c[1]] - a[r[0], c[1]] * a[r[1], c[0]]
            cof[i, j] = minor if (i + j) % 2 == 0 else -minor
    return cof.T / d


def _complete_basis(u: np.ndarray, keep: list) -> None:
    # Fill the columns of u not in `keep` with an orthonormal completion.
    basis = [u[:, k] for k in keep]
    missing = [k for k in range(3) if k not in keep]
    if len(basis) == 2:
        w = np.cross(basis[0], basis[1])
        u[:, missing[0]] = w / norm2(w)
        return
    for k in missing:
        best = None
        for e in np.eye(3):
            w = e - sum(np.dot(e, q) * q for q in basis) if basis else e.copy()
            n = norm2(w)
            if best is None or n > best[0]:
                best = (n, w)
        w = best[1] / best[0]
        # one re-orthogonalisation pass
        if basis:
            w = w - sum(np.dot(w, q) * q for q in basis)
            w /= norm2(w)
        u[:, k] = w
        basis.append(w)


def svd3(m) -> Svd3:
    """Singular value decomposition by one-sided (Hestenes) Jacobi rotations.

    Columns of a working copy of ``m`` are rotated pairwise until mutually
    orthogonal; their norms are the singular values and the accumulated
    rotations give ``V``. Left singular vectors belonging to negligible
    singular values are replaced by an orthonormal completion so that ``U``
    is always orthogonal.
    """
    w = as_mat3(m).copy()
    v = np.eye(3)
    eps = np.finfo(np.float64).eps

    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(2):
            for j in range(i + 1, 3):
                alpha = np.dot(w[:, i], w[:, i])
                beta = np.dot(w[:, j], w[:, j])
                gamma = np.dot(w[:, i], w[:, j])
                if gamma == 0.0 or abs(gamma) <= eps * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                wi = w[:, i].copy()
                w[:, i] = c * wi - s * w[:, j]
                w[:, j] = s * wi + c * w[:, j]
                vi = v[:, i].copy()
                v[:, i] = c * vi - s * v[:, j]
                v[:, j] = s * vi + c * v[:, j]
        if not rotated:
            break
    else:
        raise ConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")

    sigma = np.sqrt(np.sum(w * w, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    w = w[:, order]
    v = v[:, order]

    u = np.zeros((3, 3))
    keep = []
    smax = sigma[0]
    for k in range(3):
        if sigma[k] > 0.0 and sigma[k] > 4.0 * eps * smax:
            u[:, k] = w[:, k] / sigma[k]
            keep.append(k)
    if len(keep) < 3:
        _complete_basis(u, keep)
    return Svd3(U=u, sigma=sigma, Vt=v.T)


def pseudo_solve3(m, v) -> np.ndarray:
    """Minimum-norm least-squares solution ``pinv(m) @ v`` from :func:`svd3`.

    Singular values below ``1e-12 * sigma_max`` are treated as zero.
    """
    b = as_vec3(v)
    U, sigma, Vt = svd3(m)
    if sigma[0] == 0.0:
        return np.zeros(3)
    coeffs = U.T @ b
    inv = np.where(sigma >= SVD_RCOND * sigma[0], 1.0 / np.where(sigma > 0, sigma, 1.0), 0.0)
    return Vt.T @ (inv * coeffs)
