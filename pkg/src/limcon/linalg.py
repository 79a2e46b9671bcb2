"""Dense linear-algebra kernel: kernels and images, orthogonal projections,
Kronecker/block-diagonal assembly, spectra, subspace independence, and the
(2, inf) mixed matrix norm.

Subspaces are plain ndarrays whose columns form an orthonormal basis; the
trivial subspace of R^n is an (n, 0) array.  All rank decisions flow through
one relative tolerance (RANK_RTOL), overridable per call.
"""

from __future__ import annotations

import numpy as np

# Singular values below RANK_RTOL * sigma_max count as zero.
RANK_RTOL = 1e-10


def _as_matrix(a) -> np.ndarray:
    out = np.atleast_2d(np.asarray(a, dtype=float))
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix entries must be finite")
    return out


def kernel_basis(a, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the kernel of a, as columns.

    Based on the SVD: right singular vectors whose singular value falls
    below rtol * sigma_max span the numerical nullspace.  An (n, 0) result
    means the kernel is trivial.
    """
    a = _as_matrix(a)
    n = a.shape[1]
    if a.shape[0] == 0 or not a.any():
        return np.eye(n)
    _, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > rtol * s[0]))
    return vh[rank:].T.copy()


def row_space_basis(a, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal rows spanning the row space of a; (0, n) if a is zero."""
    a = _as_matrix(a)
    if a.shape[0] == 0 or not a.any():
        return np.zeros((0, a.shape[1]))
    _, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > rtol * s[0]))
    return vh[:rank].copy()


def column_space_basis(a, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal columns spanning the column space of a."""
    a = _as_matrix(a)
    if a.shape[1] == 0 or not a.any():
        return np.zeros((a.shape[0], 0))
    u, s, _ = np.linalg.svd(a)
    rank = int(np.sum(s > rtol * s[0]))
    return u[:, :rank].copy()


def matrix_rank(a, rtol: float = RANK_RTOL) -> int:
    a = _as_matrix(a)
    if a.size == 0 or not a.any():
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


def orthonormalize_rows(c, rtol: float = RANK_RTOL) -> np.ndarray:
    """Replace c by a matrix with the same row span and orthonormal rows.

    Raises if the rows are linearly dependent at the given tolerance; drop
    the redundant rows (row_space_basis does) before calling.
    """
    c = _as_matrix(c)
    if c.shape[0] == 0:
        return c.copy()
    basis = row_space_basis(c, rtol)
    if basis.shape[0] != c.shape[0]:
        raise ValueError(
            f"rows are linearly dependent (rank {basis.shape[0]} < {c.shape[0]}); "
            "drop redundant rows first"
        )
    return basis


def projection_matrix(c, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthogonal projection c'(cc')^-1 c onto the row space of c.

    Requires full row rank (otherwise cc' is singular).  For c with
    orthonormal rows this equals c'c.
    """
    c = _as_matrix(c)
    n = c.shape[1]
    if c.shape[0] == 0:
        return np.zeros((n, n))
    q = orthonormalize_rows(c, rtol)
    return q.T @ q


def kronecker(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def block_diag(blocks) -> np.ndarray:
    """Block-diagonal assembly; blocks may have zero rows or columns."""
    mats = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks]
    rows = sum(b.shape[0] for b in mats)
    cols = sum(b.shape[1] for b in mats)
    out = np.zeros((rows, cols))
    r = c = 0
    for b in mats:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def eigenvalues(a) -> np.ndarray:
    """Full spectrum with multiplicity.

    Symmetric input yields real eigenvalues sorted ascending; anything else
    yields the complex spectrum in no particular order.
    """
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues need a square matrix")
    if np.allclose(a, a.T, atol=1e-12, rtol=0.0):
        return np.linalg.eigvalsh(a)
    return np.linalg.eigvals(a)


def spectral_radius(a) -> float:
    return float(np.max(np.abs(eigenvalues(a)))) if np.size(a) else 0.0


def subspace_from_vectors(vectors, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the span of the given column vectors."""
    return column_space_basis(vectors, rtol)


def subspace_sum(bases, rtol: float = RANK_RTOL) -> np.ndarray:
    bases = [np.asarray(b, dtype=float) for b in bases]
    if not bases:
        raise ValueError("need at least one subspace")
    return column_space_basis(np.hstack(bases), rtol)


def subspace_intersection(a, b, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the intersection of two subspaces.

    A vector lies in both spans iff it is annihilated by both complementary
    projections, so the intersection is the kernel of the stacked residual
    maps I - aa' and I - bb'.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = a.shape[0]
    if b.shape[0] != n:
        raise ValueError("subspaces must share the ambient dimension")
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((n, 0))
    eye = np.eye(n)
    stacked = np.vstack([eye - a @ a.T, eye - b @ b.T])
    return kernel_basis(stacked, rtol)


def subspaces_equal(a, b, tol: float = 1e-9) -> bool:
    """Span equality via mutual projection residuals (bases are non-unique)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[0] != b.shape[0]:
        raise ValueError("subspaces must share the ambient dimension")
    if a.shape[1] != b.shape[1]:
        return False
    if a.shape[1] == 0:
        return True
    res_a = a - b @ (b.T @ a)
    res_b = b - a @ (a.T @ b)
    return float(np.linalg.norm(res_a)) <= tol and float(np.linalg.norm(res_b)) <= tol


def subspace_family_independent(bases, rtol: float = RANK_RTOL) -> bool:
    """True iff dim of the sum equals the sum of dims.

    Equivalent to each subspace meeting the sum of the others only at zero;
    trivial subspaces never break independence.
    """
    bases = [np.asarray(b, dtype=float) for b in bases]
    if not bases:
        return True
    n = bases[0].shape[0]
    if any(b.shape[0] != n for b in bases):
        raise ValueError("subspaces must share the ambient dimension")
    total = sum(b.shape[1] for b in bases)
    if total == 0:
        return True
    if total > n:
        return False
    stacked = np.hstack(bases)
    return matrix_rank(stacked, rtol) == total


def mixed_norm_2_inf(q, block: int) -> float:
    """Mixed (2, inf) norm: the induced inf-norm of the matrix of blockwise
    spectral norms.  Submultiplicative, and bounds the spectral radius."""
    q = _as_matrix(q)
    if q.shape[0] != q.shape[1]:
        raise ValueError("mixed norm needs a square matrix")
    if block < 1 or q.shape[0] % block:
        raise ValueError(f"matrix of size {q.shape[0]} does not split into {block}-blocks")
    m = q.shape[0] // block
    gauge = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            blk = q[i * block : (i + 1) * block, j * block : (j + 1) * block]
            gauge[i, j] = np.linalg.norm(blk, 2)
    return float(np.max(gauge.sum(axis=1)))
