"""Three-way t-SVD algebra.

The t-product multiplies tensors like matrices whose scalars are tubes
(mode-3 fibers), with scalar multiplication replaced by circular
convolution. The DFT along tubes block-diagonalizes it, so every
operation here reduces to independent matrix operations on the Fourier
frontal slices.

DFT convention: unnormalized forward transform, 1/n_3 on the inverse.
Results of inverse transforms are real-truncated; an imaginary residue
above ``IMAG_TOL * (1 + ||x||_F)`` is treated as an implementation bug
and raises :class:`NumericError` instead of being silently discarded.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .tensor_ops import frobenius_norm

__all__ = [
    "NumericError",
    "TSvdFactors",
    "dft_tubes",
    "idft_tubes",
    "identity_tensor",
    "conj_transpose",
    "t_product",
    "bcirc",
    "bcirc_oracle",
    "t_svd",
    "fourier_singular_values",
    "multi_rank",
    "tubal_rank",
    "tnn",
    "t_svt",
]

IMAG_TOL = 1e-9


class NumericError(RuntimeError):
    """A numeric invariant failed (SVD breakdown or excess imaginary residue)."""


class TSvdFactors(NamedTuple):
    u: np.ndarray  # n1 x n1 x n3, orthogonal under the t-product
    s: np.ndarray  # n1 x n2 x n3, f-diagonal
    v: np.ndarray  # n2 x n2 x n3, orthogonal under the t-product


def _require_3way(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 3:
        raise ValueError(f"expected a three-way tensor, got order {x.ndim}")
    return x


def dft_tubes(x: np.ndarray) -> np.ndarray:
    """Unnormalized DFT of every tube x(i, j, :)."""
    return np.fft.fft(_require_3way(x), axis=2)


def idft_tubes(y: np.ndarray) -> np.ndarray:
    """Inverse of :func:`dft_tubes` (includes the 1/n_3 scaling); complex."""
    return np.fft.ifft(_require_3way(y), axis=2)


def _real_part(y: np.ndarray, ref_norm: float) -> np.ndarray:
    resid = float(np.abs(y.imag).max(initial=0.0))
    if resid > IMAG_TOL * (1.0 + ref_norm):
        raise NumericError(
            f"imaginary residue {resid:.3e} exceeds tolerance after inverse DFT"
        )
    return np.ascontiguousarray(y.real)


def identity_tensor(n: int, n3: int) -> np.ndarray:
    """First frontal slice is I_n, all other slices zero."""
    if n < 1 or n3 < 1:
        raise ValueError("identity tensor extents must be positive")
    out = np.zeros((n, n, n3))
    out[:, :, 0] = np.eye(n)
    return out


def conj_transpose(x: np.ndarray) -> np.ndarray:
    """Transpose every frontal slice, then reverse slices 2..n_3."""
    x = _require_3way(x)
    out = np.empty((x.shape[1], x.shape[0], x.shape[2]), dtype=x.dtype)
    out[:, :, 0] = x[:, :, 0].T
    out[:, :, 1:] = np.transpose(x[:, :, :0:-1], (1, 0, 2))
    return out


def _slices_first(xf: np.ndarray) -> np.ndarray:
    # (n1, n2, n3) -> (n3, n1, n2) stack for batched matrix ops
    return np.moveaxis(xf, 2, 0)


def _slices_last(stack: np.ndarray) -> np.ndarray:
    return np.moveaxis(stack, 0, 2)


def t_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """t-product of x (n1 x n2 x n3) and y (n2 x n4 x n3)."""
    x, y = _require_3way(x), _require_3way(y)
    if x.shape[1] != y.shape[0] or x.shape[2] != y.shape[2]:
        raise ValueError(f"t-product dimension mismatch: {x.shape} * {y.shape}")
    prod = _slices_first(dft_tubes(x)) @ _slices_first(dft_tubes(y))
    return _real_part(
        idft_tubes(_slices_last(prod)),
        frobenius_norm(x) * frobenius_norm(y),
    )


def bcirc(x: np.ndarray) -> np.ndarray:
    """Literal block-circulant matrix (n1*n3) x (n2*n3) of a three-way tensor."""
    x = _require_3way(x)
    n1, n2, n3 = x.shape
    out = np.empty((n1 * n3, n2 * n3))
    for i in range(n3):
        for j in range(n3):
            out[i * n1 : (i + 1) * n1, j * n2 : (j + 1) * n2] = x[:, :, (i - j) % n3]
    return out


def bcirc_oracle(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Reference t-product via explicit block-circulant multiplication.

    Test oracle only: O(n3^2) storage, independent of the FFT path.
    """
    x, y = _require_3way(x), _require_3way(y)
    if x.shape[1] != y.shape[0] or x.shape[2] != y.shape[2]:
        raise ValueError(f"t-product dimension mismatch: {x.shape} * {y.shape}")
    n1, _, n3 = x.shape
    n4 = y.shape[1]
    bvec = np.concatenate([y[:, :, i] for i in range(n3)], axis=0)
    flat = bcirc(x) @ bvec
    out = np.empty((n1, n4, n3))
    for i in range(n3):
        out[:, :, i] = flat[i * n1 : (i + 1) * n1, :]
    return out


def _mirror_range(n3: int, exploit: bool) -> int:
    # number of leading Fourier slices that must be computed explicitly
    return (n3 + 2) // 2 if exploit else n3


def t_svd(x: np.ndarray, exploit_symmetry: bool = False) -> TSvdFactors:
    """Full t-SVD: x = u * s * conj_transpose(v).

    Computes a full SVD of every Fourier frontal slice and transforms the
    stacked factors back. With ``exploit_symmetry`` only the first
    ceil((n3+1)/2) slices are decomposed and the rest filled by conjugate
    mirroring (valid for real input).
    """
    x = _require_3way(x)
    n1, n2, n3 = x.shape
    xf = _slices_first(dft_tubes(x))
    uf = np.empty((n3, n1, n1), dtype=complex)
    sf = np.zeros((n3, n1, n2), dtype=complex)
    vf = np.empty((n3, n2, n2), dtype=complex)
    try:
        for i in range(_mirror_range(n3, exploit_symmetry)):
            u, sig, vh = np.linalg.svd(xf[i], full_matrices=True)
            uf[i] = u
            sf[i, : sig.size, : sig.size] = np.diag(sig)
            vf[i] = vh.conj().T
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed on a Fourier slice: {exc}") from exc
    if exploit_symmetry:
        for i in range(_mirror_range(n3, True), n3):
            uf[i] = uf[n3 - i].conj()
            sf[i] = sf[n3 - i].conj()
            vf[i] = vf[n3 - i].conj()
    ref = frobenius_norm(x)
    return TSvdFactors(
        u=_real_part(idft_tubes(_slices_last(uf)), ref),
        s=_real_part(idft_tubes(_slices_last(sf)), ref),
        v=_real_part(idft_tubes(_slices_last(vf)), ref),
    )


def fourier_singular_values(x: np.ndarray) -> np.ndarray:
    """Singular values of every Fourier frontal slice, shape (n3, min(n1, n2))."""
    return np.linalg.svd(_slices_first(dft_tubes(_require_3way(x))), compute_uv=False)


def multi_rank(x: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Per-Fourier-slice matrix ranks.

    ``tol`` is an absolute singular-value threshold; by default
    ``max(shape) * eps * sigma_max`` with sigma_max taken over all slices.
    """
    x = _require_3way(x)
    sv = fourier_singular_values(x)
    if tol is None:
        tol = max(x.shape) * np.finfo(np.float64).eps * float(sv.max(initial=0.0))
    return (sv > tol).sum(axis=1)


def tubal_rank(x: np.ndarray, tol: float | None = None) -> int:
    return int(multi_rank(x, tol).max(initial=0))


def tnn(x: np.ndarray) -> float:
    """Tensor nuclear norm: sum of singular values of all Fourier slices."""
    return float(fourier_singular_values(x).sum())


def t_svt(z: np.ndarray, tau: float) -> np.ndarray:
    """Tensor singular value thresholding, the prox of ``tau * tnn``.

    Shrinks the singular values of every Fourier slice by ``tau`` (thin
    SVDs; the zero-padded part of a full factorization cannot survive
    shrinkage) and transforms back.
    """
    if tau < 0:
        raise ValueError("threshold tau must be nonnegative")
    z = _require_3way(z)
    zf = _slices_first(dft_tubes(z))
    try:
        u, sig, vh = np.linalg.svd(zf, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed on a Fourier slice: {exc}") from exc
    shrunk = np.maximum(sig - tau, 0.0)
    out = (u * shrunk[:, None, :]) @ vh
    return _real_part(idft_tubes(_slices_last(out)), frobenius_norm(z))
