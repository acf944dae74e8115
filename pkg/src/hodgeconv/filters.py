"""Laguerre-polynomial spectral filter banks.

A bank of order P holds coefficients theta[out, in, p] for polynomial
degrees 0..P-1 and filters a simplex signal through the three-term
recurrence

    t_0 = f,   t_1 = f - (L/s) f,
    t_{p+1} = ((2p+1) t_p - (L/s) t_p - p t_{p-1}) / (p+1),

so only sparse operator actions are ever taken; T_p(L) is never formed
as a matrix.  Signals are plain float64 arrays of shape (dim, channels).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ._kernels import laguerre_basis
from .errors import ShapeError
from .laplacian import HodgeLaplacian, power_iteration_lambda_max


@dataclass
class FilterBank:
    order: int
    in_channels: int
    out_channels: int
    theta: np.ndarray = field(repr=False)  # (out_channels, in_channels, order)
    spectral_scale: float = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.spectral_scale <= 0:
            raise ValueError("spectral_scale must be positive")
        self.theta = np.asarray(self.theta, dtype=np.float64)
        expected = (self.out_channels, self.in_channels, self.order)
        if self.theta.shape != expected:
            raise ShapeError(f"theta shape {self.theta.shape}, expected {expected}")

    def spectrum(self, lam: float) -> float:
        """Scalar transfer function sum_p theta[0,0,p] T_p(lam / s).

        Only defined per (out, in) pair; this evaluates the (0, 0) slot
        and is what single-channel oracle comparisons use.
        """
        terms = laguerre_eval(self.order, lam / self.spectral_scale)
        return float(self.theta[0, 0] @ terms)

    def to_json(self) -> str:
        return json.dumps(
            {
                "order": self.order,
                "in_channels": self.in_channels,
                "out_channels": self.out_channels,
                "spectral_scale": self.spectral_scale,
                "theta": self.theta.ravel().tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "FilterBank":
        doc = json.loads(text)
        shape = (int(doc["out_channels"]), int(doc["in_channels"]), int(doc["order"]))
        theta = np.asarray(doc["theta"], dtype=np.float64).reshape(shape)
        return cls(
            order=shape[2],
            in_channels=shape[1],
            out_channels=shape[0],
            theta=theta,
            spectral_scale=float(doc.get("spectral_scale", 1.0)),
        )


def laguerre_eval(order: int, lam) -> np.ndarray:
    """[T_0(lam), ..., T_{order-1}(lam)] by the recurrence.

    ``lam`` may be a scalar or an array; the leading output axis indexes
    the polynomial degree.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    lam = np.asarray(lam, dtype=np.float64)
    out = np.empty((order,) + lam.shape, dtype=np.float64)
    out[0] = 1.0
    if order > 1:
        out[1] = 1.0 - lam
    for p in range(1, order - 1):
        out[p + 1] = ((2 * p + 1 - lam) * out[p] - p * out[p - 1]) / (p + 1)
    return out


def auto_spectral_scale(L: HodgeLaplacian, n_steps: int = 50, seed: int = 0) -> float:
    """lambda_max estimate for scale='auto' banks; floors at 1."""
    return max(power_iteration_lambda_max(L, n_steps=n_steps, seed=seed), 1.0)


def make_filter_bank(
    order: int,
    in_channels: int,
    out_channels: int,
    scale: float | str = 1.0,
    L: HodgeLaplacian | None = None,
    rng: np.random.Generator | None = None,
    init_noise: float = 0.01,
) -> FilterBank:
    """Near-identity initialization: theta_0 = 1, higher terms 0, all
    perturbed by +-init_noise uniform noise when an rng is given."""
    if scale == "auto":
        if L is None:
            raise ValueError("scale='auto' needs the Laplacian")
        scale = auto_spectral_scale(L)
    theta = np.zeros((out_channels, in_channels, order))
    theta[:, :, 0] = 1.0
    if rng is not None and init_noise:
        theta += rng.uniform(-init_noise, init_noise, size=theta.shape)
    return FilterBank(
        order=order,
        in_channels=in_channels,
        out_channels=out_channels,
        theta=theta,
        spectral_scale=float(scale),
    )


def laguerre_apply(L: HodgeLaplacian, bank: FilterBank, f: np.ndarray) -> np.ndarray:
    """Filter a (dim, in_channels) signal to (dim, out_channels).

    out[:, o] = sum_i sum_p theta[o, i, p] t_p(f)[:, i]
    """
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 2:
        raise ShapeError(f"signal must be 2-d (dim, channels), got shape {f.shape}")
    if f.shape[0] != L.dim:
        raise ShapeError(f"signal dim {f.shape[0]} != operator dim {L.dim}")
    if f.shape[1] != bank.in_channels:
        raise ShapeError(f"signal channels {f.shape[1]} != bank in_channels {bank.in_channels}")
    basis = laguerre_basis(L.matrix, f, bank.order, bank.spectral_scale)
    return np.einsum("pdi,oip->do", basis, bank.theta, optimize=True)


def filter_support(L: HodgeLaplacian, order: int, source: int) -> set[int]:
    """Simplex indices an order-P (degree P-1) filter can reach from a
    unit pulse at ``source``.

    Structural, not numeric: the (order-1)-hop ball in the simplex
    adjacency graph.  Using hop distance instead of the sparsity pattern
    of L keeps the answer right when Laplacian entries cancel (a filled
    triangle has diagonal L_1 yet adjacent edges).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if L.source_complex is None:
        raise ValueError("filter_support needs a Laplacian assembled from a complex")
    from .complexes import hop_distances_from

    dist = hop_distances_from(L.source_complex, L.k, source)
    return {int(i) for i in np.nonzero(dist <= order - 1)[0]}
