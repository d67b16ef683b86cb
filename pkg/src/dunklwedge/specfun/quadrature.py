"""Gauss-Jacobi rules via Golub-Welsch, and node-doubling integration.

Rules are normalised to probability weights: ``sum(weights) == 1``.  The
symmetric Beta measure ``mu^s(du) ∝ (1-u^2)^(s-1) du`` on [-1, 1] is the
Jacobi weight with ``alpha = beta = s - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import DomainError, QuadratureError

MAX_NODES = 1024


@dataclass(frozen=True)
class QuadratureRule:
    """Probability rule for the symmetric Beta measure ``mu^s``."""

    s: float
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))

    def __len__(self):
        return self.nodes.size


def _jacobi_matrix(n: int, alpha: float, beta: float):
    k = np.arange(n, dtype=float)
    ab = alpha + beta
    diag = np.empty(n)
    denom = (2 * k + ab) * (2 * k + ab + 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (beta**2 - alpha**2) / denom
    diag[0] = (beta - alpha) / (ab + 2)

    m = np.arange(1, n, dtype=float)
    s = 2 * m + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = 4 * m * (m + alpha) * (m + beta) * (m + ab) / (s**2 * (s + 1) * (s - 1))
    # m = 1 is 0/0 when alpha + beta = -1
    off2[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
    return diag, np.sqrt(off2)


@lru_cache(maxsize=256)
def _gauss_jacobi_cached(n: int, alpha: float, beta: float):
    diag, off = _jacobi_matrix(n, alpha, beta)
    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise QuadratureError(f"Golub-Welsch failed for n={n}: {exc}") from exc
    weights = vecs[0, :] ** 2
    weights /= weights.sum()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_jacobi(n: int, alpha: float, beta: float):
    """Nodes and probability weights for ``(1-x)^alpha (1+x)^beta`` on [-1, 1]."""
    if n < 1:
        raise DomainError("need at least one node")
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"Jacobi exponents must exceed -1: {alpha}, {beta}")
    return _gauss_jacobi_cached(int(n), float(alpha), float(beta))


def jacobi_mass(alpha: float, beta: float) -> float:
    """``int_{-1}^{1} (1-x)^alpha (1+x)^beta dx``."""
    return math.exp(
        (alpha + beta + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(alpha + beta + 2)
    )


def beta_rule(n: int, a: float, b: float):
    """Probability rule for the Beta(a, b) law on [0, 1]."""
    x, w = gauss_jacobi(n, b - 1.0, a - 1.0)
    return 0.5 * (1.0 + x), w


def gauss_jacobi_rule(s: float, n: int) -> QuadratureRule:
    """``n``-point rule for ``mu^s``, exact up to degree ``2n - 1``."""
    if not s > 0:
        raise DomainError(f"s must be > 0, got {s}")
    if n < 2:
        raise DomainError("n must be >= 2")
    x, w = gauss_jacobi(n, s - 1.0, s - 1.0)
    # enforce exact symmetry of the measure
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return QuadratureRule(float(s), x, w)


def refine(evaluate, n0: int, tol: float = 1e-11, n_max: int = MAX_NODES):
    """Double the node count until two successive results agree.

    ``evaluate(n)`` returns an array (or scalar) of integrals computed with
    ``n`` nodes.  Agreement is relative, elementwise, with an absolute floor
    at ``tol * max|result|``.
    """
    n = max(int(n0), 2)
    prev = np.asarray(evaluate(n), dtype=float)
    while True:
        n2 = 2 * n
        if n2 > n_max:
            scale = np.max(np.abs(prev)) if prev.size else 0.0
            raise QuadratureError(
                f"no convergence with {n} nodes", estimate=prev, error=scale
            )
        cur = np.asarray(evaluate(n2), dtype=float)
        diff = np.abs(cur - prev)
        floor = tol * max(float(np.max(np.abs(cur))) if cur.size else 0.0, 1e-300)
        if np.all(diff <= np.maximum(tol * np.abs(cur), floor)):
            return cur if cur.ndim else float(cur)
        prev, n = cur, n2
