"""Vectorised summation of signed series with a log-space envelope."""

from __future__ import annotations

import numpy as np

from ..errors import NonConvergenceError
from ..model import SeriesControl


def sum_series(term, n_points: int, ctrl: SeriesControl, name: str = "series") -> np.ndarray:
    """Sum ``sum_j factor_j * exp(log_env_j)`` independently at ``n_points`` points.

    ``term(j, idx)`` returns ``(log_env, factor)`` for the still-active point
    indices ``idx``.  ``log_env`` is the smooth magnitude of the term and
    ``factor`` carries sign and oscillating pieces (polynomial values,
    coefficients that may vanish).  A point stops after ``consec_small``
    successive non-zero terms below ``rel_tol`` of its partial sum, counted
    only once the envelope is past its maximum.  Exactly-zero terms neither
    count nor reset.
    """
    total = np.zeros(n_points)
    count = np.zeros(n_points, dtype=np.int64)
    peak = np.full(n_points, -np.inf)
    last = np.zeros(n_points)
    active = np.arange(n_points)
    for j in range(ctrl.max_terms):
        if active.size == 0:
            return total
        log_env, factor = term(j, active)
        factor = np.broadcast_to(np.asarray(factor, dtype=float), log_env.shape)
        with np.errstate(under="ignore"):
            val = np.where(factor == 0.0, 0.0, factor * np.exp(log_env))
        tot = total[active] + val
        total[active] = tot
        last[active] = np.abs(val)
        past = log_env < peak[active]
        peak[active] = np.maximum(peak[active], log_env)
        small = (np.abs(val) <= ctrl.rel_tol * np.abs(tot)) & past
        cnt = count[active]
        cnt = np.where(factor == 0.0, cnt, np.where(small, cnt + 1, 0))
        count[active] = cnt
        active = active[cnt < ctrl.consec_small]
    i = active[0]
    raise NonConvergenceError(
        f"{name} did not converge in {ctrl.max_terms} terms",
        partial=float(total[i]),
        terms=ctrl.max_terms,
        last_term=float(last[i]),
    )
