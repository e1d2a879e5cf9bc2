"""Damped Gauss-Newton (Levenberg-Marquardt) over many starts at once."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

logger = logging.getLogger(__name__)

ResidualFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass
class BatchResult:
    """Final parameters and costs, one row per start."""

    x: np.ndarray  # (B, P)
    cost: np.ndarray  # (B,) sum of squared residuals
    iterations: np.ndarray  # (B,) accepted steps


class BatchedLevenbergMarquardt:
    """
    Levenberg-Marquardt with Fletcher scaling, vectorized over a batch of
    independent problems sharing one residual function.

    Each row keeps its own damping. A row stops when its cost reaches
    ``ftarget`` or its damping passes MAX_DAMPING.
    """

    INITIAL_DAMPING = 1e-3
    MAX_DAMPING = 1e12
    ACCEPT_SHRINK = 3.0
    REJECT_GROW = 4.0
    STEP = 1e-6  # central-difference step

    def __init__(self, max_iterations: int = 60, ftarget: float = 1e-34, bound: Optional[float] = None):
        """
        Args:
            max_iterations: Iteration cap per batch
            ftarget: Cost at which a row is considered solved
            bound: Clip parameters to [-bound, bound] when given
        """
        self.max_iterations = max_iterations
        self.ftarget = ftarget
        self.bound = bound

    def jacobian(self, fn: ResidualFn, x: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """(B, R, P) central-difference Jacobian in one stacked call."""
        batch, n_params = x.shape
        offsets = self.STEP * np.eye(n_params)
        shifted = np.concatenate([
            (x[None, :, :] + offsets[:, None, :]).reshape(-1, n_params),
            (x[None, :, :] - offsets[:, None, :]).reshape(-1, n_params),
        ])
        values = fn(shifted, np.tile(rows, (2 * n_params, 1)))
        values = values.reshape(2, n_params, batch, -1)
        return np.transpose((values[0] - values[1]) / (2 * self.STEP), (1, 2, 0))

    def _step(self, jac: np.ndarray, res: np.ndarray, damping: np.ndarray) -> np.ndarray:
        jtj = np.einsum("brp,brq->bpq", jac, jac)
        grad = np.einsum("brp,br->bp", jac, res)
        idx = np.arange(jtj.shape[1])
        scale = jtj[:, idx, idx] + 1e-12
        lhs = jtj.copy()
        lhs[:, idx, idx] += damping[:, None] * scale
        try:
            return -np.linalg.solve(lhs, grad[..., None])[..., 0]
        except np.linalg.LinAlgError:
            return -np.einsum("bpq,bq->bp", np.linalg.pinv(lhs), grad)

    def _clip(self, x: np.ndarray) -> np.ndarray:
        return x if self.bound is None else np.clip(x, -self.bound, self.bound)

    def minimize(self, fn: ResidualFn, x0: np.ndarray, rows: np.ndarray) -> BatchResult:
        """
        Args:
            fn: Maps (B, P) parameters and (B, ...) row data to (B, R) residuals
            x0: (B, P) starting parameters
            rows: Row data passed through to ``fn``

        Returns:
            BatchResult
        """
        x = self._clip(np.array(x0, dtype=float))
        res = fn(x, rows)
        cost = np.sum(res ** 2, axis=1)
        cost = np.where(np.isfinite(cost), cost, np.inf)
        iterations = np.zeros(len(x), dtype=int)
        if x.shape[1] == 0:
            return BatchResult(x, cost, iterations)

        damping = np.full(len(x), self.INITIAL_DAMPING)
        active = cost > self.ftarget
        rounds = 0
        while rounds < self.max_iterations:
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            rounds += 1
            jac = self.jacobian(fn, x[idx], rows[idx])
            with np.errstate(all="ignore"):
                delta = self._step(jac, res[idx], damping[idx])
                trial = self._clip(x[idx] + delta)
                trial_res = fn(trial, rows[idx])
                trial_cost = np.sum(trial_res ** 2, axis=1)
            better = np.isfinite(trial_cost) & (trial_cost < cost[idx])

            accepted = idx[better]
            x[accepted] = trial[better]
            res[accepted] = trial_res[better]
            cost[accepted] = trial_cost[better]
            iterations[accepted] += 1
            damping[accepted] /= self.ACCEPT_SHRINK
            damping[idx[~better]] *= self.REJECT_GROW

            active[idx] = (cost[idx] > self.ftarget) & (damping[idx] <= self.MAX_DAMPING)
        logger.debug(
            "LM finished %d rows after %d iterations, best cost %.3e",
            len(x), rounds, float(cost.min()) if len(cost) else float("nan"),
        )
        return BatchResult(x, cost, iterations)
