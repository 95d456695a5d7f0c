"""Law of a single player's final score under a greed threshold.

A player with greed threshold tau keeps adding uniform [0, 1] draws to a
running sum until it reaches tau; passing 1 busts the score to exactly 0.
The final score xi_tau is a mixture: an atom at 0 with mass

    bust_prob(tau) = 1 + e**tau * (tau - 1)

and, with the complementary mass e**tau * (1 - tau), a uniform draw on
(tau, 1].  Everything downstream (win probabilities, equilibria) reduces to
expectations against this law.
"""

from __future__ import annotations

import math

import numpy as np

from .numerics import ExpPoly, PiecewisePoly
from .stopping import PayoffSpec

__all__ = [
    "BUST",
    "bust_prob",
    "score_cdf",
    "score_cdf_piecewise",
    "RandomStream",
    "sample_score",
    "sample_scores",
    "expect",
    "expect_conditional",
]

# Bust probability as an exponential polynomial: 1 - e**x + x * e**x.
BUST = ExpPoly({(0, 0): 1.0, (0, 1): -1.0, (1, 1): 1.0})


def _check_threshold(tau: float) -> float:
    tau = float(tau)
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {tau}")
    return tau


def bust_prob(tau: float) -> float:
    """Probability that a player with greed threshold tau ends with score 0."""
    tau = _check_threshold(tau)
    return 1.0 + math.exp(tau) * (tau - 1.0)


def score_cdf(tau: float, x: float) -> float:
    """P(score <= x) for a player with greed threshold tau.

    Flat at the bust mass on [0, tau], then linear with slope e**tau up to 1.
    """
    tau = _check_threshold(tau)
    if x < 0.0:
        return 0.0
    if x <= tau:
        return 1.0 + math.exp(tau) * (tau - 1.0)
    if x <= 1.0:
        return 1.0 + math.exp(tau) * (x - 1.0)
    return 1.0


def score_cdf_piecewise(tau: float) -> PiecewisePoly:
    """The CDF on [0, 1] as an exact piecewise polynomial (constant, then linear)."""
    tau = _check_threshold(tau)
    e_tau = math.exp(tau)
    if tau <= 0.0:
        return PiecewisePoly((0.0, 1.0), ((0.0, 1.0),))
    if tau >= 1.0:
        return PiecewisePoly.constant(1.0)
    return PiecewisePoly(
        (0.0, tau, 1.0),
        ((1.0 + e_tau * (tau - 1.0),), (1.0 - e_tau, e_tau)),
    )


class RandomStream:
    """Counter-based random stream keyed by (seed, stream_id).

    Identical keys reproduce the identical draw sequence; distinct stream ids
    give statistically independent streams, so chunked simulations are
    reproducible regardless of scheduling.  Single-owner mutable state: hand a
    stream to one consumer at a time.
    """

    __slots__ = ("seed", "stream_id", "_gen")

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        if seed < 0 or stream_id < 0:
            raise ValueError("seed and stream_id must be non-negative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniform(self) -> float:
        """One uniform [0, 1) draw."""
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        """n uniform [0, 1) draws as a float64 array."""
        return self._gen.random(n)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"


def sample_score(tau: float, rng: RandomStream) -> float:
    """One final score: accumulate draws until reaching tau, bust past 1 to 0."""
    tau = _check_threshold(tau)
    s = rng.uniform()
    while s < tau:
        s += rng.uniform()
    return 0.0 if s > 1.0 else s


def sample_scores(tau: float | np.ndarray, size: int, rng: RandomStream) -> np.ndarray:
    """Vector of `size` final scores; tau may be a scalar or a per-sample array.

    Follows the same accumulate-until-threshold process as sample_score, with
    the draws batched per round for speed.
    """
    tau_arr = np.broadcast_to(np.asarray(tau, dtype=np.float64), (size,))
    if tau_arr.size and (tau_arr.min() < 0.0 or tau_arr.max() > 1.0):
        raise ValueError("thresholds must lie in [0, 1]")
    s = rng.uniforms(size).copy()
    active = np.nonzero(s < tau_arr)[0]
    while active.size:
        s[active] += rng.uniforms(active.size)
        active = active[s[active] < tau_arr[active]]
    return np.where(s > 1.0, 0.0, s)


def expect(spec: PayoffSpec, tau: float, tol: float = 1e-12) -> float:
    """E[h(score)] under threshold tau:  bust_prob(tau) * h(0) + e**tau * integral of h over [tau, 1]."""
    tau = _check_threshold(tau)
    return bust_prob(tau) * spec.h0 + math.exp(tau) * spec.integral(tau, 1.0, tol)


def expect_conditional(spec: PayoffSpec, tau: float, tol: float = 1e-12) -> float:
    """E[h(score) | score > 0] under threshold tau: the mean of h on the uniform part."""
    tau = _check_threshold(tau)
    if tau >= 1.0:
        raise ValueError("conditional expectation needs tau < 1 (no positive mass at tau = 1)")
    return spec.integral(tau, 1.0, tol) / (1.0 - tau)
