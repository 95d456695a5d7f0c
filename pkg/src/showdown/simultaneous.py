"""No-information game: all players pick greed thresholds simultaneously.

Three payoff variants share the same scoring process and differ only in how
the win/tie events map to payoffs:

* EXTERNAL   -- the winner is paid 1 by an external agent; an all-bust tie
                pays nothing to anyone (the payoff sum may be 0).
* ZERO_SUM   -- the winner collects 1/(n-1) from each loser; an all-bust tie
                pays nothing.
* ADVANTAGED -- one designated player (by convention the last) wins the
                all-bust tie; constant-sum.

Each variant has a symmetric (or symmetric-except-the-advantaged) Nash
equilibrium characterized by a one- or two-equation fixed point in the bust
probability p(x) = 1 + e**x (x - 1).  Win probabilities for arbitrary
threshold profiles are exact piecewise-polynomial integrals of products of
score CDFs, and best responses reduce to the optimal-stopping kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .numerics import Bracket, PiecewisePoly, _scan_curve, solve_root, solve_root_2d
from .score import bust_prob, score_cdf_piecewise
from .stopping import PayoffSpec, optimal_threshold

__all__ = [
    "Variant",
    "alpha",
    "gamma",
    "epsilon_delta",
    "advantaged_curve_points",
    "SymmetricEquilibrium",
    "equilibrium",
    "ProfileOutcome",
    "win_probabilities",
    "two_player_win",
    "payoff_map",
    "stop_payoff_function",
    "best_response",
]


class Variant(str, Enum):
    """Payoff variant of the no-information game."""

    EXTERNAL = "ii.1"
    ZERO_SUM = "ii.2"
    ADVANTAGED = "ii.3"


def _check_n(n: int, minimum: int = 2) -> int:
    if not isinstance(n, int) or n < minimum:
        raise ValueError(f"player count must be an integer >= {minimum}, got {n}")
    return n


def _check_thresholds(thresholds) -> tuple[float, ...]:
    out = tuple(float(u) for u in thresholds)
    for u in out:
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"thresholds must lie in [0, 1], got {u}")
    return out


@lru_cache(maxsize=None)
def alpha(n: int, tol: float = 1e-12) -> float:
    """Symmetric Nash threshold of the externally-paid game.

    Root in (0, 1) of  p(x)**(n-1) = (1 - p(x)**n) / (n e**x); the left side
    increases from 0 to 1 while the right decreases from 1/n to 0, so the
    bracket [0, 1] always works.  Strictly increasing in n.
    """
    _check_n(n)

    def residual(x: float) -> float:
        b = bust_prob(x)
        return b ** (n - 1) - (1.0 - b**n) / (n * math.exp(x))

    return solve_root(residual, Bracket(0.0, 1.0), tol)


@lru_cache(maxsize=None)
def gamma(n: int, tol: float = 1e-12) -> float:
    """Symmetric Nash threshold of the zero-sum game.

    Root in (0, 1) of  p(x)**(n-1) = 1 / (1 + e**x (n-1)).  Strictly
    increasing in n, and larger than alpha(n): in the zero-sum game a player
    must not merely win often but out-score the rest.
    """
    _check_n(n)

    def residual(x: float) -> float:
        return bust_prob(x) ** (n - 1) - 1.0 / (1.0 + math.exp(x) * (n - 1))

    return solve_root(residual, Bracket(0.0, 1.0), tol)


def _advantaged_residuals(n: int):
    """The two fixed-point equations of the advantaged game, as residuals.

    The first (indifference of a normal player) defines y as a decreasing
    function of x, the second (indifference of the advantaged player) an
    increasing one; their unique crossing is (epsilon_n, delta_n).  The
    second identity presupposes the advantaged threshold is at least the
    normal one, and its algebraic form continued below the diagonal grows
    spurious roots, so res_b masks y < x as NaN (the curve scanner skips
    non-finite values); the first stays single-branched everywhere scanned.
    """

    def res_a(x: float, y: float) -> float:
        ex, ey = math.exp(x), math.exp(y)
        num = ey * ((1.0 + ex * (y - 1.0)) ** n - 1.0) + n * ex
        den = n * ex * (1.0 + ey * (y - 1.0)) * (1.0 + ex * (n - 2.0 + x))
        if den == 0.0:
            return math.nan
        return bust_prob(x) ** (n - 2) - num / den

    def res_b(x: float, y: float) -> float:
        if y < x or y == 0.0:
            return math.nan
        ex = math.exp(x)
        q = 1.0 + ex * (y - 1.0)
        num = (n * ex * q ** (n - 1) + q**n - 1.0) / ex
        return bust_prob(x) ** (n - 1) - num / (n * y)

    return res_a, res_b


@lru_cache(maxsize=None)
def epsilon_delta(n: int, tol: float = 1e-12) -> tuple[float, float]:
    """Nash thresholds (epsilon_n, delta_n) of the advantaged game.

    epsilon_n is shared by the normal players, delta_n > epsilon_n belongs to
    the advantaged player, who can afford to be greedier because the all-bust
    tie is his win.
    """
    _check_n(n)
    res_a, res_b = _advantaged_residuals(n)
    x, y = solve_root_2d(res_a, res_b, tol)
    return x, y


def advantaged_curve_points(
    n: int, x: float, tol: float = 1e-12
) -> tuple[float | None, float | None]:
    """Heights of the two defining curves of the advantaged game at abscissa x.

    Returns (y on the decreasing normal-player curve, y on the increasing
    advantaged-player curve); either entry is None where the curve leaves the
    unit box.  Useful for plotting the system and for brute-force
    cross-checks of epsilon_delta.
    """
    _check_n(n)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    res_a, res_b = _advantaged_residuals(n)
    ys = [i / 256 for i in range(257)]
    return (
        _scan_curve(lambda y: res_a(x, y), ys, tol),
        _scan_curve(lambda y: res_b(x, y), ys, tol),
    )


@dataclass(frozen=True)
class SymmetricEquilibrium:
    """Equilibrium profile of a no-information variant.

    thresholds and win_probs are per player, in seat order; for ADVANTAGED the
    last seat is the advantaged player and its win probability includes the
    tie he converts.  tie_prob is the all-bust probability where a tie outcome
    exists (None for ADVANTAGED).
    """

    variant: Variant
    n: int
    thresholds: tuple[float, ...]
    win_probs: tuple[float, ...]
    tie_prob: float | None


def equilibrium(variant: Variant, n: int, tol: float = 1e-12) -> SymmetricEquilibrium:
    """Nash equilibrium thresholds and win/tie probabilities for a variant."""
    variant = Variant(variant)
    _check_n(n)
    if variant is Variant.EXTERNAL:
        a = alpha(n, tol)
        tie = bust_prob(a) ** n
        win = (1.0 - tie) / n
        return SymmetricEquilibrium(variant, n, (a,) * n, (win,) * n, tie)
    if variant is Variant.ZERO_SUM:
        g = gamma(n, tol)
        tie = bust_prob(g) ** n
        win = (1.0 - tie) / n
        return SymmetricEquilibrium(variant, n, (g,) * n, (win,) * n, tie)
    eps, delta = epsilon_delta(n, tol)
    p_eps, p_delta = bust_prob(eps), bust_prob(delta)
    p_adv = p_eps ** (n - 1) * p_delta + math.exp(delta) * (
        1.0 - (1.0 + math.exp(eps) * (delta - 1.0)) ** n
    ) / (math.exp(eps) * n)
    p_normal = (1.0 - p_adv) / (n - 1)
    return SymmetricEquilibrium(
        variant,
        n,
        (eps,) * (n - 1) + (delta,),
        (p_normal,) * (n - 1) + (p_adv,),
        None,
    )


@dataclass(frozen=True)
class ProfileOutcome:
    """Win/tie decomposition of an arbitrary threshold profile.

    win_probs are the probabilities of holding the strictly highest positive
    score; tie_prob is the all-bust event.  Positive-score ties have
    probability zero under the continuous score law.  payoffs is filled by
    payoff_map for a chosen variant.
    """

    thresholds: tuple[float, ...]
    win_probs: tuple[float, ...]
    tie_prob: float
    advantaged: int | None = None
    payoffs: tuple[float, ...] | None = None


def win_probabilities(
    thresholds, advantaged: int | None = None
) -> ProfileOutcome:
    """Exact per-player win probabilities and the all-bust tie probability.

    Player i wins with probability
    e**(u_i) * integral over [u_i, 1] of prod_{j != i} F_{u_j}(s) ds,
    computed exactly by piecewise-polynomial integration over the merged
    breakpoints, so the closure sum(win) + tie = 1 holds to rounding.
    """
    us = _check_thresholds(thresholds)
    n = _check_n(len(us))
    if advantaged is not None and not 0 <= advantaged < n:
        raise ValueError(f"advantaged index out of range: {advantaged}")
    cdfs = [score_cdf_piecewise(u) for u in us]
    wins = []
    for i, u in enumerate(us):
        others = PiecewisePoly.product([c for j, c in enumerate(cdfs) if j != i])
        wins.append(math.exp(u) * others.integral(u, 1.0))
    tie = math.prod(bust_prob(u) for u in us)
    return ProfileOutcome(us, tuple(wins), tie, advantaged)


def two_player_win(x: float, y: float) -> float:
    """First player's win probability in the two-player game, in closed form.

    Branches at x = y: below, the first player's conditional chance of
    out-drawing the second is (1-y)/(2(1-x)); above, he also wins whenever the
    second lands in (y, x).
    """
    (x, y) = _check_thresholds((x, y))
    ex, ey = math.exp(x), math.exp(y)
    if x <= y:
        return 0.5 * ex * (ey * (y - 1.0) * (-2.0 * x + y + 1.0) - 2.0 * x + 2.0)
    return -0.5 * ex * (x - 1.0) * ((x - 1.0) * ey + 2.0)


def payoff_map(variant: Variant, outcome: ProfileOutcome) -> tuple[float, ...]:
    """Map a win/tie decomposition to per-player expected payoffs.

    EXTERNAL: payoff equals win probability.  ZERO_SUM: winners collect
    1/(n-1) from each rival, so payoff_i = P_i - (1 - P_i - tie)/(n-1).
    ADVANTAGED: the advantaged player (outcome.advantaged, defaulting to the
    last seat) adds the tie mass to his wins.
    """
    variant = Variant(variant)
    n = len(outcome.win_probs)
    wins = outcome.win_probs
    if variant is Variant.EXTERNAL:
        return wins
    if variant is Variant.ZERO_SUM:
        return tuple(p - (1.0 - p - outcome.tie_prob) / (n - 1) for p in wins)
    adv = outcome.advantaged if outcome.advantaged is not None else n - 1
    return tuple(
        p + outcome.tie_prob if i == adv else p for i, p in enumerate(wins)
    )


def stop_payoff_function(
    variant: Variant, player: int, rival_thresholds
) -> PayoffSpec:
    """Payoff of stopping at score x for one player against fixed rivals.

    For positive x the win probability is the product of the rivals' CDFs at
    x, mapped through the variant payoff; the bust value differs by variant:
    0 for EXTERNAL, -(1 - prod of rival bust probabilities)/(n-1) for
    ZERO_SUM, and for ADVANTAGED the product of rival bust probabilities when
    `player` is the advantaged seat (index n-1), else 0.  The result is
    non-decreasing and carries its exact piecewise-polynomial form.
    """
    variant = Variant(variant)
    rivals = _check_thresholds(rival_thresholds)
    n = len(rivals) + 1
    _check_n(n)
    if not 0 <= player < n:
        raise ValueError(f"player index out of range: {player}")
    win = PiecewisePoly.product([score_cdf_piecewise(u) for u in rivals])
    all_rivals_bust = math.prod(bust_prob(u) for u in rivals)
    if variant is Variant.EXTERNAL:
        return PayoffSpec(h=win, h0=0.0, exact=win)
    if variant is Variant.ZERO_SUM:
        form = win.affine(n / (n - 1.0), -1.0 / (n - 1.0))
        return PayoffSpec(h=form, h0=-(1.0 - all_rivals_bust) / (n - 1.0), exact=form)
    h0 = all_rivals_bust if player == n - 1 else 0.0
    return PayoffSpec(h=win, h0=h0, exact=win)


def best_response(
    variant: Variant, player: int, rival_thresholds, tol: float = 1e-12
) -> float:
    """Threshold maximizing the player's expected payoff against fixed rivals.

    At an equilibrium profile this returns the player's own equilibrium
    threshold, which is the Nash fixed-point check.
    """
    return optimal_threshold(stop_payoff_function(variant, player, rival_thresholds), tol)
