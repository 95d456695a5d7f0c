import math

import pytest

from showdown.numerics import Bracket, integrate_adaptive, solve_root
from showdown.score import BUST, bust_prob
from showdown.sequential import (
    MAX_PLAYERS,
    SeqState,
    advise,
    coalition_12,
    coalition_13,
    coalition_second_threshold,
    seq_policy,
    theta,
    win_matrix,
    win_prob,
)
from showdown.simulator import SimConfig, StrategyProfile, run
from showdown.simultaneous import Variant

E = math.e


# --- theta ------------------------------------------------------------------


def test_theta_base_case():
    assert theta(1) == 0.0


def test_theta_reference_values():
    assert round(theta(2), 4) == 0.5706
    assert round(theta(10), 4) == 0.8730


def test_theta_strictly_increasing():
    values = [theta(n) for n in range(1, MAX_PLAYERS + 1)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_theta_defining_residual():
    for n in range(2, 11):
        th = theta(n)
        residual = bust_prob(th) ** (n - 1) - (BUST ** (n - 1)).integral(th, 1.0)
        assert abs(residual) < 1e-10


def test_theta_rejects_bad_n():
    with pytest.raises(ValueError):
        theta(0)
    with pytest.raises(ValueError):
        theta(MAX_PLAYERS + 1)


# --- policy / advice ----------------------------------------------------------


def test_seq_policy_first_player():
    assert seq_policy(SeqState(remaining=5, best_score=0.0)) == theta(5)


def test_seq_policy_last_player():
    assert seq_policy(SeqState(remaining=1, best_score=0.7)) == 0.7


def test_seq_policy_examples():
    assert seq_policy(SeqState(remaining=3, best_score=0.2)) == pytest.approx(
        theta(3)
    )
    assert round(seq_policy(SeqState(remaining=3, best_score=0.2)), 4) == 0.6879


def test_advise_spin_below_threshold():
    assert advise(SeqState(remaining=2, best_score=0.0), 0.56) == "spin"


def test_advise_stop_above_best():
    assert advise(SeqState(remaining=1, best_score=0.4), 0.41) == "stop"


def test_advise_spin_when_behind():
    assert advise(SeqState(remaining=5, best_score=0.9), 0.85) == "spin"


def test_advise_stop_at_exact_threshold():
    th = theta(4)
    assert advise(SeqState(remaining=4, best_score=0.0), th) == "stop"


def test_advise_never_stops_below_best():
    state = SeqState(remaining=3, best_score=0.65)
    for s in (0.0, 0.3, 0.649):
        assert advise(state, s) == "spin"


def test_state_validation():
    with pytest.raises(ValueError):
        SeqState(remaining=0, best_score=0.0)
    with pytest.raises(ValueError):
        SeqState(remaining=2, best_score=1.2)


# --- win probability functions ------------------------------------------------


def test_win_prob_single_remaining():
    # the last mover beats best score x whenever the spin sum lands in (x, 1]
    assert win_prob(1, 1, 0.5) == pytest.approx(math.exp(0.5) * 0.5, abs=1e-12)
    assert win_prob(1, 1, 0.5) == pytest.approx(1.0 - bust_prob(0.5), abs=1e-12)


def test_win_prob_exppoly_vs_quadrature():
    got = win_prob(2, 1, 0.6)
    ref = math.exp(0.6) * integrate_adaptive(BUST, 0.6, 1.0, 1e-13)
    assert abs(got - ref) < 1e-10


def test_win_prob_domain_error():
    with pytest.raises(ValueError):
        win_prob(3, 1, 0.1)  # below theta(3)
    with pytest.raises(ValueError):
        win_prob(3, 4, 0.9)


def test_win_prob_recursion_consistency():
    # second of two movers, best score x: bust_prob(x) times a fresh win plus
    # the expected follow-up when the first mover survives
    x = 0.7
    lhs = win_prob(2, 2, x)
    inner = lambda t: win_prob(1, 1, t)
    rhs = bust_prob(x) * inner(x) + math.exp(x) * integrate_adaptive(
        inner, x, 1.0, 1e-12
    )
    assert abs(lhs - rhs) < 1e-10


# --- win matrix ---------------------------------------------------------------


def test_win_matrix_two_players():
    eq = win_matrix(2)
    assert round(eq.win_probs[0], 4) == 0.4250
    assert round(eq.win_probs[1], 4) == 0.5750


def test_win_matrix_assembles_from_win_prob():
    # second seat of two: bust times a sure follow-up win, plus the integral
    # of the last mover's win function over the survivor's score range
    th = theta(2)
    tail = integrate_adaptive(lambda t: win_prob(1, 1, t), th, 1.0, 1e-12)
    assembled = bust_prob(th) * 1.0 + math.exp(th) * tail
    assert abs(assembled - win_matrix(2).win_probs[1]) < 1e-10


def test_win_matrix_three_players():
    eq = win_matrix(3)
    assert [round(p, 4) for p in eq.win_probs] == [0.2859, 0.3248, 0.3893]


def test_win_matrix_ten_players_last_seat():
    assert round(win_matrix(10).win_probs[-1], 4) == 0.1088


def test_win_matrix_single_player():
    eq = win_matrix(1)
    assert eq.win_probs == (1.0,)
    assert eq.thetas == (0.0,)


def test_win_matrix_row_sums():
    for n in range(2, 11):
        assert abs(sum(win_matrix(n).win_probs) - 1.0) < 1e-9


def test_win_matrix_increasing_in_seat():
    # later movers are better off: they see more information
    for n in range(2, 11):
        probs = win_matrix(n).win_probs
        assert all(b > a for a, b in zip(probs, probs[1:]))


def test_win_matrix_against_simulation():
    for n, seed in ((2, 7), (3, 8), (5, 9)):
        eq = win_matrix(n)
        rep = run(
            "sequential",
            Variant.EXTERNAL,
            StrategyProfile.sequential_optimal(n),
            SimConfig(trials=200_000, seed=seed, chunk_count=4),
        )
        for est, ref in zip(rep.win_rates, eq.win_probs):
            assert abs(est - ref) <= 4 * rep.stderr(ref)


# --- coalitions ---------------------------------------------------------------


def test_second_threshold_residual():
    t = coalition_second_threshold(0.5)
    lhs = -math.exp(t) * (2 * t - 3) + t * math.exp(0.5) * (0.5 - 1.0)
    assert abs(lhs - E) < 1e-10


def test_second_threshold_after_leader_bust():
    # with no score on the board the partner faces the plain two-player game
    oracle = solve_root(
        lambda t: -math.exp(t) * (2 * t - 3) - t - E, Bracket(0.0, 1.0), 1e-13
    )
    got = coalition_second_threshold(0.0)
    assert abs(got - oracle) < 1e-12
    assert abs(got - theta(2)) < 1e-10


def test_second_threshold_monotone_and_bounded():
    values = [coalition_second_threshold(x / 20) for x in range(21)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert values[0] == pytest.approx(theta(2), abs=1e-10)
    assert values[-1] == pytest.approx(1.0, abs=1e-9)


def test_coalition_12_report():
    rep = coalition_12()
    assert rep.coalition == "first-and-second"
    assert rep.victim == 3
    assert rep.first_threshold == pytest.approx(0.63386, abs=1e-4)
    assert rep.victim_win_prob == pytest.approx(0.3867, abs=5e-4)
    assert rep.nash_baseline == pytest.approx(win_matrix(3).win_probs[2], abs=1e-12)
    assert rep.victim_win_prob < rep.nash_baseline


def test_coalition_13_report():
    rep = coalition_13()
    assert rep.coalition == "first-and-third"
    assert rep.victim == 2
    assert rep.first_threshold == pytest.approx(0.75017, abs=1e-4)
    assert rep.victim_win_prob == pytest.approx(0.32262, abs=5e-5)
    assert rep.nash_baseline == pytest.approx(win_matrix(3).win_probs[1], abs=1e-12)
    assert rep.victim_win_prob < rep.nash_baseline
