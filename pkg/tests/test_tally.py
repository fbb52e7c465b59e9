import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elections import scenarios, tally

TURNOUT = scenarios.TOY_TURNOUT
HOUSE = scenarios.TOY_HOUSE


def test_state_winners():
    assert np.array_equal(tally.state_winners([0.53, 0.47, 0.51]),
                          [True, False, True])


def test_state_winners_tie_raises():
    with pytest.raises(tally.TiedState):
        tally.state_winners([0.53, 0.5, 0.47])


def test_state_winners_sweep():
    assert np.array_equal(tally.state_winners([0.9, 0.9, 0.9]),
                          [True, True, True])


def test_popular_totals():
    dem, rep = tally.popular_totals([0.53, 0.47, 0.47], TURNOUT)
    assert dem == pytest.approx(253.0)
    assert rep == pytest.approx(247.0)


def test_scenario_lw():
    r = scenarios.run_scenario("LW")
    t = r.tally
    assert (round(t.dem_pop), round(t.rep_pop)) == (253, 247)
    assert (r.full_a, r.full_b) == (5, 6)
    assert (r.house_a, r.house_b) == (3, 2)
    assert t.carried == ("D", "R", "R")


def test_scenario_ll():
    r = scenarios.run_scenario("LL")
    t = r.tally
    assert (round(t.dem_pop), round(t.rep_pop)) == (261, 239)
    assert (r.full_a, r.full_b) == (3, 8)
    assert (r.house_a, r.house_b) == (1, 4)
    assert t.carried == ("R", "R", "D")


def test_scenario_wl():
    r = scenarios.run_scenario("WL")
    t = r.tally
    assert (round(t.dem_pop), round(t.rep_pop)) == (253, 247)
    assert (r.full_a, r.full_b) == (6, 5)
    assert (r.house_a, r.house_b) == (2, 3)
    assert t.carried == ("R", "D", "D")


def test_rule_equivalences():
    t = scenarios.run_scenario("LW").tally
    assert t.totals(tally.ElectorRule.senate_k(0)) == t.totals(tally.ElectorRule.house_only())
    assert t.totals(tally.ElectorRule.senate_k(2)) == t.totals(tally.ElectorRule.full())
    assert t.totals(tally.ElectorRule.states_won()) == (t.dem_states, t.rep_states)


def test_rule_validation():
    with pytest.raises(ValueError):
        tally.ElectorRule.senate_k(-1)
    with pytest.raises(ValueError):
        tally.electoral_totals([0.6, 0.4, 0.4], TURNOUT, HOUSE,
                               rule=tally.ElectorRule("bogus"))


def test_winner_and_exact_split():
    t = scenarios.run_scenario("WL").tally
    assert t.winner(tally.ElectorRule.full()) == tally.DEM
    assert t.winner(tally.ElectorRule.house_only()) == tally.REP
    # equal split of a 4-elector toy pool has no winner
    split = tally.electoral_totals([0.6, 0.4], [100, 100], [2, 2])
    assert split.winner(tally.ElectorRule.house_only()) is None


shares_st = st.lists(
    st.floats(0.01, 0.99).filter(lambda x: abs(x - 0.5) > 1e-6),
    min_size=3, max_size=8)


@settings(max_examples=100, deadline=None)
@given(shares_st, st.integers(0, 10))
def test_conservation(shares, k):
    n = len(shares)
    turnout = np.full(n, 100)
    house = np.arange(1, n + 1)
    t = tally.electoral_totals(shares, turnout, house)
    dem, rep = t.totals(tally.ElectorRule.senate_k(k))
    assert dem + rep == int(house.sum()) + n * k
    assert t.dem_states + t.rep_states == n
    assert t.dem_pop + t.rep_pop == pytest.approx(turnout.sum())


@settings(max_examples=100, deadline=None)
@given(shares_st, st.integers(0, 7), st.floats(0.001, 0.3))
def test_monotonicity(shares, idx, bump):
    idx = idx % len(shares)
    raised = list(shares)
    raised[idx] = min(0.99, raised[idx] + bump)
    if abs(raised[idx] - 0.5) < 1e-9:
        raised[idx] += 1e-3
    n = len(shares)
    turnout = np.full(n, 100)
    house = np.arange(1, n + 1)
    before = tally.electoral_totals(shares, turnout, house)
    after = tally.electoral_totals(raised, turnout, house)
    for rule in (tally.ElectorRule.full(), tally.ElectorRule.house_only(),
                 tally.ElectorRule.states_won()):
        assert after.totals(rule)[0] >= before.totals(rule)[0]
    assert after.dem_pop >= before.dem_pop


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.01, 0.99).filter(lambda x: abs(x - 0.5) > 1e-6),
                min_size=51, max_size=51))
def test_states_won_never_ties(shares):
    t = tally.electoral_totals(shares, np.full(51, 100), np.full(51, 1),
                               rule=tally.ElectorRule.states_won())
    assert t.winner(tally.ElectorRule.states_won()) is not None


def test_full_scale_totals(dataset):
    shares = dataset.shares[-1]  # 2008
    t = tally.electoral_totals(shares, dataset.turnout, dataset.house_electors)
    dem, rep = t.totals(tally.ElectorRule.full())
    assert dem + rep == 538
    assert dem > 269  # 2008 was a Democratic electoral win
    assert t.dem_pop > t.rep_pop
    assert t.dem_senate == 2 * t.dem_states
