import numpy as np
import pytest

from elections import montecarlo as mc
from elections import scenarios
from elections.generator import draw_noise, generate_shares
from elections.tally import DEM, REP, TallyResult, electoral_totals


def make_tally(dem_house, dem_states, dem_pop=6.0e7, rep_pop=5.9e7,
               house_total=436, n_states=51):
    carried = tuple([DEM] * dem_states + [REP] * (n_states - dem_states))
    return TallyResult(
        dem_pop=dem_pop, rep_pop=rep_pop,
        dem_house=dem_house, rep_house=house_total - dem_house,
        dem_senate=2 * dem_states, rep_senate=2 * (n_states - dem_states),
        dem_states=dem_states, rep_states=n_states - dem_states,
        carried=carried,
    )


def test_classify_scenarios():
    for code in ("LW", "LL", "WL"):
        rec = mc.classify(scenarios.run_scenario(code).tally)
        assert rec.code == code
        assert rec.popular_winner == DEM


def test_classify_sweep_is_ww():
    t = electoral_totals([0.9] * 3, scenarios.TOY_TURNOUT, scenarios.TOY_HOUSE)
    rec = mc.classify(t)
    assert rec.code == "WW"
    assert rec.electoral_winner_full == DEM
    assert rec.carried_california is None  # not a 51-state tally


def test_classify_close_2000_style():
    # popular winner holds 225 House electors and 42 Senate electors:
    # loses the full college 267-271 but wins the House-only pool 225-211
    t = make_tally(dem_house=225, dem_states=21)
    rec = mc.classify(t, trial=9)
    assert rec.code == "LW"
    assert rec.trial == 9
    assert (rec.popular_winner_H, rec.popular_winner_S) == (225, 42)
    assert rec.signed_electoral_diff == 2 * 267 - 538 == -4
    assert rec.electoral_winner_full == REP
    assert rec.carried_california is True  # CA is index 4, inside the D block


def test_classify_exact_splits_count_as_l():
    t = make_tally(dem_house=219, dem_states=25)  # full pool splits 269-269
    rec = mc.classify(t)
    assert rec.code == "LW"
    assert rec.electoral_winner_full is None
    assert rec.signed_electoral_diff == 0
    t2 = make_tally(dem_house=218, dem_states=25)  # house 218-218, full 268-270
    rec2 = mc.classify(t2)
    assert rec2.code == "LL"


def test_classify_popular_tie_raises():
    t = make_tally(dem_house=300, dem_states=30, dem_pop=5e7, rep_pop=5e7)
    with pytest.raises(mc.ExactPopularTie):
        mc.classify(t)


def test_single_trial_run(model, dataset):
    s = mc.run_batch(model, dataset, trials=1, seed=0)
    assert s.trials == 1 and s.n_classified == 1
    assert sorted(s.freq.values(), reverse=True)[0] == 1.0
    assert sum(s.counts.values()) == 1


def test_run_batch_counts_consistent(summary_20k):
    s = summary_20k
    assert s.trials == 20000
    assert s.n_classified + s.degenerate["tied_state"] + s.degenerate["tied_popular"] == 20000
    assert sum(s.counts.values()) == s.n_classified
    assert s.unpopular_full == (s.counts["LW"] + s.counts["LL"]) / s.n_classified
    assert s.unpopular_house == (s.counts["WL"] + s.counts["LL"]) / s.n_classified
    assert abs(sum(s.freq.values()) - 1.0) < 1e-12
    ct = s.california_crosstab
    assert sum(ct[p][k] for p in ("D", "R") for k in ("carried", "missed")) == s.n_classified
    assert sum(c for _, _, c in s.diff_histogram) == s.counts["LW"] + s.counts["LL"]


def test_records_match_per_trial_pipeline(model, dataset, summary_20k):
    by_trial = {r.trial: r for r in summary_20k.records}
    for trial in list(range(50)) + [4096, 11111, 19999]:
        z = draw_noise(0, trial, model.n_components)
        shares = generate_shares(model, z).clamped
        t = electoral_totals(shares, dataset.turnout, dataset.house_electors)
        assert mc.classify(t, trial=trial) == by_trial[trial]


def test_merge_associativity(model, dataset):
    whole = mc.partial_batch(model, dataset, seed=3, start=0, count=3000)
    a = mc.partial_batch(model, dataset, seed=3, start=0, count=1000)
    b = mc.partial_batch(model, dataset, seed=3, start=1000, count=1500)
    c = mc.partial_batch(model, dataset, seed=3, start=2500, count=500)
    left = a.merge(b).merge(c)
    right = a.merge(b.merge(c))
    for merged in (left, right):
        assert mc.finalize(merged, seed=3) == mc.finalize(whole, seed=3)


def test_serial_parallel_bit_identical(model, dataset):
    serial = mc.run_batch(model, dataset, trials=20000, seed=0, threads=1)
    parallel = mc.run_batch(model, dataset, trials=20000, seed=0, threads=4)
    assert serial.to_json() == parallel.to_json()


def test_chunk_size_invariance(model, dataset):
    a = mc.run_batch(model, dataset, trials=5000, seed=1, chunk_size=4096)
    b = mc.run_batch(model, dataset, trials=5000, seed=1, chunk_size=777)
    assert a.to_json() == b.to_json()


def test_sweep_identities(summary_20k, sweep_20k):
    s, sw = summary_20k, sweep_20k
    assert sw.by_k[0] == s.unpopular_house
    assert sw.by_k[2] == s.unpopular_full
    assert sw.states_won_limit == s.states_won_unpopular
    assert sw.trials == s.trials and sw.seed == s.seed


def test_sweep_values_sane(sweep_20k):
    for k, freq in sweep_20k.by_k.items():
        assert 0.03 <= freq <= 0.09, (k, freq)
    assert 0.03 <= sweep_20k.states_won_limit <= 0.09


def test_sweep_rejects_negative_k(model, dataset):
    with pytest.raises(ValueError):
        mc.senate_sweep(model, dataset, trials=10, seed=0, k_values=(-1,))


def test_run_batch_rejects_zero_trials(model, dataset):
    with pytest.raises(ValueError):
        mc.run_batch(model, dataset, trials=0, seed=0)


def test_summary_json_round_trip(summary_20k):
    import json

    d = json.loads(summary_20k.to_json())
    assert d["trials"] == 20000
    assert set(d["counts"]) == set(mc.CODES)
    assert d["diff_histogram"]["bin_width"] == mc.DEFAULT_BIN_WIDTH


def test_emit_figure_data(summary_20k):
    header, rows = mc.emit_figure_data(summary_20k.records, "scatter_HS")
    assert header == ["H", "S", "code"]
    assert len(rows) == summary_20k.n_classified
    header, rows = mc.emit_figure_data(summary_20k.records, "diff_histogram")
    assert sum(r[2] for r in rows) == (summary_20k.counts["LW"]
                                       + summary_20k.counts["LL"])
    header, rows = mc.emit_figure_data(summary_20k.records, "california_scatter")
    assert len(rows) == summary_20k.n_classified


def test_emit_figure_data_errors(summary_20k):
    with pytest.raises(mc.EmptyInput):
        mc.emit_figure_data([], "scatter_HS")
    with pytest.raises(ValueError):
        mc.emit_figure_data(summary_20k.records, "pie_chart")


def test_emit_histogram_empty_when_all_ww():
    rec = mc.OutcomeRecord(trial=0, code="WW", popular_winner=DEM,
                           electoral_winner_full=DEM, signed_electoral_diff=100,
                           popular_winner_H=300, popular_winner_S=60,
                           carried_california=True)
    header, rows = mc.emit_figure_data([rec], "diff_histogram")
    assert rows == []
