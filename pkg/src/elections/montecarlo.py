"""Batches of simulated elections: classification and aggregation.

Each trial is a pure function of (seed, trial_index), so trials can run in
any order or in parallel; aggregation is an associative merge of integer
counters, which makes serial and parallel runs bit-identical.  One noise
stream drives every elector rule per trial (paired comparison), so
rule-to-rule differences are not inflated by sampling noise.

Outcome codes: first letter is the popular winner's result with House and
Senate electors (W above 269 of 538), second letter with House electors
alone (W above 218 of 436).  An election is unpopular when the popular
winner fails to WIN, so an exact elector split counts as L for that
letter; exact splits are additionally reported in separate counters
(exact_full_splits / exact_house_splits), never silently dropped.  This
keeps the Senate-sweep identities exact: the k=0 entry equals
unpopular_house and the k=2 entry equals unpopular_full.  Per-state or
exact popular-vote ties have probability zero under the continuous model
and are counted as degenerate trials rather than resampled, since
resampling would bias frequencies.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dataset import CALIFORNIA, ElectionDataset
from .generator import draw_noise_batch, generate_shares_batch
from .pca import PcaModel
from .tally import DEM, REP, ElectorRule, TallyResult

CODES = ("WW", "WL", "LW", "LL")

DEFAULT_BIN_WIDTH = 20
_CHUNK = 4096


class MonteCarloError(Exception):
    pass


class ExactPopularTie(MonteCarloError):
    """Popular vote split exactly in half; no popular winner exists."""


class EmptyInput(MonteCarloError):
    """Figure emission requested from an empty record stream."""


@dataclass(frozen=True)
class OutcomeRecord:
    """Classification of a single simulated election."""

    trial: int
    code: str
    popular_winner: str
    electoral_winner_full: str | None
    signed_electoral_diff: int        # Democratic full electors - Republican
    popular_winner_H: int
    popular_winner_S: int
    carried_california: bool | None   # None when the tally is not 51 states


def classify(tally: TallyResult, trial: int = 0) -> OutcomeRecord:
    """Assign the two-letter outcome code to one tallied election."""
    if tally.dem_pop == tally.rep_pop:
        raise ExactPopularTie(f"popular vote tied at {tally.dem_pop}")
    pw = DEM if tally.dem_pop > tally.rep_pop else REP
    house_total = tally.dem_house + tally.rep_house
    n_states = tally.dem_states + tally.rep_states
    full_total = house_total + tally.dem_senate + tally.rep_senate

    dem_full = tally.dem_house + tally.dem_senate
    pw_house = tally.dem_house if pw == DEM else tally.rep_house
    pw_senate = tally.dem_senate if pw == DEM else tally.rep_senate
    pw_full = pw_house + pw_senate

    # exact splits count as L: the popular winner fails to win a majority
    first = "W" if 2 * pw_full > full_total else "L"
    second = "W" if 2 * pw_house > house_total else "L"
    code = first + second

    if 2 * dem_full > full_total:
        winner_full = DEM
    elif 2 * dem_full < full_total:
        winner_full = REP
    else:
        winner_full = None
    carried_ca = tally.carried[CALIFORNIA] == pw if n_states == 51 else None
    return OutcomeRecord(
        trial=trial,
        code=code,
        popular_winner=pw,
        electoral_winner_full=winner_full,
        signed_electoral_diff=2 * dem_full - full_total,
        popular_winner_H=pw_house,
        popular_winner_S=pw_senate,
        carried_california=carried_ca,
    )


@dataclass
class BatchAccumulator:
    """Associatively mergeable partial summary of a trial range."""

    trials: int = 0
    counts: dict = field(default_factory=lambda: {c: 0 for c in CODES})
    tied_state: int = 0
    tied_popular: int = 0
    full_splits: int = 0
    house_splits: int = 0
    dem_full_wins: int = 0
    states_won_unpopular: int = 0
    hist: dict = field(default_factory=dict)       # bin lower edge -> count
    crosstab: dict = field(default_factory=lambda: {
        p: {"carried": 0, "missed": 0} for p in (DEM, REP)})
    records: list | None = None

    def merge(self, other: "BatchAccumulator") -> "BatchAccumulator":
        out = BatchAccumulator()
        out.trials = self.trials + other.trials
        out.counts = {c: self.counts[c] + other.counts[c] for c in CODES}
        out.tied_state = self.tied_state + other.tied_state
        out.tied_popular = self.tied_popular + other.tied_popular
        out.full_splits = self.full_splits + other.full_splits
        out.house_splits = self.house_splits + other.house_splits
        out.dem_full_wins = self.dem_full_wins + other.dem_full_wins
        out.states_won_unpopular = self.states_won_unpopular + other.states_won_unpopular
        out.hist = dict(self.hist)
        for lo, c in other.hist.items():
            out.hist[lo] = out.hist.get(lo, 0) + c
        out.crosstab = {p: {k: self.crosstab[p][k] + other.crosstab[p][k]
                            for k in ("carried", "missed")} for p in (DEM, REP)}
        if self.records is not None or other.records is not None:
            out.records = list(self.records or []) + list(other.records or [])
        return out


@dataclass(frozen=True)
class RunSummary:
    """Aggregate results of one batch, a pure function of (dataset, seed, trials)."""

    trials: int
    seed: int
    n_classified: int
    counts: dict
    freq: dict
    unpopular_full: float
    unpopular_house: float
    dem_win_rate: float
    states_won_unpopular: float
    diff_histogram: list          # [lo, hi, count] rows, restricted to LW/LL trials
    bin_width: int
    california_crosstab: dict
    degenerate: dict
    exact_full_splits: int = 0
    exact_house_splits: int = 0
    records: tuple | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "n_classified": self.n_classified,
            "counts": self.counts,
            "freq": self.freq,
            "unpopular_full": self.unpopular_full,
            "unpopular_house": self.unpopular_house,
            "dem_win_rate": self.dem_win_rate,
            "states_won_unpopular": self.states_won_unpopular,
            "diff_histogram": {"bin_width": self.bin_width,
                               "bins": self.diff_histogram},
            "california_crosstab": self.california_crosstab,
            "degenerate": self.degenerate,
            "exact_full_splits": self.exact_full_splits,
            "exact_house_splits": self.exact_house_splits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _trial_arrays(model: PcaModel, dataset: ElectionDataset,
                  seed: int, start: int, count: int) -> dict:
    """Vectorized per-trial quantities for trials start..start+count-1."""
    z = draw_noise_batch(seed, start, count, model.n_components)
    clamped = np.clip(generate_shares_batch(model, z), 0.0, 1.0)
    turnout = dataset.turnout.astype(float)
    total_pop = turnout.sum()
    dem_pop = clamped @ turnout
    win = clamped > 0.5
    house_d = win @ dataset.house_electors
    states_d = win.sum(axis=1)
    return {
        "tied_state": np.any(clamped == 0.5, axis=1),
        "dem_pop": dem_pop,
        "pop_tie": dem_pop * 2 == total_pop,
        "pw_dem": dem_pop * 2 > total_pop,
        "house_d": house_d,
        "states_d": states_d,
        "carried_ca": win[:, CALIFORNIA],
    }


def partial_batch(model: PcaModel, dataset: ElectionDataset, seed: int,
                  start: int, count: int, bin_width: int = DEFAULT_BIN_WIDTH,
                  keep_records: bool = False) -> BatchAccumulator:
    """Summarize one contiguous trial range."""
    a = _trial_arrays(model, dataset, seed, start, count)
    house_total = int(dataset.house_electors.sum())
    n_states = len(dataset.house_electors)
    full_total = house_total + dataset.senate_electors_base * n_states

    acc = BatchAccumulator(trials=count)
    acc.tied_state = int(a["tied_state"].sum())
    degenerate = a["tied_state"]
    acc.tied_popular = int((a["pop_tie"] & ~degenerate).sum())
    degenerate = degenerate | a["pop_tie"]
    ok = ~degenerate

    house_d = a["house_d"]
    states_d = a["states_d"]
    full_d = house_d + dataset.senate_electors_base * states_d
    pw_dem = a["pw_dem"]
    pw_house = np.where(pw_dem, house_d, house_total - house_d)
    pw_full = np.where(pw_dem, full_d, full_total - full_d)
    pw_states = np.where(pw_dem, states_d, n_states - states_d)

    # exact splits count as L for either letter; tracked separately
    win_full = 2 * pw_full > full_total
    win_house = 2 * pw_house > house_total
    acc.full_splits = int(((2 * pw_full == full_total) & ok).sum())
    acc.house_splits = int(((2 * pw_house == house_total) & ok).sum())

    # 0=WW 1=WL 2=LW 3=LL
    codes = 2 * (~win_full).astype(int) + (~win_house).astype(int)
    code_names = np.array(CODES)[codes]
    for i, name in enumerate(CODES):
        acc.counts[name] = int(((codes == i) & ok).sum())

    acc.dem_full_wins = int(((2 * full_d > full_total) & ok).sum())
    acc.states_won_unpopular = int(((2 * pw_states < n_states) & ok).sum())

    diffs = 2 * full_d - full_total
    unpop = ok & ((codes == 2) | (codes == 3))
    for d in diffs[unpop]:
        lo = int(bin_width * np.floor(d / bin_width))
        acc.hist[lo] = acc.hist.get(lo, 0) + 1

    pw_carried_ca = np.where(pw_dem, a["carried_ca"], ~a["carried_ca"])
    for party, is_party in ((DEM, pw_dem), (REP, ~pw_dem)):
        acc.crosstab[party]["carried"] = int((ok & is_party & pw_carried_ca).sum())
        acc.crosstab[party]["missed"] = int((ok & is_party & ~pw_carried_ca).sum())

    if keep_records:
        acc.records = []
        dem_full_win = 2 * full_d > full_total
        dem_full_lose = 2 * full_d < full_total
        for i in np.nonzero(ok)[0]:
            winner_full = DEM if dem_full_win[i] else REP if dem_full_lose[i] else None
            acc.records.append(OutcomeRecord(
                trial=start + int(i),
                code=str(code_names[i]),
                popular_winner=DEM if pw_dem[i] else REP,
                electoral_winner_full=winner_full,
                signed_electoral_diff=int(diffs[i]),
                popular_winner_H=int(pw_house[i]),
                popular_winner_S=int(dataset.senate_electors_base * pw_states[i]),
                carried_california=bool(pw_carried_ca[i]),
            ))
    return acc


def finalize(acc: BatchAccumulator, seed: int,
             bin_width: int = DEFAULT_BIN_WIDTH) -> RunSummary:
    """Turn merged integer counters into reported frequencies."""
    n = sum(acc.counts.values())
    freq = {c: (acc.counts[c] / n if n else 0.0) for c in CODES}
    bins = [[lo, lo + bin_width, acc.hist[lo]] for lo in sorted(acc.hist)]
    return RunSummary(
        trials=acc.trials,
        seed=seed,
        n_classified=n,
        counts=dict(acc.counts),
        freq=freq,
        unpopular_full=(acc.counts["LW"] + acc.counts["LL"]) / n if n else 0.0,
        unpopular_house=(acc.counts["WL"] + acc.counts["LL"]) / n if n else 0.0,
        dem_win_rate=acc.dem_full_wins / n if n else 0.0,
        states_won_unpopular=acc.states_won_unpopular / n if n else 0.0,
        diff_histogram=bins,
        bin_width=bin_width,
        california_crosstab={p: dict(acc.crosstab[p]) for p in (DEM, REP)},
        degenerate={"tied_state": acc.tied_state, "tied_popular": acc.tied_popular},
        exact_full_splits=acc.full_splits,
        exact_house_splits=acc.house_splits,
        records=tuple(acc.records) if acc.records is not None else None,
    )


def run_batch(model: PcaModel, dataset: ElectionDataset, trials: int, seed: int,
              threads: int = 1, bin_width: int = DEFAULT_BIN_WIDTH,
              keep_records: bool = False, chunk_size: int = _CHUNK) -> RunSummary:
    """Simulate, tally, and classify `trials` elections."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    starts = list(range(0, trials, chunk_size))

    def work(start):
        return partial_batch(model, dataset, seed, start,
                             min(chunk_size, trials - start),
                             bin_width=bin_width, keep_records=keep_records)

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    acc = parts[0]
    for p in parts[1:]:
        acc = acc.merge(p)
    return finalize(acc, seed, bin_width)


@dataclass(frozen=True)
class SweepResult:
    """Unpopular-election frequency as the per-state Senate elector count grows."""

    trials: int
    seed: int
    by_k: dict                 # k -> frequency
    states_won_limit: float    # limiting rule: most states carried wins

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed,
                "by_k": {str(k): v for k, v in self.by_k.items()},
                "states_won_limit": self.states_won_limit}


def senate_sweep(model: PcaModel, dataset: ElectionDataset, trials: int,
                 seed: int, k_values=(0, 2, 10, 100)) -> SweepResult:
    """Unpopular frequency under SENATE_K for each k, on one shared trial stream.

    A trial is unpopular when the popular winner fails to win a strict
    majority of the k-rule elector pool, so an exact split counts.  Hence
    by_k[0] equals unpopular_house and by_k[2] equals unpopular_full,
    exactly, on the same seed and trial count.
    """
    if any(k < 0 for k in k_values):
        raise ValueError("all k must be >= 0")
    house_total = int(dataset.house_electors.sum())
    n_states = len(dataset.house_electors)

    pw_house_parts, pw_states_parts, ok_parts = [], [], []
    for start in range(0, trials, _CHUNK):
        count = min(_CHUNK, trials - start)
        a = _trial_arrays(model, dataset, seed, start, count)
        ok = ~(a["tied_state"] | a["pop_tie"])
        pw_house_parts.append(np.where(a["pw_dem"], a["house_d"],
                                       house_total - a["house_d"]))
        pw_states_parts.append(np.where(a["pw_dem"], a["states_d"],
                                        n_states - a["states_d"]))
        ok_parts.append(ok)
    pw_house = np.concatenate(pw_house_parts)
    pw_states = np.concatenate(pw_states_parts)
    ok = np.concatenate(ok_parts)
    n = int(ok.sum())

    by_k = {}
    for k in k_values:
        pool = house_total + k * n_states
        pw_total = pw_house + k * pw_states
        by_k[int(k)] = int((ok & (2 * pw_total <= pool)).sum()) / n
    limit = int((ok & (2 * pw_states < n_states)).sum()) / n
    return SweepResult(trials=trials, seed=seed, by_k=by_k, states_won_limit=limit)


def emit_figure_data(records, which: str, bin_width: int = DEFAULT_BIN_WIDTH):
    """Tabular data behind the scatter/histogram figures.

    Returns (header, rows).  `which` is one of scatter_HS, diff_histogram,
    california_scatter.
    """
    records = list(records or [])
    if not records:
        raise EmptyInput("no records to emit")
    if which == "scatter_HS":
        return (["H", "S", "code"],
                [(r.popular_winner_H, r.popular_winner_S, r.code) for r in records])
    if which == "diff_histogram":
        hist: dict[int, int] = {}
        for r in records:
            if r.code in ("LW", "LL"):
                lo = int(bin_width * np.floor(r.signed_electoral_diff / bin_width))
                hist[lo] = hist.get(lo, 0) + 1
        return (["bin_lo", "bin_hi", "count"],
                [(lo, lo + bin_width, hist[lo]) for lo in sorted(hist)])
    if which == "california_scatter":
        return (["H", "S", "popular_winner", "carried_california"],
                [(r.popular_winner_H, r.popular_winner_S, r.popular_winner,
                  int(bool(r.carried_california))) for r in records])
    raise ValueError(f"unknown figure kind {which!r}")
