"""Monte Carlo simulation of U.S. presidential elections (1964-2008 data)
from a principal-components model of correlated state voting."""

from .dataset import (
    ElectionDataset,
    STATE_NAMES,
    load_bundled_dataset,
    load_dataset,
    save_dataset,
    two_party_share,
)
from .generator import NoiseVector, SimulatedShares, draw_noise, generate_shares
from .montecarlo import (
    OutcomeRecord,
    RunSummary,
    SweepResult,
    classify,
    emit_figure_data,
    run_batch,
    senate_sweep,
)
from .pca import (
    PcaModel,
    center,
    covariance,
    fit_pca,
    loadings_report,
    variance_explained,
)
from .tally import ElectorRule, TallyResult, electoral_totals, popular_totals, state_winners

__version__ = "0.1.0"

__all__ = [
    "ElectionDataset", "STATE_NAMES", "load_bundled_dataset", "load_dataset",
    "save_dataset", "two_party_share", "NoiseVector", "SimulatedShares",
    "draw_noise", "generate_shares", "OutcomeRecord", "RunSummary",
    "SweepResult", "classify", "emit_figure_data", "run_batch", "senate_sweep",
    "PcaModel", "center", "covariance", "fit_pca", "loadings_report",
    "variance_explained", "ElectorRule", "TallyResult", "electoral_totals",
    "popular_totals", "state_winners", "__version__",
]
