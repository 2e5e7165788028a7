"""Interfirm network toolkit: information dynamics over coupled link-formation
histories and stochastic cascading failures on directed shareholding networks.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._firmnet import (  # noqa: F401
    __version__,
    entropy,
    mutual_information,
    active_information_storage,
    transfer_entropy,
    transfer_entropy_entropy_form,
    surrogate_p_value,
    fisher_combine,
    derive_step_params,
    init_shock,
    cascade_run,
    cascade_sweep,
    gen_coupled,
    gen_shareholding,
    summarize_network,
    delayed_mi_curve,
)

__all__ = [
    "__version__",
    "entropy",
    "mutual_information",
    "active_information_storage",
    "transfer_entropy",
    "transfer_entropy_entropy_form",
    "surrogate_p_value",
    "fisher_combine",
    "derive_step_params",
    "init_shock",
    "cascade_run",
    "cascade_sweep",
    "gen_coupled",
    "gen_shareholding",
    "summarize_network",
    "delayed_mi_curve",
]
