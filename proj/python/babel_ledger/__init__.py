"""Multi-asset UTXO ledger with limited liabilities."""

from ._babel_ledger import (  # noqa: F401
    apply_batches,
    brute_force,
    liveness_bound,
    make_swap_batch_scenario,
    min_attractive_amount,
    percentile,
    select_approx,
    select_optimal,
    simulate,
    tx_id,
)
