from .lstm import (
    DropoutSpec,
    LstmLayer,
    LstmParams,
    gate_count,
    lstm_flatten,
    lstm_forward,
    lstm_init,
    lstm_unflatten,
)
from .mlp import (
    DEFAULT_WIDTHS,
    MlpParams,
    mlp_flatten,
    mlp_forward,
    mlp_init,
    mlp_tape_forward,
    mlp_unflatten,
)

__all__ = [
    "MlpParams",
    "mlp_init",
    "mlp_forward",
    "mlp_flatten",
    "mlp_unflatten",
    "mlp_tape_forward",
    "DEFAULT_WIDTHS",
    "LstmParams",
    "LstmLayer",
    "DropoutSpec",
    "lstm_init",
    "lstm_forward",
    "gate_count",
    "lstm_flatten",
    "lstm_unflatten",
]
