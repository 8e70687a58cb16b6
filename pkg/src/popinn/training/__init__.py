from .adam import AdamState, adam_step
from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint, surrogate_from_checkpoint
from .loop import EpochRecord, TrainResult, read_loss_csv, train, write_loss_csv
from .losses import LossWeights, loss_bc, loss_ic, loss_pde, pde_residual, total_loss
from .models import FieldSurrogate, LstmSurrogate, MlpSurrogate, build_surrogate
from .sampling import SamplerConfig, sample_points

__all__ = [
    "AdamState",
    "adam_step",
    "Checkpoint",
    "save_checkpoint",
    "load_checkpoint",
    "surrogate_from_checkpoint",
    "EpochRecord",
    "TrainResult",
    "train",
    "write_loss_csv",
    "read_loss_csv",
    "LossWeights",
    "loss_pde",
    "loss_ic",
    "loss_bc",
    "pde_residual",
    "total_loss",
    "MlpSurrogate",
    "LstmSurrogate",
    "FieldSurrogate",
    "build_surrogate",
    "SamplerConfig",
    "sample_points",
]
