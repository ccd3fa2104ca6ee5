"""Training loop with early stopping on held-out loss."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from vulspg.errors import ConfigError
from vulspg.model import (
    EncodedSpg,
    Model,
    ModelConfig,
    encode_for_model,
    loss as model_loss,
    predict_label,
)
from vulspg.spg import Spg
from vulspg.tensor import AdamState, adam_step

MAX_PATIENCE = 200


@dataclass
class TrainConfig:
    model: ModelConfig = field(default_factory=ModelConfig)
    lr: float = 0.001
    patience: int = 20
    max_epochs: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.patience < 0 or self.patience > MAX_PATIENCE:
            raise ConfigError(f"patience must be within [0, {MAX_PATIENCE}], got {self.patience}")
        if self.max_epochs < 1:
            raise ConfigError("max_epochs must be positive")


@dataclass
class TrainResult:
    model: Model
    epochs_run: int
    best_epoch: int
    best_val_loss: float
    history: list[dict] = field(default_factory=list)


def _mean_loss(model: Model, encoded: list[EncodedSpg]) -> float:
    total = 0.0
    for enc in encoded:
        total += float(model_loss(model.forward(enc), enc.label).data)
    return total / len(encoded)


def accuracy(model: Model, encoded: list[EncodedSpg]) -> float:
    hits = sum(1 for enc in encoded if predict_label(model.forward(enc)) == enc.label)
    return hits / len(encoded)


def train(
    model: Model,
    train_spgs: list[Spg],
    cfg: TrainConfig,
    val_spgs: list[Spg] | None = None,
    verbose: bool = False,
) -> TrainResult:
    """Fit the model in place; restores the best held-out checkpoint.

    Runs one optimizer step per graph. Stops once `patience` epochs pass
    without a held-out loss improvement (patience 0 runs exactly one
    epoch); the held-out set defaults to the training graphs.
    """
    labels = {g.label for g in train_spgs}
    if not train_spgs:
        raise ConfigError("training set is empty")
    if labels != {0, 1}:
        raise ConfigError(f"training set must contain both labels, got {sorted(labels)}")

    encoded = [encode_for_model(g, model) for g in train_spgs]
    held_out = (
        [encode_for_model(g, model) for g in val_spgs] if val_spgs else encoded
    )
    params = model.named_parameters()
    state = AdamState(lr=cfg.lr)
    rng = np.random.default_rng(cfg.seed)

    best_loss = float("inf")
    best_epoch = 0
    best_params = {k: p.data.copy() for k, p in params.items()}
    history: list[dict] = []

    epoch = 0
    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(len(encoded))
        epoch_loss = 0.0
        for idx in order:
            enc = encoded[idx]
            model.zero_grad()
            l = model_loss(model.forward(enc), enc.label)
            l.backward()
            for p in params.values():
                if p.grad is None:  # relation unused by this graph
                    p.grad = np.zeros_like(p.data)
            adam_step(params, state)
            epoch_loss += float(l.data)
        val_loss = _mean_loss(model, held_out)
        history.append(
            {"epoch": epoch, "train_loss": epoch_loss / len(encoded), "val_loss": val_loss}
        )
        if verbose:
            print(f"epoch {epoch}: train {epoch_loss / len(encoded):.4f} held-out {val_loss:.4f}")
        if val_loss < best_loss:
            best_loss = val_loss
            best_epoch = epoch
            best_params = {k: p.data.copy() for k, p in params.items()}
        if epoch - best_epoch >= cfg.patience:
            break

    for k, p in params.items():
        p.data = best_params[k].copy()
    return TrainResult(
        model=model,
        epochs_run=epoch,
        best_epoch=best_epoch,
        best_val_loss=best_loss,
        history=history,
    )
