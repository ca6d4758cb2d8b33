"""Gaussian Naive Bayes ranking of candidate phrases.

Per-class, per-dimension Gaussians with sample variances (ddof=1; classes
with a single example get variance 0 before smoothing). Every variance is
raised by var_smoothing times the largest per-dimension variance of the
pooled training data, so degenerate dimensions cannot saturate the
likelihoods. The positive-class posterior, computed in log space, is the
confidence score used for ranking.

Serialized model format (text, UTF-8, LF; one field per line):

    SURFKE-GNB
    version 1
    config <JSON, sorted keys>
    dim <int>
    var_smoothing <float.hex>
    priors <pos hex> <neg hex>
    mean_pos <d hex floats>
    var_pos <d hex floats>
    mean_neg <d hex floats>
    var_neg <d hex floats>

float.hex round-trips exactly, so write/read is lossless and a fixed model
always serializes to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .candidates import CandidatePhrase
from .errors import ModelFormatError, TrainingError

MAGIC = "SURFKE-GNB"
FORMAT_VERSION = 1


@dataclass
class GnbModel:
    prior_pos: float
    prior_neg: float
    mean_pos: np.ndarray
    mean_neg: np.ndarray
    var_pos: np.ndarray
    var_neg: np.ndarray
    var_smoothing: float
    config: Optional[dict] = None

    @property
    def dim(self) -> int:
        return self.mean_pos.shape[0]


def fit(
    features: np.ndarray,
    labels: Sequence[bool],
    var_smoothing: float = 1e-9,
    config: Optional[dict] = None,
) -> GnbModel:
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    if features.ndim != 2 or features.shape[0] != labels.shape[0]:
        raise TrainingError("features must be N x d with one label per row")
    if features.shape[0] < 2:
        raise TrainingError("need at least two training examples")
    n_pos = int(labels.sum())
    n_neg = int((~labels).sum())
    if n_pos == 0:
        raise TrainingError("no positive examples in training data")
    if n_neg == 0:
        raise TrainingError("no negative examples in training data")

    pos = features[labels]
    neg = features[~labels]
    pooled_max = float(features.var(axis=0).max())
    floor = var_smoothing * (pooled_max if pooled_max > 0 else 1.0)

    def class_var(x):
        if x.shape[0] < 2:
            return np.zeros(x.shape[1]) + floor
        return x.var(axis=0, ddof=1) + floor

    return GnbModel(
        prior_pos=n_pos / features.shape[0],
        prior_neg=n_neg / features.shape[0],
        mean_pos=pos.mean(axis=0),
        mean_neg=neg.mean(axis=0),
        var_pos=class_var(pos),
        var_neg=class_var(neg),
        var_smoothing=var_smoothing,
        config=config,
    )


def _log_likelihood(x, mean, var):
    return float(
        np.sum(-0.5 * np.log(2.0 * np.pi * var) - (x - mean) ** 2 / (2.0 * var))
    )


def predict_proba(model: GnbModel, x: np.ndarray) -> float:
    """Posterior probability of the positive class, in [0, 1]."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.dim,):
        raise TrainingError(
            f"feature dimension {x.shape} does not match model dim {model.dim}"
        )
    lp = np.log(model.prior_pos) + _log_likelihood(x, model.mean_pos, model.var_pos)
    ln = np.log(model.prior_neg) + _log_likelihood(x, model.mean_neg, model.var_neg)
    return float(np.exp(lp - np.logaddexp(lp, ln)))


def predict_proba_many(model: GnbModel, features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    lp = np.log(model.prior_pos) + np.sum(
        -0.5 * np.log(2.0 * np.pi * model.var_pos)
        - (features - model.mean_pos) ** 2 / (2.0 * model.var_pos),
        axis=1,
    )
    ln = np.log(model.prior_neg) + np.sum(
        -0.5 * np.log(2.0 * np.pi * model.var_neg)
        - (features - model.mean_neg) ** 2 / (2.0 * model.var_neg),
        axis=1,
    )
    return np.exp(lp - np.logaddexp(lp, ln))


def rank_candidates(
    model: GnbModel, cands: Sequence[CandidatePhrase]
) -> list[CandidatePhrase]:
    """Score and sort by confidence; ties break on position then stem."""
    for c in cands:
        c.score = predict_proba(model, c.feature)
    return sorted(
        cands, key=lambda c: (-c.score, c.first_position, c.stemmed_form)
    )


def top_k(ranked: Sequence[CandidatePhrase], k: int = 10) -> list[CandidatePhrase]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(ranked[:k])


def _hex_row(values: np.ndarray) -> str:
    return " ".join(float(v).hex() for v in values)


def save_model(model: GnbModel, path: Path) -> None:
    lines = [
        MAGIC,
        f"version {FORMAT_VERSION}",
        "config " + json.dumps(model.config or {}, sort_keys=True),
        f"dim {model.dim}",
        "var_smoothing " + float(model.var_smoothing).hex(),
        "priors " + float(model.prior_pos).hex() + " " + float(model.prior_neg).hex(),
        "mean_pos " + _hex_row(model.mean_pos),
        "var_pos " + _hex_row(model.var_pos),
        "mean_neg " + _hex_row(model.mean_neg),
        "var_neg " + _hex_row(model.var_neg),
    ]
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def load_model(path: Path) -> GnbModel:
    path = Path(path)
    try:
        lines = path.read_text("utf-8").splitlines()
    except OSError as exc:
        raise ModelFormatError(f"cannot read model file {path}: {exc}") from exc

    def fail(reason):
        raise ModelFormatError(f"corrupt model file {path}: {reason}")

    if not lines or lines[0] != MAGIC:
        fail("bad magic string")
    fields = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        key, _, value = line.partition(" ")
        fields[key] = value
    try:
        if int(fields["version"]) != FORMAT_VERSION:
            fail(f"unsupported version {fields['version']}")
        config = json.loads(fields["config"])
        dim = int(fields["dim"])
        var_smoothing = float.fromhex(fields["var_smoothing"])
        prior_pos, prior_neg = (float.fromhex(v) for v in fields["priors"].split())
        rows = {
            name: np.array([float.fromhex(v) for v in fields[name].split()])
            for name in ("mean_pos", "var_pos", "mean_neg", "var_neg")
        }
    except (KeyError, ValueError) as exc:
        fail(str(exc))
    for name, row in rows.items():
        if row.shape != (dim,):
            fail(f"{name} has {row.shape[0]} entries, expected {dim}")
    return GnbModel(
        prior_pos=prior_pos,
        prior_neg=prior_neg,
        mean_pos=rows["mean_pos"],
        mean_neg=rows["mean_neg"],
        var_pos=rows["var_pos"],
        var_neg=rows["var_neg"],
        var_smoothing=var_smoothing,
        config=config or None,
    )
