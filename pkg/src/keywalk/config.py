"""Pipeline configuration with file/flag override support.

Config files are flat ``key=value`` text (``#`` starts a comment). Keys
match the field names below. Precedence is defaults < file < explicit
overrides, and the effective config is echoed into every output artifact.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .text import TAGS

_BOOL_FIELDS = {"strict_at_k", "deterministic"}


@dataclass
class PipelineConfig:
    window: int = 10
    pos_allowed: tuple[str, ...] = ("NOUN", "ADJ")
    max_phrase_len: int = 4
    walks_per_node: int = 40
    walk_length: int = 8
    dim: int = 128
    context_window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    var_smoothing: float = 1e-9
    top_k: int = 10
    folds: int = 10
    seed: int = 42
    candidate_mode: str = "subngrams"
    strict_at_k: bool = False
    deterministic: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.window < 2:
            raise ConfigError(f"window must be >= 2, got {self.window}")
        if self.candidate_mode not in ("subngrams", "maximal"):
            raise ConfigError(f"unknown candidate_mode {self.candidate_mode!r}")
        bad = set(self.pos_allowed) - TAGS
        if bad:
            raise ConfigError(f"unknown POS tags: {sorted(bad)}")
        if self.folds < 1 or self.top_k < 1 or self.jobs < 1:
            raise ConfigError("folds, top_k and jobs must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pos_allowed"] = list(self.pos_allowed)
        return d


def _coerce(name: str, kind, raw: str):
    if kind == "pos_allowed":
        return tuple(t.strip().upper() for t in raw.split(",") if t.strip())
    if name in _BOOL_FIELDS:
        value = raw.strip().lower()
        if value in ("1", "true", "yes", "on"):
            return True
        if value in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"bad boolean for {name}: {raw!r}")
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def parse_config_file(path: Path) -> dict:
    """Read a key=value config file into an override dict."""
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    types = {f.name: f.type for f in fields(PipelineConfig)}
    casts = {
        "window": int, "max_phrase_len": int, "walks_per_node": int,
        "walk_length": int, "dim": int, "context_window": int, "negatives": int,
        "epochs": int, "top_k": int, "folds": int, "seed": int, "jobs": int,
        "learning_rate": float, "var_smoothing": float,
        "candidate_mode": str, "strict_at_k": bool, "deterministic": bool,
        "pos_allowed": "pos_allowed",
    }
    overrides = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in types:
            raise ConfigError(f"{path}:{lineno}: bad config line {line!r}")
        kind = casts[key]
        overrides[key] = _coerce(key, kind if kind != "pos_allowed" else "pos_allowed", value.strip())
    return overrides


def make_config(base: dict | None = None, *layers: dict) -> PipelineConfig:
    """Merge override layers (later wins) onto defaults or a base dict."""
    merged = dict(base or {})
    for layer in layers:
        merged.update(layer)
    if "pos_allowed" in merged:
        merged["pos_allowed"] = tuple(merged["pos_allowed"])
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return PipelineConfig(**merged)
