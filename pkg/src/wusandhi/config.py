"""Run configuration: one JSON file, overridable field by field."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_CONFIG = DATA_DIR / "config.json"

_PATH_FIELDS = ("base_lexicon", "overlay_lexicon", "char_mapping", "hmm", "ipa_table", "sandhi_table")


@dataclass(frozen=True)
class Config:
    base_lexicon: Path
    overlay_lexicon: Path | None
    char_mapping: Path
    hmm: Path
    ipa_table: Path
    sandhi_table: Path
    clitics: dict = field(default_factory=lambda: {"個": "gheq"})
    default_overlay_weight: int = 1000
    domain_max_length: int = 8
    split_policy: str = "split"
    use_hmm: bool = True
    interleave_blank: bool = False

    def validate(self) -> "Config":
        for name in _PATH_FIELDS:
            p = getattr(self, name)
            if p is None and name == "overlay_lexicon":
                continue
            if p is None or not Path(p).is_file():
                raise ConfigError(f"{name}: file not found: {p}")
        if self.default_overlay_weight <= 0 or self.domain_max_length <= 0:
            raise ConfigError("numeric settings must be positive")
        if self.split_policy not in ("split", "error"):
            raise ConfigError(f"split_policy must be 'split' or 'error', not {self.split_policy!r}")
        return self

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        for name in _PATH_FIELDS:
            if name in kw:
                kw[name] = Path(kw[name])
        return replace(self, **kw).validate()


def load_config(path=None, **overrides) -> Config:
    path = Path(path) if path else DEFAULT_CONFIG
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    known = {f.name for f in fields(Config)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    for name in _PATH_FIELDS:
        if raw.get(name) is not None:
            raw[name] = (path.parent / raw[name]).resolve()
    try:
        cfg = Config(**raw)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return cfg.with_overrides(**overrides)
