"""Engine configuration: JSON file with one environment override per key.

Every key can be overridden by an environment variable named
``SPACEDOCS_<KEY>`` (upper-cased key). Path values resolve relative to the
config file's directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

ENV_PREFIX = "SPACEDOCS_"


class ConfigError(Exception):
    pass


@dataclass
class Config:
    corpus_path: str = "corpus.jsonl"
    kg_path: str = "kg.tsv"
    general_stats_path: str = ""
    templates_path: str = ""
    predefined_questions_path: str = ""
    segmentation_rules_path: str = ""
    ui_dir: str = ""
    data_dir: str = "data"
    qa_threshold: float = 0.5
    dedup_threshold: float = 0.8
    graph_min_sim: float = 0.15
    quiz_min_score: float = 0.5
    novelty_top_similar: int = 5
    retrieval_k: int = 10
    window_chars: int = 1000
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    metadata_top_k: int = 10
    louvain_seed: int = 0
    host: str = "127.0.0.1"
    port: int = 8020

    _PATH_KEYS = (
        "corpus_path",
        "kg_path",
        "general_stats_path",
        "templates_path",
        "predefined_questions_path",
        "segmentation_rules_path",
        "ui_dir",
        "data_dir",
    )

    def resolve(self, base: Path) -> "Config":
        updates = {}
        for key in self._PATH_KEYS:
            value = getattr(self, key)
            if value and not Path(value).is_absolute():
                updates[key] = str((base / value).resolve())
        for key, value in updates.items():
            setattr(self, key, value)
        return self


def load_config(path: Path | str | None = None, env: dict | None = None) -> Config:
    env = os.environ if env is None else env
    raw: dict = {}
    base = Path.cwd()
    if path is not None:
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config {path} must be a JSON object")
        base = path.parent

    cfg = Config()
    valid = {f.name: f.type for f in fields(Config) if not f.name.startswith("_")}
    for key, value in raw.items():
        if key not in valid:
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, value, getattr(cfg, key)))
    for key in valid:
        env_name = ENV_PREFIX + key.upper()
        if env_name in env:
            setattr(cfg, key, _coerce(key, env[env_name], getattr(cfg, key)))
    return cfg.resolve(base)


def _coerce(key: str, value, template):
    try:
        if isinstance(template, bool):
            if isinstance(value, str):
                return value.lower() in ("1", "true", "yes")
            return bool(value)
        if isinstance(template, int) and not isinstance(template, bool):
            return int(value)
        if isinstance(template, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config key {key!r}: bad value {value!r}") from exc
