"""Service configuration: one JSON file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

ENV_PREFIX = "DEBUGTRACE_"


@dataclass
class Config:
    listen_addr: str = "127.0.0.1:8700"
    store_root: str = "./debugtrace-store"
    session_timeout_minutes: float = 30.0
    api_prefixes: list[str] = field(default_factory=lambda: ["wx"])
    token_ttl_hours: float = 24.0

    @property
    def session_timeout_ms(self) -> int:
        return int(self.session_timeout_minutes * 60_000)

    @property
    def token_ttl_ms(self) -> int:
        return int(self.token_ttl_hours * 3_600_000)

    @property
    def host(self) -> str:
        return self.listen_addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen_addr.rsplit(":", 1)[1])


def load_config(path: Optional[str] = None) -> Config:
    cfg = Config()
    if path:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        for key in ("listen_addr", "store_root"):
            if key in data:
                setattr(cfg, key, str(data[key]))
        if "session_timeout_minutes" in data:
            cfg.session_timeout_minutes = float(data["session_timeout_minutes"])
        if "token_ttl_hours" in data:
            cfg.token_ttl_hours = float(data["token_ttl_hours"])
        if "api_prefixes" in data:
            cfg.api_prefixes = [str(p) for p in data["api_prefixes"]]

    env = os.environ
    if ENV_PREFIX + "LISTEN_ADDR" in env:
        cfg.listen_addr = env[ENV_PREFIX + "LISTEN_ADDR"]
    if ENV_PREFIX + "STORE_ROOT" in env:
        cfg.store_root = env[ENV_PREFIX + "STORE_ROOT"]
    if ENV_PREFIX + "SESSION_TIMEOUT_MINUTES" in env:
        cfg.session_timeout_minutes = float(env[ENV_PREFIX + "SESSION_TIMEOUT_MINUTES"])
    if ENV_PREFIX + "TOKEN_TTL_HOURS" in env:
        cfg.token_ttl_hours = float(env[ENV_PREFIX + "TOKEN_TTL_HOURS"])
    if ENV_PREFIX + "API_PREFIXES" in env:
        cfg.api_prefixes = [p for p in env[ENV_PREFIX + "API_PREFIXES"].split(",") if p]
    return cfg
