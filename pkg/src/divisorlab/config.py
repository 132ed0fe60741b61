"""Run configuration: budgets, tolerance overrides, seed, output.

The config file is plain JSON with these keys (all optional):

    sieve_limit   int, max table entries a sieve may allocate
    tolerances    object, check-name -> threshold override
    seed          int, base seed for every randomized sweep
    output        {"path": str, "format": "csv"|"json"}
    thread_count  int or "auto"; kernels are single-threaded and
                  deterministic, the knob is recorded for downstream
                  schedulers and honored from DIVISORLAB_THREADS

Identical (config, seed) pairs produce byte-identical outputs.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field

from .divisor_core import DEFAULT_SIEVE_BUDGET
from .errors import DomainError


@dataclass
class RunConfig:
    sieve_limit: int = DEFAULT_SIEVE_BUDGET
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    output_path: str = None
    output_format: str = "csv"
    thread_count: object = "auto"

    def __post_init__(self):
        for name, tol in self.tolerances.items():
            if float(tol) < 0:
                raise DomainError(f"tolerance override {name!r} must be >= 0, got {tol}")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"output format must be csv or json, got {self.output_format}")
        env_threads = os.environ.get("DIVISORLAB_THREADS")
        if env_threads:
            self.thread_count = int(env_threads)

    def canonical(self):
        # thread_count is deliberately excluded: outputs are byte-identical
        # under any thread setting, so it must not shift the hash
        return {
            "sieve_limit": self.sieve_limit,
            "tolerances": dict(sorted(self.tolerances.items())),
            "seed": self.seed,
            "output_path": self.output_path,
            "output_format": self.output_format,
        }

    def config_hash(self):
        blob = json.dumps(self.canonical(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def load_config(path):
    with open(path) as fh:
        raw = json.load(fh)
    out = raw.get("output", {})
    return RunConfig(
        sieve_limit=raw.get("sieve_limit", DEFAULT_SIEVE_BUDGET),
        tolerances=raw.get("tolerances", {}),
        seed=raw.get("seed", 0),
        output_path=out.get("path"),
        output_format=out.get("format", "csv"),
        thread_count=raw.get("thread_count", "auto"),
    )
