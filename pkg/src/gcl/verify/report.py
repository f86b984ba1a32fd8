"""Machine-readable verification reports with a checksum over the stable part."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

SCHEMA = 1
_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Per-instance seed; depends only on the master seed and the instance position."""
    return splitmix64(splitmix64(master & _MASK) ^ index) & 0x7FFFFFFF


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


@dataclass
class Report:
    suite: str
    params: dict
    seed: int
    instances: list[dict] = field(default_factory=list)
    corpus: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(inst["passed"] for inst in self.instances)

    def body(self) -> dict:
        failed = [inst["instance"] for inst in self.instances if not inst["passed"]]
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": self.params,
            "seed": self.seed,
            "corpus_hash": digest(self.corpus),
            "instances": self.instances,
            "notes": self.notes,
            "summary": {"total": len(self.instances), "passed": len(self.instances) - len(failed),
                        "failed": failed, "all_passed": not failed},
        }

    def to_dict(self) -> dict:
        body = self.body()
        return {**body, "checksum": digest(body), "wall_time": round(self.wall_time, 3)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def body_of(document: dict) -> dict:
    """Strip the fields that sit outside the checksum."""
    return {k: v for k, v in document.items() if k not in ("checksum", "wall_time")}
