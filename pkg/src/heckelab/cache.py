"""JSONL persistence for per-(orbit, prime) characteristic polynomial evidence.

One file per (level, weight) pair, one JSON object per line, append-only.
Duplicate keys are legal and the last line wins, so interrupted runs can
simply append their way forward; a truncated final line (a write cut off
mid-record) is dropped on load. Records hold either the exact integer
characteristic polynomial or a single certified modular image, matching the
two ways a census verdict is reached.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

SCHEMA_VERSION = 1
CACHE_DIR_ENV = "HECKELAB_CACHE_DIR"


def resolve_cache_dir(flag_value: str | None) -> Path | None:
    """Cache directory from the CLI flag, falling back to the environment."""
    if flag_value is not None:
        return Path(flag_value)
    env = os.environ.get(CACHE_DIR_ENV)
    return Path(env) if env else None


@dataclass(frozen=True)
class CacheRecord:
    level: int
    weight: int
    sign: int
    orbit: str
    degree: int
    prime: int
    kind: str  # "exact" or "modq"
    coeffs: tuple[int, ...]
    modulus: int | None

    def __post_init__(self) -> None:
        assert self.kind in ("exact", "modq")
        assert len(self.coeffs) == self.degree + 1
        assert self.coeffs[-1] == 1, "stored polynomials are monic"
        assert (self.modulus is None) == (self.kind == "exact")
        if self.modulus is not None:
            assert all(0 <= c < self.modulus for c in self.coeffs)

    @property
    def key(self) -> tuple[int, int, int, str, int]:
        return (self.level, self.weight, self.sign, self.orbit, self.prime)

    @property
    def value(self) -> tuple:
        """The poly_cache entry form used by the census."""
        if self.kind == "exact":
            return ("exact", list(self.coeffs))
        return ("modq", self.modulus, list(self.coeffs))

    def to_json(self) -> str:
        obj = {
            "schema": SCHEMA_VERSION,
            "N": self.level,
            "k": self.weight,
            "sign": self.sign,
            "orbit": self.orbit,
            "degree": self.degree,
            "p": self.prime,
            "charpoly": list(self.coeffs),
        }
        if self.modulus is not None:
            obj["modulus"] = self.modulus
        return json.dumps(obj, separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> CacheRecord:
        obj = json.loads(line)
        assert obj["schema"] == SCHEMA_VERSION
        modulus = obj.get("modulus")
        return cls(
            level=obj["N"],
            weight=obj["k"],
            sign=obj["sign"],
            orbit=obj["orbit"],
            degree=obj["degree"],
            prime=obj["p"],
            kind="exact" if modulus is None else "modq",
            coeffs=tuple(obj["charpoly"]),
            modulus=modulus,
        )

    @classmethod
    def from_entry(
        cls, level: int, weight: int, sign: int, orbit: str, prime: int, entry: tuple
    ) -> CacheRecord:
        if entry[0] == "exact":
            coeffs = tuple(entry[1])
            return cls(level, weight, sign, orbit, len(coeffs) - 1, prime, "exact", coeffs, None)
        _, modulus, coeffs = entry
        coeffs = tuple(coeffs)
        return cls(level, weight, sign, orbit, len(coeffs) - 1, prime, "modq", coeffs, modulus)


class CensusCache:
    """Append-only record store for one symbol space, safe for thread pools.

    The mapping interface (get / setitem, keyed by (orbit label, prime)) is
    exactly what the census expects as its poly_cache; writes go through a
    lock and are skipped when the stored value already matches, which keeps
    warm re-runs from growing the file.
    """

    def __init__(self, directory: Path, level: int, weight: int, sign: int = 1) -> None:
        self.directory = Path(directory)
        self.level = level
        self.weight = weight
        self.sign = sign
        self.path = self.directory / f"census-{level}-{weight}.jsonl"
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._entries: dict[tuple[str, int], tuple] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        lines = self.path.read_text(encoding="utf-8").split("\n")
        for i, line in enumerate(lines):
            if not line:
                continue
            try:
                record = CacheRecord.from_json(line)
            except (json.JSONDecodeError, KeyError, AssertionError):
                if i == len(lines) - 1:
                    break  # torn final write from an interrupted run
                raise
            assert (record.level, record.weight, record.sign) == (
                self.level,
                self.weight,
                self.sign,
            )
            self._entries[(record.orbit, record.prime)] = record.value

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: tuple[str, int]) -> bool:
        return key in self._entries

    def get(self, key: tuple[str, int], default=None):
        return self._entries.get(key, default)

    def __getitem__(self, key: tuple[str, int]):
        return self._entries[key]

    def __setitem__(self, key: tuple[str, int], entry: tuple) -> None:
        with self._lock:
            if self._entries.get(key) == entry:
                return
            orbit, prime = key
            record = CacheRecord.from_entry(
                self.level, self.weight, self.sign, orbit, prime, entry
            )
            with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(record.to_json() + "\n")
            self._entries[key] = entry
