"""Profile enumeration: count substructure classes of sampled models.

profile(entry, n_max) computes, for each n up to n_max, the number of
distinct canonical codes among the induced substructures on all n-subsets
of a finite model sampled at the entry's saturation size. The count is
recomputed on a strictly larger sample (rule size + 2); agreement is the
saturation check, disagreement triggers one retry two sizes further before
a SaturationError.

Counting never trusts the dedup key alone: keys only pick one
representative subset per key, canonical codes of the representatives are
what gets counted. Without a key the engine falls back to hashing literal
induced encodings, which is the same scheme with the identity key.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import ParameterError, ResourceError, SaturationError
from .structures import canonical_form, induced_substructure, structure_encoding

DEFAULT_BUDGET = 10_000_000

# Worker-side state for parallel subset enumeration; set by the pool
# initializer, one model per worker process.
_WORKER: dict = {}


def _init_subset_worker(entry_id: str, size: int) -> None:
    from .catalogue import get_entry

    entry = get_entry(entry_id)
    model = entry.sampler(size)
    keyf = entry.subset_key_factory(model) if entry.subset_key_factory else None
    _WORKER["model"] = model
    _WORKER["keyf"] = keyf


def _subset_chunk(args: tuple[int, int]) -> dict:
    """Representatives (key -> lexicographically least subset) for all
    n-subsets whose smallest element is `first`."""
    first, n = args
    model = _WORKER["model"]
    keyf = _WORKER["keyf"]
    reps: dict = {}
    for rest in itertools.combinations(range(first + 1, model.size), n - 1):
        subset = (first,) + rest
        if keyf is not None:
            k = keyf(subset)
        else:
            k = structure_encoding(induced_substructure(model, subset))
        if k not in reps:
            reps[k] = subset
    return reps


def compositions_count(n: int, max_part: int) -> int:
    """Number of compositions of n into parts of size at most max_part."""
    if n < 0:
        raise ParameterError(f"compositions_count needs n >= 0, got {n}")
    if max_part < 1:
        raise ParameterError(f"max_part must be >= 1, got {max_part}")
    acc = [1] + [0] * n
    for m in range(1, n + 1):
        acc[m] = sum(acc[m - j] for j in range(1, min(m, max_part) + 1))
    return acc[n]


@dataclass(frozen=True)
class ProfileSequence:
    """Profile values f_1..f_n with the sampler size each stabilised at."""

    entry_id: str
    values: tuple[int, ...]
    saturated_at: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.saturated_at):
            raise ParameterError("values and saturated_at must align")
        if any(v < 1 for v in self.values):
            raise ParameterError(f"profile values must be >= 1, got {self.values}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "f_n", "saturated_at"])
        for i, (v, s) in enumerate(zip(self.values, self.saturated_at)):
            writer.writerow([i + 1, v, s])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "entry": self.entry_id,
            "values": list(self.values),
            "saturated_at": list(self.saturated_at),
        }

    @classmethod
    def from_json_dict(cls, data) -> "ProfileSequence":
        return cls(
            str(data["entry"]),
            tuple(int(v) for v in data["values"]),
            tuple(int(s) for s in data["saturated_at"]),
        )


class _ClassCounter:
    """Counts distinct substructure classes per (sampler size, n) with caches
    shared across sizes: models by size, canonical codes by literal encoding."""

    def __init__(self, entry, budget: int, jobs: int = 1):
        self.entry = entry
        self.budget = budget
        self.jobs = jobs
        self._models: dict[int, object] = {}
        self._canon: dict[bytes, bytes] = {}

    def model(self, size: int):
        if size not in self._models:
            self._models[size] = self.entry.sampler(size)
        return self._models[size]

    def _representatives(self, size: int, model, n: int) -> dict:
        if self.jobs > 1 and model.size > n:
            merged: dict = {}
            with ProcessPoolExecutor(
                max_workers=self.jobs,
                initializer=_init_subset_worker,
                initargs=(self.entry.entry_id, size),
            ) as pool:
                for part in pool.map(
                    _subset_chunk, [(first, n) for first in range(model.size - n + 1)]
                ):
                    for k, subset in part.items():
                        old = merged.get(k)
                        if old is None or subset < old:
                            merged[k] = subset
            return merged
        keyf = (
            self.entry.subset_key_factory(model)
            if self.entry.subset_key_factory
            else None
        )
        reps: dict = {}
        for subset in itertools.combinations(range(model.size), n):
            if keyf is not None:
                k = keyf(subset)
            else:
                k = structure_encoding(induced_substructure(model, subset))
            if k not in reps:
                reps[k] = subset
        return reps

    def codes(self, size: int, n: int) -> frozenset[bytes]:
        model = self.model(size)
        if n > model.size:
            raise ParameterError(
                f"{self.entry.entry_id}: sample of {model.size} points cannot host n={n}"
            )
        total = math.comb(model.size, n)
        if total > self.budget:
            raise ResourceError(
                f"{self.entry.entry_id}: {total} subsets of size {n} exceed budget {self.budget}"
            )
        out = set()
        for subset in self._representatives(size, model, n).values():
            sub = induced_substructure(model, subset)
            lit = structure_encoding(sub)
            code = self._canon.get(lit)
            if code is None:
                code = canonical_form(sub)
                self._canon[lit] = code
            out.add(code)
        return frozenset(out)


def profile(entry, n_max: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ProfileSequence:
    """Profile f_1..f_{n_max} of a catalogue entry with saturation checking.

    Accepts an entry object or a stable identifier string. jobs > 1 fans the
    subset stream out to a worker pool; the result does not depend on jobs.
    """
    if isinstance(entry, str):
        from .catalogue import get_entry

        entry = get_entry(entry)
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    counter = _ClassCounter(entry, budget, jobs)
    values = []
    sat = []
    for n in range(1, n_max + 1):
        base = entry.saturation_rule(n)
        c1 = len(counter.codes(base, n))
        c2 = len(counter.codes(base + 2, n))
        if c1 == c2:
            values.append(c1)
            sat.append(base)
            continue
        c3 = len(counter.codes(base + 4, n))
        if c2 == c3:
            values.append(c2)
            sat.append(base + 2)
            continue
        raise SaturationError(entry.entry_id, n, (c1, c2, c3), (base, base + 2, base + 4))
    return ProfileSequence(entry.entry_id, tuple(values), tuple(sat))


def class_codes(
    entry, size: int, n: int, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> frozenset[bytes]:
    """Canonical codes of all n-point substructure classes of one sample."""
    if isinstance(entry, str):
        from .catalogue import get_entry

        entry = get_entry(entry)
    return _ClassCounter(entry, budget, jobs).codes(size, n)


def profile_to_json(seq: ProfileSequence) -> str:
    return json.dumps(seq.to_json_dict(), indent=2, sort_keys=True) + "\n"
