"""Cycle decomposition of permutations of finite residue-class sets."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

DEFAULT_MAX_ELEMS = 10 ** 7


def max_elems() -> int:
    """Enumeration cap, overridable through ``PADIC_MAX_ELEMS``."""
    raw = os.environ.get("PADIC_MAX_ELEMS")
    if raw is None:
        return DEFAULT_MAX_ELEMS
    return int(raw)


def check_size(n: int):
    cap = max_elems()
    if n > cap:
        raise ValueError(f"enumeration of {n} classes exceeds PADIC_MAX_ELEMS={cap}")


@dataclass(frozen=True)
class CycleReport:
    level: int
    sphere: int
    lengths: tuple  # sorted multiset of cycle lengths
    count: int
    single_cycle: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "single_cycle", len(self.lengths) == 1)

    @property
    def multiset(self) -> dict:
        return dict(sorted(Counter(self.lengths).items()))

    def to_json(self):
        return {
            "level": self.level,
            "sphere": self.sphere,
            "count": self.count,
            "single_cycle": self.single_cycle,
            "cycles": {str(k): v for k, v in self.multiset.items()},
        }


class NotAPermutation(ValueError):
    pass


def cycle_lengths(domain, image) -> list[int]:
    """Cycle lengths of the permutation ``image`` restricted to ``domain``.

    ``image`` is indexable by class code.  A visited bitmap over the code
    range keeps the walk linear in the domain size.
    """
    domain = list(domain)
    if not domain:
        return []
    size = max(domain) + 1
    member = bytearray(size)
    for x in domain:
        member[x] = 1
    seen = bytearray(size)
    lengths = []
    for start in domain:
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            n += 1
            x = image[x]
            if x >= size or not member[x]:
                raise NotAPermutation(f"class {start} leaves the domain")
        if x != start:
            raise NotAPermutation("map is not injective on the domain")
        lengths.append(n)
    return sorted(lengths)


def report(level, sphere, domain, image) -> CycleReport:
    lengths = cycle_lengths(domain, image)
    return CycleReport(level, sphere, tuple(lengths), sum(lengths))


def _chunks(items, n):
    step = max(1, -(-len(items) // n))
    return [items[i:i + step] for i in range(0, len(items), step)]


def parallel_images(func, codes, workers: int = 1):
    """``{c: func(c)}`` for every code, computed in chunks across processes.

    ``func`` must be picklable and map a list of codes to a list of images.
    The merge is by code, so the result does not depend on ``workers``.
    """
    codes = list(codes)
    if workers <= 1 or len(codes) < 2048:
        return dict(zip(codes, func(codes)))
    out = {}
    chunks = _chunks(codes, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk, imgs in zip(chunks, pool.map(func, chunks)):
            out.update(zip(chunk, imgs))
    return out
