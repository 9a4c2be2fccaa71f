"""Partitions indexing unipotent classes, with multiplicity and tail-sum profiles."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "Partition",
    "all_partitions",
    "symplectic_partitions",
    "is_symplectic",
    "profile",
]


@dataclass(frozen=True)
class Partition:
    """Weakly increasing positive parts ``d_1 <= ... <= d_r``.

    ``multiplicities[i]`` is the number of parts equal to ``i`` and
    ``tail_sums[i]`` the number of parts that are ``>= i``, for
    ``1 <= i <= max part``.
    """

    parts: tuple[int, ...]
    multiplicities: dict[int, int] = field(init=False, compare=False, repr=False)
    tail_sums: dict[int, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly increasing: {parts}")
        object.__setattr__(self, "parts", parts)
        top = parts[-1] if parts else 0
        mult = {i: 0 for i in range(1, top + 1)}
        for p in parts:
            mult[p] += 1
        tails: dict[int, int] = {}
        running = 0
        for i in range(top, 0, -1):
            running += mult[i]
            tails[i] = running
        object.__setattr__(self, "multiplicities", {i: c for i, c in mult.items() if c})
        object.__setattr__(self, "tail_sums", dict(sorted(tails.items())))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> Partition:
        return cls(tuple(i for i in sorted(mult) for _ in range(mult[i])))


def _gen(total: int, num_parts: int, least: int):
    if num_parts == 0:
        if total == 0:
            yield ()
        return
    # the remaining parts are all >= d, so d * num_parts <= total
    for d in range(least, total // num_parts + 1):
        for rest in _gen(total - d, num_parts - 1, d):
            yield (d,) + rest


@lru_cache(maxsize=None)
def all_partitions(total: int, num_parts: int) -> tuple[Partition, ...]:
    """Partitions of ``total`` into exactly ``num_parts`` parts, lexicographic order."""
    if total < 0 or num_parts < 0:
        raise ValueError("total and num_parts must be nonnegative")
    return tuple(Partition(p) for p in _gen(total, num_parts, 1))


def is_symplectic(p: Partition) -> bool:
    """True when every odd part occurs with even multiplicity."""
    return all(c % 2 == 0 for i, c in p.multiplicities.items() if i % 2)


@lru_cache(maxsize=None)
def symplectic_partitions(total: int, num_parts: int) -> tuple[Partition, ...]:
    """Partitions of ``total`` into ``num_parts`` parts whose odd parts have even multiplicity.

    These index the unipotent classes of Sp(total) with a fixed space of
    dimension ``num_parts``.
    """
    if total % 2:
        raise ValueError(f"symplectic partitions need an even total, got {total}")
    return tuple(p for p in all_partitions(total, num_parts) if is_symplectic(p))


def profile(p: Partition) -> tuple[dict[int, int], dict[int, int]]:
    return dict(p.multiplicities), dict(p.tail_sums)
