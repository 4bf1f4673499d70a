"""Binary shapes and the lock-key matching metric.

A shape is a fixed-length string of bits. Affinity between two shapes is the
fraction of positions at which they are complementary, so a shape has zero
affinity with itself and perfect affinity with its bitwise complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ComparabilityError


@dataclass(frozen=True)
class Shape:
    """Immutable bit string, most significant position first."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(self.bits)
        if len(bits) < 1:
            raise ValueError("a shape needs at least one bit")
        for b in bits:
            # bool is an int subclass; accept it but store plain ints
            if b not in (0, 1) or isinstance(b, float):
                raise ValueError(f"shape bits must be 0 or 1, got {b!r}")
        object.__setattr__(self, "bits", tuple(int(b) for b in bits))

    @classmethod
    def parse(cls, text: str) -> Shape:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary shape string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def of(cls, bits: Iterable[int] | str) -> Shape:
        if isinstance(bits, Shape):
            return bits
        if isinstance(bits, str):
            return cls.parse(bits)
        return cls(tuple(bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def complement(s: Shape) -> Shape:
    return Shape(tuple(1 - b for b in s.bits))


def _check_comparable(a: Shape, b: Shape) -> None:
    if len(a) != len(b):
        raise ComparabilityError(
            f"cannot compare shapes of length {len(a)} and {len(b)}"
        )


def complementary_positions(s: Shape, i: Shape) -> int:
    """Number of positions where the two shapes differ."""
    _check_comparable(s, i)
    return sum(a != b for a, b in zip(s.bits, i.bits))


def matching_metric(s: Shape, i: Shape) -> float:
    """Normalized lock-key affinity D in [0, 1].

    D = 1 when ``i`` is the exact complement of ``s``; D = 0 for identical
    shapes. Raises ComparabilityError on a length mismatch.
    """
    return complementary_positions(s, i) / len(s)
