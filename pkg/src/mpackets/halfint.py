"""Exact arithmetic in (1/2)Z, stored as doubled integers.

Every coordinate in this package (the A, B of a segment, the points x where
partial Jacquet modules are taken) lives in the half-integers.  Storing 2x
keeps all arithmetic in plain Python ints; no value is ever a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

_Num = Union["HalfInteger", int]


@dataclass(frozen=True, slots=True)
class HalfInteger:
    """The half-integer ``twice / 2``."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be an int, got {self.twice!r}")

    @staticmethod
    def from_int(n: int) -> "HalfInteger":
        return HalfInteger(2 * n)

    @staticmethod
    def coerce(x: _Num) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return HalfInteger(2 * x)
        raise TypeError(f"cannot interpret {x!r} as a half-integer")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: _Num) -> "HalfInteger":
        return HalfInteger(self.twice + HalfInteger.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other: _Num) -> "HalfInteger":
        return HalfInteger(self.twice - HalfInteger.coerce(other).twice)

    def __rsub__(self, other: _Num) -> "HalfInteger":
        return HalfInteger(HalfInteger.coerce(other).twice - self.twice)

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice)

    def __mul__(self, k: int) -> "HalfInteger":
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("half-integers only scale by ints")
        return HalfInteger(self.twice * k)

    __rmul__ = __mul__

    def __abs__(self) -> "HalfInteger":
        return HalfInteger(abs(self.twice))

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (HalfInteger, int)) and not isinstance(other, bool):
            return self.twice == HalfInteger.coerce(other).twice
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("HalfInteger", self.twice))

    def __lt__(self, other: _Num) -> bool:
        return self.twice < HalfInteger.coerce(other).twice

    def __le__(self, other: _Num) -> bool:
        return self.twice <= HalfInteger.coerce(other).twice

    def __gt__(self, other: _Num) -> bool:
        return self.twice > HalfInteger.coerce(other).twice

    def __ge__(self, other: _Num) -> bool:
        return self.twice >= HalfInteger.coerce(other).twice

    # -- conversions ------------------------------------------------------

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_int(self) -> int:
        """The value as a plain int; raises if it is a genuine half."""
        if self.twice % 2 != 0:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def floor(self) -> int:
        return self.twice // 2

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInteger({self.twice})"


ZERO = HalfInteger(0)
HALF = HalfInteger(1)
ONE = HalfInteger(2)


def half(twice: int) -> HalfInteger:
    """Shorthand constructor from a doubled value: ``half(3)`` is 3/2."""
    return HalfInteger(twice)


def neg_one_pow(k: _Num) -> int:
    """(-1)**k for an integer-valued exponent (possibly a HalfInteger)."""
    if isinstance(k, HalfInteger):
        k = k.to_int()
    return -1 if k % 2 else 1
