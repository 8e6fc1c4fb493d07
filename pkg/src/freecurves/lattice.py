"""Curve and divisor lattices with the intersection pairing.

Curve classes and divisor classes are both integer vectors, but they are
kept as distinct types so that a curve can never be paired with a curve.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _linalg
from .errors import DimensionError, PairingError

__all__ = [
    "CurveClass",
    "DivisorClass",
    "IntersectionForm",
    "pair",
    "anticanonical_degree",
]


class _LatticeVector:
    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        coords = tuple(coords)
        for x in coords:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"coordinates must be integers, got {x!r}")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.rank != self.rank:
            raise DimensionError(f"rank {self.rank} vs {other.rank}")
        return None

    def __add__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return type(self)(k * a for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(other) is type(self) and other.coords == self.coords

    def __lt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords < other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coords)})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    @classmethod
    def zero(cls, rank: int):
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, i: int):
        return cls(int(j == i) for j in range(rank))


class CurveClass(_LatticeVector):
    """Coordinates of a 1-cycle in a family's fixed curve basis."""

    __slots__ = ()


class DivisorClass(_LatticeVector):
    """Coordinates of a divisor in a family's fixed divisor basis."""

    __slots__ = ()


@dataclass(frozen=True)
class IntersectionForm:
    """The pairing N^1 x N_1 -> Z.

    ``matrix[i][j]`` is (i-th divisor basis element) . (j-th curve basis element).
    """

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise PairingError("intersection matrix must be square")
        if n == 0 or _linalg.det(m) == 0:
            raise PairingError("intersection pairing is degenerate")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, rank: int) -> "IntersectionForm":
        return cls(tuple(map(tuple, _linalg.identity(rank))))

    @property
    def determinant(self) -> int:
        return _linalg.det(self.matrix)

    def divisor_functional(self, d: DivisorClass) -> tuple:
        """Row vector w with d . c == w . c for every curve c."""
        _check_rank(self, d)
        return tuple(sum(d.coords[i] * self.matrix[i][j] for i in range(self.rank))
                     for j in range(self.rank))

    def curve_functional(self, c: CurveClass) -> tuple:
        """Column image w with d . c == d . w for every divisor d."""
        _check_rank(self, c)
        return _linalg.matvec(self.matrix, c.coords)


def _check_rank(form: IntersectionForm, v: _LatticeVector):
    if v.rank != form.rank:
        raise DimensionError(f"class of rank {v.rank} paired in a rank {form.rank} lattice")


def pair(form: IntersectionForm, d: DivisorClass, c: CurveClass) -> int:
    """Intersection number d . c."""
    if not isinstance(d, DivisorClass) or not isinstance(c, CurveClass):
        raise TypeError("pair() takes a DivisorClass and a CurveClass")
    _check_rank(form, d)
    _check_rank(form, c)
    m = form.matrix
    return sum(d.coords[i] * m[i][j] * c.coords[j]
               for i in range(form.rank) if d.coords[i]
               for j in range(form.rank) if c.coords[j])


def anticanonical_degree(family, c: CurveClass) -> int:
    """-K_X . c for a family record (anything with ``pairing`` and ``anticanonical``)."""
    return pair(family.pairing, family.anticanonical, c)


def as_curves(vectors: Sequence[Sequence[int]]) -> list:
    return [v if isinstance(v, CurveClass) else CurveClass(v) for v in vectors]
