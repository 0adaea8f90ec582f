"""Finitely generated abelian groups, their endomorphisms, and twisted
class counts.

A group is presented as Z_{d_1} + ... + Z_{d_t} + Z^r with the convention
d_i = 0 meaning a free Z slot (so Z_{|n-m|} + Z covers every B(m,n)
abelianization uniformly, including m = n).  Twisted classes of a pair
(f, g) are the cosets of im(g - f), counted through the Smith normal form
of the presentation matrix stacked with g - f.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeMismatch
from .intmat import IntMatrix, left_kernel_functional, snf


@dataclass(frozen=True)
class AbelianGroup:
    """torsion entries first (0 = a free slot), then `rank` free generators."""

    torsion: tuple[int, ...] = ()
    rank: int = 0

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    def orders(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.rank

    def reduce(self, vector) -> tuple[int, ...]:
        """Normalize a coefficient vector modulo the torsion orders."""
        return tuple(x % d if d else x for x, d in zip(vector, self.orders()))

    def presentation(self) -> IntMatrix:
        """Relation matrix: diagonal of generator orders."""
        size = self.ngens
        orders = self.orders()
        return IntMatrix.from_rows(
            [[orders[i] if i == j else 0 for j in range(size)] for i in range(size)])

    def describe(self) -> str:
        parts = [f"Z_{d}" if d else "Z" for d in self.orders()]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianMap:
    """Column j of `matrix` is the image of generator j, reduced mod torsion."""

    group: AbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        size = self.group.ngens
        if self.matrix.rows != size or self.matrix.cols != size:
            raise ShapeMismatch(f"matrix must be {size}x{size}")

    @classmethod
    def from_columns(cls, group: AbelianGroup, columns) -> "AbelianMap":
        cols = [group.reduce(c) for c in columns]
        return cls(group, IntMatrix.from_rows(
            [[cols[j][i] for j in range(len(cols))] for i in range(group.ngens)]))

    @classmethod
    def identity(cls, group: AbelianGroup) -> "AbelianMap":
        return cls(group, IntMatrix.identity(group.ngens))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.matrix[i, j] for i in range(self.group.ngens))

    def apply(self, vector) -> tuple[int, ...]:
        size = self.group.ngens
        out = [sum(self.matrix[i, j] * vector[j] for j in range(size)) for i in range(size)]
        return self.group.reduce(out)

    def __eq__(self, other):
        if not isinstance(other, AbelianMap):
            return NotImplemented
        if self.group != other.group:
            return False
        return all(
            self.group.reduce(self.column(j)) == self.group.reduce(other.column(j))
            for j in range(self.group.ngens))


def twisted_class_count(f: AbelianMap, g: AbelianMap):
    """Number of classes of alpha ~ alpha + (g - f)(tau), or None if infinite.

    The class set is A / im(g - f); its order is the cokernel order of the
    relation matrix of A stacked with g - f.
    """
    if f.group != g.group:
        raise ShapeMismatch("maps act on different groups")
    group = f.group
    stacked = group.presentation().hstack(g.matrix - f.matrix)
    diag = snf(stacked).diagonal
    order = 1
    for i in range(group.ngens):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            return None
        order *= d
    return order


def fixed_functional(f: AbelianMap, g: AbelianMap) -> tuple[int, ...] | None:
    """Integer functional lam on A with lam(g(x)) = lam(f(x)) and lam
    nonzero, vanishing on torsion; certifies an infinite class count."""
    if f.group != g.group:
        raise ShapeMismatch("maps act on different groups")
    group = f.group
    stacked = group.presentation().hstack(g.matrix - f.matrix)
    functional = left_kernel_functional(stacked)
    if functional is None or not any(functional):
        return None
    return functional
