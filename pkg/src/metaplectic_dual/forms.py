"""Symmetric bilinear and quadratic forms on the coweight lattice.

Killing forms of the simple factors, the abelian form pulled back from
Lambda_ab, and their assembly into the twisting form used everywhere
downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .lattice import (
    Matrix,
    Vector,
    dot,
    mat_mul,
    mat_vec,
    matrix,
    outer,
    transpose,
    vec_neg,
    zero_matrix,
)
from .root_datum import RootDatum


class BetaNotSymmetric(ValueError):
    pass


class BetaNotEven(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricForm:
    """An integer symmetric bilinear form, also usable as a map to the dual."""

    matrix: Matrix

    def __post_init__(self):
        m = matrix(self.matrix) if not isinstance(self.matrix, tuple) else self.matrix
        object.__setattr__(self, "matrix", m)
        if m != transpose(m):
            raise BetaNotSymmetric("form matrix is not symmetric")

    @classmethod
    def zero(cls, size: int) -> "SymmetricForm":
        return cls(zero_matrix(size, size))

    @property
    def size(self) -> int:
        return len(self.matrix)

    def value(self, x: Vector, y: Vector) -> int:
        return dot(x, mat_vec(self.matrix, y))

    def image(self, x: Vector) -> Vector:
        """The form viewed as a map into the dual lattice."""
        return mat_vec(self.matrix, x)

    def is_even(self) -> bool:
        return all(self.matrix[i][i] % 2 == 0 for i in range(self.size))

    def __add__(self, other: "SymmetricForm") -> "SymmetricForm":
        return SymmetricForm(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.matrix, other.matrix)
            )
        )

    def __neg__(self) -> "SymmetricForm":
        return SymmetricForm(tuple(tuple(-a for a in row) for row in self.matrix))

    def scaled(self, k: int) -> "SymmetricForm":
        return SymmetricForm(tuple(tuple(k * a for a in row) for row in self.matrix))


@dataclass(frozen=True)
class QuadraticForm:
    """Integral quadratic form together with its polarization.

    The defining identity bilinear(x, y) = Q(x+y) - Q(x) - Q(y) pins the
    diagonal of the bilinear form to twice the basis values.
    """

    basis_values: Vector
    bilinear: SymmetricForm

    def __post_init__(self):
        m = self.bilinear.matrix
        if len(self.basis_values) != self.bilinear.size:
            raise ValueError("basis values do not match the form size")
        for i, q in enumerate(self.basis_values):
            if m[i][i] != 2 * q:
                raise ValueError("bilinear diagonal must be twice the basis values")

    @classmethod
    def from_bilinear(cls, f: SymmetricForm) -> "QuadraticForm":
        if not f.is_even():
            raise BetaNotEven("no integral quadratic form: odd diagonal")
        values = tuple(f.matrix[i][i] // 2 for i in range(f.size))
        return cls(values, f)

    def value(self, x: Vector) -> int:
        return self.bilinear.value(x, x) // 2


def bilinear_from_quadratic(q: QuadraticForm) -> SymmetricForm:
    return q.bilinear


def quadratic_exists(f: SymmetricForm) -> bool:
    return f.is_even()


def killing_form(rd: RootDatum, j: int) -> SymmetricForm:
    """Sum of root-squared tensors over all roots of the j-th component."""
    comps = rd.validate()
    if not 0 <= j < len(comps):
        raise ValueError(f"no Dynkin component {j}")
    n = rd.rank
    total = [[0] * n for _ in range(n)]
    for p in rd.positive_root_pairs:
        if rd.component_of_root(p) != j:
            continue
        for r in (p.root, vec_neg(p.root)):
            sq = outer(r, r)
            for a in range(n):
                for b in range(n):
                    total[a][b] += sq[a][b]
    return SymmetricForm(matrix(total))


def assemble_kappa_bar(rd: RootDatum, beta: SymmetricForm, c) -> SymmetricForm:
    """The twisting form -beta - sum_j c_j kappa_j on the coweight lattice.

    `beta` is given in Lambda_ab coordinates and pulled back through the
    abelianization projection.
    """
    ab = rd.abelianization()
    if beta.size != ab.ab_rank:
        raise BetaNotSymmetric(
            f"beta has size {beta.size}, Lambda_ab has rank {ab.ab_rank}"
        )
    if not beta.is_even():
        raise BetaNotEven("beta must have even diagonal")
    comps = rd.validate()
    c = tuple(int(x) for x in c)
    if len(c) != len(comps):
        raise ValueError(f"expected {len(comps)} Killing multipliers, got {len(c)}")
    proj = ab.lambda_ab_projection
    if ab.ab_rank:
        pulled = mat_mul(transpose(proj), mat_mul(beta.matrix, proj))
    else:
        pulled = zero_matrix(rd.rank, rd.rank)
    total = -SymmetricForm(pulled)
    for j, cj in enumerate(c):
        total = total + killing_form(rd, j).scaled(-cj)
    return total


def is_w_invariant(rd: RootDatum, f: SymmetricForm) -> bool:
    """Invariance under the simple reflections (hence under all of W)."""
    if f.size != rd.rank:
        raise ValueError("form size does not match the datum rank")
    for i in range(rd.num_simple):
        s = rd.simple_reflection(i)
        if mat_mul(transpose(s), mat_mul(f.matrix, s)) != f.matrix:
            return False
    return True


def restrict_form_to_levi(rd: RootDatum, f: SymmetricForm, levi_indices) -> SymmetricForm:
    """Identity on the matrix: the Levi shares the coweight lattice."""
    levi = tuple(levi_indices)
    if any(not 0 <= i < rd.num_simple for i in levi):
        raise ValueError("Levi indices out of range")
    return f
