"""Exact integer linear algebra on lattices.

Vectors are tuples of Python ints and matrices are tuples of row tuples,
so everything is arbitrary precision and hashable.  No floating point
anywhere; rational intermediates use fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def vector(entries) -> Vector:
    return tuple(int(e) for e in entries)


def matrix(rows) -> Matrix:
    rows = tuple(vector(r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def zero_vector(n: int) -> Vector:
    return (0,) * n


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def dot(u, v) -> int:
    if len(u) != len(v):
        raise ValueError("length mismatch in dot product")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vec_scale(u: Vector, k: int) -> Vector:
    return tuple(k * a for a in u)


def outer(u: Vector, v: Vector) -> Matrix:
    return tuple(tuple(a * b for b in v) for a in u)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = ax + by, g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of non-square matrix")
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(a: Matrix, b) -> tuple[Fraction, ...] | None:
    """Solve a.x = b over the rationals; None if inconsistent.

    When the columns of `a` are linearly independent the solution is
    unique; otherwise one solution (free variables set to zero) is
    returned.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return tuple(sol)


def rational_rank(m: Matrix) -> int:
    rows = len(m)
    if rows == 0:
        return 0
    cols = len(m[0])
    a = [[Fraction(x) for x in row] for row in m]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, rows):
            if a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def invert_unimodular(m: Matrix) -> Matrix:
    """Integer inverse of a matrix with determinant +-1."""
    n = len(m)
    cols = transpose(identity_matrix(n))
    inv_cols = []
    for e in cols:
        sol = solve_exact(m, e)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise ValueError("matrix is not unimodular")
        inv_cols.append(tuple(int(x) for x in sol))
    return transpose(matrix(inv_cols))


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (U, D, V) with U.m.V = D.

    U and V are unimodular, D is diagonal with nonnegative entries
    satisfying d1 | d2 | ... .
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity_matrix(rows)]
    v = [list(r) for r in identity_matrix(cols)]

    def row_combine(i, j, x, y, z, w):
        # rows i,j <- (x*ri + y*rj, z*ri + w*rj); same on u
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[j] = [z * p + w * q for p, q in zip(ri, rj)]

    def col_combine(i, j, x, y, z, w):
        for mat in (a, v):
            for row in mat:
                p, q = row[i], row[j]
                row[i] = x * p + y * q
                row[j] = z * p + w * q

    for t in range(min(rows, cols)):
        # move a smallest-magnitude nonzero entry of the trailing block to (t, t)
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_combine(t, piv[0], 0, 1, 1, 0)
        if piv[1] != t:
            col_combine(t, piv[1], 0, 1, 1, 0)
        while True:
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    if a[i][t] % a[t][t] == 0:
                        q = a[i][t] // a[t][t]
                        row_combine(t, i, 1, 0, -q, 1)
                    else:
                        g, x, y = egcd(a[t][t], a[i][t])
                        row_combine(t, i, x, y, -(a[i][t] // g), a[t][t] // g)
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    if a[t][j] % a[t][t] == 0:
                        q = a[t][j] // a[t][t]
                        col_combine(t, j, 1, 0, -q, 1)
                    else:
                        g, x, y = egcd(a[t][t], a[t][j])
                        col_combine(t, j, x, y, -(a[t][j] // g), a[t][t] // g)
            if all(a[i][t] == 0 for i in range(t + 1, rows)):
                break

    # fold diagonal pairs until the divisibility chain holds
    ndiag = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(ndiag):
            for j in range(i + 1, ndiag):
                di, dj = a[i][i], a[j][j]
                if dj % di == 0 if di != 0 else dj == 0:
                    continue
                g, x, y = egcd(di, dj)
                # U2.diag(di,dj).V2 = diag(g, di*dj/g) with U2, V2 unimodular
                row_combine(i, j, x, y, -(dj // g), di // g)
                col_combine(i, j, 1, 1, -(y * dj) // g, (x * di) // g)
                changed = True
    for i in range(ndiag):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return matrix(u), matrix(a), matrix(v)


def hermite_normal_form(vectors, ambient_rank: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by `vectors`.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), zero rows are dropped.  The result is the canonical
    basis of the spanned sublattice.
    """
    work = [list(v) for v in vectors if not is_zero(v)]
    for v in work:
        if len(v) != ambient_rank:
            raise ValueError("vector length does not match ambient rank")
    done = 0
    for col in range(ambient_rank):
        # Euclid on the entries of this column below the finished rows
        while True:
            live = [i for i in range(done, len(work)) if work[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(work[i][col]))
            i0 = live[0]
            for i in live[1:]:
                q = work[i][col] // work[i0][col]
                work[i] = [x - q * y for x, y in zip(work[i], work[i0])]
        live = [i for i in range(done, len(work)) if work[i][col] != 0]
        if not live:
            continue
        i0 = live[0]
        work[done], work[i0] = work[i0], work[done]
        if work[done][col] < 0:
            work[done] = [-x for x in work[done]]
        p = work[done][col]
        for i in range(done):
            q = work[i][col] // p
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[done])]
        done += 1
    return matrix(work[:done])


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank, stored by its Hermite basis."""

    ambient_rank: int
    basis: Matrix

    @classmethod
    def from_generators(cls, ambient_rank: int, generators) -> "Sublattice":
        return cls(ambient_rank, hermite_normal_form(generators, ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, identity_matrix(ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def coefficients(self, v: Vector) -> Vector | None:
        """Integer coordinates of v in the basis, or None if v is outside."""
        if len(v) != self.ambient_rank:
            raise ValueError("rank mismatch")
        rest = list(v)
        coeffs = []
        for row, p in zip(self.basis, self._pivots()):
            c, r = divmod(rest[p], row[p])
            if r != 0:
                return None
            coeffs.append(c)
            rest = [x - c * y for x, y in zip(rest, row)]
        if any(rest):
            return None
        return tuple(coeffs)

    def member(self, v: Vector) -> bool:
        return self.coefficients(v) is not None

    def __contains__(self, v) -> bool:
        return self.member(tuple(v))

    def linear_combination(self, coeffs) -> Vector:
        out = [0] * self.ambient_rank
        for c, row in zip(coeffs, self.basis):
            for k, x in enumerate(row):
                out[k] += c * x
        return tuple(out)


def kernel_mod(m: Matrix, n: int) -> Sublattice:
    """The lattice {x : m.x = 0 mod n}, full rank (it contains n.Z^cols)."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        raise ValueError("kernel_mod of a matrix with no rows is ambiguous")
    _, d, v = smith_normal_form(m)
    vt = transpose(v)  # vt[j] is the j-th column of V
    gens = []
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        k = n // gcd(dj, n)
        gens.append(vec_scale(vt[j], k))
    return Sublattice.from_generators(cols, gens)


def integer_kernel(m: Matrix, cols: int | None = None) -> Sublattice:
    """The lattice {x : m.x = 0}; `cols` is required when m has no rows."""
    rows = len(m)
    if rows == 0:
        if cols is None:
            raise ValueError("column count needed for an empty matrix")
        return Sublattice.full(cols)
    ncols = len(m[0])
    _, d, v = smith_normal_form(m)
    vt = transpose(v)
    gens = [vt[j] for j in range(ncols) if (d[j][j] if j < rows else 0) == 0]
    return Sublattice.from_generators(ncols, gens)


def saturate(s: Sublattice) -> Sublattice:
    """Rational closure in the ambient lattice: {x : k.x in s for some k >= 1}."""
    if s.rank == 0:
        return Sublattice.zero(s.ambient_rank)
    # functionals vanishing on s ...
    ann = integer_kernel(s.basis, s.ambient_rank)
    # ... cut out exactly the saturation
    if ann.rank == 0:
        return Sublattice.full(s.ambient_rank)
    return integer_kernel(ann.basis, s.ambient_rank)


def denominator(a) -> int:
    """Reduced positive denominator; denominator(0) = 1."""
    return Fraction(a).denominator


def vectors_in_box(rank: int, bound: int):
    """All integer vectors with entries in [-bound, bound]."""
    return product(range(-bound, bound + 1), repeat=rank)
