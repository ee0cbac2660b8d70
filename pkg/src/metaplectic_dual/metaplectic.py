"""The twisted dual root datum and its verification machinery.

From a root datum, the twisting form kappa_bar = -beta - sum_j c_j kappa_j
and a level N, this module computes the sharp sublattice
{lam : kappa_bar(lam) in N * (weight lattice)}, the denominators delta_i
of kappa_bar(alpha_i, alpha_i)/2N, and the dual datum whose simple roots
and coroots are delta_i alpha_i and alphacheck_i / delta_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .forms import SymmetricForm, assemble_kappa_bar, is_w_invariant
from .lattice import (
    Matrix,
    Sublattice,
    Vector,
    denominator,
    dot,
    integer_kernel,
    invert_unimodular,
    kernel_mod,
    mat_mul,
    mat_vec,
    matrix,
    solve_exact,
    transpose,
    vec_scale,
    vector,
)
from .root_datum import NotDominant, RootDatum


class RootNotInSharp(ValueError):
    """A stretched simple root fell outside the sharp sublattice."""


class CorootNotIntegral(ValueError):
    """A divided simple coroot is not integral on the sharp sublattice."""


class NotInSharp(ValueError):
    """Operation requires membership in the sharp sublattice."""


class BoundTooSmall(ValueError):
    """Completeness of the generator search cannot be certified in the bound."""


@dataclass(frozen=True)
class MetaplecticDatum:
    """Root datum plus twisting data, with the derived lattice invariants.

    `beta` and `c` are kept when the datum was assembled from input data;
    a datum obtained by restriction carries only the twisting form itself.
    """

    rd: RootDatum
    kappa_bar: SymmetricForm
    level: int
    beta: SymmetricForm | None = None
    c: tuple[int, ...] | None = None
    lambda_sharp: Sublattice = field(init=False)
    delta: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        if self.kappa_bar.size != self.rd.rank:
            raise ValueError("twisting form size does not match the datum rank")
        if not self.kappa_bar.is_even():
            raise ValueError("twisting form must be even")
        self.rd.validate()
        if not is_w_invariant(self.rd, self.kappa_bar):
            raise ValueError("twisting form must be Weyl invariant")
        object.__setattr__(
            self, "lambda_sharp", kernel_mod(self.kappa_bar.matrix, self.level)
        )
        object.__setattr__(
            self,
            "delta",
            tuple(self.delta_root(a) for a in self.rd.simple_coroots),
        )

    @classmethod
    def build(cls, rd: RootDatum, beta: SymmetricForm, c, level: int) -> "MetaplecticDatum":
        kb = assemble_kappa_bar(rd, beta, c)
        return cls(rd, kb, level, beta, tuple(int(x) for x in c))

    @classmethod
    def from_kappa_bar(
        cls, rd: RootDatum, kappa_bar: SymmetricForm, level: int
    ) -> "MetaplecticDatum":
        return cls(rd, kappa_bar, level)

    def kappa(self, x: Vector, y: Vector) -> int:
        return self.kappa_bar.value(x, y)

    def delta_root(self, coroot: Vector) -> int:
        """Denominator of kappa_bar(alpha, alpha)/2N for any coroot alpha."""
        return denominator(Fraction(self.kappa(coroot, coroot), 2 * self.level))


def delta_bruteforce(md: MetaplecticDatum, i: int) -> int:
    """Smallest b >= 1 with b * kappa_bar(alpha_i, alpha_i) in 2N.Z."""
    a = md.rd.simple_coroots[i]
    q = md.kappa(a, a)
    two_n = 2 * md.level
    b = 1
    while (b * q) % two_n != 0:
        b += 1
    return b


@dataclass(frozen=True)
class DualRootDatum:
    """Root datum of the twisted dual group.

    The weight lattice is the sharp sublattice, presented by the rows of
    `weight_basis` in ambient coordinates; `simple_roots` are the
    stretched coroots delta_i alpha_i in weight-basis coordinates, and
    `simple_coroots` are alphacheck_i / delta_i in the dual coordinates.
    """

    source: MetaplecticDatum
    weight_basis: Matrix
    simple_roots: Matrix
    simple_coroots: Matrix

    @cached_property
    def reflection_datum(self) -> RootDatum:
        """The datum with lattice roles flipped, so that Weyl machinery
        (reflections, dominance, positive-system closure) acts directly on
        weight-basis coordinates."""
        return RootDatum(
            len(self.weight_basis), self.simple_roots, self.simple_coroots
        )

    @property
    def rank(self) -> int:
        return len(self.weight_basis)

    def to_ambient(self, coords: Vector) -> Vector:
        out = [0] * self.source.rd.rank
        for c, row in zip(coords, self.weight_basis):
            for k, x in enumerate(row):
                out[k] += c * x
        return tuple(out)

    def to_coords(self, ambient: Vector) -> Vector:
        coords = Sublattice(self.source.rd.rank, self.weight_basis).coefficients(
            vector(ambient)
        )
        if coords is None:
            raise NotInSharp(f"{tuple(ambient)} is not in the sharp sublattice")
        return coords

    def cartan_matrix(self) -> Matrix:
        """Cartan matrix of the dual group: entries <delta_j a_j, ac_i/delta_i>."""
        return tuple(
            tuple(dot(r, c) for r in self.simple_roots) for c in self.simple_coroots
        )


def dual_root_datum(md: MetaplecticDatum) -> DualRootDatum:
    basis = md.lambda_sharp.basis
    n = md.rd.rank
    assert len(basis) == n, "sharp sublattice must have full rank"
    sharp = Sublattice(n, basis)
    roots = []
    for i, a in enumerate(md.rd.simple_coroots):
        stretched = vec_scale(a, md.delta[i])
        coords = sharp.coefficients(stretched)
        if coords is None:
            raise RootNotInSharp(
                f"delta_{i} alpha_{i} = {stretched} is outside the sharp sublattice"
            )
        roots.append(coords)
    coroots = []
    for i, ac in enumerate(md.rd.simple_roots):
        paired = mat_vec(basis, ac)
        if any(x % md.delta[i] for x in paired):
            raise CorootNotIntegral(
                f"alphacheck_{i}/delta_{i} is not integral on the sharp sublattice"
            )
        coroots.append(tuple(x // md.delta[i] for x in paired))
    dual = DualRootDatum(md, basis, matrix(roots), matrix(coroots))
    dual.reflection_datum.validate()
    return dual


def dual_positive_roots(md: MetaplecticDatum) -> tuple[Vector, ...]:
    """All positive roots of the dual group, in ambient coordinates.

    Computed as {delta_alpha . alpha : alpha positive coroot} and checked
    against the reflection closure of the dual datum's simple roots.
    """
    dual = dual_root_datum(md)
    stretched = sorted(
        vec_scale(a, md.delta_root(a)) for a in md.rd.positive_coroots()
    )
    closure = sorted(
        dual.to_ambient(v) for v in dual.reflection_datum.positive_coroots()
    )
    assert stretched == closure, "stretched coroots disagree with reflection closure"
    return tuple(stretched)


def restrict_weyl_to_sharp(md: MetaplecticDatum, w: Matrix) -> Matrix:
    """Express a Weyl matrix on the ambient lattice in sharp coordinates."""
    basis_t = transpose(md.lambda_sharp.basis)
    target = mat_mul(w, basis_t)
    cols = []
    for j in range(len(basis_t[0]) if basis_t else 0):
        col = tuple(row[j] for row in target)
        sol = solve_exact(basis_t, col)
        assert sol is not None and all(x.denominator == 1 for x in sol)
        cols.append(tuple(int(x) for x in sol))
    return transpose(matrix(cols))


def weyl_equality_check(md: MetaplecticDatum, max_order: int = 384) -> bool:
    """Weyl group of the source, restricted to the sharp sublattice,
    equals the Weyl group generated by the dual datum's reflections."""
    dual = dual_root_datum(md)
    restricted = {restrict_weyl_to_sharp(md, w) for w in md.rd.weyl_group(max_order)}
    dual_group = set(dual.reflection_datum.weyl_group(max_order))
    return restricted == dual_group


@dataclass(frozen=True)
class CartanTypeInfo:
    """Isomorphism data of the dual group read off its root datum."""

    component_types: tuple[str, ...]
    pi1: tuple[int, ...]
    central_rank: int

    @property
    def label(self) -> str:
        if not self.component_types:
            return "T"
        return " x ".join(self.component_types)


_DUAL_FAMILY = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}


def identify_cartan_type(dual: DualRootDatum) -> CartanTypeInfo:
    """Cartan type, pi1 invariants and central torus rank of the dual group.

    The reflection datum describes the dual group with the lattice roles
    flipped, so its component labels are dualized (B <-> C swap).
    """
    refl = dual.reflection_datum
    comps = refl.validate()
    types = tuple(
        _DUAL_FAMILY[c.cartan_type[0]] + c.cartan_type[1:] for c in comps
    )
    n = dual.rank
    k = len(dual.simple_coroots)
    if k:
        _, d, _ = smith_diagonal(transpose(dual.simple_coroots))
        pi1 = tuple(x for x in d if x > 1) + (0,) * (n - k)
    else:
        pi1 = (0,) * n
    return CartanTypeInfo(types, pi1, n - k)


def smith_diagonal(m: Matrix) -> tuple[Matrix, tuple[int, ...], Matrix]:
    from .lattice import smith_normal_form

    u, d, v = smith_normal_form(m)
    diag = tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)))
    return u, diag, v


def levi_metaplectic(md: MetaplecticDatum, levi_indices) -> MetaplecticDatum:
    """Restriction to a standard Levi: same lattice, twisting form and level."""
    levi = tuple(sorted(set(int(i) for i in levi_indices)))
    if any(not 0 <= i < md.rd.num_simple for i in levi):
        raise ValueError("Levi indices out of range")
    sub = RootDatum(
        md.rd.rank,
        tuple(md.rd.simple_coroots[i] for i in levi),
        tuple(md.rd.simple_roots[i] for i in levi),
    )
    return MetaplecticDatum(sub, md.kappa_bar, md.level)


@dataclass(frozen=True)
class LocalSystemTwist:
    """Existence flag plus the twisting exponents attached to an orbit."""

    in_sharp: bool
    half_norm: int          # kappa_bar(lam, lam) / 2
    weight_image: Vector    # kappa_bar(lam), an element of the weight lattice


def local_system_criterion(md: MetaplecticDatum, lam: Vector) -> LocalSystemTwist:
    lam = vector(lam)
    if not md.rd.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    norm = md.kappa(lam, lam)
    image = md.kappa_bar.image(lam)
    in_sharp = md.lambda_sharp.member(lam)
    if in_sharp:
        n = md.level
        assert norm % n == 0, "sharp member with norm not divisible by the level"
        assert all(x % n == 0 for x in image)
        nu = tuple(x // n for x in image)
        for p in md.rd.positive_root_pairs:
            if dot(lam, p.root) == 0:
                assert dot(p.coroot, nu) == 0, "twist not orthogonal to the stabilizer"
    return LocalSystemTwist(in_sharp, norm // 2, image)


def commutator_on_sharp(md: MetaplecticDatum, lam1: Vector, lam2: Vector) -> int:
    """Sign exponent kappa_bar(lam1, lam2) mod 2 for sharp lattice points."""
    for lam in (lam1, lam2):
        if not md.lambda_sharp.member(vector(lam)):
            raise NotInSharp(f"{tuple(lam)} is not in the sharp sublattice")
    value = md.kappa(vector(lam1), vector(lam2))
    assert value % md.level == 0
    if md.level % 2 == 0:
        assert value % 2 == 0, "restriction must be abelian at even level"
    return value % 2


@dataclass(frozen=True)
class CommutatorPairing:
    """Commutator exponents of the lattice extension attached to the datum.

    `sign_exponent` is the exponent of -1; `refined_exponent` lifts it
    into Z/2N through the N-th power embedding of mu_2 into mu_2N.
    """

    md: MetaplecticDatum

    def sign_exponent(self, lam1: Vector, lam2: Vector) -> int:
        return self.md.kappa(vector(lam1), vector(lam2)) % 2

    def refined_exponent(self, lam1: Vector, lam2: Vector) -> int:
        two_n = 2 * self.md.level
        return (self.md.kappa(vector(lam1), vector(lam2)) * self.md.level) % two_n


def commutator_splitting(md: MetaplecticDatum) -> Matrix:
    """A bilinear cocycle on sharp coordinates splitting the commutator.

    Only defined at even level, where the restricted extension is abelian;
    returns B with B + B^t equal to the restricted twisting form.
    """
    if md.level % 2:
        raise ValueError("splitting data is only recorded at even level")
    basis = md.lambda_sharp.basis
    n = len(basis)
    restricted = [
        [md.kappa(basis[i], basis[j]) for j in range(n)] for i in range(n)
    ]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        assert restricted[i][i] % 2 == 0
        out[i][i] = restricted[i][i] // 2
        for j in range(i + 1, n):
            out[i][j] = restricted[i][j]
    return matrix(out)


def sharp_dominant_generators(md: MetaplecticDatum, height_bound: int) -> tuple[Vector, ...]:
    """Generators of the monoid of dominant sharp-lattice points.

    Returns +-(a basis of the unit subgroup) together with the Hilbert
    basis of the pointed quotient monoid.  The dominant cone modulo its
    lineality space is simplicial, so the result is complete; the
    enumeration needs heights up to the sum of the primitive ray
    generators' heights, and BoundTooSmall is raised if that exceeds
    `height_bound`.
    """
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    basis = md.lambda_sharp.basis
    n = len(basis)
    functionals = matrix([mat_vec(basis, r) for r in md.rd.simple_roots])
    k = len(functionals)

    def to_ambient(coords):
        out = [0] * md.rd.rank
        for c, row in zip(coords, basis):
            for idx, x in enumerate(row):
                out[idx] += c * x
        return tuple(out)

    units = integer_kernel(functionals, n)
    generators = []
    for u in units.basis:
        generators.append(to_ambient(u))
        generators.append(to_ambient(vec_neg_local(u)))
    if k == 0:
        return tuple(sorted(generators))

    # split off the unit directions: coordinates y = W x put the units first
    if units.rank:
        w, diag, _ = smith_diagonal(transpose(units.basis))
        assert all(x == 1 for x in diag[: units.rank])
        w_inv = invert_unimodular(w)
        section = tuple(
            tuple(row[j] for j in range(units.rank, n)) for row in w_inv
        )  # n x k matrix: quotient coords -> sharp coords
    else:
        section = transpose(matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)]))
    fbar = matrix([mat_vec(functionals, col) for col in transpose(section)])
    fbar = transpose(fbar)  # k x k: row i is the i-th wall functional on the quotient

    rays = []
    for j in range(k):
        target = tuple(1 if i == j else 0 for i in range(k))
        sol = solve_exact(fbar, target)
        assert sol is not None
        mult = 1
        for x in sol:
            mult = mult * x.denominator // gcd_int(mult, x.denominator)
        ray = tuple(int(x * mult) for x in sol)
        g = 0
        for x in ray:
            g = gcd_int(g, x)
        rays.append(tuple(x // g for x in ray))

    def height(z):
        return sum(dot(row, z) for row in fbar)

    needed = sum(height(r) for r in rays)
    if needed > height_bound:
        raise BoundTooSmall(
            f"complete enumeration needs height {needed} > bound {height_bound}"
        )

    lo = [sum(min(0, r[d]) for r in rays) for d in range(k)]
    hi = [sum(max(0, r[d]) for r in rays) for d in range(k)]
    ray_cols = transpose(matrix(rays))
    box_points = []
    for z in product(*[range(lo[d], hi[d] + 1) for d in range(k)]):
        if all(x == 0 for x in z):
            continue
        t = solve_exact(ray_cols, z)
        if t is not None and all(0 <= x <= 1 for x in t):
            box_points.append(z)
    box_points.sort(key=lambda z: (height(z), z))
    hilbert = []
    for idx, z in enumerate(box_points):
        reducible = False
        for w2 in box_points[:idx]:
            rest = tuple(a - b for a, b in zip(z, w2))
            if all(x == 0 for x in rest):
                continue
            if all(dot(row, rest) >= 0 for row in fbar):
                reducible = True
                break
        if not reducible:
            hilbert.append(z)
    for z in hilbert:
        coords = mat_vec(section, z)
        generators.append(to_ambient(coords))
    return tuple(sorted(set(generators)))


def vec_neg_local(v):
    return tuple(-x for x in v)


def gcd_int(a, b):
    from math import gcd

    return gcd(a, b)
