"""Root data of split reductive groups.

Convention used throughout: the first lattice of a datum is the coweight
lattice, so `simple_coroots` live there and `simple_roots` live in the
dual (weight) lattice; the pairing between the two is the dot product of
coordinates.  The Cartan matrix is A[i][j] = <coroot_j, root_i>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .lattice import (
    Matrix,
    Sublattice,
    Vector,
    dot,
    identity_matrix,
    matrix,
    mat_mul,
    mat_vec,
    outer,
    rational_rank,
    saturate,
    smith_normal_form,
    solve_exact,
    transpose,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
)


class PairingViolation(ValueError):
    """A simple coroot does not pair to 2 with its root."""


class NotFiniteType(ValueError):
    """The datum is not a root datum of finite type."""


class OrderBoundExceeded(RuntimeError):
    """Weyl enumeration grew past the caller's bound."""


class UnknownGroup(ValueError):
    """Unrecognized catalog name."""


class NotDominant(ValueError):
    """Operation requires a dominant (co)weight."""


@dataclass(frozen=True)
class DynkinComponent:
    indices: tuple[int, ...]
    cartan_type: str


@dataclass(frozen=True)
class DynkinComponents:
    components: tuple[DynkinComponent, ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, j):
        return self.components[j]

    @property
    def label(self) -> str:
        if not self.components:
            return "T"
        return " x ".join(c.cartan_type for c in self.components)


class RootPair(NamedTuple):
    root: Vector        # element of the weight lattice
    coroot: Vector      # element of the coweight lattice
    support: Vector     # coordinates of `root` over the simple roots


@dataclass(frozen=True)
class CowtLatticeQuotients:
    """Abelianization data: pi1 invariants and the projection onto Lambda_ab.

    `pi1` lists the invariant factors of (coweights)/(coroot lattice):
    entries > 1 are torsion, each 0 is a free Z summand.
    """

    pi1: tuple[int, ...]
    ab_rank: int
    lambda_ab_projection: Matrix


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_coroots: Matrix
    simple_roots: Matrix

    def __post_init__(self):
        coroots = matrix(self.simple_coroots)
        roots = matrix(self.simple_roots)
        object.__setattr__(self, "simple_coroots", coroots)
        object.__setattr__(self, "simple_roots", roots)
        if len(coroots) != len(roots):
            raise ValueError("number of simple roots and coroots differ")
        for v in coroots + roots:
            if len(v) != self.rank:
                raise ValueError("vector length does not match the rank")

    @property
    def num_simple(self) -> int:
        return len(self.simple_coroots)

    @staticmethod
    def pair(coweight: Vector, weight: Vector) -> int:
        return dot(coweight, weight)

    @cached_property
    def cartan_matrix(self) -> Matrix:
        return tuple(
            tuple(dot(a, ac) for a in self.simple_coroots) for ac in self.simple_roots
        )

    # -- validation ----------------------------------------------------

    def validate(self) -> DynkinComponents:
        return self.components

    @cached_property
    def components(self) -> DynkinComponents:
        n = self.num_simple
        a = self.cartan_matrix
        for i in range(n):
            if a[i][i] != 2:
                raise PairingViolation(
                    f"<alpha_{i}, alphacheck_{i}> = {a[i][i]}, expected 2"
                )
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise NotFiniteType(f"positive off-diagonal Cartan entry at {(i, j)}")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise NotFiniteType(f"asymmetric zero pattern at {(i, j)}")
        if rational_rank(self.simple_coroots) != n:
            raise NotFiniteType("simple coroots are linearly dependent")
        if rational_rank(self.simple_roots) != n:
            raise NotFiniteType("simple roots are linearly dependent")
        comps = []
        seen = set()
        for start in range(n):
            if start in seen:
                continue
            block = {start}
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for j in range(n):
                    if j not in block and a[i][j] != 0:
                        block.add(j)
                        frontier.append(j)
            seen |= block
            idxs = tuple(sorted(block))
            comps.append(DynkinComponent(idxs, _classify_component(a, idxs)))
        return DynkinComponents(tuple(comps))

    # -- reflections and the Weyl group --------------------------------

    def simple_reflection(self, i: int) -> Matrix:
        """Action on the coweight lattice: x -> x - <x, root_i> coroot_i."""
        step = outer(self.simple_coroots[i], self.simple_roots[i])
        return tuple(
            tuple((1 if r == c else 0) - step[r][c] for c in range(self.rank))
            for r in range(self.rank)
        )

    def simple_coreflection(self, i: int) -> Matrix:
        """Action on the weight lattice: y -> y - <coroot_i, y> root_i."""
        step = outer(self.simple_roots[i], self.simple_coroots[i])
        return tuple(
            tuple((1 if r == c else 0) - step[r][c] for c in range(self.rank))
            for r in range(self.rank)
        )

    def weyl_group(self, max_order: int = 1024) -> tuple[Matrix, ...]:
        """All Weyl elements as matrices on the coweight lattice.

        Returned in the canonical (lexicographic) order.  Raises
        OrderBoundExceeded if the group is larger than max_order.
        """
        self.validate()
        gens = [self.simple_reflection(i) for i in range(self.num_simple)]
        group = {identity_matrix(self.rank)}
        frontier = list(group)
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    sw = mat_mul(s, w)
                    if sw not in group:
                        group.add(sw)
                        nxt.append(sw)
                        if len(group) > max_order:
                            raise OrderBoundExceeded(
                                f"Weyl group exceeds {max_order} elements"
                            )
            frontier = nxt
        return tuple(sorted(group))

    # -- roots ----------------------------------------------------------

    @cached_property
    def positive_root_pairs(self) -> tuple[RootPair, ...]:
        """Positive roots with their coroots, closed under simple reflections."""
        self.validate()
        n = self.num_simple
        pairs = {}
        frontier = []
        for i in range(n):
            unit = tuple(1 if k == i else 0 for k in range(n))
            p = RootPair(self.simple_roots[i], self.simple_coroots[i], unit)
            pairs[p.root] = p
            frontier.append(p)
        while frontier:
            nxt = []
            for p in frontier:
                for i in range(n):
                    c = dot(self.simple_coroots[i], p.root)
                    root = vec_sub(p.root, vec_scale(self.simple_roots[i], c))
                    if root in pairs:
                        continue
                    supp = vec_sub(p.support, vec_scale(_unit(n, i), c))
                    if any(x < 0 for x in supp):
                        continue
                    cc = dot(p.coroot, self.simple_roots[i])
                    coroot = vec_sub(p.coroot, vec_scale(self.simple_coroots[i], cc))
                    q = RootPair(root, coroot, supp)
                    pairs[root] = q
                    nxt.append(q)
            frontier = nxt
        return tuple(sorted(pairs.values()))

    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(p.root for p in self.positive_root_pairs)

    def positive_coroots(self) -> tuple[Vector, ...]:
        return tuple(sorted(p.coroot for p in self.positive_root_pairs))

    def component_of_root(self, pair: RootPair) -> int:
        """Index of the Dynkin component carrying the given positive root."""
        i = next(k for k, x in enumerate(pair.support) if x != 0)
        for j, comp in enumerate(self.components):
            if i in comp.indices:
                return j
        raise ValueError("root support outside the datum")

    @cached_property
    def two_rho_check(self) -> Vector:
        """Sum of the positive roots, an element of the weight lattice."""
        total = (0,) * self.rank
        for p in self.positive_root_pairs:
            total = vec_add(total, p.root)
        return total

    def parity(self, theta: Vector) -> int:
        """<theta, 2 rho-check> mod 2; constant on coroot-lattice cosets."""
        return dot(theta, self.two_rho_check) % 2

    # -- dominance ------------------------------------------------------

    def dominance_leq(self, lam1: Vector, lam2: Vector) -> bool:
        """True iff lam2 - lam1 is a nonnegative integer sum of simple coroots."""
        diff = vec_sub(vector(lam2), vector(lam1))
        if self.num_simple == 0:
            return not any(diff)
        sol = solve_exact(transpose(self.simple_coroots), diff)
        if sol is None:
            return False
        return all(x.denominator == 1 and x >= 0 for x in sol)

    def is_dominant(self, lam: Vector) -> bool:
        return all(dot(lam, r) >= 0 for r in self.simple_roots)

    def stabilizer_weyl(self, lam: Vector) -> tuple[int, ...]:
        """Simple indices whose reflections fix lam (walls through lam)."""
        return tuple(i for i, r in enumerate(self.simple_roots) if dot(lam, r) == 0)

    # -- abelianization ---------------------------------------------------

    @cached_property
    def coroot_lattice(self) -> Sublattice:
        return Sublattice.from_generators(self.rank, self.simple_coroots)

    def abelianization(self) -> CowtLatticeQuotients:
        n = self.rank
        if self.num_simple == 0:
            return CowtLatticeQuotients((0,) * n, n, identity_matrix(n))
        _, d, _ = smith_normal_form(transpose(self.simple_coroots))
        divisors = [d[i][i] for i in range(self.num_simple)]
        pi1 = tuple(x for x in divisors if x > 1) + (0,) * (n - self.num_simple)
        sat = saturate(self.coroot_lattice)
        u, dd, _ = smith_normal_form(transpose(sat.basis))
        assert all(dd[i][i] == 1 for i in range(sat.rank))
        projection = u[sat.rank :]
        return CowtLatticeQuotients(pi1, n - sat.rank, matrix(projection))


def _unit(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


# -- finite-type classification ---------------------------------------


def _classify_component(a: Matrix, idxs: tuple[int, ...]) -> str:
    """Name the finite Cartan type of one connected component.

    For a multiple bond, |a[i][j]| > |a[j][i]| means root i is the longer
    one.  The B/C naming of a rank-2 double bond follows the component's
    index order: label C when the highest index carries the long root.
    """
    n = len(idxs)
    if n == 1:
        return "A1"
    edges = []
    for p in range(n):
        for q in range(p + 1, n):
            i, j = idxs[p], idxs[q]
            if a[i][j] != 0:
                m = a[i][j] * a[j][i]
                if m >= 4:
                    raise NotFiniteType(f"bond of multiplicity {m} at {(i, j)}")
                edges.append((p, q, m))
    if len(edges) != n - 1:
        raise NotFiniteType("Dynkin component is not a tree")
    degree = [0] * n
    adj = [[] for _ in range(n)]
    for p, q, _ in edges:
        degree[p] += 1
        degree[q] += 1
        adj[p].append(q)
        adj[q].append(p)
    multi = [(p, q, m) for p, q, m in edges if m > 1]
    if len(multi) > 1:
        raise NotFiniteType("more than one multiple bond")

    if not multi:
        branch = [p for p in range(n) if degree[p] >= 3]
        if any(degree[p] > 3 for p in range(n)):
            raise NotFiniteType("vertex of degree > 3")
        if not branch:
            return f"A{n}"
        if len(branch) > 1:
            raise NotFiniteType("more than one branch vertex")
        arms = sorted(_arm_lengths(adj, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms == [1, 2, 2]:
            return "E6"
        if arms == [1, 2, 3]:
            return "E7"
        if arms == [1, 2, 4]:
            return "E8"
        raise NotFiniteType(f"branch arms {arms} are not of finite type")

    p, q, m = multi[0]
    if any(d > 2 for d in degree):
        raise NotFiniteType("branch vertex together with a multiple bond")
    if m == 3:
        if n != 2:
            raise NotFiniteType("triple bond in rank > 2")
        return "G2"
    # one double bond on a path
    ends = [v for v in range(n) if degree[v] == 1]
    if n == 2:
        hi = max(p, q)
        lo = min(p, q)
        i, j = idxs[hi], idxs[lo]
        long_is_last = abs(a[i][j]) > abs(a[j][i])
        return "C2" if long_is_last else "B2"
    if p in ends or q in ends:
        end, inner = (p, q) if p in ends else (q, p)
        i, j = idxs[end], idxs[inner]
        if abs(a[i][j]) > abs(a[j][i]):
            return f"C{n}"  # long root at the tip
        return f"B{n}"
    if n == 4:
        return "F4"
    raise NotFiniteType("interior double bond outside F4")


def _arm_lengths(adj, branch):
    lengths = []
    for start in adj[branch]:
        ln = 1
        prev, cur = branch, start
        while True:
            nxts = [v for v in adj[cur] if v != prev]
            if not nxts:
                break
            if len(nxts) > 1:
                raise NotFiniteType("nested branch vertices")
            prev, cur = cur, nxts[0]
            ln += 1
        lengths.append(ln)
    return lengths


# -- catalog -----------------------------------------------------------


_NAME_RE = re.compile(r"^(SL|GL|PGL|SP|SO|G|T)(\d+)$")

CATALOG_HELP = (
    "SL<n> (n>=2), GL<n> (n>=1), PGL<n> (n>=2), Sp<2n>, SO<n> (n>=3), G2, "
    "T<n> (split torus of rank n); products join factors with 'x', "
    "e.g. SL2xT1."
)


def standard_datum(name: str) -> RootDatum:
    """Catalog of standard split root data, with fixed coordinates.

    SL_n and G2 use the simple coroots as the basis of the coweight
    lattice; PGL_n uses the fundamental coweights; GL_n, Sp_2n and SO_n
    use the coordinate (diagonal-torus) basis.
    """
    factors = [f for f in name.replace(" ", "").split("x") if f]
    if not factors:
        raise UnknownGroup("empty group name")
    data = [_atomic_datum(f) for f in factors]
    out = data[0]
    for d in data[1:]:
        out = direct_sum(out, d)
    return out


def direct_sum(a: RootDatum, b: RootDatum) -> RootDatum:
    def pad_left(v, k):
        return v + (0,) * k

    def pad_right(v, k):
        return (0,) * k + v

    coroots = [pad_left(v, b.rank) for v in a.simple_coroots] + [
        pad_right(v, a.rank) for v in b.simple_coroots
    ]
    roots = [pad_left(v, b.rank) for v in a.simple_roots] + [
        pad_right(v, a.rank) for v in b.simple_roots
    ]
    return RootDatum(a.rank + b.rank, matrix(coroots), matrix(roots))


def _atomic_datum(token: str) -> RootDatum:
    m = _NAME_RE.match(token.upper())
    if not m:
        raise UnknownGroup(f"unrecognized group {token!r}; catalog: {CATALOG_HELP}")
    family, n = m.group(1), int(m.group(2))
    if family == "T":
        if n < 1:
            raise UnknownGroup("torus rank must be >= 1")
        return RootDatum(n, (), ())
    if family == "SL":
        if n < 2:
            raise UnknownGroup("SL<n> needs n >= 2")
        r = n - 1
        cartan = _type_a_cartan(r)
        return RootDatum(r, identity_matrix(r), cartan)
    if family == "PGL":
        if n < 2:
            raise UnknownGroup("PGL<n> needs n >= 2")
        r = n - 1
        cartan = _type_a_cartan(r)
        return RootDatum(r, transpose(cartan), identity_matrix(r))
    if family == "GL":
        if n < 1:
            raise UnknownGroup("GL<n> needs n >= 1")
        steps = tuple(
            tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n))
            for i in range(n - 1)
        )
        return RootDatum(n, steps, steps)
    if family == "SP":
        if n < 2 or n % 2:
            raise UnknownGroup("Sp<2n> needs an even argument >= 2")
        r = n // 2
        coroots = [_step(r, i) for i in range(r - 1)] + [_unit(r, r - 1)]
        roots = [_step(r, i) for i in range(r - 1)] + [vec_scale(_unit(r, r - 1), 2)]
        return RootDatum(r, matrix(coroots), matrix(roots))
    if family == "SO":
        if n < 3:
            raise UnknownGroup("SO<n> needs n >= 3")
        if n % 2:
            r = (n - 1) // 2
            coroots = [_step(r, i) for i in range(r - 1)] + [vec_scale(_unit(r, r - 1), 2)]
            roots = [_step(r, i) for i in range(r - 1)] + [_unit(r, r - 1)]
            return RootDatum(r, matrix(coroots), matrix(roots))
        r = n // 2
        if r < 2:
            raise UnknownGroup("SO<n> with even n needs n >= 4")
        last = tuple(1 if k >= r - 2 else 0 for k in range(r))
        coroots = [_step(r, i) for i in range(r - 1)] + [last]
        roots = list(coroots)
        return RootDatum(r, matrix(coroots), matrix(roots))
    if family == "G":
        if n != 2:
            raise UnknownGroup("only G2 exists in the G family")
        cartan = matrix([[2, -1], [-3, 2]])
        return RootDatum(2, identity_matrix(2), cartan)
    raise UnknownGroup(f"unrecognized group {token!r}")


def _type_a_cartan(r: int) -> Matrix:
    return tuple(
        tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r))
        for i in range(r)
    )


def _step(r: int, i: int) -> Vector:
    return tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(r))
