"""
Root systems of types A-G with Bourbaki numbering, plus the pieces of
Lie combinatorics everything else is built on: coroot pairings of
rho-shifted weights, Weyl's dimension formula, and the search for
subsystems of the extended Dynkin diagram with a prescribed number of
positive roots.

Weights are always stored rho-shifted, in fundamental-weight coordinates:
a weight is the integer tuple ``(<lam+rho, a_1^v>, ..., <lam+rho, a_n^v>)``.
In those coordinates rho itself is the all-ones vector.

The Cartan matrix follows ``cartan[i][j] = <a_i^v, a_j>``, so for B2
(a_1 long, a_2 short) it is ``((2, -1), (-2, 2))``.

>>> rs = build_root_system("B", 2)
>>> rs.N, rs.h
(4, 4)
>>> rs.positive_roots
((1, 0), (0, 1), (1, 1), (1, 2))
>>> [pairing((1, 1), i, rs) for i in range(rs.N)]
[1, 1, 3, 2]
>>> weyl_dim((2, 1), rs)
5
"""

__all__ = [
    "RootSystem", "ShiftedWeight", "SubsystemConfiguration",
    "build_root_system", "parse_type", "num_positive_roots",
    "pairing", "pairings", "is_dominant_regular", "weyl_dim",
    "weyl_numerator", "weyl_denominator", "root_in_weight_coords",
    "simple_reflection", "weight_multiplicities",
    "subsystem_configurations", "dynkin_type", "extended_cartan_matrix",
]

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidInput

# <lam+rho, a_i^v> for i = 1..rank
ShiftedWeight = tuple[int, ...]

TYPE_LABELS = "ABCDEFG"


def num_positive_roots(label: str, rank: int) -> int:
    """Number of positive roots of the simple type ``label`` of the given rank."""
    if label == "A":
        return rank * (rank + 1) // 2
    if label in "BC":
        return rank * rank
    if label == "D":
        return rank * (rank - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[label, rank]


def _check_type(label: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }.get(label, False)
    if not ok:
        raise InvalidInput(f"invalid root system type {label}{rank}")


def parse_type(text: str) -> tuple[str, int]:
    """Parse ``"B2"`` into ``("B", 2)``."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text)
    if not m:
        raise InvalidInput(f"cannot parse root system type {text!r}")
    label, rank = m.group(1).upper(), int(m.group(2))
    _check_type(label, rank)
    return label, rank


def _cartan(label: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if label in "ABCD":
        for i in range(n - 2):
            bond(i, i + 1)
        if label == "A" and n >= 2:
            bond(n - 2, n - 1)
        elif label == "B":
            bond(n - 2, n - 1, -1, -2)  # a_n short
        elif label == "C":
            bond(n - 2, n - 1, -2, -1)  # a_n long
        elif label == "D":
            bond(n - 3, n - 1)
    elif label == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif label == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # a_3, a_4 short
        bond(2, 3)
    elif label == "G":
        bond(0, 1, -3, -1)  # a_1 short
    return a


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> list[int]:
    """Squared root lengths d_i with d_i a_ij = d_j a_ji, shortest length 1.

    Assumes a connected diagram.
    """
    n = len(cartan)
    d: list = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    low = min(d)
    return [int(x / low) for x in d]


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    # simple-root coordinates, ordered by height then reverse-lexicographic
    positive_roots: tuple[tuple[int, ...], ...]
    # <x, alpha^v> = sum_i coroot_pairings[alpha][i] * x_i for shifted x
    coroot_pairings: tuple[tuple[int, ...], ...]
    # squared lengths of the simple roots, shortest = 1
    root_lengths: tuple[int, ...]
    N: int
    h: int
    # coefficients of the highest root; the affine node is attached via -theta
    highest_root: tuple[int, ...]
    extended_cartan: tuple[tuple[int, ...], ...]

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def rho(self) -> ShiftedWeight:
        return (1,) * self.rank

    def norm(self, root: Sequence[int]) -> Fraction:
        """Squared length of a vector given in simple-root coordinates."""
        total = Fraction(0)
        for i, ci in enumerate(root):
            if not ci:
                continue
            for j, cj in enumerate(root):
                if cj:
                    total += Fraction(ci * cj * self.root_lengths[i] * self.cartan[i][j], 2)
        return total

    def root_index(self, root: Sequence[int]) -> int:
        return self.positive_roots.index(tuple(root))

    def is_long(self, index: int) -> bool:
        return self.norm(self.positive_roots[index]) == max(self.root_lengths)

    def root_label(self, index: int) -> str:
        """Human-readable name such as ``a1+2a2``."""
        parts = []
        for i, c in enumerate(self.positive_roots[index]):
            if c:
                parts.append(f"{'' if c == 1 else c}a{i + 1}")
        return "+".join(parts)


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                # the a_i-string through beta runs from beta - q a_i to beta + p a_i,
                # with p - q = -<beta, a_i^v>
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                pairing_ = sum(cartan[i][j] * beta[j] for j in range(n))
                if q - pairing_ > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        nxt.add(up)
        roots |= nxt
        layer = list(nxt)
    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


def extended_cartan_matrix(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    """Cartan matrix of the untwisted affine diagram, affine node first.

    The affine simple root is ``delta - theta`` for the highest root theta.
    """
    n = len(cartan)
    d = _symmetrizer(cartan)
    theta = _positive_roots([list(r) for r in cartan])[-1]
    norm = sum(Fraction(theta[i] * theta[j] * d[i] * cartan[i][j], 2) for i in range(n) for j in range(n))
    theta_v = [Fraction(theta[i] * d[i]) / norm for i in range(n)]
    ext = [[2] + [0] * n] + [[0] + list(row) for row in cartan]
    for j in range(n):
        # <a_0^v, a_j> = -<theta^v, a_j>;  <a_j^v, a_0> = -<theta, a_j^v>
        ext[0][j + 1] = -int(sum(theta_v[i] * cartan[i][j] for i in range(n)))
        ext[j + 1][0] = -sum(cartan[j][i] * theta[i] for i in range(n))
    return ext


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    type_label = type_label.upper()
    _check_type(type_label, rank)
    cartan = _cartan(type_label, rank)
    d = _symmetrizer(cartan)
    roots = _positive_roots(cartan)

    def norm(root):
        return sum(
            Fraction(root[i] * root[j] * d[i] * cartan[i][j], 2)
            for i in range(rank) for j in range(rank)
        )

    coroots = []
    for root in roots:
        nr = norm(root)
        coroot = [Fraction(root[i] * d[i]) / nr for i in range(rank)]
        assert all(c.denominator == 1 for c in coroot)
        coroots.append(tuple(int(c) for c in coroot))

    theta = roots[-1]
    ext = extended_cartan_matrix(cartan)

    return RootSystem(
        type_label=type_label,
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        positive_roots=tuple(roots),
        coroot_pairings=tuple(coroots),
        root_lengths=tuple(d),
        N=len(roots),
        h=sum(theta) + 1,
        highest_root=theta,
        extended_cartan=tuple(tuple(r) for r in ext),
    )


def pairing(w: Sequence[int], alpha: int, rs: RootSystem) -> int:
    """``<w, alpha^v>`` for the positive root with index ``alpha``."""
    if not 0 <= alpha < rs.N:
        raise IndexError(f"positive root index {alpha} out of range for {rs.name}")
    return sum(c * x for c, x in zip(rs.coroot_pairings[alpha], w))


def pairings(w: Sequence[int], rs: RootSystem) -> tuple[int, ...]:
    return tuple(sum(c * x for c, x in zip(row, w)) for row in rs.coroot_pairings)


def root_in_weight_coords(alpha: int, rs: RootSystem) -> tuple[int, ...]:
    """Fundamental-weight coordinates of a positive root: ``(<alpha, a_i^v>)_i``."""
    root = rs.positive_roots[alpha]
    return tuple(sum(rs.cartan[i][j] * root[j] for j in range(rs.rank)) for i in range(rs.rank))


def simple_reflection(w: Sequence[int], i: int, rs: RootSystem) -> ShiftedWeight:
    """Linear reflection s_i acting on shifted coordinates (the dot action of W)."""
    return tuple(x - w[i] * rs.cartan[j][i] for j, x in enumerate(w))


def is_dominant_regular(w: Sequence[int]) -> bool:
    return all(x >= 1 for x in w)


def _check_weight(w: Sequence[int], rs: RootSystem) -> None:
    if len(w) != rs.rank:
        raise InvalidInput(f"weight {tuple(w)} has length {len(w)}, expected {rs.rank} for {rs.name}")


def weyl_numerator(w: Sequence[int], rs: RootSystem) -> int:
    return math.prod(pairings(w, rs))


def weyl_denominator(rs: RootSystem) -> int:
    return math.prod(sum(row) for row in rs.coroot_pairings)


def weyl_dim(w: Sequence[int], rs: RootSystem) -> int:
    """Dimension of the Weyl module with shifted highest weight ``w``."""
    _check_weight(w, rs)
    if not is_dominant_regular(w):
        raise InvalidInput(f"shifted weight {tuple(w)} is not dominant regular")
    num, den = weyl_numerator(w, rs), weyl_denominator(rs)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"Weyl quotient {num}/{den} is not exact")
    return q


def weight_multiplicities(lam: Sequence[int], rs: RootSystem) -> dict[tuple[int, ...], int]:
    """Weight multiplicities of V(lam) by Freudenthal's formula.

    ``lam`` is unshifted and dominant, in fundamental-weight coordinates.
    Meant for small weights in low rank.
    """
    n = rs.rank
    lam = tuple(lam)
    if any(x < 0 for x in lam):
        raise InvalidInput(f"weight {lam} is not dominant")
    cartan = rs.cartan
    # weight coords -> root coords: x = A y
    inv = _inverse(cartan)

    def to_roots(x):
        return [sum(inv[i][j] * x[j] for j in range(n)) for i in range(n)]

    def form(x, y):
        a, b = to_roots(x), to_roots(y)
        return sum(
            a[i] * b[j] * Fraction(rs.root_lengths[i] * cartan[i][j], 2)
            for i in range(n) for j in range(n) if a[i] and b[j]
        )

    rho = (1,) * n
    pos = [root_in_weight_coords(k, rs) for k in range(rs.N)]
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    top = form(lam_rho, lam_rho)
    depth = int(2 * sum(to_roots(lam))) + 1

    mult: dict[tuple[int, ...], int] = {lam: 1}
    frontier = {lam}
    for _ in range(depth):
        nxt = set()
        for mu in frontier:
            for i in range(n):
                a = tuple(m - c for m, c in zip(mu, [cartan[j][i] for j in range(n)]))
                nxt.add(a)
        for mu in sorted(nxt):
            if mu in mult:
                continue
            mu_rho = tuple(a + b for a, b in zip(mu, rho))
            gap = top - form(mu_rho, mu_rho)
            if gap == 0:
                mult[mu] = 0
                continue
            acc = Fraction(0)
            for alpha in pos:
                k = 1
                while True:
                    nu = tuple(m + k * a for m, a in zip(mu, alpha))
                    if nu not in mult:
                        break
                    acc += mult[nu] * form(nu, alpha)
                    k += 1
            value = 2 * acc / gap
            assert value.denominator == 1
            mult[mu] = int(value)
        frontier = {mu for mu in nxt if mult.get(mu, 0) > 0}
        if not frontier:
            break
    return {mu: m for mu, m in mult.items() if m > 0}


def _inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


# -- extended Dynkin diagram subsystems ---------------------------------------


@dataclass(frozen=True, order=True)
class SubsystemConfiguration:
    parts: tuple[tuple[str, int], ...]
    total_positive_roots: int

    @property
    def labels(self) -> list[str]:
        return [f"{t}{r}" for t, r in self.parts]


def dynkin_type(cartan: Sequence[Sequence[int]], lengths: Sequence[int]) -> tuple[str, int]:
    """Classify a connected Dynkin diagram of finite type.

    ``lengths`` are squared root lengths of the nodes (only their ratios matter).
    """
    n = len(cartan)
    if n == 1:
        return ("A", 1)
    nbrs = [[j for j in range(n) if j != i and cartan[i][j]] for i in range(n)]
    bonds = {(i, j): cartan[i][j] * cartan[j][i] for i in range(n) for j in nbrs[i]}
    edges = sum(len(x) for x in nbrs) // 2
    if edges != n - 1 or max(bonds.values()) >= 4:
        raise InvalidInput("diagram is not of finite type")
    mult = max(bonds.values())
    if mult == 3:
        return ("G", 2)
    if mult == 2:
        if n == 4 and all(len(x) <= 2 for x in nbrs):
            (i, j), = [e for e, b in bonds.items() if b == 2 and e[0] < e[1]]
            if len(nbrs[i]) == 2 and len(nbrs[j]) == 2:
                return ("F", 4)
        if n == 2:
            return ("B", 2)
        # B_n: a single short node at one end of the chain; C_n: a single long one
        short = [i for i in range(n) if lengths[i] == min(lengths)]
        return ("B", n) if len(short) == 1 else ("C", n)
    branch = [i for i in range(n) if len(nbrs[i]) == 3]
    if not branch:
        return ("A", n)
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        prev, cur, size = b, start, 1
        while True:
            nxt = [k for k in nbrs[cur] if k != prev]
            if not nxt:
                break
            prev, cur, size = cur, nxt[0], size + 1
        arms.append(size)
    arms.sort()
    if arms[0] == arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    raise InvalidInput("diagram is not of finite type")


def _components(nodes: Sequence[int], cartan) -> list[list[int]]:
    left = set(nodes)
    comps = []
    while left:
        seed = min(left)
        comp, stack = {seed}, [seed]
        while stack:
            i = stack.pop()
            for j in list(left):
                if j not in comp and cartan[i][j]:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        comps.append(sorted(comp))
    return comps


@lru_cache(maxsize=None)
def _extended_subdiagrams(rs: RootSystem) -> tuple[frozenset, frozenset]:
    """Part types of connected induced subdiagrams, and component-type multisets
    of all induced subdiagrams, over proper node subsets of the extended diagram."""
    ext = rs.extended_cartan
    lengths = (max(rs.root_lengths),) + rs.root_lengths
    n = rs.rank + 1
    connected, decompositions = set(), set()
    for size in range(1, n):
        for nodes in itertools.combinations(range(n), size):
            parts = []
            for comp in _components(nodes, ext):
                sub = [[ext[i][j] for j in comp] for i in comp]
                parts.append(dynkin_type(sub, [lengths[i] for i in comp]))
            if len(parts) == 1:
                connected.add(parts[0])
            decompositions.add(tuple(sorted(parts)))
    return frozenset(connected), frozenset(decompositions)


def subsystem_configurations(
    rs: RootSystem, target: int, max_parts: int = 2, disjoint: bool = False,
) -> list[SubsystemConfiguration]:
    """Configurations of at most ``max_parts`` root systems, each an induced
    subdiagram of the extended Dynkin diagram, with ``target`` positive roots.

    By default each part only has to occur somewhere in the diagram on its
    own (E8 -> {A7, E7} needs 14 of the 9 nodes). With ``disjoint=True`` the
    parts must be the components of a single induced subdiagram, i.e. pairwise
    orthogonal.
    """
    if target < 0:
        raise InvalidInput("target must be nonnegative")
    connected, decompositions = _extended_subdiagrams(rs)
    found = set()
    if disjoint:
        for parts in decompositions:
            if len(parts) <= max_parts and sum(num_positive_roots(*p) for p in parts) == target:
                found.add(parts)
    else:
        kinds = sorted(connected)
        for k in range(1, max_parts + 1):
            for parts in itertools.combinations_with_replacement(kinds, k):
                if sum(num_positive_roots(*p) for p in parts) == target:
                    found.add(parts)
    out = [SubsystemConfiguration(p, target) for p in found]
    return sorted(out, key=lambda c: (len(c.parts), c.parts))
