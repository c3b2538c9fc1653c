"""
Coxeter groups of finite and affine Weyl type, Bruhat order, Kazhdan-Lusztig
polynomials, mu-coefficients and length-truncated left-cell graphs.

Elements are realized through the faithful reflection representation on the
root lattice (``s_i(a_j) = a_j - cartan[i][j] a_i``), which makes descents a
sign test: ``w s < w`` iff ``w(a_s) < 0``. Every element is identified by its
lexicographically least reduced word, obtained by repeatedly stripping the
smallest left descent.

The affine group is W_p, the group generated by reflections in the walls
``<x, alpha^v> = n p``. Its extra generator ``0`` is the reflection in the
upper wall of the lowest alcove, ``<x, alpha_h^v> = p`` with ``alpha_h`` the
highest short root; so its Coxeter diagram is the extended diagram of the
dual root system.

>>> W = presentation("affB2")
>>> x = W.element((0, 1, 0))
>>> x.length, sorted(descents_left(x))
(3, [0])
>>> print(kl_polynomial(W.identity, W.element((0, 1, 0))))
1
>>> print(kl_polynomial(W.identity, W.element((1, 0, 1, 2, 1, 0))))
1 + q
"""

__all__ = [
    "CoxeterGroup", "CoxeterElement", "KLPolynomial", "CellGraph",
    "presentation", "finite_group", "affine_group",
    "multiply", "length", "descents_left", "descents_right",
    "bruhat_leq", "kl_polynomial", "kl_polynomial_with", "mu", "left_cell_graph",
    "act_on_weight", "b2_cell_strip", "save_cache", "load_cache",
    "parse_word", "format_word", "CACHE_VERSION", "kl_polynomial_slow", "bruhat_leq_subword",
]

import re
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .affine import Alcove, affine_reflect, alcove_of, b2_linked_family, translate_by_p_omega2
from .errors import BoundExceeded, InvalidInput
from .rootsys import RootSystem, build_root_system, extended_cartan_matrix, parse_type

CACHE_VERSION = "v1"
DEFAULT_AFFINE_BOUND = 12

_COXETER_M = {0: 2, 1: 3, 2: 4, 3: 6}


class KLPolynomial(tuple):
    """Integer polynomial in q as a coefficient tuple, constant term first.

    The zero polynomial is the empty tuple.
    """

    def __new__(cls, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return super().__new__(cls, c)

    @property
    def degree(self) -> int:
        return len(self) - 1

    def coeff(self, k: int) -> int:
        return self[k] if 0 <= k < len(self) else 0

    def __add__(self, other):
        n = max(len(self), len(other))
        return KLPolynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other):
        n = max(len(self), len(other))
        return KLPolynomial(self.coeff(k) - other.coeff(k) for k in range(n))

    def shift(self, k: int) -> "KLPolynomial":
        """Multiply by q**k."""
        return KLPolynomial((0,) * k + tuple(self)) if self else self

    def scale(self, c: int) -> "KLPolynomial":
        return KLPolynomial(c * x for x in self)

    def __call__(self, q: int) -> int:
        return sum(c * q ** k for k, c in enumerate(self))

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k, c in enumerate(self):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"KLPolynomial({list(self)})"


ZERO = KLPolynomial()
ONE = KLPolynomial((1,))


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    if not re.fullmatch(r"\d+(-\d+)*", text):
        raise InvalidInput(f"cannot parse word {text!r}; expected hyphen-separated generator indices or 'e'")
    return tuple(int(x) for x in text.split("-"))


def format_word(word: Sequence[int]) -> str:
    return "-".join(map(str, word)) if word else "e"


@dataclass(frozen=True, eq=False)
class CoxeterElement:
    group: "CoxeterGroup" = field(repr=False)
    # internal index into the group's element table
    idx: int = field(repr=False)

    @property
    def word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word, in generator labels."""
        return self.group._label_word(self.idx)

    @property
    def length(self) -> int:
        return len(self.group._words[self.idx])

    def __eq__(self, other):
        return isinstance(other, CoxeterElement) and self.group is other.group and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.group), self.idx))

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"<{self.group.name} {format_word(self.word)}>"

    def __str__(self):
        return format_word(self.word)


class CoxeterGroup:
    """A crystallographic Coxeter group given by a (generalized) Cartan matrix.

    ``labels[i]`` is the user-facing name of generator ``i``.
    """

    def __init__(self, name: str, cartan: Sequence[Sequence[int]], labels: Sequence[int],
                 max_length: int | None = None):
        self.name = name
        self.cartan = tuple(tuple(r) for r in cartan)
        self.labels = tuple(labels)
        self.rank = len(self.cartan)
        self.max_length = max_length
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        self._lock = threading.RLock()

        n = self.rank
        ident = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        self._images: list = [ident]
        self._inverse: list = [ident]
        self._words: list[tuple[int, ...]] = [()]
        self._index = {ident: 0}
        self._left: dict[tuple[int, int], int] = {}
        self._right: dict[tuple[int, int], int] = {}
        self._leq: dict[tuple[int, int], bool] = {}
        self._lower: dict[int, frozenset] = {0: frozenset({0})}
        self._kl: dict[tuple[int, int], KLPolynomial] = {}
        self._layers: list[list[int]] = [[0]]

    # -- presentation data ---------------------------------------------------

    @property
    def coxeter_matrix(self) -> tuple[tuple[int | float, ...], ...]:
        def m(i, j):
            if i == j:
                return 1
            prod = self.cartan[i][j] * self.cartan[j][i]
            return _COXETER_M.get(prod, float("inf"))
        return tuple(tuple(m(i, j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def identity(self) -> CoxeterElement:
        return CoxeterElement(self, 0)

    def generator(self, label: int) -> CoxeterElement:
        return self.element((label,))

    def element(self, word: Sequence[int]) -> CoxeterElement:
        """The element with the given (not necessarily reduced) word."""
        idx = 0
        for lab in word:
            if lab not in self._pos:
                raise InvalidInput(f"{self.name} has no generator {lab}; generators are {list(self.labels)}")
            idx = self._rmul(idx, self._pos[lab])
        return CoxeterElement(self, idx)

    def check_bound(self, x: CoxeterElement) -> None:
        if self.max_length is not None and x.length > self.max_length:
            raise BoundExceeded(f"length {x.length} of {x} exceeds the bound {self.max_length} for {self.name}")

    def elements_up_to(self, L: int) -> list[CoxeterElement]:
        """All elements of length at most L, by length then canonical word."""
        if self.max_length is not None and L > self.max_length:
            raise BoundExceeded(f"length bound {L} exceeds the configured maximum {self.max_length} for {self.name}")
        self._grow(L)
        return [CoxeterElement(self, i) for layer in self._layers[:L + 1] for i in layer]

    def is_finite_ball(self, L: int) -> bool:
        """True when no element is longer than L (the ball is the whole group)."""
        self._grow(L + 1)
        return not self._layers[L + 1]

    def _grow(self, L: int) -> None:
        with self._lock:
            while len(self._layers) <= L:
                nxt = set()
                for x in self._layers[-1]:
                    for s in range(self.rank):
                        if not self._right_descent(x, s):
                            nxt.add(self._rmul(x, s))
                self._layers.append(sorted(nxt, key=lambda i: self._words[i]))

    # -- internal arithmetic on element indices ---------------------------------

    def _label_word(self, idx: int) -> tuple[int, ...]:
        return tuple(self.labels[i] for i in self._words[idx])

    @staticmethod
    def _negative(v) -> bool:
        return any(c < 0 for c in v)

    def _right_descent(self, idx: int, s: int) -> bool:
        return self._negative(self._images[idx][s])

    def _left_descent(self, idx: int, s: int) -> bool:
        return self._negative(self._inverse[idx][s])

    def _reflect(self, s: int, v):
        """s applied to a root-lattice vector."""
        t = sum(self.cartan[s][k] * v[k] for k in range(self.rank))
        if not t:
            return v
        out = list(v)
        out[s] -= t
        return tuple(out)

    def _times_s(self, images, s):
        """Images of w s, given images of w."""
        row = self.cartan[s]
        ws = images[s]
        return tuple(
            img if not row[j] else tuple(a - row[j] * b for a, b in zip(img, ws))
            for j, img in enumerate(images)
        )

    def _intern(self, images, inverse) -> int:
        idx = self._index.get(images)
        if idx is not None:
            return idx
        with self._lock:
            idx = self._index.get(images)
            if idx is not None:
                return idx
            word = []
            cur_img, cur_inv = images, inverse
            while True:
                s = next((t for t in range(self.rank) if self._negative(cur_inv[t])), None)
                if s is None:
                    break
                word.append(s)
                # s w: apply s to images, right-multiply the inverse by s
                cur_img = tuple(self._reflect(s, v) for v in cur_img)
                cur_inv = self._times_s(cur_inv, s)
            idx = len(self._words)
            self._images.append(images)
            self._inverse.append(inverse)
            self._words.append(tuple(word))
            self._index[images] = idx
            return idx

    def _rmul(self, idx: int, s: int) -> int:
        key = (idx, s)
        got = self._right.get(key)
        if got is None:
            images = self._times_s(self._images[idx], s)
            inverse = tuple(self._reflect(s, v) for v in self._inverse[idx])
            got = self._intern(images, inverse)
            self._right[key] = got
        return got

    def _lmul(self, s: int, idx: int) -> int:
        key = (s, idx)
        got = self._left.get(key)
        if got is None:
            images = tuple(self._reflect(s, v) for v in self._images[idx])
            inverse = self._times_s(self._inverse[idx], s)
            got = self._intern(images, inverse)
            self._left[key] = got
        return got

    def _len(self, idx: int) -> int:
        return len(self._words[idx])

    # -- Bruhat order ------------------------------------------------------------

    def _bruhat(self, y: int, w: int) -> bool:
        ly, lw = self._len(y), self._len(w)
        if ly > lw:
            return False
        if ly == lw:
            return y == w
        if ly == 0:
            return True
        key = (y, w)
        got = self._leq.get(key)
        if got is None:
            # Z-property: for s w < w, y <= w iff min(y, s y) <= s w
            s = self._words[w][0]
            sw = self._lmul(s, w)
            y2 = self._lmul(s, y) if self._left_descent(y, s) else y
            got = self._bruhat(y2, sw)
            self._leq[key] = got
        return got

    def _lower_interval(self, w: int) -> frozenset:
        got = self._lower.get(w)
        if got is None:
            s = self._words[w][0]
            below = self._lower_interval(self._lmul(s, w))
            got = below | frozenset(self._lmul(s, z) for z in below)
            self._lower[w] = got
        return got

    # -- Kazhdan-Lusztig polynomials ----------------------------------------------

    def _mu(self, y: int, w: int) -> int:
        diff = self._len(w) - self._len(y)
        if diff <= 0 or diff % 2 == 0:
            return 0
        return self._kl_poly(y, w).coeff((diff - 1) // 2)

    def _kl_poly(self, y: int, w: int) -> KLPolynomial:
        key = (y, w)
        got = self._kl.get(key)
        if got is not None:
            return got
        if not self._bruhat(y, w):
            got = ZERO
        elif self._len(w) - self._len(y) <= 2:
            got = ONE
        else:
            got = self._kl_recursion(y, w, self._words[w][0])
        with self._lock:
            self._kl.setdefault(key, got)
        return got

    def _kl_recursion(self, y: int, w: int, s: int) -> KLPolynomial:
        """P_{y,w} from the left descent s of w:

        P_{y,w} = q^{1-c} P_{sy,v} + q^c P_{y,v} - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{y,z}
        with v = s w and c = 1 if s y < y else 0.
        """
        v = self._lmul(s, w)
        sy = self._lmul(s, y)
        c = 1 if self._left_descent(y, s) else 0
        total = self._kl_poly(sy, v).shift(1 - c) + self._kl_poly(y, v).shift(c)
        lw, ly = self._len(w), self._len(y)
        for z in self._lower_interval(v):
            if z == v or not self._left_descent(z, s):
                continue
            lz = self._len(z)
            if lz < ly or (self._len(v) - lz) % 2 == 0:
                continue
            m = self._mu(z, v)
            if m:
                total = total - self._kl_poly(y, z).shift((lw - lz) // 2).scale(m)
        return total


def _check_same(*xs: CoxeterElement) -> "CoxeterGroup":
    group = xs[0].group
    for x in xs[1:]:
        if x.group is not group:
            raise InvalidInput(f"elements from different presentations: {group.name} and {x.group.name}")
    return group


def multiply(x: CoxeterElement, y: CoxeterElement) -> CoxeterElement:
    group = _check_same(x, y)
    idx = x.idx
    for s in group._words[y.idx]:
        idx = group._rmul(idx, s)
    return CoxeterElement(group, idx)


def length(x: CoxeterElement) -> int:
    return x.length


def descents_left(x: CoxeterElement) -> set[int]:
    g = x.group
    return {g.labels[s] for s in range(g.rank) if g._left_descent(x.idx, s)}


def descents_right(x: CoxeterElement) -> set[int]:
    g = x.group
    return {g.labels[s] for s in range(g.rank) if g._right_descent(x.idx, s)}


def bruhat_leq(y: CoxeterElement, w: CoxeterElement) -> bool:
    group = _check_same(y, w)
    return group._bruhat(y.idx, w.idx)


def kl_polynomial(y: CoxeterElement, w: CoxeterElement) -> KLPolynomial:
    """Kazhdan-Lusztig polynomial P_{y,w}; zero when y is not below w."""
    group = _check_same(y, w)
    group.check_bound(w)
    return group._kl_poly(y.idx, w.idx)


def kl_polynomial_with(y: CoxeterElement, w: CoxeterElement, s: int) -> KLPolynomial:
    """P_{y,w} through one recursion step at the chosen left descent ``s`` of w
    (a generator label). Used to check that the choice does not matter."""
    group = _check_same(y, w)
    group.check_bound(w)
    pos = group._pos[s]
    if not group._left_descent(w.idx, pos):
        raise InvalidInput(f"{s} is not a left descent of {w}")
    if not group._bruhat(y.idx, w.idx):
        return ZERO
    return group._kl_recursion(y.idx, w.idx, pos)


def mu(y: CoxeterElement, w: CoxeterElement) -> int:
    """Coefficient of q^((l(w)-l(y)-1)/2) in P_{y,w}; 0 unless y < w with odd length difference."""
    group = _check_same(y, w)
    group.check_bound(w)
    return group._mu(y.idx, w.idx)


@dataclass
class CellGraph:
    group: CoxeterGroup = field(repr=False)
    max_length: int
    vertices: list[CoxeterElement]
    # (from, to): ``to`` lies below ``from`` in the left preorder
    edges: list[tuple[CoxeterElement, CoxeterElement]]
    components: list[list[CoxeterElement]]
    stable: list[bool]

    def component_of(self, x: CoxeterElement) -> list[CoxeterElement]:
        for comp in self.components:
            if x in comp:
                return comp
        raise KeyError(x)

    def to_json(self) -> dict:
        return {
            "presentation": self.group.name,
            "maxlen": self.max_length,
            "truncated": any(not s for s in self.stable),
            "components": [
                {"elements": [format_word(x.word) for x in comp], "stable": st}
                for comp, st in zip(self.components, self.stable)
            ],
        }


def left_cell_graph(group: CoxeterGroup, L: int) -> CellGraph:
    """Left-preorder graph on the elements of length <= L and its strongly
    connected components.

    There is an edge w -> z when mu(z, w) or mu(w, z) is nonzero and the left
    descent set of z is not contained in that of w. Components holding an
    element of length L are marked unstable whenever longer elements exist:
    the true cells of an infinite group are not visible in a finite ball, so
    even "stable" components are only as good as the truncation.
    """
    elems = group.elements_up_to(L)
    ids = [x.idx for x in elems]
    ldesc = {i: frozenset(s for s in range(group.rank) if group._left_descent(i, s)) for i in ids}
    graph = nx.DiGraph()
    graph.add_nodes_from(ids)
    for a_pos, a in enumerate(ids):
        for b in ids[a_pos + 1:]:
            la, lb = group._len(a), group._len(b)
            if (lb - la) % 2 == 0:
                continue
            lo, hi = (a, b) if la < lb else (b, a)
            if not group._mu(lo, hi):
                continue
            if not ldesc[a] <= ldesc[b]:
                graph.add_edge(b, a)
            if not ldesc[b] <= ldesc[a]:
                graph.add_edge(a, b)
    order = {i: k for k, i in enumerate(ids)}
    comps = [sorted(c, key=order.__getitem__) for c in nx.strongly_connected_components(graph)]
    comps.sort(key=lambda c: order[c[0]])
    longer_exist = not group.is_finite_ball(L)
    stable = [not (longer_exist and any(group._len(i) == L for i in c)) for c in comps]
    wrap = {i: CoxeterElement(group, i) for i in ids}
    return CellGraph(
        group, L, list(elems),
        [(wrap[a], wrap[b]) for a, b in sorted(graph.edges, key=lambda e: (order[e[0]], order[e[1]]))],
        [[wrap[i] for i in c] for c in comps],
        stable,
    )


# -- slow reference implementation --------------------------------------------------
# Kept deliberately naive: right descents instead of left, Bruhat order by the
# subword property, no tables. Only the word -> element map is shared.


def bruhat_leq_subword(y: CoxeterElement, w: CoxeterElement) -> bool:
    """Bruhat order by the subword property of a reduced word of w."""
    group = _check_same(y, w)
    return y in _subword_products(group, w.word)


def _subword_products(group, word):
    found = {group.identity}
    for lab in word:
        s = group.element((lab,))
        found |= {multiply(x, s) for x in found}
    return found


def _mu_slow(z, v):
    diff = v.length - z.length
    if diff <= 0 or diff % 2 == 0:
        return 0
    return kl_polynomial_slow(z, v).coeff((diff - 1) // 2)


def kl_polynomial_slow(y: CoxeterElement, w: CoxeterElement) -> KLPolynomial:
    """P_{y,w} by plain recursion on a right descent of w. Exponential; lengths <= 8."""
    group = _check_same(y, w)
    below = _subword_products(group, w.word)
    if y not in below:
        return ZERO
    if w.length - y.length <= 2:
        return ONE
    s = group.element(w.word[-1:])
    v = multiply(w, s)
    ys = multiply(y, s)
    c = 1 if ys.length < y.length else 0
    total = kl_polynomial_slow(ys, v).shift(1 - c) + kl_polynomial_slow(y, v).shift(c)
    for z in _subword_products(group, v.word):
        if z == v or multiply(z, s).length > z.length or not bruhat_leq_subword(y, z):
            continue
        m = _mu_slow(z, v)
        if m:
            total = total - kl_polynomial_slow(y, z).shift((w.length - z.length) // 2).scale(m)
    return total


# -- construction ----------------------------------------------------------------


def finite_group(type_label: str, rank: int) -> CoxeterGroup:
    rs = build_root_system(type_label, rank)
    return CoxeterGroup(f"fin{rs.name}", rs.cartan, range(1, rank + 1))


def affine_group(type_label: str, rank: int, max_length: int = DEFAULT_AFFINE_BOUND) -> CoxeterGroup:
    """W_p for the given type; generator 0 is the reflection in the upper wall
    of the lowest alcove."""
    rs = build_root_system(type_label, rank)
    dual = [list(col) for col in zip(*rs.cartan)]
    group = CoxeterGroup(f"aff{rs.name}", extended_cartan_matrix(dual), range(0, rank + 1), max_length)
    group.rootsystem = rs
    return group


@lru_cache(maxsize=None)
def presentation(name: str, max_length: int | None = None) -> CoxeterGroup:
    """Group by presentation id, e.g. ``finB2`` or ``affB2``."""
    m = re.fullmatch(r"(fin|aff)([A-Za-z]\d+)", name)
    if not m:
        raise InvalidInput(f"unknown presentation {name!r}; expected fin<type> or aff<type>, e.g. affB2")
    label, rank = parse_type(m.group(2))
    if m.group(1) == "fin":
        return finite_group(label, rank)
    return affine_group(label, rank, max_length or DEFAULT_AFFINE_BOUND)


def _highest_short_root(rs: RootSystem) -> int:
    return max(range(rs.N), key=lambda a: (sum(rs.coroot_pairings[a]), a))


def act_on_weight(x: CoxeterElement, w: Sequence[int], p: int) -> tuple[int, ...]:
    """Action of an element of W_p on a shifted weight (the dot action)."""
    group = x.group
    rs = getattr(group, "rootsystem", None)
    if rs is None:
        raise InvalidInput(f"{group.name} is not an affine Weyl group W_p")
    top = _highest_short_root(rs)
    w = tuple(w)
    for lab in reversed(x.word):
        w = affine_reflect(w, top, 1, p, rs) if lab == 0 else affine_reflect(w, lab - 1, 0, p, rs)
    return w


def b2_cell_strip(p: int) -> list[Alcove]:
    """Alcoves of the translates by p*omega_2 of the linked family A..E of the
    lowest-alcove weight ((p-3)/2, 1).

    This encodes a reading of the lower part of the canonical left cell for
    the minimal orbit of B2; it is not the output of a cell computation.
    """
    rs = build_root_system("B", 2)
    base = ((p - 3) // 2, 1)
    fam = b2_linked_family(base, p)
    return [alcove_of(translate_by_p_omega2(fam[k], p), p, rs) for k in "ABCDE"]


# -- persistent cache ---------------------------------------------------------------


def save_cache(group: CoxeterGroup, path) -> int:
    """Write every computed nonzero P_{y,w}; returns the number of records."""
    with group._lock:
        items = [(y, w, poly) for (y, w), poly in group._kl.items() if poly]
    items.sort(key=lambda t: (group._len(t[1]), group._words[t[1]], group._len(t[0]), group._words[t[0]]))
    with open(path, "w") as fh:
        fh.write(f"klcache {CACHE_VERSION} {group.name}\n")
        for y, w, poly in items:
            ys = format_word(group._label_word(y))
            ws = format_word(group._label_word(w))
            fh.write(f"{ys} {ws} {' '.join(map(str, poly))}\n")
    return len(items)


def load_cache(group: CoxeterGroup, path) -> int:
    """Merge a cache file into the group's table; returns the number of records."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "klcache":
            raise InvalidInput(f"{path}: not a KL cache file")
        if header[1] != CACHE_VERSION:
            raise InvalidInput(f"{path}: unsupported cache version {header[1]}")
        if header[2] != group.name:
            raise InvalidInput(f"{path}: cache is for {header[2]}, not {group.name}")
        count = 0
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) < 3:
                raise InvalidInput(f"{path}:{lineno}: malformed record")
            y = group.element(parse_word(parts[0]))
            w = group.element(parse_word(parts[1]))
            poly = KLPolynomial(int(c) for c in parts[2:])
            with group._lock:
                old = group._kl.setdefault((y.idx, w.idx), poly)
            if old != poly:
                raise InvalidInput(f"{path}:{lineno}: conflicts with computed value {old}")
            count += 1
    return count
