"""
Dimension formulas in the Weyl quotient format, Jantzen's formulas for the
minimal nilpotent orbit of B2, the formal-dimension function delta, the
alternating-sum pattern tying them together, Premet divisibility and the
registry of orbit data.

A ``DimensionFormula`` is ``prod(a . x + k p) * p**d / den`` evaluated at a
shifted weight ``x``. Everything is exact; a non-integral evaluation raises
``InexactDivision`` instead of rounding.

>>> block = jantzen_b2_block((1, 1), 5)
>>> block.dims
{'A': 25, 'B': 125, 'C': 225, 'D': 100}
>>> block.deltas
{'A': 25, 'B': 150, 'C': 350, 'D': 225}
>>> minimize_formula(JANTZEN_B2["A"], 5)
(25, [(1, 1), (1, 2)])
"""

__all__ = [
    "Factor", "DimensionFormula", "B2Block", "CaseRecord", "PatternResult",
    "evaluate_formula", "weyl_formula", "JANTZEN_B2", "DELTA_B2", "DELTA_B2_CELL",
    "jantzen_b2_block", "delta_b2", "delta_b2_cell", "PATTERN", "solve_pattern",
    "discover_pattern", "premet_check", "minimize_formula", "case_registry",
    "lookup_case",
]

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import b2_linked_family, is_odd_prime, lowest_alcove_weights
from .errors import EmptyRegion, InexactDivision, InvalidInput, VerificationFailure
from .rootsys import RootSystem, build_root_system, num_positive_roots

LABELS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class Factor:
    """The affine-linear form ``a . x + k p``."""
    a: tuple[int, ...]
    k: int = 0

    def __call__(self, x: Sequence[int], p: int) -> int:
        return sum(c * v for c, v in zip(self.a, x)) + self.k * p


@dataclass(frozen=True)
class DimensionFormula:
    factors: tuple[Factor, ...]
    p_power: int = 0
    denominator: int = 1

    def __post_init__(self):
        if self.p_power < 0 or self.denominator <= 0:
            raise InvalidInput("formula needs d >= 0 and a positive denominator")

    def to_json(self) -> dict:
        return {
            "factors": [{"a": list(f.a), "k": f.k} for f in self.factors],
            "d": self.p_power,
            "den": self.denominator,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DimensionFormula":
        try:
            factors = tuple(Factor(tuple(int(c) for c in f["a"]), int(f["k"])) for f in obj["factors"])
            return cls(factors, int(obj["d"]), int(obj["den"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed formula JSON: {exc}") from exc


def _formula(*factors, d=2, den=2) -> DimensionFormula:
    return DimensionFormula(tuple(Factor(tuple(a), k) for a, k in factors), d, den)


def evaluate_formula(f: DimensionFormula, w: Sequence[int], p: int) -> int:
    if any(len(fac.a) != len(w) for fac in f.factors):
        raise InvalidInput(f"weight {tuple(w)} does not match the formula's coordinate count")
    num = math.prod(fac(w, p) for fac in f.factors) * p ** f.p_power
    q, r = divmod(num, f.denominator)
    if r:
        raise InexactDivision(Fraction(num, f.denominator))
    return q


def weyl_formula(rs: RootSystem) -> DimensionFormula:
    """Weyl's dimension formula as a ``DimensionFormula`` (no p-dependence)."""
    factors = tuple(Factor(row, 0) for row in rs.coroot_pairings)
    return DimensionFormula(factors, 0, math.prod(sum(row) for row in rs.coroot_pairings))


# Jantzen's dimensions for the four simple modules of a generic block,
# as functions of the lowest-alcove base weight (r, s).
JANTZEN_B2 = {
    "A": _formula(((0, 1), 0), ((-2, -1), 1)),   # s(p-2r-s) p^2/2
    "B": _formula(((0, 0), 2), ((1, 0), 0)),     # 2pr p^2/2
    "C": _formula(((0, -1), 2), ((-2, -1), 1)),  # (2p-s)(p-2r-s) p^2/2
    "D": _formula(((0, 1), 0), ((2, 1), 1)),     # s(p+2r+s) p^2/2
}

DELTA_B2 = _formula(((0, 1), 0), ((2, 1), -1))            # s(2r+s-p) p^2/2
DELTA_B2_CELL = _formula(((0, 1), -1), ((2, 1), -2))      # (s-p)(2r+s-2p) p^2/2


def _half(num: int) -> int:
    # s(2r+s-p) is even for odd p: s and 2r+s-p have opposite parity
    assert num % 2 == 0, "odd numerator in delta; p must be odd"
    return num // 2


def delta_b2(w: Sequence[int], p: int) -> int:
    """Formal dimension ``s(2r+s-p) p^2 / 2``; any sign allowed."""
    r, s = w
    if p % 2 == 0:
        raise InvalidInput(f"p={p} must be odd")
    return _half(s * (2 * r + s - p)) * p * p


def delta_b2_cell(w: Sequence[int], p: int) -> int:
    """delta translated up by p*omega_2: ``(s-p)(2r+s-2p) p^2 / 2``."""
    r, s = w
    if p % 2 == 0:
        raise InvalidInput(f"p={p} must be odd")
    return _half((s - p) * (2 * r + s - 2 * p)) * p * p


def premet_check(dims: Iterable[int], p: int, d: int) -> bool:
    q = p ** d
    return all(x % q == 0 for x in dims)


@dataclass(frozen=True)
class B2Block:
    base: tuple[int, int]
    p: int
    dims: dict[str, int]
    linked: dict[str, tuple[int, int]]
    deltas: dict[str, int]


def jantzen_b2_block(base: Sequence[int], p: int) -> B2Block:
    linked = b2_linked_family(base, p)  # validates p and the lowest alcove
    base = tuple(base)
    dims = {k: evaluate_formula(JANTZEN_B2[k], base, p) for k in LABELS}
    deltas = {k: delta_b2(linked[k], p) for k in LABELS}
    if not (all(v > 0 for v in dims.values()) and premet_check(dims.values(), p, 2)):
        raise VerificationFailure(f"block dims {dims} at p={p} are not positive multiples of p^2")
    return B2Block(base, p, dims, linked, deltas)


# rows A..D over columns (delta_A, delta_B, delta_C, delta_D)
PATTERN = (
    (1, 0, 0, 0),
    (-1, 1, 0, 0),
    (1, -1, 1, 0),
    (1, -1, 0, 1),
)


@dataclass(frozen=True)
class PatternResult:
    matrix: tuple[tuple[int, ...], ...]
    verified: bool
    # number of {-1,0,1} lower-unitriangular matrices fitting the block (discovery mode)
    solutions: int | None = None


def _apply(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def solve_pattern(block: B2Block, discover: bool = False) -> PatternResult:
    """Check ``dims == PATTERN . deltas`` for a block; raise on mismatch."""
    deltas = tuple(block.deltas[k] for k in LABELS)
    dims = tuple(block.dims[k] for k in LABELS)
    got = _apply(PATTERN, deltas)
    if got != dims:
        raise VerificationFailure(f"pattern gives {got}, formulas give {dims} (base {block.base}, p={block.p})")
    solutions = None
    if discover:
        found = discover_pattern([block])
        if PATTERN not in found:
            raise VerificationFailure("discovery search missed the known pattern")
        solutions = len(found)
    return PatternResult(PATTERN, True, solutions)


def discover_pattern(blocks: Sequence[B2Block]) -> list[tuple[tuple[int, ...], ...]]:
    """All lower-unitriangular matrices with entries in {-1, 0, 1} that map the
    delta vector of every block to its dimension vector."""
    rows_per_label = []
    for i in range(4):
        fits = []
        for below in itertools.product((-1, 0, 1), repeat=i):
            row = below + (1,) + (0,) * (3 - i)
            if all(
                sum(c * b.deltas[k] for c, k in zip(row, LABELS)) == b.dims[LABELS[i]]
                for b in blocks
            ):
                fits.append(row)
        rows_per_label.append(fits)
    return [tuple(m) for m in itertools.product(*rows_per_label)]


def minimize_formula(f: DimensionFormula, p: int, rs: RootSystem | None = None):
    """Smallest positive value of ``f`` over the lowest alcove, with all weights attaining it."""
    rs = rs or build_root_system("B", 2)
    if not is_odd_prime(p):
        raise InvalidInput(f"p={p} must be an odd prime")
    region = lowest_alcove_weights(p, rs)
    if not region:
        raise EmptyRegion(
            f"no p-regular weight in the lowest alcove of {rs.name} at p={p} (requires p >= h = {rs.h})"
        )
    best, where = None, []
    for w in region:
        v = evaluate_formula(f, w, p)
        if v <= 0:
            continue
        if best is None or v < best:
            best, where = v, [w]
        elif v == best:
            where.append(w)
    if best is None:
        raise EmptyRegion(f"formula has no positive value on the lowest alcove at p={p}")
    return best, sorted(where)


@dataclass(frozen=True)
class CaseRecord:
    type_label: str
    rank: int
    orbit: str
    N: int
    d: int
    # type of the standard Levi form subset I, when the case uses one
    levi: str | None = None
    component_group_caveat: bool = False
    # candidate hyperplane configurations, each a tuple of type labels
    configurations: tuple[tuple[str, ...], ...] = ()
    notes: str = ""
    # non-normative guesses, never asserted
    speculative: dict = field(default_factory=dict, compare=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def springer_dim(self) -> int:
        return self.N - self.d


def _N(label, rank):
    return num_positive_roots(label, rank)


def case_registry() -> list[CaseRecord]:
    recs = [
        CaseRecord(
            "B", 2, "minimal", 4, 2, levi="A1",
            configurations=(("A1", "A1"),),
            notes=(
                "I = {a1}. A generic block has four simple modules, each labelled by two "
                "weights exchanged by s1. Lower walls s=0, 2r+s=p are orthogonal."
            ),
            speculative={"alcove_E_module": "A", "alcove_E_delta_multiple": 3},
        ),
        CaseRecord(
            "A", 3, "minimal", 6, 3,
            configurations=(("A2",),),
            notes="Two symmetrically placed A2 configurations of lower walls (multiplicity 2).",
            speculative={"configuration_multiplicity": 2},
        ),
        CaseRecord("A", 3, "middle", 6, 4),
        CaseRecord("G", 2, "minimal", 6, 3, notes="results less complete"),
        CaseRecord("G", 2, "A1~", 6, 4),
        CaseRecord(
            "E", 8, "minimal", 120, 29,
            configurations=(("A7", "E7"),),
            notes="91 = 28 + 63 expected factors; both parts occur in the extended diagram.",
        ),
    ]
    for label, ranks in (("A", range(1, 9)), ("B", range(2, 9)), ("C", range(3, 9)),
                         ("D", range(4, 9)), ("E", (6, 7, 8)), ("F", (4,)), ("G", (2,))):
        for n in ranks:
            N = _N(label, n)
            recs.append(CaseRecord(label, n, "regular", N, N, notes="every simple module has dimension p^N"))
            if N > 1:
                caveat = (label, n) in (("B", 2), ("G", 2))
                notes = "standard Levi form" if label in "AB" else ""
                if caveat:
                    notes = (
                        "component group permutes simple modules of equal dimension; expected to "
                        "match orbits on the intersection of a left cell with its inverse"
                    )
                recs.append(CaseRecord(
                    label, n, "subregular", N, N - 1,
                    component_group_caveat=caveat, notes=notes,
                ))
    for n in range(3, 9):
        recs.append(CaseRecord("C", n, f"Levi I=C{n - 1}", _N("C", n), _N("C", n) - 2, levi=f"C{n - 1}"))
    for n in range(4, 9):
        recs.append(CaseRecord("D", n, f"Levi I=D{n - 1}", _N("D", n), _N("D", n) - 2, levi=f"D{n - 1}"))
    return recs


def lookup_case(type_label: str, rank: int, orbit: str) -> CaseRecord:
    for rec in case_registry():
        if (rec.type_label, rec.rank, rec.orbit) == (type_label, rank, orbit):
            return rec
    raise InvalidInput(f"no registry entry for {type_label}{rank} {orbit}")
