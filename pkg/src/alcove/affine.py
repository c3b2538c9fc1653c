"""
The affine Weyl group W_p acting on rho-shifted weights.

W_p is generated by the affine reflections in the hyperplanes
``<x, alpha^v> = n p``; on shifted coordinates the dot action becomes the
plain affine action, so nothing here needs an abstract group element.
An alcove is recorded by its band vector: ``n_alpha`` with
``(n_alpha - 1) p < <x, alpha^v> < n_alpha p`` for every positive root.

>>> from alcove.rootsys import build_root_system
>>> b2 = build_root_system("B", 2)
>>> alcove_of((3, 1), 5, b2).bands
(1, 1, 2, 1)
>>> sorted(dot_orbit_restricted((1, 1), 5, b2).weights)
[(1, 1), (3, 1), (3, 3), (4, 3)]
"""

__all__ = [
    "Alcove", "OrbitSlice", "affine_reflect", "is_p_regular", "alcove_of",
    "dot_orbit_restricted", "b2_linked_family", "translate_by_p_omega2",
    "enumerate_alcoves", "alcove_polygon", "lowest_alcove_weights",
    "is_odd_prime", "B2_FAMILY_BANDS",
]

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput
from .rootsys import (
    RootSystem, ShiftedWeight, build_root_system, is_dominant_regular,
    pairings, root_in_weight_coords,
)

# bands of the linked weights A..E, roots ordered (a1, a2, a1+a2, a1+2a2)
B2_FAMILY_BANDS = {
    "A": (1, 1, 2, 1),
    "B": (1, 1, 2, 2),
    "C": (1, 2, 2, 2),
    "D": (1, 1, 3, 2),
    "E": (1, 2, 3, 2),
}


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % k for k in range(3, int(p ** 0.5) + 1, 2))


@dataclass(frozen=True)
class Alcove:
    bands: tuple[int, ...]
    rootsystem: RootSystem = field(repr=False)
    p: int
    # rational interior point, when known
    sample: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def contains(self, x: Sequence) -> bool:
        """Strict membership of a (rational) point in shifted coordinates."""
        return all(
            (n - 1) * self.p < t < n * self.p
            for n, t in zip(self.bands, pairings(x, self.rootsystem))
        )


@dataclass(frozen=True)
class OrbitSlice:
    base: ShiftedWeight
    p: int
    members: tuple[tuple[ShiftedWeight, Alcove], ...]

    @property
    def weights(self) -> list[ShiftedWeight]:
        return [w for w, _ in self.members]


def affine_reflect(w: Sequence[int], alpha: int, n: int, p: int, rs: RootSystem) -> ShiftedWeight:
    """Reflect ``w`` in the hyperplane ``<x, alpha^v> = n p``."""
    t = sum(c * x for c, x in zip(rs.coroot_pairings[alpha], w))
    shift = t - n * p
    return tuple(x - shift * a for x, a in zip(w, root_in_weight_coords(alpha, rs)))


def is_p_regular(w: Sequence[int], p: int, rs: RootSystem) -> bool:
    return all(t % p for t in pairings(w, rs))


def alcove_of(w: Sequence[int], p: int, rs: RootSystem) -> Alcove:
    if not is_p_regular(w, p, rs):
        raise InvalidInput(f"weight {tuple(w)} lies on a wall for p={p}")
    return Alcove(tuple(t // p + 1 for t in pairings(w, rs)), rs, p, tuple(Fraction(x) for x in w))


def _restricted(w: Sequence[int], p: int) -> bool:
    return all(1 <= x <= p for x in w)


def dot_orbit_restricted(base: Sequence[int], p: int, rs: RootSystem) -> OrbitSlice:
    """All dominant, restricted, p-regular weights linked to ``base``."""
    base = tuple(base)
    if len(base) != rs.rank:
        raise InvalidInput(f"weight {base} does not match rank {rs.rank}")
    if not is_p_regular(base, p, rs):
        raise InvalidInput(f"base weight {base} is not {p}-regular")
    lo, hi = 1 - 2 * p, 3 * p
    seen = {base}
    queue = deque([base])
    while queue:
        w = queue.popleft()
        for alpha, t in enumerate(pairings(w, rs)):
            for n in (t // p, t // p + 1):
                v = affine_reflect(w, alpha, n, p, rs)
                if v not in seen and all(lo <= x <= hi for x in v):
                    seen.add(v)
                    queue.append(v)
    members = sorted(
        w for w in seen
        if is_dominant_regular(w) and _restricted(w, p) and is_p_regular(w, p, rs)
    )
    return OrbitSlice(base, p, tuple((w, alcove_of(w, p, rs)) for w in members))


def _check_lowest_b2(base: Sequence[int], p: int) -> tuple[int, int]:
    if not is_odd_prime(p):
        raise InvalidInput(f"p={p} must be an odd prime")
    if len(base) != 2:
        raise InvalidInput(f"B2 weight must have two coordinates, got {tuple(base)}")
    r, s = base
    if not (r >= 1 and s >= 1 and 2 * r + s < p):
        raise InvalidInput(
            f"base ({r},{s}) is outside the lowest alcove for p={p}: need r,s >= 1 and 2r+s={2 * r + s} < {p}"
        )
    return r, s


def b2_linked_family(base: Sequence[int], p: int) -> dict[str, ShiftedWeight]:
    """Closed-form linked weights A..E of a lowest-alcove B2 weight ``(r, s)``.

    A, B and D are restricted; C and E lie just outside the restricted box.
    """
    r, s = _check_lowest_b2(base, p)
    return {
        "A": (p - r - s, s),
        "B": (p - r - s, 2 * r + s),
        "C": (r, 2 * p - 2 * r - s),
        "D": (p - r, 2 * r + s),
        "E": (r + s, 2 * p - 2 * r - s),
    }


def translate_by_p_omega2(w: Sequence[int], p: int) -> ShiftedWeight:
    if len(w) != 2:
        raise InvalidInput("translation by p*omega_2 is defined for B2 weights only")
    r, s = w
    return (r, s + p)


def _clip(poly, a, b):
    """Clip a convex polygon to the half-plane a.x <= b."""
    out = []
    n = len(poly)
    for k in range(n):
        cur, nxt = poly[k], poly[(k + 1) % n]
        fc = a[0] * cur[0] + a[1] * cur[1] - b
        fn = a[0] * nxt[0] + a[1] * nxt[1] - b
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    dedup = []
    for v in out:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _area2(poly) -> Fraction:
    return sum(
        poly[k][0] * poly[(k + 1) % len(poly)][1] - poly[(k + 1) % len(poly)][0] * poly[k][1]
        for k in range(len(poly))
    )


def alcove_polygon(bands: Sequence[int], p: int, rs: RootSystem) -> list[tuple[Fraction, Fraction]]:
    """Vertices (counterclockwise, shifted coordinates) of the closed alcove with
    the given bands; empty when the bands are not realizable."""
    if rs.rank != 2:
        raise InvalidInput("alcove geometry is implemented for rank 2 only")
    n1, n2 = bands[0], bands[1]
    poly = [
        (Fraction((n1 - 1) * p), Fraction((n2 - 1) * p)),
        (Fraction(n1 * p), Fraction((n2 - 1) * p)),
        (Fraction(n1 * p), Fraction(n2 * p)),
        (Fraction((n1 - 1) * p), Fraction(n2 * p)),
    ]
    for n, c in zip(bands[2:], rs.coroot_pairings[2:]):
        poly = _clip(poly, c, n * p)
        if not poly:
            return []
        poly = _clip(poly, (-c[0], -c[1]), -(n - 1) * p)
        if not poly:
            return []
    if len(poly) < 3 or _area2(poly) == 0:
        return []
    return poly


def enumerate_alcoves(rs: RootSystem, p: int, window: Sequence[tuple[int, int]]) -> list[Alcove]:
    """Realizable alcoves whose band for each positive root lies in the
    inclusive range ``window[alpha]``."""
    if rs.rank != 2:
        raise InvalidInput(f"alcove enumeration is for rank 2 only, got {rs.name}")
    if len(window) != rs.N:
        raise InvalidInput(f"window needs {rs.N} band ranges, got {len(window)}")
    found = []
    for bands in itertools.product(*(range(lo, hi + 1) for lo, hi in window)):
        poly = alcove_polygon(bands, p, rs)
        if poly:
            k = len(poly)
            sample = (sum(v[0] for v in poly) / k, sum(v[1] for v in poly) / k)
            found.append(Alcove(tuple(bands), rs, p, sample))
    return found


def lowest_alcove_weights(p: int, rs: RootSystem) -> list[ShiftedWeight]:
    """Integer points of the open lowest dominant alcove, lexicographic order."""
    return [
        w for w in itertools.product(range(1, p), repeat=rs.rank)
        if max(pairings(w, rs)) < p
    ]


def b2() -> RootSystem:
    return build_root_system("B", 2)
