"""
Self-check suites run by ``alcove verify``. Each check recomputes a claim
through the library and reports pass/fail with the first counterexample.
"""

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import affine, dims, figures, kl, rootsys
from .errors import AlcoveError, InvalidInput


@dataclass
class CheckResult:
    suite: str
    name: str
    topic: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.suite}: {self.name} ({self.topic}; {self.seconds:.2f}s){extra}"


class _Failed(Exception):
    pass


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise _Failed(msg)


def _run(suite: str, name: str, topic: str, fn: Callable[[], None]) -> CheckResult:
    start = time.perf_counter()
    try:
        fn()
        ok, detail = True, ""
    except (_Failed, AlcoveError, ArithmeticError, AssertionError) as exc:
        ok, detail = False, str(exc)
    return CheckResult(suite, name, topic, ok, detail, time.perf_counter() - start)


def random_dominant_regular(rng: random.Random, rank: int, top: int = 30) -> tuple[int, ...]:
    return tuple(rng.randint(1, top) for _ in range(rank))


def check_weyl(seed: int = 0, samples: int = 1000) -> list[CheckResult]:
    types = [("A", 1), ("A", 2), ("B", 2), ("G", 2)]

    def exact_division():
        rng = random.Random(seed)
        for t in types:
            rs = rootsys.build_root_system(*t)
            den = rootsys.weyl_denominator(rs)
            for _ in range(samples):
                w = random_dominant_regular(rng, rs.rank)
                _expect(rootsys.weyl_numerator(w, rs) % den == 0, f"{rs.name} {w}: quotient not integral")

    def extremes():
        for t in types:
            rs = rootsys.build_root_system(*t)
            _expect(rootsys.weyl_dim(rs.rho, rs) == 1, f"{rs.name}: lambda=0 does not give 1")
            two = tuple(2 for _ in range(rs.rank))
            _expect(rootsys.weyl_dim(two, rs) == 2 ** rs.N, f"{rs.name}: lambda=rho does not give 2^N")

    def freudenthal():
        rs = rootsys.build_root_system("B", 2)
        total = sum(rootsys.weight_multiplicities((1, 0), rs).values())
        _expect(rootsys.weyl_dim((2, 1), rs) == 5 == total, f"B2 (2,1): Weyl {rootsys.weyl_dim((2, 1), rs)}, Freudenthal {total}")

    cite = "Weyl's dimension formula"
    return [
        _run("weyl", f"exact quotient, {samples} seeded weights per type", cite, exact_division),
        _run("weyl", "lambda=0 gives 1, lambda=rho gives 2^N", cite, extremes),
        _run("weyl", "B2 (2,1) = 5 = Freudenthal multiplicity sum", cite, freudenthal),
    ]


def check_b2(primes: Iterable[int] = (5, 7, 11, 13)) -> list[CheckResult]:
    rs = rootsys.build_root_system("B", 2)
    primes = list(primes)

    def formulas():
        for p in primes:
            for base in affine.lowest_alcove_weights(p, rs):
                block = dims.jantzen_b2_block(base, p)
                _expect(all(v > 0 for v in block.dims.values()), f"p={p} {base}: non-positive dim")
                _expect(dims.premet_check(block.dims.values(), p, 2), f"p={p} {base}: not divisible by p^2")

    def pattern():
        for p in primes:
            for base in affine.lowest_alcove_weights(p, rs):
                dims.solve_pattern(dims.jantzen_b2_block(base, p))

    def orbit():
        for p in primes:
            for base in affine.lowest_alcove_weights(p, rs):
                fam = affine.b2_linked_family(base, p)
                got = set(affine.dot_orbit_restricted(base, p, rs).weights)
                want = {base, fam["A"], fam["B"], fam["D"]}
                _expect(got == want, f"p={p} {base}: orbit {sorted(got)} != {sorted(want)}")

    return [
        _run("b2", f"block dims positive and divisible by p^2, p in {primes}", "Premet, d=2", formulas),
        _run("b2", "alternating-sum pattern of delta", "B2 minimal orbit pattern", pattern),
        _run("b2", "restricted dot orbit = {base, A, B, D}", "linkage under W_p", orbit),
    ]


def check_min(primes: Iterable[int] = (5, 7, 11, 13)) -> list[CheckResult]:
    primes = list(primes)

    def minimum():
        for p in primes:
            value, where = dims.minimize_formula(dims.JANTZEN_B2["A"], p)
            want = [((p - 3) // 2, 1), ((p - 3) // 2, 2)]
            _expect(value == p * p and where == want, f"p={p}: min {value} at {where}")

    return [_run("min", f"min of formula A is p^2 at ((p-3)/2,1), ((p-3)/2,2), p in {primes}",
                 "two minimizing weights", minimum)]


def check_translation(primes: Iterable[int] = (5, 7)) -> list[CheckResult]:
    primes = list(primes)

    def identity():
        for p in primes:
            for r in range(-3 * p, 3 * p + 1):
                for s in range(-3 * p, 3 * p + 1):
                    a, b = dims.delta_b2_cell((r, s + p), p), dims.delta_b2((r, s), p)
                    _expect(a == b, f"p={p} ({r},{s}): {a} != {b}")

    return [_run("translation", f"delta_cell(r, s+p) = delta(r, s) on [-3p,3p]^2, p in {primes}",
                 "translated delta", identity)]


def check_configs() -> list[CheckResult]:
    cases = [(("E", 8), 91, ("A7", "E7")), (("B", 2), 2, ("A1", "A1")), (("A", 3), 3, ("A2",))]

    def configs():
        for t, target, want in cases:
            rs = rootsys.build_root_system(*t)
            got = [tuple(c.labels) for c in rootsys.subsystem_configurations(rs, target)]
            _expect(want in got, f"{rs.name} target {target}: {got} lacks {want}")

    return [_run("configs", "E8/91 -> A7+E7, B2/2 -> A1+A1, A3/3 -> A2", "extended Dynkin configurations", configs)]


def check_kl(maxlen: int = 8) -> list[CheckResult]:
    W = kl.presentation("affB2")
    elems = W.elements_up_to(maxlen)
    pairs = [(y, w) for w in elems for y in elems if kl.bruhat_leq(y, w)]

    def small_gaps():
        for y, w in pairs:
            if w.length - y.length <= 2:
                _expect(kl.kl_polynomial(y, w) == (1,), f"P({y},{w}) = {kl.kl_polynomial(y, w)}")

    def degree_and_sign():
        for y, w in pairs:
            P = kl.kl_polynomial(y, w)
            _expect(P.coeff(0) == 1, f"P({y},{w}) has constant term {P.coeff(0)}")
            if y != w:
                _expect(2 * P.degree <= w.length - y.length - 1, f"P({y},{w}) = {P} exceeds degree bound")
            _expect(all(c >= 0 for c in P), f"P({y},{w}) = {P} has a negative coefficient")

    def descent_choice():
        for y, w in pairs:
            ref = kl.kl_polynomial(y, w)
            for s in kl.descents_left(w):
                _expect(kl.kl_polynomial_with(y, w, s) == ref, f"P({y},{w}) depends on descent {s}")

    def oracle():
        for y, w in pairs:
            _expect(kl.kl_polynomial_slow(y, w) == kl.kl_polynomial(y, w), f"P({y},{w}) disagrees with slow recursion")

    def finite():
        F = kl.presentation("finB2")
        fe = F.elements_up_to(4)
        for w in fe:
            for y in fe:
                want = (1,) if kl.bruhat_leq(y, w) else ()
                _expect(kl.kl_polynomial(y, w) == want, f"finite B2 P({y},{w}) = {kl.kl_polynomial(y, w)}")

    cite = "KL polynomials"
    return [
        _run("kl", f"P=1 when l(w)-l(y)<=2, affine B2 length<={maxlen}", cite, small_gaps),
        _run("kl", "constant term 1, degree bound, nonnegative coefficients", cite, degree_and_sign),
        _run("kl", "independent of the chosen left descent", cite, descent_choice),
        _run("kl", "agrees with slow right-descent recursion", cite, oracle),
        _run("kl", "finite B2: all P_{y,w} = 1", cite, finite),
    ]


def check_figures(p: int = 5) -> list[CheckResult]:
    def stable():
        for mode in ("fig1", "fig2"):
            _expect(figures.render(mode, p) == figures.render(mode, p), f"{mode} output not byte-stable")

    def anchors():
        import xml.etree.ElementTree as ET
        rs = rootsys.build_root_system("B", 2)
        for mode in ("fig1", "fig2"):
            root = ET.fromstring(figures.render(mode, p))
            for el in root.iter("{http://www.w3.org/2000/svg}text"):
                if not el.get("id", "").startswith("label-"):
                    continue
                bands = tuple(int(b) for b in el.get("data-bands").split("-"))
                want = affine.B2_FAMILY_BANDS[el.text]
                if mode == "fig2":
                    want = figures.translated_bands(want)
                _expect(bands == want, f"{mode} label {el.text} claims bands {bands}")
                pt = figures.from_svg(el.get("x"), el.get("y"), p)
                _expect(affine.Alcove(want, rs, p).contains(pt), f"{mode} label {el.text} at {pt} outside {want}")

    return [
        _run("figures", "fig1/fig2 byte-stable", "alcove figures", stable),
        _run("figures", "label anchors strictly inside their alcoves", "alcove figures", anchors),
    ]


REGISTRY_EXPECTED = [
    ("B", 2, "minimal", 4, 2),
    ("A", 3, "minimal", 6, 3),
    ("A", 3, "middle", 6, 4),
    ("G", 2, "minimal", 6, 3),
    ("G", 2, "A1~", 6, 4),
    ("E", 8, "minimal", 120, 29),
]


def check_registry() -> list[CheckResult]:
    def values():
        for t, n, orbit, N, d in REGISTRY_EXPECTED:
            rec = dims.lookup_case(t, n, orbit)
            _expect((rec.N, rec.d) == (N, d), f"{t}{n} {orbit}: ({rec.N},{rec.d}) != ({N},{d})")
        for rec in dims.case_registry():
            _expect(rec.N == rootsys.num_positive_roots(rec.type_label, rec.rank), f"{rec.name} {rec.orbit}: N")
            _expect(0 <= rec.d <= rec.N, f"{rec.name} {rec.orbit}: d out of range")
            if rec.orbit == "regular":
                _expect(rec.d == rec.N, f"{rec.name} regular: d != N")
            if rec.orbit == "subregular":
                _expect(rec.d == rec.N - 1, f"{rec.name} subregular: d != N-1")
            if rec.orbit.startswith("Levi"):
                _expect(rec.d == rec.N - 2, f"{rec.name} {rec.orbit}: d != N-2")

    def springer():
        _expect(dims.lookup_case("E", 8, "minimal").springer_dim == 91, "E8 minimal: N-d != 91")
        _expect(dims.lookup_case("A", 3, "minimal").springer_dim == 3, "A3 minimal: N-d != 3")

    return [
        _run("registry", "(N, d) match the recorded cases", "case list", values),
        _run("registry", "N-d = 91 for E8 minimal, 3 for A3 minimal", "case list", springer),
    ]


SUITES = ("weyl", "b2", "min", "translation", "configs", "kl", "figures", "registry")


def run_suites(selected: Iterable[str], primes=None, maxlen: int = 8, seed: int = 0) -> list[CheckResult]:
    selected = list(selected)
    if "all" in selected:
        selected = list(SUITES)
    results = []
    for suite in selected:
        if suite == "weyl":
            results += check_weyl(seed)
        elif suite == "b2":
            results += check_b2(primes or (5, 7, 11, 13))
        elif suite == "min":
            results += check_min(primes or (5, 7, 11, 13))
        elif suite == "translation":
            results += check_translation(primes or (5, 7))
        elif suite == "configs":
            results += check_configs()
        elif suite == "kl":
            results += check_kl(maxlen)
        elif suite == "figures":
            results += check_figures((primes or (5,))[0])
        elif suite == "registry":
            results += check_registry()
        else:
            raise InvalidInput(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    return results
