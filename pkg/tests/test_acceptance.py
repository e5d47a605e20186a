"""Acceptance checks, one per criterion; each prints a single PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import mpmath
import pytest

from freekuo.condensation import (
    AC,
    BD,
    PARTNER,
    classify,
    random_separated_quad,
    random_superposition,
    residual_ebh,
    residual_eight,
    residual_four_even,
    residual_four_odd,
    residual_kuo_classical,
    shift_along_path,
    superposition_weight,
    verify_flashlight_recurrence,
)
from freekuo.correlations import bulk_ratio_check, corner_convergence, log_asymptotics_table
from freekuo.counting import count_region, mf_profile_dp, symmetric_count
from freekuo.formulas import (
    butterfly_sym_formula,
    corner_correlation,
    flashlight_formula,
    macmahon_box,
    spp,
)
from freekuo.regions import butterfly_hexagon, flashlight, free_trapezoid, hexagon

SEED = 20240601
FLASHLIGHT_MATRIX = [
    (x, z, k, p)
    for x in range(7)
    for z in range(5)
    for k in range(3)
    for p in range(3)
    if x + z >= k + p
]


def engine_agreement() -> tuple[bool, str]:
    start = time.perf_counter()
    regions = [hexagon(a, b, c) for a in range(4) for b in range(4) for c in range(4)]
    regions += [flashlight(*args) for args in FLASHLIGHT_MATRIX]
    regions += [free_trapezoid(a, b) for a in range(6) for b in range(5)]
    bad = []
    for reg in regions:
        vals = {count_region(reg, engine) for engine in ("dp", "enum", "oracle")}
        if len(vals) != 1:
            bad.append(reg)
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 300, f"{len(regions)} regions, {len(bad)} disagreements, {elapsed:.1f}s"


def flashlight_formula_exact() -> tuple[bool, str]:
    bad = [a for a in FLASHLIGHT_MATRIX if flashlight_formula(*a) != mf_profile_dp(flashlight(*a))]
    zeros = sum(1 for x, z, k, p in FLASHLIGHT_MATRIX if x < k + p)
    return not bad, f"{len(FLASHLIGHT_MATRIX)} cases ({zeros} with x<k+p), mismatches {bad}"


def butterfly_symmetric() -> tuple[bool, str]:
    start = time.perf_counter()
    checked, bad = 0, []
    for x in range(4):
        for y in range(4):
            for k in range(2):
                for p in range(2):
                    # y < k leaves no room for the bowtie
                    if k + p > x or y < k:
                        continue
                    sym = symmetric_count(butterfly_hexagon(2 * x, 2 * y, 2 * k, p), "hv")
                    if not sym == butterfly_sym_formula(x, y, k, p) == flashlight_formula(x, y - k, k, p):
                        bad.append((x, y, k, p))
                    checked += 1
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 600, f"{checked} cases, mismatches {bad}, {elapsed:.1f}s"


def macmahon_and_spp() -> tuple[bool, str]:
    bad = [("box", x, y, z) for x in range(5) for y in range(5) for z in range(5)
           if macmahon_box(x, y, z) != mf_profile_dp(hexagon(x, y, z))]
    bad += [("spp", a, b) for a in range(6) for b in range(5) if spp(a, b) != mf_profile_dp(free_trapezoid(a, b))]
    return not bad, f"125 boxes, 30 trapezoids, mismatches {bad}"


def condensation_identities() -> tuple[bool, str]:
    start = time.perf_counter()
    nonzero = []
    for i in range(200):
        q = random_separated_quad(SEED + i, 24, "rational", anchors=(AC, BD))
        assert len(q.graph) <= 24
        if residual_four_even(q) != 0 or residual_four_odd(q) != 0:
            nonzero.append(("four", i))
    for i in range(200):
        q = random_separated_quad(SEED + 10_000 + i, 24, "rational", anchors=(AC,))
        if residual_eight(q) != 0:
            nonzero.append(("eight", i))
    for i in range(100):
        q = random_separated_quad(SEED + 20_000 + i, 24, "rational", anchors=(), empty_free=True)
        if residual_kuo_classical(q) != 0:
            nonzero.append(("kuo", i))
        q = random_separated_quad(SEED + 30_000 + i, 24, "rational", anchors=(), empty_free=True)
        if residual_ebh(q) != 0:
            nonzero.append(("ebh", i))
    elapsed = time.perf_counter() - start
    return not nonzero and elapsed < 600, f"700 quads, nonzero residuals {nonzero}, {elapsed:.1f}s"


def flashlight_recurrence() -> tuple[bool, str]:
    cases = [(x, z, k, p) for x in range(1, 6) for z in range(2, 5) for k in range(3) for p in range(3)]
    bad = [c for c in cases if not verify_flashlight_recurrence(*c)]
    return not bad, f"{len(cases)} cases, failures {bad}"


def path_shift_involution() -> tuple[bool, str]:
    samples, seen, bad = 0, set(), []
    seed = SEED
    # at least 100 samples; keep drawing (up to a cap) until every class has appeared
    while samples < 100 or (len(seen) < 12 and samples < 3000):
        quad = random_separated_quad(seed, 12, "rational", anchors=(AC,))
        assert len(quad.graph) <= 12
        rng = random.Random(seed)
        seed += 1
        try:
            random_superposition(quad, rng)
        except ValueError:
            continue
        for _ in range(6):
            label, sup = random_superposition(quad, rng)
            cls = classify(quad, sup)
            partner = shift_along_path(sup, quad.a)
            ok = (
                classify(quad, partner) == PARTNER[cls]
                and shift_along_path(partner, quad.a) == sup
                and superposition_weight(quad.graph, partner) == superposition_weight(quad.graph, sup)
                and cls[0] == label
            )
            seen.add(cls)
            samples += 1
            if not ok:
                bad.append((seed - 1, cls))
    return not bad and len(seen) == 12, f"{samples} superpositions, {len(seen)}/12 classes seen, failures {bad}"


def corner_law() -> tuple[bool, str]:
    start = time.perf_counter()
    failing = []
    pairs = [(k, p) for k in range(7) for p in range(7) if k + p <= 6]
    for k, p in pairs:
        rep = corner_convergence(k, p, [64, 128, 256, 512], digits=50)
        if not rep.verdict:
            failing.append((k, p, mpmath.nstr(rep.deviations[-1], 3)))
    spots = corner_correlation(0, 0) == 1 and corner_correlation(1, 0) == Fraction(3, 8)
    elapsed = time.perf_counter() - start
    ok = not failing and spots and elapsed < 120
    return ok, f"{len(pairs)} (k,p) pairs, failing {failing}, spot values {'ok' if spots else 'wrong'}, {elapsed:.1f}s"


def bulk_law() -> tuple[bool, str]:
    rep = bulk_ratio_check([8, 16, 32, 64], digits=50)
    devs = ", ".join(mpmath.nstr(d, 3) for d in rep.deviations)
    return rep.verdict, f"deviations {devs}"


def log_asymptotics() -> tuple[bool, str]:
    r1, r2 = log_asymptotics_table([16, 32, 64, 128], digits=50)
    at100_1, at100_2 = log_asymptotics_table([100], digits=50)
    d1 = at100_1.deviations[0]
    d2 = at100_2.deviations[0]
    ok = r1.monotone and r2.monotone and d1 < 0.005 and d2 < 0.02
    return ok, f"k=100: r1 dev {mpmath.nstr(d1, 4)}, r2 dev {mpmath.nstr(d2, 4)}; monotone {r1.monotone}/{r2.monotone}"


CRITERIA = [
    (1, "engine agreement", engine_agreement),
    (2, "flashlight product formula", flashlight_formula_exact),
    (3, "symmetric butterfly tilings", butterfly_symmetric),
    (4, "MacMahon and symmetric plane partitions", macmahon_and_spp),
    (5, "condensation identities", condensation_identities),
    (6, "flashlight recurrence", flashlight_recurrence),
    (7, "path-shift involution", path_shift_involution),
    (8, "corner correlation convergence", corner_law),
    (9, "bulk correlation asymptotics", bulk_law),
    (10, "log-asymptotics", log_asymptotics),
]


def _line(num: int, name: str, ok: bool, detail: str) -> str:
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {name} ({detail})"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(num, name, ok, detail), flush=True)
    raise SystemExit(0 if all(results) else 1)
