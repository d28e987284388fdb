"""Acceptance gate: one test per shipped criterion.

Every test asserts the criterion's exact expected values and its runtime
budget, then prints a single PASS line (visible even under capture).
A failing assert surfaces as a FAILED line for that criterion.
"""

import itertools
import random
import time

import pytest

from curveinv import (
    EvalMode,
    builtin_chord_patterns,
    builtin_formulas,
    count_arrow_pattern,
    count_embeddings,
    default_fuzz_seeds,
    evaluate_all,
    evaluate_with_convention,
    fuzz_invariance,
    gen_cabc,
    gen_torus,
)
from curveinv.moves import INVARIANCE_KINDS, MoveKind
from curveinv.oracle import count_embeddings_oracle
from curveinv.patterns import Formula
from helpers import random_chord_diagram


@pytest.fixture
def announce(capsys):
    def _announce(text):
        with capsys.disabled():
            print(text)

    return _announce


def test_criterion_1_torus_triangle_counts(frozen, announce):
    start = time.perf_counter()
    counts = [
        count_arrow_pattern(frozen.triangle, gen_torus(n).diagram)
        for n in (3, 5, 7, 9, 11)
    ]
    elapsed = time.perf_counter() - start
    assert counts == [1, 5, 14, 30, 55]
    for n, got in zip((3, 5, 7, 9, 11), counts):
        m = (n - 1) // 2
        assert got == m * (m + 1) * (2 * m + 1) // 6
    assert elapsed < 1.0
    announce(f"criterion 1 torus counts {counts}: PASS in {elapsed:.2f}s (<1s)")


def test_criterion_2_family_grid_facts(announce):
    start = time.perf_counter()
    for a, b, c in itertools.product(range(4), repeat=3):
        cd = gen_cabc(a, b, c)
        assert cd.rot == a
        assert cd.jplus == a - 2 * b + 2 * c
        assert gen_cabc(a, b + 1, c + 1).jplus == cd.jplus
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    announce(f"criterion 2 family facts (64 grid points): PASS in {elapsed:.2f}s (<1s)")


def test_criterion_3_rotation_relation(formulas, conv, announce):
    start = time.perf_counter()
    grid = [gen_cabc(a, b, c) for a, b, c in itertools.product(range(4), repeat=3)]
    i21 = formulas[0]
    assert i21.name == "I2_1"
    surviving = []
    for e1, e2 in itertools.product((1, -1), repeat=2):
        if all(
            2 * evaluate_with_convention(i21, cd.diagram, conv)
            == e1 * (cd.jplus + e2 * cd.rot**2)
            for cd in grid
        ):
            surviving.append((e1, e2))
    elapsed = time.perf_counter() - start
    assert surviving == [(-1, -1)]
    assert elapsed < 1.0
    announce(
        "criterion 3 rotation relation (signs "
        f"{surviving[0]}): PASS in {elapsed:.2f}s (<1s)"
    )


def test_criterion_4_move_invariance_fuzz(formulas, conv, announce):
    seeds = default_fuzz_seeds()
    assert len(seeds) == 14
    start = time.perf_counter()
    report = fuzz_invariance(
        formulas, seeds, trials=100, depth=20, rng_seed=2024, convention=conv
    )
    elapsed = time.perf_counter() - start
    assert report.ok, report.format()
    assert elapsed < 30.0
    announce(
        "criterion 4 invariance fuzz (14 seeds x 100 trials x depth 20): "
        f"PASS in {elapsed:.2f}s (<30s)"
    )


def test_criterion_5_family_detection(formulas, conv, announce):
    start = time.perf_counter()
    vectors = [
        evaluate_all(formulas, gen_cabc(2, 1 + k, 1 + k).diagram, conv)
        for k in range(1, 6)
    ]
    elapsed = time.perf_counter() - start
    assert len(set(vectors)) == 5
    assert [v[2] for v in vectors] == [2, 3, 4, 5, 6]
    assert elapsed < 1.0
    announce(
        f"criterion 5 detection (5 distinct vectors): PASS in {elapsed:.2f}s (<1s)"
    )


def test_criterion_6_oracle_equivalence(announce):
    rng = random.Random("oracle-equivalence")
    patterns = builtin_chord_patterns()
    start = time.perf_counter()
    checked = 0
    for _ in range(500):
        d = random_chord_diagram(rng, max_n=8)
        for p in patterns:
            for mode in (EvalMode.CONSTRAINED, EvalMode.WEIGHTED):
                assert count_embeddings(p, d, mode) == count_embeddings_oracle(
                    p, d, mode
                )
                checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 500 * len(patterns) * 2
    assert elapsed < 60.0
    announce(
        f"criterion 6 oracle equivalence ({checked} counts): "
        f"PASS in {elapsed:.2f}s (<60s)"
    )


def test_criterion_7_negative_controls(formulas, conv, announce):
    seeds = default_fuzz_seeds()
    start = time.perf_counter()
    for f in formulas:
        flipped = Formula(
            name=f.name,
            terms=((-f.terms[0][0], f.terms[0][1]),) + f.terms[1:],
        )
        report = fuzz_invariance(
            [flipped], seeds, trials=100, depth=20, rng_seed=0,
            convention=conv, max_violations=1,
        )
        assert not report.ok, f"flipped {f.name} went undetected"
    control_kinds = INVARIANCE_KINDS + (MoveKind.DR2_INSERT, MoveKind.DR2_DELETE)
    report = fuzz_invariance(
        formulas, seeds, trials=100, depth=20, rng_seed=0,
        convention=conv, kinds=control_kinds, max_violations=1,
    )
    assert not report.ok, "direct-tangency moves went undetected"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    announce(
        "criterion 7 negative controls (6 flips + direct tangency): "
        f"PASS in {elapsed:.2f}s (<60s)"
    )


def test_criterion_8_large_diagram_performance(formulas, conv, announce):
    cd = gen_cabc(0, 50, 50)
    assert cd.diagram.n == 200
    start = time.perf_counter()
    vec = evaluate_all(formulas, cd.diagram, conv)
    elapsed = time.perf_counter() - start
    assert vec == (0, 0, 50, 0, 0, 0)
    assert elapsed < 1.0
    announce(
        f"criterion 8 200-chord evaluation: PASS in {elapsed:.3f}s (<1s)"
    )
