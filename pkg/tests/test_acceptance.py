"""Exit criteria.  Every check is an exact integer comparison."""

import itertools
import subprocess
import sys
import time
from math import comb

import pytest

from confspace.ce_complex import build_generators, d2_check
from confspace.cli import main
from confspace.homology import compute_betti_table, degree_differential, stabilization_matrix
from confspace.manifold import builtin_catalog, catalog_names, make_manifold
from confspace.stability import (
    compute_table,
    verify_eventual_constancy,
    verify_improved_ranges,
    verify_optimality,
    witness_set,
)

pytestmark = pytest.mark.usefixtures("acceptance_record")

ALL = catalog_names()
EVEN = [n for n in ALL if builtin_catalog(n).d % 2 == 0]
OPEN = [n for n in EVEN if builtin_catalog(n).open]


@pytest.mark.criterion("1  d^2 = 0 on every even-d fixture, k <= 6, degree <= 24, < 30 s")
def test_01_square_zero():
    start = time.perf_counter()
    for name in EVEN:
        gens = build_generators(builtin_catalog(name))
        for k in range(7):
            assert d2_check(gens, k, range(25)) is None, (name, k)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion("2  R^d oracle, d in {2, 4, 6}")
def test_02_euclidean():
    for d in (2, 4, 6):
        t = compute_betti_table(builtin_catalog(f"R^{d}"), 6, 4 * d)
        assert t.nonzero(1) == {0: 1}
        for k in range(2, 7):
            assert t.nonzero(k) == {0: 1, d - 1: 1}


@pytest.mark.criterion("3  S^2 oracle: k=2 -> {b0}, k=3..6 -> {b0, b3}, b1 = 0")
def test_03_sphere():
    t = compute_betti_table(builtin_catalog("S^2"), 6, 20)
    assert t.nonzero(2) == {0: 1}
    for k in range(3, 7):
        assert t.nonzero(k) == {0: 1, 3: 1}
    assert all(t[k, 1] == 0 for k in range(7))


@pytest.mark.criterion("4  k = 1 gives dim U^i = b_i(M)")
def test_04_one_point():
    for name in EVEN:
        m = builtin_catalog(name)
        gens = build_generators(m)
        t = compute_betti_table(m, 1, 2 * m.d)
        assert t.nonzero(1) == {i: len(gens.u_of_degree(i)) for i in range(m.d + 1) if gens.u_of_degree(i)}
        if m.ordinary_betti is not None:
            assert t.nonzero(1) == m.ordinary_betti


@pytest.mark.criterion("5  i <= k range on every fixture with d > 2 (verify --theorem rw exits 0)")
def test_05_rw_range():
    for name in ALL:
        if builtin_catalog(name).d <= 2:
            continue
        code = main(["verify", "--theorem", "rw", "--manifold", name, "--kmax", "5", "--imax", "5", "--jobs", "1"])
        assert code == 0, name


@pytest.mark.criterion("6  even i <= 2k, odd i <= 2k+d-5 on R^6, S^6, CP2xR2, S2xR4 (k <= 4, i <= 12)")
def test_06_improved_ranges():
    for name in ("R^6", "S^6", "CP2xR2", "S2xR4"):
        m = builtin_catalog(name)
        report = verify_improved_ranges(compute_betti_table(m, 4, 12), m)
        assert report.passed, (name, report.violations)


@pytest.mark.criterion("7  strict growth of H_{2k+2}, k = 1..4, increment >= C(n+k, k+1), n = 1, 2")
def test_07_optimality():
    for name, n in (("CP2xR2", 1), ("CP2#CP2xR2", 2)):
        m = builtin_catalog(name)
        t = compute_betti_table(m, 5, 10)
        assert verify_optimality(t, m).passed
        for k in range(1, 5):
            assert t[k + 1, 2 * k + 2] - t[k, 2 * k + 2] >= comb(n + k, k + 1) >= 1
    for n in (1, 2, 3):
        m = make_manifold(f"n{n}", 6, True, True, {4: n, 6: 1})
        for k in range(6):
            brute = {tuple(sorted(c)) for c in itertools.product(range(n), repeat=k + 1)}
            assert len(witness_set(m, k)) == len(brute) == comb(n + k, k + 1)


@pytest.mark.criterion("8  open fixtures: H_i(C_{k+1}) >= H_i(C_k); u_0-stabilization commutes with d")
def test_08_monotonicity():
    for name in OPEN:
        m = builtin_catalog(name)
        t = compute_betti_table(m, 5, 16)
        for k in range(5):
            for i in range(17):
                assert t[k + 1, i] >= t[k, i], (name, k, i)
        gens = build_generators(m)
        for k in range(5):
            for i in range(1, 17):
                lhs = degree_differential(gens, k + 1, i) @ stabilization_matrix(m, k, i)
                rhs = stabilization_matrix(m, k, i - 1) @ degree_differential(gens, k, i)
                assert lhs == rhs, (name, k, i)


@pytest.mark.criterion("9  odd d: Sym^k expansion for S^3, S^5; eventual constancy at i <= 6 on all fixtures")
def test_09_odd_dimension_and_constancy():
    for d in (3, 5):
        t = compute_table(builtin_catalog(f"S^{d}"), 8, 2 * d)
        for k in range(1, 9):
            assert t.nonzero(k) == {0: 1, d: 1}
    for name in ALL:
        report = verify_eventual_constancy(compute_table(builtin_catalog(name), 8, 6))
        assert report.passed, (name, report.violations)


@pytest.mark.criterion("10 compute CP2xR2 --kmax 4 --imax 14 is byte-deterministic and < 60 s")
def test_10_determinism_and_speed():
    cmd = [sys.executable, "-m", "confspace", "compute", "--manifold", "CP2xR2", "--kmax", "4", "--imax", "14"]
    outputs = []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, check=True)
        assert time.perf_counter() - start < 60
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"manifold,k,i,betti\n")
