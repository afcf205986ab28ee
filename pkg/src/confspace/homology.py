"""Betti numbers of C_k(M) from ranks of the Theta_k differentials."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .ce_complex import (
    DEFAULT_CAP,
    CEGeneratorSet,
    assemble_differential,
    build_generators,
    build_theta_slice,
    _differential_keys,
)
from .errors import ConfspaceError, OddDimensionError
from .graded_algebra import normalize_monomial
from .linalg import SparseExactMatrix, exact_rank
from .manifold import ManifoldData


@dataclass
class BettiTable:
    manifold: str
    d: int
    max_k: int
    max_degree: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        k, i = key
        if not (0 <= k <= self.max_k and 0 <= i <= self.max_degree):
            raise KeyError(f"(k={k}, i={i}) outside computed window")
        return self.entries.get(key, 0)

    def row(self, k: int) -> Dict[int, int]:
        return {i: self[k, i] for i in range(self.max_degree + 1)}

    def nonzero(self, k: int) -> Dict[int, int]:
        return {i: b for i, b in self.row(k).items() if b}

    def records(self):
        for k in range(self.max_k + 1):
            for i in range(self.max_degree + 1):
                yield {"manifold": self.manifold, "k": k, "i": i, "betti": self[k, i]}


def _subcomplex(gens: CEGeneratorSet, k: int, s: int, top: int, cap: int) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """(i, w) -> (dim, rank of outgoing differential) on the s = i + w strand."""
    out = {}
    for omega in range(k // 2 + 1):
        i = s - omega
        if i < 0 or i > top:
            continue
        dm = assemble_differential(gens, k, i, omega, cap)
        out[(i, omega)] = (len(dm.cols), exact_rank(dm.entries))
    return out


def _strand_betti(k: int, ranks: Dict[Tuple[int, int], Tuple[int, int]], max_degree: int) -> Dict[int, int]:
    betti: Dict[int, int] = {}
    for (i, omega), (dim, rank_out) in ranks.items():
        if i > max_degree:
            continue
        rank_in = ranks.get((i + 1, omega - 1), (0, 0))[1]
        b = dim - rank_out - rank_in
        if b:
            betti[i] = betti.get(i, 0) + b
    return betti


_worker_gens: Optional[CEGeneratorSet] = None


def _init_worker(m: ManifoldData):
    global _worker_gens
    _worker_gens = build_generators(m)


def _worker(k, s, top, cap):
    return _subcomplex(_worker_gens, k, s, top, cap)


def _work_units(k: int, max_degree: int):
    return [(k, s) for s in range(max_degree + k // 2 + 1)]


def _check_even(m: ManifoldData):
    if m.d % 2:
        raise OddDimensionError(f"{m.name}: d={m.d} is odd; use odd_dim_betti")


def betti_numbers(m: ManifoldData, k: int, max_degree: int, cap: int = DEFAULT_CAP) -> Dict[int, int]:
    """dim H_i(C_k(M); Q) for 0 <= i <= max_degree (zeros omitted)."""
    _check_even(m)
    if k < 0:
        raise ValueError("k must be >= 0")
    gens = build_generators(m)
    betti: Dict[int, int] = {}
    for _, s in _work_units(k, max_degree):
        for i, b in _strand_betti(k, _subcomplex(gens, k, s, max_degree + 1, cap), max_degree).items():
            betti[i] = betti.get(i, 0) + b
    return betti


def compute_betti_table(
    m: ManifoldData,
    max_k: int,
    max_degree: int,
    jobs: Optional[int] = 1,
    cap: int = DEFAULT_CAP,
    order=None,
) -> BettiTable:
    """Betti table for k = 0..max_k, degrees 0..max_degree.

    Strands (k, s) are independent; with ``jobs`` > 1 they run in a process
    pool.  ``order`` optionally permutes the work list (results do not depend
    on it).
    """
    _check_even(m)
    units = [u for k in range(max_k + 1) for u in _work_units(k, max_degree)]
    if order is not None:
        units = [units[j] for j in order]
    jobs = jobs or os.cpu_count() or 1
    args = [(k, s, max_degree + 1, cap) for k, s in units]
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(m,)) as pool:
            results = list(pool.map(_worker, *zip(*args)))
    else:
        gens = build_generators(m)
        results = [_subcomplex(gens, *a) for a in args]
    table = BettiTable(m.name, m.d, max_k, max_degree)
    for (k, _), ranks in zip(units, results):
        for i, b in _strand_betti(k, ranks, max_degree).items():
            table.entries[(k, i)] = table.entries.get((k, i), 0) + b
    table.entries = dict(sorted(table.entries.items()))
    return table


def degree_basis(gens: CEGeneratorSet, k: int, i: int, cap: int = DEFAULT_CAP) -> list:
    """Basis of Theta_k in total degree i, weights ascending."""
    basis = []
    for omega in range(k // 2 + 1):
        basis.extend(build_theta_slice(gens, k, i, omega, cap).basis)
    return basis


def degree_differential(gens: CEGeneratorSet, k: int, i: int, cap: int = DEFAULT_CAP) -> SparseExactMatrix:
    """The differential from total degree i to i - 1 of Theta_k, all weights at once."""
    source = degree_basis(gens, k, i, cap)
    target = degree_basis(gens, k, i - 1, cap) if i >= 1 else []
    index = {mono.key: r for r, mono in enumerate(target)}
    entries = {}
    for c, mono in enumerate(source):
        for image, coeff in _differential_keys(mono.key, gens).items():
            entries[(index[image], c)] = coeff
    return SparseExactMatrix(len(target), len(source), entries)


def stabilization_matrix(m: ManifoldData, k: int, i: int, cap: int = DEFAULT_CAP) -> SparseExactMatrix:
    """Matrix of x -> u_0 * x from degree i of Theta_k to degree i of Theta_{k+1}.

    Only a chain map when M is open: on closed M, u_0 pairs with the unit.
    """
    if not m.open:
        raise ConfspaceError(f"{m.name} is closed; multiplication by u_0 is not a chain map")
    _check_even(m)
    gens = build_generators(m)
    source = degree_basis(gens, k, i, cap)
    target = degree_basis(gens, k + 1, i, cap)
    index = {mono.key: r for r, mono in enumerate(target)}
    entries = {}
    for c, mono in enumerate(source):
        image = normalize_monomial((gens.u0,) + mono.factors)
        entries[(index[image.monomial.key], c)] = image.coefficient
    return SparseExactMatrix(len(target), len(source), entries)
