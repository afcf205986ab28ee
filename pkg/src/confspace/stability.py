"""Checks of the homological stability ranges against computed Betti tables.

All verifiers compare dim H_i(C_{k+1}(M)) ("left") with dim H_i(C_k(M))
("right") for pairs k, k + 1 inside the table window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Optional

from .ce_complex import DEFAULT_CAP, build_generators
from .errors import HypothesisError, InsufficientWindowError, ManifoldError
from .graded_algebra import enumerate_basis
from .homology import BettiTable, compute_betti_table
from .manifold import ManifoldData


@dataclass
class RangeReport:
    theorem: str
    manifold: str
    window: tuple
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "manifold": self.manifold,
            "window": {"kmax": self.window[0], "imax": self.window[1]},
            "passed": self.passed,
            "violations": [
                {"k": k, "i": i, "left": left, "right": right} for k, i, left, right in self.violations
            ],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass(frozen=True)
class WitnessSet:
    k: int
    n: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)


def _need_pairs(table: BettiTable):
    if table.max_k < 1:
        raise InsufficientWindowError(f"{table.manifold}: need at least k = 0, 1 to compare")


def _compare(report, table, k, i):
    left, right = table[k + 1, i], table[k, i]
    if left != right:
        report.violations.append((k, i, left, right))


def verify_rw_range(table: BettiTable) -> RangeReport:
    """H_i(C_{k+1}) and H_i(C_k) have equal dimension for i <= k."""
    _need_pairs(table)
    report = RangeReport("rw", table.manifold, (table.max_k, table.max_degree))
    for k in range(table.max_k):
        for i in range(min(k, table.max_degree) + 1):
            _compare(report, table, k, i)
    return report


def check_improved_hypotheses(m: ManifoldData, even_cohomology: Optional[bool] = None):
    """Raise HypothesisError unless M is even-dimensional, d >= 6, with even cohomology."""
    if m.d % 2 or m.d < 6:
        raise HypothesisError(f"{m.name}: needs even dimension d >= 6, got d={m.d}")
    detected = m.has_even_cohomology()
    if detected is None:
        if even_cohomology is None:
            raise HypothesisError(
                f"{m.name}: non-orientable; assert even cohomology explicitly to run this check"
            )
        detected = even_cohomology
    if not detected:
        raise HypothesisError(f"{m.name}: odd-degree cohomology is nonzero")


def verify_improved_ranges(
    table: BettiTable, m: ManifoldData, even_cohomology: Optional[bool] = None
) -> RangeReport:
    """Equality for even i <= 2k and odd i <= 2k + d - 5."""
    check_improved_hypotheses(m, even_cohomology)
    _need_pairs(table)
    report = RangeReport("improved", table.manifold, (table.max_k, table.max_degree))
    for k in range(table.max_k):
        for i in range(table.max_degree + 1):
            bound = 2 * k if i % 2 == 0 else 2 * k + m.d - 5
            if i <= bound:
                _compare(report, table, k, i)
    return report


def degree_two_count(m: ManifoldData) -> int:
    """n = dim U^2, the number of degree-2 U-generators."""
    return m.rank(m.d - 2, twisted=True)


def check_optimality_hypotheses(m: ManifoldData, even_cohomology: Optional[bool] = None):
    """As for the improved ranges, plus M open and H^2 nonzero."""
    check_improved_hypotheses(m, even_cohomology)
    if not m.open:
        raise HypothesisError(f"{m.name} is closed")
    if degree_two_count(m) < 1:
        raise HypothesisError(f"{m.name}: H^2 vanishes (n = 0)")


def witness_set(m: ManifoldData, k: int) -> WitnessSet:
    """Products of k + 1 degree-2 U-generators: weight-0 cycles outside <u_0>."""
    gens = build_generators(m)
    deg2 = gens.u_of_degree(2)
    return WitnessSet(k, len(deg2), tuple(enumerate_basis(deg2, k + 1)))


def verify_optimality(
    table: BettiTable, m: ManifoldData, even_cohomology: Optional[bool] = None
) -> RangeReport:
    """Strict growth of H_{2k+2} from C_k to C_{k+1}, by at least the witness count."""
    check_optimality_hypotheses(m, even_cohomology)
    n = degree_two_count(m)
    ks = [k for k in range(table.max_k) if 2 * k + 2 <= table.max_degree]
    if not ks:
        raise InsufficientWindowError(f"{m.name}: window too small to reach degree 2k + 2")
    report = RangeReport("optimal", table.manifold, (table.max_k, table.max_degree))
    for k in ks:
        i = 2 * k + 2
        left, right = table[k + 1, i], table[k, i]
        count = len(witness_set(m, k))
        if left <= right or left - right < count:
            report.violations.append((k, i, left, right))
        printed = comb((k + 1) * n - 1, n - 1)
        if printed != count:
            report.notes.append(
                f"k={k}: witness basis has {count} elements; C((k+1)n-1, n-1) = {printed}"
            )
    return report


def _sym_dimensions(betti: Dict[int, int], k: int) -> Dict[int, int]:
    """Graded dimensions of Sym^k of a graded vector space with the given Betti numbers."""
    # poly[j][deg]: dimension of Sym^j in degree deg
    poly = [dict() for _ in range(k + 1)]
    poly[0][0] = 1
    for deg, rank in sorted(betti.items()):
        for _ in range(rank):
            new = [dict(row) for row in poly]
            if deg % 2:
                for j in range(k - 1, -1, -1):
                    for e, c in poly[j].items():
                        new[j + 1][e + deg] = new[j + 1].get(e + deg, 0) + c
            else:
                for j in range(1, k + 1):
                    for e, c in new[j - 1].items():
                        new[j][e + deg] = new[j].get(e + deg, 0) + c
            poly = new
    return {e: c for e, c in poly[k].items() if c}


def odd_dim_betti(m: ManifoldData, k: int) -> Dict[int, int]:
    """dim H_i(C_k(M); Q) for odd d: the graded dimensions of Sym^k H_*(M; Q)."""
    if m.d % 2 == 0:
        raise HypothesisError(f"{m.name}: d={m.d} is even")
    if m.ordinary_betti is None:
        raise ManifoldError(f"{m.name}: betti is required for odd-dimensional manifolds")
    return _sym_dimensions(m.ordinary_betti, k)


def compute_table(
    m: ManifoldData, max_k: int, max_degree: int, jobs: Optional[int] = 1, cap: int = DEFAULT_CAP
) -> BettiTable:
    """Betti table by the complex for even d, by the symmetric power for odd d."""
    if m.d % 2 == 0:
        return compute_betti_table(m, max_k, max_degree, jobs=jobs, cap=cap)
    table = BettiTable(m.name, m.d, max_k, max_degree)
    for k in range(max_k + 1):
        for i, b in sorted(odd_dim_betti(m, k).items()):
            if i <= max_degree:
                table.entries[(k, i)] = b
    return table


def verify_eventual_constancy(table: BettiTable, max_i: Optional[int] = None) -> RangeReport:
    """k -> dim H_i(C_k) is constant from k = i on (k = i + 1 on for surfaces)."""
    top = table.max_degree if max_i is None else max_i
    if top > table.max_degree:
        raise InsufficientWindowError(f"degree {top} outside computed window")
    report = RangeReport("constancy", table.manifold, (table.max_k, top))
    for i in range(top + 1):
        # i <= k is the range for d > 2; for surfaces only k > i is available
        start = i if table.d > 2 else i + 1
        if table.max_k < start + 1:
            raise InsufficientWindowError(
                f"{table.manifold}: degree {i} needs k up to at least {start + 1}"
            )
        base = table[start, i]
        for k in range(start + 1, table.max_k + 1):
            if table[k, i] != base:
                report.violations.append((k, i, table[k, i], base))
    return report
