"""Sparse matrices over Q and exact rank by fraction-free elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Tuple


@dataclass(frozen=True)
class SparseExactMatrix:
    n_rows: int
    n_cols: int
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.n_rows}x{self.n_cols}")
            if x != 0:
                clean[(r, c)] = Fraction(x)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows) -> "SparseExactMatrix":
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        return cls(len(rows), n_cols, {(r, c): x for r, row in enumerate(rows) for c, x in enumerate(row) if x})

    @classmethod
    def zeros(cls, n_rows, n_cols) -> "SparseExactMatrix":
        return cls(n_rows, n_cols, {})

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, list] = {}
        for (r, c), x in other.entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (r, mid), x in self.entries.items():
            for c, y in by_row.get(mid, ()):
                out[(r, c)] = out.get((r, c), 0) + x * y
        return SparseExactMatrix(self.n_rows, other.n_cols, out)

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None


def _integer_rows(m: SparseExactMatrix) -> list:
    rows: Dict[int, Dict[int, int]] = {}
    for (r, c), x in m.entries.items():
        rows.setdefault(r, {})[c] = x
    out = []
    for r in sorted(rows):
        row = rows[r]
        den = lcm(*(x.denominator for x in row.values()))
        ints = {c: int(x * den) for c, x in row.items()}
        out.append(_primitive(ints))
    return out


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {c: x // g for c, x in row.items()}


def exact_rank(m: SparseExactMatrix) -> int:
    """Rank over Q.

    Integer rows (denominators cleared) are eliminated fraction-free: the
    pivot column is the active column with fewest nonzeros (ties: lowest
    index), the pivot row the sparsest row in it (ties: lowest index), and
    every updated row is divided by its content to bound coefficient growth.
    """
    rows = _integer_rows(m)
    col_rows: Dict[int, set] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    alive = [True] * len(rows)
    rank = 0
    while col_rows:
        pc = min(col_rows, key=lambda c: (len(col_rows[c]), c))
        candidates = col_rows.pop(pc)
        pr = min(candidates, key=lambda r: (len(rows[r]), r))
        prow = rows[pr]
        pv = prow[pc]
        alive[pr] = False
        for c in prow:
            if c != pc:
                col_rows[c].discard(pr)
        for r in sorted(candidates - {pr}):
            row = rows[r]
            rv = row[pc]
            g = gcd(pv, rv)
            a, b = pv // g, rv // g
            new = {}
            for c, x in row.items():
                if c != pc:
                    new[c] = a * x
            for c, x in prow.items():
                if c == pc:
                    continue
                y = new.get(c, 0) - b * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            for c in row:
                if c != pc and c not in new:
                    col_rows[c].discard(r)
            for c in new:
                if c not in row:
                    col_rows.setdefault(c, set()).add(r)
            rows[r] = _primitive(new) if new else new
        for c in [c for c, rs in col_rows.items() if not rs]:
            del col_rows[c]
        rank += 1
    return rank
