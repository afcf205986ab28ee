"""Free graded-commutative algebras: generators, canonical monomials, Koszul signs.

A monomial is a multiset of generators kept sorted by generator id.  Even
generators behave polynomially, odd generators anticommute and square to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

U_FAMILY = "U"
V_FAMILY = "V"


@dataclass(frozen=True)
class Generator:
    id: int
    degree: int
    family: str
    source_degree: int
    index: int = 0

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"generator degree must be >= 0, got {self.degree}")
        if self.family not in (U_FAMILY, V_FAMILY):
            raise ValueError(f"unknown generator family {self.family!r}")

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def length(self) -> int:
        return 1 if self.family == U_FAMILY else 2

    @property
    def weight(self) -> int:
        return 0 if self.family == U_FAMILY else 1

    @property
    def name(self) -> str:
        # u_{i,j} / v_{j,l} with 1-based basis index
        return f"{self.family.lower()}{self.degree}_{self.index + 1}"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Monomial:
    factors: tuple = ()
    degree: int = field(init=False, compare=False, repr=False)
    length: int = field(init=False, compare=False, repr=False)
    weight: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        prev = None
        for g in factors:
            if prev is not None:
                if g.id < prev.id:
                    raise ValueError("monomial factors must be sorted by generator id")
                if g.id == prev.id and g.parity:
                    raise ValueError(f"odd generator {g!r} repeated")
            prev = g
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "degree", sum(g.degree for g in factors))
        object.__setattr__(self, "length", sum(g.length for g in factors))
        object.__setattr__(self, "weight", sum(g.weight for g in factors))

    @property
    def key(self) -> tuple:
        return tuple(g.id for g in self.factors)

    def count(self, family: str) -> int:
        return sum(1 for g in self.factors if g.family == family)

    def __mul__(self, other: "Monomial") -> Optional["SignedMonomial"]:
        return normalize_monomial(self.factors + other.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        i = 0
        fs = self.factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j].id == fs[i].id:
                j += 1
            parts.append(fs[i].name + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return "*".join(parts)


@dataclass(frozen=True)
class SignedMonomial:
    coefficient: Fraction
    monomial: Monomial

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.coefficient == 0:
            raise ValueError("zero is represented by None, not a zero coefficient")


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering graded elements.

    ``permutation[j]`` is the old position of the element placed at position
    ``j``; ``degrees`` are indexed by old position.  Every pair whose relative
    order is inverted contributes ``degrees[a] * degrees[b]`` to the exponent.
    """
    exponent = 0
    n = len(permutation)
    for x in range(n):
        a = permutation[x]
        if degrees[a] % 2 == 0:
            continue
        for y in range(x + 1, n):
            b = permutation[y]
            if b < a and degrees[b] % 2:
                exponent += 1
    return -1 if exponent % 2 else 1


def normalize_monomial(factors: Iterable[Generator]) -> Optional[SignedMonomial]:
    """Sort a product of generators into canonical order.

    Returns ``None`` (zero) if an odd generator occurs twice.
    """
    factors = list(factors)
    order = sorted(range(len(factors)), key=lambda j: factors[j].id)
    ordered = [factors[j] for j in order]
    for a, b in zip(ordered, ordered[1:]):
        if a.id == b.id and a.parity:
            return None
    sign = koszul_sign(order, [g.degree for g in factors])
    return SignedMonomial(Fraction(sign), Monomial(tuple(ordered)))


def enumerate_basis(
    generators: Sequence[Generator], m: int, degree: Optional[int] = None
) -> list:
    """All monomials with exactly ``m`` factors (a basis of Sym^m), lex ordered.

    With ``degree`` given, only monomials of that total degree are returned.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    gens = sorted(generators, key=lambda g: g.id)
    n = len(gens)
    # suffix bounds on degree, used for pruning
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        lo[j] = gens[j].degree if j == n - 1 else min(gens[j].degree, lo[j + 1])
        hi[j] = gens[j].degree if j == n - 1 else max(gens[j].degree, hi[j + 1])

    out = []
    chosen = []

    def rec(j, remaining, deg_left):
        if remaining == 0:
            if degree is None or deg_left == 0:
                out.append(Monomial(tuple(chosen)))
            return
        if j == n:
            return
        if degree is not None and not (remaining * lo[j] <= deg_left <= remaining * hi[j]):
            return
        g = gens[j]
        top = remaining if not g.parity else min(1, remaining)
        for mult in range(top, -1, -1):
            chosen.extend([g] * mult)
            rec(j + 1, remaining - mult, None if degree is None else deg_left - mult * g.degree)
            if mult:
                del chosen[-mult:]

    rec(0, m, degree)
    return out
