"""The bigraded complex Theta_k(M) computing H_*(C_k(M); Q) for even-dimensional M.

U^i has one generator per basis element of H_c^{d-i}(M; Q^w) and V^j one per
basis element of H_c^{2d-1-j}(M; Q).  Theta_k^{i,w} is spanned by monomials with
k - 2w U-factors, w V-factors and total degree i.  The differential contracts a
pair of U-factors into a V-factor through the cup product and lowers the degree
by one while raising the weight by one, so i + w is preserved.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import OddDimensionError, WindowTooLargeError
from .graded_algebra import U_FAMILY, V_FAMILY, Generator, Monomial, enumerate_basis, normalize_monomial
from .linalg import SparseExactMatrix
from .manifold import ManifoldData

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class CEGeneratorSet:
    d: int
    U: Tuple[Generator, ...]
    V: Tuple[Generator, ...]
    manifold: ManifoldData = field(repr=False, compare=False)
    # (a.id, b.id) -> [(v, coefficient)] for a.id <= b.id
    contractions: Dict[Tuple[int, int], list] = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def u0(self) -> Generator:
        return self.U[0]

    def u_of_degree(self, i: int) -> list:
        return [g for g in self.U if g.degree == i]

    def v_by_source(self, p: int, index: int) -> Generator:
        return self._cache["v_lookup"][(p, index)]

    def u_monomials(self, m: int, degree: int) -> list:
        key = ("U", m, degree)
        if key not in self._cache:
            self._cache[key] = enumerate_basis(self.U, m, degree)
        return self._cache[key]

    def v_monomials(self, m: int) -> Dict[int, list]:
        """Sym^m(V) grouped by degree."""
        key = ("V", m)
        if key not in self._cache:
            grouped: Dict[int, list] = {}
            for mono in enumerate_basis(self.V, m):
                grouped.setdefault(mono.degree, []).append(mono)
            self._cache[key] = grouped
        return self._cache[key]


def build_generators(m: ManifoldData) -> CEGeneratorSet:
    """U and V generators of the Chevalley-Eilenberg model, in canonical order.

    Order: all of U before V, source degree descending, then basis index.
    """
    d = m.d
    if d % 2:
        raise OddDimensionError(f"{m.name}: d={d} is odd; use the symmetric-power formula")
    gens_u, gens_v = [], []
    next_id = 0
    for p in range(d, -1, -1):
        for idx in range(m.rank(p, twisted=True)):
            gens_u.append(Generator(next_id, d - p, U_FAMILY, p, idx))
            next_id += 1
    for p in range(d, -1, -1):
        for idx in range(m.rank(p)):
            gens_v.append(Generator(next_id, 2 * d - 1 - p, V_FAMILY, p, idx))
            next_id += 1
    gens = CEGeneratorSet(d, tuple(gens_u), tuple(gens_v), m)
    gens._cache["v_lookup"] = {(g.source_degree, g.index): g for g in gens_v}
    for x, a in enumerate(gens_u):
        for b in gens_u[x:]:
            terms = pair_contraction(a, b, gens)
            if terms:
                gens.contractions[(a.id, b.id)] = terms
    every = gens_u + gens_v
    gens._cache["by_id"] = every
    gens._cache["parity"] = [g.parity for g in every]
    gens._cache["n_u"] = len(gens_u)
    gens._cache["fast_contractions"] = {
        key: [(v.id, int(c) if c.denominator == 1 else c) for v, c in terms]
        for key, terms in gens.contractions.items()
    }
    return gens


def contraction_sign(d: int, p_a: int, p_b: int) -> int:
    """Sign attached to contracting s^d a with s^d b.

    For classes of equal parity this is (-1)^{(d-1) p_b}; the product form
    below also makes the pairing graded-symmetric when the parities differ.
    """
    return -1 if ((d - 1) * p_a * p_b) % 2 else 1


def pair_contraction(a: Generator, b: Generator, gens: CEGeneratorSet) -> list:
    """The V-component of the differential on the product a*b, as [(v, coeff)]."""
    m = gens.manifold
    p, q = a.source_degree, b.source_degree
    if p + q > m.d:
        return []
    vec = m.cup_product(p, a.index, q, b.index)
    sign = contraction_sign(m.d, p, q)
    return [(gens.v_by_source(p + q, idx), sign * c) for idx, c in sorted(vec.items()) if c]


@dataclass(frozen=True)
class ThetaSlice:
    k: int
    i: int
    omega: int
    basis: Tuple[Monomial, ...]
    index: Dict[tuple, int] = field(repr=False, compare=False, default_factory=dict)

    def __len__(self):
        return len(self.basis)


def build_theta_slice(gens: CEGeneratorSet, k: int, i: int, omega: int, cap: Optional[int] = None) -> ThetaSlice:
    if not 0 <= omega <= k // 2:
        raise ValueError(f"weight {omega} outside 0..{k // 2}")
    key = ("slice", k, i, omega)
    cached = gens._cache.get(key)
    if cached is not None:
        return cached
    n_u = k - 2 * omega
    basis = []
    for v_deg, v_monos in sorted(gens.v_monomials(omega).items()):
        if v_deg > i:
            break
        u_monos = gens.u_monomials(n_u, i - v_deg)
        if cap is not None and len(basis) + len(u_monos) * len(v_monos) > cap:
            raise WindowTooLargeError(
                f"Theta_{k}^({i},{omega}) exceeds the basis cap of {cap} monomials"
            )
        for vm in v_monos:
            for um in u_monos:
                basis.append(Monomial(um.factors + vm.factors))
    basis.sort(key=lambda mono: mono.key)
    sl = ThetaSlice(k, i, omega, tuple(basis), {mono.key: r for r, mono in enumerate(basis)})
    gens._cache[key] = sl
    return sl


def _differential_keys(key: tuple, gens: CEGeneratorSet) -> dict:
    """The differential on a canonical id tuple, returned as {id tuple: coefficient}.

    Inserting the new V-factor into the already sorted remainder costs one
    bisection; its sign is the parity of the odd factors it jumps over.
    """
    parity = gens._cache["parity"]
    n_u = gens._cache["n_u"]
    contractions = gens._cache["fast_contractions"]
    m = sum(1 for g in key if g < n_u)
    out: dict = {}
    prefix = [0]
    for g in key:
        prefix.append(prefix[-1] + parity[g])
    for p in range(m):
        for q in range(p + 1, m):
            terms = contractions.get((key[p], key[q]))
            if not terms:
                continue
            # move x_p then x_q to the front
            exp = parity[key[p]] * prefix[p] + parity[key[q]] * (prefix[q] - parity[key[p]])
            rest = key[:p] + key[p + 1:q] + key[q + 1:]
            odd_rest = prefix[-1] - parity[key[p]] - parity[key[q]]
            for v, coeff in terms:
                pos = bisect_left(rest, v)
                if parity[v]:
                    if pos < len(rest) and rest[pos] == v:
                        continue
                    # odd factors of rest before pos, counted from the end
                    odd_after = sum(parity[g] for g in rest[pos:])
                    e = exp + (odd_rest - odd_after)
                else:
                    e = exp
                image = rest[:pos] + (v,) + rest[pos:]
                c = out.get(image, 0) + (-coeff if e % 2 else coeff)
                if c:
                    out[image] = c
                else:
                    del out[image]
    return out


def differential_of(mono: Monomial, gens: CEGeneratorSet) -> Dict[Monomial, Fraction]:
    """Apply the coderivation to one basis monomial."""
    by_id = gens._cache["by_id"]
    return {
        Monomial(tuple(by_id[g] for g in image)): Fraction(c)
        for image, c in _differential_keys(mono.key, gens).items()
    }


def differential_of_reference(mono: Monomial, gens: CEGeneratorSet) -> Dict[Monomial, Fraction]:
    """Straightforward version of differential_of built on normalize_monomial."""
    fs = mono.factors
    n_u = sum(1 for g in fs if g.family == U_FAMILY)
    out: Dict[Monomial, Fraction] = {}
    parities = [g.parity for g in fs]
    for p in range(n_u):
        for q in range(p + 1, n_u):
            terms = gens.contractions.get((fs[p].id, fs[q].id))
            if not terms:
                continue
            exp = parities[p] * sum(parities[:p]) + parities[q] * (sum(parities[:q]) - parities[p])
            sign = -1 if exp % 2 else 1
            rest = fs[:p] + fs[p + 1:q] + fs[q + 1:]
            for v, coeff in terms:
                term = normalize_monomial((v,) + rest)
                if term is None:
                    continue
                c = out.get(term.monomial, 0) + sign * coeff * term.coefficient
                if c:
                    out[term.monomial] = c
                else:
                    out.pop(term.monomial, None)
    return out


@dataclass(frozen=True)
class DifferentialMatrix:
    rows: ThetaSlice
    cols: ThetaSlice
    entries: SparseExactMatrix


def assemble_differential(
    gens: CEGeneratorSet, k: int, i: int, omega: int, cap: Optional[int] = None
) -> DifferentialMatrix:
    """Matrix of the differential Theta_k^{i,w} -> Theta_k^{i-1,w+1}."""
    source = build_theta_slice(gens, k, i, omega, cap)
    if omega + 1 <= k // 2 and i >= 1:
        target = build_theta_slice(gens, k, i - 1, omega + 1, cap)
    else:
        target = ThetaSlice(k, i - 1, omega + 1, ())
    entries = {}
    if len(target):
        for c, mono in enumerate(source.basis):
            for image, coeff in _differential_keys(mono.key, gens).items():
                entries[(target.index[image], c)] = coeff
    return DifferentialMatrix(target, source, SparseExactMatrix(len(target), len(source), entries))


def d2_check(gens: CEGeneratorSet, k: int, degree_range, cap: Optional[int] = None) -> Optional[Monomial]:
    """Verify that the differential squares to zero on Theta_k in the given degrees.

    Returns None on success, otherwise the first basis monomial whose image
    under the composite is nonzero.
    """
    for i in degree_range:
        for omega in range(k // 2 - 1):
            first = assemble_differential(gens, k, i, omega, cap)
            if not first.entries.entries:
                continue
            second = assemble_differential(gens, k, i - 1, omega + 1, cap)
            product = second.entries @ first.entries
            if product.entries:
                col = min(c for _, c in product.entries)
                return first.cols.basis[col]
    return None
