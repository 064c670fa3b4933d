"""Exact root-system data for the simple types A-G.

Conventions, fixed once and used by every other module:

* Weights are integer tuples in the *fundamental-weight* basis, so the
  pairing of a weight with a simple coroot is just a coordinate.
* Simple roots follow Bourbaki numbering (1-based in the literature;
  index ``i`` here corresponds to Bourbaki ``alpha_{i+1}``).  In type B
  the last simple root is short, in type C it is long, in F4 roots 3,4
  are short, and in G2 root 1 is short.
* The Cartan matrix is stored as ``cartan[i][j] = <alpha_j, alpha_i^vee>``,
  i.e. column ``j`` is the fundamental-coordinate vector of ``alpha_j``.
* Root lengths are normalised so that short roots have squared length 2;
  ``symmetrizer[i] = (alpha_i, alpha_i)/2`` lies in {1, 2, 3}.
* ``highest_short_root`` is the short root of maximal height.  Its coroot
  is the highest coroot, which is what the Jantzen-region bound pairs
  against.

Everything is computed with exact integer (or Fraction) arithmetic; no
floats anywhere.  RootSystem instances are immutable and freely shareable
between threads; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ConfigurationError,
    DimensionMismatchError,
    InternalInvariantError,
    PreconditionError,
)

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

# classical data used to cross-check the generated tables
_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_RANK_RANGE = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (2, 8),
    "D": (4, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_scale(k, a):
    return tuple(k * x for x in a)


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_inv(m):
    """Exact inverse of an integer matrix via Fraction Gaussian elimination."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Root:
    """A positive root in three coordinate systems.

    ``simple_coords``: coefficients over the simple roots (all >= 0);
    ``fund_coords``: fundamental-weight coordinates (pairings with the
    simple coroots); ``coroot``: coefficients of the coroot over the
    simple coroots, so ``<w, beta^vee> = sum(coroot[j] * w[j])`` for a
    weight ``w`` in fundamental coordinates.
    """

    simple_coords: tuple[int, ...]
    fund_coords: tuple[int, ...]
    coroot: tuple[int, ...]
    length_half: int  # (beta, beta) / 2 with short roots at 1

    @property
    def height(self) -> int:
        return sum(self.simple_coords)


@dataclass(frozen=True, eq=False)
class RootSystem:
    series: str
    rank: int
    cartan: Matrix
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    rho: Weight
    coxeter_number: int
    highest_short_root: Root
    longest_element_action: Matrix  # w0 acting on fundamental coordinates
    simple_reflections: tuple[Matrix, ...]
    inverse_cartan: tuple[tuple[Fraction, ...], ...]
    _positive_fund_set: frozenset

    # Construction is deterministic, so identity on (series, rank) is safe
    # and keeps hashing cheap for the memo tables built on top.
    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.series == other.series
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.series, self.rank))

    def __repr__(self):
        return f"RootSystem({self.series}{self.rank})"

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    def fund_of_simple(self, i: int) -> Weight:
        """Fundamental coordinates of alpha_i (column i of the Cartan matrix)."""
        return tuple(self.cartan[k][i] for k in range(self.rank))


def _cartan_matrix(series: str, rank: int) -> tuple[list[list[int]], list[int]]:
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        # 0-based node labels
        c[i][j] = cij
        c[j][i] = cji

    if series in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if series == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            c[n - 1][n - 2] = -2
        if series == "C" and n >= 2:
            # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
            c[n - 2][n - 1] = -2
        d = [1] * n
        if series == "B":
            d = [2] * (n - 1) + [1]
        if series == "C":
            d = [1] * (n - 1) + [2]
    elif series == "D":
        for i in range(n - 3):
            edge(i, i + 1)
        edge(n - 3, n - 2)
        edge(n - 3, n - 1)
        d = [1] * n
    elif series == "E":
        # Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            edge(a, b)
        edge(1, 3)
        d = [1] * n
    elif series == "F":
        edge(0, 1)
        edge(1, 2, cij=-1, cji=-2)  # <alpha_3, alpha_2^vee> = -1, <alpha_2, alpha_3^vee> = -2
        edge(2, 3)
        d = [2, 2, 1, 1]
    elif series == "G":
        edge(0, 1, cij=-3, cji=-1)  # alpha_1 short, alpha_2 long
        d = [1, 3]
    else:  # pragma: no cover - guarded by caller
        raise ConfigurationError(f"unknown series {series!r}")
    return c, d


def _generate_positive_roots(cartan, symmetrizer):
    """Positive roots by root-string closure over the simple roots.

    For a known root beta and simple alpha_i, beta + alpha_i is a root
    exactly when the alpha_i-string through beta satisfies
    r - <beta, alpha_i^vee> > 0, where r is the largest k with
    beta - k*alpha_i a root.  Working up by height this only ever looks
    at roots already generated.
    """
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known = set(simples)
    by_height = {1: list(simples)}
    height = 1
    while by_height.get(height):
        nxt = []
        for b in by_height[height]:
            pairing = _mat_vec(cartan, b)  # <b, alpha_i^vee> for each i
            for i in range(n):
                down = list(b)
                r = 0
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        r += 1
                    else:
                        break
                if r - pairing[i] > 0:
                    up = list(b)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        nxt.append(cand)
        height += 1
        if nxt:
            by_height[height] = nxt
    ordered = sorted(known, key=lambda b: (sum(b), b))
    roots = []
    for b in ordered:
        fund = _mat_vec(cartan, b)
        norm = sum(
            b[i] * b[j] * symmetrizer[i] * cartan[i][j]
            for i in range(n)
            for j in range(n)
        )
        if norm % 2:
            raise InternalInvariantError(f"odd squared length for root {b}")
        half = norm // 2
        coroot = []
        for j in range(n):
            num = b[j] * symmetrizer[j]
            if num % half:
                raise InternalInvariantError(f"non-integral coroot for {b}")
            coroot.append(num // half)
        roots.append(
            Root(
                simple_coords=b,
                fund_coords=tuple(fund),
                coroot=tuple(coroot),
                length_half=half,
            )
        )
    return tuple(roots)


def _longest_element(rank, simple_reflections):
    """Matrix of w0 on fundamental coordinates, found by walking rho down."""
    v = [1] * rank
    m = _identity_matrix(rank)
    while True:
        for i in range(rank):
            if v[i] > 0:
                m = _mat_mul(simple_reflections[i], m)
                v = list(_mat_vec(simple_reflections[i], tuple(v)))
                break
        else:
            return m


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    """Construct the full Cartan datum for a simple type.

    Raises ConfigurationError for invalid (series, rank) pairs.  Rank is
    capped at 8 (E8); this is a desk-scale tool and the fixed tables are
    exhaustively tested.
    """
    series = str(series).upper()
    if series not in _RANK_RANGE:
        raise ConfigurationError(f"unknown series {series!r} (expected A-G)")
    lo, hi = _RANK_RANGE[series]
    if not isinstance(rank, int) or not lo <= rank <= hi:
        raise ConfigurationError(
            f"invalid type {series}{rank}: rank must be in [{lo}, {hi}] for series {series}"
        )
    cartan_rows, d = _cartan_matrix(series, rank)
    cartan = tuple(tuple(row) for row in cartan_rows)
    roots = _generate_positive_roots(cartan, tuple(d))

    expected = _POSITIVE_ROOT_COUNT[series](rank)
    if len(roots) != expected:
        raise InternalInvariantError(
            f"{series}{rank}: generated {len(roots)} positive roots, expected {expected}"
        )

    doubled = len(roots) * 2
    if doubled % rank:
        raise InternalInvariantError(f"{series}{rank}: |R| not divisible by rank")
    coxeter = doubled // rank

    shorts = [r for r in roots if r.length_half == 1]
    top_short = max(shorts, key=lambda r: r.height)
    if sum(1 for r in shorts if r.height == top_short.height) != 1:
        raise InternalInvariantError(f"{series}{rank}: highest short root not unique")

    rho = tuple([1] * rank)
    if sum(top_short.coroot) != coxeter - 1:
        raise InternalInvariantError(
            f"{series}{rank}: <rho, alpha_0^vee> = {sum(top_short.coroot)} != h-1 = {coxeter - 1}"
        )

    refl = []
    for i in range(rank):
        col = tuple(cartan[k][i] for k in range(rank))
        refl.append(
            tuple(
                tuple((1 if k == j else 0) - (col[k] if j == i else 0) for j in range(rank))
                for k in range(rank)
            )
        )
    w0 = _longest_element(rank, refl)
    if _mat_mul(w0, w0) != _identity_matrix(rank):
        raise InternalInvariantError(f"{series}{rank}: w0 action is not an involution")

    inv_cartan = _mat_inv(cartan)
    return RootSystem(
        series=series,
        rank=rank,
        cartan=cartan,
        symmetrizer=tuple(d),
        positive_roots=roots,
        rho=rho,
        coxeter_number=coxeter,
        highest_short_root=top_short,
        longest_element_action=w0,
        simple_reflections=tuple(refl),
        inverse_cartan=inv_cartan,
        _positive_fund_set=frozenset(r.fund_coords for r in roots),
    )


def check_weight(rs: RootSystem, weight) -> Weight:
    w = tuple(int(x) for x in weight)
    if len(w) != rs.rank:
        raise DimensionMismatchError(
            f"weight {w} has {len(w)} coordinates, expected {rs.rank} for {rs!r}"
        )
    return w


def pair(rs: RootSystem, weight, root: Root) -> int:
    """Exact pairing <weight, root^vee>; linear in the weight."""
    w = check_weight(rs, weight)
    return sum(c * x for c, x in zip(root.coroot, w))


def star(rs: RootSystem, weight) -> Weight:
    """The duality involution -w0 on weight coordinates."""
    w = check_weight(rs, weight)
    return tuple(-x for x in _mat_vec(rs.longest_element_action, w))


def is_dominant(rs: RootSystem, weight) -> bool:
    return all(x >= 0 for x in check_weight(rs, weight))


def is_restricted(rs: RootSystem, weight, p: int) -> bool:
    return all(0 <= x <= p - 1 for x in check_weight(rs, weight))


def jantzen_bound(rs: RootSystem, p: int) -> int:
    return p * (p - rs.coxeter_number + 2)


def in_jantzen_region(rs: RootSystem, weight, p: int) -> bool:
    """Whether <weight + rho, alpha_0^vee> <= p(p - h + 2)."""
    w = check_weight(rs, weight)
    if not is_dominant(rs, w):
        raise PreconditionError(f"jantzen test requires a dominant weight, got {w}")
    shifted = _vec_add(w, rs.rho)
    return pair(rs, shifted, rs.highest_short_root) <= jantzen_bound(rs, p)


@dataclass(frozen=True)
class PrimeReport:
    """Advisory flags for a prime; never blocks computation."""

    p: int
    p_odd: bool
    p_ge_2h_minus_2: bool
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.warnings


def validate_p(rs: RootSystem, p: int) -> PrimeReport:
    h = rs.coxeter_number
    warnings = []
    odd = p % 2 == 1
    big = p >= 2 * h - 2
    if not odd:
        warnings.append(f"p={p} is even")
    if not big:
        warnings.append(f"p={p} < 2h-2 = {2 * h - 2} for {rs.series}{rs.rank}")
    return PrimeReport(p=p, p_odd=odd, p_ge_2h_minus_2=big, warnings=tuple(warnings))


def to_root_coords(rs: RootSystem, weight) -> tuple[Fraction, ...]:
    """Coefficients of a weight over the simple roots (exact rationals)."""
    w = check_weight(rs, weight)
    return tuple(
        sum(rs.inverse_cartan[i][j] * w[j] for j in range(rs.rank))
        for i in range(rs.rank)
    )


def root_lattice_coords(rs: RootSystem, weight) -> tuple[int, ...] | None:
    """Integer simple-root coordinates, or None when weight is not in ZR."""
    coords = to_root_coords(rs, weight)
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def dominance_leq(rs: RootSystem, a, b) -> bool:
    """a <= b in the dominance order: b - a a nonnegative integer root sum."""
    diff = _vec_sub(check_weight(rs, b), check_weight(rs, a))
    coords = root_lattice_coords(rs, diff)
    return coords is not None and all(c >= 0 for c in coords)


def dominant_conjugate(rs: RootSystem, weight) -> Weight:
    """The unique dominant weight in the finite Weyl orbit."""
    v = list(check_weight(rs, weight))
    while True:
        for i in range(rs.rank):
            if v[i] < 0:
                col = rs.fund_of_simple(i)
                vi = v[i]
                v = [v[k] - vi * col[k] for k in range(rs.rank)]
                break
        else:
            return tuple(v)


def weyl_orbit(rs: RootSystem, weight) -> frozenset:
    """The full finite Weyl orbit of a weight."""
    start = check_weight(rs, weight)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                if v[i] != 0:
                    col = rs.fund_of_simple(i)
                    img = tuple(v[k] - v[i] * col[k] for k in range(rs.rank))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
        frontier = nxt
    return frozenset(seen)
