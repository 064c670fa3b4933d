"""The affine Weyl group W_p = W x pZR with dot action and alcove geometry.

Elements are exact affine transformations stored in a p-independent form:
a pair (finite matrix w acting on fundamental coordinates, translation
vector nu in the root lattice ZR, fundamental coordinates).  At a prime p
the element acts on the rho-shifted coordinate m = lambda + rho by
``m -> w(m) + p*nu``, i.e. ``x . lambda = w(lambda + rho) + p*nu - rho``.
The abstract Coxeter system depends only on (series, rank); p enters only
through the dot action and the weight <-> element dictionary, so lengths,
reduced words and Kazhdan-Lusztig data are reusable across primes.

Coxeter generators are the reflections in the walls of the antidominant
alcove C_p^- (the alcove whose shifted points m satisfy
``-p < <m, beta^vee> < 0`` for every positive coroot):

* generator i (1 <= i <= rank): the finite simple reflection s_i,
* generator 0: the affine reflection across ``<m, alpha_0^vee> = -p``,
  where alpha_0 is the highest short root (its coroot is the highest
  coroot).

With this choice the Coxeter length of x equals the number of affine
hyperplanes ``<m, beta^vee> = kp`` separating the alcove x(C_p^-) from
C_p^-, which is what makes lengths of dominant weights grow with their
distance from the antidominant chamber.  Lengths are computed exactly by
the root-counting formula

    l(w, nu) = sum over positive roots beta of |<nu, beta^vee> + [w^{-1}(beta) < 0]|

which is checked against the geometric separation count in the tests.

Elements are immutable values; the group object carries idempotent memo
tables (length, canonical word, Bruhat order, lower ideals) whose entries
are published atomically, so sharing a group across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import roots as _r
from .errors import (
    ConfigurationError,
    InternalInvariantError,
    PreconditionError,
    SingularWeightError,
)
from .roots import Matrix, RootSystem, Weight, check_weight

__all__ = [
    "AffineElement",
    "AlcoveLocation",
    "AffineWeylGroup",
    "get_group",
    "restricted_decompose",
]


@dataclass(frozen=True)
class AffineElement:
    """An element of the affine Weyl group as an exact transformation.

    ``finite_part`` is the matrix of the finite Weyl component on
    fundamental coordinates; ``translation`` is the root-lattice vector nu
    (fundamental coordinates) so that at prime p the shifted action is
    m -> finite_part(m) + p*nu.
    """

    finite_part: Matrix
    translation: Weight


@dataclass(frozen=True)
class AlcoveLocation:
    """Result of locating a p-regular weight: lambda = element . antidominant_rep."""

    element: AffineElement
    antidominant_rep: Weight
    length: int


def restricted_decompose(rs: RootSystem, weight, p: int) -> tuple[Weight, Weight]:
    """Split a dominant weight as lambda_0 + p*lambda_1 with lambda_0 restricted."""
    w = check_weight(rs, weight)
    if any(x < 0 for x in w):
        raise PreconditionError(f"restricted decomposition needs a dominant weight, got {w}")
    lam0 = tuple(x % p for x in w)
    lam1 = tuple((x - x % p) // p for x in w)
    return lam0, lam1


class AffineWeylGroup:
    """Arithmetic, lengths, descents and Bruhat order for one (series, rank)."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        self.identity = AffineElement(_r._identity_matrix(n), tuple([0] * n))
        gens = []
        a0 = rs.highest_short_root
        # reflection matrix of the highest short root on fundamental coordinates
        s0_mat = tuple(
            tuple(
                (1 if k == j else 0) - a0.fund_coords[k] * a0.coroot[j]
                for j in range(n)
            )
            for k in range(n)
        )
        gens.append(AffineElement(s0_mat, tuple(-c for c in a0.fund_coords)))
        for i in range(n):
            gens.append(AffineElement(rs.simple_reflections[i], tuple([0] * n)))
        self.generators = tuple(gens)  # index 0 = affine generator
        self._inv_matrix: dict[Matrix, Matrix] = {}
        self._length: dict[AffineElement, int] = {}
        self._word: dict[AffineElement, tuple[int, ...]] = {}
        self._leq: dict[tuple[AffineElement, AffineElement], bool] = {}
        self._ideal: dict[AffineElement, frozenset] = {}
        self._locate: dict[tuple[Weight, int], AlcoveLocation] = {}

    # -- group arithmetic ------------------------------------------------

    def multiply(self, a: AffineElement, b: AffineElement) -> AffineElement:
        mat = _r._mat_mul(a.finite_part, b.finite_part)
        tr = _r._vec_add(_r._mat_vec(a.finite_part, b.translation), a.translation)
        return AffineElement(mat, tr)

    def _matrix_inverse(self, m: Matrix) -> Matrix:
        cached = self._inv_matrix.get(m)
        if cached is None:
            frac = _r._mat_inv(m)
            if any(c.denominator != 1 for row in frac for c in row):
                raise InternalInvariantError("finite part is not invertible over Z")
            cached = tuple(tuple(int(c) for c in row) for row in frac)
            self._inv_matrix[m] = cached
        return cached

    def invert(self, x: AffineElement) -> AffineElement:
        minv = self._matrix_inverse(x.finite_part)
        return AffineElement(minv, tuple(-c for c in _r._mat_vec(minv, x.translation)))

    def apply_generator(self, x: AffineElement, i: int, side: str = "right") -> AffineElement:
        if not 0 <= i <= self.rs.rank:
            raise ConfigurationError(f"generator index {i} out of range 0..{self.rs.rank}")
        if side == "right":
            return self.multiply(x, self.generators[i])
        if side == "left":
            return self.multiply(self.generators[i], x)
        raise ConfigurationError(f"side must be 'left' or 'right', got {side!r}")

    def from_word(self, word) -> AffineElement:
        x = self.identity
        for i in word:
            x = self.apply_generator(x, int(i), "right")
        return x

    # -- length, descents, canonical words --------------------------------

    def length(self, x: AffineElement) -> int:
        cached = self._length.get(x)
        if cached is not None:
            return cached
        minv = self._matrix_inverse(x.finite_part)
        pos = self.rs._positive_fund_set
        total = 0
        for beta in self.rs.positive_roots:
            k = sum(c * t for c, t in zip(beta.coroot, x.translation))
            if _r._mat_vec(minv, beta.fund_coords) not in pos:
                k += 1
            total += abs(k)
        self._length[x] = total
        return total

    def right_descents(self, x: AffineElement) -> tuple[int, ...]:
        lx = self.length(x)
        return tuple(
            i
            for i in range(self.rs.rank + 1)
            if self.length(self.multiply(x, self.generators[i])) < lx
        )

    def canonical_word(self, x: AffineElement) -> tuple[int, ...]:
        """Reduced word obtained by stripping the lowest-indexed right descent.

        Deterministic, so words are stable cache keys across runs and primes.
        """
        cached = self._word.get(x)
        if cached is not None:
            return cached
        chain = []
        cur = x
        while cur != self.identity:
            hit = self._word.get(cur)
            if hit is not None:
                break
            lx = self.length(cur)
            for i in range(self.rs.rank + 1):
                nxt = self.multiply(cur, self.generators[i])
                if self.length(nxt) < lx:
                    chain.append((cur, i))
                    cur = nxt
                    break
            else:  # pragma: no cover
                raise InternalInvariantError("non-identity element with no descent")
        suffix = self._word.get(cur, ())
        for elt, i in reversed(chain):
            suffix = self._word[elt] = suffix + (i,)
        word = self._word.setdefault(x, suffix if x != self.identity else ())
        return word

    # -- Bruhat order ------------------------------------------------------

    def bruhat_leq(self, x: AffineElement, y: AffineElement) -> bool:
        if x == y:
            return True
        key = (x, y)
        cached = self._leq.get(key)
        if cached is not None:
            return cached
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            result = False
        else:
            s = min(self.right_descents(y))
            gen = self.generators[s]
            ys = self.multiply(y, gen)
            xs = self.multiply(x, gen)
            if self.length(xs) < lx:
                result = self.bruhat_leq(xs, ys)
            else:
                result = self.bruhat_leq(x, ys)
        self._leq[key] = result
        return result

    def lower_ideal(self, y: AffineElement) -> frozenset:
        """The set {z : z <= y} in Bruhat order (finite for every y)."""
        cached = self._ideal.get(y)
        if cached is not None:
            return cached
        if y == self.identity:
            result = frozenset([y])
        else:
            s = min(self.right_descents(y))
            gen = self.generators[s]
            below = self.lower_ideal(self.multiply(y, gen))
            result = frozenset(below | {self.multiply(z, gen) for z in below})
        self._ideal[y] = result
        return result

    # -- weights: dot action, regularity, location ------------------------

    def dot(self, x: AffineElement, weight, p: int) -> Weight:
        if not (isinstance(p, int) and p >= 2):
            raise ConfigurationError(f"modulus p must be an integer >= 2, got {p!r}")
        lam = check_weight(self.rs, weight)
        shifted = _r._vec_add(lam, self.rs.rho)
        moved = _r._vec_add(
            _r._mat_vec(x.finite_part, shifted),
            tuple(p * c for c in x.translation),
        )
        return _r._vec_sub(moved, self.rs.rho)

    def is_p_regular(self, weight, p: int) -> bool:
        lam = check_weight(self.rs, weight)
        shifted = _r._vec_add(lam, self.rs.rho)
        return all(
            sum(c * m for c, m in zip(beta.coroot, shifted)) % p != 0
            for beta in self.rs.positive_roots
        )

    def assert_p_regular(self, weight, p: int) -> None:
        lam = check_weight(self.rs, weight)
        shifted = _r._vec_add(lam, self.rs.rho)
        for beta in self.rs.positive_roots:
            val = sum(c * m for c, m in zip(beta.coroot, shifted))
            if val % p == 0:
                raise SingularWeightError(lam, beta.coroot, val, p)

    def in_antidominant_alcove(self, weight, p: int) -> bool:
        lam = check_weight(self.rs, weight)
        m = _r._vec_add(lam, self.rs.rho)
        if any(c >= 0 for c in m):
            return False
        a0 = self.rs.highest_short_root
        return sum(c * v for c, v in zip(a0.coroot, m)) > -p

    def locate(self, weight, p: int) -> AlcoveLocation:
        """Write a p-regular weight as x . (antidominant representative).

        Walks the shifted weight into C_p^- by reflecting across violated
        walls of C_p^- (lowest wall index first; index 0 is the affine
        wall).  Each crossing strips exactly one separating hyperplane, so
        the number of steps is the Coxeter length of the located element.
        """
        lam = check_weight(self.rs, weight)
        key = (lam, p)
        cached = self._locate.get(key)
        if cached is not None:
            return cached
        self.assert_p_regular(lam, p)
        a0 = self.rs.highest_short_root
        m = list(_r._vec_add(lam, self.rs.rho))
        word = []
        while True:
            a0_val = sum(c * v for c, v in zip(a0.coroot, m))
            if a0_val < -p:
                word.append(0)
                shift = a0_val + p
                m = [v - shift * f for v, f in zip(m, a0.fund_coords)]
                continue
            for i in range(self.rs.rank):
                if m[i] > 0:
                    word.append(i + 1)
                    col = self.rs.fund_of_simple(i)
                    mi = m[i]
                    m = [v - mi * f for v, f in zip(m, col)]
                    break
            else:
                break
        rep = _r._vec_sub(tuple(m), self.rs.rho)
        element = self.from_word(word)
        if self.dot(element, rep, p) != lam:
            raise InternalInvariantError(f"alcove walk failed to invert for {lam}")
        length = self.length(element)
        if length != len(word):
            raise InternalInvariantError(
                f"walk length {len(word)} disagrees with Coxeter length {length}"
            )
        loc = AlcoveLocation(element=element, antidominant_rep=rep, length=length)
        self._locate[key] = loc
        return loc

    def linked(self, a, b, p: int) -> bool:
        """Whether two p-regular weights lie in one dot orbit of the group."""
        return self.locate(a, p).antidominant_rep == self.locate(b, p).antidominant_rep

    # -- enumeration helpers ----------------------------------------------

    def elements_up_to_length(self, bound: int) -> list[AffineElement]:
        """All group elements of length <= bound, by breadth-first closure."""
        seen = {self.identity}
        frontier = [self.identity]
        for target in range(1, bound + 1):
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = self.multiply(x, g)
                    if y not in seen and self.length(y) == target:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda e: (self.length(e), self.canonical_word(e)))

    def dominant_orbit(self, rep: Weight, p: int, max_length: int):
        """Pairs (z, z . rep) with z . rep dominant and l(z) <= max_length."""
        out = []
        for z in self.elements_up_to_length(max_length):
            wt = self.dot(z, rep, p)
            if all(c >= 0 for c in wt):
                out.append((z, wt))
        return out


@lru_cache(maxsize=None)
def get_group(series: str, rank: int) -> AffineWeylGroup:
    return AffineWeylGroup(_r.build_root_system(series, rank))
