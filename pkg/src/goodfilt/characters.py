"""Exact Weyl character arithmetic.

Weight multiplicities come from the Freudenthal recursion, dimensions from
the Weyl product formula (an independent consistency companion), and
tensor-product decompositions into dual Weyl constituents from the
Brauer-Klimyk rule: iterate over the weights of one factor, reflect the
rho-shifted sum to the dominant chamber with its sign, and drop wall hits.

All arithmetic is exact; the inner products needed by Freudenthal are
evaluated through simple-root coordinates with the symmetrized form, so
every quotient is checked to be an exact integer.  Characters are sparse
dicts keyed by fundamental-coordinate weight tuples.

The per-system memo tables follow the same idempotent-publication
contract as the KL table: immutable values, last-write-wins of identical
entries, safe to share.
"""

from __future__ import annotations

from functools import lru_cache

from . import roots as _r
from .errors import InternalInvariantError, PreconditionError
from .roots import RootSystem, Weight

__all__ = [
    "weight_multiplicities",
    "dominant_multiplicities",
    "dim_nabla",
    "dim_weight_space",
    "tensor_nabla_multiplicities",
    "triple_tensor_nabla_multiplicities",
]


def _require_dominant(rs, weight, what="operation"):
    w = _r.check_weight(rs, weight)
    if any(x < 0 for x in w):
        raise PreconditionError(f"{what} requires a dominant weight, got {w}")
    return w


def _form(rs, fund_vec, root_coords):
    """(v, b) for v in fundamental coordinates and b in simple-root coordinates."""
    return sum(
        v * c * d for v, c, d in zip(fund_vec, root_coords, rs.symmetrizer)
    )


def _norm2(rs, fund_vec):
    """Exact (v, v) as a Fraction-free comparison key: returns Fraction."""
    coords = _r.to_root_coords(rs, fund_vec)
    return sum(v * c * d for v, c, d in zip(fund_vec, coords, rs.symmetrizer))


@lru_cache(maxsize=None)
def _dominant_below(rs: RootSystem, lam: Weight) -> tuple[Weight, ...]:
    """Dominant weights mu <= lam, ordered by descending height of mu."""
    w0_lam = _r._mat_vec(rs.longest_element_action, lam)
    bound = _r.root_lattice_coords(rs, tuple(a - b for a, b in zip(lam, w0_lam)))
    if bound is None:
        raise InternalInvariantError("lam - w0(lam) must lie in the root lattice")
    seen = {tuple([0] * rs.rank): lam}
    frontier = [tuple([0] * rs.rank)]
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rs.rank):
                if c[i] < bound[i]:
                    c2 = c[:i] + (c[i] + 1,) + c[i + 1:]
                    if c2 not in seen:
                        col = rs.fund_of_simple(i)
                        seen[c2] = tuple(v - f for v, f in zip(seen[c], col))
                        nxt.append(c2)
        frontier = nxt
    dominants = [
        (sum(c), w)
        for c, w in seen.items()
        if all(x >= 0 for x in w)
    ]
    dominants.sort(key=lambda t: (t[0], t[1]))
    return tuple(w for _, w in dominants)


@lru_cache(maxsize=None)
def dominant_multiplicities(rs: RootSystem, lam: Weight):
    """Freudenthal recursion: multiplicities at the dominant weights <= lam."""
    lam = _require_dominant(rs, lam, "weight multiplicities")
    supp = _dominant_below(rs, lam)
    mult = {lam: 1}
    lam_norm = _norm2(rs, tuple(a + b for a, b in zip(lam, rs.rho)))
    two_rho = tuple(2 * x for x in rs.rho)
    for mu in supp:
        if mu == lam:
            continue
        acc = 0
        for beta in rs.positive_roots:
            k = 1
            while True:
                up = tuple(v + k * f for v, f in zip(mu, beta.fund_coords))
                dom = _r.dominant_conjugate(rs, up)
                m = mult.get(dom, 0)
                if m:
                    acc += m * _form(rs, up, beta.simple_coords)
                else:
                    # past the orbit support once the string is climbing
                    shifted = tuple(a + b for a, b in zip(up, rs.rho))
                    if (
                        _norm2(rs, shifted) > lam_norm
                        and _form(rs, up, beta.simple_coords) >= 0
                    ):
                        break
                k += 1
        diff = tuple(a - b for a, b in zip(lam, mu))
        diff_coords = _r.root_lattice_coords(rs, diff)
        if diff_coords is None:
            raise InternalInvariantError("support weight not below lam in root lattice")
        denom = _form(
            rs,
            tuple(a + b + c for a, b, c in zip(lam, mu, two_rho)),
            diff_coords,
        )
        num = 2 * acc
        if denom <= 0 or num % denom:
            raise InternalInvariantError(
                f"Freudenthal division failed at {mu}: {num}/{denom}"
            )
        m = num // denom
        if m <= 0:
            raise InternalInvariantError(f"non-positive multiplicity at {mu}")
        mult[mu] = m
    return dict(mult)


@lru_cache(maxsize=None)
def _full_character(rs: RootSystem, lam: Weight):
    """Weight -> multiplicity over the whole Weyl-group-invariant support."""
    out = {}
    for mu, m in dominant_multiplicities(rs, lam).items():
        for w in _r.weyl_orbit(rs, mu):
            out[w] = m
    return out


def weight_multiplicities(rs: RootSystem, lam) -> dict[Weight, int]:
    """The full character of the dual Weyl module with highest weight lam."""
    lam = _require_dominant(rs, lam, "weight multiplicities")
    return dict(_full_character(rs, lam))


@lru_cache(maxsize=None)
def dim_nabla(rs: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula, evaluated as an exact integer."""
    lam = _require_dominant(rs, lam, "dimension")
    shifted = tuple(a + b for a, b in zip(lam, rs.rho))
    num = 1
    den = 1
    for beta in rs.positive_roots:
        num *= sum(c * v for c, v in zip(beta.coroot, shifted))
        den *= sum(beta.coroot)
    if num % den:
        raise InternalInvariantError(f"Weyl dimension not integral for {lam}")
    return num // den


def dim_weight_space(rs: RootSystem, tau, xi) -> int:
    """Multiplicity of the weight xi in the (dual) Weyl module of highest weight tau."""
    tau = _require_dominant(rs, tau, "weight space dimension")
    xi = _r.check_weight(rs, xi)
    dom = _r.dominant_conjugate(rs, xi)
    return dominant_multiplicities(rs, tau).get(dom, 0)


def _dominantize_signed(rs: RootSystem, shifted):
    """Reflect a rho-shifted vector to the dominant chamber, tracking the sign.

    Returns (dominant vector, sign) with sign 0 when the vector lies on a
    wall (some coordinate vanishes along the way or at the end).
    """
    v = list(shifted)
    sign = 1
    while True:
        for i in range(rs.rank):
            if v[i] == 0:
                return None, 0
            if v[i] < 0:
                col = rs.fund_of_simple(i)
                vi = v[i]
                for k in range(rs.rank):
                    v[k] -= vi * col[k]
                sign = -sign
                break
        else:
            return tuple(v), sign


@lru_cache(maxsize=None)
def _tensor_cached(rs: RootSystem, a: Weight, b: Weight):
    small, big = (a, b) if dim_nabla(rs, a) <= dim_nabla(rs, b) else (b, a)
    acc: dict[Weight, int] = {}
    big_shifted = tuple(x + r for x, r in zip(big, rs.rho))
    for nu, mult in _full_character(rs, small).items():
        shifted = tuple(x + n for x, n in zip(big_shifted, nu))
        dom, sign = _dominantize_signed(rs, shifted)
        if sign:
            omega = tuple(x - r for x, r in zip(dom, rs.rho))
            acc[omega] = acc.get(omega, 0) + sign * mult
    out = {}
    top = tuple(x + y for x, y in zip(a, b))
    for omega, m in acc.items():
        if m < 0:
            raise InternalInvariantError(f"negative tensor multiplicity at {omega}")
        if m:
            if not _r.dominance_leq(rs, omega, top):
                raise InternalInvariantError(
                    f"tensor constituent {omega} not below {top}"
                )
            out[omega] = m
    return out


def tensor_nabla_multiplicities(rs: RootSystem, a, b) -> dict[Weight, int]:
    """Decomposition multiplicities of a product of two dual Weyl characters."""
    a = _require_dominant(rs, a, "tensor decomposition")
    b = _require_dominant(rs, b, "tensor decomposition")
    return dict(_tensor_cached(rs, a, b))


def triple_tensor_nabla_multiplicities(rs: RootSystem, a, b, c) -> dict[Weight, int]:
    """Constituents of a threefold product, folded pairwise."""
    a = _require_dominant(rs, a, "tensor decomposition")
    b = _require_dominant(rs, b, "tensor decomposition")
    c = _require_dominant(rs, c, "tensor decomposition")
    out: dict[Weight, int] = {}
    for nu, k in _tensor_cached(rs, a, b).items():
        for omega, m in _tensor_cached(rs, nu, c).items():
            out[omega] = out.get(omega, 0) + k * m
    return {w: m for w, m in out.items() if m}
