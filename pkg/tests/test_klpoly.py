import pytest

from goodfilt.affine import get_group
from goodfilt.errors import CacheFormatError
from goodfilt.klpoly import ONE, ZERO, IntPoly, KLTable


@pytest.fixture()
def a1_table():
    return KLTable(get_group("A", 1))


@pytest.fixture()
def a2_table():
    return KLTable(get_group("A", 2))


def test_intpoly_arithmetic():
    p = IntPoly((1, 2)) + IntPoly((0, 1, 3))
    assert p.coeffs == (1, 3, 3)
    q = p - IntPoly((1, 3, 3))
    assert q == ZERO and not q
    assert IntPoly((1, 1)).scale_shift(2, 2).coeffs == (0, 0, 2, 2)
    assert IntPoly((0, 0)).coeffs == ()
    assert IntPoly((5,)).eval_at_one() == 5
    assert ONE.coeff(0) == 1 and ONE.coeff(3) == 0


def test_kl_diagonal_and_incomparable(a1_table):
    g = a1_table.group
    x = g.from_word((1, 0))
    assert a1_table.kl(x, x) == ONE
    y = g.from_word((0, 1))
    # same length, distinct: incomparable
    assert a1_table.kl(x, y) == ZERO
    assert a1_table.kl(y, x) == ZERO


def test_dihedral_all_one(a1_table):
    g = a1_table.group
    elements = g.elements_up_to_length(10)
    for x in elements:
        for y in elements:
            expected = ONE if g.bruhat_leq(x, y) else ZERO
            assert a1_table.kl(x, y) == expected


def test_mu_fixtures(a1_table):
    g = a1_table.group
    e = g.identity
    s1 = g.from_word((1,))
    s10 = g.from_word((1, 0))
    s101 = g.from_word((1, 0, 1))
    assert a1_table.mu(s1, s10) == 1  # length gap 1
    assert a1_table.mu(e, s101) == 0  # gap 3, P = 1 has no q term
    assert a1_table.mu(s10, s1) == 0  # not below


def test_c_coeff(a1_table):
    g = a1_table.group
    x = g.from_word((1, 0))
    y = g.from_word((1, 0, 1, 0))
    assert a1_table.c_coeff(x, x, 0) == 1
    assert a1_table.c_coeff(x, y, 1) == 0  # odd exponent
    assert a1_table.c_coeff(x, y, -2) == 0
    assert a1_table.c_coeff(x, y, 0) == 1
    assert a1_table.c_coeff(x, y, 2) == 0  # dihedral P = 1 has no q term


def test_invariants_on_a2_sample(a2_table):
    g = a2_table.group
    elements = g.elements_up_to_length(6)
    for y in elements:
        ly = g.length(y)
        for x in g.lower_ideal(y):
            p = a2_table.kl(x, y)
            assert p.coeff(0) == 1
            assert all(c >= 0 for c in p.coeffs)
            if x != y:
                assert 2 * p.degree <= ly - g.length(x) - 1


def test_cold_recomputation_identical(a2_table):
    g = a2_table.group
    y = g.from_word((0, 1, 2, 0, 1, 0))
    values = {x: a2_table.kl(x, y) for x in g.lower_ideal(y)}
    fresh = KLTable(g)
    for x, p in values.items():
        assert fresh.kl(x, y) == p


def test_cache_roundtrip(tmp_path, a2_table):
    g = a2_table.group
    y = g.from_word((0, 1, 2, 1, 0))
    for x in g.lower_ideal(y):
        a2_table.kl(x, y)
    path = tmp_path / "a2.klcache"
    a2_table.save(path)

    loaded = KLTable(g)
    n = loaded.load(path)
    assert n == len(a2_table.memo)
    assert loaded.memo == a2_table.memo
    # loading on top of computed values is idempotent
    assert loaded.load(path) == n

    # byte-stable save
    loaded.save(tmp_path / "again.klcache")
    assert (tmp_path / "again.klcache").read_bytes() == path.read_bytes()


def test_cache_rejects_bad_header(tmp_path, a2_table):
    path = tmp_path / "bad.klcache"
    path.write_text('{"format": "kltable", "version": 1, "series": "B", "rank": 2}\n')
    with pytest.raises(CacheFormatError):
        a2_table.load(path)
    path.write_text("not json\n")
    with pytest.raises(CacheFormatError):
        a2_table.load(path)
    path.write_text("")
    with pytest.raises(CacheFormatError):
        a2_table.load(path)


def test_cache_rejects_degree_violation(tmp_path, a2_table):
    path = tmp_path / "bad2.klcache"
    header = '{"format": "kltable", "version": 1, "series": "A", "rank": 2}\n'
    # claims a q-degree far beyond the bound for a length-2 interval
    record = '{"x": [1], "y": [1, 0, 1], "p_of_q": [1, 7]}\n'
    path.write_text(header + record)
    with pytest.raises(CacheFormatError):
        a2_table.load(path)
    assert not a2_table.memo
