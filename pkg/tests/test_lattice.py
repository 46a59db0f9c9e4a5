import itertools
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import genlat as g
from genlat import intmat


def coords_strategy(rank, lo=-6, hi=6):
    return st.tuples(*[st.integers(lo, hi) for _ in range(rank)])


# -- blocks -------------------------------------------------------------------

def test_block_grams_fixed():
    assert g.Block.HYPERBOLIC.gram == ((0, 1), (1, 0))
    assert g.Block.HYPERBOLIC_ODD.gram == ((0, 1), (1, 1))
    me8 = g.Block.MINUS_E8.gram
    assert len(me8) == 8
    assert all(me8[i][i] == -2 for i in range(8))
    # chain 1..7 plus the branch node attached at position 5
    offdiag = {(i, j) for i in range(8) for j in range(8) if i != j and me8[i][j]}
    expected = set()
    for i in range(6):
        expected |= {(i, i + 1), (i + 1, i)}
    expected |= {(4, 7), (7, 4)}
    assert offdiag == expected
    assert all(me8[i][j] == 1 for i, j in offdiag)


def test_block_grams_unimodular_and_symmetric():
    for b in g.Block:
        assert intmat.is_symmetric(b.gram)
        assert intmat.det(b.gram) in (1, -1)
    # the E8 form itself has determinant one
    e8 = tuple(tuple(-x for x in row) for row in g.Block.MINUS_E8.gram)
    assert intmat.det(e8) == 1


# -- make_lattice --------------------------------------------------------------

def test_make_lattice_examples():
    lat = g.make_lattice([g.Block.HYPERBOLIC])
    assert (lat.rank, lat.sig_pos, lat.sig_neg) == (2, 1, 1)

    k3form = g.make_lattice(
        [g.Block.HYPERBOLIC] * 3 + [g.Block.MINUS_E8] * 2
    )
    assert (k3form.rank, k3form.sig_pos, k3form.sig_neg) == (22, 3, 19)

    odd = g.make_lattice([g.Block.HYPERBOLIC_ODD])
    assert (odd.rank, odd.sig_pos, odd.sig_neg) == (2, 1, 1)


@pytest.mark.parametrize(
    "spec", ["H", "H'", "E8-", "2H", "H',2H,E8-", "3H,2E8-"]
)
def test_signature_matches_exact_diagonalization(spec):
    lat = g.lattice_from_spec(spec)
    pos, neg, zero = intmat.signature(lat.gram)
    assert zero == 0
    assert (pos, neg) == (lat.sig_pos, lat.sig_neg)
    assert intmat.det(lat.gram) in (1, -1)


def test_make_lattice_rejects_bad_input():
    with pytest.raises(g.BadParameters):
        g.make_lattice([])
    with pytest.raises(g.BadParameters):
        g.make_lattice([g.Block.HYPERBOLIC], basis_names=["a"])
    with pytest.raises(g.BadParameters):
        g.make_lattice([g.Block.HYPERBOLIC], basis_names=["a", "a"])


# -- square / divisibility / characteristic ------------------------------------

def test_square_examples(H):
    e, f = H.basis_class("e1"), H.basis_class("f1")
    assert (e + f).square() == 2
    for a in range(-5, 6):
        assert (e + a * f).square() == 2 * a
    assert H.zero().square() == 0


def test_divisibility_examples(H):
    e, f = H.basis_class("e1"), H.basis_class("f1")
    assert (2 * e + 4 * f).divisibility() == 2
    assert (e + 3 * f).divisibility() == 1
    assert H.zero().divisibility() == 0
    assert not H.zero().is_primitive()


@pytest.mark.parametrize("spec", ["H", "H'", "2H,E8-"])
def test_divisibility_equals_content_of_pairings(spec):
    # gcd of coordinates = gcd{x.y : y basis vector}, by unimodularity
    lat = g.lattice_from_spec(spec)
    rng_coords = itertools.product((-2, 0, 1, 3), repeat=min(lat.rank, 4))
    for head in rng_coords:
        coords = list(head) + [0] * (lat.rank - len(head))
        x = lat.hclass(coords)
        pairings = [x.dot(lat.basis_class(i)) for i in range(lat.rank)]
        assert x.divisibility() == math.gcd(*pairings)


def test_characteristic_examples(H, HODD):
    assert H.zero().is_characteristic()
    k = HODD.basis_class("e1")  # first basis vector of the odd plane
    assert k.is_characteristic()
    assert not H.basis_class("e1").is_characteristic()


def test_characteristic_against_brute_force(HODD):
    lat = HODD
    for coords in itertools.product(range(-2, 3), repeat=2):
        x = lat.hclass(coords)
        brute = all(
            x.dot(lat.hclass(y)) % 2 == lat.hclass(y).square() % 2
            for y in itertools.product(range(-2, 3), repeat=2)
        )
        assert x.is_characteristic() == brute


# -- algebraic properties -------------------------------------------------------

@given(coords_strategy(4), coords_strategy(4), coords_strategy(4))
def test_pairing_symmetric_bilinear(a, b, c):
    lat = g.lattice_from_spec("2H")
    x, y, z = lat.hclass(a), lat.hclass(b), lat.hclass(c)
    assert x.dot(y) == y.dot(x)
    assert (x + y).dot(z) == x.dot(z) + y.dot(z)


@given(coords_strategy(4), st.integers(-9, 9))
def test_scaling_laws(a, r):
    lat = g.lattice_from_spec("2H")
    x = lat.hclass(a)
    assert (r * x).square() == r * r * x.square()
    assert (r * x).divisibility() == abs(r) * x.divisibility()


@given(coords_strategy(12, -3, 3))
def test_even_lattice_squares(a):
    lat = g.lattice_from_spec("H,E8-,H")
    assert lat.hclass(a).square() % 2 == 0


def test_lattice_mismatch(H, H2):
    with pytest.raises(g.LatticeMismatch):
        H.zero().dot(H2.zero())


# -- spec strings ----------------------------------------------------------------

def test_spec_string_round_trip():
    for spec in ["H", "H'", "E8-", "H',2H,3E8-", "3H,2E8-", "H,H',H"]:
        blocks = g.parse_lattice_spec(spec)
        assert g.format_lattice_spec(blocks) == spec


def test_spec_string_counts():
    blocks = g.parse_lattice_spec("H',2H,3E8-")
    assert blocks == (
        g.Block.HYPERBOLIC_ODD,
        g.Block.HYPERBOLIC,
        g.Block.HYPERBOLIC,
        g.Block.MINUS_E8,
        g.Block.MINUS_E8,
        g.Block.MINUS_E8,
    )


@pytest.mark.parametrize("bad", ["", "Q", "H,", "0H", "E8", "H''", "2"])
def test_spec_string_errors(bad):
    with pytest.raises(g.ParseError):
        g.parse_lattice_spec(bad)


# -- class parsing ----------------------------------------------------------------

def test_parse_class_dense_and_sparse(H2):
    assert g.parse_class(H2, "1,0,-2,3").coords == (1, 0, -2, 3)
    assert g.parse_class(H2, "e2=-2,f2=3,e1=1").coords == (1, 0, -2, 3)
    assert g.parse_class(H2, "e1=1", aliases={"R": "e1"}).coords == (1, 0, 0, 0)
    assert g.parse_class(H2, "R=5", aliases={"R": "e1"}).coords == (5, 0, 0, 0)


def test_parse_class_errors(H2):
    with pytest.raises(g.ParseError):
        g.parse_class(H2, "nope=1")
    with pytest.raises(g.ParseError):
        g.parse_class(H2, "1,2,3")
    with pytest.raises(g.ParseError):
        g.parse_class(H2, "e1=1,e1=2")
    with pytest.raises(g.ParseError):
        g.parse_class(H2, "e1=x")
    with pytest.raises(g.ParseError):
        g.parse_class(H2, "1,2,3,x")


# -- JSON -------------------------------------------------------------------------

def test_lattice_json_round_trip(H2E8):
    doc = json.loads(json.dumps(H2E8.to_json_dict()))
    lat = g.lattice_from_json_dict(doc)
    assert lat == H2E8


def test_hclass_json_round_trip(H2):
    x = H2.hclass([1, -2, 0, 7])
    doc = json.loads(json.dumps(x.to_json_dict()))
    y = g.hclass_from_json_dict(doc)
    assert y.coords == x.coords
    assert y.lattice.gram == x.lattice.gram
