from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import CTX, cuts_for, iets
from sciscal.homology import PT, R, BarChain, bar_face, chain_vol
from sciscal.iet import Interval, iet_compose, iet_identity, iet_rotation
from sciscal.polytope import pt_interval
from sciscal.regulator import (
    UNIVERSAL_MEASURE,
    VOLUME,
    measure_eval,
    measure_for,
    regulator_flag,
    regulator_viaduct,
)
from sciscal.spans import flag_to_viaduct, subdivide, viaduct_refine

ONE, U = CTX.one(), CTX["u"]
ZERO = CTX.zero()
L = ONE + U


def test_measure_eval():
    assert measure_eval(VOLUME, Interval(ZERO, L)) == L
    assert measure_eval(UNIVERSAL_MEASURE, Interval(ZERO, ONE)) == pt_interval(ZERO, ONE)
    assert measure_for("vol") is VOLUME and measure_for("universal") is UNIVERSAL_MEASURE


def test_rotation_regulator():
    expected = BarChain(CTX, 1, R, [((U,), ONE), ((-ONE,), U)])
    assert regulator_flag([iet_rotation(L, U)]) == expected
    assert regulator_viaduct(flag_to_viaduct([iet_rotation(L, U)])) == expected


def test_identity_regulator():
    assert regulator_flag([iet_identity(L)]) == BarChain(CTX, 1, R, [((ZERO,), L)])
    two = regulator_flag([iet_identity(L), iet_identity(L)], UNIVERSAL_MEASURE)
    assert two == BarChain(CTX, 2, PT, [((ZERO, ZERO), pt_interval(ZERO, L))])


def test_midpoint_refinement_keeps_chain():
    v = flag_to_viaduct([iet_rotation(L, U)])
    mids = {j: [piece.lo + piece.length.scale(Fraction(1, 2))] for j, piece in v.top.items()}
    assert regulator_viaduct(viaduct_refine(v, subdivide(v.top, mids))) == regulator_viaduct(v)


def test_two_rotation_flag():
    c = regulator_flag([iet_rotation(L, ONE), iet_rotation(L, U)])
    assert c == BarChain(CTX, 2, R, [((-U, U), ONE), ((ONE, -ONE), U)])


@given(st.lists(iets(length=L, max_pieces=3), min_size=1, max_size=3), st.data())
def test_refinement_invariance(fs, data):
    v = flag_to_viaduct(fs)
    w = viaduct_refine(v, subdivide(v.top, data.draw(cuts_for(v.top))))
    for mu in (VOLUME, UNIVERSAL_MEASURE):
        assert regulator_viaduct(w, mu) == regulator_viaduct(v, mu)


@given(st.lists(iets(length=L, max_pieces=3), min_size=1, max_size=3))
def test_universal_refines_volume(fs):
    assert chain_vol(regulator_flag(fs, UNIVERSAL_MEASURE)) == regulator_flag(fs, VOLUME)


@given(st.lists(iets(length=L, max_pieces=3), min_size=2, max_size=2))
def test_simplicial_face(fs):
    f1, f2 = fs
    for mu in (VOLUME, UNIVERSAL_MEASURE):
        assert bar_face(regulator_flag([f1, f2], mu), 1) == regulator_flag([iet_compose(f1, f2)], mu)
