"""Shared fixtures and hypothesis strategies.

The test context uses the basis ``1, u, v, w`` for sqrt 2, sqrt 3, sqrt 5 with
guards of width 1e-40, so comparisons between the small random combinations
drawn below always decide.
"""

from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sciscal.iet import IET
from sciscal.polytope import PtElement, pt_interval
from sciscal.scalar import GREATER, ctx_new

settings.register_profile("sciscal", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("sciscal")

DIGITS = 10**40


def sqrt_guard(n: int) -> tuple[str, str]:
    r = isqrt(n * DIGITS * DIGITS)
    return f"{r}/{DIGITS}", f"{r + 1}/{DIGITS}"


CTX = ctx_new([("u", sqrt_guard(2)), ("v", sqrt_guard(3)), ("w", sqrt_guard(5))])


@pytest.fixture
def ctx():
    return CTX


small_q = st.fractions(min_value=-4, max_value=4, max_denominator=4)
pos_q = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)


@st.composite
def scalars(draw, dim=4):
    coeffs = [draw(small_q) for _ in range(dim)] + [Fraction(0)] * (CTX.dim - dim)
    return CTX.vector(coeffs)


@st.composite
def positive_scalars(draw):
    """A positive combination: a positive rational plus a small irrational part."""
    base = draw(pos_q)
    coeffs = [base] + [draw(st.fractions(min_value=0, max_value=2, max_denominator=3)) for _ in range(3)]
    return CTX.vector(coeffs)


@st.composite
def iets(draw, length=None, max_pieces=4):
    """A random IET: random positive piece lengths permuted by a random order."""
    k = draw(st.integers(1, max_pieces))
    if length is None:
        lens = [draw(positive_scalars()) for _ in range(k)]
    else:
        weights = [draw(st.integers(1, 5)) for _ in range(k)]
        total = sum(weights)
        lens = [length.scale(Fraction(w, total)) for w in weights]
    order = draw(st.permutations(range(k)))
    starts, x = [], CTX.zero()
    for ell in lens:
        starts.append(x)
        x = x + ell
    L = x
    img_start, y = {}, CTX.zero()
    for i in order:
        img_start[i] = y
        y = y + lens[i]
    return IET(L, [(starts[i], img_start[i] - starts[i]) for i in range(k)])


@st.composite
def iet_pairs(draw, max_pieces=4):
    f = draw(iets(max_pieces=max_pieces))
    g = draw(iets(length=f.length, max_pieces=max_pieces))
    return f, g


@st.composite
def pt_elements(draw, max_terms=4):
    out = PtElement.zero(CTX)
    for _ in range(draw(st.integers(0, max_terms))):
        a = draw(scalars())
        b = a + draw(positive_scalars())
        out = out + pt_interval(a, b).scale(draw(st.integers(-3, 3)))
    return out


def is_positive(s) -> bool:
    return s.sign() == GREATER


interior = st.fractions(min_value=Fraction(1, 8), max_value=Fraction(7, 8), max_denominator=8)


@st.composite
def cuts_for(draw, t, max_cuts=2):
    """Random interior cut points for every piece of an interval tuple."""
    out = {}
    for j, iv in t.items():
        fracs = draw(st.lists(interior, max_size=max_cuts, unique=True))
        out[j] = [iv.lo + iv.length.scale(x) for x in fracs]
    return out


@st.composite
def span_morphisms(draw):
    """A random morphism: subdivide a target tuple, then translate the pieces away."""
    from sciscal.iet import Interval
    from sciscal.spans import IntervalTuple, SpanMorphism, subdivide

    k = draw(st.integers(1, 3))
    items, x = [], draw(scalars())
    for j in range(k):
        y = x + draw(positive_scalars())
        items.append((j, Interval(x, y)))
        x = y + draw(positive_scalars())
    target = IntervalTuple(items)
    split = subdivide(target, draw(cuts_for(target)))
    shifts = {i: draw(scalars()) for i in split.source}
    source = IntervalTuple((i, iv.shift(-shifts[i])) for i, iv in split.source.items())
    return SpanMorphism(source, target, split.index_map, shifts)


@st.composite
def bar_chains(draw, module="R", degree=None, max_terms=3):
    """A random chain: scalar words with coefficients in the requested module."""
    from sciscal.homology import BarChain
    from sciscal.polytope import ZRElement

    p = draw(st.integers(0, 4)) if degree is None else degree
    terms = []
    for _ in range(draw(st.integers(1, max_terms))):
        word = tuple(draw(scalars()) for _ in range(p))
        if module == "R":
            a = draw(scalars())
        elif module == "ZR":
            a = ZRElement(CTX, [(draw(scalars()), draw(small_q)) for _ in range(2)])
        else:
            a = draw(pt_elements(max_terms=2))
        terms.append((word, a))
    return BarChain(CTX, p, module, terms)
