"""Acceptance suite: ten exact (zero-tolerance) property checks.

Each criterion is a function returning ``(ok, detail)``; pytest asserts it and
prints one ``PASS``/``FAIL`` line per criterion (visible with ``-s``).  Run
``python tests/test_acceptance.py`` to get just the ten lines.  Randomness is
seeded so every run draws the same cases.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import CTX  # noqa: E402
from sciscal.errors import NotSameMorphism  # noqa: E402
from sciscal.generators import (  # noqa: E402
    GeneratorClass,
    GeneratorSpec,
    GradedElement,
    class_product,
    generator_chain,
    generator_flags,
    verify_generator,
)
from sciscal.homology import (  # noqa: E402
    SNAKE_SIGN,
    BarChain,
    bar_diff,
    class_extract,
    chain_vol,
    is_cycle,
    snake_closed_form,
    snake_pipeline,
)
from sciscal.iet import (  # noqa: E402
    IET,
    Interval,
    check_partition,
    iet_compose,
    iet_identity,
    iet_inverse,
    iet_rotation,
    iet_rotation_mod,
)
from sciscal.polytope import PtElement, pt_beta, pt_interval, pt_vol, zr_debracket, zr_eps  # noqa: E402
from sciscal.rect import RET, rect_compose, rect_from_iets, rect_tensor_class  # noqa: E402
from sciscal.regulator import UNIVERSAL_MEASURE, VOLUME, regulator_flag, regulator_viaduct  # noqa: E402
from sciscal.spans import (  # noqa: E402
    IntervalTuple,
    SpanMorphism,
    compose,
    covers_common_refinement,
    dmc_common_subdivision,
    dmc_refine,
    factor_move_cover,
    flag_to_viaduct,
    iet_to_dmc,
    subdivide,
    viaduct_refine,
)

ONE, U, V, W = CTX.one(), CTX["u"], CTX["v"], CTX["w"]
ZERO = CTX.zero()


# -- random inputs -------------------------------------------------------------


def rand_q(rng, lo=-4, hi=4, den=4):
    d = rng.randint(1, den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def rand_scalar(rng):
    return CTX.vector([rand_q(rng) for _ in range(CTX.dim)])


def rand_positive(rng):
    return CTX.vector([Fraction(rng.randint(1, 12), 4)] + [Fraction(rng.randint(0, 6), 3) for _ in range(3)])


def rand_fraction_in_unit(rng, den=8):
    return Fraction(rng.randint(1, den - 1), den)


def rand_iet(rng, length=None, max_pieces=4):
    k = rng.randint(1, max_pieces)
    if length is None:
        lens = [rand_positive(rng) for _ in range(k)]
    else:
        weights = [rng.randint(1, 5) for _ in range(k)]
        lens = [length.scale(Fraction(w, sum(weights))) for w in weights]
    order = list(range(k))
    rng.shuffle(order)
    starts, x = [], ZERO
    for ell in lens:
        starts.append(x)
        x = x + ell
    img, y = {}, ZERO
    for i in order:
        img[i] = y
        y = y + lens[i]
    return IET(x, [(starts[i], img[i] - starts[i]) for i in range(k)])


def rand_cuts(rng, t, max_cuts=2):
    out = {}
    for j, piece in t.items():
        fracs = sorted({rand_fraction_in_unit(rng) for _ in range(rng.randint(0, max_cuts))})
        out[j] = [piece.lo + piece.length.scale(f) for f in fracs]
    return out


def rand_morphism(rng):
    items, x = [], rand_scalar(rng)
    for j in range(rng.randint(1, 3)):
        y = x + rand_positive(rng)
        items.append((j, Interval(x, y)))
        x = y + rand_positive(rng)
    target = IntervalTuple(items)
    split = subdivide(target, rand_cuts(rng, target))
    shifts = {i: rand_scalar(rng) for i in split.source}
    source = IntervalTuple((i, piece.shift(-shifts[i])) for i, piece in split.source.items())
    return SpanMorphism(source, target, split.index_map, shifts)


def rand_pt(rng, terms=4):
    out = PtElement.zero(CTX)
    while out.is_zero():
        for _ in range(rng.randint(1, terms)):
            a = rand_scalar(rng)
            out = out + pt_interval(a, a + rand_positive(rng)).scale(rng.choice([-2, -1, 1, 2, 3]))
    return out


def rand_r_chain(rng, degree):
    terms = [
        (tuple(rand_scalar(rng) for _ in range(degree)), rand_scalar(rng))
        for _ in range(rng.randint(1, 4))
    ]
    return BarChain(CTX, degree, "R", terms)


def sample(rng, length, count):
    return [length.scale(Fraction(rng.randint(0, 10**6 - 1), 10**6)) for _ in range(count)]


# -- criteria --------------------------------------------------------------------

GENERATOR_SPECS = [(ONE, U), (ONE, U, V), (ONE, U, V, W)]


def criterion_1():
    """Generator verification for n = 1, 2, 3 over the basis 1, u, v, w."""
    details = []
    ok = True
    rng = random.Random(1)
    specs = list(GENERATOR_SPECS)
    basis = [ONE, U, V, W]
    for n in (1, 2, 3):
        chosen = rng.sample(basis, n + 1)
        specs.append(tuple(x.scale(rng.randint(1, 3)) for x in chosen))
    for lengths in specs:
        report = verify_generator(GeneratorSpec(lengths))
        ok &= report.ok
        if report.n == 3:
            ok &= report.seconds < 1.0
        details.append(f"n={report.n}:{report.verdict}:{report.seconds:.3f}s")
    return ok, " ".join(details)


def criterion_2():
    """The signed regulator sum of the torus simplices is an exact bar cycle."""
    results = [is_cycle(generator_chain(GeneratorSpec(lengths))) for lengths in GENERATOR_SPECS]
    return all(results), f"{sum(results)}/{len(results)} cycles"


def criterion_3():
    """Snake pipeline equals the closed form (times the fixed sign) on 100 tuples."""
    rng = random.Random(3)
    dependent_zero = 0
    bad = 0
    for case in range(100):
        size = rng.randint(1, 4)
        vs = [rand_scalar(rng) for _ in range(size)]
        dependent = case % 4 == 0 and size >= 2
        if dependent:
            vs[-1] = ZERO
            for v in vs[:-1]:
                vs[-1] = vs[-1] + v.scale(rand_q(rng))
        pipe, closed = snake_pipeline(vs), snake_closed_form(vs)
        if pipe != closed.scale(SNAKE_SIGN):
            bad += 1
        if dependent:
            if pipe.is_zero() and closed.is_zero():
                dependent_zero += 1
            else:
                bad += 1
    return bad == 0, f"100 tuples, {bad} mismatches, {dependent_zero} dependent tuples vanish, sign {SNAKE_SIGN}"


def criterion_4():
    """Boundaries have zero class: class_extract(bar_diff(c)) = 0."""
    rng = random.Random(4)
    bad = sum(not class_extract(bar_diff(rand_r_chain(rng, rng.randint(0, 4)))).is_zero() for _ in range(100))
    return bad == 0, f"100 chains, {bad} nonzero"


def criterion_5():
    """Exactness: eps o beta = 0, debracket o beta = vol, beta injective."""
    rng = random.Random(5)
    bad = 0
    for _ in range(100):
        x = rand_pt(rng)
        b = pt_beta(x)
        bad += zr_eps(b) != 0
        bad += zr_debracket(b) != pt_vol(x)
        bad += b.is_zero()
    return bad == 0, f"100 elements, {bad} failures"


def criterion_6():
    """Span calculus: factorization, refinement squares, common subdivisions."""
    rng = random.Random(6)
    bad = 0
    for _ in range(100):
        m = rand_morphism(rng)
        move, cover = factor_move_cover(m)
        bad += compose(cover, move) != m
        c2 = subdivide(cover.target, rand_cuts(rng, cover.target))
        x, lam1, lam2 = covers_common_refinement(cover, c2)
        bad += compose(cover, lam1) != compose(c2, lam2)
        for piece in x.values():
            bad += sum(p.contains_interval(piece) for p in cover.source.values()) != 1
            bad += sum(p.contains_interval(piece) for p in c2.source.values()) != 1
    certified = 0
    for _ in range(50):
        d = iet_to_dmc(rand_iet(rng))
        d2 = dmc_refine(d, subdivide(d.middle_right, rand_cuts(rng, d.middle_right)))
        certified += dmc_common_subdivision(d, d2).verify()
    rejected = 0
    for _ in range(50):
        f = rand_iet(rng)
        g = iet_compose(f, iet_rotation(f.length, f.length.scale(rand_fraction_in_unit(rng))))
        d = iet_to_dmc(f)
        dg = iet_to_dmc(g)
        d2 = dmc_refine(dg, subdivide(dg.middle_right, rand_cuts(rng, dg.middle_right)))
        try:
            dmc_common_subdivision(d, d2)
        except NotSameMorphism:
            rejected += 1
    ok = bad == 0 and certified == 50 and rejected == 50
    return ok, f"100 morphisms ({bad} failures), {certified}/50 certified, {rejected}/50 rejected"


def criterion_7():
    """Regulator chains are unchanged by viaduct refinement; UNIVERSAL maps to VOL."""
    rng = random.Random(7)
    bad = 0
    for _ in range(50):
        f = rand_iet(rng)
        fs = [f] + [rand_iet(rng, f.length) for _ in range(rng.randint(0, 2))]
        v = flag_to_viaduct(fs)
        w = viaduct_refine(v, subdivide(v.top, rand_cuts(rng, v.top)))
        for mu in (VOLUME, UNIVERSAL_MEASURE):
            bad += regulator_viaduct(w, mu) != regulator_viaduct(v, mu)
        bad += chain_vol(regulator_flag(fs, UNIVERSAL_MEASURE)) != regulator_flag(fs, VOLUME)
    return bad == 0, f"50 refinements, {bad} failures"


def criterion_8():
    """IET group laws, rotation homomorphism, commutativity, measure preservation."""
    rng = random.Random(8)
    counts = {"group": 0, "hom": 0, "comm": 0, "measure": 0}
    for _ in range(100):
        f = rand_iet(rng)
        g, h = rand_iet(rng, f.length), rand_iet(rng, f.length)
        idt = iet_identity(f.length)
        counts["group"] += (
            (f * g) * h == f * (g * h)
            and f * idt == f == idt * f
            and iet_inverse(f) * f == idt == f * iet_inverse(f)
        )
        L = rand_positive(rng)
        a = L.scale(rand_fraction_in_unit(rng))
        b = rand_scalar(rng)
        ra, rb = iet_rotation(L, a), iet_rotation_mod(L, b)
        counts["hom"] += ra * rb == iet_rotation_mod(L, a + b)
        counts["comm"] += ra * rb == rb * ra
        counts["measure"] += all(
            check_partition(t.domain_intervals(), ZERO, t.length)
            and check_partition(t.image_intervals(), ZERO, t.length)
            for t in (f, g, f * g, iet_inverse(h))
        )
    return all(c == 100 for c in counts.values()), ", ".join(f"{k} {c}/100" for k, c in counts.items())


def criterion_9():
    """Rectangle exchanges: homomorphism with a pointwise oracle, graded tensor classes."""
    rng = random.Random(9)
    bad = 0
    for _ in range(50):
        f = rand_iet(rng, max_pieces=3)
        g = rand_iet(rng, max_pieces=3)
        f2, g2 = rand_iet(rng, f.length, 3), rand_iet(rng, g.length, 3)
        a, b = rect_from_iets([f, g]), rect_from_iets([f2, g2])
        ab = rect_from_iets([iet_compose(f, f2), iet_compose(g, g2)])
        bad += ab != rect_compose(a, b)
        boxed = rect_compose(RET(a.lengths, a.boxes), RET(b.lengths, b.boxes))
        for p in zip(sample(rng, f.length, 50), sample(rng, g.length, 50)):
            bad += not (ab(p) == a(b(p)) == boxed(p))
    g1 = GeneratorClass.of(GeneratorSpec((ONE, U)))
    g2 = GeneratorClass.of(GeneratorSpec((ONE, V, W)))
    g3 = GeneratorClass.of(GeneratorSpec((ONE, W)))
    x1, x3 = GradedElement.of(g1, 0), GradedElement.of(g3, 1)
    grading = rect_tensor_class([g1, g2]).degree == 3 and rect_tensor_class([None, None]) == GradedElement.one()
    koszul = x1 * x3 == -(x3 * x1) and class_product(g1, g1).is_zero() and class_product(g1, g2) == class_product(g2, g1)
    return bad == 0 and grading and koszul, f"50 pairs x 50 points, {bad} failures, grading {grading}, koszul {koszul}"


def criterion_10():
    """Torus square: rho_x followed by rho_y is the diagonal rho_{x+y}."""
    x, y, z = U, V, W
    spec = GeneratorSpec((z, x, y))
    rx, ry = spec.rotation(1), spec.rotation(2)
    diagonal = iet_rotation(spec.total, x + y)
    ok = iet_compose(ry, rx) == diagonal and iet_compose(rx, ry) == diagonal
    ok &= [flag for _, flag in generator_flags(spec)] == [[rx, ry], [ry, rx]]
    return ok, "rho_y o rho_x == rho_{x+y} on [0, x+y+z)"


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def report(k, fn):
    start = time.perf_counter()
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {fn.__doc__.strip()} [{detail}] ({time.perf_counter() - start:.2f}s)"
    print(line)
    return ok


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k):
    assert report(k, CRITERIA[k - 1])


if __name__ == "__main__":
    results = [report(k, fn) for k, fn in enumerate(CRITERIA, start=1)]
    sys.exit(0 if all(results) else 1)
