"""Torus generator complexes and their regulator classes.

For positive lengths ``Phi_0, ..., Phi_n`` with sum ``Phi``, the rotations of
``[0, Phi)`` by ``Phi_1, ..., Phi_n`` commute and span an ``n``-torus in the
classifying space of the scissors groupoid.  Its ``n!`` top simplices are the
flags ``(rho_{Phi_s(1)}, ..., rho_{Phi_s(n)})``, ``s`` in ``S_n``.  The signed
sum of their volume regulators is a cycle whose class equals
``sum_j (-1)^j (Phi_0 ^ .. Phi_j-hat .. ^ Phi_n) (x) Phi_j``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import NonpositiveLength, NotACycle, SciscalError
from .homology import BarChain, WedgeClass, homology_class, is_cycle, sign_of, snake_closed_form, wedge_expand
from .iet import IET, Interval, iet_rotation
from .regulator import VOLUME, Measure, measure_eval, regulator_flag
from .scalar import GREATER, Scalar, q_rank

# generator_class(spec) == GENERATOR_SIGN * expected_class(spec); fixed at
# n = 0 where both sides are the volume Phi_0.
GENERATOR_SIGN = 1


@dataclass(frozen=True)
class GeneratorSpec:
    lengths: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.lengths:
            raise NonpositiveLength("need at least one length")
        object.__setattr__(self, "lengths", tuple(self.lengths))
        for x in self.lengths:
            if x.sign() != GREATER:
                raise NonpositiveLength(f"length {x} is not positive")

    @property
    def n(self) -> int:
        return len(self.lengths) - 1

    @property
    def total(self) -> Scalar:
        out = self.lengths[0]
        for x in self.lengths[1:]:
            out = out + x
        return out

    @property
    def ctx(self):
        return self.lengths[0].ctx

    def rotation(self, j: int) -> IET:
        """Clockwise rotation of ``[0, Phi)`` by ``Phi_j``."""
        return iet_rotation(self.total, self.lengths[j])


def generator_flags(spec: GeneratorSpec) -> list[tuple[int, list[IET]]]:
    rotations = {j: spec.rotation(j) for j in range(1, spec.n + 1)}
    return [
        (sign_of(perm), [rotations[j] for j in perm])
        for perm in permutations(range(1, spec.n + 1))
    ]


def generator_chain(spec: GeneratorSpec, mu: Measure = VOLUME) -> BarChain:
    """Signed sum of the regulators of the torus simplices."""
    if spec.n == 0:
        whole = Interval(spec.ctx.zero(), spec.total)
        return BarChain(spec.ctx, 0, mu.module, [((), measure_eval(mu, whole))])
    out = BarChain(spec.ctx, spec.n, mu.module)
    for sign, flag in generator_flags(spec):
        out = out + regulator_flag(flag, mu).scale(sign)
    return out


def generator_class(spec: GeneratorSpec) -> WedgeClass:
    chain = generator_chain(spec)
    if not is_cycle(chain):
        raise NotACycle("signed regulator sum of the torus is not a cycle")
    return homology_class(chain)


def expected_class(spec: GeneratorSpec) -> WedgeClass:
    return snake_closed_form(spec.lengths)


@dataclass
class VerificationReport:
    lengths: tuple[str, ...]
    n: int
    cycle: bool | None = None
    computed: WedgeClass | None = None
    expected: WedgeClass | None = None
    verdict: str = "ERROR"
    sign: int = GENERATOR_SIGN
    chain: BarChain | None = field(default=None, repr=False)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == "EQUAL"

    def to_json(self, *, include_chain: bool = False, timing: bool = False) -> dict:
        out = {
            "lengths": list(self.lengths),
            "n": self.n,
            "cycle": self.cycle,
            "computed": self.computed.to_json() if self.computed is not None else None,
            "expected": self.expected.to_json() if self.expected is not None else None,
            "sign": self.sign,
            "verdict": self.verdict,
        }
        if include_chain and self.chain is not None:
            out["chain"] = self.chain.to_json()
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def verify_generator(spec: GeneratorSpec) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(tuple(str(x) for x in spec.lengths), spec.n)
    try:
        chain = generator_chain(spec)
        report.chain = chain
        report.cycle = is_cycle(chain)
        report.expected = expected_class(spec)
        if report.cycle:
            report.computed = homology_class(chain)
            equal = report.computed == report.expected.scale(GENERATOR_SIGN)
            report.verdict = "EQUAL" if equal else "UNEQUAL"
        else:
            report.verdict = "ERROR:NotACycle"
    except SciscalError as exc:
        report.verdict = f"ERROR:{type(exc).__name__}"
    report.seconds = time.perf_counter() - start
    return report


# -- graded-commutative bookkeeping -----------------------------------------


@dataclass(frozen=True)
class GeneratorClass:
    """The symbol ``Phi_0 ^ ... ^ Phi_n`` in degree ``n``."""

    word: tuple[Scalar, ...]
    computed: WedgeClass | None = None

    @property
    def degree(self) -> int:
        return len(self.word) - 1

    def expand(self) -> dict[tuple[int, ...], Fraction]:
        return wedge_expand(self.word, self.word[0].ctx.dim)

    def is_zero(self) -> bool:
        return q_rank(self.word) < len(self.word)

    @classmethod
    def of(cls, spec: GeneratorSpec, *, compute: bool = False) -> GeneratorClass:
        return cls(spec.lengths, generator_class(spec) if compute else None)


def _koszul_sort(symbols: Sequence[tuple]) -> tuple[int, tuple]:
    """Sort a monomial of graded symbols; returns (sign, sorted) or (0, ())."""
    syms = list(symbols)
    sign = 1
    for i in range(len(syms)):
        for j in range(len(syms) - 1 - i):
            a, b = syms[j], syms[j + 1]
            if a > b:
                syms[j], syms[j + 1] = b, a
                if _deg(a) % 2 and _deg(b) % 2:
                    sign = -sign
    for a, b in zip(syms, syms[1:]):
        if a == b and _deg(a) % 2:
            return 0, ()
    return sign, tuple(syms)


def _deg(symbol: tuple) -> int:
    _, S = symbol
    return len(S) - 1


class GradedElement:
    """Element of the free graded-commutative Q-algebra on wedge symbols.

    A symbol is ``(factor, S)``: ``S`` an increasing tuple of basis indices
    (the basis wedge ``e_S``, of degree ``|S| - 1``) and ``factor`` the tensor
    slot it lives in (0 unless built by :func:`rect_tensor_class`).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict[tuple, Fraction] = {}
        for mono, w in terms:
            sign, key = _koszul_sort(mono)
            if sign:
                acc[key] = acc.get(key, Fraction(0)) + sign * Fraction(w)
        self.terms = {k: w for k, w in acc.items() if w}

    @classmethod
    def one(cls) -> GradedElement:
        return cls({(): 1})

    @classmethod
    def of(cls, g, factor: int = 0) -> GradedElement:
        if isinstance(g, GradedElement):
            return g
        if g is None:
            return cls.one()
        return cls({((factor, S),): w for S, w in g.expand().items()})

    def degrees(self) -> set[int]:
        return {sum(_deg(s) for s in mono) for mono in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else 0

    def __mul__(self, other: GradedElement) -> GradedElement:
        other = GradedElement.of(other)
        return GradedElement(
            [(a + b, x * y) for a, x in self.terms.items() for b, y in other.terms.items()]
        )

    def __add__(self, other: GradedElement) -> GradedElement:
        return GradedElement(list(self.terms.items()) + list(other.terms.items()))

    def scale(self, q) -> GradedElement:
        return GradedElement([(k, Fraction(q) * w) for k, w in self.terms.items()])

    def __neg__(self) -> GradedElement:
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "GradedElement(0)"
        parts = []
        for mono, w in sorted(self.terms.items()):
            body = "*".join(f"e{f}{list(S)}" for f, S in mono) or "1"
            parts.append(f"{w}*{body}")
        return "GradedElement(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"symbols": [{"factor": f, "wedge": list(S)} for f, S in mono], "w": str(w)}
                for mono, w in sorted(self.terms.items())
            ]
        }


def class_product(g1, g2) -> GradedElement:
    """Product of generator classes (or algebra elements) in the free algebra."""
    return GradedElement.of(g1) * GradedElement.of(g2)
