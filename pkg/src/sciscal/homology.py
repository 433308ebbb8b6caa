"""Bar-complex chains of the translation group and their wedge classes.

A :class:`BarChain` of degree ``p`` is a finite sum of simplices
``[g_1 | ... | g_p] (x) a`` with ``g_i`` scalars (translations) and ``a`` in
one of three coefficient modules:

``R``   the scalars with trivial action,
``ZR``  :class:`ZRElement` with translation acting on brackets,
``PT``  :class:`PtElement` with translation acting on breakpoints.

Terms are merged by word, so ``[w] (x) a + [w] (x) b = [w] (x) (a + b)``.

Differential, with ``g . a`` the module action::

    d[g_1|...|g_p] a = [g_2|...|g_p] a
                       + sum_{i=1}^{p-1} (-1)^i [g_1|...|g_i + g_{i+1}|...|g_p] a
                       + (-1)^p [g_1|...|g_{p-1}] (g_p . a)
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Sequence

from .errors import ContextMismatch, NotACycle, NotInKernel
from .polytope import PtElement, ZRElement, pt_vol, zr_debracket, zr_eps
from .scalar import Scalar, ScalarContext, format_rational, parse_rational, scalar_from_json

R, ZR, PT = "R", "ZR", "PT"
MODULES = (R, ZR, PT)

# snake_pipeline(vs) == SNAKE_SIGN * snake_closed_form(vs) for every input;
# fixed by the one-letter case d([a] (x) [0]) = [0] - [a] -> -a.
SNAKE_SIGN = -1


def module_zero(module: str, ctx: ScalarContext):
    if module == R:
        return ctx.zero()
    if module == ZR:
        return ZRElement.zero(ctx)
    if module == PT:
        return PtElement.zero(ctx)
    raise ValueError(f"unknown coefficient module {module!r}")


def module_act(module: str, g: Scalar, a):
    if module == R:
        return a
    return a.translate(g)


def _coeff_json(module: str, a):
    return a.to_json()


def _coeff_from_json(module: str, ctx: ScalarContext, data):
    if module == R:
        return scalar_from_json(ctx, data)
    if module == ZR:
        return ZRElement.from_json(ctx, data)
    if module == PT:
        return PtElement.from_json(ctx, data)
    raise ValueError(f"unknown coefficient module {module!r}")


def sign_of(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct sortable items."""
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


class BarChain:
    """A normalized formal sum of bar simplices with module coefficients."""

    __slots__ = ("ctx", "degree", "module", "terms")

    def __init__(self, ctx: ScalarContext, degree: int, module: str = R, terms=()):
        if module not in MODULES:
            raise ValueError(f"unknown coefficient module {module!r}")
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict[tuple[Scalar, ...], object] = {}
        for word, a in terms:
            word = tuple(word)
            if len(word) != degree:
                raise ValueError(f"word of length {len(word)} in a degree-{degree} chain")
            if word in acc:
                acc[word] = acc[word] + a
            else:
                acc[word] = a
        self.ctx = ctx
        self.degree = degree
        self.module = module
        self.terms = {w: a for w, a in acc.items() if not a.is_zero()}

    @classmethod
    def simplex(cls, word: Sequence[Scalar], coeff, module: str = R) -> BarChain:
        return cls(coeff.ctx, len(word), module, [(tuple(word), coeff)])

    def _check(self, other: BarChain) -> None:
        if (self.degree, self.module) != (other.degree, other.module):
            raise ValueError("chains differ in degree or coefficient module")
        if self.ctx != other.ctx:
            raise ContextMismatch("chains from different contexts")

    def __add__(self, other: BarChain) -> BarChain:
        self._check(other)
        return BarChain(self.ctx, self.degree, self.module, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> BarChain:
        return self.scale(-1)

    def __sub__(self, other: BarChain) -> BarChain:
        return self + (-other)

    def scale(self, q) -> BarChain:
        return BarChain(self.ctx, self.degree, self.module, [(w, a.scale(q)) for w, a in self.terms.items()])

    def map_coeffs(self, fn, module: str) -> BarChain:
        return BarChain(self.ctx, self.degree, module, [(w, fn(a)) for w, a in self.terms.items()])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarChain):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.degree, self.module) == (other.degree, other.module) and self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wa: [s.coeffs for s in wa[0]])

    def __repr__(self) -> str:
        if not self.terms:
            return f"BarChain(0, degree={self.degree})"
        body = " + ".join(
            "[" + " | ".join(str(g) for g in w) + f"]({a})" for w, a in self.sorted_terms()
        )
        return f"BarChain({body})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "module": self.module,
            "terms": [
                {"word": [g.to_json() for g in w], "coeff": _coeff_json(self.module, a), "w": "1"}
                for w, a in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> BarChain:
        module = data["module"]
        terms = []
        for t in data["terms"]:
            word = [scalar_from_json(ctx, g) for g in t["word"]]
            a = _coeff_from_json(module, ctx, t["coeff"]).scale(parse_rational(t.get("w", "1")))
            terms.append((word, a))
        return cls(ctx, int(data["degree"]), module, terms)


def bar_face(c: BarChain, i: int) -> BarChain:
    """The ``i``-th face ``d_i`` (``0 <= i <= p``) without sign."""
    p = c.degree
    if not 0 <= i <= p or p == 0:
        raise ValueError(f"no face {i} in degree {p}")
    out = []
    for w, a in c.terms.items():
        if i == 0:
            out.append((w[1:], a))
        elif i == p:
            out.append((w[:-1], module_act(c.module, w[-1], a)))
        else:
            out.append((w[: i - 1] + (w[i - 1] + w[i],) + w[i + 1 :], a))
    return BarChain(c.ctx, p - 1, c.module, out)


def bar_diff(c: BarChain) -> BarChain:
    """Alternating sum of faces; a degree-0 chain has zero boundary."""
    p = c.degree
    if p == 0:
        return BarChain(c.ctx, -1, c.module)
    out = BarChain(c.ctx, p - 1, c.module)
    for i in range(p + 1):
        face = bar_face(c, i)
        out = out + (face if i % 2 == 0 else -face)
    return out


def is_cycle(c: BarChain) -> bool:
    return bar_diff(c).is_zero()


def shuffle_cycle(vs: Sequence[Scalar], ctx: ScalarContext | None = None) -> BarChain:
    """``sum_sigma sign(sigma) [v_sigma(1) | ... | v_sigma(p)] (x) 1``."""
    if ctx is None:
        ctx = vs[0].ctx
    one = ctx.one()
    p = len(vs)
    terms = [
        (tuple(vs[k] for k in perm), one.scale(sign_of(perm)))
        for perm in permutations(range(p))
    ]
    return BarChain(ctx, p, R, terms)


# -- wedge classes -----------------------------------------------------------


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def wedge_expand(word: Sequence[Scalar], dim: int) -> dict[tuple[int, ...], Fraction]:
    """Coordinates of ``w_1 ^ ... ^ w_p`` in the basis ``e_S``, S increasing.

    The coefficient of ``e_S`` is the minor of the coefficient matrix on the
    columns ``S``.
    """
    p = len(word)
    if p == 0:
        return {(): Fraction(1)}
    if any(w.is_zero() for w in word):
        return {}
    rows = [list(w.coeffs) for w in word]
    support = [i for i in range(dim) if any(r[i] for r in rows)]
    out = {}
    for cols in combinations(support, p):
        d = _det([[r[c] for c in cols] for r in rows])
        if d:
            out[cols] = d
    return out


class WedgeClass:
    """An element of ``Lambda^p(V) (x) V`` in the context basis.

    Keys are ``(S, c)``: ``S`` an increasing tuple of basis indices for the
    wedge factor, ``c`` the basis index of the tensor coefficient.
    """

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx: ScalarContext, degree: int, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict[tuple[tuple[int, ...], int], Fraction] = {}
        for key, w in terms:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(w)
        self.ctx = ctx
        self.degree = degree
        self.terms = {k: w for k, w in acc.items() if w}

    @classmethod
    def from_tensor(cls, word: Sequence[Scalar], coeff: Scalar, weight=1) -> WedgeClass:
        """Canonical form of ``(w_1 ^ ... ^ w_p) (x) coeff``."""
        ctx = coeff.ctx
        terms = []
        for S, x in wedge_expand(word, ctx.dim).items():
            for c, y in enumerate(coeff.coeffs):
                if y:
                    terms.append(((S, c), Fraction(weight) * x * y))
        return cls(ctx, len(word), terms)

    def __add__(self, other: WedgeClass) -> WedgeClass:
        if self.ctx != other.ctx:
            raise ContextMismatch("wedge classes from different contexts")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("wedge classes differ in degree")
        degree = self.degree if not self.is_zero() else other.degree
        return WedgeClass(self.ctx, degree, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> WedgeClass:
        return self.scale(-1)

    def __sub__(self, other: WedgeClass) -> WedgeClass:
        return self + (-other)

    def scale(self, q) -> WedgeClass:
        q = Fraction(q)
        return WedgeClass(self.ctx, self.degree, [(k, q * w) for k, w in self.terms.items()])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WedgeClass):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        names = self.ctx.names
        if not self.terms:
            return "WedgeClass(0)"
        parts = []
        for (S, c), w in self.sorted_terms():
            wedge = "^".join(names[i] for i in S) or "()"
            parts.append(f"{w}*({wedge})(x){names[c]}")
        return "WedgeClass(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        names = self.ctx.names
        return {
            "degree": self.degree,
            "terms": [
                {"wedge": [names[i] for i in S], "coeff": names[c], "w": format_rational(w)}
                for (S, c), w in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> WedgeClass:
        terms = []
        for t in data["terms"]:
            S = tuple(ctx.index(n) for n in t["wedge"])
            terms.append(((S, ctx.index(t["coeff"])), parse_rational(t["w"])))
        return cls(ctx, int(data["degree"]), terms)


def antisymmetrize(c: BarChain) -> WedgeClass:
    """``[g_1|...|g_p] (x) a -> (g_1 ^ ... ^ g_p) (x) a`` termwise, no cycle check."""
    if c.module != R:
        raise ValueError("wedge classes are taken with scalar coefficients")
    out = WedgeClass(c.ctx, c.degree)
    for w, a in c.terms.items():
        out = out + WedgeClass.from_tensor(w, a)
    return out


def class_extract(c: BarChain) -> WedgeClass:
    """Wedge class of a scalar-coefficient cycle.

    The antisymmetrization sends the shuffle cycle of ``v_1..v_p`` to
    ``p! (v_1 ^ ... ^ v_p)``; see :func:`homology_class` for the class in the
    shuffle normalization.
    """
    if c.module != R:
        raise ValueError("class extraction needs scalar coefficients")
    if c.degree > 0 and not is_cycle(c):
        raise NotACycle("chain is not a cycle")
    return antisymmetrize(c)


def homology_class(c: BarChain) -> WedgeClass:
    """``class_extract`` divided by ``p!``: the shuffle cycle of ``v`` maps to ``v_1^...^v_p``."""
    return class_extract(c).scale(Fraction(1, factorial(c.degree)))


def coeff_debracket(c: BarChain) -> BarChain:
    """Replace every Z[R] coefficient by its de-bracketing; needs ``eps = 0``."""
    if c.module != ZR:
        raise ValueError("de-bracketing needs Z[R] coefficients")
    for a in c.terms.values():
        if zr_eps(a) != 0:
            raise NotInKernel(f"coefficient {a} has nonzero augmentation")
    return c.map_coeffs(zr_debracket, R)


def snake_lift(vs: Sequence[Scalar]) -> BarChain:
    """The shuffle cycle of ``vs`` with every coefficient replaced by ``[0]``."""
    ctx = vs[0].ctx
    zero = ctx.zero()
    terms = [
        (tuple(vs[k] for k in perm), ZRElement.bracket(zero, sign_of(perm)))
        for perm in permutations(range(len(vs)))
    ]
    return BarChain(ctx, len(vs), ZR, terms)


def snake_pipeline(vs: Sequence[Scalar]) -> WedgeClass:
    """Connecting map of ``0 -> Pt -> Z[R] -> Z -> 0`` followed by volume.

    Lift the shuffle cycle to Z[R] coefficients, differentiate, check the
    coefficients lie in the kernel of the augmentation, de-bracket and read
    off the class of the resulting scalar cycle.
    """
    if not vs:
        raise ValueError("snake map needs at least one value")
    boundary = bar_diff(snake_lift(vs))
    chain = coeff_debracket(boundary)
    if not is_cycle(chain):
        raise NotACycle("de-bracketed boundary is not a cycle")
    return homology_class(chain)


def snake_closed_form(vs: Sequence[Scalar]) -> WedgeClass:
    """``sum_{j=0}^{n} (-1)^j (v_0 ^ .. ^ v_j-hat ^ .. ^ v_n) (x) v_j``, j from 0."""
    if not vs:
        raise ValueError("snake map needs at least one value")
    ctx = vs[0].ctx
    out = WedgeClass(ctx, len(vs) - 1)
    for j, v in enumerate(vs):
        rest = list(vs[:j]) + list(vs[j + 1 :])
        out = out + WedgeClass.from_tensor(rest, v, (-1) ** j)
    return out


def chain_vol(c: BarChain) -> BarChain:
    """Apply the volume to every polytope coefficient."""
    if c.module != PT:
        raise ValueError("volume applies to polytope coefficients")
    return c.map_coeffs(pt_vol, R)


def sum_chains(chains: Iterable[BarChain]) -> BarChain:
    chains = list(chains)
    out = chains[0]
    for c in chains[1:]:
        out = out + c
    return out
