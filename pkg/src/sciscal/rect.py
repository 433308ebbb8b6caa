"""Rectangle exchange transformations of a product of half-open intervals.

A :class:`RET` is stored in box form: a list of axis-aligned half-open boxes
partitioning ``[0, L_1) x ... x [0, L_n)``, each carrying a translation vector,
such that the translated boxes partition the same region.  RETs built from a
tuple of IETs also remember those factors; composition of two such RETs is
done factorwise, which needs no box intersection at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import DimensionMismatch, InvalidMorphism, IrrationalProduct, OutOfDomain
from .generators import GradedElement
from .iet import IET, Interval, iet_compose, iet_inverse
from .scalar import LESS, Scalar, ScalarContext, scalar_cmp, scalar_from_json

Vector = tuple[Scalar, ...]


@dataclass(frozen=True)
class Box:
    lo: Vector
    hi: Vector
    v: Vector

    @property
    def sides(self) -> list[Interval]:
        return [Interval(a, b) for a, b in zip(self.lo, self.hi)]

    def contains(self, p: Sequence[Scalar]) -> bool:
        return all(iv.contains(x) for iv, x in zip(self.sides, p))

    def image(self) -> tuple[Vector, Vector]:
        return (
            tuple(a + t for a, t in zip(self.lo, self.v)),
            tuple(b + t for b, t in zip(self.hi, self.v)),
        )

    def to_json(self) -> dict:
        return {
            "lo": [x.to_json() for x in self.lo],
            "hi": [x.to_json() for x in self.hi],
            "v": [x.to_json() for x in self.v],
        }


def box_volume(lo: Sequence[Scalar], hi: Sequence[Scalar]) -> Scalar:
    """Product of side lengths; at most one side may be irrational."""
    sides = [b - a for a, b in zip(lo, hi)]
    irrational = [s for s in sides if not s.is_rational()]
    if len(irrational) > 1:
        raise IrrationalProduct("box has more than one irrational side length")
    out = irrational[0] if irrational else sides[0].ctx.one()
    for s in sides:
        if s.is_rational():
            out = out.scale(s.coeffs[0])
    return out


class RET:
    """A rectangle exchange of ``prod_d [0, L_d)`` in box form."""

    __slots__ = ("dims", "lengths", "boxes", "factors")

    def __init__(self, lengths: Sequence[Scalar], boxes: Sequence[Box], factors: Sequence[IET] | None = None):
        self.lengths = tuple(lengths)
        self.dims = len(self.lengths)
        self.boxes = tuple(boxes)
        self.factors = tuple(factors) if factors is not None else None
        for b in self.boxes:
            if not (len(b.lo) == len(b.hi) == len(b.v) == self.dims):
                raise DimensionMismatch("box dimension differs from the RET dimension")

    @property
    def ctx(self) -> ScalarContext:
        return self.lengths[0].ctx

    def box_index(self, p: Sequence[Scalar]) -> int:
        if len(p) != self.dims:
            raise DimensionMismatch(f"point of dimension {len(p)} for a {self.dims}-dimensional RET")
        for i, b in enumerate(self.boxes):
            if b.contains(p):
                return i
        raise OutOfDomain(f"point {tuple(str(x) for x in p)} is outside the box")

    def __call__(self, p: Sequence[Scalar]) -> Vector:
        b = self.boxes[self.box_index(p)]
        return tuple(x + t for x, t in zip(p, b.v))

    def apply_factors(self, p: Sequence[Scalar]) -> Vector:
        """Evaluate through the componentwise model (factor RETs only)."""
        if self.factors is None:
            raise InvalidMorphism("RET has no componentwise factors")
        if len(p) != self.dims:
            raise DimensionMismatch(f"point of dimension {len(p)} for a {self.dims}-dimensional RET")
        return tuple(f(x) for f, x in zip(self.factors, p))

    def __mul__(self, other: RET) -> RET:
        return rect_compose(self, other)

    def __invert__(self) -> RET:
        return rect_inverse(self)

    def canonical_boxes(self) -> list[tuple]:
        return sorted(
            ((tuple(x.coeffs for x in b.lo), tuple(x.coeffs for x in b.hi), tuple(x.coeffs for x in b.v)) for b in self.boxes)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RET):
            return NotImplemented
        if self.lengths != other.lengths:
            return False
        if self.factors is not None and other.factors is not None:
            return self.factors == other.factors
        return self.canonical_boxes() == other.canonical_boxes()

    __hash__ = None

    def volume_preserved(self) -> bool:
        """Domain and image boxes both carry the full volume ``prod L_d``."""
        total = box_volume([self.ctx.zero()] * self.dims, self.lengths)
        dom = self.ctx.zero()
        img = self.ctx.zero()
        for b in self.boxes:
            dom = dom + box_volume(b.lo, b.hi)
            img = img + box_volume(*b.image())
        return dom == total and img == total

    def to_json(self) -> dict:
        return {"dims": self.dims, "boxes": [b.to_json() for b in self.boxes]}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> RET:
        def vec(xs):
            return tuple(scalar_from_json(ctx, x) for x in xs)

        boxes = [Box(vec(b["lo"]), vec(b["hi"]), vec(b["v"])) for b in data["boxes"]]
        if not boxes:
            raise InvalidMorphism("a RET needs at least one box")
        n = data["dims"]
        lengths = []
        for d in range(n):
            hi = boxes[0].hi[d]
            for b in boxes[1:]:
                if scalar_cmp(hi, b.hi[d]) == LESS:
                    hi = b.hi[d]
            lengths.append(hi)
        return cls(lengths, boxes)


def rect_from_iets(fs: Sequence[IET]) -> RET:
    """The product RET acting by ``fs[d]`` on coordinate ``d``."""
    if not fs:
        raise DimensionMismatch("need at least one factor")
    per_axis = [list(zip(f.domain_intervals(), f.offsets)) for f in fs]
    boxes = [
        Box(
            tuple(iv.lo for iv, _ in combo),
            tuple(iv.hi for iv, _ in combo),
            tuple(o for _, o in combo),
        )
        for combo in product(*per_axis)
    ]
    return RET([f.length for f in fs], boxes, fs)


def rect_identity(lengths: Sequence[Scalar]) -> RET:
    zero = lengths[0].ctx.zero()
    return RET(lengths, [Box((zero,) * len(lengths), tuple(lengths), (zero,) * len(lengths))], [
        IET(L, [(zero, zero)]) for L in lengths
    ])


def _box_intersect(lo1, hi1, lo2, hi2):
    lo = tuple(b if scalar_cmp(a, b) == LESS else a for a, b in zip(lo1, lo2))
    hi = tuple(a if scalar_cmp(a, b) == LESS else b for a, b in zip(hi1, hi2))
    if any(scalar_cmp(a, b) != LESS for a, b in zip(lo, hi)):
        return None
    return lo, hi


def rect_compose(r1: RET, r2: RET) -> RET:
    """``r1 o r2``: apply ``r2`` first."""
    if r1.dims != r2.dims or r1.lengths != r2.lengths:
        raise DimensionMismatch("RETs act on different boxes")
    if r1.factors is not None and r2.factors is not None:
        return rect_from_iets([iet_compose(f, g) for f, g in zip(r1.factors, r2.factors)])
    boxes = []
    for b2 in r2.boxes:
        ilo, ihi = b2.image()
        for b1 in r1.boxes:
            cut = _box_intersect(ilo, ihi, b1.lo, b1.hi)
            if cut is None:
                continue
            lo, hi = cut
            boxes.append(
                Box(
                    tuple(x - t for x, t in zip(lo, b2.v)),
                    tuple(x - t for x, t in zip(hi, b2.v)),
                    tuple(s + t for s, t in zip(b1.v, b2.v)),
                )
            )
    return RET(r1.lengths, boxes)


def rect_inverse(r: RET) -> RET:
    if r.factors is not None:
        return rect_from_iets([iet_inverse(f) for f in r.factors])
    boxes = []
    for b in r.boxes:
        lo, hi = b.image()
        boxes.append(Box(lo, hi, tuple(-t for t in b.v)))
    return RET(r.lengths, boxes)


def rect_tensor_class(classes: Sequence) -> GradedElement:
    """Tensor product of per-factor generator classes in the graded algebra.

    Entry ``i`` is placed in tensor slot ``i``; ``None`` stands for the unit.
    """
    out = GradedElement.one()
    for i, g in enumerate(classes):
        out = out * GradedElement.of(g, factor=i)
    return out
