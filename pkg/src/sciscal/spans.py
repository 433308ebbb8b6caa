"""Span calculus of the translational scissors groupoid of the line.

Objects are finite indexed families of half-open intervals.  A morphism
``S -> T`` sends piece ``i`` of ``S`` into piece ``index_map[i]`` of ``T``
after translating it by ``shifts[i]``, and the translated pieces landing in
each target piece must tile it.  Moves keep pieces whole (bijective, image
equals target); covering sub-maps have zero translations.

"Up to unique isomorphism" is realized by index inheritance: a moved piece
keeps its index, a refined piece is indexed by the tuple of its parents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    IncompatibleShapes,
    InvalidMorphism,
    LengthMismatch,
    NotSameMorphism,
    TargetMismatch,
)
from .iet import IET, Interval, _Key, check_partition, compose_all, iet_identity
from .scalar import Scalar, ScalarContext, scalar_from_json

Index = Hashable


class IntervalTuple(Mapping):
    """A finite family ``{index: Interval}``; iteration follows insertion order."""

    __slots__ = ("_items",)

    def __init__(self, items: Mapping[Index, Interval] | Iterable[tuple[Index, Interval]] = ()):
        if isinstance(items, Mapping):
            items = items.items()
        d: dict[Index, Interval] = {}
        for k, iv in items:
            if k in d:
                raise InvalidMorphism(f"duplicate index {k!r}")
            d[k] = iv
        self._items = d

    def __getitem__(self, k: Index) -> Interval:
        return self._items[k]

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntervalTuple):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._items.items()))

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{k!r}: {iv}" for k, iv in self._items.items()) + "}"

    def shifted(self, shifts: Mapping[Index, Scalar]) -> IntervalTuple:
        return IntervalTuple((k, iv.shift(shifts[k])) for k, iv in self._items.items())

    def to_json(self) -> list:
        return [{"index": _index_json(k), "interval": iv.to_json()} for k, iv in self._items.items()]

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: list) -> IntervalTuple:
        return cls((_index_from_json(e["index"]), Interval.from_json(ctx, e["interval"])) for e in data)


def single(interval: Interval, index: Index = 0) -> IntervalTuple:
    return IntervalTuple([(index, interval)])


def _index_json(k):
    return [_index_json(x) for x in k] if isinstance(k, tuple) else k


def _index_from_json(k):
    return tuple(_index_from_json(x) for x in k) if isinstance(k, list) else k


class SpanMorphism:
    """A morphism of interval tuples: per-piece translation plus inclusion."""

    __slots__ = ("source", "target", "index_map", "shifts")

    def __init__(
        self,
        source: IntervalTuple,
        target: IntervalTuple,
        index_map: Mapping[Index, Index],
        shifts: Mapping[Index, Scalar] | None = None,
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.index_map = dict(index_map)
        if shifts is None:
            shifts = {i: source[i].lo.ctx.zero() for i in source}
        self.shifts = dict(shifts)
        if check:
            self._validate()

    def _validate(self) -> None:
        if set(self.index_map) != set(self.source) or set(self.shifts) != set(self.source):
            raise InvalidMorphism("index map and shifts must cover exactly the source indices")
        fibres: dict[Index, list[Interval]] = {j: [] for j in self.target}
        for i, iv in self.source.items():
            j = self.index_map[i]
            if j not in fibres:
                raise InvalidMorphism(f"piece {i!r} maps to unknown target index {j!r}")
            moved = iv.shift(self.shifts[i])
            if not self.target[j].contains_interval(moved):
                raise InvalidMorphism(f"piece {i!r} does not land inside target {j!r}")
            fibres[j].append(moved)
        for j, pieces in fibres.items():
            if not check_partition(pieces, self.target[j].lo, self.target[j].hi):
                raise InvalidMorphism(f"pieces over target {j!r} do not tile it")

    def image(self, i: Index) -> Interval:
        return self.source[i].shift(self.shifts[i])

    @property
    def is_move(self) -> bool:
        return len(set(self.index_map.values())) == len(self.index_map) and all(
            self.image(i) == self.target[self.index_map[i]] for i in self.source
        )

    @property
    def is_cover(self) -> bool:
        return all(s.is_zero() for s in self.shifts.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpanMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.index_map == other.index_map
            and self.shifts == other.shifts
        )

    __hash__ = None

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{i!r}->{self.index_map[i]!r} by {self.shifts[i]}" for i in self.source
        )
        return f"{type(self).__name__}({parts})"

    def to_json(self) -> dict:
        return {
            "kind": type(self).__name__,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "map": [
                {"i": _index_json(i), "j": _index_json(self.index_map[i]), "shift": self.shifts[i].to_json()}
                for i in self.source
            ],
        }

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> SpanMorphism:
        source = IntervalTuple.from_json(ctx, data["source"])
        target = IntervalTuple.from_json(ctx, data["target"])
        index_map = {_index_from_json(e["i"]): _index_from_json(e["j"]) for e in data["map"]}
        shifts = {_index_from_json(e["i"]): scalar_from_json(ctx, e["shift"]) for e in data["map"]}
        kind = {"Move": Move, "CoverMap": CoverMap}.get(data.get("kind"), SpanMorphism)
        return kind(source, target, index_map, shifts)


class Move(SpanMorphism):
    """Pieces are translated whole; indices are kept or bijectively renamed."""

    __slots__ = ()

    def _validate(self) -> None:
        super()._validate()
        if not self.is_move:
            raise InvalidMorphism("not a move: pieces must map bijectively onto targets")

    @classmethod
    def from_shifts(cls, source: IntervalTuple, shifts: Mapping[Index, Scalar]) -> Move:
        return cls(source, source.shifted(shifts), {i: i for i in source}, shifts)

    @classmethod
    def identity(cls, t: IntervalTuple) -> Move:
        return cls(t, t, {i: i for i in t})


class CoverMap(SpanMorphism):
    """A covering sub-map: zero translations, pieces assemble their targets."""

    __slots__ = ()

    def _validate(self) -> None:
        super()._validate()
        if not self.is_cover:
            raise InvalidMorphism("not a covering sub-map: translations must vanish")

    @classmethod
    def identity(cls, t: IntervalTuple) -> CoverMap:
        return cls(t, t, {i: i for i in t})


def compose(outer: SpanMorphism, inner: SpanMorphism) -> SpanMorphism:
    """``outer o inner``; the result is a Move/CoverMap when both factors are."""
    if inner.target != outer.source:
        raise IncompatibleShapes("composable morphisms must share the middle tuple")
    index_map = {i: outer.index_map[inner.index_map[i]] for i in inner.source}
    shifts = {i: inner.shifts[i] + outer.shifts[inner.index_map[i]] for i in inner.source}
    if isinstance(outer, Move) and isinstance(inner, Move):
        kind = Move
    elif isinstance(outer, CoverMap) and isinstance(inner, CoverMap):
        kind = CoverMap
    else:
        kind = SpanMorphism
    return kind(inner.source, outer.target, index_map, shifts)


def factor_move_cover(m: SpanMorphism) -> tuple[Move, CoverMap]:
    """Split ``m`` into a move onto ``{shift_i + source_i}`` then a cover."""
    move = Move.from_shifts(m.source, m.shifts)
    cover = CoverMap(move.target, m.target, m.index_map)
    return move, cover


@dataclass(frozen=True)
class Square:
    """A 2-cell: ``move_bottom o cover_left == cover_right o move_top``.

    ``cover_left: x -> b``, ``move_bottom: b -> b'``, ``move_top: x -> x'``,
    ``cover_right: x' -> b'``.
    """

    move_top: Move
    cover_left: CoverMap
    cover_right: CoverMap
    move_bottom: Move

    def commutes(self) -> bool:
        return compose(self.move_bottom, self.cover_left) == compose(self.cover_right, self.move_top)


def complete_square(first: SpanMorphism, second: SpanMorphism) -> Square:
    """Complete a composable cover-then-move, or a move/cover cospan, to a square.

    * ``first: x -> b`` a CoverMap, ``second: b -> b'`` a Move: each piece of
      ``x`` is moved by the translation of the piece it covers.
    * ``first: b -> b'`` a Move, ``second: x' -> b'`` a CoverMap: each piece of
      ``x'`` is pulled back along the move of the piece it covers.
    """
    if isinstance(first, CoverMap) and isinstance(second, Move) and first.target == second.source:
        cover, move = first, second
        shifts = {i: move.shifts[cover.index_map[i]] for i in cover.source}
        top = Move.from_shifts(cover.source, shifts)
        right = CoverMap(top.target, move.target, {i: move.index_map[cover.index_map[i]] for i in cover.source})
        return Square(top, cover, right, move)
    if isinstance(first, Move) and isinstance(second, CoverMap) and first.target == second.target:
        move, cover = first, second
        inverse = {j: i for i, j in move.index_map.items()}
        pre = {l: inverse[cover.index_map[l]] for l in cover.source}
        x = IntervalTuple((l, iv.shift(-move.shifts[pre[l]])) for l, iv in cover.source.items())
        left = CoverMap(x, move.source, pre)
        top = Move(x, cover.source, {l: l for l in x}, {l: move.shifts[pre[l]] for l in x})
        return Square(top, left, cover, move)
    raise IncompatibleShapes(
        "expected (CoverMap x->b, Move b->b') or (Move b->b', CoverMap x'->b')"
    )


def covers_common_refinement(c1: CoverMap, c2: CoverMap) -> tuple[IntervalTuple, CoverMap, CoverMap]:
    """All nonempty intersections of a c1-piece with a c2-piece over the same target."""
    if c1.target != c2.target:
        raise TargetMismatch("covers must share their target tuple")
    by_target: dict[Index, list[Index]] = {}
    for i2 in c2.source:
        by_target.setdefault(c2.index_map[i2], []).append(i2)
    items = []
    for i1, iv1 in c1.source.items():
        for i2 in by_target.get(c1.index_map[i1], []):
            meet = iv1.intersect(c2.source[i2])
            if meet is not None:
                items.append(((i1, i2), meet))
    items.sort(key=lambda kv: (_Key(kv[1].lo)))
    refinement = IntervalTuple(items)
    lam1 = CoverMap(refinement, c1.source, {k: k[0] for k in refinement})
    lam2 = CoverMap(refinement, c2.source, {k: k[1] for k in refinement})
    return refinement, lam1, lam2


def subdivide(t: IntervalTuple, cuts: Mapping[Index, Sequence[Scalar]]) -> CoverMap:
    """Cut pieces of ``t`` at interior points; sub-pieces are indexed ``(j, s)``."""
    items = []
    for j, iv in t.items():
        pts = sorted(set(cuts.get(j, ())), key=_Key)
        for p in pts:
            if not iv.contains(p) or p == iv.lo:
                raise InvalidMorphism(f"cut point {p} is not interior to {iv}")
        ends = [iv.lo] + pts + [iv.hi]
        for s, (a, b) in enumerate(zip(ends, ends[1:])):
            items.append(((j, s), Interval(a, b)))
    source = IntervalTuple(items)
    return CoverMap(source, t, {k: k[0] for k in source})


@dataclass(frozen=True)
class DMCSpan:
    """Dissection, move, covering sub-map.

    ``cover: B -> C``, ``move: B -> D`` and ``dissection: D -> A``; read as a
    groupoid morphism it sends a point of ``C`` lying in ``b_j`` to
    ``p + move.shifts[j]`` inside ``A``.
    """

    dissection: CoverMap
    move: Move
    cover: CoverMap

    def __post_init__(self):
        if self.move.target != self.dissection.source:
            raise IncompatibleShapes("move must land on the dissection's source")
        if self.move.source != self.cover.source:
            raise IncompatibleShapes("move and cover must share their source")

    @property
    def left(self) -> IntervalTuple:
        return self.dissection.target

    @property
    def right(self) -> IntervalTuple:
        return self.cover.target

    @property
    def middle_left(self) -> IntervalTuple:
        return self.move.target

    @property
    def middle_right(self) -> IntervalTuple:
        return self.move.source

    def apply(self, k: Index, p: Scalar) -> tuple[Index, Scalar]:
        """Image of the point ``p`` of right piece ``k``."""
        for j, iv in self.middle_right.items():
            if self.cover.index_map[j] == k and iv.contains(p):
                return self.dissection.index_map[self.move.index_map[j]], p + self.move.shifts[j]
        raise InvalidMorphism(f"{p} is not in right piece {k!r}")

    def to_iet(self) -> IET:
        """The IET represented when both ends are the single interval ``[0, L)``."""
        if len(self.left) != 1 or len(self.right) != 1:
            raise IncompatibleShapes("only single-interval ends define an IET")
        (a,) = self.left.values()
        (c,) = self.right.values()
        if a != c or not a.lo.is_zero():
            raise IncompatibleShapes("ends must both be [0, L)")
        pieces = sorted(
            ((iv.lo, self.move.shifts[j]) for j, iv in self.middle_right.items()),
            key=lambda xo: _Key(xo[0]),
        )
        return IET(a.hi, pieces)

    def to_json(self) -> dict:
        return {
            "dissection": self.dissection.to_json(),
            "move": self.move.to_json(),
            "cover": self.cover.to_json(),
        }


def span_to_dmc(left: SpanMorphism, right: SpanMorphism) -> DMCSpan:
    """Rewrite the span ``A <- S -> C`` as a DMC-span.

    Both legs are factored; the middle move translates ``Psi_j + s_j`` to
    ``Phi_j + s_j``, i.e. by the difference of the two leg translations.
    """
    if left.source != right.source:
        raise IncompatibleShapes("span legs must share their source")
    lmove, lcover = factor_move_cover(left)
    rmove, rcover = factor_move_cover(right)
    shifts = {j: left.shifts[j] - right.shifts[j] for j in left.source}
    move = Move(rmove.target, lmove.target, {j: j for j in left.source}, shifts)
    return DMCSpan(lcover, move, rcover)


def iet_to_dmc(f: IET) -> DMCSpan:
    """DMC-span of an IET: dissect ``[0, L)`` into domain pieces, move, reassemble."""
    whole = single(Interval(f.ctx.zero(), f.length))
    b = IntervalTuple(enumerate(f.domain_intervals()))
    move = Move.from_shifts(b, dict(enumerate(f.offsets)))
    return DMCSpan(
        CoverMap(move.target, whole, {j: 0 for j in b}),
        move,
        CoverMap(b, whole, {j: 0 for j in b}),
    )


def dmc_refine(d: DMCSpan, split: CoverMap) -> DMCSpan:
    """Replace the middle pieces of ``d`` by a subdivision of them."""
    if split.target != d.middle_right:
        raise TargetMismatch("split must target the middle tuple of the span")
    sq = complete_square(split, d.move)
    return DMCSpan(compose(d.dissection, sq.cover_right), sq.move_top, compose(d.cover, split))


@dataclass(frozen=True)
class CommonSubdivision:
    """The middle row witnessing that two DMC-spans agree.

    ``omega1/omega2: X -> B1/B2``, ``move: X -> Xi X``,
    ``gamma1/gamma2: Xi X -> D1/D2``.
    """

    first: DMCSpan
    second: DMCSpan
    move: Move
    omega1: CoverMap
    omega2: CoverMap
    gamma1: CoverMap
    gamma2: CoverMap

    def faces(self) -> dict[str, bool]:
        d1, d2 = self.first, self.second
        return {
            "upper": compose(d1.move, self.omega1) == compose(self.gamma1, self.move),
            "lower": compose(d2.move, self.omega2) == compose(self.gamma2, self.move),
            "left": compose(d1.dissection, self.gamma1) == compose(d2.dissection, self.gamma2),
            "right": compose(d1.cover, self.omega1) == compose(d2.cover, self.omega2),
            "outer": compose(d1.dissection, compose(d1.move, self.omega1))
            == compose(d2.dissection, compose(d2.move, self.omega2)),
        }

    def verify(self) -> bool:
        return all(self.faces().values())

    def to_json(self) -> dict:
        return {
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "move": self.move.to_json(),
            "omega1": self.omega1.to_json(),
            "omega2": self.omega2.to_json(),
            "gamma1": self.gamma1.to_json(),
            "gamma2": self.gamma2.to_json(),
            "faces": self.faces(),
        }


def dmc_common_subdivision(d1: DMCSpan, d2: DMCSpan) -> CommonSubdivision:
    """Build the common subdivision of two DMC-spans representing one morphism.

    Translations are constant on every piece of the common refinement of the
    two middle tuples, so comparing them piece by piece decides whether the
    spans agree pointwise.
    """
    if d1.left != d2.left or d1.right != d2.right:
        raise TargetMismatch("DMC-spans must have the same outer tuples")
    x, lam1, lam2 = covers_common_refinement(d1.cover, d2.cover)
    shifts = {}
    for l, iv in x.items():
        j1, j2 = lam1.index_map[l], lam2.index_map[l]
        s1, s2 = d1.move.shifts[j1], d2.move.shifts[j2]
        a1 = d1.dissection.index_map[d1.move.index_map[j1]]
        a2 = d2.dissection.index_map[d2.move.index_map[j2]]
        if s1 != s2 or a1 != a2:
            raise NotSameMorphism(f"spans differ at the point {iv.lo}")
        shifts[l] = s1
    move = Move.from_shifts(x, shifts)
    gamma1 = CoverMap(move.target, d1.middle_left, {l: d1.move.index_map[lam1.index_map[l]] for l in x})
    gamma2 = CoverMap(move.target, d2.middle_left, {l: d2.move.index_map[lam2.index_map[l]] for l in x})
    return CommonSubdivision(d1, d2, move, lam1, lam2, gamma1, gamma2)


def _level_tuple(top: IntervalTuple, shifts, k: int) -> IntervalTuple:
    items = []
    for j, iv in top.items():
        total = iv.lo.ctx.zero()
        for level in shifts[k:]:
            total = total + level[j]
        items.append((j, iv.shift(total)))
    return IntervalTuple(items)


@dataclass(frozen=True)
class Viaduct:
    """A flag of DMC-spans sharing one family of top pieces.

    ``shifts[k-1][j]`` is the translation of piece ``j`` at level ``k``
    (``1 <= k <= m``); the level-``k`` tuple is
    ``b_k = shifts[k] + ... + shifts[m-1] + top``.  ``covers[k]`` maps ``b_k``
    onto ``bottoms[k]``.
    """

    top: IntervalTuple
    shifts: tuple[Mapping[Index, Scalar], ...]
    bottoms: tuple[IntervalTuple, ...]
    covers: tuple[CoverMap, ...] = field(default=())

    def __post_init__(self):
        m = len(self.shifts)
        if len(self.bottoms) != m + 1 or len(self.covers) != m + 1:
            raise InvalidMorphism("a length-m viaduct has m+1 bottom tuples and covers")
        for k in range(m + 1):
            if self.covers[k].source != self.level(k) or self.covers[k].target != self.bottoms[k]:
                raise InvalidMorphism(f"cover at level {k} does not match the viaduct")

    @property
    def m(self) -> int:
        return len(self.shifts)

    @property
    def indices(self) -> tuple[Index, ...]:
        return tuple(self.top)

    def cumulative(self, k: int, j: Index) -> Scalar:
        """Total translation of piece ``j`` from the top down to level ``k``."""
        total = self.top[j].lo.ctx.zero()
        for level in self.shifts[k:]:
            total = total + level[j]
        return total

    def level(self, k: int) -> IntervalTuple:
        return _level_tuple(self.top, self.shifts, k)

    def word(self, j: Index) -> tuple[Scalar, ...]:
        return tuple(level[j] for level in self.shifts)

    def moves(self) -> list[Move]:
        """``moves[k-1]: b_k -> b_{k-1}`` for ``k = 1..m``."""
        return [
            Move(self.level(k), self.level(k - 1), {j: j for j in self.top}, self.shifts[k - 1])
            for k in range(1, self.m + 1)
        ]

    def dmc_spans(self) -> list[DMCSpan]:
        """The ``k``-th DMC-span runs from ``bottoms[k-1]`` to ``bottoms[k]``."""
        return [
            DMCSpan(self.covers[k - 1], mv, self.covers[k])
            for k, mv in enumerate(self.moves(), start=1)
        ]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "top": self.top.to_json(),
            "levels": [
                [{"j": _index_json(j), "shift": lvl[j].to_json()} for j in self.top]
                for lvl in self.shifts
            ],
            "bottoms": [b.to_json() for b in self.bottoms],
            "covers": [c.to_json() for c in self.covers],
        }


def flag_to_viaduct(fs: Sequence[IET]) -> Viaduct:
    """Normalize a flag ``(f_1, ..., f_m)`` of IETs of ``[0, L)`` to a viaduct.

    With ``t_k = f_k o ... o f_m`` the top pieces are the common refinement of
    the partitions of every ``t_k`` and piece ``j`` moves by
    ``t_k(p) - t_{k+1}(p)`` at level ``k``.
    """
    if not fs:
        raise InvalidMorphism("a flag needs at least one morphism")
    length = fs[0].length
    for f in fs:
        if f.length != length:
            raise LengthMismatch("all IETs of a flag must have the same length")
    m = len(fs)
    ts = [compose_all(fs[k:]) for k in range(m)] + [iet_identity(length)]
    cuts = sorted({x for t in ts for x in t.breakpoints}, key=_Key)
    ends = cuts + [length]
    top = IntervalTuple(enumerate(Interval(a, b) for a, b in zip(ends, ends[1:])))
    shifts = tuple(
        {j: ts[k].offset_at(iv.lo) - ts[k + 1].offset_at(iv.lo) for j, iv in top.items()}
        for k in range(m)
    )
    whole = single(Interval(length.ctx.zero(), length))
    bottoms = tuple(whole for _ in range(m + 1))
    covers = tuple(
        CoverMap(_level_tuple(top, shifts, k), whole, {j: 0 for j in top}) for k in range(m + 1)
    )
    return Viaduct(top, shifts, bottoms, covers)


def viaduct_refine(v: Viaduct, split: CoverMap) -> Viaduct:
    """Put a subdivision of the top pieces in place of the top pieces.

    Each new piece inherits every level translation of its parent; the
    covers are the old covers precomposed with the translated subdivision.
    """
    if split.target != v.top:
        raise TargetMismatch("split must target the top tuple of the viaduct")
    parent = split.index_map
    shifts = tuple({l: level[parent[l]] for l in split.source} for level in v.shifts)
    covers = []
    for k in range(v.m + 1):
        xi = CoverMap(_level_tuple(split.source, shifts, k), v.level(k), parent)
        covers.append(compose(v.covers[k], xi))
    return Viaduct(split.source, shifts, v.bottoms, tuple(covers))


def viaduct_flag(v: Viaduct) -> list[IET]:
    """Recover the flag of IETs of a viaduct whose bottoms are all ``[0, L)``."""
    return [d.to_iet() for d in v.dmc_spans()]


def sample_points(iv: Interval, count: int) -> list[Scalar]:
    """Evenly spaced interior points of ``iv``."""
    return [iv.lo + iv.length.scale(Fraction(s, count + 1)) for s in range(1, count + 1)]

