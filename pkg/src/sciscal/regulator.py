"""Measures on the line and the regulator from viaducts to bar chains."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .homology import PT, R, BarChain
from .iet import IET, Interval
from .polytope import pt_interval
from .spans import Viaduct, flag_to_viaduct

VOL = "VOL"
UNIVERSAL = "UNIVERSAL"


@dataclass(frozen=True)
class Measure:
    """An additive, translation-equivariant assignment on intervals.

    ``VOL`` takes values in the scalars (trivial action); ``UNIVERSAL`` is the
    class of the interval itself in the polytope group.
    """

    tag: str

    def __post_init__(self):
        if self.tag not in (VOL, UNIVERSAL):
            raise ValueError(f"unknown measure {self.tag!r}")

    @property
    def module(self) -> str:
        return R if self.tag == VOL else PT

    def __call__(self, iv: Interval):
        return measure_eval(self, iv)


VOLUME = Measure(VOL)
UNIVERSAL_MEASURE = Measure(UNIVERSAL)


def measure_for(name: str) -> Measure:
    return {"vol": VOLUME, "universal": UNIVERSAL_MEASURE}[name.lower()]


def measure_eval(mu: Measure, iv: Interval):
    if mu.tag == VOL:
        return iv.hi - iv.lo
    return pt_interval(iv.lo, iv.hi)


def regulator_viaduct(v: Viaduct, mu: Measure = VOLUME) -> BarChain:
    """``sum_j [Phi_{1|j} | ... | Phi_{m|j}] (x) mu(b_{m|j})``."""
    ctx = next(iter(v.top.values())).lo.ctx
    terms = [(v.word(j), measure_eval(mu, iv)) for j, iv in v.top.items()]
    return BarChain(ctx, v.m, mu.module, terms)


def regulator_flag(fs: Sequence[IET], mu: Measure = VOLUME) -> BarChain:
    return regulator_viaduct(flag_to_viaduct(fs), mu)
