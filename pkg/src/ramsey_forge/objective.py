"""The weighted red/blue copy objective and its Turán baselines.

For a pair ``(h1, h2)`` and a red graph ``g`` on ``n`` vertices the objective is

    rho1 * t_inj(h1, g) + rho2 * t_inj(h2, complement(g))

with ``rho1 = (chi2 - 1)^(v1 - k1)`` and ``rho2 = (chi1 - 1)^(v2 - k2)``.  The
weights make both Turán colourings score ``1`` in the limit.  ``t_inj`` uses
the falling-factorial denominator throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chromatic import critical_edges
from .graph import (
    Graph,
    GraphError,
    complement,
    component_count,
    is_turan,
    strip_isolated,
    turan_graph,
)
from .homomorphism import hom_density, inj_density


class SizeError(ValueError):
    """Host graph too small for the pattern graphs."""


def ratio_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PairContext:
    h1: Graph
    h2: Graph
    v1: int
    v2: int
    e1: int
    e2: int
    k1: int
    k2: int
    chi1: int
    chi2: int
    crit1: int
    crit2: int
    rho1: int
    rho2: int

    @property
    def min_n(self) -> int:
        return max(self.v1, self.v2)

    def swapped(self) -> "PairContext":
        return make_context(self.h2, self.h1)

    def summary(self) -> dict:
        return {
            "v1": self.v1, "v2": self.v2, "e1": self.e1, "e2": self.e2,
            "k1": self.k1, "k2": self.k2, "chi1": self.chi1, "chi2": self.chi2,
            "crit1": self.crit1, "crit2": self.crit2,
            "rho1": str(self.rho1), "rho2": str(self.rho2),
        }


def make_context(h1: Graph, h2: Graph) -> PairContext:
    """Strip isolated vertices from both graphs and cache their invariants."""
    try:
        h1 = strip_isolated(h1)
        h2 = strip_isolated(h2)
    except GraphError as exc:
        raise GraphError("both pattern graphs must have at least one edge") from exc
    p1, p2 = critical_edges(h1), critical_edges(h2)
    v1, v2 = h1.n, h2.n
    k1, k2 = component_count(h1), component_count(h2)
    return PairContext(
        h1=h1, h2=h2, v1=v1, v2=v2, e1=h1.num_edges, e2=h2.num_edges,
        k1=k1, k2=k2, chi1=p1.chi, chi2=p2.chi, crit1=p1.crit, crit2=p2.crit,
        rho1=(p2.chi - 1) ** (v1 - k1), rho2=(p1.chi - 1) ** (v2 - k2),
    )


@dataclass(frozen=True)
class ObjectiveValue:
    value: Fraction
    red_term: Fraction
    blue_term: Fraction

    def to_json(self) -> dict:
        return {
            "value": ratio_str(self.value),
            "red_term": ratio_str(self.red_term),
            "blue_term": ratio_str(self.blue_term),
        }


def m_objective(ctx: PairContext, g: Graph) -> ObjectiveValue:
    if g.n < ctx.min_n:
        raise SizeError(f"host graph has {g.n} vertices; the pair needs at least {ctx.min_n}")
    red = ctx.rho1 * inj_density(ctx.h1, g)
    blue = ctx.rho2 * inj_density(ctx.h2, complement(g))
    return ObjectiveValue(red + blue, red, blue)


def lambda_objective(h1: Graph, h2: Graph, g: Graph, lam: Fraction) -> Fraction:
    """``lam * t(h1, g) + (2 - lam) * t(h2, complement(g))`` with plain densities."""
    lam = Fraction(lam)
    if not 0 <= lam <= 2:
        raise ValueError(f"lambda must lie in [0, 2], got {lam}")
    return lam * hom_density(h1, g) + (2 - lam) * hom_density(h2, complement(g))


def red_turan(ctx: PairContext, n: int) -> Graph:
    """Red graph of the colouring whose red class is Turán with ``chi1 - 1`` parts."""
    return turan_graph(n, ctx.chi1 - 1)


def blue_turan(ctx: PairContext, n: int) -> Graph:
    """Red graph of the colouring whose blue class is Turán with ``chi2 - 1`` parts."""
    return complement(turan_graph(n, ctx.chi2 - 1))


@dataclass(frozen=True)
class TuranBaseline:
    value: Fraction
    sides: tuple[str, ...]
    red_value: Fraction
    blue_value: Fraction

    def to_json(self) -> dict:
        return {
            "value": ratio_str(self.value),
            "sides": list(self.sides),
            "red_turan_value": ratio_str(self.red_value),
            "blue_turan_value": ratio_str(self.blue_value),
        }


def turan_baseline(ctx: PairContext, n: int) -> TuranBaseline:
    """Better of the two Turán colourings at ``n`` vertices; ties list both sides."""
    if n < ctx.min_n:
        raise SizeError(f"n={n} is below max(v1, v2)={ctx.min_n}")
    red = m_objective(ctx, red_turan(ctx, n)).value
    blue = m_objective(ctx, blue_turan(ctx, n)).value
    best = min(red, blue)
    sides = tuple(s for s, val in (("red", red), ("blue", blue)) if val == best)
    return TuranBaseline(best, sides, red, blue)


def is_turan_colouring(ctx: PairContext, g: Graph) -> bool:
    return is_turan(g, ctx.chi1 - 1) or is_turan(complement(g), ctx.chi2 - 1)


def weights_normalised(ctx: PairContext) -> bool:
    """Check ``rho1 * (1/(chi2-1))^(v1-k1) == 1`` and its mirror exactly."""
    a = ctx.rho1 * Fraction(1, ctx.chi2 - 1) ** (ctx.v1 - ctx.k1)
    b = ctx.rho2 * Fraction(1, ctx.chi1 - 1) ** (ctx.v2 - ctx.k2)
    return a == 1 and b == 1

