"""Graph parameters evaluated exactly."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from ..graphs import LabeledGraph
from .counting import eul, expt, perf
from .hom import HomProfile, hom, hom_phi, hom_tensor, inj, label_weight, profile, t, t0, t_step
from .polys import (
    AbelianGroup,
    TuttePolynomial,
    chr,
    flo,
    random_orientation,
    tut,
    tutte_poly,
    tutte_subset_sum,
)
from .weighted import (
    StepFunction,
    WeightedGraph,
    automorphism_orbit_count,
    automorphisms,
    step_to_weighted,
    twin_reduce,
)

__all__ = [
    "AbelianGroup", "GraphParameter", "HomParameter", "HomProfile", "StepFunction",
    "TuttePolynomial", "WeightedGraph", "automorphism_orbit_count", "automorphisms",
    "chr", "chr_param", "eul", "eul_param", "expt", "expt_param", "flo", "flo_param",
    "hom", "hom_param", "hom_phi", "parse_target", "hom_tensor", "inj", "label_weight", "parse_parameter",
    "perf", "perf_param", "profile", "random_orientation", "step_to_weighted", "t", "t0",
    "t_step", "tut", "tut_param", "tutte_poly", "tutte_subset_sum", "twin_reduce",
]


@dataclass(frozen=True)
class GraphParameter:
    """Isomorphism-invariant function of the underlying unlabeled graph."""

    name: str
    func: Callable[[LabeledGraph], Fraction] = field(compare=False)
    point: tuple = ()

    def __call__(self, g: LabeledGraph) -> Fraction:
        return Fraction(self.func(g.unlabel()))

    def __str__(self):
        if not self.point:
            return self.name
        return f"{self.name}:" + ",".join(str(p) for p in self.point)


@dataclass(frozen=True)
class HomParameter(GraphParameter):
    target: WeightedGraph | None = None


def perf_param() -> GraphParameter:
    return GraphParameter("perf", perf)


def expt_param() -> GraphParameter:
    return GraphParameter("expt", expt)


def eul_param() -> GraphParameter:
    return GraphParameter("eul", eul)


def chr_param(x) -> GraphParameter:
    x = Fraction(x)
    return GraphParameter("chr", lambda g: chr(g, x), (x,))


def tut_param(q, v) -> GraphParameter:
    q, v = Fraction(q), Fraction(v)
    return GraphParameter("tut", lambda g: tut(g, q, v), (q, v))


def flo_param(group: AbelianGroup, subset=None) -> GraphParameter:
    s = None if subset is None else frozenset(group.normalize(x) for x in subset)
    if s is not None:
        flo(LabeledGraph(0), group, s)  # validates inversion closure up front
    point = (str(group),) if s is None else (str(group), tuple(sorted(s)))
    return GraphParameter("flo", lambda g: flo(g, group, s), point)


def hom_param(h: WeightedGraph, name: str = "hom") -> HomParameter:
    return HomParameter(name, lambda g: hom(g, h), (), h)


def parse_target(spec: str) -> WeightedGraph:
    s = spec.strip()
    if s[:1] in "KP" and s[1:].isdigit():
        n = int(s[1:])
        return WeightedGraph.complete(n) if s[0] == "K" else WeightedGraph.path(n)
    return WeightedGraph.from_json(Path(s).read_text())


def parse_parameter(spec: str) -> GraphParameter:
    """Parse ``perf``, ``eul``, ``expt``, ``chr:5/2``, ``tut:3,-1``,
    ``flo:Z2xZ3[:S.json]`` or ``hom:H.json`` (``hom:K3`` and ``hom:P4`` name
    unweighted complete graphs and paths)."""
    name, _, rest = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "perf":
            return perf_param()
        if name == "eul":
            return eul_param()
        if name == "expt":
            return expt_param()
        if name == "chr":
            return chr_param(Fraction(rest))
        if name == "tut":
            q, v = rest.replace("−", "-").split(",")
            return tut_param(Fraction(q), Fraction(v))
        if name == "flo":
            gspec, _, sfile = rest.partition(":")
            group = AbelianGroup.parse(gspec.replace(" ", ""))
            subset = None
            if sfile:
                subset = [tuple(x) if isinstance(x, list) else x
                          for x in json.loads(Path(sfile).read_text())]
            return flo_param(group, subset)
        if name == "hom":
            return hom_param(parse_target(rest))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"bad parameter spec {spec!r}: {e}") from None
    raise ValueError(f"unknown parameter {spec!r}")
