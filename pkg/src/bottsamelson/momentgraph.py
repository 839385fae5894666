"""Moment graphs of Bott-Samelson varieties, built one letter at a time.

A graph for ``Z(a_1, ..., a_n)`` is obtained from the graph of the prefix word
``Z(a_1, ..., a_{n-1})``: every fixed point splits into a vertical fiber edge
``p0 -- p1`` and every prefix edge lifts to two or three edges according to a
four-way case split on the tangent roots at its endpoints.

Curve classes are integer vectors in the basis ``[Z_(1)], ..., [Z_(n)]`` of
one-letter subword curves; the fiber class ``h`` is the last unit vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .rootsys import (
    CartanMatrix,
    RootSystemError,
    Subword,
    WeylElement,
    Word,
    coroot_pairing,
    reflection_root,
    root_at,
    weyl_of,
)

CurveClass = tuple[int, ...]


class MomentGraphError(RuntimeError):
    """Raised when a lift violates the hypotheses of the case analysis."""


class Case(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True, order=True)
class Edge:
    u: Subword
    v: Subword
    cls: CurveClass
    family: bool = False

    def __post_init__(self):
        if self.u == self.v:
            raise MomentGraphError(f"edge endpoints coincide: {self.u}")
        if self.v < self.u:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def endpoints(self) -> tuple[Subword, Subword]:
        return self.u, self.v

    def is_vertical(self) -> bool:
        return self.u.bits[:-1] == self.v.bits[:-1]


@dataclass(frozen=True)
class Lift:
    """Outcome of classifying a prefix edge with respect to the last letter."""

    case: Case
    k: int
    x0: Subword
    y0: Subword
    w_x0: WeylElement
    w_y0: WeylElement


@dataclass(frozen=True)
class MomentGraph:
    word: Word
    vertices: tuple[Subword, ...]
    edges: tuple[Edge, ...]

    def family_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.family]

    def edges_between(self, a: Subword, b: Subword) -> list[Edge]:
        pair = tuple(sorted((a, b)))
        return [e for e in self.edges if (e.u, e.v) == pair]

    def classes(self) -> list[CurveClass]:
        return sorted({e.cls for e in self.edges})

    def adjacency(self) -> dict[Subword, list[Edge]]:
        adj: dict[Subword, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e)
            adj[e.v].append(e)
        return adj


def first_difference(x: Subword, y: Subword) -> int:
    """1-based index of the first position where x and y differ."""
    for i, (a, b) in enumerate(zip(x.bits, y.bits)):
        if a != b:
            return i + 1
    raise MomentGraphError(f"{x} and {y} do not differ")


def classify_lift(word: Word, parent: Edge) -> Lift:
    """Decide which of the four diagrams governs the lift of ``parent``.

    ``parent`` is an edge of the graph of ``word.prefix(n - 1)``.
    """
    n = len(word)
    x, y = parent.u, parent.v
    if len(x) != n - 1:
        raise MomentGraphError(f"parent edge {x}--{y} is not in the prefix graph of a length-{n} word")
    k = first_difference(x, y)
    x0, y0 = x.extend(0), y.extend(0)
    x_holds = root_at(word, x0, k) == root_at(word, x0, n)
    y_holds = root_at(word, y0, k) == root_at(word, y0, n)
    case = {
        (False, False): Case.I,
        (True, True): Case.II,
        (True, False): Case.III,
        (False, True): Case.IV,
    }[(x_holds, y_holds)]
    return Lift(case, k, x0, y0, weyl_of(word, x0), weyl_of(word, y0))


def case_one_shift(word: Word, lift: Lift) -> int:
    """Coefficient of h in the class of the top edge of a Case I lift."""
    if lift.w_x0 == lift.w_y0:
        return 0
    quotient = lift.w_x0.inverse() * lift.w_y0
    gamma = reflection_root(word, quotient)
    if gamma is None:
        raise MomentGraphError(
            f"Case I lift of {lift.x0}--{lift.y0}: w(x0)^-1 w(y0) is not a reflection"
        )
    return -coroot_pairing(word.cartan, gamma, word.letters[-1])


def lift_edge(word: Word, parent: Edge, lift: Optional[Lift] = None) -> list[Edge]:
    """Edges among the four fixed points over the endpoints of ``parent``.

    Vertical fiber edges are not included.
    """
    if lift is None:
        lift = classify_lift(word, parent)
    base = parent.cls + (0,)

    def shifted(a: int) -> CurveClass:
        return parent.cls + (a,)

    x0, y0 = lift.x0, lift.y0
    x1, y1 = parent.u.extend(1), parent.v.extend(1)
    if lift.case is Case.I:
        return [Edge(x0, y0, base), Edge(x1, y1, shifted(case_one_shift(word, lift)))]
    if lift.case is Case.II:
        diag = shifted(-1)
        return [Edge(x0, y0, base, family=True), Edge(x1, y0, diag), Edge(x0, y1, diag)]
    if lift.case is Case.III:
        return [Edge(x0, y0, base), Edge(x1, y1, base), Edge(x0, y1, shifted(1), family=True)]
    return [Edge(x0, y0, base), Edge(x1, y1, base), Edge(x1, y0, shifted(1), family=True)]


def _dedupe(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    merged: dict[tuple, Edge] = {}
    for e in edges:
        key = (e.u, e.v, e.cls)
        if key in merged:
            e = Edge(e.u, e.v, e.cls, merged[key].family or e.family)
        merged[key] = e
    return tuple(sorted(merged.values(), key=lambda e: (e.u, e.v, e.cls)))


def build_with_cases(word: Word) -> tuple[MomentGraph, list[tuple[Edge, Lift]]]:
    """Build the moment graph and also return the case data of the final step."""
    graph = MomentGraph(word.prefix(0), (Subword(()),), ())
    lifts: list[tuple[Edge, Lift]] = []
    for m in range(1, len(word) + 1):
        sub = word.prefix(m)
        h = tuple(int(i == m - 1) for i in range(m))
        new_edges = [Edge(p.extend(0), p.extend(1), h) for p in graph.vertices]
        lifts = []
        for parent in graph.edges:
            lift = classify_lift(sub, parent)
            lifts.append((parent, lift))
            new_edges.extend(lift_edge(sub, parent, lift))
        vertices = tuple(sorted(v for p in graph.vertices for v in (p.extend(0), p.extend(1))))
        graph = MomentGraph(sub, vertices, _dedupe(new_edges))
    return graph, lifts


def build(word: Word) -> MomentGraph:
    return build_with_cases(word)[0]


def push_theta(word: Word, cls: CurveClass) -> tuple[int, ...]:
    """Image of a curve class in H_2(G/B), in the basis of Schubert curves [X(s_j)]."""
    if len(cls) != len(word):
        raise MomentGraphError(f"class {cls} does not match word length {len(word)}")
    out = [0] * word.rank
    for c, a in zip(cls, word.letters):
        out[a - 1] += c
    return tuple(out)


# ---------------------------------------------------------------------------
# export


def to_dict(graph: MomentGraph) -> dict:
    return {
        "word": list(graph.word.letters),
        "cartan": [list(r) for r in graph.word.cartan.entries],
        "vertices": [str(v) for v in graph.vertices],
        "edges": [
            {"u": str(e.u), "v": str(e.v), "class": list(e.cls), "family": e.family}
            for e in graph.edges
        ],
    }


def from_dict(data: dict) -> MomentGraph:
    word = Word(CartanMatrix(tuple(tuple(r) for r in data["cartan"])), tuple(data["word"]))
    vertices = tuple(Subword.parse(v) for v in data["vertices"])
    edges = tuple(
        Edge(Subword.parse(e["u"]), Subword.parse(e["v"]), tuple(e["class"]), bool(e["family"]))
        for e in data["edges"]
    )
    return MomentGraph(word, vertices, _dedupe(edges))


def _dot_label(cls: CurveClass) -> str:
    return "(" + ",".join(map(str, cls)) + ")"


def to_dot(graph: MomentGraph) -> str:
    name = "Z_" + "_".join(map(str, graph.word.letters)) if len(graph.word) else "Z"
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in graph.vertices:
        lines.append(f'  "{v}";')
    for e in graph.edges:
        style = ", penwidth=3" if e.family else ""
        lines.append(f'  "{e.u}" -- "{e.v}" [label="{_dot_label(e.cls)}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(graph: MomentGraph, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_dict(graph), indent=2) + "\n"
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "text":
        rows = [f"word {graph.word}  ({len(graph.vertices)} vertices, {len(graph.edges)} edges)"]
        for e in graph.edges:
            rows.append(f"{e.u} -- {e.v}  {_dot_label(e.cls)}{'  family' if e.family else ''}")
        return "\n".join(rows) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def parse(text: str) -> MomentGraph:
    return from_dict(json.loads(text))


__all__ = [
    "Case",
    "CurveClass",
    "Edge",
    "Lift",
    "MomentGraph",
    "MomentGraphError",
    "RootSystemError",
    "build",
    "build_with_cases",
    "classify_lift",
    "export",
    "lift_edge",
    "parse",
    "push_theta",
]
