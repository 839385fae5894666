"""Effective curve cone, curve neighborhoods and the curve-neighborhood vanishing test.

Every effective curve class is a nonnegative combination of moment-graph edge
classes.  Searches over such combinations are bounded by the linear height

    height(beta) = sum_i (n - i + 1) * beta_i

which is the total theta push-forward over all prefixes of the word.  It is
positive on every nonzero effective class, so a generator of height ``h`` can
appear at most ``height(beta) // h`` times in a decomposition of ``beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .cohomology import deg_q, pair_subvariety
from .momentgraph import CurveClass, Edge, MomentGraph, build
from .rootsys import Subword, Word, as_subword


class EffectivityError(ValueError):
    pass


def height(beta: CurveClass) -> int:
    n = len(beta)
    return sum((n - i) * b for i, b in enumerate(beta))


def _combination(target: CurveClass, gens: Sequence[CurveClass]) -> Optional[tuple[int, ...]]:
    """Nonnegative integer coefficients c with sum c_i gens_i == target, or None."""
    gens = tuple(gens)
    target = tuple(target)
    return _solve(target, gens)


@lru_cache(maxsize=65536)
def _solve(target: CurveClass, gens: tuple[CurveClass, ...]) -> Optional[tuple[int, ...]]:
    if not any(target):
        return (0,) * len(gens)
    if not gens:
        return None
    budget = height(target)
    if budget <= 0:
        return None
    g, rest = gens[0], gens[1:]
    hg = height(g)
    if hg <= 0:
        raise EffectivityError(f"generator {g} has non-positive height")
    for c in range(budget // hg, -1, -1):
        remaining = tuple(t - c * x for t, x in zip(target, g))
        sub = _solve(remaining, rest)
        if sub is not None:
            return (c,) + sub
    return None


@dataclass(frozen=True)
class EffectiveCone:
    word: Word
    generators: tuple[CurveClass, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def express(self, beta: CurveClass) -> Optional[tuple[int, ...]]:
        return _combination(tuple(beta), self.generators)

    def combine(self, coeffs: Sequence[int]) -> CurveClass:
        n = len(self.word)
        return tuple(sum(c * g[i] for c, g in zip(coeffs, self.generators)) for i in range(n))


def cone_from_classes(word: Word, classes: Iterable[CurveClass]) -> EffectiveCone:
    gens = sorted(set(tuple(c) for c in classes if any(c)))
    for g in gens:
        if height(g) <= 0:
            raise EffectivityError(f"edge class {g} has non-positive height")
    # a class that is a combination of others uses only classes of smaller height,
    # so deletions never depend on order
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            others = tuple(x for x in gens if x != g)
            if _combination(g, others) is not None:
                gens.remove(g)
                changed = True
                break
    return EffectiveCone(word, tuple(sorted(gens)))


def cone(word: Word, graph: Optional[MomentGraph] = None) -> EffectiveCone:
    graph = graph if graph is not None else build(word)
    return cone_from_classes(word, (e.cls for e in graph.edges))


def is_effective(cone: EffectiveCone, beta: CurveClass) -> tuple[bool, Optional[tuple[int, ...]]]:
    witness = cone.express(tuple(beta))
    return witness is not None, witness


def is_indecomposable(cone: EffectiveCone, beta: CurveClass) -> bool:
    beta = tuple(beta)
    ok, _ = is_effective(cone, beta)
    if not ok or not any(beta):
        return False
    for part in effective_classes_below(cone, beta):
        rest = tuple(b - p for b, p in zip(beta, part))
        if any(part) and any(rest) and is_effective(cone, rest)[0]:
            return False
    return True


def effective_classes_below(cone: EffectiveCone, beta: CurveClass) -> list[CurveClass]:
    """Effective classes whose height does not exceed that of beta."""
    budget = height(beta)
    ranges = [range(budget // height(g) + 1) for g in cone.generators]
    out = set()
    for coeffs in product(*ranges):
        c = cone.combine(coeffs)
        if height(c) <= budget:
            out.add(c)
    return sorted(out)


def indecomposables(cone: EffectiveCone) -> list[CurveClass]:
    return [g for g in cone.generators if is_indecomposable(cone, g)]


def effective_classes_by_degree(cone: EffectiveCone, max_degree: int) -> list[tuple[tuple[int, ...], CurveClass]]:
    """Nonzero effective classes with deg q^beta <= max_degree, with generator coordinates.

    Requires every generator to have positive degree (Z Fano on curves).
    """
    degs = [deg_q(cone.word, g) for g in cone.generators]
    if any(d <= 0 for d in degs):
        raise EffectivityError(f"generator degrees {degs} are not all positive")
    out: dict[CurveClass, tuple[int, ...]] = {}
    for coeffs in product(*[range(max_degree // d + 1) for d in degs]):
        if not any(coeffs) or sum(c * d for c, d in zip(coeffs, degs)) > max_degree:
            continue
        out.setdefault(cone.combine(coeffs), coeffs)
    return sorted(((c, b) for b, c in out.items()), key=lambda cb: (sum(c * d for c, d in zip(cb[0], degs)), cb[0]))


# ---------------------------------------------------------------------------
# curve neighborhoods


def fixed_points(eps: Subword | str) -> frozenset[Subword]:
    """T-fixed points of Z_eps: all eps' with support inside that of eps."""
    eps = as_subword(eps)
    ones = [i for i, b in enumerate(eps.bits) if b]
    pts = set()
    for choice in product((0, 1), repeat=len(ones)):
        bits = [0] * len(eps)
        for i, c in zip(ones, choice):
            bits[i] = c
        pts.add(Subword(tuple(bits)))
    return frozenset(pts)


def match_subvariety(points: frozenset[Subword], n: int) -> Optional[Subword]:
    if not points:
        return None
    top = Subword(tuple(int(any(p.bits[i] for p in points)) for i in range(n)))
    return top if fixed_points(top) == points else None


@dataclass(frozen=True)
class NeighborhoodResult:
    fixed_points: frozenset[Subword]
    matched_subvariety: Optional[Subword]

    def to_dict(self) -> dict:
        return {
            "fixed_points": [str(p) for p in sorted(self.fixed_points)],
            "matched_subvariety": None if self.matched_subvariety is None else str(self.matched_subvariety),
        }


def _connected(edges: Sequence[Edge]) -> bool:
    parent: dict[Subword, Subword] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for e in edges:
        parent[find(e.u)] = find(e.v)
    roots = {find(e.u) for e in edges}
    return len(roots) <= 1


def configurations(graph: MomentGraph, beta: CurveClass, max_multiplicity: Optional[int] = None):
    """Edge multisets whose weighted class sum is exactly ``beta``.

    Yields tuples of (edge, multiplicity).  Connectivity is not checked here.
    """
    beta = tuple(beta)
    edges = [e for e in graph.edges if height(e.cls) <= height(beta)]
    cap = max_multiplicity

    def rec(idx: int, remaining: CurveClass, chosen: list):
        if not any(remaining):
            yield tuple(chosen)
            return
        if idx == len(edges) or height(remaining) <= 0:
            return
        e = edges[idx]
        he = height(e.cls)
        top = height(remaining) // he
        if cap is not None:
            top = min(top, cap)
        for m in range(top, -1, -1):
            rem = tuple(r - m * c for r, c in zip(remaining, e.cls))
            if m:
                chosen.append((e, m))
            yield from rec(idx + 1, rem, chosen)
            if m:
                chosen.pop()

    yield from rec(0, beta, [])


def curve_neighborhood(
    graph: MomentGraph,
    sources: Iterable[Subword | str],
    beta: CurveClass,
    cone_: Optional[EffectiveCone] = None,
) -> NeighborhoodResult:
    """Fixed points swept by connected T-stable configurations of class beta meeting ``sources``."""
    word = graph.word
    beta = tuple(beta)
    cone_ = cone_ if cone_ is not None else cone(word, graph)
    if not any(beta) or not is_effective(cone_, beta)[0]:
        raise EffectivityError(f"class {beta} is not a nonzero effective class")
    src = {as_subword(s) for s in sources}
    cap = max(1, deg_q(word, beta))
    covered: set[Subword] = set()
    for config in configurations(graph, beta, cap):
        edges = [e for e, _ in config]
        verts = {v for e in edges for v in e.endpoints}
        if verts & src and _connected(edges):
            covered |= verts
    pts = frozenset(covered)
    return NeighborhoodResult(pts, match_subvariety(pts, len(word)))


@dataclass(frozen=True)
class Component:
    """An irreducible component of a curve neighborhood, given as a sub Bott-Samelson variety."""

    subvariety: Subword
    dim: int


def gw_vanishes(
    word: Word,
    gamma_eps: Subword | str,
    omega_eps: Subword | str,
    beta: CurveClass,
    components: Sequence[Component | tuple],
) -> bool:
    """Curve-neighborhood test for the two-point invariant <sigma_gamma, [Z_omega]>_beta.

    True means the invariant vanishes; False means the test is inconclusive.
    """
    gamma_eps = as_subword(gamma_eps)
    omega_eps = as_subword(omega_eps)
    n = len(word)
    if gamma_eps.length + (n - omega_eps.length) != n + deg_q(word, beta) - 1:
        raise EffectivityError("codimension condition fails for this invariant")
    comps = []
    for c in components:
        if not isinstance(c, Component):
            sub, dim = c
            c = Component(as_subword(sub) if sub is not None else None, int(dim))
        if c.dim < 0 or (c.subvariety is not None and len(c.subvariety) != n):
            raise EffectivityError(f"malformed neighborhood component {c}")
        comps.append(c)
    if not comps:
        raise EffectivityError("empty component list")
    top = max(c.dim for c in comps)
    codim = gamma_eps.length
    if top < codim:
        return True
    if top > codim:
        return False
    for c in comps:
        if c.dim < codim:
            continue
        if c.subvariety is None:
            return False
        if pair_subvariety(word, {gamma_eps: 1}, c.subvariety) != 0:
            return False
    return True
