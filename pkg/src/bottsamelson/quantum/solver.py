"""Constraint propagation over the commutator equations.

The loop repeatedly looks for an equation that is linear in some unknown ``u``
with an integer coefficient dividing the remaining terms, sets ``u`` to the
forced polynomial, and substitutes it everywhere.  Protected parameters are
never eliminated.  When the only linear handles have a coefficient that is a
polynomial in the parameters, the generic branch divides by it and the integer
roots of that coefficient are recorded as exceptional parameter values to check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from sympy.polys.rings import PolyElement, PolyRing

from .chevalley import Equation, QuantumSetup


class SolverError(RuntimeError):
    pass


@dataclass
class Branch:
    symbol: str
    equation: str
    coefficient: str
    exceptional: list[dict[str, int]]


@dataclass
class Solution:
    ring: PolyRing
    parameters: tuple[str, ...]
    assignment: dict[str, PolyElement]
    free: list[str]
    branches: list[Branch] = field(default_factory=list)
    steps: int = 0
    equations: int = 0

    def value(self, name: str) -> PolyElement:
        if name in self.assignment:
            return self.assignment[name]
        return _gen(self.ring, name)

    def specialize(self, values: dict[str, int]) -> dict[str, int]:
        """Integer values of every solved symbol once the parameters are fixed."""
        out = {}
        for name, poly in self.assignment.items():
            p = _substitute(self.ring, poly, {k: self.ring(v) for k, v in values.items()})
            if not p.is_ground:
                raise SolverError(f"{name} = {p.as_expr()} still depends on free symbols")
            out[name] = int(p.LC) if p else 0
        for k, v in values.items():
            out[k] = int(v)
        return out


def _gen(R: PolyRing, name: str) -> PolyElement:
    for s, g in zip(R.symbols, R.gens):
        if s.name == name:
            return g
    raise KeyError(name)


def _index(R: PolyRing, name: str) -> int:
    return [s.name for s in R.symbols].index(name)


def _substitute(R: PolyRing, poly: PolyElement, values: dict[str, PolyElement]) -> PolyElement:
    pairs = [(_gen(R, k), v) for k, v in values.items() if poly.degree(_gen(R, k)) > 0]
    return poly.compose(pairs) if pairs else poly


def _variables(R: PolyRing, poly: PolyElement) -> set[int]:
    used = set()
    for monom in poly.monoms():
        used.update(i for i, e in enumerate(monom) if e)
    return used


def _linear_handle(R: PolyRing, poly: PolyElement, idx: int) -> Optional[tuple[PolyElement, PolyElement]]:
    """(coefficient, rest) with poly = coefficient * x_idx + rest, if poly is linear in x_idx."""
    x = R.gens[idx]
    if poly.degree(x) != 1:
        return None
    coeff = poly.coeff_wrt(x, 1)
    rest = poly.coeff_wrt(x, 0)
    return coeff, rest


def _integer_roots(R: PolyRing, poly: PolyElement, idx: int) -> list[int]:
    """Integer roots of a univariate polynomial in generator idx."""
    from sympy import Poly, Symbol, divisors

    x = R.symbols[idx]
    p = Poly(poly.as_expr(), x)
    coeffs = p.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    roots = {0} if len(coeffs) < len(p.all_coeffs()) else set()
    if coeffs:
        const = abs(int(coeffs[-1]))
        for d in divisors(const) if const else []:
            for r in (d, -d):
                if p.eval(r) == 0:
                    roots.add(r)
    return sorted(roots)


def canonical(poly: PolyElement) -> tuple:
    return (len(poly), tuple(sorted(poly.terms())))


def solve(
    setup: QuantumSetup,
    eqs: Sequence[Equation] | Iterable[PolyElement],
    parameters: Sequence[str] = (),
    max_steps: int = 10_000,
) -> Solution:
    """Propagate the equations ``p = 0`` until no handle remains.

    Unknowns are eliminated in symbol order, and for each unknown the
    equation chosen is the smallest one in a canonical ordering, so the result
    does not depend on the order in which equations are given.
    """
    R = setup.ring
    symbols = list(setup.table.symbols())
    protected = set(parameters)
    unknown_idx = {_index(R, s): s for s in symbols}
    param_idx = {_index(R, s) for s in protected}
    q_idx = set(range(setup.n_q))

    polys = [e.poly if isinstance(e, Equation) else e for e in eqs]
    n_input = len(polys)
    live = sorted({p for p in polys if p}, key=canonical)
    assignment: dict[str, PolyElement] = {}
    branches: list[Branch] = []
    steps = 0

    def check_consistent(ps):
        for p in ps:
            if p.is_ground and p:
                raise SolverError(f"inconsistent system: derived {p.as_expr()} = 0")
            bad = _variables(R, p) & q_idx
            if bad:
                raise SolverError("equation still contains quantum parameters")

    check_consistent(live)
    while live:
        steps += 1
        if steps > max_steps:
            raise SolverError("propagation did not terminate")
        choice = None
        for idx in sorted(unknown_idx):
            name = unknown_idx[idx]
            if name in protected or name in assignment:
                continue
            for p in live:
                h = _linear_handle(R, p, idx)
                if h is None:
                    continue
                coeff, rest = h
                if coeff.is_ground:
                    c = int(coeff.LC)
                    if all(int(v) % c == 0 for v in rest.coeffs()) if rest else True:
                        choice = (name, p, -rest.quo_ground(c) if rest else R.zero, None)
                        break
                    if rest.is_ground:
                        raise SolverError(f"non-integer forced value for {name} from {p.as_expr()} = 0")
            if choice:
                break
        if choice is None:
            # generic branch: coefficient depends only on the parameters
            for idx in sorted(unknown_idx):
                name = unknown_idx[idx]
                if name in protected or name in assignment:
                    continue
                for p in live:
                    h = _linear_handle(R, p, idx)
                    if h is None:
                        continue
                    coeff, rest = h
                    if not _variables(R, coeff) <= param_idx:
                        continue
                    quo, rem = rest.div([coeff])
                    if rem:
                        continue
                    roots = []
                    for pi in sorted(_variables(R, coeff)):
                        roots += [{R.symbols[pi].name: r} for r in _integer_roots(R, coeff, pi)]
                    branches.append(Branch(name, str(p.as_expr()), str(coeff.as_expr()), roots))
                    choice = (name, p, -quo[0], roots)
                    break
                if choice:
                    break
        if choice is None:
            break
        name, _, value, _ = choice
        sub = {name: value}
        assignment = {k: _substitute(R, v, sub) for k, v in assignment.items()}
        assignment[name] = value
        new = set()
        for p in live:
            q = _substitute(R, p, sub)
            if q:
                new.add(q)
        live = sorted(new, key=canonical)
        check_consistent(live)

    if live:
        leftover = sorted({R.symbols[i].name for p in live for i in _variables(R, p)} - protected)
        raise SolverError(
            f"{len(live)} equations remain without a linear handle; unresolved symbols {leftover}"
        )
    free = [s for s in symbols if s not in assignment]
    return Solution(R, tuple(parameters), dict(sorted(assignment.items(), key=lambda kv: symbols.index(kv[0]))),
                    free, branches, steps, n_input)
