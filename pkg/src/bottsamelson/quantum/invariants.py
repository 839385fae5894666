"""Genus-zero invariants entering the divisor products, and the table of unknowns.

The coefficient of ``q^beta sigma_eps'`` in ``sigma_(j) * sigma_eps`` is the
three-point invariant ``<sigma_(j), sigma_eps, [Z_eps']>_beta``.  The divisor
axiom strips ``sigma_(j)`` (and ``sigma_eps`` when it is a divisor too), so each
coefficient is a pairing factor times a one- or two-point invariant.  Those
reduced invariants are keyed by ``GWKey``: an optional cohomology insertion
``sigma`` and a cycle insertion ``[Z_cycle]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..cohomology import deg_q, pair_curve
from ..effcone import Component, EffectiveCone, effective_classes_by_degree, gw_vanishes
from ..momentgraph import CurveClass
from ..rootsys import Subword, Word, as_subword
from . import data


class QuantumError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class GWKey:
    """``<sigma, [Z_cycle]>_beta``, or the one-point ``<[Z_cycle]>_beta`` when sigma is None."""

    beta: CurveClass
    cycle: Subword
    sigma: Optional[Subword] = None

    @property
    def points(self) -> int:
        return 1 if self.sigma is None else 2

    def label(self) -> str:
        ins = f"[Z_{self.cycle}]" if self.sigma is None else f"s{self.sigma}, [Z_{self.cycle}]"
        return f"<{ins}>_{tuple(self.beta)}"


@dataclass(frozen=True)
class Entry:
    value: Optional[int] = None
    symbol: Optional[str] = None
    provenance: str = ""

    @property
    def known(self) -> bool:
        return self.value is not None


@dataclass
class UnknownTable:
    word: Word
    entries: dict[GWKey, Entry] = field(default_factory=dict)
    certified: bool = False

    def __contains__(self, key: GWKey) -> bool:
        return key in self.entries

    def __getitem__(self, key: GWKey) -> Entry:
        return self.entries[key]

    def symbols(self) -> list[str]:
        names = [e.symbol for e in self.entries.values() if e.symbol is not None]
        return sorted(names, key=_symbol_key)

    def key_of(self, symbol: str) -> GWKey:
        for k, e in self.entries.items():
            if e.symbol == symbol:
                return k
        raise KeyError(symbol)

    def known(self) -> dict[GWKey, Entry]:
        return {k: e for k, e in self.entries.items() if e.known}


def _symbol_key(name: str) -> tuple:
    head = name.rstrip("0123456789")
    return (head, int(name[len(head):] or 0))


def expected_dim(word: Word, beta: CurveClass) -> int:
    """Dimension of the space of one-pointed stable maps of class beta."""
    return len(word) + deg_q(word, beta) - 2


def is_certified(word: Word) -> bool:
    return word.cartan.entries == _a2() and word.letters == data.CERTIFIED_LETTERS


def _a2():
    from ..rootsys import cartan_preset

    return cartan_preset(data.CERTIFIED_TYPE).entries


def generator_order(word: Word, cone: EffectiveCone) -> tuple[CurveClass, ...]:
    """Cone generators in the order indexing q_1, q_2, ...

    For the certified word this is beta1, beta2, beta3; otherwise the cone order.
    """
    if is_certified(word):
        order = tuple(_from_gen_coords((1, 0, 0) if g == "beta1" else (0, 1, 0) if g == "beta2" else (0, 0, 1))
                      for g in data.GENERATOR_ORDER)
        if set(order) != set(cone.generators):
            raise QuantumError(f"cone generators {cone.generators} differ from {order}")
        return order
    return tuple(cone.generators)


def _from_gen_coords(abc: tuple[int, int, int]) -> CurveClass:
    """(a, b, c) -> a beta1 + b beta2 + c beta3 in the [Z_(i)] basis."""
    out = [0, 0, 0]
    for coeff, name in zip(abc, data.GENERATOR_ORDER):
        for i, x in enumerate(data.GENERATORS[name]):
            out[i] += coeff * x
    return tuple(out)


def admissible_classes(word: Word, cone: EffectiveCone, j: int, ell: int) -> list[CurveClass]:
    """Classes beta that can contribute to sigma_(j) * sigma_eps with l(eps) = ell.

    Nonzero effective, deg q^beta <= ell + 1, and sigma_(j) pairs nontrivially
    with beta (otherwise the divisor axiom kills the term).
    """
    out = []
    for _, beta in effective_classes_by_degree(cone, ell + 1):
        if pair_curve(word, j, beta) != 0:
            out.append(beta)
    return out


def divisor_terms(word: Word, cone: EffectiveCone, j: int, eps: Subword) -> Iterator[tuple[CurveClass, Subword, int, GWKey]]:
    """Quantum terms of sigma_(j) * sigma_eps as (beta, eps', factor, key).

    The coefficient of q^beta sigma_eps' is factor * value(key).  Terms killed by
    the unit, fundamental-class or divisor axioms are not produced.
    """
    n = len(word)
    eps = as_subword(eps)
    ell = eps.length
    if ell == 0:
        return
    for beta in admissible_classes(word, cone, j, ell):
        target = ell + 1 - deg_q(word, beta)
        if target < 0:
            continue
        for cyc in word.subwords():
            if cyc.length != target or cyc.length == n:
                continue
            factor = pair_curve(word, j, beta)
            if ell == 1:
                (i,) = eps.support
                factor *= pair_curve(word, i, beta)
                if factor:
                    yield beta, cyc, factor, GWKey(beta, cyc)
            else:
                yield beta, cyc, factor, GWKey(beta, cyc, eps)


def seed_known_invariants(word: Word, cone: EffectiveCone) -> dict[GWKey, Entry]:
    """Invariant values fixed by geometry before any constraint solving."""
    if not is_certified(word):
        return {}
    seeds: dict[GWKey, Entry] = {}
    for (sigma, cycle, abc), (value, why) in data.SEEDED.items():
        key = _key_from_data(sigma, cycle, abc)
        seeds[key] = Entry(value=value, provenance=why)
    # two-point invariants killed by curve neighborhoods
    for (cycle, abc), comps in data.NEIGHBORHOODS.items():
        beta = _from_gen_coords(abc)
        cyc = as_subword(cycle)
        components = [Component(None if s is None else as_subword(s), d) for s, d in comps]
        for sigma in word.subwords():
            if sigma.length + len(word) - cyc.length != len(word) + deg_q(word, beta) - 1:
                continue
            if gw_vanishes(word, sigma, cyc, beta, components):
                seeds[GWKey(beta, cyc, sigma)] = Entry(
                    value=0, provenance=f"curve neighborhood of Z_{cycle} misses sigma_{sigma}"
                )
    # a two-point invariant with the fundamental class inserted vanishes for beta != 0
    full = Subword((1,) * len(word))
    for _, beta in effective_classes_by_degree(cone, 1):
        seeds[GWKey(beta, full, full)] = Entry(value=0, provenance="fundamental class axiom")
    return seeds


def _key_from_data(sigma, cycle, abc) -> GWKey:
    n = len(data.CERTIFIED_LETTERS)
    beta = _from_gen_coords(abc)
    cyc = Subword((0,) * n) if cycle == data.PT else as_subword(cycle)
    if sigma is None:
        return GWKey(beta, cyc)
    sig = Subword((1,) * n) if sigma == data.PT else as_subword(sigma)
    return GWKey(beta, cyc, sig)


def enumerate_unknowns(word: Word, cone: EffectiveCone) -> UnknownTable:
    """Seeded values plus one symbol per remaining invariant in the divisor products."""
    certified = is_certified(word)
    table = UnknownTable(word, dict(seed_known_invariants(word, cone)), certified)
    needed: set[GWKey] = set()
    for j in range(1, len(word) + 1):
        for eps in word.subwords():
            for _, _, _, key in divisor_terms(word, cone, j, eps):
                if key not in table.entries:
                    needed.add(key)
    if certified:
        names = {_key_from_data(*spec): name for name, spec in data.symbol_table().items()}
        missing = needed - set(names)
        extra = set(names) - needed
        if missing or extra:
            raise QuantumError(
                f"unknown enumeration disagrees with the symbol table: "
                f"{len(missing)} unnamed, {len(extra)} unused"
            )
        for key in needed:
            table.entries[key] = Entry(symbol=names[key], provenance="unknown")
        if len(needed) != data.EXPECTED_UNKNOWNS:
            raise QuantumError(f"expected {data.EXPECTED_UNKNOWNS} unknowns, found {len(needed)}")
    else:
        for idx, key in enumerate(sorted(needed), start=1):
            table.entries[key] = Entry(symbol=f"u{idx}", provenance="unknown")
    return table
