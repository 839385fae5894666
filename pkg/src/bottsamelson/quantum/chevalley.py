"""Symbolic Chevalley matrices and the commutator equations they must satisfy.

Matrix entries live in one integer polynomial ring whose generators are the
quantum parameters ``q1, q2, ...`` followed by the unknown invariant symbols.
Column ``eps`` of the matrix for ``sigma_(j)`` holds ``sigma_(j) * sigma_eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import ZZ
from sympy.polys.rings import PolyElement, PolyRing, ring

from ..cohomology import deg_q, generator, multiply
from ..effcone import EffectiveCone
from ..momentgraph import CurveClass
from ..rootsys import Subword, Word
from .invariants import QuantumError, UnknownTable, divisor_terms, generator_order


def basis_order(word: Word) -> list[Subword]:
    """Subwords by length, then by descending bit string (000, 100, 010, 001, 110, ...)."""
    return sorted(word.subwords(), key=lambda e: (e.length, tuple(-b for b in e.bits)))


@dataclass
class QuantumSetup:
    word: Word
    cone: EffectiveCone
    table: UnknownTable
    generators: tuple[CurveClass, ...]
    ring: PolyRing
    q_names: tuple[str, ...]
    basis: list[Subword]

    @property
    def n_q(self) -> int:
        return len(self.q_names)

    def q_monomial(self, beta: CurveClass) -> PolyElement:
        coeffs = self.cone.express(beta)
        if coeffs is None:
            raise QuantumError(f"class {beta} is not effective")
        # express() uses the cone's own order; reorder to q-index order
        by_gen = dict(zip(self.cone.generators, coeffs))
        out = self.ring.one
        for name, g in zip(self.q_names, self.generators):
            out *= self.ring(getattr_gen(self.ring, name)) ** by_gen[g]
        return out

    def q_exponents(self, beta: CurveClass) -> tuple[int, ...]:
        by_gen = dict(zip(self.cone.generators, self.cone.express(beta)))
        return tuple(by_gen[g] for g in self.generators)

    def gen(self, name: str) -> PolyElement:
        return getattr_gen(self.ring, name)

    def symbol_value(self, key) -> PolyElement:
        entry = self.table[key]
        if entry.known:
            return self.ring(entry.value)
        return self.gen(entry.symbol)


def getattr_gen(R: PolyRing, name: str) -> PolyElement:
    return R.gens[R.symbols.index(_sym(R, name))]


def _sym(R: PolyRing, name: str):
    for s in R.symbols:
        if s.name == name:
            return s
    raise KeyError(name)


def make_setup(word: Word, cone: EffectiveCone, table: UnknownTable) -> QuantumSetup:
    gens = generator_order(word, cone)
    q_names = tuple(f"q{i + 1}" for i in range(len(gens)))
    R, *_ = ring(",".join(q_names + tuple(table.symbols())), ZZ)
    return QuantumSetup(word, cone, table, gens, R, q_names, basis_order(word))


Matrix = list[list[PolyElement]]


def build_chevalley(setup: QuantumSetup, j: int) -> Matrix:
    """Matrix of quantum multiplication by sigma_(j) in the ordered sigma basis."""
    word, R = setup.word, setup.ring
    index = {e: i for i, e in enumerate(setup.basis)}
    size = len(setup.basis)
    mat = [[R.zero for _ in range(size)] for _ in range(size)]
    div = generator(word, j)
    for col, eps in enumerate(setup.basis):
        for target, c in multiply(word, div, {eps: 1}).items():
            mat[index[target]][col] += c
        for beta, cyc, factor, key in divisor_terms(word, setup.cone, j, eps):
            if cyc.length + deg_q(word, beta) != eps.length + 1:
                raise QuantumError(f"grading violation at column {eps}, class {beta}")
            mat[index[cyc]][col] += factor * setup.symbol_value(key) * setup.q_monomial(beta)
    return mat


def matmul(a: Matrix, b: Matrix, R: PolyRing) -> Matrix:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), R.zero) for j in range(n)] for i in range(n)]


def commutator(a: Matrix, b: Matrix, R: PolyRing) -> Matrix:
    ab, ba = matmul(a, b, R), matmul(b, a, R)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


@dataclass(frozen=True)
class Equation:
    """Coefficient of one q-monomial in one commutator entry, required to vanish."""

    pair: tuple[int, int]
    row: int
    col: int
    q_exp: tuple[int, ...]
    poly: PolyElement


def commutator_entries(setup: QuantumSetup, mats: Sequence[Matrix]) -> list[tuple[tuple[int, int], int, int, PolyElement]]:
    out = []
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            com = commutator(mats[a], mats[b], setup.ring)
            for r, row in enumerate(com):
                for c, val in enumerate(row):
                    out.append(((a + 1, b + 1), r, c, val))
    return out


def split_by_q(setup: QuantumSetup, poly: PolyElement) -> dict[tuple[int, ...], PolyElement]:
    """Coefficients of ``poly`` as a polynomial in the q variables."""
    R, m = setup.ring, setup.n_q
    parts: dict[tuple[int, ...], dict] = {}
    for monom, coeff in poly.terms():
        qe, rest = monom[:m], (0,) * m + monom[m:]
        parts.setdefault(qe, {})[rest] = coeff
    return {qe: R.from_dict(d) for qe, d in sorted(parts.items())}


def equations(setup: QuantumSetup, mats: Sequence[Matrix]) -> list[Equation]:
    eqs = []
    for pair, r, c, val in commutator_entries(setup, mats):
        for qe, p in split_by_q(setup, val).items():
            if p:
                eqs.append(Equation(pair, r, c, qe, p))
    return eqs
