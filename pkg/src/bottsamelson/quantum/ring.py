"""Finalized quantum multiplication: matrices, Giambelli formulas, presentation, ring checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Mapping, Optional, Sequence

from sympy import ZZ, sympify
from sympy.polys.rings import PolyElement, PolyRing, ring

from ..cohomology import multiply
from ..rootsys import Subword, Word, as_subword
from . import data
from .chevalley import Matrix, QuantumSetup
from .invariants import QuantumError
from .solver import Solution

QPoly = dict[Subword, PolyElement]


class VerificationError(QuantumError):
    pass


def family_matrices(setup: QuantumSetup, mats: Sequence[Matrix], sol: Solution) -> tuple[PolyRing, list[Matrix]]:
    """The matrices with every solved symbol replaced, over Z[q, parameters, free symbols]."""
    names = list(setup.q_names) + list(dict.fromkeys(list(sol.parameters) + list(sol.free)))
    F, *_ = ring(",".join(names), ZZ)
    subs = [(g, sol.assignment[s.name]) for s, g in zip(setup.ring.symbols, setup.ring.gens) if s.name in sol.assignment]
    out = []
    for m in mats:
        out.append([[(x.compose(subs) if subs else x).set_ring(F) for x in row] for row in m])
    return F, out


def finalize(
    setup: QuantumSetup,
    mats: Sequence[Matrix],
    sol: Solution,
    values: Optional[Mapping[str, int]] = None,
) -> tuple[PolyRing, list[Matrix]]:
    """Integer matrices over Z[q] once the free parameters are fixed (y3 = 1 by default)."""
    if values is None:
        values = {data.FREE_PARAMETER: data.FREE_PARAMETER_VALUE} if data.FREE_PARAMETER in sol.parameters else {}
    missing = set(sol.free) - set(values)
    if missing:
        raise QuantumError(f"free symbols without a value: {sorted(missing)}")
    F, fam = family_matrices(setup, mats, sol)
    Q, *_ = ring(",".join(setup.q_names), ZZ)
    subs = [(F.gens[F.symbols.index(s)], F(values[s.name])) for s in F.symbols if s.name in values]
    final = [[[(x.compose(subs) if subs else x).set_ring(Q) for x in row] for row in m] for m in fam]
    return Q, final


def reference_matrices(R: PolyRing, y3: Optional[int] = None) -> list[Matrix]:
    """The reference matrices A, B, C over ``R`` (y3 substituted when given)."""
    out = []
    for j in sorted(data.MATRIX_FOR_GENERATOR):
        rows = data.REFERENCE_MATRICES[data.MATRIX_FOR_GENERATOR[j]]
        m = []
        for row in rows:
            exprs = [sympify(s) for s in row]
            if y3 is not None:
                exprs = [e.subs("y3", y3) for e in exprs]
            m.append([R.from_expr(e) if e != 0 else R.zero for e in exprs])
        out.append(m)
    return out


def matrix_mismatches(a: Sequence[Matrix], b: Sequence[Matrix]) -> list[tuple[int, int, int, str, str]]:
    out = []
    for k, (ma, mb) in enumerate(zip(a, b), start=1):
        for r, (ra, rb) in enumerate(zip(ma, mb)):
            for c, (x, y) in enumerate(zip(ra, rb)):
                if x != y:
                    out.append((k, r, c, str(x.as_expr()), str(y.as_expr())))
    return out


def classical_matrix(word: Word, basis: Sequence[Subword], j: int) -> list[list[int]]:
    index = {e: i for i, e in enumerate(basis)}
    m = [[0] * len(basis) for _ in basis]
    div = {Subword.unit(len(word), j): 1}
    for col, eps in enumerate(basis):
        for t, c in multiply(word, div, {eps: 1}).items():
            m[index[t]][col] = c
    return m


def _matvec(m: Matrix, v: Sequence[PolyElement], R: PolyRing) -> list[PolyElement]:
    return [sum((m[i][k] * v[k] for k in range(len(v)) if m[i][k] and v[k]), R.zero) for i in range(len(m))]


def _matmul(a: Matrix, b: Matrix, R: PolyRing) -> Matrix:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), R.zero) for j in range(n)] for i in range(n)]


@dataclass
class QuantumRing:
    """Quantum product determined by the divisor operators of a finalized solution."""

    word: Word
    basis: list[Subword]
    ring: PolyRing
    matrices: list[Matrix]
    giambelli_ring: PolyRing = field(init=False)
    operators: dict[Subword, Matrix] = field(init=False)
    giambelli: dict[Subword, PolyElement] = field(init=False)

    def __post_init__(self):
        n = len(self.word)
        names = [s.name for s in self.ring.symbols] + [f"s{j}" for j in range(1, n + 1)]
        self.giambelli_ring, *_ = ring(",".join(names), ZZ)
        self._derive_operators()

    @property
    def size(self) -> int:
        return len(self.basis)

    def _index(self, eps: Subword) -> int:
        return self.basis.index(eps)

    def _derive_operators(self) -> None:
        R, G = self.ring, self.giambelli_ring
        n = len(self.word)
        ident = [[R.one if i == j else R.zero for j in range(self.size)] for i in range(self.size)]
        s_gens = G.gens[len(self.ring.gens):]
        ops = {self.basis[0]: ident}
        gia = {self.basis[0]: G.one}
        for eps in sorted(self.basis, key=lambda e: (e.length, self._index(e))):
            if eps.length == 0:
                continue
            i = min(eps.support)
            rest = Subword(tuple(0 if k == i - 1 else b for k, b in enumerate(eps.bits)))
            m_i = self.matrices[i - 1]
            col = [m_i[r][self._index(rest)] for r in range(self.size)]
            if col[self._index(eps)] != R.one:
                raise VerificationError(f"sigma_({i}) * sigma_{rest} does not contain sigma_{eps} once")
            op = _matmul(m_i, ops[rest], R)
            g = s_gens[i - 1] * gia[rest]
            for r, c in enumerate(col):
                tgt = self.basis[r]
                if tgt == eps or not c:
                    continue
                if tgt not in ops:
                    raise VerificationError(f"lower term sigma_{tgt} in sigma_({i}) * sigma_{rest} is not lower")
                op = [[x - c * y for x, y in zip(ra, rb)] for ra, rb in zip(op, ops[tgt])]
                g -= c.set_ring(G) * gia[tgt]
            ops[eps] = op
            gia[eps] = g
        self.operators = ops
        self.giambelli = gia

    # -- products ----------------------------------------------------------

    def vector(self, a: Mapping[Subword, object]) -> list[PolyElement]:
        v = [self.ring.zero] * self.size
        for eps, c in a.items():
            v[self._index(as_subword(eps))] += self.ring(c) if not isinstance(c, PolyElement) else c.set_ring(self.ring)
        return v

    def to_qpoly(self, v: Sequence[PolyElement]) -> QPoly:
        return {e: c for e, c in zip(self.basis, v) if c}

    def operator(self, a: Mapping[Subword, object]) -> Matrix:
        out = [[self.ring.zero] * self.size for _ in range(self.size)]
        for e, c in zip(self.basis, self.vector(a)):
            if c:
                op = self.operators[e]
                out = [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(out, op)]
        return out

    def multiply(self, a: Mapping[Subword, object], b: Mapping[Subword, object]) -> QPoly:
        return self.to_qpoly(_matvec(self.operator(a), self.vector(b), self.ring))

    def basis_product(self, a: Subword, b: Subword) -> QPoly:
        col = self._index(b)
        return {e: row[col] for e, row in zip(self.basis, self.operators[a]) if row[col]}

    def presentation(self) -> dict[int, QPoly]:
        """sigma_(j)^2 for each divisor generator."""
        n = len(self.word)
        return {j: self.basis_product(Subword.unit(n, j), Subword.unit(n, j)) for j in range(1, n + 1)}

    def table(self) -> dict[tuple[Subword, Subword], QPoly]:
        return {(a, b): self.basis_product(a, b) for a in self.basis for b in self.basis}


def quantum_ring(setup: QuantumSetup, R: PolyRing, final: Sequence[Matrix]) -> QuantumRing:
    return QuantumRing(setup.word, list(setup.basis), R, [list(map(list, m)) for m in final])


def format_qpoly(p: Mapping[Subword, PolyElement]) -> str:
    if not p:
        return "0"
    parts = []
    for eps, c in sorted(p.items(), key=lambda kv: (kv[0].length, tuple(-b for b in kv[0].bits))):
        coeff = str(c.as_expr()).replace("**", "^")
        if eps.length == 0:
            parts.append(f"({coeff})" if len(c) > 1 else coeff)
        elif c == 1:
            parts.append(f"s{eps}")
        elif c == -1:
            parts.append(f"-s{eps}")
        else:
            parts.append(f"({coeff})*s{eps}" if len(c) > 1 else f"{coeff}*s{eps}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass
class RingReport:
    commutative: bool
    associative: bool
    pairs: int
    triples: int
    presentation_matches: bool
    giambelli_matches: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _reference_relations(R: PolyRing, n: int) -> dict[int, QPoly]:
    out = {}
    for j, terms in data.REFERENCE_RELATIONS.items():
        out[j] = {as_subword(e): R.from_expr(sympify(c)) for e, c in terms.items()}
    return out


def _reference_giambelli(G: PolyRing) -> dict[Subword, PolyElement]:
    return {as_subword(e): G.from_expr(sympify(s)) for e, s in data.REFERENCE_GIAMBELLI.items()}


def verify_ring(qr: QuantumRing, against_reference: bool = True, raise_on_failure: bool = True) -> RingReport:
    """Exhaustive commutativity and associativity over basis pairs and triples."""
    failures: list[str] = []
    table = qr.table()
    pairs = triples = 0
    commutative = associative = True
    for a, b in iproduct(qr.basis, repeat=2):
        pairs += 1
        if table[a, b] != table[b, a]:
            commutative = False
            failures.append(f"s{a} * s{b} != s{b} * s{a}")
    for a, b, c in iproduct(qr.basis, repeat=3):
        triples += 1
        left = qr.multiply(table[a, b], {c: 1})
        right = qr.multiply({a: 1}, table[b, c])
        if left != right:
            associative = False
            failures.append(f"(s{a} * s{b}) * s{c} != s{a} * (s{b} * s{c})")
    pres_ok = gia_ok = True
    if against_reference:
        n = len(qr.word)
        got = qr.presentation()
        for j, want in _reference_relations(qr.ring, n).items():
            if got.get(j) != want:
                pres_ok = False
                failures.append(f"relation for s_({j})^2: got {format_qpoly(got.get(j, {}))}, expected {format_qpoly(want)}")
        for eps, want in _reference_giambelli(qr.giambelli_ring).items():
            if qr.giambelli.get(eps) != want:
                gia_ok = False
                failures.append(f"Giambelli for s{eps}: got {qr.giambelli.get(eps)}, expected {want}")
    report = RingReport(commutative, associative, pairs, triples, pres_ok, gia_ok, failures)
    if raise_on_failure and failures:
        raise VerificationError("; ".join(failures[:5]))
    return report
