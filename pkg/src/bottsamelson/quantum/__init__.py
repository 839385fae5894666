"""Small quantum cohomology of Z(a1, a2, a1) from divisor operators and commutativity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from ..effcone import EffectiveCone, cone
from ..rootsys import Word
from . import data
from .chevalley import (
    Equation,
    Matrix,
    QuantumSetup,
    basis_order,
    build_chevalley,
    commutator_entries,
    equations,
    make_setup,
)
from .invariants import (
    Entry,
    GWKey,
    QuantumError,
    UnknownTable,
    admissible_classes,
    divisor_terms,
    enumerate_unknowns,
    expected_dim,
    is_certified,
    seed_known_invariants,
)
from .ring import (
    QuantumRing,
    RingReport,
    VerificationError,
    family_matrices,
    finalize,
    format_qpoly,
    matrix_mismatches,
    reference_matrices,
    quantum_ring,
    verify_ring,
)
from .solver import Solution, SolverError, solve


@dataclass
class Pipeline:
    setup: QuantumSetup
    symbolic: list[Matrix]
    entries: int
    equations: list[Equation]
    solution: Solution
    final_ring: object
    final: list[Matrix]
    ring: QuantumRing


def run(word: Word, parameter_values: Optional[Mapping[str, int]] = None, cone_: Optional[EffectiveCone] = None) -> Pipeline:
    """Enumerate, assemble, solve and finalize; raises on any failed contract."""
    cone_ = cone_ if cone_ is not None else cone(word)
    table = enumerate_unknowns(word, cone_)
    setup = make_setup(word, cone_, table)
    mats = [build_chevalley(setup, j) for j in range(1, len(word) + 1)]
    entries = len(commutator_entries(setup, mats))
    if table.certified and entries != data.EXPECTED_COMMUTATOR_ENTRIES:
        raise QuantumError(f"expected {data.EXPECTED_COMMUTATOR_ENTRIES} commutator entries, found {entries}")
    eqs = equations(setup, mats)
    params = (data.FREE_PARAMETER,) if table.certified else ()
    sol = solve(setup, eqs, params)
    if table.certified and sol.free != [data.FREE_PARAMETER]:
        raise SolverError(f"expected a one-parameter family in {data.FREE_PARAMETER}, free symbols {sol.free}")
    values = dict(parameter_values) if parameter_values is not None else None
    Q, final = finalize(setup, mats, sol, values)
    return Pipeline(setup, mats, entries, eqs, sol, Q, final, quantum_ring(setup, Q, final))


__all__ = [
    "Entry",
    "Equation",
    "GWKey",
    "Pipeline",
    "QuantumError",
    "QuantumRing",
    "RingReport",
    "Solution",
    "SolverError",
    "UnknownTable",
    "VerificationError",
    "admissible_classes",
    "basis_order",
    "build_chevalley",
    "commutator_entries",
    "divisor_terms",
    "enumerate_unknowns",
    "equations",
    "expected_dim",
    "family_matrices",
    "finalize",
    "format_qpoly",
    "is_certified",
    "make_setup",
    "matrix_mismatches",
    "reference_matrices",
    "quantum_ring",
    "run",
    "seed_known_invariants",
    "solve",
    "verify_ring",
]
