from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bottsamelson.conjo import (
    C1MismatchError,
    SpectralError,
    UndecidableError,
    c1_at_zero,
    c1_hat,
    certified_roots,
    char_poly_at,
    char_poly_exact,
    check_c1_hat,
    check_conjecture_o,
    compare_c1_hat,
    det_exact,
    fano_index,
    is_square_free,
    poly_eval,
    poly_gcd,
    square_free_factors,
)
from bottsamelson.quantum import reference_matrices
from bottsamelson.quantum.data import REFERENCE_C1_HAT
from bottsamelson.rootsys import make_word

COMPUTED_CHAR_POLY = [1, 4, -24, -160, -494, -1304, -720, 128, 1973]
REFERENCE_CHAR_POLY = [1, 4, -20, -142, -506, -1528, -1540, -538, 2337]
DOMINANT = "6.3949505005128463169"


@pytest.fixture(scope="module")
def c1(pipeline, word121):
    return c1_hat(word121, pipeline.final)


def test_c1_hat_from_reference_quantum_matrices(c1, pipeline):
    # 3A + B + 2C at q = 1, built straight from the reference multiplication matrices
    A, B, C = reference_matrices(pipeline.final_ring, y3=1)
    at_one = lambda p: int(sum(p.coeffs())) if p else 0
    oracle = [[3 * at_one(A[r][k]) + at_one(B[r][k]) + 2 * at_one(C[r][k]) for k in range(8)] for r in range(8)]
    assert c1 == oracle


def test_c1_hat_differs_from_reference_in_one_entry(c1):
    assert compare_c1_hat(c1, REFERENCE_C1_HAT) == [(0, 3, 0, -2)]
    with pytest.raises(C1MismatchError):
        check_c1_hat(c1, REFERENCE_C1_HAT)
    assert check_c1_hat(c1, REFERENCE_C1_HAT, strict=False) == [(0, 3, 0, -2)]


def test_classical_c1_is_nilpotent(pipeline, word121):
    m = c1_at_zero(word121, pipeline.final)
    assert all(m[r][k] == 0 for r in range(8) for k in range(8) if r <= k)
    assert char_poly_exact(m) == [1] + [0] * 8


def test_char_poly(c1):
    p = char_poly_exact(c1)
    assert p == COMPUTED_CHAR_POLY
    assert p[1] == -sum(c1[i][i] for i in range(8))
    assert p == [int(c) for c in sympy.Matrix(c1).charpoly().all_coeffs()]
    assert char_poly_exact(REFERENCE_C1_HAT) == REFERENCE_CHAR_POLY


def test_square_free_both(c1):
    assert is_square_free(char_poly_exact(c1))
    assert is_square_free(REFERENCE_CHAR_POLY)


def test_verdict_computed(c1):
    rep = check_conjecture_o(c1, fano_index(make_word("A2", "1,2,1")))
    assert rep.verdict and rep.square_free and rep.fano_index == 1
    dom = rep.eigenvalues[rep.dominant]
    assert DOMINANT in dom.text and dom.radius <= 1e-8
    assert all(e.radius <= 1e-8 for e in rep.eigenvalues)
    assert sum(e.value for e in rep.eigenvalues).real == pytest.approx(-4)
    prod = 1
    for e in rep.eigenvalues:
        prod *= e.value
    assert prod.real == pytest.approx(det_exact(c1)) and det_exact(c1) == 1973


def test_verdict_reference():
    rep = check_conjecture_o(REFERENCE_C1_HAT, 1)
    assert rep.verdict
    assert "6.2105939825044927715" in rep.eigenvalues[rep.dominant].text


def test_projective_line_operator():
    # c1 = 2 sigma on P^1 with sigma * sigma = q: eigenvalues +-2, index 2
    rep = check_conjecture_o([[0, 2], [2, 0]], 2)
    assert rep.verdict
    assert rep.eigenvalues[rep.dominant].value.real == pytest.approx(2)


def test_projective_line_wrong_index():
    assert not check_conjecture_o([[0, 2], [2, 0]], 1).verdict


def test_small_examples():
    assert check_conjecture_o([[2, 0], [0, 1]], 1).verdict
    rep = check_conjecture_o([[0, -1], [1, 0]], 1)
    assert not rep.verdict and not rep.clauses["dominant_real"]
    rep = check_conjecture_o([[1, 0], [0, 1]], 1)
    assert not rep.square_free and not rep.clauses["dominant_simple"]


def test_negative_dominant_fails():
    rep = check_conjecture_o([[-3, 0], [0, 1]], 1)
    assert rep.clauses["dominant_real"] and not rep.clauses["dominant_positive"]


def test_bad_index():
    with pytest.raises(SpectralError):
        check_conjecture_o([[1]], 0)


def test_char_poly_basics():
    assert char_poly_exact([[1, 0], [0, 1]]) == [1, -2, 1]
    assert char_poly_exact([[0] * 4 for _ in range(4)]) == [1, 0, 0, 0, 0]
    assert poly_eval([1, -2, 1], 3) == 4
    assert char_poly_at([[1, 2], [3, 4]], 5) == det_exact([[4, -2], [-3, 1]])


def test_square_free_factors():
    p = [int(c) for c in sympy.Poly(sympy.expand((sympy.Symbol("x") - 1) ** 3 * (sympy.Symbol("x") + 2) ** 2 * sympy.Symbol("x")), sympy.Symbol("x")).all_coeffs()]
    facs = {m: [Fraction(c) for c in f] for f, m in square_free_factors(p)}
    assert facs[1] == [1, 0]
    assert facs[2] == [1, 2]
    assert facs[3] == [1, -1]
    assert poly_gcd(p, [1, -1]) == [1, -1]


def test_certified_roots_multiplicity():
    roots = certified_roots([1, -3, 3, -1])
    assert len(roots) == 1 and roots[0].multiplicity == 3


def test_undecidable_tolerance():
    with pytest.raises(UndecidableError):
        certified_roots([1, 0, -2], tolerance=1e-300)


small = st.integers(-5, 5)
matrices = st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_char_poly_against_determinant(m):
    p = char_poly_exact(m)
    assert p[-1] == (-1) ** len(m) * det_exact(m)
    for t in (-2, 0, 3):
        assert poly_eval(p, t) == char_poly_at(m, t)
    assert det_exact(m) == sympy.Matrix(m).det()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_square_free_invariant_under_transpose(m):
    t = [list(r) for r in zip(*m)]
    assert char_poly_exact(m) == char_poly_exact(t)
    x = sympy.Symbol("x")
    p = char_poly_exact(m)
    expected = sympy.degree(sympy.gcd(sympy.Poly(p, x), sympy.Poly(p, x).diff(x)), x) == 0
    assert is_square_free(p) == expected
