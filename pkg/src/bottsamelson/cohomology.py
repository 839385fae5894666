"""Integral cohomology of a Bott-Samelson variety in the sigma basis.

``sigma_eps`` is dual to the subvariety class ``[Z_eps]``.  Products are
computed on exponent vectors of the divisor generators ``sigma_(j)`` and brought
to square-free normal form with the quadratic relation

    sigma_(j)^2 = sum_{i<j} -(alpha_{a_i}, alpha_{a_j}^vee) sigma_(i) sigma_(j)

applied to the largest squared generator.  Each rewrite moves one unit of
exponent from position j to a smaller position, so reduction terminates.
"""

from __future__ import annotations

from collections import defaultdict
from math import gcd
from typing import Mapping, Sequence

from .momentgraph import CurveClass, push_theta
from .rootsys import Subword, Word, as_subword, cartan_pairing

CohClass = dict[Subword, int]


class CohomologyError(ValueError):
    pass


def basis_class(eps: Subword | str, coeff: int = 1) -> CohClass:
    return {as_subword(eps): coeff}


def generator(word: Word, j: int) -> CohClass:
    """The divisor class sigma_(j)."""
    if not 1 <= j <= len(word):
        raise CohomologyError(f"generator index {j} out of range 1..{len(word)}")
    return {Subword.unit(len(word), j): 1}


def clean(a: Mapping[Subword, int]) -> CohClass:
    return {k: v for k, v in sorted(a.items()) if v}


def add(a: Mapping[Subword, int], b: Mapping[Subword, int], scale: int = 1) -> CohClass:
    out = defaultdict(int, a)
    for k, v in b.items():
        out[k] += scale * v
    return clean(out)


def _check(word: Word, a: Mapping[Subword, int]) -> None:
    for eps in a:
        if len(eps) != len(word):
            raise CohomologyError(f"class term {eps} does not belong to a word of length {len(word)}")


def rewrite_step(word: Word, exps: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """One application of the quadratic relation to the last squared generator.

    Returns (exponents, coefficient) pairs; empty when the monomial is square-free.
    Each result is smaller than ``exps`` in right-to-left lexicographic order.
    """
    squared = [j for j in range(len(word)) if exps[j] >= 2]
    if not squared:
        return []
    j = squared[-1]
    aj = word.letters[j]
    out = []
    for i in range(j):
        c = -cartan_pairing(word, word.letters[i], aj)
        if c:
            new = list(exps)
            new[j] -= 1
            new[i] += 1
            out.append((tuple(new), c))
    return out


def reduce_monomial(word: Word, exponents: Sequence[int]) -> CohClass:
    """Square-free normal form of prod_j sigma_(j)^{e_j}."""
    result: dict[Subword, int] = defaultdict(int)
    stack: list[tuple[tuple[int, ...], int]] = [(tuple(exponents), 1)]
    while stack:
        exps, coeff = stack.pop()
        if all(e <= 1 for e in exps):
            result[Subword(exps)] += coeff
            continue
        stack.extend((new, coeff * c) for new, c in rewrite_step(word, exps))
    return clean(result)


def multiply(word: Word, a: Mapping[Subword, int], b: Mapping[Subword, int]) -> CohClass:
    _check(word, a)
    _check(word, b)
    out: dict[Subword, int] = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = [x + y for x, y in zip(ea.bits, eb.bits)]
            for eps, c in reduce_monomial(word, exps).items():
                out[eps] += ca * cb * c
    return clean(out)


def power(word: Word, a: Mapping[Subword, int], k: int) -> CohClass:
    out = {Subword((0,) * len(word)): 1}
    for _ in range(k):
        out = multiply(word, out, a)
    return out


def integrate(word: Word, a: Mapping[Subword, int]) -> int:
    """Coefficient of the point class sigma_{1...1}."""
    return a.get(Subword((1,) * len(word)), 0)


def pair_subvariety(word: Word, a: Mapping[Subword, int], eps: Subword | str) -> int:
    """Integral of a over [Z_eps]."""
    return a.get(as_subword(eps), 0)


def pair_curve(word: Word, j: int, beta: CurveClass) -> int:
    """Integral of sigma_(j) over a curve class."""
    if not 1 <= j <= len(word):
        raise CohomologyError(f"generator index {j} out of range 1..{len(word)}")
    return beta[j - 1]


def codegree(a: Mapping[Subword, int]) -> set[int]:
    return {eps.length for eps in a}


def first_chern_coefficients(word: Word) -> tuple[int, ...]:
    """Coefficients of c_1(T_Z) on sigma_(1), ..., sigma_(n)."""
    a = word.letters
    return tuple(
        2 + sum(cartan_pairing(word, a[j], a[i]) for j in range(i + 1, len(a)))
        for i in range(len(a))
    )


def first_chern(word: Word) -> CohClass:
    n = len(word)
    return clean({Subword.unit(n, i + 1): c for i, c in enumerate(first_chern_coefficients(word))})


def c1_degree_recursive(word: Word, beta: CurveClass) -> int:
    """Integral of c_1(T_Z) over beta through the tower of P^1-bundles.

    Uses c_1(T_Z) = c_1(T_pi) + pi^* c_1(T_Z'): the relative part pairs the
    theta push-forward of beta with the last letter's root, the rest recurses
    on pi_* beta (drop the last coordinate).
    """
    n = len(word)
    if n == 0:
        return 0
    last = word.letters[-1]
    theta = push_theta(word, beta)
    relative = sum(t * cartan_pairing(word, last, j + 1) for j, t in enumerate(theta))
    return relative + c1_degree_recursive(word.prefix(n - 1), tuple(beta[:-1]))


def deg_q(word: Word, beta: CurveClass) -> int:
    """deg q^beta = integral of c_1(T_Z) over beta."""
    return sum(b * c for b, c in zip(beta, first_chern_coefficients(word)))


def ample_decomposition(word: Word) -> tuple[int, ...]:
    """Coordinates of c_1 in the basis c_1(O_{a_1..a_k}(1)), k = 1..n.

    ``c_1(O_{a_1..a_k}(1)) = sum of sigma_(i) over i <= k with a_i = a_k``.
    """
    n = len(word)
    remaining = list(first_chern_coefficients(word))
    coeffs = [0] * n
    for k in range(n, 0, -1):
        m = remaining[k - 1]
        coeffs[k - 1] = m
        for i in range(1, k + 1):
            if word.letters[i - 1] == word.letters[k - 1]:
                remaining[i - 1] -= m
    return tuple(coeffs)


def is_fano(word: Word) -> bool:
    return len(word) > 0 and all(m > 0 for m in ample_decomposition(word))


def fano_index(word: Word) -> int:
    """Largest integer dividing c_1(T_Z) in H^2(Z; Z)."""
    if not is_fano(word):
        raise CohomologyError(f"Z({word}) is not Fano: ample coordinates {ample_decomposition(word)}")
    g = 0
    for c in first_chern_coefficients(word):
        g = gcd(g, c)
    return g


def format_class(a: Mapping[Subword, int]) -> str:
    if not a:
        return "0"
    parts = []
    for eps, c in sorted(a.items(), key=lambda kv: (kv[0].length, kv[0])):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {'' if mag == 1 else mag}s{eps}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
