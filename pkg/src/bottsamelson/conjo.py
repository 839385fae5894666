"""The operator of quantum multiplication by c_1 at q = 1, and a certified eigenvalue check.

Distinctness of eigenvalues is decided exactly from the characteristic
polynomial (square-free test over Q).  Eigenvalue locations come from numeric
roots wrapped in inclusion disks: for a polynomial with simple roots and
approximations z_1..z_n, the disks

    |z - z_i| <= n |p(z_i)| / |lc * prod_{j != i} (z_i - z_j)|

cover all roots, and a connected component made of m disks holds exactly m
roots.  When all disks are pairwise disjoint, each holds exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import cohomology
from .cohomology import first_chern_coefficients
from .rootsys import Word

IntMatrix = list[list[int]]

DEFAULT_TOLERANCE = 1e-10
REFINED_TOLERANCE = 1e-14


class SpectralError(ValueError):
    pass


class UndecidableError(SpectralError):
    pass


class C1MismatchError(SpectralError):
    pass


# ---------------------------------------------------------------------------
# c1 hat


def c1_hat(word: Word, final: Sequence) -> IntMatrix:
    """sum_j c_j M_j at every q = 1, where c_1(T_Z) = sum_j c_j sigma_(j)."""
    coeffs = first_chern_coefficients(word)
    size = len(final[0])
    out = [[0] * size for _ in range(size)]
    for c, m in zip(coeffs, final):
        for r in range(size):
            for k in range(size):
                out[r][k] += c * _at_one(m[r][k])
    return out


def c1_at_zero(word: Word, final: Sequence) -> IntMatrix:
    """The classical part of c1 hat: every quantum parameter set to zero."""
    coeffs = first_chern_coefficients(word)
    size = len(final[0])
    out = [[0] * size for _ in range(size)]
    for c, m in zip(coeffs, final):
        for r in range(size):
            for k in range(size):
                out[r][k] += c * _at_zero(m[r][k])
    return out


def _at_one(p) -> int:
    return int(sum(p.coeffs())) if p else 0


def _at_zero(p) -> int:
    return int(p.coeff(1)) if p else 0


def compare_c1_hat(computed: IntMatrix, reference: IntMatrix) -> list[tuple[int, int, int, int]]:
    """Entries (row, col, computed, reference) that differ."""
    return [
        (r, c, computed[r][c], reference[r][c])
        for r in range(len(reference))
        for c in range(len(reference))
        if computed[r][c] != reference[r][c]
    ]


def check_c1_hat(computed: IntMatrix, reference: IntMatrix, strict: bool = True) -> list[tuple[int, int, int, int]]:
    diff = compare_c1_hat(computed, reference)
    if diff and strict:
        raise C1MismatchError(f"c1 hat differs from the reference at {len(diff)} entries: {diff}")
    return diff


# ---------------------------------------------------------------------------
# exact characteristic polynomial


def char_poly_exact(m: Sequence[Sequence[int]]) -> list[int]:
    """det(tI - M) as integer coefficients, highest degree first (Berkowitz, division-free)."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise SpectralError("matrix is not square")
    if n == 0:
        return [1]
    a = [[int(x) for x in r] for r in m]
    vect = [1, -a[0][0]]
    for r in range(1, n):
        # column of the Toeplitz factor for the leading (r+1) x (r+1) block
        R = [a[i][r] for i in range(r)]  # column above the diagonal
        C = a[r][:r]  # row left of the diagonal
        A = [row[:r] for row in a[:r]]
        q = [1, -a[r][r]]
        v = R
        for _ in range(r):
            q.append(-sum(c * x for c, x in zip(C, v)))
            v = [sum(A[i][k] * v[k] for k in range(r)) for i in range(r)]
        # multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by vect
        new = []
        for i in range(r + 2):
            new.append(sum(q[i - k] * vect[k] for k in range(len(vect)) if 0 <= i - k < len(q)))
        vect = new
    return vect


def det_exact(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [[int(x) for x in r] for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly_at(m: Sequence[Sequence[int]], t: int) -> int:
    n = len(m)
    return det_exact([[(t if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)])


def poly_eval(coeffs: Sequence[int], t):
    acc = 0
    for c in coeffs:
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# exact polynomial arithmetic over Q (highest degree first)


def _strip(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(x) for x in a]
    b = _strip([Fraction(x) for x in b])
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], _strip(a)
    quo = []
    rem = list(a)
    while len(rem) >= len(b):
        f = rem[0] / b[0]
        quo.append(f)
        for i in range(len(b)):
            rem[i] -= f * b[i]
        rem.pop(0)
    return _strip(quo) if quo else [Fraction(0)], _strip(rem) if rem else [Fraction(0)]


def _monic(p: Sequence[Fraction]) -> list[Fraction]:
    p = _strip(list(p))
    return [x / p[0] for x in p] if p[0] else p


def _is_zero(p: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in p)


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[Fraction]:
    """Monic gcd over Q (Euclid on exact fractions)."""
    return poly_gcd_fr([Fraction(v) for v in a], [Fraction(v) for v in b])


def derivative(p: Sequence[int]) -> list[int]:
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def is_square_free(p: Sequence[int]) -> bool:
    return len(poly_gcd(p, derivative(p))) == 1


def square_free_factors(p: Sequence[int]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: [(f_k, k)] with p = lc * prod f_k^k, each f_k square-free and monic."""
    p = [Fraction(x) for x in p]
    dp = _deriv_fr(p)
    a = poly_gcd_fr(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _sub(c, _deriv_fr(b))
    out = []
    k = 1
    while len(b) > 1:
        a = poly_gcd_fr(b, d)
        b_next = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        if len(a) > 1:
            out.append((_monic(a), k))
        b = b_next
        d = _sub(c, _deriv_fr(b))
        k += 1
    return out


def poly_gcd_fr(a, b) -> list[Fraction]:
    x, y = list(a), list(b)
    while not _is_zero(y):
        x, y = y, _divmod(x, y)[1]
    return _monic(x)


def _deriv_fr(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def _sub(a, b):
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + list(a)
    b = [Fraction(0)] * (n - len(b)) + list(b)
    return _strip([x - y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------
# certified roots


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    radius: float
    multiplicity: int
    text: str  # high-precision decimal rendering

    @property
    def modulus(self) -> float:
        return abs(self.value)


def _inclusion_radii(coeffs: Sequence[Fraction], roots, ctx) -> list:
    n = len(coeffs) - 1
    lc = ctx.mpf(coeffs[0].numerator) / coeffs[0].denominator
    cf = [ctx.mpf(c.numerator) / c.denominator for c in coeffs]
    radii = []
    for i, z in enumerate(roots):
        val = ctx.polyval(cf, z)
        # Horner rounding bound: 2n * eps * sum |a_k| |z|^k
        absz = abs(z)
        bound = 2 * n * ctx.eps * sum(abs(a) * absz ** (n - k) for k, a in enumerate(cf))
        denom = abs(lc)
        for j, w in enumerate(roots):
            if j != i:
                denom *= abs(z - w)
        if denom == 0:
            radii.append(ctx.inf)
        else:
            radii.append(n * (abs(val) + bound) / denom)
    return radii


def certified_roots(p: Sequence[int], tolerance: float = DEFAULT_TOLERANCE, dps: int = 40) -> list[Eigenvalue]:
    """Roots with multiplicities and inclusion radii; raises UndecidableError if not isolated."""
    out: list[Eigenvalue] = []
    centers, radii = [], []
    with mpmath.workdps(dps):
        ctx = mpmath.mp
        for factor, mult in square_free_factors(p):
            if len(factor) == 1:
                continue
            cf = [ctx.mpf(c.numerator) / c.denominator for c in factor]
            if len(factor) == 2:
                roots = [-cf[1] / cf[0]]
            else:
                roots = ctx.polyroots(cf, maxsteps=400, extraprec=4 * dps)
            rads = _inclusion_radii(factor, [ctx.mpc(r) for r in roots], ctx)
            for z, r in zip(roots, rads):
                z = ctx.mpc(z)
                centers.append(z)
                radii.append(r)
                out.append(
                    Eigenvalue(complex(z), float(r), mult, ctx.nstr(z, 20))
                )
        for i in range(len(centers)):
            if radii[i] > tolerance:
                raise UndecidableError(f"inclusion radius {float(radii[i]):.3g} exceeds tolerance {tolerance:g}")
            for j in range(i + 1, len(centers)):
                if abs(centers[i] - centers[j]) <= radii[i] + radii[j]:
                    raise UndecidableError("inclusion disks overlap; roots are not isolated")
    return out


# ---------------------------------------------------------------------------
# the eigenvalue check


@dataclass
class SpectralReport:
    char_poly: list[int]
    square_free: bool
    eigenvalues: list[Eigenvalue]
    dominant: int
    fano_index: int
    tolerance: float
    clauses: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(self.clauses.values())

    def to_dict(self) -> dict:
        return {
            "char_poly": list(self.char_poly),
            "square_free": self.square_free,
            "eigenvalues": [
                {
                    "real": f"{e.value.real:.15g}",
                    "imag": f"{e.value.imag:.15g}",
                    "value": e.text,
                    "radius": f"{e.radius:.3e}",
                    "multiplicity": e.multiplicity,
                }
                for e in self.eigenvalues
            ],
            "dominant": self.dominant,
            "fano_index": self.fano_index,
            "tolerance": self.tolerance,
            "clauses": dict(self.clauses),
            "verdict": self.verdict,
        }


def _is_real(e: Eigenvalue, others: Sequence[Eigenvalue]) -> bool:
    """The disk around e meets its mirror image and no other disk meets that mirror."""
    z, r = e.value, e.radius
    if abs(z.imag) > r:
        return False
    zc = z.conjugate()
    return all(abs(zc - o.value) > r + o.radius for o in others)


def check_conjecture_o(
    matrix: Sequence[Sequence[int]],
    fano_index: int,
    tolerance: float = DEFAULT_TOLERANCE,
    refine: float = REFINED_TOLERANCE,
) -> SpectralReport:
    """Decide: the eigenvalue of largest modulus is real, positive and simple; every
    eigenvalue of that modulus is that eigenvalue times an r-th root of unity."""
    if fano_index < 1:
        raise SpectralError("Fano index must be positive")
    p = char_poly_exact(matrix)
    sf = is_square_free(p)
    try:
        roots = certified_roots(p, tolerance, dps=40)
    except UndecidableError:
        try:
            roots = certified_roots(p, refine, dps=80)
            tolerance = refine
        except UndecidableError as exc:
            raise UndecidableError(f"undecidable at tolerance {refine:g}: {exc}") from None
    roots.sort(key=lambda e: (-e.modulus, -e.value.real, -e.value.imag))
    dom = roots[0]
    rest = roots[1:]
    real = _is_real(dom, rest)
    clauses = {
        "square_free": sf,
        "dominant_real": real,
        "dominant_positive": real and dom.value.real - dom.radius > 0,
        "dominant_simple": dom.multiplicity == 1,
    }
    delta = dom.modulus
    # peers: eigenvalues within the radii of delta * zeta, zeta a nontrivial r-th root of unity
    peers = [
        o for o in rest
        if any(
            abs(o.value - delta * complex(mpmath.expjpi(2 * m / fano_index))) <= o.radius + dom.radius
            for m in range(1, fano_index)
        )
    ]
    others = [o for o in rest if o not in peers]
    clauses["strictly_dominant"] = all(delta - dom.radius > o.modulus + o.radius for o in others)
    clauses["peers_are_roots_of_unity"] = len(peers) <= fano_index - 1 and clauses["strictly_dominant"]
    return SpectralReport(p, sf, roots, 0, fano_index, tolerance, clauses)


def fano_index(word: Word) -> int:
    return cohomology.fano_index(word)
