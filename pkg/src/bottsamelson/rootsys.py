"""Exact root-system, Weyl-group and subword arithmetic.

Roots are integer vectors in the simple-root basis.  Weyl group elements are
integer matrices acting on those coordinates.  Indices of simple roots are
1-based throughout, matching the letters of a Bott-Samelson word.

Cartan matrix orientation: ``entry(i, j) = (alpha_j, alpha_i^vee)``, i.e. the
usual ``a_ij = <alpha_i^vee, alpha_j>``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]
RootVector = tuple[int, ...]

CARTAN_DIR_ENV = "BOTTSAMELSON_CARTAN_DIR"

# closure bound for positive_roots; E8 has 120 positive roots
MAX_ROOTS = 4096


class RootSystemError(ValueError):
    """Bad Cartan data, root index or word letter."""


@dataclass(frozen=True)
class CartanMatrix:
    entries: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise RootSystemError("Cartan matrix must have positive rank")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise RootSystemError("Cartan matrix must be square")
            if row[i] != 2:
                raise RootSystemError(f"diagonal entry ({i + 1},{i + 1}) is {row[i]}, expected 2")
            for j, a in enumerate(row):
                if i == j:
                    continue
                if a > 0:
                    raise RootSystemError(f"off-diagonal entry ({i + 1},{j + 1}) is positive")
                if (a == 0) != (self.entries[j][i] == 0):
                    raise RootSystemError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) disagree on zero")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        """1-based access to (alpha_j, alpha_i^vee)."""
        return self.entries[i - 1][j - 1]

    def pairing(self, i: int, j: int) -> int:
        """(alpha_i, alpha_j^vee)."""
        self.check_index(i)
        self.check_index(j)
        return self.entries[j - 1][i - 1]

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"simple root index {i} out of range 1..{self.rank}")

    def to_text(self) -> str:
        lines = [str(self.rank)]
        lines += [" ".join(str(a) for a in row) for row in self.entries]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cartan presets


def _chain(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _freeze(m: list[list[int]], name: str) -> CartanMatrix:
    return CartanMatrix(tuple(tuple(r) for r in m), name)


def _exceptional_e(n: int) -> CartanMatrix:
    # Bourbaki numbering: 1-3-4-5-...-n with 2 attached to 4
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    bonds = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
    for a, b in bonds:
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return _freeze(m, f"E{n}")


def cartan_preset(name: str) -> CartanMatrix:
    """Cartan matrix for a finite type such as ``A2``, ``B3``, ``D4``, ``G2``."""
    match = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", name)
    if not match:
        raise RootSystemError(f"unrecognised Cartan type {name!r}")
    letter, n = match.group(1).upper(), int(match.group(2))
    label = f"{letter}{n}"
    if letter == "A" and n >= 1:
        return _freeze(_chain(n), label)
    if letter == "B" and n >= 2:
        m = _chain(n)
        m[n - 1][n - 2] = -2
        return _freeze(m, label)
    if letter == "C" and n >= 2:
        m = _chain(n)
        m[n - 2][n - 1] = -2
        return _freeze(m, label)
    if letter == "D" and n >= 3:
        m = _chain(n)
        m[n - 2][n - 1] = m[n - 1][n - 2] = 0
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
        return _freeze(m, label)
    if letter == "E" and n in (6, 7, 8):
        return _exceptional_e(n)
    if letter == "F" and n == 4:
        m = _chain(4)
        m[2][1] = -2
        return _freeze(m, label)
    if letter == "G" and n == 2:
        return _freeze([[2, -3], [-1, 2]], label)
    raise RootSystemError(f"no finite-type Cartan preset {label}")


def parse_cartan_text(text: str, name: str = "") -> CartanMatrix:
    """Parse the plain-text format: a rank line followed by ``rank`` integer rows."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise RootSystemError("empty Cartan matrix file")
    try:
        rank = int(rows[0][0])
        body = [[int(tok) for tok in r] for r in rows[1:]]
    except ValueError as exc:
        raise RootSystemError(f"non-integer entry in Cartan matrix file: {exc}") from None
    if len(rows[0]) != 1 or len(body) != rank:
        raise RootSystemError(f"expected a rank line and {rank} rows")
    return CartanMatrix(tuple(tuple(r) for r in body), name)


def load_cartan(spec: str) -> CartanMatrix:
    """Resolve a preset name, a file path, or a file in ``$BOTTSAMELSON_CARTAN_DIR``."""
    path = Path(spec)
    if path.is_file():
        return parse_cartan_text(path.read_text(), path.stem)
    preset_dir = os.environ.get(CARTAN_DIR_ENV)
    if preset_dir:
        for candidate in (Path(preset_dir) / spec, Path(preset_dir) / f"{spec}.txt"):
            if candidate.is_file():
                return parse_cartan_text(candidate.read_text(), spec)
    return cartan_preset(spec)


# ---------------------------------------------------------------------------
# Words and subwords


@dataclass(frozen=True)
class Word:
    cartan: CartanMatrix
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if not 1 <= a <= self.cartan.rank:
                raise RootSystemError(f"letter {a} is not a simple root index of rank {self.cartan.rank}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def prefix(self, m: int) -> "Word":
        return Word(self.cartan, self.letters[:m])

    def subwords(self) -> list["Subword"]:
        """All 2^n subword indices in lexicographic order."""
        return [Subword(bits) for bits in product((0, 1), repeat=len(self))]

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))


def make_word(cartan: CartanMatrix | str, letters: Iterable[int] | str) -> Word:
    if isinstance(cartan, str):
        cartan = load_cartan(cartan)
    if isinstance(letters, str):
        letters = [int(tok) for tok in letters.replace(" ", "").split(",") if tok]
    return Word(cartan, tuple(letters))


@dataclass(frozen=True, order=True)
class Subword:
    """A 0/1 sequence indexing a T-fixed point (or a sub Bott-Samelson variety)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise RootSystemError(f"subword bits must be 0 or 1, got {self.bits}")

    @classmethod
    def parse(cls, text: str) -> "Subword":
        text = text.strip()
        if not re.fullmatch(r"[01]*", text):
            raise RootSystemError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def unit(cls, n: int, i: int) -> "Subword":
        """The single-one index ``(i)`` of length n (1-based)."""
        return cls(tuple(1 if k == i else 0 for k in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"Subword('{self}')"

    @property
    def length(self) -> int:
        return sum(self.bits)

    @property
    def support(self) -> frozenset[int]:
        """1-based positions of the ones."""
        return frozenset(i + 1 for i, b in enumerate(self.bits) if b)

    def transverse(self, other: "Subword") -> bool:
        return not (self.support & other.support)

    def contained_in(self, other: "Subword") -> bool:
        return self.support <= other.support

    def extend(self, bit: int) -> "Subword":
        return Subword(self.bits + (bit,))

    def truncate(self, m: Optional[int] = None) -> "Subword":
        m = len(self.bits) - 1 if m is None else m
        return Subword(self.bits[:m])

    def pad(self, n: int) -> "Subword":
        """Zero-extension to length n (pullback identification)."""
        return Subword(self.bits + (0,) * (n - len(self.bits)))

    def __add__(self, other: "Subword") -> "Subword":
        if not self.transverse(other):
            raise RootSystemError(f"{self} and {other} are not transverse")
        return Subword(tuple(a | b for a, b in zip(self.bits, other.bits)))


def as_subword(value: Subword | str | Sequence[int]) -> Subword:
    if isinstance(value, Subword):
        return value
    if isinstance(value, str):
        return Subword.parse(value)
    return Subword(tuple(value))


# ---------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix

    @classmethod
    def identity(cls, rank: int) -> "WeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        return WeylElement(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        )

    def apply(self, v: RootVector) -> RootVector:
        return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in self.matrix)

    def is_identity(self) -> bool:
        return self == WeylElement.identity(len(self.matrix))

    def inverse(self) -> "WeylElement":
        # finite order: the inverse is a power of the element
        power = self
        prev = WeylElement.identity(len(self.matrix))
        for _ in range(MAX_ROOTS):
            if power.is_identity():
                return prev
            prev = power
            power = power * self
        raise RootSystemError("element of infinite order; Cartan matrix is not of finite type")


def _simple_reflection(cartan: CartanMatrix, j: int) -> WeylElement:
    n = cartan.rank
    rows = []
    for i in range(n):
        # s_j(v)_i = v_i - [i == j] * sum_k v_k (alpha_k, alpha_j^vee)
        rows.append(
            tuple(int(i == k) - (cartan.entry(j, k + 1) if i == j - 1 else 0) for k in range(n))
        )
    return WeylElement(tuple(rows))


def simple_reflection(word: Word | CartanMatrix, j: int) -> WeylElement:
    cartan = word.cartan if isinstance(word, Word) else word
    cartan.check_index(j)
    return _simple_reflection(cartan, j)


def simple_root(rank: int, j: int) -> RootVector:
    return tuple(int(k == j - 1) for k in range(rank))


def cartan_pairing(word: Word | CartanMatrix, i: int, j: int) -> int:
    """(alpha_i, alpha_j^vee)."""
    cartan = word.cartan if isinstance(word, Word) else word
    return cartan.pairing(i, j)


def coroot_pairing(cartan: CartanMatrix, v: RootVector, j: int) -> int:
    """(v, alpha_j^vee) for v in the simple-root basis."""
    return sum(c * cartan.entry(j, k + 1) for k, c in enumerate(v))


def reflect(word: Word | CartanMatrix, j: int, v: RootVector) -> RootVector:
    """s_j(v) = v - (v, alpha_j^vee) alpha_j."""
    cartan = word.cartan if isinstance(word, Word) else word
    cartan.check_index(j)
    c = coroot_pairing(cartan, v, j)
    return tuple(x - c if k == j - 1 else x for k, x in enumerate(v))


def weyl_prefix(word: Word, eps: Subword, k: int) -> WeylElement:
    """w_k(eps): ordered product of s_{a_i} over i <= k with eps_i = 1."""
    eps = as_subword(eps)
    if len(eps) != len(word):
        raise RootSystemError(f"subword {eps} does not match word length {len(word)}")
    if not 0 <= k <= len(word):
        raise RootSystemError(f"prefix length {k} out of range")
    w = WeylElement.identity(word.rank)
    for i in range(k):
        if eps.bits[i]:
            w = w * _simple_reflection(word.cartan, word.letters[i])
    return w


def weyl_of(word: Word, eps: Subword) -> WeylElement:
    """w(eps) = w_n(eps)."""
    return weyl_prefix(word, eps, len(word))


def root_at(word: Word, eps: Subword, k: int) -> RootVector:
    """eps(alpha_k) = w_k(eps) alpha_{a_k}."""
    if not 1 <= k <= len(word):
        raise RootSystemError(f"position {k} out of range 1..{len(word)}")
    return weyl_prefix(word, eps, k).apply(simple_root(word.rank, word.letters[k - 1]))


def is_positive(v: RootVector) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


def normalize_positive(v: RootVector) -> RootVector:
    return v if is_positive(v) else tuple(-c for c in v)


@dataclass(frozen=True)
class _RootData:
    positive: tuple[RootVector, ...]
    reflections: dict  # WeylElement -> positive root


@lru_cache(maxsize=None)
def _root_data(cartan: CartanMatrix) -> _RootData:
    n = cartan.rank
    simple = [_simple_reflection(cartan, j) for j in range(1, n + 1)]
    # each root is stored with (w, i, w^-1) such that root = w alpha_i
    found: dict[RootVector, tuple[WeylElement, int, WeylElement]] = {}
    frontier = []
    ident = WeylElement.identity(n)
    for i in range(1, n + 1):
        r = simple_root(n, i)
        found[r] = (ident, i, ident)
        frontier.append(r)
    while frontier:
        nxt = []
        for r in frontier:
            w, i, winv = found[r]
            for j in range(1, n + 1):
                s = simple[j - 1]
                image = s.apply(r)
                if image not in found:
                    found[image] = (s * w, i, winv * s)
                    nxt.append(image)
                    if len(found) > 2 * MAX_ROOTS:
                        raise RootSystemError("root closure exceeded bound; Cartan matrix is not of finite type")
        frontier = nxt
    positive = tuple(sorted((r for r in found if is_positive(r)), key=lambda r: (sum(r), r)))
    reflections = {}
    for r in positive:
        w, i, winv = found[r]
        reflections[w * simple[i - 1] * winv] = r
    return _RootData(positive, reflections)


def positive_roots(word: Word | CartanMatrix) -> tuple[RootVector, ...]:
    """Positive roots ordered by height, then lexicographically."""
    cartan = word.cartan if isinstance(word, Word) else word
    return _root_data(cartan).positive


def is_root(word: Word | CartanMatrix, v: RootVector) -> bool:
    return normalize_positive(v) in set(positive_roots(word))


def reflection_root(word: Word | CartanMatrix, u: WeylElement) -> Optional[RootVector]:
    """The positive root gamma with s_gamma = u, or None if u is not a reflection."""
    cartan = word.cartan if isinstance(word, Word) else word
    return _root_data(cartan).reflections.get(u)


def iter_weyl_words(word: Word | CartanMatrix, max_length: int) -> Iterator[tuple[tuple[int, ...], WeylElement]]:
    """Products of at most ``max_length`` simple reflections (with repetition)."""
    cartan = word.cartan if isinstance(word, Word) else word
    for length in range(max_length + 1):
        for letters in product(range(1, cartan.rank + 1), repeat=length):
            w = WeylElement.identity(cartan.rank)
            for j in letters:
                w = w * _simple_reflection(cartan, j)
            yield letters, w
