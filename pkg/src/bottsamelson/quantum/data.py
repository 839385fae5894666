"""Reference data for Z(a1, a2, a1) in type A2.

Everything here is an input datum, not computed: the names of the effective
cone generators, invariant values obtained from moduli-space geometry, curve
neighborhood components, the x/y/z symbol names of the unknown invariants, and
the reference Chevalley matrices, presentation and Giambelli formulas that the
pipeline is checked against.

Curve classes below are written in generator coordinates ``(a, b, c)`` meaning
``a*beta1 + b*beta2 + c*beta3``.
"""

from __future__ import annotations

CERTIFIED_TYPE = "A2"
CERTIFIED_LETTERS = (1, 2, 1)

# beta1 = [Z_010], beta2 = [Z_001], beta3 = [Z_100] - [Z_001]
GENERATORS = {
    "beta1": (0, 1, 0),
    "beta2": (0, 0, 1),
    "beta3": (1, 0, -1),
}
GENERATOR_ORDER = ("beta1", "beta2", "beta3")

EXPECTED_UNKNOWNS = 111
EXPECTED_COMMUTATOR_ENTRIES = 192
FREE_PARAMETER = "y3"
FREE_PARAMETER_VALUE = 1

PT = "pt"  # the point class: sigma_111 as an insertion, [Z_000] as a cycle

# (value, reason) for invariants computed from the geometry of moduli spaces.
# Keys: (sigma insertion or None for one-point, cycle insertion, beta coords).
SEEDED = {
    # ev: M_{0,1}(Z, beta3) -> Z_101 is an isomorphism, so these are integrals over Z_101
    (None, "100", (0, 0, 1)): (-1, "one-point beta3 invariant: integral of [Z_100] over Z_101"),
    (None, "010", (0, 0, 1)): (1, "one-point beta3 invariant: integral of [Z_010] over Z_101"),
    (None, "001", (0, 0, 1)): (0, "one-point beta3 invariant: integral of [Z_001] over Z_101"),
    # exactly one fiber (class beta2) passes through each point of Z
    (None, PT, (0, 1, 0)): (1, "ev: M_{0,1}(Z, beta2) -> Z is an isomorphism"),
}

# Curve neighborhoods Gamma_beta3(Z_eps) as (component subvariety, dimension).
NEIGHBORHOODS = {
    ("110", (0, 0, 1)): [("101", 2)],
    ("101", (0, 0, 1)): [("101", 2)],
    ("011", (0, 0, 1)): [("101", 2)],
    ("100", (0, 0, 1)): [("101", 2)],
    ("001", (0, 0, 1)): [("101", 2)],
    ("010", (0, 0, 1)): [(None, 1)],  # the theta-fiber over x_e joining x_000 and x_101
}

# Fixed-point sets of known curve neighborhoods.
NEIGHBORHOOD_EXAMPLES = [
    ("100", (0, 0, 1), ["000", "100", "001", "101"], "101"),
    ("010", (0, 0, 1), ["000", "101"], None),
    ("001", (0, 0, 1), ["000", "100", "001", "101"], "101"),
    ("100", (1, 0, 0), ["000", "100", "010", "110"], "110"),
]

_DIV = ("100", "010", "001")
_CODIM2 = ("110", "101", "011")

# Symbol blocks in naming order: (letter, first index, sigma insertions,
# cycle insertions, beta).  A block enumerates sigma-major, cycle-minor.
_SYMBOL_BLOCKS = [
    ("x", 1, [None], [PT], (1, 0, 1)),
    ("x", 2, [None], [PT], (0, 0, 2)),
    ("x", 3, ["101"], _CODIM2, (0, 0, 1)),
    ("x", 6, _CODIM2, _DIV, (1, 0, 1)),
    ("x", 15, _CODIM2, _DIV, (0, 0, 2)),
    ("x", 24, _CODIM2, [PT], (2, 0, 1)),
    ("x", 27, _CODIM2, [PT], (1, 0, 2)),
    ("x", 30, _CODIM2, [PT], (0, 1, 1)),
    ("x", 33, _CODIM2, [PT], (0, 0, 3)),
    ("x", 36, [PT], _CODIM2, (1, 0, 1)),
    ("x", 39, [PT], _CODIM2, (0, 0, 2)),
    ("x", 42, [PT], _DIV, (2, 0, 1)),
    ("x", 45, [PT], _DIV, (1, 0, 2)),
    ("x", 48, [PT], _DIV, (0, 1, 1)),
    ("x", 51, [PT], _DIV, (0, 0, 3)),
    ("x", 54, [PT], [PT], (3, 0, 1)),
    ("x", 55, [PT], [PT], (2, 0, 2)),
    ("x", 56, [PT], [PT], (1, 0, 3)),
    ("x", 57, [PT], [PT], (0, 1, 2)),
    ("x", 58, [PT], [PT], (0, 0, 4)),
    ("x", 59, [PT], [PT], (1, 1, 1)),
    ("y", 1, [None], _DIV, (1, 0, 0)),
    ("y", 4, [None], [PT], (2, 0, 0)),
    ("y", 5, _CODIM2, _CODIM2, (1, 0, 0)),
    ("y", 14, _CODIM2, _DIV, (2, 0, 0)),
    ("y", 23, _CODIM2, [PT], (1, 1, 0)),
    ("y", 26, _CODIM2, [PT], (3, 0, 0)),
    ("y", 29, [PT], _CODIM2, (2, 0, 0)),
    ("y", 32, [PT], _DIV, (1, 1, 0)),
    ("y", 35, [PT], _DIV, (3, 0, 0)),
    ("y", 38, [PT], [PT], (2, 1, 0)),
    ("y", 39, [PT], [PT], (4, 0, 0)),
    ("z", 1, _CODIM2, _DIV, (0, 1, 0)),
    ("z", 10, [PT], _CODIM2, (0, 1, 0)),
    ("z", 13, [PT], [PT], (0, 2, 0)),
]


def symbol_table() -> dict[str, tuple]:
    """Symbol name -> (sigma insertion or None, cycle insertion, beta coords)."""
    table: dict[str, tuple] = {}
    for letter, start, firsts, seconds, beta in _SYMBOL_BLOCKS:
        idx = start
        for first in firsts:
            for second in seconds:
                name = f"{letter}{idx}"
                if name in table:
                    raise ValueError(f"duplicate symbol {name}")
                table[name] = (first, second, beta)
                idx += 1
    return table


def symbol_sort_key(name: str) -> tuple[int, int]:
    return ("xyz".index(name[0]), int(name[1:]))


# Reference Chevalley matrices; rows/columns in basis order
# s000, s100, s010, s001, s110, s101, s011, s111.
REFERENCE_MATRICES = {
    "A": [
        ["0", "q1*q3*y3", "q1*q3*y3", "-q1*q3*y3", "0", "0", "0", "q1*q2*q3*y3"],
        ["1", "-q3", "0", "q3", "q1*q3*y3", "q1*q3*y3", "0", "0"],
        ["0", "q3", "0", "-q3", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "q1*q3*y3", "q1*q3*y3", "0", "0"],
        ["0", "0", "1", "0", "0", "q3", "0", "0"],
        ["0", "0", "0", "1", "0", "-q3", "0", "0"],
        ["0", "0", "0", "0", "0", "q3", "0", "q1*q3*y3"],
        ["0", "0", "0", "0", "0", "0", "1", "0"],
    ],
    "B": [
        ["0", "q1*q3*y3", "q1*q3*y3", "-q1*q3*y3", "0", "0", "q1*q2*y3", "q1*q2*q3*y3"],
        ["0", "0", "2*q1*y3", "0", "q1*q3*y3", "q1*q3*y3", "0", "q1*q2*y3"],
        ["1", "0", "-q1*y3", "0", "0", "0", "0", "0"],
        ["0", "0", "q1*y3", "0", "q1*q3*y3", "q1*q3*y3", "0", "0"],
        ["0", "1", "1", "0", "-q1*y3", "0", "0", "0"],
        ["0", "0", "0", "0", "q1*y3", "0", "0", "0"],
        ["0", "0", "0", "1", "0", "0", "0", "q1*q3*y3"],
        ["0", "0", "0", "0", "0", "1", "1", "0"],
    ],
    "C": [
        ["0", "-q1*q3*y3", "-q1*q3*y3", "q1*q3*y3+q2", "0", "0", "q1*q2*y3", "0"],
        ["0", "q3", "0", "-q3", "-q1*q3*y3", "-q1*q3*y3+q2", "0", "q1*q2*y3"],
        ["0", "-q3", "0", "q3", "0", "0", "q2", "0"],
        ["1", "0", "0", "0", "-q1*q3*y3", "-q1*q3*y3", "0", "0"],
        ["0", "0", "0", "0", "0", "-q3", "0", "q2"],
        ["0", "1", "0", "-2", "0", "q3", "0", "0"],
        ["0", "0", "1", "1", "0", "-q3", "0", "-q1*q3*y3"],
        ["0", "0", "0", "0", "1", "1", "-1", "0"],
    ],
}
MATRIX_FOR_GENERATOR = {1: "A", 2: "B", 3: "C"}

# Presentation: sigma_(j)^2 in the sigma basis (dict basis label -> coefficient in q).
REFERENCE_RELATIONS = {
    1: {"000": "q1*q3", "100": "-q3", "010": "q3"},
    2: {"000": "q1*q3", "100": "2*q1", "010": "-q1", "001": "q1", "110": "1"},
    3: {"000": "q1*q3+q2", "100": "-q3", "010": "q3", "101": "-2", "011": "1"},
}

# Giambelli formulas: basis class -> polynomial in the generators s1, s2, s3 and q.
REFERENCE_GIAMBELLI = {
    "110": "s1*s2 - q1*q3",
    "101": "s1*s3 - q3*s1 + q3*s2 + q1*q3",
    "011": "s2*s3 + q1*q3",
    "111": "s1*s2*s3 + q1*q3*s1",
}

# The operator of quantum multiplication by c_1 at q1 = q2 = q3 = 1 (reference copy).
REFERENCE_C1_HAT = [
    [0, 2, 2, -2, 0, 0, 3, 4],
    [3, -1, 2, 1, 2, 4, 0, 3],
    [1, 1, -1, -1, 0, 0, 2, 0],
    [2, 0, 1, 0, 2, 2, 0, 0],
    [0, 1, 4, 0, -1, 1, 0, 2],
    [0, 2, 0, -1, 1, -1, 0, 0],
    [0, 0, 2, 3, 0, 1, 0, 2],
    [0, 0, 0, 0, 2, 3, 2, 0],
]
