"""Shared helpers: seeded generators, canonical data, random valid data."""

import random
from fractions import Fraction

import pytest

from lattes import (
    AffineMap,
    IntegerMatrix2,
    QuotientMapDatum,
    RationalVector2,
    is_valid_lattes_datum,
    make_group,
)

BASE_SEED = 24301

# One datum per point group order, with the signature it must produce.
CANONICAL_SPECS = (
    ("p2", ((2, 0), (0, 2)), "(2,2,2,2)"),
    ("p3", ((2, 0), (0, 2)), "(3,3,3)"),
    ("p4", ((1, 1), (-1, 1)), "(2,4,4)"),
    ("p6", ((2, 0), (0, 2)), "(2,3,6)"),
)

# Parabolic but not expanding: eigenvalues 3 and 1.
WITNESS_SPEC = ("p2", ((3, 0), (0, 1)))


def build_datum(kind, rows, translation=(0, 0)):
    group = make_group(kind)
    shift = RationalVector2(Fraction(translation[0]), Fraction(translation[1]))
    return QuotientMapDatum(group, AffineMap(IntegerMatrix2(rows), shift))


def canonical_datums():
    return [build_datum(kind, rows) for kind, rows, _ in CANONICAL_SPECS]


def witness_datum():
    return build_datum(*WITNESS_SPEC)


# Translation classes that can satisfy the integrality condition, per kind.
TRANSLATION_CHOICES = {
    "p2": (
        (0, 0),
        (Fraction(1, 2), 0),
        (0, Fraction(1, 2)),
        (Fraction(1, 2), Fraction(1, 2)),
    ),
    "p3": ((0, 0), (Fraction(1, 3), Fraction(2, 3)), (Fraction(2, 3), Fraction(1, 3))),
    "p4": ((0, 0), (Fraction(1, 2), Fraction(1, 2))),
    "p6": ((0, 0),),
}


def random_valid_datum(rng, kinds=("p2", "p3", "p4", "p6")):
    """A random valid datum whose matrix entries lie in [-4, 4].

    For p3, p4 and p6 every orientation-preserving choice of linear part
    commutes with the rotation, so the matrix is drawn from a*I + b*R; p2
    admits any integer matrix of determinant > 1.  Candidates are rejected
    until the exact validity test accepts one.
    """
    identity = IntegerMatrix2.identity()
    while True:
        kind = rng.choice(list(kinds))
        group = make_group(kind)
        if kind == "p2":
            matrix = IntegerMatrix2(
                (
                    (rng.randint(-4, 4), rng.randint(-4, 4)),
                    (rng.randint(-4, 4), rng.randint(-4, 4)),
                )
            )
        else:
            a, b = rng.randint(-4, 4), rng.randint(-4, 4)
            rotation = group.rotation
            matrix = IntegerMatrix2(
                (
                    (a + b * rotation.a, b * rotation.b),
                    (b * rotation.c, a + b * rotation.d),
                )
            )
        if matrix.det() <= 1:
            continue
        if any(abs(entry) > 4 for row in matrix.rows() for entry in row):
            continue
        shift = rng.choice(TRANSLATION_CHOICES[kind])
        affine = AffineMap(matrix, RationalVector2(Fraction(shift[0]), Fraction(shift[1])))
        if is_valid_lattes_datum(group, affine):
            return QuotientMapDatum(group, affine)


def random_integer_matrix(rng, span=5):
    return IntegerMatrix2(
        (
            (rng.randint(-span, span), rng.randint(-span, span)),
            (rng.randint(-span, span), rng.randint(-span, span)),
        )
    )


def spectral_expanding(matrix, threshold=1e-9, exclusion=1e-6):
    """Numeric eigenvalue oracle.

    Returns (verdict, near_unit): verdict is True when every eigenvalue
    modulus exceeds 1 + threshold, near_unit flags a modulus within
    `exclusion` of the unit circle, where float arithmetic cannot be
    trusted to match the exact test.
    """
    import numpy as np

    moduli = np.abs(np.linalg.eigvals(np.array(matrix.rows(), dtype=float)))
    near_unit = bool(np.any(np.abs(moduli - 1.0) < exclusion))
    return bool(np.all(moduli > 1.0 + threshold)), near_unit


@pytest.fixture
def rng():
    return random.Random(BASE_SEED)


# Acceptance tests record one line per criterion; the hook prints them in
# the terminal summary so the result survives output capture.
_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.line(line)
