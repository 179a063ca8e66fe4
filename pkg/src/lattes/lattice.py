r"""
Exact 2x2 rational and integer linear algebra.

Every group-theoretic and dynamical computation in this package takes place
in lattice coordinates where the translation lattice is Z^2, so the whole
decision layer reduces to exact arithmetic on 2x2 matrices and 2-vectors
over the rationals (``fractions.Fraction``).  Floating point appears only
in diagnostics and rendering, never in a decision path.

Serialization convention: rational entries are written as strings in
``"p/q"`` notation (plain integers may drop the ``"/q"`` part), which is
exactly the format ``Fraction`` parses and prints, so round-trips are
bit-exact.  Integer matrices serialize as plain JSON integers.

Vectors and matrices are immutable values; every operation returns a new
object, which keeps all higher layers safely shareable between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = [
    "as_fraction",
    "RationalVector2",
    "IntegerMatrix2",
    "RationalMatrix2",
    "matrix_order",
    "is_expanding",
    "coset_representatives",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to an exact Fraction.

    Floats are rejected on purpose: silently converting binary floats to
    rationals is how inexactness sneaks into decision paths.
    """
    if isinstance(value, float):
        raise TypeError("refusing to build exact rationals from floats")
    return Fraction(value)


class RationalVector2:
    """A point or translation in lattice coordinates, with exact entries.

    >>> v = RationalVector2("1/2", 0)
    >>> (v + v).is_integral()
    True
    >>> RationalVector2("-1/4", "5/4").frac()
    RationalVector2(3/4, 1/4)
    """

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = as_fraction(x)
        self.y = as_fraction(y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __eq__(self, other):
        if not isinstance(other, RationalVector2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __lt__(self, other):
        # Lexicographic order; used to pick canonical orbit representatives.
        return (self.x, self.y) < (other.x, other.y)

    def __add__(self, other):
        return RationalVector2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return RationalVector2(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return RationalVector2(-self.x, -self.y)

    def __rmul__(self, scalar):
        s = as_fraction(scalar)
        return RationalVector2(s * self.x, s * self.y)

    def frac(self) -> "RationalVector2":
        """Componentwise fractional part, landing in [0,1)^2."""
        fx = self.x - (self.x.numerator // self.x.denominator)
        fy = self.y - (self.y.numerator // self.y.denominator)
        return RationalVector2(fx, fy)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def to_json(self) -> list:
        return [str(self.x), str(self.y)]

    @classmethod
    def from_json(cls, data) -> "RationalVector2":
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError("vector must be a pair")
        return cls(as_fraction(data[0]), as_fraction(data[1]))

    def __repr__(self):
        return f"RationalVector2({self.x}, {self.y})"


class IntegerMatrix2:
    """A 2x2 integer matrix, row major.

    The linear parts of torus endomorphisms and the rotation generators of
    the wallpaper groups are integer matrices; keeping them in a separate
    type documents that invariant.  ``to_rational`` embeds losslessly.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, rows):
        (a, b), (c, d) = rows
        for entry in (a, b, c, d):
            if not isinstance(entry, int):
                raise TypeError(f"integer matrix entry {entry!r} is not an int")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls) -> "IntegerMatrix2":
        return cls(((1, 0), (0, 1)))

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix2):
            return NotImplemented
        return self.rows() == other.rows()

    def __hash__(self):
        return hash(self.rows())

    def __add__(self, other):
        return IntegerMatrix2(
            ((self.a + other.a, self.b + other.b), (self.c + other.c, self.d + other.d))
        )

    def __sub__(self, other):
        return IntegerMatrix2(
            ((self.a - other.a, self.b - other.b), (self.c - other.c, self.d - other.d))
        )

    def __neg__(self):
        return IntegerMatrix2(((-self.a, -self.b), (-self.c, -self.d)))

    def __mul__(self, other):
        if isinstance(other, IntegerMatrix2):
            return IntegerMatrix2(
                (
                    (self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d),
                    (self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d),
                )
            )
        if isinstance(other, RationalVector2):
            return RationalVector2(
                self.a * other.x + self.b * other.y,
                self.c * other.x + self.d * other.y,
            )
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers of an integer matrix are not integral in general")
        result = IntegerMatrix2.identity()
        for _ in range(exponent):
            result = result * self
        return result

    def to_rational(self) -> "RationalMatrix2":
        return RationalMatrix2(self.rows())

    def to_json(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def from_json(cls, data) -> "IntegerMatrix2":
        if (
            not isinstance(data, (list, tuple))
            or len(data) != 2
            or any(not isinstance(row, (list, tuple)) or len(row) != 2 for row in data)
        ):
            raise ValueError("integer matrix must be a 2x2 array")
        return cls(((data[0][0], data[0][1]), (data[1][0], data[1][1])))

    def __repr__(self):
        return f"IntegerMatrix2((({self.a}, {self.b}), ({self.c}, {self.d})))"


class RationalMatrix2:
    """A 2x2 matrix with exact rational entries.

    >>> m = RationalMatrix2((("1/2", 0), (0, "1/2")))
    >>> m.inverse().det()
    Fraction(4, 1)
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, rows):
        (a, b), (c, d) = rows
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.c = as_fraction(c)
        self.d = as_fraction(d)

    @classmethod
    def identity(cls) -> "RationalMatrix2":
        return cls(((1, 0), (0, 1)))

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix2):
            return NotImplemented
        return self.rows() == other.rows()

    def __hash__(self):
        return hash(self.rows())

    def __add__(self, other):
        return RationalMatrix2(
            ((self.a + other.a, self.b + other.b), (self.c + other.c, self.d + other.d))
        )

    def __sub__(self, other):
        return RationalMatrix2(
            ((self.a - other.a, self.b - other.b), (self.c - other.c, self.d - other.d))
        )

    def __mul__(self, other):
        if isinstance(other, RationalMatrix2):
            return RationalMatrix2(
                (
                    (self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d),
                    (self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d),
                )
            )
        if isinstance(other, IntegerMatrix2):
            return self * other.to_rational()
        if isinstance(other, RationalVector2):
            return RationalVector2(
                self.a * other.x + self.b * other.y,
                self.c * other.x + self.d * other.y,
            )
        return NotImplemented

    def inverse(self) -> "RationalMatrix2":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix2(
            ((self.d / det, -self.b / det), (-self.c / det, self.a / det))
        )

    def __pow__(self, exponent: int):
        base = self if exponent >= 0 else self.inverse()
        result = RationalMatrix2.identity()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def is_integral(self) -> bool:
        return all(entry.denominator == 1 for entry in (self.a, self.b, self.c, self.d))

    def to_integer(self) -> IntegerMatrix2:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntegerMatrix2(
            ((int(self.a), int(self.b)), (int(self.c), int(self.d)))
        )

    def to_json(self) -> list:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix2":
        if (
            not isinstance(data, (list, tuple))
            or len(data) != 2
            or any(not isinstance(row, (list, tuple)) or len(row) != 2 for row in data)
        ):
            raise ValueError("rational matrix must be a 2x2 array")
        return cls(
            (
                (as_fraction(data[0][0]), as_fraction(data[0][1])),
                (as_fraction(data[1][0]), as_fraction(data[1][1])),
            )
        )

    def __repr__(self):
        return f"RationalMatrix2((({self.a}, {self.b}), ({self.c}, {self.d})))"


def matrix_order(m: IntegerMatrix2, limit: int = 12) -> int | None:
    """Smallest n >= 1 with m**n equal to the identity, None if none up to limit.

    Finite-order integer 2x2 matrices have order 1, 2, 3, 4 or 6, so the
    default search bound is generous.

    >>> matrix_order(IntegerMatrix2(((0, -1), (1, 0))))
    4
    >>> matrix_order(IntegerMatrix2(((2, 0), (0, 2)))) is None
    True
    """
    power = m
    for n in range(1, limit + 1):
        if power == IntegerMatrix2.identity():
            return n
        power = power * m
    return None


def is_expanding(m: IntegerMatrix2) -> bool:
    """Whether both characteristic roots lie strictly outside the unit circle.

    Decided exactly from the trace t and determinant d.  Inverting the
    variable turns the question into a root-location test inside the unit
    disk for z^2 - (t/d) z + 1/d, and the Schur-Cohn (Jury) conditions for
    a monic real quadratic z^2 + a1 z + a0, namely |a0| < 1 and
    |a1| < 1 + a0, reduce to the integer inequalities

        |d| > 1   and   |t| < |d| + sign(d).

    The d = 0 case (a root at the origin) is never expanding.

    >>> is_expanding(IntegerMatrix2(((1, 1), (-1, 1))))
    True
    >>> is_expanding(IntegerMatrix2(((3, 0), (0, 1))))
    False
    """
    d = m.det()
    t = m.trace()
    if abs(d) <= 1:
        return False
    return abs(t) < abs(d) + (1 if d > 0 else -1)


def coset_representatives(m: IntegerMatrix2) -> list[RationalVector2]:
    """Representatives of Z^2 / m(Z^2), exactly |det m| of them.

    Since det(m) * Z^2 is contained in m(Z^2) (multiply by the adjugate),
    the box [0, |det m|)^2 already covers every residue class, so a lex
    scan suffices.  Two integer vectors are congruent mod m(Z^2) exactly
    when their images under m^-1 have equal fractional parts, which gives
    each candidate a constant-time class key.
    """
    det = m.det()
    if det == 0:
        raise ValueError("matrix is singular, the sublattice has infinite index")
    return list(_coset_tuple(m))


@lru_cache(maxsize=256)
def _coset_tuple(m: IntegerMatrix2) -> tuple[RationalVector2, ...]:
    index = abs(m.det())
    inv = m.to_rational().inverse()
    reps: list[RationalVector2] = []
    seen: set[RationalVector2] = set()
    for i in range(index):
        if len(reps) == index:
            break
        for j in range(index):
            key = (inv * RationalVector2(i, j)).frac()
            if key not in seen:
                seen.add(key)
                reps.append(RationalVector2(i, j))
                if len(reps) == index:
                    break
    if len(reps) != index:
        raise AssertionError("coset enumeration did not find |det| classes")
    return tuple(reps)
