r"""
Integer-linear affine maps of the plane and their interaction with a
wallpaper group.

An affine map here is u -> L u + a with an integer linear part L
(det L != 0) and a rational translation a.  Such a map descends to the
quotient of the plane by a wallpaper group G exactly when it normalizes G,
meaning A g A^(-1) lies in G for every g in G; together with det L > 1
that is the validity condition for the quotient construction downstream.

Everything decision-like is exact.  The only floating point lives in
``contraction_check``, which is an explicitly numeric diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .crystal import CrystGroup, GroupElement, geometric_norm_squared, embed_point
from .lattice import IntegerMatrix2, RationalMatrix2, RationalVector2, as_fraction

__all__ = [
    "AffineMap",
    "DatumCheck",
    "is_valid_lattes_datum",
    "conjugated_element",
    "conjugate_translation",
    "degree_of_endomorphism",
    "translated_lifts",
    "coarse_bound",
    "ContractionReport",
    "contraction_check",
]


class AffineMap:
    """The map u -> L u + a with integer L, det L != 0, and rational a.

    Serializes as ``{"L": [[int,int],[int,int]], "a": ["p/q", "p/q"]}``.
    """

    __slots__ = ("linear_part", "translation")

    def __init__(self, linear_part: IntegerMatrix2, translation: RationalVector2 | None = None):
        if linear_part.det() == 0:
            raise ValueError("linear part is singular")
        self.linear_part = linear_part
        self.translation = RationalVector2(0, 0) if translation is None else translation

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(IntegerMatrix2.identity(), RationalVector2(0, 0))

    def apply(self, u: RationalVector2) -> RationalVector2:
        return self.linear_part * u + self.translation

    def inverse_apply(self, v: RationalVector2) -> RationalVector2:
        """Exact preimage under the map; the inverse has rational linear part."""
        return self.linear_part.to_rational().inverse() * (v - self.translation)

    def compose(self, other: "AffineMap") -> "AffineMap":
        return AffineMap(
            self.linear_part * other.linear_part,
            self.linear_part * other.translation + self.translation,
        )

    def iterate(self, m: int) -> "AffineMap":
        """The m-th iterate, with linear part L^m and translation
        (L^(m-1) + ... + L + I) a.  m = 0 gives the identity."""
        if m < 0:
            raise ValueError("iterate count must be non-negative")
        result = AffineMap.identity()
        for _ in range(m):
            result = self.compose(result)
        return result

    def degree(self) -> int:
        """Topological degree of the induced torus endomorphism, det(L)."""
        return self.linear_part.det()

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return (
            self.linear_part == other.linear_part and self.translation == other.translation
        )

    def __hash__(self):
        return hash((self.linear_part, self.translation))

    def to_json(self) -> dict:
        return {"L": self.linear_part.to_json(), "a": self.translation.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "AffineMap":
        if not isinstance(data, dict) or "L" not in data or "a" not in data:
            raise ValueError('affine map must be {"L": 2x2 ints, "a": ["p/q", "p/q"]}')
        return cls(IntegerMatrix2.from_json(data["L"]), RationalVector2.from_json(data["a"]))

    def __repr__(self):
        return f"AffineMap(L={self.linear_part.rows()}, a=({self.translation.x}, {self.translation.y}))"


@dataclass(frozen=True)
class DatumCheck:
    """Validity verdict for a (group, affine map) pair, with a diagnostic.

    ``conjugation_exponent`` is the k with L R L^(-1) = R^k when valid.
    Truthiness follows ``ok`` so the check reads naturally in conditions.
    """

    ok: bool
    reason: str | None = None
    conjugation_exponent: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_valid_lattes_datum(group: CrystGroup, affine: AffineMap) -> DatumCheck:
    """Decide whether the affine map descends to the group quotient with
    degree at least two.

    Three exact conditions:

    (a) det(L) > 1;
    (b) L R L^(-1) = R^k for some k, so conjugation preserves the rotation
        subgroup (conjugating a lattice translation lands in L(Z^2) by
        itself, no condition needed);
    (c) (I - R^(k j)) a is integral for every j, which makes the
        translation part of every conjugate A g A^(-1) a lattice vector.

    Condition (c) as stated is a finite complete test, not a sampled one:
    the conjugate of (j, gamma) has translation a - R^(k j) a + L gamma.
    """
    linear = affine.linear_part
    det = linear.det()
    if det <= 1:
        return DatumCheck(False, f"det(L) = {det} is not > 1")
    rational = linear.to_rational()
    inverse = rational.inverse()
    conjugated = rational * group.rotation.to_rational() * inverse
    exponent = None
    for k in range(group.order):
        if conjugated == group.rotation_power(k).to_rational():
            exponent = k
            break
    if exponent is None:
        return DatumCheck(False, "linear part does not normalize the rotation group")
    for j in range(group.order):
        power = group.rotation_power((exponent * j) % group.order)
        drift = affine.translation - power * affine.translation
        if not drift.is_integral():
            return DatumCheck(
                False,
                f"conjugated translation is not integral against rotation exponent {j}",
            )
    return DatumCheck(True, None, exponent)


def conjugated_element(group: CrystGroup, affine: AffineMap, g: GroupElement) -> GroupElement:
    """The group element A g A^(-1) for a valid datum.

    Raises ValueError when the conjugate falls outside the group, which is
    exactly the failure mode ``is_valid_lattes_datum`` reports.
    """
    check = is_valid_lattes_datum(group, affine)
    if check.conjugation_exponent is None:
        raise ValueError(check.reason or "linear part does not normalize the rotation group")
    k = (check.conjugation_exponent * g.k) % group.order
    translation = (
        affine.translation
        - group.rotation_power(k) * affine.translation
        + affine.linear_part * g.gamma
    )
    if not translation.is_integral():
        raise ValueError("conjugated translation is not a lattice vector")
    return GroupElement(group, k, translation)


def conjugate_translation(affine: AffineMap, gamma: RationalVector2) -> RationalVector2:
    """Image L(gamma) of a lattice translation under conjugation by the map.

    Conjugating the translation by gamma gives the translation by L(gamma);
    the identity A(u + gamma) = A(u) + L(gamma) is affine in u, so checking
    it at three affinely independent points proves it everywhere.  The
    check is an internal assertion, not a sampling argument.
    """
    if not gamma.is_integral():
        raise ValueError("conjugation formula applies to lattice translations")
    image = affine.linear_part * gamma
    for probe in (RationalVector2(0, 0), RationalVector2(1, 0), RationalVector2(0, 1)):
        if affine.apply(probe + gamma) != affine.apply(probe) + image:
            raise AssertionError("translation conjugation identity failed")
    return image


def degree_of_endomorphism(affine: AffineMap) -> int:
    """Topological degree of the induced torus endomorphism: det of L.

    >>> from .lattice import IntegerMatrix2
    >>> degree_of_endomorphism(AffineMap(IntegerMatrix2(((1, 1), (-1, 1)))))
    2
    """
    return affine.degree()


def translated_lifts(affine: AffineMap, radius: int = 1) -> list[AffineMap]:
    """The lifts t_gamma A of the induced torus map, for gamma in a box.

    Every lift of the torus endomorphism induced by A is a lattice translate
    of A; this enumerates the translates with |gamma| entries up to radius.
    """
    lifts = []
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            lifts.append(AffineMap(affine.linear_part, affine.translation + RationalVector2(i, j)))
    return lifts


def coarse_bound(affine: AffineMap, geometry: str = "square") -> Fraction:
    """Exact squared geometric norm of the translation part.

    The affine map stays within this distance (its square root) of its own
    linear part, uniformly: |A(u) - L(u)| = |a| for every u.
    """
    return geometric_norm_squared(affine.translation, geometry)


@dataclass(frozen=True)
class ContractionReport:
    """Outcome of the floating-point backward-contraction diagnostic."""

    ok: bool
    first_n: int | None
    n_max: int
    eps1: float
    eps2: float


def contraction_check(
    affine: AffineMap,
    pairs,
    n_max: int = 30,
    eps1=Fraction(1, 2),
    eps2=Fraction(1, 2),
    geometry: str = "square",
) -> ContractionReport:
    """Find the smallest n with |A^(-n)x - A^(-n)y| <= eps1 |x - y| + eps2
    across the sample of point pairs.

    A floating-point diagnostic (the one deliberately inexact corner of
    this module): distances are Euclidean in geometric coordinates.
    Requires an expanding linear part, otherwise no such n need exist.
    """
    from .lattice import is_expanding

    if not is_expanding(affine.linear_part):
        raise ValueError("linear part is not expanding, backward iteration does not contract")
    e1 = float(eps1)
    e2 = float(eps2)
    inverse = affine.linear_part.to_rational().inverse()
    rows = [[float(inverse.a), float(inverse.b)], [float(inverse.c), float(inverse.d)]]
    ax, ay = float(affine.translation.x), float(affine.translation.y)

    def inv_step(p):
        px, py = p[0] - ax, p[1] - ay
        return (rows[0][0] * px + rows[0][1] * py, rows[1][0] * px + rows[1][1] * py)

    def distance(p, q):
        px, py = embed_point(p[0], p[1], geometry)
        qx, qy = embed_point(q[0], q[1], geometry)
        return ((px - qx) ** 2 + (py - qy) ** 2) ** 0.5

    current = [((float(x.x), float(x.y)), (float(y.x), float(y.y))) for x, y in pairs]
    baseline = [distance(p, q) for p, q in current]
    for n in range(1, n_max + 1):
        current = [(inv_step(p), inv_step(q)) for p, q in current]
        if all(
            distance(p, q) <= e1 * base + e2
            for (p, q), base in zip(current, baseline)
        ):
            return ContractionReport(True, n, n_max, e1, e2)
    return ContractionReport(False, None, n_max, e1, e2)
