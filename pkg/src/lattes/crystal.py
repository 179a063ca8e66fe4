r"""
Orientation-preserving wallpaper groups in lattice coordinates.

A group here is generated by the lattice translations Z^2 together with a
single rotation of order n in {1, 2, 3, 4, 6}; its elements are exactly the
maps u -> R^k u + gamma with 0 <= k < n and gamma in Z^2, composed by

    (k1, g1) (k2, g2) = (k1 + k2 mod n, R^k1 g2 + g1).

The translation lattice is always Z^2.  The geometric shape of the lattice
(square versus hexagonal) is absorbed into the choice of rotation matrix,
which must be an integer matrix of the required order.  The fixed
generators below are part of the package's serialization contract:

    p1  [[ 1, 0], [0,  1]]   order 1
    p2  [[-1, 0], [0, -1]]   order 2
    p3  [[ 0,-1], [1, -1]]   order 3
    p4  [[ 0,-1], [1,  0]]   order 4
    p6  [[ 1,-1], [1,  0]]   order 6

p3's generator is the square of p6's, so the two hexagonal groups share
coordinates.  Geometric lengths use the lattice embedding with basis
(1, 0), (1/2, sqrt(3)/2) for the hexagonal groups and the standard basis
for the square ones; squared lengths of rational vectors are then exact
rationals (x^2 + xy + y^2 in the hexagonal case).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice import IntegerMatrix2, RationalVector2, as_fraction

__all__ = [
    "GROUP_KINDS",
    "ROTATION_GENERATORS",
    "CrystGroup",
    "GroupElement",
    "ConePointClass",
    "make_group",
    "geometric_norm_squared",
    "embed_point",
]

GROUP_KINDS = ("p1", "p2", "p3", "p4", "p6")

ROTATION_GENERATORS = {
    "p1": IntegerMatrix2(((1, 0), (0, 1))),
    "p2": IntegerMatrix2(((-1, 0), (0, -1))),
    "p3": IntegerMatrix2(((0, -1), (1, -1))),
    "p4": IntegerMatrix2(((0, -1), (1, 0))),
    "p6": IntegerMatrix2(((1, -1), (1, 0))),
}

_POINT_GROUP_ORDER = {"p1": 1, "p2": 2, "p3": 3, "p4": 4, "p6": 6}

_SQRT3_HALF = math.sqrt(3.0) / 2.0


def geometric_norm_squared(v: RationalVector2, geometry: str) -> Fraction:
    """Exact squared length of ``v`` under the group's lattice embedding."""
    if geometry == "square":
        return v.x * v.x + v.y * v.y
    if geometry == "hex":
        return v.x * v.x + v.x * v.y + v.y * v.y
    raise ValueError(f"unknown geometry {geometry!r}")


def embed_point(x, y, geometry: str) -> tuple[float, float]:
    """Map lattice coordinates to geometric coordinates (floats, for rendering)."""
    if geometry == "square":
        return (float(x), float(y))
    if geometry == "hex":
        return (float(x) + 0.5 * float(y), _SQRT3_HALF * float(y))
    raise ValueError(f"unknown geometry {geometry!r}")


@dataclass(frozen=True)
class ConePointClass:
    """An orbit of rotation centers, named by its canonical representative."""

    representative: RationalVector2
    stabilizer_order: int


class CrystGroup:
    """One of the five orientation-preserving wallpaper groups.

    Instances are immutable.  The rotation powers R^0 ... R^(n-1) are
    precomputed since every orbit and stabilizer computation runs over them.
    """

    __slots__ = ("kind", "order", "rotation", "_powers")

    def __init__(self, kind: str):
        if kind not in GROUP_KINDS:
            raise ValueError(f"unknown group kind {kind!r}, expected one of {GROUP_KINDS}")
        self.kind = kind
        self.order = _POINT_GROUP_ORDER[kind]
        self.rotation = ROTATION_GENERATORS[kind]
        powers = [IntegerMatrix2.identity()]
        for _ in range(self.order - 1):
            powers.append(powers[-1] * self.rotation)
        self._powers = tuple(powers)
        # The generator's order is part of the contract; fail loudly if the
        # table above is ever edited into inconsistency.
        if self._powers[-1] * self.rotation != IntegerMatrix2.identity():
            raise AssertionError(f"rotation generator for {kind} does not have order {self.order}")

    @property
    def geometry(self) -> str:
        return "hex" if self.kind in ("p3", "p6") else "square"

    def rotation_power(self, k: int) -> IntegerMatrix2:
        return self._powers[k % self.order]

    def element(self, k: int, gamma: RationalVector2) -> "GroupElement":
        return GroupElement(self, k % self.order, gamma)

    def identity(self) -> "GroupElement":
        return GroupElement(self, 0, RationalVector2(0, 0))

    def __eq__(self, other):
        if not isinstance(other, CrystGroup):
            return NotImplemented
        return self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"CrystGroup({self.kind!r})"

    # -- orbits and stabilizers -------------------------------------------

    def canonical_representative(self, u: RationalVector2) -> RationalVector2:
        """Deterministic representative of the orbit of ``u``.

        Reduce into [0,1)^2 by integer translation, then take the
        lexicographically smallest among the n point-group images, each
        re-reduced into [0,1)^2.  Equal on u and g(u) for every g, since
        the candidate set {frac(R^k u)} is itself an orbit invariant.
        """
        best = None
        for power in self._powers:
            candidate = (power * u).frac()
            if best is None or candidate < best:
                best = candidate
        return best

    def stabilizer_order(self, u: RationalVector2) -> int:
        """Order of the stabilizer of ``u`` in the group, a divisor of n.

        An element (k, gamma) fixes u iff R^k u - u is integral, so it is
        enough to count rotation exponents.
        """
        count = 0
        for power in self._powers:
            if (power * u - u).is_integral():
                count += 1
        return count

    def cone_point_classes(self) -> list[ConePointClass]:
        """All orbits of rotation centers, with their stabilizer orders.

        For each k the centers fixed by some (k, gamma) solve
        (I - R^k) u = gamma in Z^2; since det(I - R^k) != 0 for R^k != I,
        the solutions mod Z^2 have denominators dividing D = |det(I - R^k)|
        and a scan of the (i/D, j/D) grid finds them all.

        Raises ValueError for p1, which acts freely (torus type).
        """
        if self.kind == "p1":
            raise ValueError("torus type: p1 acts freely and has no cone points")
        identity = IntegerMatrix2.identity()
        found: dict[RationalVector2, int] = {}
        for k in range(1, self.order):
            m = identity - self._powers[k]
            index = abs(m.det())
            for i in range(index):
                for j in range(index):
                    u = RationalVector2(Fraction(i, index), Fraction(j, index))
                    if (m * u).is_integral():
                        rep = self.canonical_representative(u)
                        if rep not in found:
                            found[rep] = self.stabilizer_order(rep)
        classes = [
            ConePointClass(rep, order) for rep, order in found.items() if order >= 2
        ]
        classes.sort(key=lambda c: (c.stabilizer_order, (c.representative.x, c.representative.y)))
        return classes

    def cone_signature(self) -> tuple[int, ...]:
        """Stabilizer orders of the cone point classes, ascending."""
        return tuple(c.stabilizer_order for c in self.cone_point_classes())

    def deck_solve(self, x: RationalVector2, y: RationalVector2) -> "GroupElement":
        """The element g with g(x) = y, least rotation exponent first.

        Raises ValueError when x and y are not in the same orbit.
        """
        for k, power in enumerate(self._powers):
            gamma = y - power * x
            if gamma.is_integral():
                return GroupElement(self, k, gamma)
        raise ValueError("not in same fiber: no group element maps x to y")


def make_group(kind: str) -> CrystGroup:
    return CrystGroup(kind)


class GroupElement:
    """The map u -> R^k u + gamma for a fixed group.

    Serializes as ``{"k": int, "gamma": [int, int]}``.
    """

    __slots__ = ("group", "k", "gamma")

    def __init__(self, group: CrystGroup, k: int, gamma: RationalVector2):
        if not 0 <= k < group.order:
            raise ValueError(f"rotation exponent {k} out of range for {group.kind}")
        if not gamma.is_integral():
            raise ValueError(f"translation part {gamma!r} is not a lattice vector")
        self.group = group
        self.k = k
        self.gamma = gamma

    def apply(self, u: RationalVector2) -> RationalVector2:
        return self.group.rotation_power(self.k) * u + self.gamma

    def compose(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups do not compose")
        k = (self.k + other.k) % self.group.order
        gamma = self.group.rotation_power(self.k) * other.gamma + self.gamma
        return GroupElement(self.group, k, gamma)

    def inverse(self) -> "GroupElement":
        k = (-self.k) % self.group.order
        gamma = -(self.group.rotation_power(k) * self.gamma)
        return GroupElement(self.group, k, gamma)

    def is_identity(self) -> bool:
        return self.k == 0 and self.gamma == RationalVector2(0, 0)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self.group == other.group and self.k == other.k and self.gamma == other.gamma
        )

    def __hash__(self):
        return hash((self.group.kind, self.k, self.gamma))

    def to_json(self) -> dict:
        return {"k": self.k, "gamma": [int(self.gamma.x), int(self.gamma.y)]}

    @classmethod
    def from_json(cls, group: CrystGroup, data: dict) -> "GroupElement":
        if not isinstance(data, dict) or "k" not in data or "gamma" not in data:
            raise ValueError('group element must be {"k": int, "gamma": [int, int]}')
        gamma = data["gamma"]
        if not isinstance(gamma, (list, tuple)) or len(gamma) != 2:
            raise ValueError("gamma must be a pair of integers")
        return cls(group, int(data["k"]), RationalVector2(as_fraction(gamma[0]), as_fraction(gamma[1])))

    def __repr__(self):
        return f"GroupElement({self.group.kind}, k={self.k}, gamma=({self.gamma.x}, {self.gamma.y}))"
