r"""
Ramification portraits and the orbifold classification of sphere maps.

A ramification portrait is the finite combinatorial record of a branched
self-cover of the sphere: a set of marked points, the induced self-map
``next`` on them, and the local degree at each marked point.  A portrait
must contain every critical point and every postcritical point of the map
it models; unmarked points are implicitly non-critical and carry
ramification value 1.

The ramification value alpha(p) is the least common multiple of the local
degrees of all iterates over all chains of preimages ending at p.  It is
infinite exactly on cycles that contain a critical point (and nowhere
else), so those cycles are seeded with infinity and the finite values are
then computed by a monotone least-fixed-point iteration

    alpha(p) = lcm over marked preimages q of p of deg(q) * alpha(q),

which terminates because degree products around the remaining cycles are 1.

The orbifold Euler characteristic is chi = 2 - sum_p (1 - 1/alpha(p)) with
the convention 1 - 1/inf = 1, an exact rational.  The orbifold is parabolic
exactly when chi = 0, equivalently when the signature (the multiset of
values >= 2) is one of

    (inf, inf), (2, 2, inf), (2, 4, 4), (2, 3, 6), (3, 3, 3), (2, 2, 2, 2),

equivalently when deg(f, p) * alpha(p) = alpha(f(p)) holds at every point
of the sphere.  The pointwise criterion constrains unmarked points too: a
marked point v with alpha(v) >= 2 must not have any unmarked (hence
generic) preimage, since such a preimage q would need 1 = alpha(q) to
multiply up to alpha(v).  Whether a marked fiber exhausts the degree is
judged against the portrait's declared topological degree ("degree" in the
JSON form); when absent, the smallest degree consistent with the marked
fibers is used, namely the maximum marked fiber degree sum.  All three
criteria are computed independently and cross-checked; a portrait on which
they disagree does not describe a genuine branched cover and is reported
as an inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import lcm

__all__ = [
    "ConsistencyError",
    "RamificationValue",
    "INFINITY",
    "OrbifoldSignature",
    "PARABOLIC_SIGNATURES",
    "RamificationPortrait",
    "has_periodic_critical",
    "ramification_function",
    "euler_characteristic",
    "signature",
    "ParabolicCheck",
    "is_parabolic",
    "PortraitClassification",
    "classify",
]


class ConsistencyError(RuntimeError):
    """Raised when independently computed invariants contradict each other.

    Signals either an implementation bug or input that does not describe a
    genuine branched cover, never a tolerable condition.
    """


@total_ordering
class RamificationValue:
    """A ramification value: a positive integer or infinity.

    Infinity is a first-class value of this type, not a sentinel integer,
    and it is absorbing under both lcm and multiplication.

    >>> RamificationValue.finite(4).lcm(RamificationValue.finite(6))
    RamificationValue(12)
    >>> str(INFINITY.times(3))
    'inf'
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        if value is not None and (not isinstance(value, int) or value < 1):
            raise ValueError("finite ramification values are positive integers")
        self._value = value

    @classmethod
    def finite(cls, value: int) -> "RamificationValue":
        if value is None:
            raise ValueError("finite() needs an integer")
        return cls(value)

    @classmethod
    def infinite(cls) -> "RamificationValue":
        return cls(None)

    @classmethod
    def parse(cls, text) -> "RamificationValue":
        if isinstance(text, int):
            return cls.finite(text)
        if text == "inf":
            return cls.infinite()
        return cls.finite(int(text))

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> int | None:
        return self._value

    def lcm(self, other: "RamificationValue") -> "RamificationValue":
        if self.is_infinite or other.is_infinite:
            return INFINITY
        return RamificationValue(lcm(self._value, other._value))

    def times(self, degree: int) -> "RamificationValue":
        if degree < 1:
            raise ValueError("local degrees are positive")
        if self.is_infinite:
            return INFINITY
        return RamificationValue(self._value * degree)

    def divides(self, other: "RamificationValue") -> bool:
        if other.is_infinite:
            return True
        if self.is_infinite:
            return False
        return other._value % self._value == 0

    def reciprocal_complement(self) -> Fraction:
        """The term 1 - 1/alpha in the Euler characteristic, exactly."""
        if self.is_infinite:
            return Fraction(1)
        return 1 - Fraction(1, self._value)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._value == other
        if not isinstance(other, RamificationValue):
            return NotImplemented
        return self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __lt__(self, other):
        # Finite values by size, infinity strictly greatest.
        if isinstance(other, int):
            return not self.is_infinite and self._value < other
        if not isinstance(other, RamificationValue):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self._value < other._value

    def __str__(self):
        return "inf" if self.is_infinite else str(self._value)

    def __repr__(self):
        return f"RamificationValue({self})"


INFINITY = RamificationValue.infinite()
_ONE = RamificationValue.finite(1)


class OrbifoldSignature:
    """The multiset of ramification values >= 2, ascending, infinity last.

    Prints in the fixed external format, for example ``(2,4,4)`` or
    ``(inf,inf)``.
    """

    __slots__ = ("entries",)

    def __init__(self, values):
        entries = tuple(sorted(values))
        if any(not isinstance(v, RamificationValue) for v in entries):
            raise TypeError("signature entries are RamificationValues")
        if any(not v.is_infinite and v.value < 2 for v in entries):
            raise ValueError("signature entries are at least 2")
        self.entries = entries

    def __eq__(self, other):
        if not isinstance(other, OrbifoldSignature):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.entries) + ")"

    def __repr__(self):
        return f"OrbifoldSignature{self}"

    @classmethod
    def of(cls, *values) -> "OrbifoldSignature":
        return cls(
            v if isinstance(v, RamificationValue) else RamificationValue.finite(v)
            for v in values
        )

    @classmethod
    def parse(cls, text: str) -> "OrbifoldSignature":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"malformed signature {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return cls(())
        return cls(RamificationValue.parse(part.strip()) for part in inner.split(","))


PARABOLIC_SIGNATURES = frozenset(
    {
        OrbifoldSignature.of(INFINITY, INFINITY),
        OrbifoldSignature.of(2, 2, INFINITY),
        OrbifoldSignature.of(2, 4, 4),
        OrbifoldSignature.of(2, 3, 6),
        OrbifoldSignature.of(3, 3, 3),
        OrbifoldSignature.of(2, 2, 2, 2),
    }
)


class RamificationPortrait:
    """Marked points with a self-map and local degrees.

    ``points`` fixes the label order used everywhere (witness reporting,
    serialization).  ``next_map`` must be total on the labels and map into
    them; degrees are integers >= 1.  ``degree`` optionally declares the
    topological degree of the modeled map; it must dominate every marked
    fiber degree sum.
    """

    __slots__ = ("points", "_next", "_deg", "_declared_degree")

    def __init__(self, points, next_map, degrees, degree: int | None = None):
        labels = tuple(points)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in portrait")
        label_set = set(labels)
        for p in labels:
            if p not in next_map:
                raise ValueError(f"next is not defined at {p!r}")
            if next_map[p] not in label_set:
                raise ValueError(f"next({p!r}) = {next_map[p]!r} is not a label")
            d = degrees.get(p, 1)
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"local degree at {p!r} must be a positive integer")
        self.points = labels
        self._next = {p: next_map[p] for p in labels}
        self._deg = {p: degrees.get(p, 1) for p in labels}
        if degree is not None:
            if not isinstance(degree, int) or degree < 1:
                raise ValueError("declared degree must be a positive integer")
            worst = max((self.fiber_degree_sum(p) for p in labels), default=1)
            if degree < worst:
                raise ValueError(
                    f"declared degree {degree} is below a marked fiber degree sum of {worst}"
                )
        self._declared_degree = degree

    def next(self, label):
        return self._next[label]

    def deg(self, label) -> int:
        return self._deg[label]

    def preimages(self, label) -> tuple:
        return tuple(q for q in self.points if self._next[q] == label)

    def fiber_degree_sum(self, label) -> int:
        return sum(self._deg[q] for q in self.points if self._next[q] == label)

    @property
    def critical_labels(self) -> tuple:
        return tuple(p for p in self.points if self._deg[p] >= 2)

    @property
    def map_degree(self) -> int:
        """Declared topological degree, or the smallest consistent one."""
        if self._declared_degree is not None:
            return self._declared_degree
        return max((self.fiber_degree_sum(p) for p in self.points), default=1)

    @property
    def declared_degree(self) -> int | None:
        return self._declared_degree

    def __eq__(self, other):
        if not isinstance(other, RamificationPortrait):
            return NotImplemented
        return (
            self.points == other.points
            and self._next == other._next
            and self._deg == other._deg
            and self._declared_degree == other._declared_degree
        )

    def __hash__(self):
        return hash((self.points, tuple(sorted(self._next.items())), self._declared_degree))

    def to_json(self) -> dict:
        data = {
            "points": list(self.points),
            "next": dict(self._next),
            "deg": dict(self._deg),
        }
        if self._declared_degree is not None:
            data["degree"] = self._declared_degree
        return data

    @classmethod
    def from_json(cls, data: dict) -> "RamificationPortrait":
        if not isinstance(data, dict):
            raise ValueError("portrait must be a JSON object")
        missing = {"points", "next", "deg"} - set(data)
        if missing:
            raise ValueError(f"portrait is missing keys {sorted(missing)}")
        degree = data.get("degree")
        return cls(data["points"], data["next"], data["deg"], degree)

    def __repr__(self):
        return f"RamificationPortrait({len(self.points)} points, degree {self.map_degree})"


def _cycle_labels(portrait: RamificationPortrait) -> list[tuple]:
    """The cycles of next, each as a tuple of labels."""
    seen: set = set()
    cycles = []
    for start in portrait.points:
        if start in seen:
            continue
        trail = []
        position = {}
        p = start
        while p not in position and p not in seen:
            position[p] = len(trail)
            trail.append(p)
            p = portrait.next(p)
        if p in position:
            cycles.append(tuple(trail[position[p]:]))
        seen.update(trail)
    return cycles


def has_periodic_critical(portrait: RamificationPortrait) -> frozenset:
    """Labels on cycles of next that contain a critical label.

    The forward orbit of such a cycle is the cycle itself, so this is also
    the set where the ramification value is infinite.
    """
    bad: set = set()
    for cycle in _cycle_labels(portrait):
        if any(portrait.deg(p) >= 2 for p in cycle):
            bad.update(cycle)
    return frozenset(bad)


def ramification_function(portrait: RamificationPortrait) -> dict:
    """The ramification value alpha at every label.

    Infinity is seeded on critical cycles; finite values are the least
    fixed point of alpha(p) = lcm over marked preimages q of p of
    deg(q) * alpha(q).  Labels outside the portrait contribute 1, which is
    lcm-neutral, so they never need to be materialized.  The iteration is
    capped far above the worst stabilization time as a guard.
    """
    infinite = has_periodic_critical(portrait)
    alpha = {p: (INFINITY if p in infinite else _ONE) for p in portrait.points}
    preimages = {p: portrait.preimages(p) for p in portrait.points}
    cap = 64 * max(1, len(portrait.points))
    for _ in range(cap):
        updated = {}
        changed = False
        for p in portrait.points:
            if alpha[p].is_infinite:
                updated[p] = INFINITY
                continue
            value = _ONE
            for q in preimages[p]:
                value = value.lcm(alpha[q].times(portrait.deg(q)))
            updated[p] = value
            if value != alpha[p]:
                changed = True
        alpha = updated
        if not changed:
            return alpha
    raise ConsistencyError("ramification recursion did not stabilize")


def euler_characteristic(alpha: dict) -> Fraction:
    """chi = 2 - sum over labels of (1 - 1/alpha), exact."""
    total = Fraction(0)
    for value in alpha.values():
        total += value.reciprocal_complement()
    return 2 - total


def signature(alpha: dict) -> OrbifoldSignature:
    """The multiset of ramification values >= 2, as a signature."""
    return OrbifoldSignature(
        v for v in alpha.values() if v.is_infinite or v.value >= 2
    )


@dataclass(frozen=True)
class ParabolicCheck:
    """Result of the pointwise parabolicity criterion, with a witness label."""

    holds: bool
    witness: object = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_parabolic(portrait: RamificationPortrait, alpha: dict) -> ParabolicCheck:
    """The pointwise criterion deg(f, p) * alpha(p) = alpha(f(p)).

    Checked at every label, and at the implicit generic preimages: a label
    whose marked fiber does not exhaust the map degree has an unmarked
    preimage q with deg(q) = alpha(q) = 1, so its own alpha must be 1.
    The witness is the first violating label in portrait order.
    """
    for p in portrait.points:
        pushed = alpha[p].times(portrait.deg(p))
        target = alpha[portrait.next(p)]
        if pushed != target:
            return ParabolicCheck(
                False, p, f"deg * alpha = {pushed} but alpha(next) = {target}"
            )
    degree = portrait.map_degree
    for p in portrait.points:
        if portrait.fiber_degree_sum(p) < degree and alpha[p] != _ONE:
            return ParabolicCheck(
                False,
                p,
                f"alpha = {alpha[p]} at a label with an unmarked generic preimage",
            )
    return ParabolicCheck(True)


@dataclass(frozen=True)
class PortraitClassification:
    """Everything the orbifold layer can say about one portrait."""

    alpha: dict
    signature: OrbifoldSignature
    euler_char: Fraction
    parabolic: bool
    eq_para: ParabolicCheck
    periodic_critical: frozenset
    in_parabolic_list: bool
    has_critical: bool
    realizable: bool

    def to_json(self) -> dict:
        return {
            "signature": str(self.signature),
            "euler_char": str(self.euler_char),
            "parabolic": self.parabolic,
            "in_parabolic_list": self.in_parabolic_list,
            "periodic_critical": sorted(self.periodic_critical),
            "has_critical": self.has_critical,
            "realizable": self.realizable,
            "alpha": {p: str(v) for p, v in self.alpha.items()},
        }


def classify(portrait: RamificationPortrait) -> PortraitClassification:
    """Compute alpha, signature, chi and the parabolicity verdicts.

    A portrait with no critical labels, or with chi > 0, is flagged as not
    realizable by a branched self-cover of degree >= 2 rather than
    rejected.  On realizable portraits the pointwise criterion, the chi = 0
    criterion and membership in the parabolic signature list must agree;
    disagreement raises ConsistencyError.
    """
    alpha = ramification_function(portrait)
    chi = euler_characteristic(alpha)
    sig = signature(alpha)
    eq_para = is_parabolic(portrait, alpha)
    periodic = has_periodic_critical(portrait)
    in_list = sig in PARABOLIC_SIGNATURES
    has_critical = bool(portrait.critical_labels)
    realizable = has_critical and chi <= 0
    if realizable:
        if eq_para.holds != (chi == 0):
            raise ConsistencyError(
                f"pointwise criterion says {eq_para.holds} but chi = {chi}"
                + (f" (witness {eq_para.witness!r}: {eq_para.reason})" if not eq_para.holds else "")
            )
        if (chi == 0) != in_list:
            raise ConsistencyError(
                f"chi = {chi} but signature {sig} membership in the parabolic list is {in_list}"
            )
    return PortraitClassification(
        alpha=alpha,
        signature=sig,
        euler_char=chi,
        parabolic=(chi == 0) if realizable else False,
        eq_para=eq_para,
        periodic_critical=periodic,
        in_parabolic_list=in_list,
        has_critical=has_critical,
        realizable=realizable,
    )
