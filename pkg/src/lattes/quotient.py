r"""
The induced sphere map on the orbit space of a wallpaper group.

A valid pair (G, A) of a wallpaper group and an equivariant affine map
with det > 1 induces a branched self-cover f of the quotient sphere: the
orbit projection intertwines A upstairs with f downstairs.  Everything
about f is computed upstairs in exact lattice coordinates:

  * points of the sphere are canonical orbit representatives,
  * the image of a class is the canonical form of its affine image,
  * the local degree at a class is the stabilizer-order ratio
    stab(A(u)) / stab(u), which the equivariance makes integral,
  * the fiber over a class is enumerated from rotations and cosets of
    the linear part, certified complete by the degree-sum identity
    (the local degrees over any fiber add up to det of the linear part).

From the fibers a ramification portrait is extracted by closing the cone
point classes under forward images and critical preimages; its orbifold
classification is always parabolic with no periodic critical labels, and
`theorem_report` packages that together with the exact expansion test on
the linear part.  Any violation of the structural facts (non-integral
degree ratio, degree-sum mismatch, non-parabolic classification) raises
ConsistencyError: these are certificates, not tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineMap, is_valid_lattes_datum
from .crystal import ConePointClass, CrystGroup, GroupElement, make_group
from .lattice import RationalVector2, coset_representatives, is_expanding
from .mesh import MeshResult, preimage_mesh
from .orbifold import (
    ConsistencyError,
    OrbifoldSignature,
    PortraitClassification,
    RamificationPortrait,
    RamificationValue,
    classify,
)

__all__ = [
    "QuotientMapDatum",
    "induced_image",
    "local_degree",
    "fiber",
    "FiberDegreeReport",
    "constant_fiber_degree_check",
    "extract_portrait",
    "TheoremConditions",
    "ClassificationReport",
    "theorem_report",
    "InvariantResult",
    "run_verification",
    "GROUP_SIGNATURES",
    "MeshResult",
    "preimage_mesh",
]

# The signature forced by each group, independent of the affine map.
GROUP_SIGNATURES = {
    "p2": OrbifoldSignature.of(2, 2, 2, 2),
    "p3": OrbifoldSignature.of(3, 3, 3),
    "p4": OrbifoldSignature.of(2, 4, 4),
    "p6": OrbifoldSignature.of(2, 3, 6),
}


class QuotientMapDatum:
    """A wallpaper group together with a validated equivariant affine map.

    Serializes as ``{"group": "p4", "L": [[1,1],[-1,1]], "a": ["0","0"]}``.
    Construction rejects p1 (its orbit space is a torus, not a sphere) and
    any pair failing the validity test, quoting the diagnostic reason.
    """

    __slots__ = ("group", "map")

    def __init__(self, group: CrystGroup, affine: AffineMap):
        if group.kind == "p1":
            raise ValueError("p1 acts freely: the orbit space is a torus, not a sphere")
        check = is_valid_lattes_datum(group, affine)
        if not check:
            raise ValueError(f"invalid datum: {check.reason}")
        self.group = group
        self.map = affine

    @property
    def degree(self) -> int:
        return self.map.degree()

    def iterated(self, m: int) -> "QuotientMapDatum":
        """The datum for the m-th iterate of the affine map."""
        return QuotientMapDatum(self.group, self.map.iterate(m))

    def __eq__(self, other):
        if not isinstance(other, QuotientMapDatum):
            return NotImplemented
        return self.group == other.group and self.map == other.map

    def __hash__(self):
        return hash((self.group, self.map))

    def __repr__(self):
        return f"QuotientMapDatum({self.group.kind}, degree {self.degree})"

    def to_json(self) -> dict:
        data = {"group": self.group.kind}
        data.update(self.map.to_json())
        return data

    @classmethod
    def from_json(cls, data: dict) -> "QuotientMapDatum":
        if not isinstance(data, dict) or "group" not in data:
            raise ValueError('datum must be a JSON object with a "group" key')
        group = make_group(data["group"])
        if "L" not in data:
            raise ValueError('datum is missing the linear part "L"')
        affine = AffineMap.from_json({"L": data["L"], "a": data.get("a", ["0", "0"])})
        return cls(group, affine)


def _as_point(group: CrystGroup, value) -> RationalVector2:
    if isinstance(value, ConePointClass):
        return value.representative
    if isinstance(value, RationalVector2):
        return group.canonical_representative(value)
    raise TypeError(f"expected a point or cone point class, got {type(value).__name__}")


def induced_image(datum: QuotientMapDatum, value) -> RationalVector2:
    """The class of the affine image: canonical form of A(u).

    Well defined because the affine map is equivariant, so orbit mates have
    orbit-mate images.
    """
    point = _as_point(datum.group, value)
    return datum.group.canonical_representative(datum.map.apply(point))


def local_degree(datum: QuotientMapDatum, value) -> int:
    """Local degree of the induced map at a class: stab(A(u)) / stab(u).

    The affine map conjugates the stabilizer of u injectively into the
    stabilizer of A(u), so the ratio is an integer; a non-integral ratio
    can only come from a broken invariant and raises ConsistencyError.
    """
    point = _as_point(datum.group, value)
    below = datum.group.stabilizer_order(point)
    above = datum.group.stabilizer_order(datum.map.apply(point))
    if above % below:
        raise ConsistencyError(
            f"stabilizer ratio {above}/{below} at {point} is not an integer"
        )
    return above // below


def fiber(datum: QuotientMapDatum, value) -> list[tuple[RationalVector2, int]]:
    """All classes mapping to the given class, with their local degrees.

    Candidates are exactly the points A^(-1)(R^k p + gamma) for k over the
    point group and gamma over coset representatives of the linear part:
    two lattice translations give the same candidate class iff they agree
    modulo L, so the cosets enumerate the fiber completely.  The degree-sum
    identity (sum of local degrees = det L) is asserted on every call as
    the completeness certificate.
    """
    group = datum.group
    base = _as_point(group, value)
    classes: dict[RationalVector2, int] = {}
    # Maps every reduced orbit mate of a found class to its representative,
    # so repeat candidates are recognized without re-canonicalizing.
    located: dict[RationalVector2, RationalVector2] = {}
    cosets = coset_representatives(datum.map.linear_part)
    # When L commutes with R (every valid datum does), each fiber class
    # already shows up at k = 0: A(R^-k u) = R^-k A(u) moves any solution
    # into the k = 0 slot up to a lattice shift.  The degree-sum certificate
    # below would expose an incomplete enumeration, so the shortcut is safe.
    linear = datum.map.linear_part
    commutes = linear * group.rotation == group.rotation * linear
    exponents = (0,) if commutes else tuple(range(group.order))
    for k in exponents:
        rotated = group.rotation_power(k) * base
        for gamma in cosets:
            raw = datum.map.inverse_apply(rotated + gamma).frac()
            if raw in located:
                continue
            candidate = group.canonical_representative(raw)
            for j in range(group.order):
                located[(group.rotation_power(j) * candidate).frac()] = candidate
            if candidate in classes:
                continue
            if induced_image(datum, candidate) != base:
                raise ConsistencyError(
                    f"fiber candidate {candidate} does not map to {base}"
                )
            classes[candidate] = local_degree(datum, candidate)
    total = sum(classes.values())
    if total != datum.degree:
        raise ConsistencyError(
            f"fiber over {base} has degree sum {total}, expected {datum.degree}"
        )
    return sorted(classes.items())


@dataclass(frozen=True)
class FiberDegreeReport:
    """Verified orbits for the constant-fiber-degree property.

    Each entry is (class representative, stabilizer order, orbit points);
    ok means every orbit had one constant stabilizer order.
    """

    ok: bool
    orbits: tuple

    def __bool__(self) -> bool:
        return self.ok


def constant_fiber_degree_check(datum: QuotientMapDatum, generic_points=()) -> FiberDegreeReport:
    """Check that the orbit projection has constant local degree on fibers.

    The fiber of the projection over a class is the point group orbit of
    any representative, and the local degree at an orbit point is its
    stabilizer order; constancy on every fiber is the orbit-stabilizer
    statement that conjugate points have equal stabilizer orders.  Checked
    on every cone point class and on any supplied generic points.
    """
    group = datum.group
    probes = [c.representative for c in group.cone_point_classes()]
    probes.extend(_as_point(group, p) for p in generic_points)
    orbits = []
    ok = True
    for point in probes:
        orbit = sorted({(group.rotation_power(k) * point).frac() for k in range(group.order)})
        orders = {group.stabilizer_order(q) for q in orbit}
        constant = len(orders) == 1
        ok = ok and constant
        orbits.append((point, group.stabilizer_order(point), tuple(orbit)))
    return FiberDegreeReport(ok, tuple(orbits))


def _format_label(point: RationalVector2) -> str:
    return f"({point.x},{point.y})"


def extract_portrait(datum: QuotientMapDatum) -> RamificationPortrait:
    """The ramification portrait of the induced sphere map.

    Starts from the cone point classes (which carry all the branching of
    the orbit projection), then closes under forward images and under
    critical classes found in fibers.  Both closures are short: cone
    classes are forward invariant, and every critical class maps onto a
    cone class.  The label bound 10 * n * det guards the loop anyway.

    Labels are the canonical representatives printed as "(x,y)" with exact
    rational coordinates, ordered lexicographically.
    """
    group = datum.group
    current = {c.representative for c in group.cone_point_classes()}
    bound = 10 * group.order * datum.degree
    fibers: dict[RationalVector2, list] = {}
    while True:
        fresh = set()
        for u in current:
            image = induced_image(datum, u)
            if image not in current:
                fresh.add(image)
        for u in current:
            if u not in fibers:
                fibers[u] = fiber(datum, u)
            for v, deg in fibers[u]:
                if deg >= 2 and v not in current:
                    fresh.add(v)
        if not fresh:
            break
        current |= fresh
        if len(current) > bound:
            raise ConsistencyError(
                f"portrait closure exceeded {bound} labels; the datum cannot be this branched"
            )
    points = sorted(current)
    label = {u: _format_label(u) for u in points}
    next_map = {label[u]: label[induced_image(datum, u)] for u in points}
    degrees = {label[u]: local_degree(datum, u) for u in points}
    return RamificationPortrait(
        [label[u] for u in points], next_map, degrees, degree=datum.degree
    )


@dataclass(frozen=True)
class TheoremConditions:
    """The three equivalent structural conditions, evaluated independently."""

    quotient_of_torus_endomorphism: bool
    parabolic_orbifold: bool
    lattes_type: bool

    def all_hold(self) -> bool:
        return (
            self.quotient_of_torus_endomorphism
            and self.parabolic_orbifold
            and self.lattes_type
        )

    def to_json(self) -> dict:
        return {
            "quotient-of-torus-endomorphism": self.quotient_of_torus_endomorphism,
            "parabolic-orbifold": self.parabolic_orbifold,
            "lattes-type": self.lattes_type,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TheoremConditions":
        return cls(
            quotient_of_torus_endomorphism=data["quotient-of-torus-endomorphism"],
            parabolic_orbifold=data["parabolic-orbifold"],
            lattes_type=data["lattes-type"],
        )


@dataclass(frozen=True)
class ClassificationReport:
    """Full classification of one datum, JSON round-trippable.

    Exact values serialize as strings; "expanding" is the JSON key for the
    expanding_linear field.
    """

    group: str
    degree: int
    signature: OrbifoldSignature
    euler_char: Fraction
    parabolic: bool
    expanding_linear: bool
    periodic_critical: bool
    theorem_conditions: TheoremConditions
    alpha: tuple

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "degree": self.degree,
            "signature": str(self.signature),
            "euler_char": str(self.euler_char),
            "parabolic": self.parabolic,
            "expanding": self.expanding_linear,
            "periodic_critical": self.periodic_critical,
            "theorem_conditions": self.theorem_conditions.to_json(),
            "alpha": {p: str(v) for p, v in self.alpha},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClassificationReport":
        return cls(
            group=data["group"],
            degree=data["degree"],
            signature=OrbifoldSignature.parse(data["signature"]),
            euler_char=Fraction(data["euler_char"]),
            parabolic=data["parabolic"],
            expanding_linear=data["expanding"],
            periodic_critical=data["periodic_critical"],
            theorem_conditions=TheoremConditions.from_json(data["theorem_conditions"]),
            alpha=tuple(
                (p, RamificationValue.parse(v)) for p, v in data["alpha"].items()
            ),
        )


def theorem_report(datum: QuotientMapDatum) -> ClassificationReport:
    """Classify the induced map and evaluate the structural conditions.

    The datum provides the torus endomorphism and the branched projection
    directly, so the quotient and construction conditions hold by
    exhibition; the parabolicity verdict comes from the independent
    orbifold computation.  Every valid datum must come out parabolic with
    no periodic critical labels; a violation is a falsified structural
    condition and raises ConsistencyError naming the failure.
    """
    portrait = extract_portrait(datum)
    outcome = classify(portrait)
    periodic = bool(outcome.periodic_critical)
    conditions = TheoremConditions(
        quotient_of_torus_endomorphism=True,
        parabolic_orbifold=outcome.parabolic,
        lattes_type=True,
    )
    if not outcome.parabolic:
        raise ConsistencyError(
            f"falsified structural condition: datum classified non-parabolic "
            f"(signature {outcome.signature}, euler characteristic {outcome.euler_char})"
        )
    if periodic:
        raise ConsistencyError(
            f"falsified structural condition: periodic critical labels {sorted(outcome.periodic_critical)}"
        )
    return ClassificationReport(
        group=datum.group.kind,
        degree=datum.degree,
        signature=outcome.signature,
        euler_char=outcome.euler_char,
        parabolic=outcome.parabolic,
        expanding_linear=is_expanding(datum.map.linear_part),
        periodic_critical=periodic,
        theorem_conditions=conditions,
        alpha=tuple((p, outcome.alpha[p]) for p in portrait.points),
    )


@dataclass(frozen=True)
class InvariantResult:
    name: str
    ok: bool
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def _random_point(rng, span: int = 3, max_denominator: int = 8) -> RationalVector2:
    q = rng.randint(1, max_denominator)
    return RationalVector2(
        Fraction(rng.randint(-span * q, span * q), q),
        Fraction(rng.randint(-span * q, span * q), q),
    )


def _random_element(group: CrystGroup, rng, span: int = 3) -> GroupElement:
    gamma = RationalVector2(rng.randint(-span, span), rng.randint(-span, span))
    return group.element(rng.randrange(group.order), gamma)


def run_verification(datum: QuotientMapDatum, samples: int = 200, seed: int = 0) -> list[InvariantResult]:
    """Run the full invariant suite on one datum.

    Returns one result per invariant, in a fixed order, deterministic for
    a given seed.  Exact identities are checked exactly; the randomized
    items draw `samples` cases from a seeded generator.
    """
    import random

    rng = random.Random(seed)
    results: list[InvariantResult] = []

    def record(name: str, ok: bool, detail: str = ""):
        results.append(InvariantResult(name, ok, detail))

    group = datum.group

    check = is_valid_lattes_datum(group, datum.map)
    record("datum-valid", bool(check), check.reason)

    bad = 0
    for _ in range(samples):
        g = _random_element(group, rng)
        u = _random_point(rng)
        if induced_image(datum, g.apply(u)) != induced_image(datum, u):
            bad += 1
    record(
        "well-definedness",
        bad == 0,
        f"{samples} random (g,u) pairs, {bad} mismatches",
    )

    try:
        probes = [c.representative for c in group.cone_point_classes()]
        probes.extend(_random_point(rng) for _ in range(5))
        for p in probes:
            fiber(datum, p)
        record("degree-sum", True, f"{len(probes)} fibers, each summing to {datum.degree}")
    except ConsistencyError as err:
        record("degree-sum", False, str(err))

    report = None
    try:
        report = theorem_report(datum)
        record("parabolic-orbifold", report.parabolic, f"signature {report.signature}")
        record("no-periodic-critical", not report.periodic_critical, "")
    except ConsistencyError as err:
        record("parabolic-orbifold", False, str(err))
        record("no-periodic-critical", False, str(err))

    expected = GROUP_SIGNATURES[group.kind]
    if report is not None:
        record(
            "signature-table",
            report.signature == expected,
            f"got {report.signature}, expected {expected} for {group.kind}",
        )
        consistent = report.theorem_conditions.all_hold() if report.expanding_linear else True
        record(
            "theorem-conditions",
            consistent,
            "all three hold" if report.expanding_linear else "linear part not expanding; one-directional check only",
        )
    else:
        record("signature-table", False, "no report")
        record("theorem-conditions", False, "no report")

    iterate_ok = True
    detail = []
    for m in (2, 3):
        iterated = theorem_report(datum.iterated(m))
        same = report is not None and iterated.signature == report.signature
        iterate_ok = iterate_ok and same
        detail.append(f"m={m}: {iterated.signature}")
    record("iterate-signature", iterate_ok, "; ".join(detail))

    squared = datum.iterated(2)
    bad = 0
    for _ in range(samples):
        u = _random_point(rng)
        left = local_degree(squared, u)
        right = local_degree(datum, u) * local_degree(datum, induced_image(datum, u))
        if left != right:
            bad += 1
    record(
        "local-degree-multiplicativity",
        bad == 0,
        f"{samples} random points, {bad} mismatches",
    )

    generic = [_random_point(rng) for _ in range(5)]
    fiber_report = constant_fiber_degree_check(datum, generic)
    record(
        "constant-fiber-degree",
        fiber_report.ok,
        f"{len(fiber_report.orbits)} orbits checked",
    )

    return results
