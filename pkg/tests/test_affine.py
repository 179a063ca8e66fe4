"""Affine torus endomorphisms: validity, conjugation, iteration, contraction."""

from fractions import Fraction

import pytest

from lattes import (
    AffineMap,
    IntegerMatrix2,
    RationalVector2,
    coarse_bound,
    conjugate_translation,
    conjugated_element,
    contraction_check,
    degree_of_endomorphism,
    is_valid_lattes_datum,
    make_group,
    translated_lifts,
)

from conftest import CANONICAL_SPECS, WITNESS_SPEC, random_valid_datum


def P(x, y):
    return RationalVector2(Fraction(x), Fraction(y))


def M(rows):
    return IntegerMatrix2(rows)


DOUBLING = AffineMap(M(((2, 0), (0, 2))))
QUARTER_TURN_SCALED = AffineMap(M(((1, 1), (-1, 1))))


class TestAffineMap:
    def test_apply(self):
        a = AffineMap(M(((2, 0), (0, 2))), P("1/2", 0))
        assert a.apply(P(1, 1)) == P("5/2", 2)

    def test_inverse_apply_round_trip(self):
        a = AffineMap(M(((1, 1), (-1, 1))), P("1/2", "1/2"))
        u = P("3/7", "-2/5")
        assert a.inverse_apply(a.apply(u)) == u
        assert a.apply(a.inverse_apply(u)) == u

    def test_translation_defaults_to_zero(self):
        assert AffineMap(M(((2, 0), (0, 2)))).translation == P(0, 0)

    def test_compose(self):
        a = AffineMap(M(((2, 0), (0, 2))), P(1, 0))
        b = AffineMap(M(((1, 1), (0, 1))), P(0, "1/2"))
        u = P("1/3", "1/5")
        assert a.compose(b).apply(u) == a.apply(b.apply(u))

    def test_json_round_trip(self):
        a = AffineMap(M(((1, 1), (-1, 1))), P("1/2", "1/2"))
        assert AffineMap.from_json(a.to_json()) == a
        assert a.to_json() == {"L": [[1, 1], [-1, 1]], "a": ["1/2", "1/2"]}


class TestIterate:
    def test_doubling_with_shift(self):
        a = AffineMap(M(((2, 0), (0, 2))), P("1/2", 0))
        sq = a.iterate(2)
        assert sq.linear_part == M(((4, 0), (0, 4)))
        assert sq.translation == P("3/2", 0)

    def test_quarter_turn_square(self):
        assert QUARTER_TURN_SCALED.iterate(2).linear_part == M(((0, 2), (-2, 0)))

    def test_zero_iterate_is_identity(self):
        a = AffineMap(M(((2, 0), (0, 2))), P("1/2", 0))
        ident = a.iterate(0)
        u = P("2/3", "1/7")
        assert ident.apply(u) == u

    def test_iterate_composition(self, rng):
        a = AffineMap(M(((1, 1), (-1, 1))), P("1/2", "1/2"))
        for _ in range(20):
            m, k = rng.randint(0, 5), rng.randint(0, 5)
            assert a.iterate(m).compose(a.iterate(k)) == a.iterate(m + k)


class TestDegree:
    @pytest.mark.parametrize(
        "rows,deg",
        [(((2, 0), (0, 2)), 4), (((1, 1), (-1, 1)), 2), (((3, 0), (0, 1)), 3)],
    )
    def test_examples(self, rows, deg):
        assert degree_of_endomorphism(AffineMap(M(rows))) == deg


class TestValidity:
    def test_canonical_data_are_valid(self):
        for kind, rows, _ in CANONICAL_SPECS:
            check = is_valid_lattes_datum(make_group(kind), AffineMap(M(rows)))
            assert check.ok, check.reason

    def test_witness_is_valid(self):
        kind, rows = WITNESS_SPEC
        assert is_valid_lattes_datum(make_group(kind), AffineMap(M(rows)))

    def test_determinant_one_rejected(self):
        check = is_valid_lattes_datum(make_group("p2"), AffineMap(M(((1, 0), (0, 1)))))
        assert not check.ok
        assert "det" in check.reason

    def test_non_normalizing_linear_part_rejected(self):
        check = is_valid_lattes_datum(make_group("p4"), AffineMap(M(((1, 0), (0, 2)))))
        assert not check.ok
        assert "normalize" in check.reason

    def test_non_integral_conjugated_translation_rejected(self):
        check = is_valid_lattes_datum(
            make_group("p4"),
            AffineMap(M(((1, 1), (-1, 1))), P("1/2", 0)),
        )
        assert not check.ok
        assert "translation" in check.reason

    def test_half_diagonal_shift_is_valid_for_p4(self):
        check = is_valid_lattes_datum(
            make_group("p4"),
            AffineMap(M(((1, 1), (-1, 1))), P("1/2", "1/2")),
        )
        assert check.ok

    def test_conjugation_exponent_reported(self):
        check = is_valid_lattes_datum(make_group("p4"), QUARTER_TURN_SCALED)
        # L = I + R commutes with R, so conjugation fixes the generator.
        assert check.conjugation_exponent == 1


class TestConjugation:
    def test_conjugate_translation_doubling(self):
        assert conjugate_translation(DOUBLING, P(1, 0)) == P(2, 0)

    def test_conjugate_translation_p4_matrix(self):
        assert conjugate_translation(QUARTER_TURN_SCALED, P(1, 1)) == P(2, 0)

    def test_linear_image_identity(self, rng):
        # Conjugating a lattice translation by A gives translation by L(gamma).
        for _ in range(200):
            m = M(((rng.randint(-3, 3), rng.randint(-3, 3)),
                   (rng.randint(-3, 3), rng.randint(-3, 3))))
            if m.det() == 0:
                continue
            a = AffineMap(m, P(Fraction(rng.randint(-4, 4), 2), Fraction(rng.randint(-4, 4), 2)))
            gamma = P(rng.randint(-5, 5), rng.randint(-5, 5))
            assert conjugate_translation(a, gamma) == m * gamma

    def test_equivariance_closure(self, rng):
        # For valid data, conjugation by A maps the group into itself.
        for _ in range(200):
            datum = random_valid_datum(rng)
            group, affine = datum.group, datum.map
            gamma = P(rng.randint(-3, 3), rng.randint(-3, 3))
            g = group.element(rng.randrange(group.order), gamma)
            h = conjugated_element(group, affine, g)
            # Exact equivariance: A(g(u)) = h(A(u)) on a probe point.
            u = P("1/7", "3/11")
            assert affine.apply(g.apply(u)) == h.apply(affine.apply(u))


class TestLifts:
    def test_translated_lifts_share_linear_part(self):
        lifts = translated_lifts(DOUBLING, radius=1)
        assert len(lifts) == 9
        assert all(l.linear_part == DOUBLING.linear_part for l in lifts)
        assert DOUBLING in lifts
        shifts = {(l.translation.x, l.translation.y) for l in lifts}
        assert (Fraction(1), Fraction(-1)) in shifts


class TestCoarseBound:
    def test_examples(self):
        assert coarse_bound(AffineMap(M(((2, 0), (0, 2))), P("1/2", 0))) == Fraction(1, 4)
        assert coarse_bound(AffineMap(M(((2, 0), (0, 2))), P(1, 1))) == 2


class TestContraction:
    def test_doubling_long_pair(self):
        report = contraction_check(DOUBLING, [(P(8, 0), P(0, 0))], n_max=8)
        assert report.ok
        assert report.first_n == 1

    def test_equal_points(self):
        report = contraction_check(DOUBLING, [(P("1/3", "1/3"), P("1/3", "1/3"))], n_max=8)
        assert report.ok
        assert report.first_n == 1

    def test_p4_random_pairs(self, rng):
        pairs = [
            (P(rng.randint(-10, 10), rng.randint(-10, 10)),
             P(rng.randint(-10, 10), rng.randint(-10, 10)))
            for _ in range(100)
        ]
        report = contraction_check(QUARTER_TURN_SCALED, pairs, n_max=20)
        assert report.ok
        assert report.first_n <= 20

    def test_non_expanding_rejected(self):
        with pytest.raises(ValueError):
            contraction_check(AffineMap(M(((3, 0), (0, 1)))), [(P(1, 0), P(0, 0))])


class TestBackwardOrbit:
    @pytest.mark.parametrize(
        "rows,shift",
        [
            (((2, 0), (0, 2)), ("1/2", 0)),
            (((1, 1), (-1, 1)), ("1/2", "1/2")),
            (((2, 1), (-1, 2)), (0, 0)),
        ],
    )
    def test_backward_orbit_is_cauchy(self, rows, shift):
        # Expanding linear part: the float backward orbit from a point of the
        # fundamental domain settles within 1e-9 by n = 60.  The slowest case
        # here contracts by 1/sqrt(2) per step.
        a = AffineMap(M(rows), P(*shift))
        x = (0.375, -0.25)
        previous = None
        for _ in range(60):
            x = a_inverse_float(a, x)
            if previous is not None:
                delta = max(abs(x[0] - previous[0]), abs(x[1] - previous[1]))
            previous = x
        assert delta < 1e-9


def a_inverse_float(a, point):
    inv = a.linear_part.to_rational().inverse()
    px = point[0] - float(a.translation.x)
    py = point[1] - float(a.translation.y)
    return (
        float(inv.a) * px + float(inv.b) * py,
        float(inv.c) * px + float(inv.d) * py,
    )
