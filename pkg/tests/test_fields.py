import random

import pytest

from perfclose import FieldConfig, PerfectClosureField, RationalField, ZeroDenominator
from util import F2S, F3S, F7S, random_nonzero_rational, random_rational


@pytest.fixture
def k2():
    return RationalField(F2S)


@pytest.fixture
def k7():
    return RationalField(F7S)


class TestNormalize:
    def test_cancels_common_factor(self, k2):
        s = k2.variable("s")
        one = k2.one()
        x = k2.normalize((s * s + s).num, s.num)
        assert x == s + one
        assert k2.format(x) == "s+1"

    def test_zero_normal_form(self, k2):
        s = k2.variable("s")
        x = k2.normalize(k2.zero().num, (s + k2.one()).num)
        assert x == k2.zero()
        assert k2.format(x) == "0"

    def test_constant_denominator_scaled(self, k7):
        # 2s/4 = (2 * inv(4)) s and inv(4) = 4^5 mod 7 = 2, so the result is 4s
        assert pow(4, 5, 7) == 2
        s = k7.variable("s")
        x = k7.from_int(2) * s / k7.from_int(4)
        assert x == k7.from_int(4) * s
        assert k7.format(x) == "4*s"

    def test_zero_denominator_rejected(self, k2):
        with pytest.raises(ZeroDenominator):
            k2.normalize(k2.one().num, k2.zero().num)

    def test_idempotent_bit_identical(self, k2):
        rng = random.Random(11)
        for _ in range(200):
            x = random_rational(k2, rng)
            again = k2.normalize(x.num, x.den)
            assert again == x
            assert k2.format(again) == k2.format(x)

    def test_denominator_monic_and_coprime(self, k7):
        rng = random.Random(12)
        for _ in range(100):
            x = random_rational(k7, rng)
            if x.is_zero:
                assert x.den.is_one
                continue
            assert x.den.lc == k7.fq.one
            assert x.num.gcd(x.den).is_one


class TestFrobenius:
    def test_char2_square(self, k2):
        s = k2.variable("s")
        one = k2.one()
        assert (s + one).frobenius(1) == s * s + one

    def test_identity_on_one(self, k2):
        for e in range(4):
            assert k2.one().frobenius(e) == k2.one()

    def test_cube_over_f3_matches_repeated_multiplication(self):
        k3 = RationalField(F3S)
        s = k3.variable("s")
        x = s / (s + k3.one())
        cube = x * x * x
        assert x.frobenius(1) == cube
        assert k3.format(cube) == "(s^3)/(s^3+1)"


class TestPthRoot:
    def test_simple_root(self, k2):
        s = k2.variable("s")
        one = k2.one()
        assert (s * s + one).pth_root(1) == s + one

    def test_generator_has_no_root(self, k2):
        assert k2.variable("s").pth_root(1) is None

    def test_depth_two_root(self, k2):
        s = k2.variable("s")
        one = k2.one()
        target = s / (s + one)
        x = target.frobenius(2)
        assert k2.format(x) == "(s^4)/(s^4+1)"
        assert x.pth_root(2) == target

    def test_zero_roots_are_zero(self, k2):
        for e in range(4):
            assert k2.zero().pth_root(e) == k2.zero()
        assert k2.zero().in_perfect_subfield

    def test_root_when_present_squares_back(self, k2):
        rng = random.Random(13)
        for _ in range(100):
            x = random_rational(k2, rng)
            root = x.pth_root(1)
            if root is not None:
                assert root.frobenius(1) == x


class TestPerfectSubfield:
    def test_constants_are_members(self, k7):
        assert k7.from_int(5).in_perfect_subfield

    def test_generator_is_not(self, k2):
        s = k2.variable("s")
        assert s.pth_root(1) is None
        assert not s.in_perfect_subfield

    def test_canonical_form_decides(self, k2):
        s = k2.variable("s")
        one = k2.one()
        x = (s * s + one) / (s + one)
        assert x == s + one
        assert not x.in_perfect_subfield

    def test_membership_stabilizes(self, k2):
        rng = random.Random(14)
        for _ in range(60):
            x = random_rational(k2, rng)
            absent = False
            for e in range(1, 6):
                has_root = x.pth_root(e) is not None
                if absent:
                    assert not has_root
                absent = absent or not has_root
            assert x.in_perfect_subfield == (x.pth_root(5) is not None)


class TestRoundtripsAndAxioms:
    def test_frobenius_root_roundtrip(self):
        rng = random.Random(15)
        for field in (RationalField(F2S), RationalField(F3S)):
            for _ in range(100):
                x = random_rational(field, rng)
                e = rng.choice((1, 2, 3))
                assert x.frobenius(e).pth_root(e) == x

    def test_field_axioms_sampled(self):
        rng = random.Random(16)
        for field in (RationalField(F2S), RationalField(F7S)):
            for _ in range(50):
                x = random_rational(field, rng)
                y = random_rational(field, rng)
                z = random_rational(field, rng)
                assert (x + y) + z == x + (y + z)
                assert x * (y + z) == x * y + x * z
                nz = random_nonzero_rational(field, rng)
                assert nz * nz.inv() == field.one()


class TestExtensionField:
    def test_f4_arithmetic(self):
        cfg = FieldConfig(2, 2, (1, 1, 1), ("s",))
        fq = RationalField(cfg).fq
        w = fq.generator()
        assert fq.mul(w, w) == fq.add(w, fq.one)          # w^2 = w + 1
        assert fq.pow(w, 3) == fq.one
        assert fq.mul(w, fq.inv(w)) == fq.one
        assert fq.frobenius(w, 1) == fq.mul(w, w)
        assert fq.pth_root(fq.frobenius(w, 1), 1) == w

    def test_f4_rational_roundtrip(self):
        cfg = FieldConfig(2, 2, (1, 1, 1), ("s",))
        field = RationalField(cfg)
        rng = random.Random(17)
        for _ in range(50):
            x = random_rational(field, rng)
            e = rng.choice((1, 2))
            assert x.frobenius(e).pth_root(e) == x

    def test_nonprime_characteristic_rejected(self):
        with pytest.raises(ValueError):
            FieldConfig(6)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            FieldConfig(2, 2, (1, 0, 1))  # w^2 + 1 = (w+1)^2

    def test_variable_names_validated(self):
        with pytest.raises(ValueError):
            FieldConfig(2, vars=("s", "s"))
        with pytest.raises(ValueError):
            FieldConfig(2, vars=("w",))
        with pytest.raises(ValueError):
            FieldConfig(2, vars=("no spaces",))


def test_values_are_shareable_and_hashable():
    field = RationalField(F2S)
    s = field.variable("s")
    x = s / (s + field.one())
    assert hash(x) == hash(field.normalize(x.num, x.den))
    assert len({x, field.normalize(x.num, x.den)}) == 1
