import random

import pytest

from perfclose import PerfectClosureField, RationalField
from util import F2S, F2ST, F3S, random_rational, random_tower


@pytest.fixture
def tower2():
    return PerfectClosureField(F2S)


@pytest.fixture
def tower2t():
    return PerfectClosureField(F2ST)


class TestNormalize:
    def test_square_at_level_one_drops(self, tower2):
        s = tower2.base.variable("s")
        x = tower2.normalize(1, s * s)
        assert x == tower2.variable("s")
        assert x.level == 0

    def test_already_minimal_is_kept(self, tower2):
        s = tower2.base.variable("s")
        x = tower2.normalize(2, s)
        assert x.level == 2
        assert x.value == s

    def test_two_root_extractions(self, tower2):
        base = tower2.base
        s = base.variable("s")
        target = s / (s + base.one())
        deep = target.frobenius(2)
        # two explicit root extractions, the third must fail
        once = deep.pth_root(1)
        twice = once.pth_root(1)
        assert twice == target and twice.pth_root(1) is None
        x = tower2.normalize(3, deep)
        assert x.level == 1 and x.value == target

    def test_idempotent(self, tower2):
        rng = random.Random(21)
        for _ in range(100):
            x = random_tower(tower2, rng)
            again = tower2.normalize(x.level, x.value)
            assert again == x
            # minimality invariant
            assert x.level == 0 or x.value.pth_root(1) is None


class TestArithmetic:
    def test_add_cancels_in_char_two(self, tower2):
        s1 = tower2.variable("s", 1)
        assert (s1 + s1).is_zero
        assert (s1 + s1).level == 0

    def test_root_times_root(self, tower2):
        s1 = tower2.variable("s", 1)
        assert s1 * s1 == tower2.variable("s")

    def test_mixed_level_addition(self, tower2t):
        t1 = tower2t.variable("t", 1)
        s = tower2t.variable("s")
        total = t1 + s
        assert total.level == 1
        s_poly = tower2t.base.variable("s")
        t_poly = tower2t.base.variable("t")
        assert total.value == t_poly + s_poly * s_poly
        # squaring back recovers t + s^2
        assert total * total == tower2t.normalize(0, t_poly + s_poly * s_poly)

    def test_inverse(self, tower2):
        rng = random.Random(22)
        for _ in range(50):
            x = random_tower(tower2, rng)
            if x.is_zero:
                with pytest.raises(ZeroDivisionError):
                    x.inv()
            else:
                assert x * x.inv() == tower2.one()

    def test_level_monotonicity(self, tower2t):
        rng = random.Random(23)
        for _ in range(100):
            x = random_tower(tower2t, rng)
            y = random_tower(tower2t, rng)
            bound = max(x.level, y.level)
            assert (x + y).level <= bound
            assert (x * y).level <= bound


class TestPthRoot:
    def test_tower_generator(self, tower2t):
        t = tower2t.variable("t")
        assert t.pth_root(1) == tower2t.variable("t", 1)

    def test_root_exists_at_level_zero(self, tower2):
        s = tower2.base.variable("s")
        x = tower2.normalize(0, s * s)
        assert x.pth_root(1) == tower2.variable("s")

    def test_root_of_mixed_level_element(self, tower2t):
        base = tower2t.base
        t_poly = base.variable("t")
        s_poly = base.variable("s")
        x = tower2t.normalize(1, t_poly + s_poly * s_poly)  # t^(1/2) + s
        y = x.pth_root(1)
        assert y * y == x  # the defining property
        assert y == tower2t.normalize(2, t_poly + s_poly * s_poly)

    def test_power_roundtrip_seeded(self):
        rng = random.Random(24)
        for config in (F2S, F3S):
            tower = PerfectClosureField(config)
            p = config.p
            for _ in range(100):
                x = random_tower(tower, rng)
                assert x.pth_root(1).power(p) == x


class TestSubfieldPowers:
    def test_generator_not_a_fourth_power(self, tower2):
        s = tower2.variable("s")
        assert not s.in_subfield_power(0, 2)

    def test_fourth_power_is(self, tower2):
        base = tower2.base
        s = base.variable("s")
        x = tower2.normalize(0, s * s * s * s)
        assert x.in_subfield_power(0, 2)

    def test_level_one_root_membership(self, tower2):
        s1 = tower2.variable("s", 1)
        assert not s1.in_subfield_power(1, 1)
        assert s1.in_subfield_power(1, 0)

    def test_level_one_membership_by_enumeration(self, tower2):
        # brute-force: no monomial s^(a/2) with a <= 4 squares to s^(1/2)
        s1 = tower2.variable("s", 1)
        candidates = [tower2.zero(), tower2.one()]
        for a in range(1, 5):
            candidates.append(tower2.variable("s", 1).power(a))
        assert all(c.power(2) != s1 for c in candidates)


class TestAlphaChain:
    def test_alpha_powers_collapse(self):
        # alpha_m = t_m - s_m satisfies alpha_m = alpha_{m+1}^p for m <= 6
        tower = PerfectClosureField(F2ST)
        alphas = [tower.variable("t", m) - tower.variable("s", m) for m in range(8)]
        for m in range(7):
            assert alphas[m + 1].power(2) == alphas[m]

    def test_alpha_chain_char_three(self):
        from perfclose import FieldConfig

        cfg = FieldConfig(3, vars=("s", "t"))
        tower = PerfectClosureField(cfg)
        alphas = [tower.variable("t", m) - tower.variable("s", m) for m in range(7)]
        for m in range(6):
            assert alphas[m + 1].power(3) == alphas[m]


def test_rendering_examples(tower2t):
    t1 = tower2t.variable("t", 1)
    s1 = tower2t.variable("s", 1)
    assert str(t1 + s1) == "s^(1/2)+t^(1/2)"
    assert str(tower2t.variable("s")) == "s"
