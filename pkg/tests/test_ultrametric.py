"""Tests for the coset tree: enumeration, valuations, measures and ring maps."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from models import Coset, Params  # noqa: E402
from services.ultrametric import (  # noqa: E402
    additive_measure,
    digit_shift,
    enumerate_cosets,
    layer_measure,
    lift_to_level,
    lifts,
    multiplicative_measure,
    reflect,
    shell_measure,
    total_volume,
    unit_multiply,
    valuation_of_difference,
)
from utils.errors import (  # noqa: E402
    LevelMismatchError,
    UnresolvedValuationError,
    UnsupportedForExtensionError,
)


@pytest.fixture
def small_params():
    return Params(p=3, m=2, k=2)


class TestEnumerateCosets:
    @pytest.mark.parametrize(
        "p,f,m,k",
        [(2, 1, 1, 1), (2, 1, 2, 3), (3, 1, 2, 2), (2, 2, 1, 2), (3, 2, 3, 1)],
    )
    def test_count_and_canonical_order(self, p, f, m, k):
        params = Params(p=p, f=f, m=m, k=k)
        cosets = enumerate_cosets(params)
        assert len(cosets) == m * (params.q - 1) * params.q ** (k - 1)
        assert cosets == sorted(cosets)
        assert len(set(cosets)) == len(cosets)

    def test_small_case_explicitly(self):
        assert enumerate_cosets(Params(p=2, m=2, k=2)) == [
            Coset(0, (1, 0)),
            Coset(0, (1, 1)),
            Coset(1, (1, 0)),
            Coset(1, (1, 1)),
        ]


class TestValuationOfDifference:
    def test_different_valuations(self):
        assert valuation_of_difference(Coset(0, (1, 2)), Coset(2, (1, 0))) == 0

    def test_first_differing_digit(self):
        assert valuation_of_difference(Coset(1, (1, 0, 2)), Coset(1, (1, 0, 1))) == 3
        assert valuation_of_difference(Coset(1, (2, 0)), Coset(1, (1, 0))) == 1

    def test_identical_cosets_are_unresolved(self):
        with pytest.raises(UnresolvedValuationError, match="unresolved"):
            valuation_of_difference(Coset(0, (1, 1)), Coset(0, (1, 1)))


class TestMeasures:
    def test_layers_sum_to_the_valuation_shells(self, small_params):
        cosets = enumerate_cosets(small_params)
        for s in range(small_params.m):
            layer = sum(additive_measure(c, small_params) for c in cosets if c.s == s)
            assert layer == layer_measure(s, small_params.q)

    def test_multiplicative_total_is_volume(self, small_params):
        total = sum(multiplicative_measure(c, small_params) for c in enumerate_cosets(small_params))
        assert total == total_volume(small_params) == Fraction(4, 3)

    def test_shell_measures(self):
        params = Params(p=3, m=2)
        assert shell_measure(0, 0, params) == Fraction(1, 3)
        assert shell_measure(0, 2, params) == Fraction(2, 27)
        assert shell_measure(1, 1, params) == Fraction(1, 9)
        with pytest.raises(ValueError):
            shell_measure(1, 0, params)

    def test_level_is_checked(self, small_params):
        with pytest.raises(LevelMismatchError):
            additive_measure(Coset(0, (1,)), small_params)


class TestLifts:
    def test_lifts_append_one_digit(self):
        assert lifts(Coset(1, (2,)), 3) == [Coset(1, (2, 0)), Coset(1, (2, 1)), Coset(1, (2, 2))]

    def test_lift_to_level(self):
        assert lift_to_level(Coset(0, (1,)), 3) == Coset(0, (1, 0, 0))
        with pytest.raises(LevelMismatchError):
            lift_to_level(Coset(0, (1, 0)), 1)


class TestRingMaps:
    def test_unit_multiply(self):
        params = Params(p=3, m=1, k=2)
        assert unit_multiply(Coset(0, (2, 1)), 2, params) == Coset(0, (1, 0))

    def test_unit_multiply_rejects_non_units(self):
        with pytest.raises(ValueError, match="not a unit"):
            unit_multiply(Coset(0, (1,)), 3, Params(p=3, m=1))

    def test_unit_multiply_is_a_bijection(self, small_params):
        cosets = enumerate_cosets(small_params)
        images = {unit_multiply(c, 5, small_params) for c in cosets}
        assert images == set(cosets)

    def test_reflect(self):
        assert reflect(Coset(0, (1,)), Params(p=2, m=2, k=1)) == Coset(1, (1,))

    def test_reflect_is_an_involution(self, small_params):
        for c in enumerate_cosets(small_params):
            image = reflect(c, small_params)
            assert image.s == small_params.m - 1 - c.s
            assert reflect(image, small_params) == c

    def test_digit_shift(self):
        params = Params(p=2, m=2, k=3)
        x = Coset(0, (1, 0, 0))
        y = Coset(1, (1, 0, 0))
        assert digit_shift(x, y, 3, params) == Coset(0, (1, 1, 1))
        with pytest.raises(ValueError):
            digit_shift(x, y, 2, params)

    def test_ring_maps_need_base_field(self):
        params = Params(p=2, f=2, m=2, k=1)
        c = Coset(0, (3,))
        with pytest.raises(UnsupportedForExtensionError, match="unsupported for extensions"):
            unit_multiply(c, 1, params)
        with pytest.raises(UnsupportedForExtensionError):
            reflect(c, params)
