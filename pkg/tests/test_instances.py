"""Built-in instance families and instance-reference resolution."""

import numpy as np
import pytest

from drbandits.core import validate_instance
from drbandits.instances import (
    DUELING_GAP_GRID,
    REWARD_GAP_GRID,
    builtin_instance,
    list_builtin_instances,
    resolve_instance,
)


class TestK16:
    def test_spot_values(self, k16_instance):
        assert k16_instance.mu[0] == 0.86
        assert k16_instance.nu[0, 15] == 0.98

    def test_first_row(self, k16_instance):
        row1 = [0.50, 0.54, 0.57, 0.60, 0.63, 0.65, 0.69, 0.71,
                0.73, 0.76, 0.78, 0.82, 0.86, 0.91, 0.95, 0.98]
        assert np.array_equal(k16_instance.nu[0], row1)

    def test_mu_vector(self, k16_instance):
        mu = [0.86, 0.80, 0.75, 0.70, 0.65, 0.60, 0.55, 0.50,
              0.45, 0.40, 0.35, 0.30, 0.25, 0.20, 0.15, 0.10]
        assert np.array_equal(k16_instance.mu, mu)

    def test_validates(self, k16_instance):
        assert validate_instance(k16_instance).ok


class TestRewardGapFamily:
    def test_means_at_smallest_gap(self):
        inst = builtin_instance("reward-gap", 0.06)
        assert np.allclose(inst.mu, [0.9, 0.84, 0.78, 0.72, 0.66])

    def test_fixed_dueling_matrix(self):
        inst = builtin_instance("reward-gap", 0.11)
        assert inst.nu[0, 1] == 0.53
        assert inst.nu[4, 0] == 0.38

    @pytest.mark.parametrize("delta", REWARD_GAP_GRID)
    def test_grid_validates(self, delta):
        assert validate_instance(builtin_instance("reward-gap", delta)).ok

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            builtin_instance("reward-gap", 0.225)
        with pytest.raises(ValueError, match="outside"):
            builtin_instance("reward-gap", -0.01)

    def test_off_grid_warns(self):
        with pytest.warns(UserWarning, match="off the standard grid"):
            builtin_instance("reward-gap", 0.10)

    def test_missing_parameter(self):
        with pytest.raises(ValueError, match="requires a gap parameter"):
            builtin_instance("reward-gap")


class TestDuelingGapFamily:
    def test_corner_probability(self):
        inst = builtin_instance("dueling-gap", 0.05)
        assert inst.nu[0, 4] == pytest.approx(0.70, abs=1e-12)

    def test_fixed_means(self):
        inst = builtin_instance("dueling-gap", 0.03)
        assert np.allclose(inst.mu, [0.9, 0.84, 0.78, 0.72, 0.66])

    @pytest.mark.parametrize("delta", DUELING_GAP_GRID)
    def test_grid_validates(self, delta):
        assert validate_instance(builtin_instance("dueling-gap", delta)).ok

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            builtin_instance("dueling-gap", 0.125)

    def test_off_grid_warns(self):
        with pytest.warns(UserWarning, match="off the standard grid"):
            builtin_instance("dueling-gap", 0.04)


class TestResolution:
    def test_unknown_name(self):
        with pytest.raises(KeyError, match="unknown builtin"):
            builtin_instance("mystery")

    def test_listing(self):
        assert list_builtin_instances() == [
            "appendix-f-k16", "reward-gap", "dueling-gap",
        ]

    def test_parenthesized_reference(self):
        inst = resolve_instance("reward-gap(0.11)")
        assert inst.mu[1] == pytest.approx(0.79, abs=1e-12)

    def test_plain_builtin_reference(self):
        assert resolve_instance("appendix-f-k16").K == 16

    def test_file_reference(self, tmp_path):
        path = tmp_path / "inst.yaml"
        path.write_text("K: 2\nmu: [0.9, 0.6]\nnu: [[0.5, 0.7], [0.3, 0.5]]\n")
        assert resolve_instance(str(path)).K == 2
