"""CSV fixtures written directly in the documented schemas."""

import pytest

from helpers_csv import RESULT_HEADER, SUMMARY_HEADER, write_csv


@pytest.fixture
def results_csv(tmp_path):
    """Two algorithms, two reps, three checkpoints, alpha = 0.5."""
    rows = []
    for alg, scale in (("ElimFusion", 10.0), ("DecoFusion", 1.0)):
        for rep in (0, 1):
            for i, t in enumerate((100, 200, 300), start=1):
                rew = scale * i * (1.0 + 0.1 * rep)
                duel = 0.5 * scale * i * (1.0 + 0.2 * rep)
                rows.append([alg, rep, t, 0.5 * rew + 0.5 * duel, rew, duel])
    return write_csv(tmp_path / "results.csv", RESULT_HEADER, rows)


@pytest.fixture
def zero_results_csv(tmp_path):
    rows = [["OptPlay", 0, t, 0.0, 0.0, 0.0] for t in (10, 20, 30)]
    return write_csv(tmp_path / "zero.csv", RESULT_HEADER, rows)


@pytest.fixture
def four_algorithm_csv(tmp_path):
    rows = []
    for j, alg in enumerate(
        ("ElimFusion", "ElimNoFusion", "DecoFusion", "MEDNoFusion"), start=1
    ):
        for rep in (0, 1):
            for t in (1000, 2000):
                val = j * t / 100 + rep
                rows.append([alg, rep, t, val, val, val])
    return write_csv(tmp_path / "four.csv", RESULT_HEADER, rows)


@pytest.fixture
def alpha_summary_csv(tmp_path):
    """DecoFusion alpha sweep whose aggregated series peaks at 0.5."""
    rows = []
    for i in range(11):
        a = round(0.1 * i, 1)
        agg = 100.0 - 300.0 * (a - 0.5) ** 2
        rows.append(["DecoFusion", "alpha-grid", a, agg, 5.0,
                     a * 120.0, 2.0, (1 - a) * 130.0, 3.0])
    return write_csv(tmp_path / "alpha.csv", SUMMARY_HEADER, rows)


@pytest.fixture
def gap_summary_csv(tmp_path):
    rows = []
    for alg, base in (("ElimFusion", 4000.0), ("DecoFusion", 100.0)):
        for d in (0.06, 0.11, 0.16, 0.21):
            val = base * 0.11 / d
            rows.append([alg, "reward-gap-grid", d, val, val / 20,
                         val / 2, 1.0, val / 2, 1.0])
    return write_csv(tmp_path / "gaps.csv", SUMMARY_HEADER, rows)
