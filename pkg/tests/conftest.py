import csv
from pathlib import Path

import pytest

from dancesync.synth import SynthConfig, generate

DATA_DIR = Path(__file__).parent / "data"


def assert_valid_path(result, n, m, rel_tol=1e-9):
    """Path must be monotone, contiguous, span the grid, and sum to distance."""
    path = result.path
    assert path[0] == (0, 0)
    assert path[-1] == (n - 1, m - 1)
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        assert (i1 - i0, j1 - j0) in ((1, 0), (0, 1), (1, 1))
    return path


@pytest.fixture(scope="session")
def rate_reference_rows():
    """Published (avg, max, rate) triples used as a regression fixture."""
    with open(DATA_DIR / "rate_reference.csv", newline="") as handle:
        return [
            (
                row["scene"],
                row["feature"],
                float(row["avg_dtw_distance"]),
                float(row["max_dtw_distance"]),
                float(row["synchrony_rate_percent"]),
            )
            for row in csv.DictReader(handle)
        ]


@pytest.fixture(scope="session")
def dance_scene():
    return generate(SynthConfig(template="arm_wave", performers=4, frames=36, seed=11))


@pytest.fixture(scope="session")
def jump_scene():
    return generate(SynthConfig(template="jump", performers=4, frames=36, seed=11))


@pytest.fixture(scope="session")
def down_scene():
    return generate(SynthConfig(template="squat", performers=4, frames=36, seed=11))
