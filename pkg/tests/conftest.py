import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from oracles import graph_from_pairs  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


@pytest.fixture
def path3():
    return graph_from_pairs(3, [(0, 1), (1, 2)])


@pytest.fixture
def star4():
    return graph_from_pairs(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def k4():
    return graph_from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def write_csv(tmp_path):
    counter = [0]

    def _write(text: str, name: str | None = None) -> str:
        counter[0] += 1
        path = tmp_path / (name or f"series{counter[0]}.csv")
        path.write_text(text, newline="\n")
        return str(path)

    return _write
