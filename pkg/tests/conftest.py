import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from groupoidal import HaarSystem
from groupoidal.fixtures import (
    cyclic_group,
    cyclic_self_equivalence,
    pair_groupoid,
    pair_trivialization,
    trivial_group,
)


@pytest.fixture
def pair2():
    g = pair_groupoid(2)
    return g, HaarSystem.counting(g)


@pytest.fixture
def cyclic2():
    g = cyclic_group(2)
    return g, HaarSystem.counting(g)


@pytest.fixture
def trivia():
    g = trivial_group()
    return g, HaarSystem.counting(g)


@pytest.fixture
def pair_trivial2():
    Z = pair_trivialization(2)
    return Z, HaarSystem.counting(Z.left_groupoid), HaarSystem.counting(Z.right_groupoid)


@pytest.fixture
def self2():
    Z = cyclic_self_equivalence(2)
    return Z, HaarSystem.counting(Z.left_groupoid), HaarSystem.counting(Z.right_groupoid)
