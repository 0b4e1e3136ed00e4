from __future__ import annotations

import random

import pytest

from tribound.cochain import CochainFn
from tribound.diagram import Diagram, diagram_from_dict
from tribound.fixtures import closed_braid_code, load_fixture


@pytest.fixture(scope="session")
def diagrams() -> dict[str, Diagram]:
    return {name: load_fixture(name) for name in ("d1", "d2", "d3", "d4", "d5", "d6")}


@pytest.fixture(scope="session")
def f3() -> CochainFn:
    return CochainFn.build("(x-y)*(y-z)*z", 3)


@pytest.fixture(scope="session")
def f5() -> CochainFn:
    return CochainFn.build("(x+y)^3*(y+z)*(y-z)^3*z^5", 5)


@pytest.fixture(scope="session")
def f4() -> CochainFn:
    return CochainFn.build("(x+y)^2*(y-z)^3*z^5", 4)


def random_closed_braid(rng: random.Random, name: str = "random") -> Diagram:
    """A random connected braid-closure diagram (2 to 4 strand positions)."""
    strands = rng.randint(2, 4)
    word = [(col, rng.choice("LR")) for col in range(strands - 1)]
    for _ in range(rng.randint(0, 5)):
        word.append((rng.randrange(strands - 1), rng.choice("LR")))
    rng.shuffle(word)
    # keep every column involved after the shuffle
    touched = {c for c, _ in word} | {c + 1 for c, _ in word}
    assert touched == set(range(strands))
    code = closed_braid_code(strands, word, name=name)
    d = diagram_from_dict(code)
    return d


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(20240831)
