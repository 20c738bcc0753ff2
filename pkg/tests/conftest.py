import pytest

from knotmoves.corpus import corpus
from knotmoves.diagram import Diagram, parse_pd

# Knot Atlas 3_1 code; this chirality has writhe -3 (left-handed).
LEFT_TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


@pytest.fixture(scope="session")
def left_trefoil() -> Diagram:
    return parse_pd(LEFT_TREFOIL_PD)


@pytest.fixture(scope="session")
def right_trefoil(left_trefoil) -> Diagram:
    return left_trefoil.mirror()


@pytest.fixture(scope="session")
def unknot() -> Diagram:
    return Diagram.unknot()


@pytest.fixture(scope="session")
def knots() -> dict:
    return corpus(include_unknot=True)


@pytest.fixture(scope="session")
def small_knots() -> dict:
    return corpus(max_crossings=7, include_unknot=True)
