import pytest

from tannercert.codes import LocalCode, TannerCode, TannerGraph
from tannercert.generate import hamming74


@pytest.fixture
def six_cycle():
    """3 variables joined in a cycle by 3 degree-2 parity (equality) checks."""
    graph = TannerGraph(3, [(0, 1), (1, 2), (2, 0)])
    return TannerCode(graph, [LocalCode.parity(2)] * 3)


@pytest.fixture
def repetition3():
    """Single local-code node carrying the length-3 repetition code."""
    graph = TannerGraph(3, [(0, 1, 2)])
    return TannerCode(graph, [LocalCode.repetition(3)])


@pytest.fixture
def hamming_code():
    """Single local-code node carrying the [7,4,3] code."""
    graph = TannerGraph(7, [tuple(range(7))])
    return TannerCode(graph, [hamming74()])
