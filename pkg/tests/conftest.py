"""
Shared fixtures: the standard example bunches and a testing app
"""
import pytest

from grapeqi import create_app
from grapeqi.models import GrapeBunch, SimpleGraph, Stem
from grapeqi.services import generators


@pytest.fixture(scope='session')
def app():
    return create_app('testing')


@pytest.fixture
def edge_bunch():
    """Single stem edge with one grape at each end"""
    return GrapeBunch.from_edges([('a', 'b')], {'a': 1, 'b': 1})


@pytest.fixture
def twigs_example():
    return generators.twigs_example_bunch()


@pytest.fixture
def picking_pair():
    return generators.picking_pair()


@pytest.fixture
def dynkin5():
    return generators.dynkin_bunch(5)


@pytest.fixture
def star3_ones():
    """3-star with one grape on every vertex"""
    return generators.star_bunch(3, 1, 1)


@pytest.fixture
def star4_ones():
    return generators.star_bunch(4, 1, 1)


@pytest.fixture
def path4_ones():
    """Path v0..v4 with one grape everywhere"""
    return generators.path_bunch(4)


@pytest.fixture
def abcd_bunch():
    """Path a-b-c-d with grapes (2, 0, 1, 0)"""
    return GrapeBunch.from_edges([('a', 'b'), ('b', 'c'), ('c', 'd')], {'a': 2, 'c': 1})


@pytest.fixture
def star3_graph():
    return SimpleGraph(['c', 'x', 'y', 'z'], [('c', 'x'), ('c', 'y'), ('c', 'z')])


@pytest.fixture
def triangle_graph():
    return SimpleGraph(['a', 'b', 'c'], [('a', 'b'), ('b', 'c'), ('c', 'a')])


@pytest.fixture
def star3_tree():
    return generators.star_stem(3)


@pytest.fixture
def path_tree():
    return Stem(['p', 'q', 'r'], [('p', 'q'), ('q', 'r')])
