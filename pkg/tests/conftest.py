import pytest

from latcoh import make_graph


@pytest.fixture(autouse=True)
def no_leftover_faults():
    from latcoh import faults
    faults.clear()
    yield
    faults.clear()


def vertex(weight, name="a"):
    return make_graph(([(name, weight)], []))


def chain(*weights):
    vspec = [("v%d" % i, w) for i, w in enumerate(weights)]
    espec = [("v%d" % i, "v%d" % (i + 1)) for i in range(len(weights) - 1)]
    return make_graph((vspec, espec))


def e8():
    names = "abcdefgh"
    vspec = [(c, -2) for c in names]
    espec = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"),
             ("e", "f"), ("f", "g"), ("e", "h")]
    return make_graph((vspec, espec))


@pytest.fixture
def rp3():
    return vertex(-2)


@pytest.fixture
def s3():
    return vertex(-1)
