import pytest

from fusionkit.catalog import build_group, build_pair
from fusionkit.groups import GroupTable


def perms(sub):
    """Member permutations of a fusionkit subgroup, as a frozenset of tuples."""
    G = sub.parent
    return frozenset(G.perm_of(x) for x in sub.members)


def sub_from_perms(G, ps):
    return G.subgroup([G.index_of_perm(p) for p in ps])


def cyc(degree, *cycles):
    """0-based image tuple from 1-based cycles."""
    img = list(range(degree))
    for c in cycles:
        pts = [x - 1 for x in c]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


@pytest.fixture(scope="session")
def s4():
    return build_group("sym:4")


@pytest.fixture(scope="session")
def a4():
    return build_group("alt:4")


@pytest.fixture(scope="session")
def s3():
    return build_group("sym:3")


@pytest.fixture(scope="session")
def pair_s4a4():
    return build_pair("pair:(sym:4, alt:4, 2)")


@pytest.fixture(scope="session")
def pair_a4c2():
    return build_pair("pair:(product:(alt:4,cyclic:2), alt:4, 2)")


@pytest.fixture(scope="session")
def pair_s6a6():
    return build_pair("pair:(sym:6, alt:6, 2)")


@pytest.fixture(scope="session")
def pair_s3c3():
    return build_pair("pair:(product:(sym:3,cyclic:3), sym:3, 3)")


@pytest.fixture(scope="session")
def klein():
    return GroupTable.from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)], 4)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
