import pytest

from cohomolab.corpus import load_index
from cohomolab.groups import build_group, group_from_permutations

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def corpus():
    return load_index()


@pytest.fixture(scope="session")
def groups(corpus):
    return {name: e.group() for name, e in corpus.items()}


def cyclic(n):
    return group_from_permutations([[(i + 1) % n for i in range(n)]], f"C{n}")[0]


@pytest.fixture(scope="session")
def S3(groups):
    return groups["S3"]


@pytest.fixture(scope="session")
def C2(groups):
    return groups["C2"]


@pytest.fixture(scope="session")
def D4(groups):
    return groups["D4"]


@pytest.fixture(scope="session")
def trivial_group():
    return build_group([[0]], "trivial")
