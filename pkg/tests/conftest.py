from __future__ import annotations

import pytest

from localperiods.padic import make_field_context

INERT_D = {3: 2, 5: 2, 7: 3}
SPLIT_D = {3: 1, 5: 4, 7: 2}


@pytest.fixture
def inert3():
    return make_field_context(3, 12, "inert", 2)


@pytest.fixture
def split3():
    return make_field_context(3, 12, "split", 1)


@pytest.fixture
def ramified3():
    return make_field_context(3, 12, "ramified", 3)


@pytest.fixture(scope="session")
def field_context():
    def build(p: int, kind: str = "inert", N: int = 12):
        if kind == "inert":
            return make_field_context(p, N, kind, INERT_D[p])
        if kind == "split":
            return make_field_context(p, N, kind, SPLIT_D[p])
        return make_field_context(p, N, kind, p)

    return build
