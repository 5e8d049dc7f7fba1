import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from locsys.algebra import block_incidence_algebra, change_basis, direct_sum, null_algebra
from locsys.linear import GF, QQ, Mat, inverse

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [QQ, GF(2), GF(7), GF(101)]

fields = st.sampled_from(FIELDS)
small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, field=None, max_rows=6, max_cols=6, sparse=False):
    f = field or draw(fields)
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = st.integers(-3, 3) if not sparse else st.sampled_from([0, 0, 0, 0, 0, 1, -1, 2])
    if f.characteristic == 0:
        vals = st.one_of(vals, st.fractions(-3, 3, max_denominator=4)) if not sparse else vals
    rows = draw(st.lists(st.lists(vals, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_rows(f, rows, cols=c)


@st.composite
def vector_sets(draw, field, n, max_count=5):
    k = draw(st.integers(0, max_count))
    return [tuple(field(x) for x in draw(st.lists(small_ints, min_size=n, max_size=n))) for _ in range(k)]


@st.composite
def incidence_algebras(draw, max_dim=16, scramble=True, field=None, null_part=False):
    """Block incidence algebra over Q or GF(p > dim), optionally in a scrambled basis."""
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    while True:
        nb = rng.randint(1, 3)
        sizes = [rng.choice([1, 1, 2, 3]) for _ in range(nb)]
        rel = {(i, j) for i in range(nb) for j in range(i + 1, nb) if rng.random() < 0.5}
        rel |= {(i, l) for (i, j) in rel for (k, l) in rel if j == k}
        pairs = {(i, i) for i in range(nb)} | rel
        n = sum(sizes)
        dim = sum(sizes[i] * sizes[j] for i, j in pairs)
        if dim <= max_dim:
            break
    field = field or draw(st.sampled_from([QQ, GF(37)]))
    a = block_incidence_algebra(sizes, pairs, field)
    if null_part and a.dim < max_dim and draw(st.booleans()):
        a = direct_sum(a, null_algebra(draw(st.integers(1, max_dim - a.dim)), field))
    if scramble:
        g = [[field(1) if i == j else 0 for j in range(a.dim)] for i in range(a.dim)]
        for _ in range(a.dim):
            i, j = sorted(rng.sample(range(a.dim), 2)) if a.dim > 1 else (0, 0)
            if i != j:
                g[i][j] = field(rng.randint(-2, 2))
        gm = Mat.from_rows(field, g)
        a = change_basis(a, gm, inverse(gm))
    return a


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
