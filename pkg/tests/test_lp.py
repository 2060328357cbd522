from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from powerkit.lp import LPError, RationalLP


def _build(A, b, c, rule="auto"):
    lp = RationalLP(b, rule=rule)
    for j in range(len(c)):
        lp.add_column({i: A[i][j] for i in range(len(b))}, c[j], tag=j)
    return lp


lp_instances = st.integers(1, 4).flatmap(lambda m: st.integers(m, 7).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m),
    st.lists(st.integers(-5, 5), min_size=m, max_size=m),
    st.lists(st.integers(-5, 5), min_size=n, max_size=n),
)))


@settings(max_examples=300, deadline=None)
@given(lp_instances, st.sampled_from(["auto", "bland"]))
def test_status_and_optimum_match_highs(inst, rule):
    A, b, c = inst
    lp = _build(A, b, c, rule)
    status = lp.solve()
    ref = linprog(-np.array(c, float), A_eq=np.array(A, float), b_eq=np.array(b, float),
                  bounds=[(0, None)] * len(c), method="highs")
    expect = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert status == expect
    if status == "optimal":
        assert abs(float(lp.objective()) - (-ref.fun)) < 1e-7
        x = [lp.value(j) for j in lp.structural()]
        # exact primal feasibility
        for i in range(len(b)):
            assert sum(F(A[i][j]) * x[j] for j in range(len(c))) == b[i]
        assert all(v >= 0 for v in x)
        # dual feasibility and complementary slackness, exactly
        y = lp.duals()
        for j in range(len(c)):
            red = F(c[j]) - sum(y[i] * A[i][j] for i in range(len(b)))
            assert red <= 0
            assert red == 0 or x[j] == 0
        assert sum(y[i] * b[i] for i in range(len(b))) == lp.objective()


def test_warm_start_column_generation():
    # max x0 + 2 x1 s.t. x0 + x1 + s = 4
    lp = RationalLP([4])
    lp.add_column([1], 1)
    lp.add_column([1], 0)  # slack
    assert lp.solve() == "optimal" and lp.objective() == 4
    j = lp.add_column([1], 2)
    assert lp.reduced_cost(j) > 0
    assert lp.solve() == "optimal" and lp.objective() == 8
    assert lp.value(j) == 4


def test_disable_keeps_column_out():
    lp = RationalLP([1])
    a = lp.add_column([1], 1)
    b = lp.add_column([1], 5)
    lp.disable(b)
    assert lp.solve() == "optimal"
    assert lp.objective() == 1 and lp.value(a) == 1


def test_negative_rhs_orientation():
    # -x0 = -3  ->  x0 = 3; dual reported in the caller's sign convention
    lp = RationalLP([-3])
    lp.add_column([-1], 2)
    assert lp.solve() == "optimal"
    assert lp.objective() == 6
    assert lp.duals() == [-2]


def test_iteration_cap():
    lp = RationalLP([1, 1])
    lp.add_column([1, 0], 1)
    lp.add_column([0, 1], 1)
    with pytest.raises(LPError):
        lp.solve(max_iter=1)


def test_bad_rule():
    with pytest.raises(ValueError):
        RationalLP([1], rule="dantzig")
