import math
import os

import pytest

import qctl
from qctl import Quaternion, QPoly, StateSpace, i, j, k


def example_plant():
    return StateSpace(F=[[1, i], [j, k]], G=[[i], [0]], H=[[1, 0]], J=0)


def test_hamilton_product():
    assert i * j == k
    assert j * i == -k
    assert (Quaternion(1, 2, 3, 4) * Quaternion(5, 6, 7, 8)).to_tuple() == (-60, 12, 30, 24)


def test_plant_eigenvalues():
    classes = qctl.right_eigenvalues([[1, i], [j, k]])
    assert len(classes) == 2
    for c in classes:
        assert math.isclose(c.norm(), math.sqrt(2), rel_tol=1e-12)
    assert math.isclose(classes[0].re, (1 + math.sqrt(3)) / 2, rel_tol=1e-12)


def test_zeros_of_real_polynomial():
    zeros, spheres = qctl.right_zeros(QPoly([12, -7, 1]))
    assert sorted(round(z.w, 9) for z in zeros) == [3, 4]
    assert spheres == []


def test_design_end_to_end():
    plant = qctl.tf_left(example_plant())
    r = qctl.place_poles(plant, [3, 4])
    assert r.stable
    assert r.closed_loop.order() == 3
    zeros, _ = qctl.right_zeros(r.T_w.den)
    assert sorted(round(z.w, 6) for z in zeros) == [3, 4]
    y = qctl.simulate_random(r.closed_loop, 80, 7)
    assert y[-1].norm() < 1e-3 * max(q.norm() for q in y)


def test_solve_and_errors():
    x, y = qctl.solve_diophantine(QPoly([1]), QPoly([0, 1]), QPoly([2, 3]))
    assert x.coeffs == [Quaternion(2)]
    with pytest.raises(qctl.QctlError, match="Unsolvable"):
        qctl.solve_diophantine(QPoly([0, 1]), QPoly([0, 1]), QPoly([1]))


def test_json_round_trip():
    ss = example_plant()
    back = StateSpace.from_json(ss.to_json())
    assert back.F == ss.F and back.J == ss.J


def test_plant_file():
    data = os.environ.get("QCTL_DATA")
    if not data:
        pytest.skip("QCTL_DATA not set")
    with open(os.path.join(data, "plant.json")) as fh:
        ss = StateSpace.from_json(fh.read())
    assert ss.order() == 2
