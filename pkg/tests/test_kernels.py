import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from synq import _accel, _kernels
from synq.game import GameSpec, make_graph_game, petersen_graph

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


@st.composite
def rule_arrays(draw):
    n = draw(st.integers(1, 4))
    bits = draw(st.lists(st.booleans(), min_size=n**4, max_size=n**4))
    return np.array(bits, dtype=bool).reshape(n, n, n, n)


@needs_numba
@given(rule_arrays())
def test_star_paths_agree(allowed):
    assert tuple(_kernels.star_witness_nb(allowed)) == tuple(_kernels.star_witness_np(allowed))


@needs_numba
@given(rule_arrays(), st.booleans())
def test_enumeration_paths_agree(allowed, invertible):
    compat = _kernels.compatibility(allowed)
    a = _kernels.enumerate_maps_nb(compat, invertible)
    b = _kernels.enumerate_maps_np(compat, invertible)
    assert a.tolist() == b.tolist()


@needs_numba
def test_enumeration_paths_agree_petersen():
    compat = _kernels.compatibility(make_graph_game(petersen_graph()).allowed)
    for inv in (False, True):
        a = _kernels.enumerate_maps_nb(compat, inv)
        b = _kernels.enumerate_maps_np(compat, inv)
        assert a.shape == b.shape and (a == b).all()


def test_enumeration_is_lexicographic():
    compat = _kernels.compatibility(GameSpec.synchronous(3, 3).allowed)
    rows = _kernels.enumerate_maps(compat, False).tolist()
    assert rows == sorted(rows) and len(rows) == 27


def test_env_flag_selects_numpy_path():
    code = "from synq import _accel; print(_accel.USE_NUMBA)"
    env = dict(os.environ, SYNQ_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_numpy_path_end_to_end(monkeypatch, crafted_star):
    from synq.game import check_star

    monkeypatch.setattr(_accel, "USE_NUMBA", False)
    assert check_star(crafted_star) == (False, (0, 0, 0, 1, 1, 1))
