import os
import subprocess
import sys

import pytest
from oracles import brute_max_slack

from sizelinear import _kernels
from sizelinear.certify import is_dependent, max_density_slack
from sizelinear.construct import greedy_high_girth
from sizelinear.ramsey import arrows
from test_certify import random_corpus

BACKENDS = ["numba", "python"]


def test_env_flag_selects_python_backend():
    env = dict(os.environ, SIZELINEAR_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from sizelinear import _kernels; print(_kernels.default_backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.kernels_for("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
def test_pebble_game_matches_brute_force(backend):
    for g in random_corpus(200, 8, seed=3):
        assert is_dependent(g, backend) == (brute_max_slack(g) is not None)


@pytest.mark.parametrize("backend", BACKENDS)
def test_max_slack_matches_brute_force(backend):
    for g in random_corpus(120, 8, seed=4):
        found = max_density_slack(g, "exhaustive", backend)
        expected = brute_max_slack(g)
        assert (found is None) == (expected is None)
        if found:
            assert found[0] == expected


def test_greedy_backends_agree():
    for seed in range(5):
        a = greedy_high_girth(25, 4, 5, seed, backend="numba")
        b = greedy_high_girth(25, 4, 5, seed, backend="python")
        assert a[0] == b[0]


@pytest.mark.parametrize("pair,n", [(("K3", "K3"), 5), (("K3", "K3"), 6), (("P4", "K3"), 6), (("C4", "M2"), 5)])
def test_arrow_backends_agree(G, pair, n):
    a = arrows(G(pair[0]), G(pair[1]), n, backend="numba")
    b = arrows(G(pair[0]), G(pair[1]), n, backend="python")
    assert (a.arrows, a.nodes, a.witness) == (b.arrows, b.nodes, b.witness)
