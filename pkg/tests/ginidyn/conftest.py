import json
import os
from contextlib import contextmanager
from importlib.metadata import version

import numpy as np
from click.testing import CliRunner
from hypothesis import strategies as st

from ginidyn import PATH_DEFAULT_CONFIGS
from ginidyn.core.dist import Dist
from ginidyn.main import cli

if version("click") >= "8.2.0":
    runner = CliRunner()
else:
    runner = CliRunner(mix_stderr=False)  # pylint: disable=unexpected-keyword-arg


def click_call(*cmd):
    """Run a ginidyn command."""
    return runner.invoke(cli, ["--no-color", "-vvv", *cmd], catch_exceptions=False)


@contextmanager
def isolated_fs():
    """Create isolated file system to run test."""
    with runner.isolated_filesystem() as tmp:
        yield tmp


def write_json(path, content):
    """Dump a test input file."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(content, fh)
    return path


def shipped_config(kind, name):
    """Path of a configuration shipped with ginidyn."""
    return os.path.join(PATH_DEFAULT_CONFIGS, kind, f"{name}.json")


def load_shipped_config(kind, name):
    with open(shipped_config(kind, name), encoding="utf-8") as fh:
        return json.load(fh)


@st.composite
def dists(draw, min_trunc=0, max_trunc=12, positive_mean=False):
    """Random valid distributions, normalized from non-negative weights."""
    n = draw(st.integers(min_value=min_trunc, max_value=max_trunc))
    weights = draw(
        st.lists(
            st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1.0)),
            min_size=n + 1,
            max_size=n + 1,
        ).filter(lambda w: sum(w) > 1e-3)
    )
    probs = np.array(weights) / sum(weights)
    if positive_mean and probs[1:].sum() == 0.0:
        probs = np.full(n + 1, 1.0 / (n + 1)) if n > 0 else probs
    return Dist(probs)


def random_dist(rng, trunc, sparsity=0.0):
    """Reproducible random distribution for loop-based property checks."""
    weights = rng.random(trunc + 1)
    if sparsity:
        weights[rng.random(trunc + 1) < sparsity] = 0.0
    if weights.sum() == 0.0:
        weights[0] = 1.0
    return Dist(weights / weights.sum())
