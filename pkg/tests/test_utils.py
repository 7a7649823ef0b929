# tests/test_utils.py

import time

import pytest

from polyharm.variational.utils import run_parallel


def _slow_square(x):
    time.sleep(0.01 * (5 - x))
    return x * x


def test_order_is_preserved():
    assert run_parallel(_slow_square, range(5), threads=4) == [0, 1, 4, 9, 16]


def test_single_thread_runs_inline():
    assert run_parallel(_slow_square, [2, 3], threads=1) == [4, 9]


def test_exception_propagates():
    def fail(x):
        if x == 2:
            raise ValueError("boom")
        return x

    with pytest.raises(ValueError):
        run_parallel(fail, range(4), threads=2)
