"""Shared fixtures: the small operators every test file keeps reaching for."""

import numpy as np
import pytest


def mat(rows):
    return np.array(rows, dtype=np.complex128)


@pytest.fixture
def pauli():
    return {
        "I": mat([[1, 0], [0, 1]]),
        "X": mat([[0, 1], [1, 0]]),
        "Y": mat([[0, -1j], [1j, 0]]),
        "Z": mat([[1, 0], [0, -1]]),
    }


@pytest.fixture
def p0():
    return mat([[1, 0], [0, 0]])


@pytest.fixture
def p1():
    return mat([[0, 0], [0, 1]])
