"""Shared fans and Picard lattices, built once per test session."""

import sys
from pathlib import Path

import pytest

# Add parent directory for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from analyzer.catalog import resolve
from toric.divisor_theory import TDivisor, picard

DATA_DIR = Path(__file__).parent.parent / 'data'


@pytest.fixture(scope='session')
def data_dir():
    return DATA_DIR


@pytest.fixture(scope='session')
def p1():
    return resolve('P1')


@pytest.fixture(scope='session')
def p2():
    return resolve('P2')


@pytest.fixture(scope='session')
def p3():
    return resolve('P3')


@pytest.fixture(scope='session')
def p1p1():
    return resolve('P1xP1')


@pytest.fixture(scope='session')
def f1():
    return resolve('F1')


@pytest.fixture(scope='session')
def f2():
    return resolve('F2')


@pytest.fixture(scope='session')
def dp6():
    return resolve('dP6')


@pytest.fixture(scope='session')
def v2():
    return resolve('V2')


@pytest.fixture(scope='session')
def ray_class():
    """k times the class of the prime divisor at a given ray."""
    def build(entry, vector, k=1):
        fan = entry.fan
        return picard(fan).class_of(TDivisor.prime(fan.n_rays, fan.ray_index(vector)).scale(k))
    return build
