"""
Pytest 配置和共享 fixtures

提供测试中常用的小超图 (P2, P4, H1, 三角形)、随机数生成器与临时目录。
顶点编号从 0 开始。
"""

import os
import sys
import tempfile

import numpy as np
import pytest

# 确保项目根目录在 path 中
_project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, _project_root)

from spectral.hypergraph import Hyperedge, SubmodularHypergraph  # noqa: E402
from spectral.submodular.weights import HomogeneousWeight  # noqa: E402


def graph(n, pairs, mu=None, theta=1.0):
    """Homogeneous 2-uniform hypergraph; μ defaults to degrees."""
    edges = tuple(Hyperedge(tuple(p), theta, HomogeneousWeight(2)) for p in pairs)
    if mu is None:
        mu = np.zeros(n)
        for a, b in pairs:
            mu[a] += theta
            mu[b] += theta
    return SubmodularHypergraph(n, np.asarray(mu, dtype=float), edges)


@pytest.fixture
def p2():
    """单条边 {0, 1}, μ = (1, 1)"""
    return graph(2, [(0, 1)])


@pytest.fixture
def p4():
    """路径 0-1-2-3, μ = 度数 = (1, 2, 2, 1)"""
    return graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def h1():
    """单条齐次超边 {0, 1, 2}, μ = (1, 1, 1)"""
    return SubmodularHypergraph(3, np.ones(3), (Hyperedge((0, 1, 2), 1.0, HomogeneousWeight(3)),))


@pytest.fixture
def triangle():
    """三角形, μ = 度数 = (2, 2, 2)"""
    return graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def rng():
    """提供固定种子的随机数生成器"""
    return np.random.default_rng(42)


@pytest.fixture
def temp_dir():
    """提供临时目录"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def project_root():
    """项目根目录"""
    return _project_root
