"""Shared helpers: deterministic instance pools and tiny independent oracles.

The tiny oracles deliberately avoid the library code paths they check:
fractional covers are enumerated over the half-integral grid with plain
itertools, optimal covers by scanning all subsets, and box coordinates by
exact Fraction powers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

import evocover as ec


def make_instances(count, seed0, n_values, p_values=(0.3, 0.6), w_values=(1, 8),
                   require_edges=False):
    """Deterministic pool of gnp instances cycling the parameter grids."""
    grid = itertools.cycle(itertools.product(n_values, p_values, w_values))
    out = []
    seed = seed0
    while len(out) < count:
        n, p, w_max = next(grid)
        g = ec.gnp(n, p, w_max=w_max, seed=seed)
        seed += 1
        if require_edges and g.m == 0:
            continue
        out.append(g)
    return out


def random_genotype(n, rng):
    return (rng.random(n) < 0.5).astype(np.uint8)


def np_rng(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def tiny_lp_value2(num_vertices, edges, weights):
    """Minimum doubled fractional cover value over {0, 1/2, 1}^k by enumeration."""
    best = None
    for a in itertools.product((0, 1, 2), repeat=num_vertices):
        if all(a[u] + a[v] >= 2 for u, v in edges):
            val = sum(a[i] * weights[i] for i in range(num_vertices))
            if best is None or val < best:
                best = val
    return best if best is not None else 0


def tiny_opt(g):
    """Minimum-weight cover by scanning all subsets; lexicographically
    smallest witness among ties."""
    best = None
    for bits in itertools.product((0, 1), repeat=g.n):
        if all(bits[u] or bits[v] for u, v in g.edges):
            c = sum(w for w, b in zip(g.weights, bits) if b)
            if best is None or c < best[0] or (c == best[0] and bits < best[1]):
                best = (c, bits)
    return best


def tiny_box_coord(value: Fraction, n: int) -> int:
    """Smallest k with (1 + 1/(2n))^k >= 1 + value, by exact Fraction powers."""
    base = 1 + Fraction(1, 2 * n)
    target = 1 + value
    k = 0
    power = Fraction(1)
    while power < target:
        power *= base
        k += 1
    return k


def all_graphs_up_to(n_max, weights_for):
    """Every labeled graph on 1..n_max vertices, weights via weights_for(n)."""
    for n in range(1, n_max + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for picks in itertools.product((False, True), repeat=len(pairs)):
            edges = [e for e, keep in zip(pairs, picks) if keep]
            yield ec.build_graph(n, weights_for(n), edges)


@pytest.fixture
def triangle():
    return ec.build_graph(3, [1, 1, 1], [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def single_edge_15():
    return ec.build_graph(2, [1, 5], [(0, 1)])


@pytest.fixture
def weighted_star():
    # center weight 2, three unit leaves
    return ec.build_graph(4, [2, 1, 1, 1], [(0, 1), (0, 2), (0, 3)])
