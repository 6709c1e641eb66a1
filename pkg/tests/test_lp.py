"""Exact fractional cover solver against the enumeration oracle.

Expected values below were computed by brute force over the half-integral
grid (see tiny_lp_value2) before being frozen into assertions.
"""

from __future__ import annotations

import numpy as np
import pytest

import evocover as ec
from conftest import make_instances, np_rng, random_genotype, tiny_lp_value2


def full_residual(g):
    return ec.residual(g, [0] * g.n)


def assert_valid_solution(rg, weights, sol):
    w = [weights[i] for i in rg.kept]
    assert all(a in (0, 1, 2) for a in sol.assign2)
    for u, v in rg.edges:
        assert sol.assign2[u] + sol.assign2[v] >= 2
    assert sum(a * wi for a, wi in zip(sol.assign2, w)) == sol.value2


def test_single_edge_weighted(single_edge_15):
    sol = ec.solve_lp(full_residual(single_edge_15), single_edge_15.weights)
    assert sol.value2 == 2  # LP = 1, y = (1, 0)
    assert sol.assign2 == (2, 0)


def test_unit_triangle(triangle):
    sol = ec.solve_lp(full_residual(triangle), triangle.weights)
    assert sol.value2 == 3  # LP = 3/2, all halves
    assert sol.assign2 == (1, 1, 1)


def test_weighted_star_center_one(weighted_star):
    sol = ec.solve_lp(full_residual(weighted_star), weighted_star.weights)
    assert sol.value2 == 4  # LP = 2, center y = 1
    assert sol.assign2 == (2, 0, 0, 0)


def test_edgeless_graph():
    g = ec.build_graph(3, [4, 4, 4], [])
    sol = ec.solve_lp(full_residual(g), g.weights)
    assert sol.value2 == 0
    assert sol.assign2 == (0, 0, 0)


def test_isolated_vertices_get_zero():
    g = ec.build_graph(4, [1, 1, 1, 7], [(0, 1)])
    sol = ec.solve_lp(full_residual(g), g.weights)
    assert sol.assign2[2] == 0 and sol.assign2[3] == 0


def test_lp_value2_examples(triangle, single_edge_15):
    assert ec.lp_value2(triangle, [0, 0, 0]) == 3
    assert ec.lp_value2(triangle, [1, 1, 1]) == 0
    assert ec.lp_value2(single_edge_15, [1, 0]) == 0


def test_lp_value2_matches_solve_lp_on_selections():
    rng = np_rng(11)
    for g in make_instances(30, 400, n_values=range(2, 9)):
        for _ in range(5):
            x = random_genotype(g.n, rng)
            rg = ec.residual(g, x)
            assert ec.lp_value2(g, x) == ec.solve_lp(rg, g.weights).value2


def test_brute_force_examples():
    g = ec.build_graph(2, [1, 1], [(0, 1)])
    assert ec.brute_force_lp(full_residual(g), g.weights).value2 == 2

    cycle4 = ec.build_graph(4, [1, 1, 1, 1], [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert ec.brute_force_lp(full_residual(cycle4), cycle4.weights).value2 == 4  # LP = 2

    edgeless = ec.build_graph(2, [9, 9], [])
    assert ec.brute_force_lp(full_residual(edgeless), edgeless.weights).value2 == 0


def test_brute_force_lex_tie_break():
    # unit 4-cycle: assign2 (0,2,0,2) and (2,0,2,0) and all-ones tie at 4;
    # lexicographically smallest doubled assignment wins
    cycle4 = ec.build_graph(4, [1, 1, 1, 1], [(0, 1), (1, 2), (2, 3), (0, 3)])
    sol = ec.brute_force_lp(full_residual(cycle4), cycle4.weights)
    assert sol.assign2 == (0, 2, 0, 2)


def test_brute_force_rejects_large_residual():
    g = ec.path(15)
    with pytest.raises(ec.InstanceTooLargeError):
        ec.brute_force_lp(full_residual(g), g.weights)


def test_solver_agrees_with_both_oracles():
    rng = np_rng(12)
    for g in make_instances(60, 500, n_values=range(1, 9)):
        rg = full_residual(g)
        fast = ec.solve_lp(rg, g.weights)
        brute = ec.brute_force_lp(rg, g.weights)
        tiny = tiny_lp_value2(g.n, g.edges, g.weights)
        assert fast.value2 == brute.value2 == tiny
        assert_valid_solution(rg, g.weights, fast)
        assert_valid_solution(rg, g.weights, brute)
        x = random_genotype(g.n, rng)
        rgx = ec.residual(g, x)
        assert ec.solve_lp(rgx, g.weights).value2 == ec.brute_force_lp(rgx, g.weights).value2


def test_solver_deterministic():
    g = ec.gnp(9, 0.5, w_max=7, seed=77)
    rg = full_residual(g)
    first = ec.solve_lp(rg, g.weights)
    for _ in range(5):
        assert ec.solve_lp(rg, g.weights) == first


def test_against_general_lp_solver():
    # third route: the continuous relaxation solved by scipy (no half-integral
    # restriction) must give the same optimum as the flow reduction
    scipy_opt = pytest.importorskip("scipy.optimize")
    for g in make_instances(20, 6500, n_values=(6, 10, 14, 18), require_edges=True):
        rows = []
        for u, v in g.edges:
            row = [0.0] * g.n
            row[u] = -1.0
            row[v] = -1.0
            rows.append(row)
        res = scipy_opt.linprog(
            c=list(g.weights), A_ub=rows, b_ub=[-1.0] * g.m,
            bounds=[(0.0, 1.0)] * g.n, method="highs")
        assert res.status == 0
        value2 = ec.lp_value2(g, [0] * g.n)
        assert abs(2 * res.fun - value2) < 1e-6, (g, res.fun, value2)


def test_flip_reduces_value_by_assignment_share():
    # adding a vertex the LP values at >= 1/2 lowers lp2 by at least
    # assign2 * weight (tested over the canonical solution)
    rng = np_rng(13)
    for g in make_instances(40, 600, n_values=range(2, 10), require_edges=True):
        for x in ([0] * g.n, random_genotype(g.n, rng)):
            rg = ec.residual(g, x)
            sol = ec.solve_lp(rg, g.weights)
            base = sol.value2
            for ridx, a in enumerate(sol.assign2):
                if a >= 1:
                    orig = rg.kept[ridx]
                    flipped = np.asarray(x, dtype=np.uint8).copy()
                    flipped[orig] = 1
                    assert ec.lp_value2(g, flipped) <= base - a * g.weights[orig]
