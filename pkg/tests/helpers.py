"""Independent oracles and instance factories for the test suite.

Everything here is deliberately implemented by a different route than the
library code it checks: path listing by recursion instead of BFS tree
building, per-node weight products by explicit path walks, i-tree costs by
enumeration, LP uniqueness by basic-feasible-solution enumeration.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import ceil

from tannercert.codes import TannerCode, unpack_bits
from tannercert.decoders import codeword_basis
from tannercert.generate import random_regular_code
from tannercert.trees import attach_weights, enumerate_i_trees, project

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# path / weight oracles
# ---------------------------------------------------------------------------

def backtrackless_paths(graph, root, height):
    """All backtrackless walks from root with length <= height, as node tuples."""
    out = [(root,)]
    frontier = [(root,)]
    for _ in range(height):
        nxt = []
        for path in frontier:
            prev = path[-2] if len(path) > 1 else None
            for nb in graph.adj[path[-1]]:
                if nb != prev:
                    nxt.append(path + (nb,))
        out.extend(nxt)
        frontier = nxt
    return out


def node_weight_by_path_walk(subtree, omega, idx):
    """Def-style weight of one variable copy, multiplying factors along its path."""
    tree = subtree.tree
    path = [idx]
    while path[-1] != 0:
        path.append(tree.parent[path[-1]])
    path.reverse()
    t = ceil(tree.depth[idx] / 2)
    w = Fraction(omega[t - 1]) / tree.graph.degree(tree.base[idx])
    for node in path[1:-1]:
        w /= subtree.subtree_degree(node) - 1
    return w


def min_itree_cost(graph_code, mu, root, h, i, omega):
    """Brute-force minimum weighted relative cost over i-trees rooted at root."""
    from tannercert.trees import build_path_prefix_tree

    tree = build_path_prefix_tree(graph_code.graph, root, 2 * h)
    best = None
    for itree in enumerate_i_trees(tree, i):
        beta = project(attach_weights(itree, omega), graph_code.n)
        cost = sum((m * b for m, b in zip(mu, beta) if b), ZERO)
        if best is None or cost < best:
            best = cost
    return best


# ---------------------------------------------------------------------------
# instance factories
# ---------------------------------------------------------------------------

def random_small_code(rng: random.Random) -> TannerCode:
    """A pool of desk-scale codes with d* in {2, 3}."""
    kind = rng.randrange(3)
    seed = rng.randrange(10**6)
    if kind == 0:
        n = rng.choice([6, 9, 12])
        return random_regular_code(n, 2, 3, seed, local="parity")
    if kind == 1:
        n = rng.choice([6, 9])
        return random_regular_code(n, 2, 3, seed, local="repetition")
    n = rng.choice([8, 12])
    return random_regular_code(n, 2, 4, seed, local="parity")


def random_codeword(code: TannerCode, rng: random.Random, nonzero=False):
    basis = codeword_basis(code)
    if nonzero and not basis:
        return None
    for _ in range(64):
        mask = 0
        for b in basis:
            if rng.random() < 0.5:
                mask ^= b
        if mask or not nonzero:
            return unpack_bits(mask, code.n)
    return None


def random_schedule(rng: random.Random, h: int, bound=1):
    """Random rational schedule in [0, bound]^h with small denominators."""
    out = []
    for _ in range(h):
        den = rng.randrange(1, 7)
        num = rng.randrange(0, den + 1)
        out.append(Fraction(num, den) * Fraction(bound))
    return tuple(out)


# ---------------------------------------------------------------------------
# exact linear algebra for the BFS-enumeration oracle
# ---------------------------------------------------------------------------

def solve_square(a, b):
    """Solve a square rational system; None if singular."""
    n = len(a)
    m = [row[:] + [bv] for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * p for v, p in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def enumerate_bfs_vertices(rows, rhs, ncols):
    """All basic feasible solutions of {Ax = b, x >= 0} (tiny systems only)."""
    # drop linearly dependent rows first
    indep: list[list[Fraction]] = []
    indep_rhs: list[Fraction] = []
    for row, bv in zip(rows, rhs):
        trial = indep + [list(row)]
        if _rank(trial) > len(indep):
            indep.append(list(row))
            indep_rhs.append(bv)
    m = len(indep)
    seen = set()
    for cols in combinations(range(ncols), m):
        a = [[indep[r][c] for c in cols] for r in range(m)]
        sol = solve_square(a, indep_rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [ZERO] * ncols
        for c, v in zip(cols, sol):
            x[c] = v
        seen.add(tuple(x))
    return sorted(seen)


def _rank(rows):
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * p for v, p in zip(rows[r], rows[rank])]
        rank += 1
    return rank
