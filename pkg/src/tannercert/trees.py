"""Path-prefix trees, i-tree enumeration/sampling, depth weights, projections.

A path-prefix tree rooted at r with height h materializes every backtrackless
walk of length <= h starting at r (only immediate edge reversal is forbidden;
walks may revisit nodes, so heights beyond the girth are fine).  An i-tree is
a subtree in which every variable node keeps all of its children and every
local-code node keeps exactly i-1 of them (tree degree i counting the parent;
the root is a variable node and keeps everything).

Weights: for a subtree T rooted at the tree root, a non-root variable copy
v_hat at depth d with base v gets

    omega[t] / deg_G(v) * prod over strictly-internal path nodes u_hat of
        1 / (deg_T(u_hat) - 1),          t = ceil(d / 2),

where deg_T is the degree inside the subtree (i-trees and full prefix trees
therefore weight the same copy differently).  The projection onto the base
graph sums the weights of all copies of each variable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import BudgetError, InputError

DEFAULT_NODE_BUDGET = 10**6
DEFAULT_ITREE_BUDGET = 10**5


class PathPrefixTree:
    """Explicit path-prefix tree, nodes in BFS order (node 0 = root)."""

    def __init__(self, graph, root: int, height: int, node_budget: int = DEFAULT_NODE_BUDGET):
        if root not in graph.adj:
            raise InputError(f"root {root} is not a node of the graph")
        if height < 0:
            raise InputError("height must be >= 0")
        parent = [-1]
        base = [root]
        depth = [0]
        children: list[list[int]] = [[]]
        frontier = [0]
        for _ in range(height):
            nxt = []
            for idx in frontier:
                prev = base[parent[idx]] if parent[idx] >= 0 else None
                for nb in graph.adj[base[idx]]:
                    if nb == prev:
                        continue
                    if len(base) >= node_budget:
                        raise BudgetError(
                            f"path-prefix tree exceeds node budget {node_budget}"
                        )
                    child = len(base)
                    parent.append(idx)
                    base.append(nb)
                    depth.append(depth[idx] + 1)
                    children.append([])
                    children[idx].append(child)
                    nxt.append(child)
            frontier = nxt
        self.graph = graph
        self.root = root
        self.height = height
        self.parent = parent
        self.base = base
        self.depth = depth
        self.children = [tuple(cs) for cs in children]
        self.num_nodes = len(base)

    def is_variable_node(self, idx: int) -> bool:
        return self.graph.is_variable(self.base[idx])

    def tree_degree(self, idx: int) -> int:
        return (0 if idx == 0 else 1) + len(self.children[idx])

    # Subtree protocol shared with ITree: the full tree is its own subtree.
    @property
    def tree(self) -> "PathPrefixTree":
        return self

    def node_ids(self) -> range:
        return range(self.num_nodes)

    def children_in(self, idx: int) -> tuple[int, ...]:
        return self.children[idx]

    def subtree_degree(self, idx: int) -> int:
        return self.tree_degree(idx)


class ITree:
    """A subtree of a path-prefix tree: full-degree variables, i-1 children per check."""

    def __init__(self, tree: PathPrefixTree, i: int, nodes: frozenset[int]):
        self.tree = tree
        self.i = i
        self.nodes = nodes

    def node_ids(self) -> frozenset[int]:
        return self.nodes

    def children_in(self, idx: int) -> tuple[int, ...]:
        return tuple(c for c in self.tree.children[idx] if c in self.nodes)

    def subtree_degree(self, idx: int) -> int:
        return (0 if idx == 0 else 1) + len(self.children_in(idx))

    def growth_probability(self) -> Fraction:
        """Probability of this i-tree when each check picks i-1 children uniformly."""
        p = Fraction(1)
        for idx in self.nodes:
            if not self.tree.is_variable_node(idx):
                p /= comb(len(self.tree.children[idx]), self.i - 1)
        return p


def build_path_prefix_tree(graph, root: int, height: int,
                           node_budget: int = DEFAULT_NODE_BUDGET) -> PathPrefixTree:
    return PathPrefixTree(graph, root, height, node_budget)


def _validate_i_tree_params(tree: PathPrefixTree, i: int) -> None:
    if not tree.is_variable_node(0):
        raise InputError("i-trees require a variable-node root")
    if tree.height % 2 != 0:
        raise InputError("i-trees require an even tree height")
    if i < 2:
        raise InputError(f"i must be >= 2, got {i}")
    for idx in tree.node_ids():
        if not tree.is_variable_node(idx) and len(tree.children[idx]) < i - 1:
            raise InputError(
                f"local-code node {tree.base[idx]} has {len(tree.children[idx])} "
                f"children in the tree, fewer than i-1={i - 1}"
            )


def count_i_trees(tree: PathPrefixTree, i: int) -> int:
    """Number of i-trees, via elementary symmetric sums of child counts."""
    _validate_i_tree_params(tree, i)
    counts = [1] * tree.num_nodes
    for idx in range(tree.num_nodes - 1, -1, -1):
        cs = tree.children[idx]
        if not cs:
            continue
        if tree.is_variable_node(idx):
            prod = 1
            for c in cs:
                prod *= counts[c]
            counts[idx] = prod
        else:
            # elementary symmetric polynomial of degree i-1 in the child counts
            esp = [1] + [0] * (i - 1)
            for c in cs:
                for deg in range(i - 1, 0, -1):
                    esp[deg] += esp[deg - 1] * counts[c]
            counts[idx] = esp[i - 1]
    return counts[0]


def enumerate_i_trees(tree: PathPrefixTree, i: int,
                      budget: int = DEFAULT_ITREE_BUDGET) -> Iterator[ITree]:
    """Yield every i-tree of the path-prefix tree."""
    total = count_i_trees(tree, i)
    if total > budget:
        raise BudgetError(f"{total} i-trees exceed enumeration budget {budget}")

    def choices(idx: int) -> list[frozenset[int]]:
        cs = tree.children[idx]
        if tree.is_variable_node(idx):
            opts = [frozenset([idx])]
            for c in cs:
                opts = [acc | sub for acc in opts for sub in choices(c)]
            return opts
        picked: list[frozenset[int]] = []
        for subset in combinations(cs, i - 1):
            opts = [frozenset([idx])]
            for c in subset:
                opts = [acc | sub for acc in opts for sub in choices(c)]
            picked.extend(opts)
        return picked

    for nodes in choices(0):
        yield ITree(tree, i, nodes)


def sample_i_tree(tree: PathPrefixTree, i: int,
                  rng: random.Random | int) -> ITree:
    """Grow one i-tree: each check keeps i-1 uniformly chosen children."""
    _validate_i_tree_params(tree, i)
    if isinstance(rng, int):
        rng = random.Random(rng)
    nodes = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            cs = tree.children[idx]
            if not cs:
                continue
            keep = cs if tree.is_variable_node(idx) else rng.sample(cs, i - 1)
            for c in keep:
                nodes.add(c)
                nxt.append(c)
        frontier = nxt
    return ITree(tree, i, frozenset(nodes))


class WeightedTree:
    """A subtree with the depth-indexed weight function attached to its variables."""

    def __init__(self, subtree, omega: Sequence[Fraction]):
        tree = subtree.tree
        omega = tuple(Fraction(w) for w in omega)
        if any(w < 0 for w in omega):
            raise InputError("weight schedule entries must be nonnegative")
        if 2 * len(omega) < tree.height:
            raise InputError(
                f"schedule length {len(omega)} too short for tree height {tree.height}"
            )
        graph = tree.graph
        weights: dict[int, Fraction] = {}
        # path products: factor(u) applies to everything strictly below u
        pathprod: dict[int, Fraction] = {0: Fraction(1)}
        for idx in sorted(subtree.node_ids()):
            if idx == 0:
                continue
            parent = tree.parent[idx]
            prod = pathprod[parent]
            if parent != 0:
                prod = prod / (subtree.subtree_degree(parent) - 1)
            pathprod[idx] = prod
            if tree.is_variable_node(idx):
                t = (tree.depth[idx] + 1) // 2
                weights[idx] = (
                    omega[t - 1] / graph.degree(tree.base[idx]) * prod
                )
        self.subtree = subtree
        self.tree = tree
        self.omega = omega
        self.weights = weights

    def cost(self, mu: Sequence[Fraction]) -> Fraction:
        """Weighted relative cost sum(weight(v_hat) * mu[base(v_hat)])."""
        return sum(
            (w * mu[self.tree.base[idx]] for idx, w in self.weights.items()),
            Fraction(0),
        )


def attach_weights(subtree, omega: Sequence[Fraction]) -> WeightedTree:
    return WeightedTree(subtree, omega)


def project(wt: WeightedTree, num_vars: int | None = None) -> tuple[Fraction, ...]:
    """Per-variable sum of copy weights; zero where no copy exists."""
    n = wt.tree.graph.num_vars if num_vars is None else num_vars
    beta = [Fraction(0)] * n
    for idx, w in wt.weights.items():
        beta[wt.tree.base[idx]] += w
    return tuple(beta)


def dump_tree(subtree) -> str:
    """Indented text rendering for golden tests and debugging."""
    tree = subtree.tree
    lines: list[str] = []

    def walk(idx: int) -> None:
        kind = "v" if tree.is_variable_node(idx) else "c"
        bid = tree.base[idx]
        if not tree.is_variable_node(idx):
            bid = tree.graph.check_index(bid) if hasattr(tree.graph, "check_index") else bid
        lines.append("  " * tree.depth[idx] + f"{kind}{bid}")
        for c in sorted(subtree.children_in(idx)):
            walk(c)

    walk(0)
    return "\n".join(lines) + "\n"
