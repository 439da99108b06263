"""Local-optimality certificates by message passing over computation trees.

A codeword x is certified for an LLR vector when every projection of an
omega-weighted i-tree of height 2h, rooted at any variable node, has strictly
positive relative cost <mu, beta> with mu_v = (-1)^{x_v} lambda_v.  The
minimum over the (exponentially many) i-trees rooted at r decomposes into a
leaves-to-root dynamic program: a local-code tree node keeps its i-1 cheapest
child branches, a variable tree node keeps all of them and adds its own
weight term.  Messages depend only on (directed edge, depth), so one pass of
h rounds serves every root simultaneously in O(|E| h) edge work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .channel import LlrVector
from .codes import TannerCode, check_word
from .errors import InputError


@dataclass(frozen=True)
class CertificateReport:
    h: int
    omega: tuple[Fraction, ...]
    i: int
    root_costs: dict[int, Fraction]
    c_star: Fraction
    worst_root: int
    certified: bool
    boundary: bool
    witness: dict | None = None

    def to_json_dict(self) -> dict:
        out = {
            "h": self.h,
            "omega": [str(w) for w in self.omega],
            "i": self.i,
            "certified": self.certified,
            "boundary": self.boundary,
            "c_star": str(self.c_star),
            "worst_root": self.worst_root,
            "root_costs": {str(r): str(c) for r, c in self.root_costs.items()},
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def relative_costs(x: Sequence[int], llr: LlrVector) -> tuple[Fraction, ...]:
    """mu_v = (-1)^{x_v} lambda_v; <mu, beta> is the cost change of moving to x+beta."""
    x = check_word(x, len(llr.values))
    return tuple(v if b == 0 else -v for b, v in zip(x, llr.values))


def _validated_schedule(omega: Sequence, h: int) -> tuple[Fraction, ...]:
    omega = tuple(Fraction(w) for w in omega)
    if len(omega) != h:
        raise InputError(f"schedule length {len(omega)} != h={h}")
    if any(not 0 <= w <= 1 for w in omega):
        raise InputError("schedule entries must lie in [0,1]")
    if all(w == 0 for w in omega):
        raise InputError("schedule must not be all-zero")
    return omega


def _message_tables(graph, mu: Sequence[Fraction], h: int,
                    omega: Sequence[Fraction], i: int):
    """Height-indexed message tables shared by every root.

    var_levels[t][(c, v)]: cheapest completion below a depth-2t copy of v
    entered from c, including v's own weight term.  check_levels[t][(v, c)]:
    the same for a depth-(2t-1) copy of c entered from v.
    """
    var_levels: list[dict] = [dict() for _ in range(h + 1)]
    check_levels: list[dict] = [dict() for _ in range(h + 1)]
    for t in range(h, 0, -1):
        var_t = var_levels[t]
        for c in graph.checks:
            for v in graph.adj[c]:
                msg = omega[t - 1] * mu[v] / graph.degree(v)
                if t < h and graph.degree(v) > 1:
                    below = sum(
                        (check_levels[t + 1][(v, c2)]
                         for c2 in graph.adj[v] if c2 != c),
                        Fraction(0),
                    )
                    msg += below / (graph.degree(v) - 1)
                var_t[(c, v)] = msg
        check_t = check_levels[t]
        for c in graph.checks:
            ranked = sorted((var_t[(c, v)], v) for v in graph.adj[c])
            prefix = [Fraction(0)]
            for val, _ in ranked:
                prefix.append(prefix[-1] + val)
            for v in graph.adj[c]:
                # sum of the i-1 smallest messages among children != v
                own = var_t[(c, v)]
                pos = ranked.index((own, v))
                if pos < i - 1:
                    chosen = prefix[i] - own
                else:
                    chosen = prefix[i - 1]
                check_t[(v, c)] = chosen / (i - 1)
    return var_levels, check_levels


def _root_costs(graph, check_levels) -> dict[int, Fraction]:
    level1 = check_levels[1]
    return {
        r: sum((level1[(r, c)] for c in graph.adj[r]), Fraction(0))
        for r in graph.variables
    }


def _selected_children(graph, var_t, c: int, parent: int, i: int) -> list[int]:
    ranked = sorted((var_t[(c, v)], v) for v in graph.adj[c] if v != parent)
    return [v for _, v in ranked[: i - 1]]


def _witness(graph, var_levels, root: int, h: int, i: int) -> dict:
    """Re-derive the argmin i-tree below root with the same tie-breaks."""

    def var_node(v: int, parent_check: int | None, t: int) -> dict:
        node = {"kind": "var", "node": v, "children": []}
        if t < h and graph.degree(v) > 1:
            for c in graph.adj[v]:
                if c != parent_check:
                    node["children"].append(check_node(c, v, t + 1))
        return node

    def check_node(c: int, parent_var: int, t: int) -> dict:
        node = {"kind": "check", "node": graph.check_index(c), "children": []}
        for v in _selected_children(graph, var_levels[t], c, parent_var, i):
            node["children"].append(var_node(v, c, t))
        return node

    root_node = {"kind": "var", "node": root, "children": []}
    for c in graph.adj[root]:
        root_node["children"].append(check_node(c, root, 1))
    return root_node


def min_cost_tree(code: TannerCode, x: Sequence[int], llr: LlrVector,
                  root: int, h: int, omega: Sequence, i: int) -> Fraction:
    """Minimum relative cost over i-trees of height 2h rooted at `root`."""
    report = certify(code, x, llr, h, omega, i)
    if root not in report.root_costs:
        raise InputError(f"root {root} is not a variable node")
    return report.root_costs[root]


def certify(code: TannerCode, x: Sequence[int], llr: LlrVector,
            h: int, omega: Sequence, i: int,
            want_witness: bool = False) -> CertificateReport:
    """Decide (h, omega, i)-local optimality of x for llr, all roots at once."""
    x = check_word(x, code.n)
    if len(llr.values) != code.n:
        raise InputError(f"LLR length {len(llr.values)} != block length {code.n}")
    if not code.is_codeword(x):
        raise InputError("certify requires a codeword")
    if h < 1:
        raise InputError("h must be >= 1")
    if not 2 <= i <= code.d_star:
        raise InputError(f"i={i} outside 2..d*={code.d_star}")
    omega = _validated_schedule(omega, h)

    graph = code.graph
    mu = relative_costs(x, llr)
    var_levels, check_levels = _message_tables(graph, mu, h, omega, i)
    costs = _root_costs(graph, check_levels)
    worst = min(costs, key=lambda r: (costs[r], r))
    c_star = costs[worst]
    witness = _witness(graph, var_levels, worst, h, i) if want_witness else None
    return CertificateReport(
        h=h,
        omega=omega,
        i=i,
        root_costs=costs,
        c_star=c_star,
        worst_root=worst,
        certified=c_star > 0,
        boundary=c_star == 0,
        witness=witness,
    )


def witness_cost(graph, mu: Sequence[Fraction], omega: Sequence[Fraction],
                 witness: dict) -> Fraction:
    """Evaluate a witness tree's weighted relative cost (independent recursion)."""

    def walk(node: dict, depth: int, prod: Fraction) -> Fraction:
        total = Fraction(0)
        if node["kind"] == "var" and depth > 0:
            v = node["node"]
            t = (depth + 1) // 2
            total += prod * Fraction(omega[t - 1]) * mu[v] / graph.degree(v)
        kids = node["children"]
        if kids:
            child_prod = prod if depth == 0 else prod / len(kids)
            for child in kids:
                total += walk(child, depth + 1, child_prod)
        return total

    return walk(witness, 0, Fraction(1))
