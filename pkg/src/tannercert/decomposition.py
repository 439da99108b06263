"""Exact verification of the codeword/tree decomposition identities.

Three identities are checked, all in exact rationals with zero tolerance:

* prefix-sum: for a nonzero codeword x and any nonnegative schedule, the
  projections of the full weighted path-prefix trees of height 2h rooted at
  the support variables of G_x sum to (sum of schedule) * x;
* itree-expectation: on a subgraph whose local-code nodes all have degree
  >= i, the node-wise expectation of the weighted i-tree under the growth
  distribution (each check keeps i-1 uniformly chosen children, independent
  across checks) equals the weighted full path-prefix tree;
* codeword-expectation: combining the two, the expectation of i-tree
  projections under (uniform support root) x (growth i-tree) equals
  alpha * x with alpha = sum(schedule) / weight(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from .codes import TannerCode, check_word
from .errors import BudgetError, InputError
from .trees import (
    DEFAULT_ITREE_BUDGET,
    attach_weights,
    build_path_prefix_tree,
    count_i_trees,
    enumerate_i_trees,
    project,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class DecompositionReport:
    identity: str
    params: dict
    computed: tuple | dict
    target: tuple | dict
    passed: bool
    alpha: Fraction | None = None
    box_denominator: int | None = None
    extras: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        def enc(obj):
            if isinstance(obj, Fraction):
                return str(obj)
            if isinstance(obj, dict):
                return {str(k): enc(v) for k, v in obj.items()}
            if isinstance(obj, (tuple, list)):
                return [enc(v) for v in obj]
            return obj

        out = {
            "identity": self.identity,
            "passed": self.passed,
            "params": enc(self.params),
            "computed": enc(self.computed),
            "target": enc(self.target),
        }
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        if self.box_denominator is not None:
            out["box_denominator"] = self.box_denominator
        if self.extras:
            out["extras"] = enc(self.extras)
        return out


def _nonneg_schedule(omega: Sequence, h: int) -> tuple[Fraction, ...]:
    omega = tuple(Fraction(w) for w in omega)
    if len(omega) != h:
        raise InputError(f"schedule length {len(omega)} != h={h}")
    if any(w < 0 for w in omega):
        raise InputError("schedule entries must be nonnegative")
    return omega


def _support_subgraph(code: TannerCode, x, h: int):
    """G_x, after checking the mass-conservation degree preconditions.

    Every node of G_x must have degree >= 2 for walks to keep extending:
    checks are covered by d* >= 2, variables need deg >= 2 once the trees go
    beyond depth 2 (a degree-1 variable absorbs deeper walks and the depth
    mass is lost).
    """
    if code.d_star < 2:
        raise InputError("requires every local minimum distance >= 2")
    sub = code.induced_support_graph(x)
    if h >= 2:
        lonely = [v for v in sub.variables if sub.degree(v) == 1]
        if lonely:
            raise InputError(
                f"support variables {lonely} have degree 1; the decomposition "
                f"holds beyond height 2 only when all degrees are >= 2"
            )
    return sub


def verify_prefix_decomposition(code: TannerCode, x: Sequence[int], h: int,
                                omega: Sequence) -> DecompositionReport:
    """Sum of support-rooted weighted prefix-tree projections vs (sum omega) x."""
    x = check_word(x, code.n)
    if not any(x):
        raise InputError("the identity is stated for nonzero codewords")
    if not code.is_codeword(x):
        raise InputError("x is not a codeword")
    if h < 1:
        raise InputError("h must be >= 1")
    omega = _nonneg_schedule(omega, h)
    sub = _support_subgraph(code, x, h)
    total = [_ZERO] * code.n
    for r in sub.variables:
        tree = build_path_prefix_tree(sub, r, 2 * h)
        beta = project(attach_weights(tree, omega), code.n)
        total = [a + b for a, b in zip(total, beta)]
    scale = sum(omega, _ZERO)
    target = tuple(scale * xv for xv in x)
    computed = tuple(total)
    return DecompositionReport(
        identity="prefix-sum",
        params={"h": h, "omega": omega, "x": "".join(str(b) for b in x)},
        computed=computed,
        target=target,
        passed=computed == target,
    )


def verify_itree_expectation(graph, root: int, h: int, i: int, omega: Sequence,
                             itree_budget: int = DEFAULT_ITREE_BUDGET) -> DecompositionReport:
    """Node-wise growth-distribution expectation of weighted i-trees vs the full tree."""
    if root not in getattr(graph, "adj", {}):
        raise InputError(f"root {root} is not in the subgraph")
    if not graph.is_variable(root):
        raise InputError("root must be a variable node")
    if h < 1:
        raise InputError("h must be >= 1")
    omega = _nonneg_schedule(omega, h)
    tree = build_path_prefix_tree(graph, root, 2 * h)
    n_trees = count_i_trees(tree, i)
    if n_trees > itree_budget:
        raise BudgetError(f"{n_trees} i-trees exceed budget {itree_budget}")
    full = attach_weights(tree, omega).weights
    expected: dict[int, Fraction] = {idx: _ZERO for idx in full}
    mass = _ZERO
    for itree in enumerate_i_trees(tree, i, budget=itree_budget):
        p = itree.growth_probability()
        mass += p
        for idx, w in attach_weights(itree, omega).weights.items():
            expected[idx] += p * w
    assert mass == 1
    passed = expected == full
    return DecompositionReport(
        identity="itree-expectation",
        params={"root": root, "h": h, "i": i, "omega": omega},
        computed=expected,
        target=full,
        passed=passed,
        extras={"i_trees": n_trees},
    )


def box_denominator(x: Sequence[int], h: int) -> int:
    """Smallest H with h/H <= weight(x), the schedule box used below."""
    return ceil(Fraction(h, sum(x)))


def verify_codeword_expectation(code: TannerCode, x: Sequence[int], h: int, i: int,
                                omega: Sequence,
                                itree_budget: int = DEFAULT_ITREE_BUDGET) -> DecompositionReport:
    """Expectation of i-tree projections vs alpha x, alpha = sum(omega)/weight(x)."""
    x = check_word(x, code.n)
    if not any(x):
        raise InputError("the identity is stated for nonzero codewords")
    if not code.is_codeword(x):
        raise InputError("x is not a codeword")
    if not 2 <= i <= code.d_star:
        raise InputError(f"i={i} outside 2..d*={code.d_star}")
    if h < 1:
        raise InputError("h must be >= 1")
    omega = _nonneg_schedule(omega, h)
    support_weight = sum(x)
    bound = box_denominator(x, h)
    if any(w > Fraction(1, bound) for w in omega):
        raise InputError(f"schedule outside the [0, 1/{bound}] box")
    if all(w == 0 for w in omega):
        raise InputError("schedule must not be all-zero")

    sub = _support_subgraph(code, x, h)
    root_p = Fraction(1, support_weight)
    expected = [_ZERO] * code.n
    enumerated = 0
    for r in sub.variables:
        tree = build_path_prefix_tree(sub, r, 2 * h)
        n_trees = count_i_trees(tree, i)
        enumerated += n_trees
        if enumerated > itree_budget:
            raise BudgetError(f"total i-tree count exceeds budget {itree_budget}")
        for itree in enumerate_i_trees(tree, i, budget=itree_budget):
            p = root_p * itree.growth_probability()
            beta = project(attach_weights(itree, omega), code.n)
            expected = [e + p * b for e, b in zip(expected, beta)]
    alpha = sum(omega, _ZERO) / support_weight
    target = tuple(alpha * xv for xv in x)
    computed = tuple(expected)
    passed = computed == target and 0 < alpha <= 1
    return DecompositionReport(
        identity="codeword-expectation",
        params={"h": h, "i": i, "omega": omega, "x": "".join(str(b) for b in x)},
        computed=computed,
        target=target,
        passed=passed,
        alpha=alpha,
        box_denominator=bound,
        extras={"i_trees": enumerated},
    )
