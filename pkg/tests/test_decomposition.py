import random
from fractions import Fraction

import pytest

from helpers import random_codeword, random_schedule, random_small_code
from tannercert.codes import LocalCode, TannerCode, TannerGraph
from tannercert.decomposition import (
    box_denominator,
    verify_codeword_expectation,
    verify_itree_expectation,
    verify_prefix_decomposition,
)
from tannercert.errors import BudgetError, InputError

F = Fraction
ONE = F(1)


class TestPrefixDecomposition:
    def test_six_cycle_hand_instance(self, six_cycle):
        rep = verify_prefix_decomposition(six_cycle, (1, 1, 1), 1, (ONE,))
        assert rep.passed
        assert rep.computed == (1, 1, 1)

    def test_zero_schedule_trivial(self, six_cycle):
        rep = verify_prefix_decomposition(six_cycle, (1, 1, 1), 2, (0, 0))
        assert rep.passed
        assert rep.computed == (0, 0, 0)

    def test_unbounded_schedule_allowed(self, six_cycle):
        # the identity quantifies over all nonnegative schedules, not [0,1]
        rep = verify_prefix_decomposition(six_cycle, (1, 1, 1), 1, (F(7, 2),))
        assert rep.passed
        assert rep.computed == (F(7, 2),) * 3

    def test_random_instances_exact(self):
        rng = random.Random(29)
        done = 0
        while done < 20:
            code = random_small_code(rng)
            x = random_codeword(code, rng, nonzero=True)
            if x is None:
                continue
            h = rng.choice([1, 2, 3])
            om = tuple(F(rng.randrange(0, 9), rng.randrange(1, 5)) for _ in range(h))
            rep = verify_prefix_decomposition(code, x, h, om)
            assert rep.passed, (code, x, h, om)
            done += 1

    def test_zero_codeword_rejected(self, six_cycle):
        with pytest.raises(InputError):
            verify_prefix_decomposition(six_cycle, (0, 0, 0), 1, (ONE,))

    def test_non_codeword_rejected(self, six_cycle):
        with pytest.raises(InputError):
            verify_prefix_decomposition(six_cycle, (1, 1, 0), 1, (ONE,))


class TestITreeExpectation:
    def test_full_degree_single_tree(self, repetition3):
        sub = repetition3.induced_support_graph((1, 1, 1))
        rep = verify_itree_expectation(sub, 0, 1, 3, (F(1, 2),))
        assert rep.passed
        assert rep.extras["i_trees"] == 1

    def test_one_check_degree3_i2(self):
        # two i-trees, each keeping one grandchild; expectation halves the
        # doubled in-tree weight back to the prefix-tree weight
        graph = TannerGraph(3, [(0, 1, 2)])
        code = TannerCode(graph, [LocalCode.parity(3)])
        rep = verify_itree_expectation(code.graph, 0, 1, 2, (ONE,))
        assert rep.passed
        assert rep.extras["i_trees"] == 2
        depth2 = {k: v for k, v in rep.target.items() if v != 0}
        assert set(depth2.values()) == {F(1, 2)}

    def test_random_instances_exact(self):
        rng = random.Random(31)
        done = 0
        while done < 20:
            code = random_small_code(rng)
            x = random_codeword(code, rng, nonzero=True)
            if x is None:
                continue
            sub = code.induced_support_graph(x)
            root = rng.choice(sub.variables)
            h = rng.choice([1, 2])
            i = rng.randrange(2, code.d_star + 1)
            om = random_schedule(rng, h)
            rep = verify_itree_expectation(sub, root, h, i, om)
            assert rep.passed, (code, x, root, h, i, om)
            done += 1

    def test_full_graph_also_works(self, six_cycle):
        rep = verify_itree_expectation(six_cycle.graph, 1, 2, 2, (F(1, 3), F(1, 7)))
        assert rep.passed

    def test_check_root_rejected(self, six_cycle):
        with pytest.raises(InputError):
            verify_itree_expectation(six_cycle.graph, 3, 1, 2, (ONE,))

    def test_budget_refusal(self):
        code = TannerCode(
            TannerGraph(9, [tuple(range(9))]), [LocalCode.parity(9)]
        )
        with pytest.raises(BudgetError):
            verify_itree_expectation(code.graph, 0, 1, 2, (ONE,), itree_budget=4)

    def test_uniform_average_would_fail_on_irregular_instance(self):
        # the growth law is essential: averaging i-trees uniformly breaks the
        # identity when one branch of a check opens further choices and the
        # other does not (3 i-trees here, with probabilities 1/4, 1/4, 1/2)
        from tannercert.trees import (
            attach_weights,
            build_path_prefix_tree,
            enumerate_i_trees,
        )

        graph = TannerGraph(5, [(0, 1, 2), (1, 3, 4)])
        code = TannerCode(graph, [LocalCode.parity(3)] * 2)
        rep = verify_itree_expectation(code.graph, 0, 2, 2, (ONE, ONE))
        assert rep.passed
        tree = build_path_prefix_tree(code.graph, 0, 4)
        trees = list(enumerate_i_trees(tree, 2))
        assert len(trees) == 3
        assert sorted(t.growth_probability() for t in trees) == [
            F(1, 4), F(1, 4), F(1, 2),
        ]
        uniform = {idx: F(0) for idx in rep.target}
        for itree in trees:
            for idx, w in attach_weights(itree, (ONE, ONE)).weights.items():
                uniform[idx] += F(1, len(trees)) * w
        assert uniform != rep.target


class TestCodewordExpectation:
    def test_six_cycle_alpha_sixth(self, six_cycle):
        rep = verify_codeword_expectation(six_cycle, (1, 1, 1), 1, 2, (F(1, 2),))
        assert rep.passed
        assert rep.alpha == F(1, 6)
        assert rep.computed == (F(1, 6), F(1, 6), F(1, 6))
        assert rep.box_denominator == 1

    def test_alpha_one_at_box_boundary(self, six_cycle):
        # h = weight(x) and the all-ones schedule make alpha exactly 1
        rep = verify_codeword_expectation(six_cycle, (1, 1, 1), 3, 2, (ONE,) * 3)
        assert rep.box_denominator == 1
        assert rep.alpha == 1 and rep.passed

    def test_random_instances_exact(self):
        rng = random.Random(37)
        done = 0
        while done < 15:
            code = random_small_code(rng)
            x = random_codeword(code, rng, nonzero=True)
            if x is None:
                continue
            h = rng.choice([1, 2])
            i = rng.randrange(2, code.d_star + 1)
            bound = box_denominator(x, h)
            om = random_schedule(rng, h, bound=F(1, bound))
            if all(w == 0 for w in om):
                continue
            rep = verify_codeword_expectation(code, x, h, i, om)
            assert rep.passed, (code, x, h, i, om)
            assert 0 < rep.alpha <= 1
            done += 1

    def test_composition_of_the_two_identities(self):
        # whenever the prefix identity and all per-root expectation identities
        # hold, the codeword expectation must hold as well
        rng = random.Random(41)
        done = 0
        while done < 10:
            code = random_small_code(rng)
            x = random_codeword(code, rng, nonzero=True)
            if x is None:
                continue
            h = 1
            i = rng.randrange(2, code.d_star + 1)
            bound = box_denominator(x, h)
            om = (F(1, bound + rng.randrange(0, 3)),)
            sub = code.induced_support_graph(x)
            lemma3 = verify_prefix_decomposition(code, x, h, om)
            lemma4 = all(
                verify_itree_expectation(sub, r, h, i, om).passed
                for r in sub.variables
            )
            lemma2 = verify_codeword_expectation(code, x, h, i, om)
            assert lemma3.passed and lemma4
            assert lemma2.passed
            done += 1

    def test_box_violation_rejected(self, six_cycle):
        # h=4, weight 3: the box is [0, 1/2], so an all-ones schedule is out
        with pytest.raises(InputError, match="box"):
            verify_codeword_expectation(six_cycle, (1, 1, 1), 4, 2, (ONE,) * 4)

    def test_degree_one_support_rejected_beyond_height_two(self, repetition3):
        with pytest.raises(InputError, match="degree 1"):
            verify_prefix_decomposition(repetition3, (1, 1, 1), 2, (ONE, ONE))
        # height 2 stays exact even with degree-1 variables
        rep = verify_prefix_decomposition(repetition3, (1, 1, 1), 1, (F(2, 3),))
        assert rep.passed

    def test_zero_schedule_rejected(self, six_cycle):
        with pytest.raises(InputError):
            verify_codeword_expectation(six_cycle, (1, 1, 1), 1, 2, (0,))

    def test_i_range_enforced(self, six_cycle):
        with pytest.raises(InputError):
            verify_codeword_expectation(six_cycle, (1, 1, 1), 1, 3, (F(1, 2),))


def test_box_denominator_values():
    assert box_denominator((1, 1, 1), 1) == 1
    assert box_denominator((1, 0, 1), 3) == 2
    assert box_denominator((1, 0, 0), 5) == 5
