"""
PBW 规范化、导子作用与有界枚举单元测试
"""

import itertools
import random
from fractions import Fraction

import pytest

from src.algebra.families import heisenberg, semidirect_h3_example, sl2, standard_filiform
from src.algebra.filtration import INFINITY, WeightVector
from src.algebra.pbw import (
    EnvelopingAlgebra,
    SemidirectModule,
    UElement,
    derive,
    elem_weight,
    enumerate_bounded,
    format_element,
    format_monomial,
    grlex_key,
    mono_weight,
    monomial_filter,
    straighten_mult,
)
from src.core.errors import BracketLeavesIdealError, NonPositiveWeightError
from src.services.bounds import weighted_monomial_counts


def random_element(rng: random.Random, n: int, terms: int = 3, max_degree: int = 3) -> UElement:
    acc = {}
    for _ in range(terms):
        alpha = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            alpha[rng.randrange(n)] += 1
        acc[tuple(alpha)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return UElement(acc)


class TestUElement:
    """UElement 算术测试"""

    def test_zero_coefficients_dropped(self):
        """测试零系数不被保存"""
        x = UElement({(1, 0): Fraction(2), (0, 1): Fraction(0)})
        assert len(x) == 1
        assert (x - x).is_zero()

    def test_addition_and_scale(self):
        x = UElement.generator(2, 0)
        y = UElement.generator(2, 1)
        total = x + y.scale(3)
        assert total.coefficient((0, 1)) == 3
        assert (2 * total).coefficient((1, 0)) == 2

    def test_monomials_in_grlex_order(self):
        """先按总次数，再按 x1 指数递减"""
        x = UElement.from_terms([((0, 2), Fraction(1)), ((1, 0), Fraction(1)), ((0, 1), Fraction(1)), ((0, 0), Fraction(1))])
        assert x.monomials() == [(0, 0), (1, 0), (0, 1), (0, 2)]
        assert grlex_key((2, 0)) < grlex_key((1, 1))

    @pytest.mark.parametrize(
        "alpha, expected",
        [
            pytest.param((0, 0, 0), "1", id="constant"),
            pytest.param((1, 0, 0), "x1", id="generator"),
            pytest.param((2, 0, 1), "x1^2*x3", id="mixed"),
        ],
    )
    def test_format_monomial(self, alpha, expected):
        assert format_monomial(alpha) == expected

    def test_format_element(self):
        x = UElement({(1, 1, 0): Fraction(1), (0, 0, 1): Fraction(-1)})
        assert format_element(x) == "-x3 + x1*x2"
        assert format_element(UElement.zero()) == "0"


class TestStraightening:
    """PBW 左乘规范化测试"""

    def test_heisenberg_reorder(self):
        """h3 中 y·x = xy - z"""
        env = EnvelopingAlgebra(heisenberg(1))
        result = env.mult_generator(1, UElement.generator(3, 0))
        assert result == UElement({(1, 1, 0): Fraction(1), (0, 0, 1): Fraction(-1)})

    def test_ordered_product_unchanged(self):
        """x·y 已是标准序"""
        env = EnvelopingAlgebra(heisenberg(1))
        assert env.mult_generator(0, UElement.generator(3, 1)) == UElement.monomial((1, 1, 0))

    def test_sl2_reorder(self):
        """sl2 中 f·e = ef - h"""
        result = straighten_mult(sl2(), 2, UElement.generator(3, 1))
        assert result == UElement({(0, 1, 1): Fraction(1), (1, 0, 0): Fraction(-1)})

    def test_generator_out_of_range(self):
        env = EnvelopingAlgebra(heisenberg(1))
        with pytest.raises(ValueError):
            env.mult_generator(3, UElement.one(3))

    @pytest.mark.parametrize(
        "algebra",
        [
            pytest.param(heisenberg(1), id="h3"),
            pytest.param(heisenberg(2), id="h5"),
            pytest.param(standard_filiform(5), id="filiform5"),
            pytest.param(sl2(), id="sl2"),
        ],
    )
    def test_module_law(self, algebra):
        """x_i(x_j X) - x_j(x_i X) = [x_i, x_j] X，每个代数 50 个样本"""
        rng = random.Random(20240601)
        env = EnvelopingAlgebra(algebra)
        n = algebra.dim
        for _ in range(50):
            x = random_element(rng, n, terms=rng.randint(1, 4))
            i, j = rng.randrange(n), rng.randrange(n)
            lhs = env.mult_generator(i, env.mult_generator(j, x)) - env.mult_generator(j, env.mult_generator(i, x))
            rhs = env.left_multiply(algebra.bracket_basis(i, j), x)
            assert lhs == rhs

    def test_product_associative(self):
        """(XY)Z = X(YZ)"""
        rng = random.Random(7)
        env = EnvelopingAlgebra(standard_filiform(4))
        for _ in range(3):
            a, b, c = (random_element(rng, 4, terms=2, max_degree=2) for _ in range(3))
            assert env.product(env.product(a, b), c) == env.product(a, env.product(b, c))

    def test_cache_does_not_change_result(self):
        """命中缓存与重新计算得到同一个结果"""
        env = EnvelopingAlgebra(heisenberg(2))
        x = UElement.monomial((0, 2, 1, 0, 0))
        first = env.mult_generator(3, x)
        env.cache.clear()
        assert env.mult_generator(3, x) == first


class TestSemidirectModule:
    """p 在 U(m) 上的导子作用测试"""

    @pytest.fixture
    def module(self):
        # semidirect5 的 m = span{x, y, z}，U(m) 生成元 x1 = x, x2 = y, x3 = z
        return SemidirectModule(
            semidirect_h3_example(),
            [(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)],
        )

    def test_derivation_matrix(self, module):
        """ad(d) 在 m 上为 diag(1, 0, 1)"""
        matrix = module.derivation_matrix((0, 1, 0, 0, 0))
        assert [matrix[k, k] for k in range(3)] == [1, 0, 1]
        assert matrix[0, 1] == 0

    def test_derive_monomials(self, module):
        """d(x z) = 2 x z，d(y) = 0"""
        delta = (0, 1, 0, 0, 0)
        assert derive(module, delta, UElement.monomial((1, 0, 1))) == UElement.monomial((1, 0, 1), 2)
        assert derive(module, delta, UElement.generator(3, 1)).is_zero()

    def test_derivation_law(self, module):
        """δ(XY) = δ(X)Y + Xδ(Y)"""
        rng = random.Random(11)
        env = module.enveloping
        delta = (0, 1, 0, 0, 0)
        for _ in range(100):
            x = random_element(rng, 3, terms=rng.randint(1, 4), max_degree=2)
            y = random_element(rng, 3, terms=rng.randint(1, 4), max_degree=2)
            lhs = module.derive(delta, env.product(x, y))
            rhs = env.product(module.derive(delta, x), y) + env.product(x, module.derive(delta, y))
            assert lhs == rhs

    def test_derivation_compatible_with_multiplication(self, module):
        """δ(x_i X) = [δ, x_i] X + x_i δ(X)"""
        rng = random.Random(3)
        delta = (0, 1, 0, 0, 0)
        matrix = module.derivation_matrix(delta)
        for _ in range(100):
            i = rng.randrange(3)
            x = random_element(rng, 3, terms=rng.randint(1, 4))
            lhs = module.derive(delta, module.enveloping.mult_generator(i, x))
            rhs = module.enveloping.left_multiply(matrix.column(i), x) + module.enveloping.mult_generator(
                i, module.derive(delta, x)
            )
            assert lhs == rhs

    def test_multiply_by_ambient_vector(self, module):
        """g 坐标中的 y 左乘 x 得 xy - z"""
        result = module.multiply((0, 0, 0, 1, 0), UElement.generator(3, 0))
        assert result == UElement({(1, 1, 0): Fraction(1), (0, 0, 1): Fraction(-1)})

    def test_bracket_leaves_m(self):
        """span{y} 上 ad(x) 的像 z 不在其中"""
        module = SemidirectModule(heisenberg(1), [(0, 1, 0)])
        with pytest.raises(BracketLeavesIdealError) as exc_info:
            module.derivation_matrix((1, 0, 0))
        assert exc_info.value.generator == 0


class TestWeightsAndEnumeration:
    """单项式权与有界枚举测试"""

    def test_mono_and_elem_weight(self):
        w = WeightVector((1, 1, 2))
        assert mono_weight(w, (1, 0, 2)) == 5
        x = UElement({(1, 0, 2): Fraction(1), (0, 1, 0): Fraction(1)})
        assert elem_weight(w, x) == 1
        assert elem_weight(w, UElement.zero()) == INFINITY

    def test_heisenberg_quotient_monomials(self):
        """h3, 权 (1, 1, 2), 界 2: 1, x, y, z, x², xy, y²"""
        w = WeightVector((1, 1, 2))
        kept = enumerate_bounded(w, 2, w, 2)
        assert len(kept) == 7
        assert kept[0] == (0, 0, 0)
        assert set(kept) == {
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 2, 0),
        }

    @pytest.mark.parametrize(
        "weights, bound",
        [
            pytest.param((1, 1, 2), 4, id="h3"),
            pytest.param((1, 1, 2, 3, 4), 6, id="filiform5"),
            pytest.param((2, 3, 3), 7, id="sparse"),
        ],
    )
    def test_count_matches_denumerant(self, weights, bound):
        """第二个权为 0 时，枚举数量等于累计 Sylvester 计数"""
        w1 = WeightVector(weights)
        w2 = WeightVector((0,) * len(weights))
        kept = enumerate_bounded(w1, bound, w2, 0)
        assert len(kept) == sum(weighted_monomial_counts(weights, bound))

    def test_matches_brute_force(self):
        """与穷举比较（两个权同时约束）"""
        w1 = WeightVector((1, 1, 2, 3))
        w2 = WeightVector((0, 1, 1, 1))
        kept = set(enumerate_bounded(w1, 4, w2, 2))
        keep = monomial_filter(w1, 5, w2, 3)
        brute = {alpha for alpha in itertools.product(range(5), repeat=4) if keep(alpha)}
        assert kept == brute

    def test_non_positive_weight(self):
        with pytest.raises(NonPositiveWeightError) as exc_info:
            enumerate_bounded(WeightVector((1, 0)), 2, WeightVector((1, 1)), 2)
        assert exc_info.value.index == 1

    def test_negative_budget(self):
        w = WeightVector((1, 1))
        assert enumerate_bounded(w, -1, w, 3) == []
