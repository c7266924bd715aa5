import itertools
from fractions import Fraction

import pytest
from django.test import SimpleTestCase

from mvlab.conf import Budget
from mvlab.exceptions import HypothesisNotMetError, PreconditionError
from mvlab.mv_core import MvHom, finite_chain, interval_q, product
from mvlab.mvmod import boolean_scalars, check_module_axioms, module_make, module_over
from mvlab.pmv import gamma_ring
from mvlab.rational_core import RationalSubgroup, RationalSubring, subgroup_generate
from mvlab.tensor import (
    check_bimorphism,
    extend_hom,
    factor_bimorphism,
    iota_embedding,
    tensor_group,
    tensor_module_structure,
    tensor_ss,
    verify_extension,
)

F = Fraction
BUDGET = Budget(seed=0, order=4, samples=1000, exhaustive_limit=200)


def brute_force_tensor_group(left, right, top=F(1)):
    """Subgrupo gerado pelos produtos de enumerações limitadas dos dois grupos."""
    products = {
        x * y
        for x in left.interval_elements(top, 4)
        for y in right.interval_elements(top, 4)
        if x * y > 0
    }
    return subgroup_generate(sorted(products))


class TestTensorGroup(SimpleTestCase):
    """Testa o produto tensorial dos grupos."""

    def test_cyclic_groups(self):
        half, third = RationalSubgroup.cyclic(F(1, 2)), RationalSubgroup.cyclic(F(1, 3))
        assert tensor_group(half, third) == RationalSubgroup.cyclic(F(1, 6))
        assert brute_force_tensor_group(half, third) == tensor_group(half, third)

    def test_rationals_absorb(self):
        assert tensor_group(RationalSubgroup.all(), RationalSubgroup.cyclic(F(1, 3))) == RationalSubgroup.all()

    def test_integers_act_as_identity(self):
        for group in (RationalSubgroup.cyclic(F(1, 5)), RationalSubgroup.localized([3], F(1, 2))):
            assert tensor_group(RationalSubgroup.cyclic(1), group) == group

    def test_products_distribute(self):
        groups = tensor_group(
            (RationalSubgroup.cyclic(F(1, 2)), RationalSubgroup.cyclic(F(1, 3))), RationalSubgroup.cyclic(F(1, 2))
        )
        assert groups == (RationalSubgroup.cyclic(F(1, 4)), RationalSubgroup.cyclic(F(1, 6)))


class TestTensorProduct(SimpleTestCase):
    """Testa o tensor semissimples e o bimorfismo canônico."""

    def test_chains(self):
        tensor = tensor_ss(finite_chain(2), finite_chain(3))
        assert tensor.result.describe() == "chain(6)"
        assert tensor.beta(F(1, 2), F(2, 3)) == F(1, 3)

    def test_chain_table(self):
        """Testa chain(a) ⊗ chain(b) = chain(ab) para 1 ≤ a, b ≤ 12."""
        for a, b in itertools.product(range(1, 13), repeat=2):
            tensor = tensor_ss(finite_chain(a), finite_chain(b))
            assert tensor.result == finite_chain(a * b), (a, b)
            assert tensor.beta(F(1, a), F(1, b)) == F(1, a * b)

    def test_chain_table_against_brute_force(self):
        for a, b in itertools.product(range(1, 5), repeat=2):
            left, right = RationalSubgroup.cyclic(F(1, a)), RationalSubgroup.cyclic(F(1, b))
            assert tensor_group(left, right) == brute_force_tensor_group(left, right), (a, b)

    def test_chain_bimorphisms(self):
        for a, b in itertools.product(range(1, 7), repeat=2):
            report = check_bimorphism(tensor_ss(finite_chain(a), finite_chain(b)), BUDGET)
            assert report.passed, (a, b)
            assert report.exhaustive, (a, b)

    def test_interval_q_absorbs_chain(self):
        assert tensor_ss(interval_q(), finite_chain(2)).result == interval_q()

    def test_product_factor(self):
        tensor = tensor_ss(product(finite_chain(2), finite_chain(3)), finite_chain(2))
        assert tensor.result.describe() == "prod(chain(4), chain(6))"
        assert tensor.beta((F(1, 2), F(1, 3)), F(1, 2)) == (F(1, 4), F(1, 6))

    def test_bimorphism_laws(self):
        report = check_bimorphism(tensor_ss(finite_chain(2), finite_chain(3)), BUDGET)
        assert report.passed
        assert report.exhaustive

    def test_min_bimorphism_fails_additivity(self):
        """Testa que β := min falha em β(a+a',b)=β(a,b)+β(a',b) com a = a' = b = 1/4."""
        tensor = tensor_ss(finite_chain(4), finite_chain(4))
        report = check_bimorphism(tensor, BUDGET, beta=min)
        assert not report.passed
        assert report.checks[0].law == "β(a+a',b)=β(a,b)+β(a',b)"
        assert report.checks[0].counterexamples == [{"a": F(1, 4), "a'": F(1, 4), "b": F(1, 4)}]

    def test_iota_embedding(self):
        tensor = tensor_ss(finite_chain(2), finite_chain(3))
        iota = iota_embedding(tensor, "right", BUDGET)
        assert iota(F(1, 3)) == F(1, 3)
        assert tensor.iota("left")(F(1, 2)) == F(1, 2)
        with pytest.raises(PreconditionError):
            iota_embedding(tensor, "middle")

    def test_module_structure(self):
        dyadic = gamma_ring(RationalSubring.localized([2]))
        module = tensor_module_structure(dyadic, finite_chain(3))
        assert module.carrier.describe() == "gamma(localized(2, 1/3), 1)"
        with pytest.raises(PreconditionError):
            scalars = gamma_ring([RationalSubring.integers()] * 2)
            tensor_module_structure(scalars, product(finite_chain(2), finite_chain(2)))

    def test_module_structure_family(self):
        """Testa os axiomas de módulo no tensor dos escalares com cadeias finitas."""
        budget = Budget(seed=0, order=2, samples=300, exhaustive_limit=200)
        family = [(boolean_scalars(), finite_chain(d)) for d in range(1, 7)]
        family.append((gamma_ring(RationalSubring.localized([2])), finite_chain(3)))
        family.append((gamma_ring(RationalSubring.all()), finite_chain(2)))
        for scalars, algebra in family:
            module = tensor_module_structure(scalars, algebra)
            assert check_module_axioms(module, budget).passed, module.describe()


class TestUniversalProperty(SimpleTestCase):
    """Testa a extensão única f̃ e a fatoração de bimorfismos."""

    def test_extend_hom_over_boolean(self):
        scalars = boolean_scalars()
        target = module_make(scalars, RationalSubgroup.cyclic(F(1, 4)), 1)
        f = MvHom(finite_chain(2), finite_chain(4), (F(1),), (0,))
        extension = extend_hom(scalars, finite_chain(2), target, f, BUDGET)
        assert extension.scalars == (F(1),)
        assert all(extension(x) == f(x) for x in finite_chain(2).elements())

    def test_extend_hom_over_rationals(self):
        """Testa que a extensão a [0,1]_Q ⊗ chain(2) = interval_q divide os escalares pela unidade."""
        scalars = gamma_ring(RationalSubring.all())
        target = module_over(scalars, interval_q())
        f = MvHom(finite_chain(2), interval_q(), (F(1),), (0,))
        report = verify_extension(scalars, finite_chain(2), target, f, BUDGET)
        assert report.passed
        assert report.check("f̃∘ι_B=f").cases == 3

    def test_extend_needs_totally_ordered_scalars(self):
        scalars = gamma_ring([RationalSubring.integers()] * 2)
        target = module_over(scalars, product(finite_chain(1), finite_chain(1)))
        f = MvHom(finite_chain(1), target.carrier, (F(1), F(1)), (0, 0))
        with pytest.raises(HypothesisNotMetError):
            extend_hom(scalars, finite_chain(1), target, f, BUDGET)

    def test_factor_canonical_bimorphism(self):
        tensor = tensor_ss(finite_chain(2), finite_chain(3))
        omega, report = factor_bimorphism(tensor, finite_chain(6), tensor.beta, BUDGET)
        assert report.passed
        assert omega.scalars == (F(1),)
        for a, b in itertools.product(finite_chain(2).elements(), finite_chain(3).elements()):
            assert omega(tensor.beta(a, b)) == tensor.beta(a, b)

    def test_factor_scaled_bimorphism(self):
        """Testa β(a,b) = ab/2 em chain(12): ω cai no intervalo [0, 1/2]."""
        tensor = tensor_ss(finite_chain(2), finite_chain(3))
        omega, report = factor_bimorphism(tensor, finite_chain(12), lambda a, b: a * b / 2, BUDGET)
        assert report.passed
        assert omega.target.top == F(1, 2)
        assert omega(F(1, 6)) == F(1, 12)
