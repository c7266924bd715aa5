from fractions import Fraction
from pathlib import Path
from tempfile import TemporaryDirectory

import pytest
from django.test import SimpleTestCase

from mvlab.adjunction import (
    AdjunctionInstance,
    LinearMap,
    build_family,
    check_adjunction,
    check_family,
    check_functoriality,
    check_identity_lift,
    check_naturality,
    default_family,
    functor_gamma_V,
    functor_L_mor,
    functor_L_obj,
    linear_space,
    load_family,
    non_equivalence_witness,
    restrict_linear_map,
    unit_map,
    universal_arrow,
    universal_arrow_report,
)
from mvlab.conf import Budget
from mvlab.exceptions import CompositionError, HypothesisNotMetError, RestrictionError
from mvlab.mv_core import boolean, interval_q, product
from mvlab.mvmod import ModuleHom, boolean_scalars, module_hom_all, module_make, module_over
from mvlab.pmv import gamma_ring
from mvlab.rational_core import RationalSubgroup, RationalSubring

F = Fraction
BUDGET = Budget(seed=0, order=3, samples=500, exhaustive_limit=200)


def chain_module(d):
    return module_make(boolean_scalars(), RationalSubgroup.cyclic(F(1, d)), 1)


class TestLinearSpaces(SimpleTestCase):
    """Testa espaços lineares ordenados e suas aplicações."""

    def test_describe(self):
        assert linear_space(1).describe() == "(rationals, 1)"
        assert linear_space(1, 2).describe() == "(rationals^2, (1, 2))"
        assert functor_gamma_V(linear_space(1)).carrier == interval_q()

    def test_compose(self):
        v1, v2 = linear_space(1), linear_space(1, 1)
        diagonal = LinearMap(v1, v2, (F(1), F(1)), (0, 0))
        swap = LinearMap(v2, v2, (F(1), F(1)), (1, 0))
        assert swap.compose(diagonal)(F(1, 3)) == (F(1, 3), F(1, 3))
        with pytest.raises(CompositionError):
            diagonal.compose(swap)

    def test_restrict_linear_map(self):
        v1, v2 = linear_space(1), linear_space(2)
        assert restrict_linear_map(LinearMap(v1, v2, (F(2),), (0,)), v1, v2)(F(1, 2)) == F(1)
        with pytest.raises(RestrictionError):
            restrict_linear_map(LinearMap(v1, v2, (F(3),), (0,)), v1, v2)


class TestFunctors(SimpleTestCase):
    """Testa os funtores 𝓛 e Γ e a unidade ι_M."""

    def test_lift_of_three_element_chain(self):
        space = functor_L_obj(chain_module(2))
        assert space == linear_space(1)
        assert space.field.source == RationalSubring.integers()

    def test_lift_of_product(self):
        module = module_over(boolean_scalars(), product(boolean(), boolean()))
        assert functor_L_obj(module).describe() == "(rationals^2, (1, 1))"

    def test_lift_needs_totally_ordered_scalars(self):
        scalars = gamma_ring([RationalSubring.integers()] * 2)
        with pytest.raises(HypothesisNotMetError):
            functor_L_obj(module_over(scalars, product(boolean(), boolean())))

    def test_unit_map(self):
        iota = unit_map(chain_module(2))
        assert iota.describe() == "chain(2) -> interval_q: x -> 1*x0"
        assert iota(F(1, 2)) == F(1, 2)
        assert iota.validation_report(BUDGET).passed

    def test_lift_hom(self):
        (h,) = module_hom_all(chain_module(2), chain_module(4))
        lifted = functor_L_mor(h, BUDGET)
        assert lifted == LinearMap.identity(linear_space(1))


class TestUniversalArrow(SimpleTestCase):
    """Testa a seta universal f♯ e a fatoração pela extensão do tensor."""

    def test_doubling(self):
        """Testa f: chain(2) -> Γ(Q, 2), x -> 2x: f♯ é a multiplicação por 2."""
        module = chain_module(2)
        instance = AdjunctionInstance(module, linear_space(2), (F(2),), (0,))
        f = instance.build(BUDGET)
        sharp, report = universal_arrow_report(module, linear_space(2), f, BUDGET)
        assert report.passed
        assert sharp.scalars == (F(2),)
        assert report.check("f♯ is unique").passed
        assert report.check("f♯|[0,u]=f*").passed

    def test_universal_arrow_into_product(self):
        module = chain_module(3)
        space = linear_space(1, 1)
        f = AdjunctionInstance(module, space, (F(1), F(1)), (0, 0)).build(BUDGET)
        sharp = universal_arrow(module, space, f, BUDGET)
        assert sharp(F(1, 3)) == (F(1, 3), F(1, 3))

    def test_invalid_instances_are_reported(self):
        """Testa que instâncias inválidas vão para ``invalid`` sem derrubar o relatório."""
        bad = AdjunctionInstance(chain_module(2), linear_space(2), (F(3),), (0,), "bad")
        good = AdjunctionInstance(chain_module(2), linear_space(1), (F(1),), (0,), "good")
        report = check_adjunction([bad, good], BUDGET)
        assert report.passed
        assert [item["instance"] for item in report.invalid] == ["bad"]

    def test_empty_family_is_vacuous(self):
        report = check_adjunction([], BUDGET)
        assert report.passed
        assert report.cases == 0
        assert report.notes == ["vacuous: no instances, zero cases"]


class TestFunctoriality(SimpleTestCase):
    """Testa funtorialidade de 𝓛 e naturalidade da unidade."""

    def test_composition_is_preserved(self):
        (h,) = module_hom_all(chain_module(2), chain_module(4))
        (g,) = module_hom_all(chain_module(4), chain_module(12))
        assert check_functoriality(g, h, BUDGET).passed
        with pytest.raises(CompositionError):
            check_functoriality(h, g, BUDGET)

    def test_identity_lift(self):
        module = module_over(boolean_scalars(), product(boolean(), boolean()))
        assert check_identity_lift(module, BUDGET).passed

    def test_naturality_on_projection(self):
        source = module_over(boolean_scalars(), product(boolean(), boolean()))
        for h in module_hom_all(source, module_make(boolean_scalars(), RationalSubgroup.cyclic(1), 1)):
            assert check_naturality(h, BUDGET).passed

    def test_small_family(self):
        family = build_family([chain_module(2), chain_module(4)])
        assert len(family.homs) == 3
        report = check_family(family, BUDGET)
        assert report.passed
        assert not report.invalid

    def test_load_family(self):
        with TemporaryDirectory() as directory:
            path = Path(directory) / "family.txt"
            path.write_text("# chains over the Boolean scalars\nchain(2)\n\nchain(3)  # second\n", encoding="utf-8")
            family = load_family(path)
        assert [module.carrier.describe() for module in family.modules] == ["chain(2)", "chain(3)"]
        assert all(isinstance(h, ModuleHom) for h in family.homs)

    def test_default_family(self):
        """Testa a família padrão do adjoint-check: cadeias, um produto e o módulo diádico com a duplicação."""
        family = default_family()
        assert len(family.modules) == 6
        report = check_family(family, BUDGET)
        assert report.passed
        assert not report.invalid
        assert any(check.law.startswith("adjunction: doubling[") for check in report.checks)

    def test_lift_caches_are_bounded(self):
        assert unit_map.cache_info().maxsize == 256
        unit_map(chain_module(2))
        assert unit_map.cache_info().currsize <= 256


class TestNonEquivalence(SimpleTestCase):
    """Testa que a unidade da adjunção não é um isomorfismo."""

    def test_three_element_chain(self):
        """Testa Γ(𝓛(L₃)) = interval_q, não isomorfo à cadeia de 3 elementos."""
        report = non_equivalence_witness(budget=BUDGET)
        assert report.verdict == "not_isomorphic"
        assert report.passed
        steps = {step["step"]: step for step in report.trace}
        assert steps["quotient_field"]["K"] == "rationals"
        assert steps["gamma_of_lift"]["algebra"] == "interval_q"
        assert steps["isomorphism"]["reason"] == "cardinality: 3 vs infinite"
        assert steps["witness"]["element"] == F(1, 3)

    def test_rational_interval_is_fixed(self):
        field = gamma_ring(RationalSubring.all())
        report = non_equivalence_witness(module_over(field, interval_q()), BUDGET)
        assert report.verdict == "isomorphic"
        assert report.passed
        assert "witness" not in [step["step"] for step in report.trace]
