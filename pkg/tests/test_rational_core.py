import random
from fractions import Fraction

import pytest
from django.test import SimpleTestCase

from mvlab.exceptions import InvalidGeneratorError, PreconditionError
from mvlab.rational_core import (
    RationalField,
    RationalSubgroup,
    RationalSubring,
    archimedean_witness,
    as_rational,
    farey_sequence,
    format_rational,
    fraction_field,
    ring_acts_on,
    smooth_numbers,
    subgroup_generate,
    subgroup_localized,
    subgroup_member,
    subring_generate,
    subring_member,
)

F = Fraction


class TestSubgroups(SimpleTestCase):
    """Testa os subgrupos de posto 1 dos racionais."""

    def test_generate_uses_gcd_of_scaled_numerators(self):
        """Testa que 1/2 e 1/3 geram o grupo cíclico de 1/6."""
        group = subgroup_generate([F(1, 2), F(1, 3)])
        assert group == RationalSubgroup.cyclic(F(1, 6))
        # 1/6 = 1/2 - 1/3 e os dois geradores são múltiplos inteiros de 1/6
        assert F(1, 2) - F(1, 3) == group.step
        assert (F(1, 2) / group.step).denominator == 1
        assert (F(1, 3) / group.step).denominator == 1

    def test_generate_trivial_cases(self):
        """Testa os inteiros e a normalização de 2/4."""
        assert subgroup_generate([1]) == RationalSubgroup.cyclic(1)
        assert subgroup_generate(["2/4"]).step == F(1, 2)

    def test_generate_rejects_bad_generators(self):
        """Testa geradores vazios, nulos ou negativos."""
        with pytest.raises(InvalidGeneratorError):
            subgroup_generate([])
        with pytest.raises(InvalidGeneratorError):
            subgroup_generate([0])
        with pytest.raises(InvalidGeneratorError):
            subgroup_generate([F(-1, 2)])

    def test_membership(self):
        group = RationalSubgroup.cyclic(F(1, 6))
        assert subgroup_member(group, F(5, 6))
        assert not subgroup_member(group, F(1, 4))
        assert subgroup_member(RationalSubgroup.all(), F(7, 13))

    def test_localized_scale_is_normalized(self):
        """Testa que a escala perde os primos invertidos, dando descritores iguais."""
        assert subgroup_localized([2], 4) == RationalSubgroup.localized([2])
        assert subgroup_localized([2], F(1, 3)).describe() == "localized(2, 1/3)"
        assert subgroup_localized([2, 3]).describe() == "localized(6)"
        assert subgroup_localized([], F(1, 5)) == RationalSubgroup.cyclic(F(1, 5))

    def test_localized_membership(self):
        dyadic = RationalSubgroup.localized([2])
        assert dyadic.member(F(3, 8))
        assert not dyadic.member(F(1, 3))

    def test_includes(self):
        assert RationalSubgroup.cyclic(F(1, 6)).includes(RationalSubgroup.cyclic(F(1, 2)))
        assert not RationalSubgroup.cyclic(F(1, 2)).includes(RationalSubgroup.cyclic(F(1, 6)))
        assert RationalSubgroup.localized([2]).includes(RationalSubgroup.cyclic(F(1, 4)))
        assert RationalSubgroup.all().includes(RationalSubgroup.localized([3]))
        assert not RationalSubgroup.localized([2, 3]).includes(RationalSubgroup.all())

    def test_describe(self):
        assert RationalSubgroup.all().describe() == "rationals"
        assert RationalSubgroup.cyclic(1).describe() == "integers"
        assert RationalSubgroup.cyclic(F(1, 2)).describe() == "cyclic(1/2)"

    def test_scale_must_be_positive(self):
        with pytest.raises(InvalidGeneratorError):
            RationalSubgroup(scale=F(-1, 2))

    def test_interval_elements(self):
        """Testa a enumeração exata, a de Farey e a dos grupos localizados."""
        assert RationalSubgroup.cyclic(F(1, 4)).interval_elements(F(1), 9) == [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
        assert RationalSubgroup.all().interval_elements(F(1), 2) == [F(0), F(1, 2), F(1)]
        assert len(RationalSubgroup.localized([2]).interval_elements(F(1), 2)) == 5
        assert len(RationalSubgroup.localized([2]).interval_elements(F(1), 4)) == 17


class TestSubrings(SimpleTestCase):
    """Testa os subanéis unitários e o corpo de frações."""

    def test_subring_generate(self):
        ring = subring_generate([F(1, 6), F(3, 4)])
        assert ring == RationalSubring.localized([2, 3])
        assert ring.describe() == "localized(6)"
        assert subring_generate([1, 2]) == RationalSubring.integers()

    def test_subring_member(self):
        dyadic = RationalSubring.localized([2])
        assert subring_member(dyadic, F(5, 8))
        assert not subring_member(dyadic, F(1, 3))
        assert subring_member(RationalSubring.all(), F(1, 3))

    def test_fraction_field_is_the_rationals(self):
        """Testa que o corpo de frações de qualquer subanel é Q, com testemunha x/y."""
        field = fraction_field(RationalSubring.integers())
        assert field.describe() == "rationals"
        assert field.source == RationalSubring.integers()
        assert field.express_quotient(F(3, 4)) == (F(3), F(4))
        assert fraction_field(RationalSubring.localized([2])).express_quotient(F(-5, 6)) == (F(-5), F(6))
        # a proveniência não participa da igualdade
        assert field == RationalField()

    def test_ring_acts_on(self):
        """Testa o fecho de um grupo sob um anel, com testemunha."""
        assert ring_acts_on(RationalSubring.integers(), RationalSubgroup.cyclic(F(1, 3))) is None
        assert ring_acts_on(RationalSubring.localized([2]), RationalSubgroup.cyclic(F(1, 3))) == (F(1, 2), F(1, 3))
        assert ring_acts_on(RationalSubring.all(), RationalSubgroup.localized([2])) == (F(1, 3), F(1))
        assert ring_acts_on(RationalSubring.all(), RationalSubgroup.all()) is None


class TestArithmeticHelpers(SimpleTestCase):
    def test_archimedean_witness(self):
        assert archimedean_witness(F(1, 3), 2) == 7
        assert 7 * F(1, 3) > 2
        with pytest.raises(PreconditionError):
            archimedean_witness(0, 1)

    def test_archimedean_witness_is_least(self):
        """Testa 100 pares sorteados: n·a > b e (n-1)·a ≤ b."""
        rng = random.Random(0)
        for _ in range(100):
            a = F(rng.randint(1, 50), rng.randint(1, 50))
            b = F(rng.randint(1, 500), rng.randint(1, 50))
            n = archimedean_witness(a, b)
            assert n >= 1
            assert n * a > b, (a, b)
            assert (n - 1) * a <= b, (a, b)

    def test_farey_sequence(self):
        assert list(farey_sequence(3)) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]
        with pytest.raises(PreconditionError):
            list(farey_sequence(0))

    def test_smooth_numbers(self):
        assert smooth_numbers(frozenset({2, 3}), 10) == [1, 2, 3, 4, 6, 8, 9]

    def test_as_rational_and_format(self):
        assert as_rational("3/6") == F(1, 2)
        assert format_rational(F(4, 2)) == "2"
        assert format_rational(F(-1, 3)) == "-1/3"
        with pytest.raises(TypeError):
            as_rational(True)
