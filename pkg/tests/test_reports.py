import json
import os
from fractions import Fraction
from unittest.mock import patch

import pytest
from django.test import SimpleTestCase, override_settings

from mvlab.conf import Budget, get_budget
from mvlab.exceptions import PreconditionError
from mvlab.laws import evaluate_law, evaluate_mixed, select_tuples
from mvlab.mv_core import finite_chain
from mvlab.reports import ConstructionReport, DomainReport, LawCheck, LawReport, emit_json, emit_report, to_jsonable

F = Fraction


class TestBudget(SimpleTestCase):
    """Testa a precedência settings < ambiente < flags."""

    @override_settings(MVLAB={"SAMPLES": 200, "ORDER": 5})
    def test_settings_dictionary(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("MVLAB_SAMPLES", None)
            os.environ.pop("MVLAB_ORDER", None)
            budget = get_budget()
        assert budget.samples == 200
        assert budget.order == 5

    @override_settings(MVLAB={"SEED": 1})
    def test_environment_overrides_settings(self):
        with patch.dict(os.environ, {"MVLAB_SEED": "7"}):
            assert get_budget().seed == 7
            assert get_budget(seed=3).seed == 3

    def test_non_integer_environment_is_ignored(self):
        with patch.dict(os.environ, {"MVLAB_ORDER": "many"}):
            with self.assertLogs("mvlab.conf", level="WARNING") as logs:
                budget = get_budget()
        assert budget.order == get_budget(order=None).order
        assert "MVLAB_ORDER" in logs.output[0]

    def test_defaults(self):
        assert Budget() == Budget(seed=0, order=4, samples=1000, exhaustive_limit=200)

    def test_non_positive_values_are_rejected(self):
        for overrides in ({"order": 0}, {"samples": -1}, {"exhaustive_limit": 0}):
            with pytest.raises(PreconditionError):
                Budget(**overrides)


class TestLaws(SimpleTestCase):
    """Testa a seleção de tuplas e a parada no primeiro contraexemplo."""

    def test_exhaustive_for_small_finite_carriers(self):
        tuples, exhaustive = select_tuples("law", [1, 2, 3], 2, True, Budget())
        assert exhaustive
        assert len(list(tuples)) == 9

    def test_exhaustive_depends_on_carrier_size_only(self):
        """Testa que 36 elementos e aridade 3 (46656 tuplas) continuam exaustivos."""
        tuples, exhaustive = select_tuples("x⊕(y⊕z)=(x⊕y)⊕z", list(range(36)), 3, True, Budget(samples=10))
        assert exhaustive
        assert sum(1 for _ in tuples) == 36**3
        _, exhaustive = select_tuples("law", list(range(11)), 1, True, Budget(exhaustive_limit=10, samples=5))
        assert not exhaustive

    def test_sampling_is_deterministic(self):
        budget = Budget(seed=5, samples=50)
        elements = list(range(100))
        first, exhaustive = select_tuples("x⊕y=y⊕x", elements, 2, False, budget)
        second, _ = select_tuples("x⊕y=y⊕x", elements, 2, False, budget)
        assert not exhaustive
        assert len(first) == 50
        assert first == second

    def test_stops_at_first_counterexample(self):
        check = evaluate_law("x<2", [0, 1, 2, 3, 4], 1, lambda x: x < 2, Budget(), True)
        assert check.counterexamples == [{"x": 2}]
        assert check.cases == 3
        assert not check.passed

    def test_errors_become_counterexamples(self):
        chain = finite_chain(2)

        def predicate(x):
            chain.check_member(x)
            return True

        check = evaluate_mixed("x∈A", [[F(1, 2), F(1, 3)]], predicate, Budget(), True, ("x",))
        assert check.counterexamples[0]["x"] == F(1, 3)
        assert "error" in check.counterexamples[0]


class TestReports(SimpleTestCase):
    """Testa a serialização canônica dos relatórios."""

    def test_law_report_json(self):
        report = LawReport(instance="chain(2)", seed=4)
        report.add(LawCheck("x**=x", cases=3, exhaustive=True))
        report.add(LawCheck("x⊕0=x", cases=1, exhaustive=True, counterexamples=[{"x": F(1, 2)}]))
        text = emit_report(report)
        assert " " not in text.replace("x**=x", "")
        data = json.loads(text)
        assert data["verdict"] == "fail"
        assert data["cases"] == 4
        assert data["seed"] == 4
        assert data["checks"][1]["counterexamples"] == [{"x": "1/2"}]
        assert list(data)[:5] == ["verdict", "instance", "cases", "seed", "exhaustive"]

    def test_extend_prefixes_laws(self):
        inner = LawReport(instance="inner")
        inner.add(LawCheck("h(0)=0", cases=1))
        outer = LawReport(instance="outer")
        outer.extend(inner, prefix="f̃")
        assert outer.checks[0].law == "f̃: h(0)=0"

    def test_domain_report(self):
        report = DomainReport(instance="pmv(prod(boolean, boolean))", quasi_identity="x·y=0 ⇒ x=0 or y=0")
        report.holds = False
        report.witness = ((F(1), F(0)), (F(0), F(1)))
        data = json.loads(emit_report(report))
        assert data["verdict"] == "fail"
        assert data["holds"] is False
        assert data["property"] == "x·y=0 ⇒ x=0 or y=0"
        assert data["witness"] == [["1", "0"], ["0", "1"]]

    def test_construction_report(self):
        report = ConstructionReport(instance="chain(2)", verdict="not_isomorphic", expected="not_isomorphic")
        report.step("lift", space="(rationals, 1)", unit=F(1))
        assert report.passed
        data = json.loads(emit_report(report))
        assert data["trace"] == [{"step": "lift", "space": "(rationals, 1)", "unit": "1"}]

    def test_to_jsonable(self):
        assert to_jsonable(finite_chain(3)) == "chain(3)"
        assert to_jsonable({"x": (F(1, 2), True, None)}) == {"x": ["1/2", True, None]}
        assert emit_json({"a": "∉"}) == '{"a":"∉"}'
