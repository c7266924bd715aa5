"""
MV-modules over a PMV-algebra: the scalar action, its laws, and the unit embedding a -> a·1.

A totally ordered scalar algebra acts on every component of the carrier by
rational multiplication; a product of scalar algebras acts componentwise on a
carrier with the same number of components.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from .conf import Budget, get_budget
from .exceptions import HypothesisNotMetError, InvalidHomError, NotAModuleError, RestrictionError
from .laws import evaluate_law, evaluate_mixed
from .mv_core import MvAlgebra, MvHom, Rank1Algebra, format_element, gamma, hom_all, ideals_finite, is_semisimple
from .otel_config import traced_check
from .pmv import PmvAlgebra, gamma_ring, is_mv_domain, ring_zero_divisors
from .rational_core import RationalSubring, format_rational, ring_acts_on
from .reports import DomainReport, LawReport

logger = logging.getLogger(__name__)

NO_ZERO_DIVISORS = "αx=0 ⇒ α=0 or x=0"


@dataclass(frozen=True)
class MvModule:
    scalars: PmvAlgebra
    carrier: MvAlgebra

    def __post_init__(self):
        n_scalars, n_carrier = len(self.scalars.factors), len(self.carrier.factors)
        if n_scalars != 1 and n_scalars != n_carrier:
            raise NotAModuleError(
                f"{self.scalars.describe()} cannot act on the {n_carrier} components of {self.carrier.describe()}"
            )
        for j, factor in enumerate(self.carrier.factors):
            ring = self.ring_for(j)
            witness = ring_acts_on(ring, factor.group)
            if witness is not None:
                r, g = witness
                logger.warning(
                    f"{factor.group} is not closed under {ring}", extra={"instance": self.carrier.describe()}
                )
                raise NotAModuleError(
                    f"({format_rational(r)})·({format_rational(g)}) ∉ {factor.group.describe()}", witness=witness
                )

    def ring_for(self, component: int) -> RationalSubring:
        rings = self.scalars.rings
        return rings[0] if len(rings) == 1 else rings[component]

    @property
    def is_finite(self) -> bool:
        return self.carrier.is_finite and self.scalars.is_finite

    @property
    def top(self):
        return self.carrier.top

    @property
    def zero(self):
        return self.carrier.zero

    def act(self, alpha, x):
        carrier = self.carrier
        values = carrier.to_components(x)
        if len(self.scalars.factors) == 1:
            return carrier.from_components([alpha * v for v in values])
        coefficients = self.scalars.base.to_components(alpha)
        return carrier.from_components([a * v for a, v in zip(coefficients, values)])

    def describe(self) -> str:
        carrier = self.carrier
        if isinstance(carrier, Rank1Algebra):
            return (
                f"module(scalars={self.scalars.describe()}, group={carrier.group.describe()}, "
                f"unit={format_rational(carrier.unit)})"
            )
        return f"module(scalars={self.scalars.describe()}, algebra={carrier.describe()})"

    def __str__(self):
        return self.describe()


def module_make(scalars: PmvAlgebra, group, unit) -> MvModule:
    """The module on [0, unit]_group; the group must be closed under the scalar ring."""
    return MvModule(scalars, gamma(group, unit))


def module_over(scalars: PmvAlgebra, carrier: MvAlgebra) -> MvModule:
    return MvModule(scalars, carrier)


def scalar_mul(module: MvModule, alpha, x):
    module.scalars.base.check_member(alpha)
    module.carrier.check_member(x)
    return module.act(alpha, x)


def _mixed(report, budget, finite, names=("α", "x", "y")):
    def law(name, pools, predicate, law_names=names):
        report.add(evaluate_mixed(name, pools, predicate, budget, finite, law_names))

    return law


@traced_check("check_module_axioms")
def check_module_axioms(module: MvModule, budget: Optional[Budget] = None) -> LawReport:
    """The module laws, with the partial-addition laws tested only where the sums are defined."""
    budget = budget or get_budget()
    carrier, pmv = module.carrier, module.scalars
    scalars = pmv.elements(budget.order)
    elements = carrier.elements(budget.order)
    act = module.act
    report = LawReport(instance=module.describe(), seed=budget.seed)
    law = _mixed(report, budget, module.is_finite)

    law("αx∈M", [scalars, elements], lambda a, x: carrier.contains(act(a, x)))
    law(
        "α(x+y)=αx+αy",
        [scalars, elements, elements],
        lambda a, x, y: not carrier.sum_defined(x, y) or act(a, carrier.add(x, y)) == carrier.add(act(a, x), act(a, y)),
    )
    law(
        "(α+β)x=αx+βx",
        [scalars, scalars, elements],
        lambda a, b, x: (
            not pmv.base.sum_defined(a, b) or act(pmv.base.add(a, b), x) == carrier.add(act(a, x), act(b, x))
        ),
        ("α", "β", "x"),
    )
    law(
        "α(βx)=(αβ)x",
        [scalars, scalars, elements],
        lambda a, b, x: act(a, act(b, x)) == act(pmv.product(a, b), x),
        ("α", "β", "x"),
    )
    law("1x=x", [elements], lambda x: act(pmv.top, x) == x, ("x",))
    law(
        "α≤β ⇒ αx≤βx",
        [scalars, scalars, elements],
        lambda a, b, x: not pmv.base.leq(a, b) or carrier.leq(act(a, x), act(b, x)),
        ("α", "β", "x"),
    )
    return report


def _zero_divisor_hypothesis(pmv: PmvAlgebra, budget: Budget) -> dict:
    return {
        "totally_ordered": pmv.is_totally_ordered,
        "mv_domain": is_mv_domain(pmv, budget).holds,
        "field_scalars": all(ring.full for ring in pmv.rings),
        "semisimple": is_semisimple(pmv.base),
    }


@traced_check("check_no_zero_divisors")
def check_no_zero_divisors(module: MvModule, budget: Optional[Budget] = None) -> DomainReport:
    budget = budget or get_budget()
    pmv, carrier = module.scalars, module.carrier
    zero_scalar, zero = pmv.zero, carrier.zero
    report = DomainReport(
        instance=module.describe(),
        seed=budget.seed,
        quasi_identity=NO_ZERO_DIVISORS,
        hypothesis=_zero_divisor_hypothesis(pmv, budget),
    )
    check = report.add(
        evaluate_mixed(
            NO_ZERO_DIVISORS,
            [pmv.elements(budget.order), carrier.elements(budget.order)],
            lambda a, x: module.act(a, x) != zero or a == zero_scalar or x == zero,
            budget,
            module.is_finite,
            ("α", "x"),
        )
    )
    report.holds = check.passed
    if not check.passed:
        report.witness = (check.counterexamples[0]["α"], check.counterexamples[0]["x"])
        divisors = ring_zero_divisors(pmv.rings)
        if divisors is not None and len(carrier.factors) == len(pmv.factors):
            alpha, e = divisors
            report.witness = (alpha, carrier.from_components([t * c for t, c in zip(carrier.units, e)]))
    elif all(report.hypothesis.values()):
        report.status = "certified"
        report.certificates.append("the action is rational multiplication by a nonzero element of the rational field")
    return report


def unit_embedding(module: MvModule, budget: Optional[Budget] = None) -> MvHom:
    """a -> a·1_M from the scalars into the module; needs totally ordered scalars."""
    pmv = module.scalars
    if not pmv.is_totally_ordered:
        raise HypothesisNotMetError(f"{pmv.describe()} is not totally ordered")
    units = module.carrier.units
    return MvHom(pmv.base, module.carrier, units, (0,) * len(units)).validate(budget)


@traced_check("embed_unit")
def unit_embedding_report(module: MvModule, budget: Optional[Budget] = None) -> LawReport:
    budget = budget or get_budget()
    iota = unit_embedding(module, budget)
    P, M = module.scalars.base, module.carrier
    scalars = module.scalars.elements(budget.order)
    finite = P.is_finite
    report = LawReport(instance=module.describe(), seed=budget.seed)
    report.certificates.append(f"ι = {iota.describe()}")

    def law(name, arity, predicate, names=("a", "b")):
        report.add(evaluate_law(name, scalars, arity, predicate, budget, finite, names))

    law("ι(0)=0", 1, lambda a: iota(P.zero) == M.zero)
    law("ι(a*)=ι(a)*", 1, lambda a: iota(P.neg(a)) == M.neg(iota(a)))
    law("ι(a⊕b)=ι(a)⊕ι(b)", 2, lambda a, b: iota(P.oplus(a, b)) == M.oplus(iota(a), iota(b)))
    law("ι(a+b)=ι(a)+ι(b)", 2, lambda a, b: not P.sum_defined(a, b) or iota(P.add(a, b)) == M.add(iota(a), iota(b)))
    law("a⊕b=(a∧b*)+b", 2, lambda a, b: P.oplus(a, b) == P.add(P.meet(a, P.neg(b)), b))
    law("ι(a)=ι(b) ⇒ a=b", 2, lambda a, b: iota(a) != iota(b) or a == b)
    return report


@dataclass(frozen=True)
class ModuleHom:
    """An MvHom between module carriers that commutes with the scalar action."""

    source: MvModule
    target: MvModule
    hom: MvHom

    def __post_init__(self):
        if self.source.scalars != self.target.scalars:
            raise InvalidHomError(f"{self.source.describe()} and {self.target.describe()} have different scalars")
        if self.hom.source != self.source.carrier or self.hom.target != self.target.carrier:
            raise InvalidHomError(f"{self.hom.describe()} does not run between the module carriers")

    @property
    def scalars(self):
        return self.hom.scalars

    @property
    def routing(self):
        return self.hom.routing

    def __call__(self, x):
        return self.hom(x)

    def compose(self, inner: "ModuleHom") -> "ModuleHom":
        return ModuleHom(inner.source, self.target, self.hom.compose(inner.hom))

    @classmethod
    def identity(cls, module: MvModule) -> "ModuleHom":
        return cls(module, module, MvHom.identity(module.carrier))

    def validation_report(self, budget: Optional[Budget] = None) -> LawReport:
        budget = budget or get_budget()
        report = self.hom.validation_report(budget)
        pools = [self.source.scalars.elements(budget.order), self.source.carrier.elements(budget.order)]
        finite = self.source.is_finite
        report.add(
            evaluate_mixed(
                "h(αx)=αh(x)",
                pools,
                lambda a, x: self(self.source.act(a, x)) == self.target.act(a, self(x)),
                budget,
                finite,
                ("α", "x"),
            )
        )
        return report

    def validate(self, budget: Optional[Budget] = None) -> "ModuleHom":
        report = self.validation_report(budget)
        if not report.passed:
            raise InvalidHomError(f"{self.describe()} is not a module homomorphism: {report.first_counterexample()}")
        return self

    def describe(self) -> str:
        return self.hom.describe()

    def to_dict(self):
        return self.hom.to_dict()


def _commutes_with_action(module: MvModule, hom: MvHom) -> bool:
    # a product of scalar algebras acts componentwise, so the routing must keep components in place
    if len(module.scalars.factors) == 1:
        return True
    return all(i == j for j, i in enumerate(hom.routing))


def module_hom_all(source: MvModule, target: MvModule) -> List[ModuleHom]:
    if source.scalars != target.scalars:
        return []
    return [
        ModuleHom(source, target, hom)
        for hom in hom_all(source.carrier, target.carrier)
        if _commutes_with_action(source, hom)
    ]


def make_module_hom(source: MvModule, target: MvModule, scalars, routing=None, budget=None) -> ModuleHom:
    scalars = tuple(scalars)
    if routing is None:
        routing = (0,) * len(scalars) if len(source.carrier.factors) == 1 else tuple(range(len(scalars)))
    return ModuleHom(source, target, MvHom(source.carrier, target.carrier, scalars, tuple(routing))).validate(budget)


def _ring_includes(larger: RationalSubring, smaller: RationalSubring) -> bool:
    return larger.full or (not smaller.full and smaller.primes <= larger.primes)


def restrict_scalars(module: MvModule, scalars: PmvAlgebra) -> MvModule:
    """The same carrier viewed as a module over a scalar subalgebra."""
    current = module.scalars
    if len(scalars.rings) != len(current.rings) and len(scalars.rings) != 1:
        raise RestrictionError(f"{scalars.describe()} does not match the components of {current.describe()}")
    for j in range(len(module.carrier.factors)):
        smaller = scalars.rings[0] if len(scalars.rings) == 1 else scalars.rings[j]
        if not _ring_includes(module.ring_for(j), smaller):
            raise RestrictionError(f"{scalars.describe()} is not a subalgebra of {current.describe()}")
    return MvModule(scalars, module.carrier)


@traced_check("check_p_ideals")
def check_p_ideals(module: MvModule, budget: Optional[Budget] = None) -> LawReport:
    """Every ideal of a finite carrier is closed under the scalar action."""
    budget = budget or get_budget()
    report = LawReport(instance=module.describe(), seed=budget.seed)
    scalars = module.scalars.elements(budget.order)
    for ideal in ideals_finite(module.carrier):
        members = ideal.sorted_elements()
        label = "{" + ", ".join(format_element(x) for x in members) + "}"
        report.add(
            evaluate_mixed(
                f"αx∈I for I={label}",
                [scalars, members],
                lambda a, x, ideal=ideal: module.act(a, x) in ideal.elements,
                budget,
                module.scalars.is_finite,
                ("α", "x"),
            )
        )
    return report


def boolean_scalars() -> PmvAlgebra:
    return gamma_ring(RationalSubring.integers())
