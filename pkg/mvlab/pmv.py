"""
PMV-algebras: MV-algebras on [0, 1]_R for a unital subring R of the rationals,
with the ring product restricted to the unit interval.

Only the subrings themselves are product-closed, so the scalar carriers are the
Boolean pair (R = Z), Gamma(Z[1/n], 1), the rational unit interval and finite
products of those.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .conf import Budget, get_budget
from .exceptions import InvalidUnitError, NotProductClosedError
from .laws import evaluate_law
from .mv_core import MvAlgebra, Rank1Algebra, gamma
from .otel_config import traced_check
from .rational_core import ONE, ZERO, RationalSubring, as_rational, format_rational
from .reports import DomainReport, LawReport

logger = logging.getLogger(__name__)

MV_DOMAIN = "x·y=0 ⇒ x=0 or y=0"
PMV_PLUS = "x·x=0 ⇒ x=0"

RATIONALS_CERTIFICATE = "the product is rational multiplication, and the rationals have no zero divisors"

RingLike = Union[RationalSubring, Sequence[RationalSubring]]


def _ring_descriptor(ring: RationalSubring) -> str:
    if ring.full:
        return "interval_q"
    if not ring.primes:
        return "boolean"
    return ring.describe()


@dataclass(frozen=True)
class PmvAlgebra:
    """An MV-algebra carrier together with the rings whose product it inherits."""

    base: MvAlgebra
    rings: Tuple[RationalSubring, ...]

    @property
    def factors(self):
        return self.base.factors

    @property
    def is_totally_ordered(self) -> bool:
        return self.base.is_totally_ordered

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def top(self):
        return self.base.top

    @property
    def zero(self):
        return self.base.zero

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def product(self, x, y):
        b = self.base
        return b.from_components([p * q for p, q in zip(b.to_components(x), b.to_components(y))])

    def elements(self, order: int = 4):
        return self.base.elements(order)

    def describe(self) -> str:
        if len(self.rings) == 1:
            return f"pmv({_ring_descriptor(self.rings[0])})"
        return "pmv(prod(" + ", ".join(_ring_descriptor(r) for r in self.rings) + "))"

    def __str__(self):
        return self.describe()


def gamma_ring(ring: RingLike, e=1) -> PmvAlgebra:
    """Gamma_(.)(R, e); only e = 1 (componentwise) is a unit of a subring of the rationals."""
    rings = (ring,) if isinstance(ring, RationalSubring) else tuple(ring)
    units = list(e) if isinstance(e, (list, tuple)) else [e] * len(rings)
    for unit in units:
        if as_rational(unit) != ONE:
            got = format_rational(as_rational(unit))
            raise InvalidUnitError(f"the product unit of a subring of the rationals is 1, got {got}")
    if len(rings) == 1:
        base = gamma(rings[0].as_group(), ONE)
    else:
        base = gamma([r.as_group() for r in rings], ONE)
    return PmvAlgebra(base, rings)


def factor_ring(factor: Rank1Algebra) -> RationalSubring:
    """The ring whose unit interval is ``factor``; raises when the factor is not product-closed."""
    group, unit = factor.group, factor.unit
    if unit != ONE:
        product = unit * unit
        raise NotProductClosedError(
            f"top {format_rational(unit)} is not a multiplicative unit: "
            f"({format_rational(unit)})·({format_rational(unit)})={format_rational(product)}",
            witness=(unit, unit),
        )
    if group.full:
        return RationalSubring.all()
    if group.scale != ONE:
        c = group.scale
        raise NotProductClosedError(
            f"({format_rational(c)})·({format_rational(c)})={format_rational(c * c)} ∉ {factor.describe()}",
            witness=(c, c),
        )
    return RationalSubring.localized(group.primes)


def pmv_from_algebra(algebra: MvAlgebra) -> PmvAlgebra:
    """Enrich ``algebra`` with the rational product, when the carrier is closed under it."""
    rings = tuple(factor_ring(factor) for factor in algebra.factors)
    return PmvAlgebra(algebra, rings)


def pmv_product(pmv: PmvAlgebra, x, y):
    pmv.base.check_member(x)
    pmv.base.check_member(y)
    return pmv.product(x, y)


def ring_zero_divisors(ring: RingLike) -> Optional[Tuple[tuple, tuple]]:
    """A pair of non-zero elements with zero product, or None for a subring of the rationals."""
    if isinstance(ring, RationalSubring):
        return None
    rings = tuple(ring)
    if len(rings) < 2:
        return None
    left = tuple(ONE if i == 0 else ZERO for i in range(len(rings)))
    right = tuple(ONE if i == 1 else ZERO for i in range(len(rings)))
    return left, right


def ring_is_integral_domain(ring: RingLike) -> bool:
    return ring_zero_divisors(ring) is None


def _structural_witness(pmv: PmvAlgebra):
    if pmv.is_totally_ordered:
        return None
    return ring_zero_divisors(pmv.rings)


def _quasi_identity_report(pmv: PmvAlgebra, law: str, arity: int, predicate, budget: Budget) -> DomainReport:
    report = DomainReport(instance=pmv.describe(), seed=budget.seed, quasi_identity=law)
    check = report.add(evaluate_law(law, pmv.elements(budget.order), arity, predicate, budget, pmv.is_finite))
    report.holds = check.passed
    if check.passed and pmv.is_totally_ordered:
        report.status = "certified"
        report.certificates.append(RATIONALS_CERTIFICATE)
    elif not check.passed:
        report.witness = tuple(check.counterexamples[0][name] for name in ("x", "y")[:arity])
    return report


@traced_check("is_mv_domain")
def is_mv_domain(pmv: PmvAlgebra, budget: Optional[Budget] = None) -> DomainReport:
    budget = budget or get_budget()
    zero = pmv.zero
    report = _quasi_identity_report(
        pmv, MV_DOMAIN, 2, lambda x, y: pmv.product(x, y) != zero or x == zero or y == zero, budget
    )
    witness = _structural_witness(pmv)
    if witness is not None:
        # the idempotents of the first two coordinates are the canonical zero divisors
        report.witness = witness
        report.holds = False
        report.checks[0].counterexamples = [{"x": witness[0], "y": witness[1]}]
        report.certificates.append("coordinate idempotents of a product multiply to 0")
    return report


@traced_check("is_pmv_plus")
def is_pmv_plus(pmv: PmvAlgebra, budget: Optional[Budget] = None) -> DomainReport:
    budget = budget or get_budget()
    zero = pmv.zero
    report = _quasi_identity_report(pmv, PMV_PLUS, 1, lambda x: pmv.product(x, x) != zero or x == zero, budget)
    if report.holds and not pmv.is_totally_ordered:
        report.certificates.append("componentwise rational product: x·x=0 forces every coordinate to 0")
    return report


@traced_check("check_pmv_axioms")
def check_pmv_axioms(pmv: PmvAlgebra, budget: Optional[Budget] = None) -> LawReport:
    """Commutativity, associativity, unit, monotonicity, internality and distributivity over ⊖."""
    budget = budget or get_budget()
    base = pmv.base
    elements = pmv.elements(budget.order)
    finite = pmv.is_finite
    mul, top = pmv.product, pmv.top
    report = LawReport(instance=pmv.describe(), seed=budget.seed)

    def law(name, arity, predicate):
        report.add(evaluate_law(name, elements, arity, predicate, budget, finite))

    law("x·y∈P, x·y≤x∧y", 2, lambda x, y: pmv.contains(mul(x, y)) and base.leq(mul(x, y), base.meet(x, y)))
    law("x·y=y·x", 2, lambda x, y: mul(x, y) == mul(y, x))
    law("x·(y·z)=(x·y)·z", 3, lambda x, y, z: mul(x, mul(y, z)) == mul(mul(x, y), z))
    law("x·1=x", 1, lambda x: mul(x, top) == x)
    law("x≤y ⇒ x·z≤y·z", 3, lambda x, y, z: not base.leq(x, y) or base.leq(mul(x, z), mul(y, z)))
    law(
        "x·(y⊖z)=x·y⊖x·z",
        3,
        lambda x, y, z: mul(x, base.truncated_minus(y, z)) == base.truncated_minus(mul(x, y), mul(x, z)),
    )
    return report
