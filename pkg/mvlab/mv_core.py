"""
MV-algebras as Gamma-images of rational lu-groups.

A rank-1 algebra is the interval [0, u] of a subgroup G of the rationals with
x + y := min(x + y, u) and x* := u - x; finite chains and the rational unit
interval are the canonical special cases. Products are componentwise, with
elements represented as tuples.
"""

from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .conf import Budget, get_budget
from .exceptions import InvalidHomError, InvalidUnitError, MembershipError, PreconditionError, UnsupportedCarrierError
from .laws import evaluate_law
from .otel_config import traced_check
from .rational_core import ONE, ZERO, RationalLike, RationalSubgroup, as_rational, format_rational
from .reports import LawCheck, LawReport

logger = logging.getLogger(__name__)

Element = Union[Fraction, Tuple[Fraction, ...]]

LAW_COMMUTATIVE = "x⊕y=y⊕x"
LAW_ASSOCIATIVE = "x⊕(y⊕z)=(x⊕y)⊕z"
LAW_ZERO = "x⊕0=x"
LAW_INVOLUTION = "x**=x"
LAW_LUKASIEWICZ = "(x*⊕y)*⊕y=(y*⊕x)*⊕x"
LAW_ABSORBING = "x⊕0*=0*"
LAW_CLOSURE = "closure"
LAW_LATTICE = "x∨y=max(x,y), x∧y=min(x,y)"

DERIVED_OPERATIONS = ("odot", "join", "meet", "truncated_minus")


class MvAlgebra(ABC):
    """Common interface of rank-1 and product carriers."""

    @property
    @abstractmethod
    def factors(self) -> Tuple["Rank1Algebra", ...]:
        ...

    @abstractmethod
    def describe(self) -> str:
        ...

    @property
    def units(self) -> Tuple[Fraction, ...]:
        return tuple(factor.unit for factor in self.factors)

    @property
    def groups(self) -> Tuple[RationalSubgroup, ...]:
        return tuple(factor.group for factor in self.factors)

    @property
    def is_finite(self) -> bool:
        return all(factor.group.is_cyclic for factor in self.factors)

    @property
    def is_totally_ordered(self) -> bool:
        return len(self.factors) == 1

    @property
    def size(self) -> Optional[int]:
        """Number of elements, or None for infinite carriers."""
        if not self.is_finite:
            return None
        total = 1
        for factor in self.factors:
            total *= int(factor.unit / factor.group.step) + 1
        return total

    def to_components(self, x: Element) -> Tuple[Fraction, ...]:
        return tuple(x)

    def from_components(self, values: Sequence[Fraction]) -> Element:
        return tuple(values)

    @property
    def zero(self) -> Element:
        return self.from_components([ZERO] * len(self.factors))

    @property
    def top(self) -> Element:
        return self.from_components(self.units)

    def contains(self, x) -> bool:
        try:
            values = self.to_components(x)
        except TypeError:
            return False
        if len(values) != len(self.factors):
            return False
        return all(factor.contains(value) for factor, value in zip(self.factors, values))

    def check_member(self, x):
        if not self.contains(x):
            raise MembershipError(x, self.describe())

    def oplus(self, x: Element, y: Element) -> Element:
        return self.from_components(
            [min(a + b, u) for a, b, u in zip(self.to_components(x), self.to_components(y), self.units)]
        )

    def neg(self, x: Element) -> Element:
        return self.from_components([u - a for a, u in zip(self.to_components(x), self.units)])

    def odot(self, x: Element, y: Element) -> Element:
        return self.neg(self.oplus(self.neg(x), self.neg(y)))

    def join(self, x: Element, y: Element) -> Element:
        return self.oplus(self.neg(self.oplus(self.neg(x), y)), y)

    def meet(self, x: Element, y: Element) -> Element:
        return self.neg(self.join(self.neg(x), self.neg(y)))

    def truncated_minus(self, x: Element, y: Element) -> Element:
        return self.odot(x, self.neg(y))

    def leq(self, x: Element, y: Element) -> bool:
        return self.oplus(self.neg(x), y) == self.top

    def add(self, x: Element, y: Element) -> Element:
        """Sum in the ambient group; it may leave the carrier."""
        return self.from_components([a + b for a, b in zip(self.to_components(x), self.to_components(y))])

    def sum_defined(self, x: Element, y: Element) -> bool:
        return all(a + b <= u for a, b, u in zip(self.to_components(x), self.to_components(y), self.units))

    def elements(self, order: int = 4) -> List[Element]:
        pools = [factor.group.interval_elements(factor.unit, order) for factor in self.factors]
        return [self.from_components(values) for values in itertools.product(*pools)]

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class Rank1Algebra(MvAlgebra):
    """Gamma(G, u): the interval [0, u] of a rank-1 subgroup G of the rationals."""

    group: RationalSubgroup
    unit: Fraction = ONE

    def __post_init__(self):
        unit = as_rational(self.unit)
        if unit <= 0 or not self.group.member(unit):
            raise InvalidUnitError(f"unit {format_rational(unit)} is not a positive element of {self.group}")
        object.__setattr__(self, "unit", unit)

    @property
    def factors(self):
        return (self,)

    @property
    def carrier_kind(self) -> str:
        if self.unit == ONE and self.group.full:
            return "interval_q"
        if self.unit == ONE and self.group.is_cyclic and self.group.step.numerator == 1:
            return "finite_chain"
        return "gamma_rank1"

    @property
    def chain_length(self) -> int:
        """The d of chain(d); only meaningful for finite chains."""
        return self.group.step.denominator

    def to_components(self, x):
        return (x,)

    def from_components(self, values):
        return values[0]

    def contains(self, x) -> bool:
        if isinstance(x, bool) or not isinstance(x, (Fraction, int)):
            return False
        return ZERO <= x <= self.unit and self.group.member(x)

    def oplus(self, x, y):
        return min(x + y, self.unit)

    def neg(self, x):
        return self.unit - x

    def leq(self, x, y) -> bool:
        return x <= y

    def add(self, x, y):
        return x + y

    def sum_defined(self, x, y) -> bool:
        return x + y <= self.unit

    def elements(self, order: int = 4):
        return self.group.interval_elements(self.unit, order)

    def describe(self) -> str:
        kind = self.carrier_kind
        if kind == "interval_q":
            return "interval_q"
        if kind == "finite_chain":
            return "boolean" if self.chain_length == 1 else f"chain({self.chain_length})"
        return f"gamma({self.group.describe()}, {format_rational(self.unit)})"


@dataclass(frozen=True)
class ProductAlgebra(MvAlgebra):
    """Finite direct product of rank-1 algebras; nested products are flattened."""

    components: Tuple[Rank1Algebra, ...] = field(default_factory=tuple)

    def __post_init__(self):
        flat = []
        for item in self.components:
            flat.extend(item.factors)
        if not flat:
            raise PreconditionError("a product needs at least one factor")
        object.__setattr__(self, "components", tuple(flat))

    @property
    def factors(self):
        return self.components

    def describe(self) -> str:
        return "prod(" + ", ".join(factor.describe() for factor in self.components) + ")"


def finite_chain(d: int) -> Rank1Algebra:
    if d < 1:
        raise PreconditionError(f"chain length must be positive, got {d}")
    return Rank1Algebra(RationalSubgroup.cyclic(Fraction(1, d)), ONE)


def boolean() -> Rank1Algebra:
    return finite_chain(1)


def interval_q() -> Rank1Algebra:
    return Rank1Algebra(RationalSubgroup.all(), ONE)


def product(*factors: MvAlgebra) -> ProductAlgebra:
    return ProductAlgebra(tuple(factors))


def gamma(group, unit) -> MvAlgebra:
    """Gamma(G, u); a sequence of groups gives the product, with ``unit`` broadcast or given per component."""
    if isinstance(group, RationalSubgroup):
        unit = as_rational(unit)
        if unit <= 0 or not group.member(unit):
            raise InvalidUnitError(f"unit {format_rational(unit)} is not a positive element of {group}")
        return Rank1Algebra(group, unit)
    groups = list(group)
    units = list(unit) if isinstance(unit, (list, tuple)) else [unit] * len(groups)
    if len(units) != len(groups):
        raise InvalidUnitError(f"expected {len(groups)} unit components, got {len(units)}")
    return ProductAlgebra(tuple(gamma(g, u) for g, u in zip(groups, units)))


def gamma_inverse(algebra: MvAlgebra):
    """The (G, u) descriptor an algebra was built from; tuples for products."""
    if isinstance(algebra, Rank1Algebra):
        return algebra.group, algebra.unit
    return algebra.groups, algebra.units


def interval_algebra(algebra: MvAlgebra, a: Element) -> MvAlgebra:
    """The interval subalgebra [0, a] of ``algebra`` with a* := a - x."""
    algebra.check_member(a)
    if isinstance(algebra, Rank1Algebra):
        return gamma(algebra.group, a)
    return gamma(algebra.groups, algebra.to_components(a))


def mv_oplus(algebra: MvAlgebra, x: Element, y: Element) -> Element:
    algebra.check_member(x)
    algebra.check_member(y)
    return algebra.oplus(x, y)


def mv_neg(algebra: MvAlgebra, x: Element) -> Element:
    algebra.check_member(x)
    return algebra.neg(x)


def mv_derived(algebra: MvAlgebra, op: str, x: Element, y: Element) -> Element:
    if op not in DERIVED_OPERATIONS:
        raise PreconditionError(f"unknown derived operation {op!r}; expected one of {', '.join(DERIVED_OPERATIONS)}")
    algebra.check_member(x)
    algebra.check_member(y)
    return getattr(algebra, op)(x, y)


def enumerate_elements(algebra: MvAlgebra, order: int = 4) -> List[Element]:
    return algebra.elements(order)


@traced_check("check_axioms")
def check_axioms(algebra: MvAlgebra, budget: Optional[Budget] = None) -> LawReport:
    """Evaluate the MV-algebra axioms on the carrier enumeration."""
    budget = budget or get_budget()
    elements = algebra.elements(budget.order)
    finite = algebra.is_finite
    report = LawReport(instance=algebra.describe(), seed=budget.seed)
    oplus, neg, zero, top = algebra.oplus, algebra.neg, algebra.zero, algebra.top

    def law(name, arity, predicate):
        report.add(evaluate_law(name, elements, arity, predicate, budget, finite))

    law(LAW_CLOSURE, 2, lambda x, y: algebra.contains(oplus(x, y)) and algebra.contains(neg(x)))
    law(LAW_COMMUTATIVE, 2, lambda x, y: oplus(x, y) == oplus(y, x))
    law(LAW_ASSOCIATIVE, 3, lambda x, y, z: oplus(x, oplus(y, z)) == oplus(oplus(x, y), z))
    law(LAW_ZERO, 1, lambda x: oplus(x, zero) == x)
    law(LAW_INVOLUTION, 1, lambda x: neg(neg(x)) == x)
    law(LAW_LUKASIEWICZ, 2, lambda x, y: oplus(neg(oplus(neg(x), y)), y) == oplus(neg(oplus(neg(y), x)), x))
    law(LAW_ABSORBING, 1, lambda x: oplus(x, neg(zero)) == neg(zero))
    if isinstance(algebra, Rank1Algebra):
        law(LAW_LATTICE, 2, lambda x, y: algebra.join(x, y) == max(x, y) and algebra.meet(x, y) == min(x, y))
    return report


@dataclass(frozen=True)
class Ideal:
    algebra: MvAlgebra
    elements: frozenset
    maximal: bool = False

    @property
    def proper(self) -> bool:
        return self.algebra.top not in self.elements

    def sorted_elements(self) -> list:
        return sorted(self.elements)

    def is_zero(self) -> bool:
        return self.elements == frozenset([self.algebra.zero])

    def to_dict(self):
        return {"elements": self.sorted_elements(), "maximal": self.maximal, "proper": self.proper}


def _require_finite(algebra: MvAlgebra, operation: str):
    if not algebra.is_finite:
        raise UnsupportedCarrierError(f"{operation} needs a finite carrier, got {algebra.describe()}")


def _generated_ideal(algebra: MvAlgebra, elements: List[Element], x: Element) -> frozenset:
    # n.x stabilizes at an idempotent s; the ideal generated by x is the downset of s
    s = x
    while True:
        nxt = algebra.oplus(s, x)
        if nxt == s:
            break
        s = nxt
    return frozenset(y for y in elements if algebra.leq(y, s))


def ideals_finite(algebra: MvAlgebra) -> List[Ideal]:
    """All ideals of a finite algebra, maximal ones flagged."""
    _require_finite(algebra, "ideals_finite")
    elements = algebra.elements()
    # every ideal of a finite MV-algebra is principal
    distinct = sorted({_generated_ideal(algebra, elements, x) for x in elements}, key=lambda s: (len(s), sorted(s)))
    proper = [s for s in distinct if algebra.top not in s]
    ideals = []
    for candidate in distinct:
        is_maximal = candidate in proper and not any(candidate < other for other in proper)
        ideals.append(Ideal(algebra, candidate, is_maximal))
    return ideals


def radical(algebra: MvAlgebra) -> Ideal:
    """Intersection of the maximal ideals of a finite algebra."""
    maximal = [ideal.elements for ideal in ideals_finite(algebra) if ideal.maximal]
    return Ideal(algebra, frozenset.intersection(*maximal))


def is_semisimple(algebra: MvAlgebra) -> bool:
    if algebra.is_finite:
        return radical(algebra).is_zero()
    return True


def semisimplicity_certificate(algebra: MvAlgebra) -> str:
    if algebra.is_finite:
        return "radical computed from the maximal ideals of the finite carrier"
    return f"{algebra.describe()} is a subalgebra of a finite power of [0,1]; its radical is {{0}} by construction"


@traced_check("radical")
def semisimplicity_report(algebra: MvAlgebra, budget: Optional[Budget] = None) -> LawReport:
    budget = budget or get_budget()
    report = LawReport(instance=algebra.describe(), seed=budget.seed)
    report.certificates.append(semisimplicity_certificate(algebra))
    check = report.add(LawCheck(law="Rad(A)={0}", exhaustive=algebra.is_finite))
    if algebra.is_finite:
        ideals = ideals_finite(algebra)
        rad = radical(algebra)
        check.cases = len(ideals)
        report.notes.append(f"ideals: {len(ideals)}, maximal: {sum(1 for ideal in ideals if ideal.maximal)}")
        report.notes.append("radical: {" + ", ".join(format_element(x) for x in rad.sorted_elements()) + "}")
        if not rad.is_zero():
            check.counterexamples.append({"radical": rad.sorted_elements()})
    return report


def format_element(x: Element) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(format_rational(v) for v in x) + ")"
    return format_rational(x)


@dataclass(frozen=True)
class MvHom:
    """
    A homomorphism given by scalars and a routing: component j of the image
    is scalars[j] * x[routing[j]].
    """

    source: MvAlgebra
    target: MvAlgebra
    scalars: Tuple[Fraction, ...]
    routing: Tuple[int, ...]

    def __post_init__(self):
        scalars = tuple(as_rational(s) for s in self.scalars)
        routing = tuple(int(i) for i in self.routing)
        object.__setattr__(self, "scalars", scalars)
        object.__setattr__(self, "routing", routing)
        n_source, n_target = len(self.source.factors), len(self.target.factors)
        if len(scalars) != n_target or len(routing) != n_target:
            raise InvalidHomError(f"expected {n_target} scalars and routes, got {len(scalars)} and {len(routing)}")
        for j, (scalar, i) in enumerate(zip(scalars, routing)):
            if not 0 <= i < n_source:
                raise InvalidHomError(f"route {i} out of range for {self.source.describe()}")
            if scalar <= 0:
                raise InvalidHomError(f"scalar {format_rational(scalar)} must be positive")
            if scalar * self.source.units[i] != self.target.units[j]:
                raise InvalidHomError(
                    f"component {j}: top {format_rational(self.source.units[i])} goes to "
                    f"{format_rational(scalar * self.source.units[i])}, not {format_rational(self.target.units[j])}"
                )
            if not self.target.groups[j].includes(self.source.groups[i].scaled(scalar)):
                raise InvalidHomError(
                    f"component {j}: {format_rational(scalar)}*{self.source.groups[i]} "
                    f"is not inside {self.target.groups[j]}"
                )

    def __call__(self, x: Element) -> Element:
        values = self.source.to_components(x)
        return self.target.from_components([s * values[i] for s, i in zip(self.scalars, self.routing)])

    def compose(self, inner: "MvHom") -> "MvHom":
        """self after inner."""
        if inner.target != self.source:
            raise InvalidHomError(f"cannot compose: {inner.target.describe()} is not {self.source.describe()}")
        scalars = tuple(s * inner.scalars[i] for s, i in zip(self.scalars, self.routing))
        routing = tuple(inner.routing[i] for i in self.routing)
        return MvHom(inner.source, self.target, scalars, routing)

    @classmethod
    def identity(cls, algebra: MvAlgebra) -> "MvHom":
        n = len(algebra.factors)
        return cls(algebra, algebra, (ONE,) * n, tuple(range(n)))

    @property
    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and all(s == ONE for s in self.scalars)
            and self.routing == tuple(range(len(self.routing)))
        )

    @property
    def is_injective(self) -> bool:
        # a scalar map is injective iff every source component is read by some target component
        return set(self.routing) == set(range(len(self.source.factors)))

    def validation_report(self, budget: Optional[Budget] = None) -> LawReport:
        budget = budget or get_budget()
        source, target = self.source, self.target
        elements = source.elements(budget.order)
        finite = source.is_finite
        report = LawReport(instance=self.describe(), seed=budget.seed)

        def law(name, arity, predicate):
            report.add(evaluate_law(name, elements, arity, predicate, budget, finite))

        law("h(0)=0", 1, lambda x: self(source.zero) == target.zero)
        law("h(x)∈B", 1, lambda x: target.contains(self(x)))
        law("h(x⊕y)=h(x)⊕h(y)", 2, lambda x, y: self(source.oplus(x, y)) == target.oplus(self(x), self(y)))
        law("h(x*)=h(x)*", 1, lambda x: self(source.neg(x)) == target.neg(self(x)))
        return report

    def validate(self, budget: Optional[Budget] = None) -> "MvHom":
        report = self.validation_report(budget)
        if not report.passed:
            raise InvalidHomError(f"{self.describe()} is not a homomorphism: {report.first_counterexample()}")
        return self

    def describe(self) -> str:
        parts = [f"{format_rational(s)}*x{i}" for s, i in zip(self.scalars, self.routing)]
        image = parts[0] if len(parts) == 1 and len(self.source.factors) == 1 else "(" + ", ".join(parts) + ")"
        return f"{self.source.describe()} -> {self.target.describe()}: x -> {image}"

    def to_dict(self):
        return {
            "source": self.source.describe(),
            "target": self.target.describe(),
            "scalars": list(self.scalars),
            "routing": list(self.routing),
        }


def make_hom(source: MvAlgebra, target: MvAlgebra, scalars: Iterable[RationalLike], routing=None, budget=None) -> MvHom:
    """Build and validate a scalar homomorphism."""
    scalars = tuple(as_rational(s) for s in scalars)
    if routing is None:
        routing = (0,) * len(scalars) if len(source.factors) == 1 else tuple(range(len(scalars)))
    return MvHom(source, target, scalars, tuple(routing)).validate(budget)


def _route_candidates(source: MvAlgebra, target: MvAlgebra, j: int) -> List[Tuple[int, Fraction]]:
    n_source = len(source.factors)
    order = ([j] if j < n_source else []) + [i for i in range(n_source) if i != j]
    candidates = []
    for i in order:
        scalar = target.units[j] / source.units[i]
        if target.groups[j].includes(source.groups[i].scaled(scalar)):
            candidates.append((i, scalar))
    return candidates


def hom_all(source: MvAlgebra, target: MvAlgebra) -> List[MvHom]:
    """
    Every homomorphism source -> target.

    A hom into a rank-1 algebra factors through one projection (the image of a
    Boolean element of a chain is 0 or 1), and a hom between rank-1 algebras is
    multiplication by the ratio of the units.
    """
    per_component = [_route_candidates(source, target, j) for j in range(len(target.factors))]
    homs = []
    for choice in itertools.product(*per_component):
        routing = tuple(i for i, _ in choice)
        scalars = tuple(s for _, s in choice)
        homs.append(MvHom(source, target, scalars, routing))
    return homs


def hom_find(source: MvAlgebra, target: MvAlgebra, budget: Optional[Budget] = None) -> Optional[MvHom]:
    for hom in hom_all(source, target):
        if hom.validation_report(budget).passed:
            return hom
    return None


@dataclass(frozen=True)
class IsomorphismCertificate:
    isomorphic: bool
    reason: str
    forward: Optional[MvHom] = None
    backward: Optional[MvHom] = None

    def to_dict(self):
        return {
            "isomorphic": self.isomorphic,
            "reason": self.reason,
            "forward": self.forward.to_dict() if self.forward else None,
            "backward": self.backward.to_dict() if self.backward else None,
        }


def _cardinality(algebra: MvAlgebra) -> str:
    return "infinite" if algebra.size is None else str(algebra.size)


def is_isomorphic(a: MvAlgebra, b: MvAlgebra) -> IsomorphismCertificate:
    if a == b:
        return IsomorphismCertificate(True, "equal descriptors", MvHom.identity(a), MvHom.identity(b))
    if a.size != b.size:
        return IsomorphismCertificate(False, f"cardinality: {_cardinality(a)} vs {_cardinality(b)}")
    for forward in hom_all(a, b):
        for backward in hom_all(b, a):
            if backward.compose(forward).is_identity and forward.compose(backward).is_identity:
                return IsomorphismCertificate(True, "mutually inverse scalar homomorphisms", forward, backward)
    return IsomorphismCertificate(False, "no pair of mutually inverse homomorphisms")
