"""
The functors between MV-modules over a totally ordered MV-domain and lattice-ordered
linear spaces over its quotient field, and the executable consequences of their
adjunction: universal arrows, functoriality, naturality of the unit, and the
failure of the unit to be an isomorphism.

Linear spaces are finite powers of the rationals with a strong unit, so a linear
map is a scalar per output component together with a routing, exactly like MvHom.
"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .conf import Budget, get_budget
from .dsl import parse_module
from .exceptions import (
    CompositionError,
    HypothesisNotMetError,
    InvalidHomError,
    MvlabError,
    PreconditionError,
    RestrictionError,
    UniversalPropertyError,
)
from .laws import evaluate_law
from .mv_core import MvHom, gamma, hom_all, is_isomorphic
from .mvmod import ModuleHom, MvModule, boolean_scalars, module_hom_all, module_make, restrict_scalars
from .otel_config import traced_check
from .pmv import PmvAlgebra, gamma_ring
from .rational_core import ONE, RationalField, RationalSubgroup, RationalSubring, fraction_field, format_rational
from .reports import ConstructionReport, LawCheck, LawReport
from .tensor import extend_hom, tensor_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearSpace:
    """(K^n, u): a finite power of the rationals with strong unit ``units``."""

    field: RationalField
    units: Tuple = (ONE,)

    @property
    def dimension(self) -> int:
        return len(self.units)

    def gamma_carrier(self):
        full = RationalSubgroup.all()
        if self.dimension == 1:
            return gamma(full, self.units[0])
        return gamma([full] * self.dimension, self.units)

    def describe(self) -> str:
        if self.dimension == 1:
            return f"(rationals, {format_rational(self.units[0])})"
        units = ", ".join(format_rational(u) for u in self.units)
        return f"(rationals^{self.dimension}, ({units}))"

    def to_dict(self):
        return {"field": self.field.describe(), "dimension": self.dimension, "unit": list(self.units)}


def linear_space(*units) -> LinearSpace:
    return LinearSpace(RationalField(), tuple(ONE * u for u in units) or (ONE,))


@dataclass(frozen=True)
class LinearMap:
    """Component j of the image is scalars[j] * x[routing[j]]."""

    source: LinearSpace
    target: LinearSpace
    scalars: Tuple
    routing: Tuple

    def __call__(self, x):
        values = (x,) if self.source.dimension == 1 else tuple(x)
        image = [s * values[i] for s, i in zip(self.scalars, self.routing)]
        return image[0] if self.target.dimension == 1 else tuple(image)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        if inner.target != self.source:
            raise CompositionError(f"cannot compose: {inner.target.describe()} is not {self.source.describe()}")
        scalars = tuple(s * inner.scalars[i] for s, i in zip(self.scalars, self.routing))
        routing = tuple(inner.routing[i] for i in self.routing)
        return LinearMap(inner.source, self.target, scalars, routing)

    @classmethod
    def identity(cls, space: LinearSpace) -> "LinearMap":
        return cls(space, space, (ONE,) * space.dimension, tuple(range(space.dimension)))

    def describe(self) -> str:
        parts = [f"{format_rational(s)}*x{i}" for s, i in zip(self.scalars, self.routing)]
        image = parts[0] if len(parts) == 1 and self.source.dimension == 1 else "(" + ", ".join(parts) + ")"
        return f"{self.source.describe()} -> {self.target.describe()}: x -> {image}"

    def to_dict(self):
        return {
            "source": self.source.describe(),
            "target": self.target.describe(),
            "scalars": list(self.scalars),
            "routing": list(self.routing),
        }


def field_scalars() -> PmvAlgebra:
    """Gamma_(.)(K, e) for K the rationals: the rational unit interval with its product."""
    return gamma_ring(RationalSubring.all())


def functor_gamma_V(space: LinearSpace) -> MvModule:
    return MvModule(field_scalars(), space.gamma_carrier())


def gamma_V_over(space: LinearSpace, scalars: PmvAlgebra) -> MvModule:
    """Gamma(V, u) with its scalars restricted to ``scalars``, the codomain of the unit."""
    return restrict_scalars(functor_gamma_V(space), scalars)


def restrict_linear_map(h: LinearMap, source: LinearSpace, target: LinearSpace) -> ModuleHom:
    if h.source != source or h.target != target:
        raise RestrictionError(f"{h.describe()} does not run from {source.describe()} to {target.describe()}")
    for j, (s, i) in enumerate(zip(h.scalars, h.routing)):
        image = s * source.units[i]
        if image > target.units[j]:
            raise RestrictionError(
                f"{format_rational(source.units[i])} -> {format_rational(image)} "
                f"∉ [0, {format_rational(target.units[j])}]"
            )
    try:
        hom = MvHom(source.gamma_carrier(), target.gamma_carrier(), h.scalars, h.routing)
    except InvalidHomError as exc:
        raise RestrictionError(f"{h.describe()} does not restrict to the unit intervals: {exc}") from exc
    return ModuleHom(functor_gamma_V(source), functor_gamma_V(target), hom)


def functor_L_obj(module: MvModule) -> LinearSpace:
    """(K ⊗ G, e ⊗ u): for rank-1 groups the rationals with unit u, componentwise for products."""
    pmv = module.scalars
    if not pmv.is_totally_ordered:
        raise HypothesisNotMetError(f"{pmv.describe()} is not totally ordered")
    quotient = fraction_field(pmv.rings[0])
    groups = tensor_group(quotient.as_group(), module.carrier.groups)
    if not all(group.full for group in groups):
        raise PreconditionError(f"K ⊗ G is not divisible for {module.describe()}")
    return LinearSpace(quotient, tuple(quotient.unit * u for u in module.carrier.units))


@functools.lru_cache(maxsize=256)
def unit_map(module: MvModule) -> ModuleHom:
    """ι_M: M -> Gamma(L(M)), the inclusion of [0, u]_G into [0, u]_Q."""
    space = functor_L_obj(module)
    target = gamma_V_over(space, module.scalars)
    n = len(module.carrier.factors)
    return ModuleHom(module, target, MvHom(module.carrier, target.carrier, (ONE,) * n, tuple(range(n))))


def _sharp_of(module: MvModule, space: LinearSpace, f: ModuleHom) -> LinearMap:
    # ι_M has scalar 1, so the triangle forces f♯ to carry f's scalars and routing
    return LinearMap(functor_L_obj(module), space, f.scalars, f.routing)


def universal_arrow_report(module: MvModule, space: LinearSpace, f: ModuleHom, budget: Optional[Budget] = None):
    """Return (f♯, report): triangle, uniqueness and the factorization through the tensor extension."""
    budget = budget or get_budget()
    report = LawReport(instance=f"{f.describe()}", seed=budget.seed)
    iota = unit_map(module)
    sharp = _sharp_of(module, space, f)
    try:
        restricted = restrict_linear_map(sharp, sharp.source, space)
    except RestrictionError as exc:
        report.add(LawCheck("f♯ exists", cases=1, exhaustive=True, counterexamples=[{"error": str(exc)}]))
        return None, report

    elements = module.carrier.elements(budget.order)
    report.add(
        evaluate_law(
            "Γ(f♯)∘ι_M=f",
            elements,
            1,
            lambda x: restricted(iota(x)) == f(x),
            budget,
            module.carrier.is_finite,
        )
    )

    candidates = hom_all(iota.target.carrier, restricted.target.carrier)
    matching = [h for h in candidates if all(h(iota(x)) == f(x) for x in elements)]
    uniqueness = report.add(LawCheck("f♯ is unique", cases=len(candidates), exhaustive=True))
    if matching != [restricted.hom]:
        uniqueness.counterexamples.append({"matching": [h.describe() for h in matching]})
    else:
        forced = ", ".join(format_rational(s) for s in sharp.scalars)
        uniqueness.certificates.append(f"the unit forces the scalars ({forced})")

    factorization = report.add(LawCheck("f♯|[0,u]=f*", cases=1, exhaustive=True))
    try:
        target = functor_gamma_V(space)
        f_star = extend_hom(field_scalars(), module.carrier, target, f.hom, budget)
        if f_star.hom != restricted.hom:
            factorization.counterexamples.append({"f*": f_star.describe(), "f♯": restricted.describe()})
        else:
            factorization.certificates.append(f"f* = {f_star.describe()}")
    except MvlabError as exc:
        factorization.counterexamples.append({"error": str(exc)})

    report.certificates.append(f"f♯ = {sharp.describe()}")
    return sharp, report


def universal_arrow(module: MvModule, space: LinearSpace, f: ModuleHom, budget: Optional[Budget] = None) -> LinearMap:
    sharp, report = universal_arrow_report(module, space, f, budget)
    if not report.passed:
        raise UniversalPropertyError(f"no unique f♯ for {f.describe()}: {report.first_counterexample()}")
    return sharp


@functools.lru_cache(maxsize=256)
def _lift_hom(h: ModuleHom, budget: Budget) -> LinearMap:
    iota_n = unit_map(h.target)
    return universal_arrow(h.source, functor_L_obj(h.target), iota_n.compose(h), budget)


def functor_L_mor(h: ModuleHom, budget: Optional[Budget] = None) -> LinearMap:
    """h♯: the universal arrow of ι_N∘h."""
    return _lift_hom(h, budget or get_budget())


@traced_check("check_functoriality")
def check_functoriality(g: ModuleHom, h: ModuleHom, budget: Optional[Budget] = None) -> LawReport:
    budget = budget or get_budget()
    if h.target != g.source:
        raise CompositionError(f"{h.describe()} and {g.describe()} are not composable")
    report = LawReport(instance=f"({g.describe()}) ∘ ({h.describe()})", seed=budget.seed)
    composite = functor_L_mor(g.compose(h), budget)
    composed = functor_L_mor(g, budget).compose(functor_L_mor(h, budget))
    check = report.add(LawCheck("(g∘h)♯=g♯∘h♯", cases=1, exhaustive=True))
    if composite != composed:
        check.counterexamples.append({"(g∘h)♯": composite.describe(), "g♯∘h♯": composed.describe()})
    return report


def check_identity_lift(module: MvModule, budget: Optional[Budget] = None) -> LawCheck:
    lifted = functor_L_mor(ModuleHom.identity(module), budget)
    check = LawCheck(f"id♯=id on {functor_L_obj(module).describe()}", cases=1, exhaustive=True)
    if lifted != LinearMap.identity(functor_L_obj(module)):
        check.counterexamples.append({"id♯": lifted.describe()})
    return check


@traced_check("check_naturality")
def check_naturality(h: ModuleHom, budget: Optional[Budget] = None) -> LawReport:
    """Gamma(L(h))∘ι_M = ι_N∘h on the enumeration of M."""
    budget = budget or get_budget()
    report = LawReport(instance=h.describe(), seed=budget.seed)
    sharp = functor_L_mor(h, budget)
    lifted = restrict_linear_map(sharp, sharp.source, sharp.target)
    iota_m, iota_n = unit_map(h.source), unit_map(h.target)
    report.add(
        evaluate_law(
            "Γ(h♯)∘ι_M=ι_N∘h",
            h.source.carrier.elements(budget.order),
            1,
            lambda x: lifted(iota_m(x)) == iota_n(h(x)),
            budget,
            h.source.carrier.is_finite,
        )
    )
    report.certificates.append(f"h♯ = {sharp.describe()}")
    return report


@dataclass(frozen=True)
class AdjunctionInstance:
    """A module, a linear space, and the map f: M -> Gamma(V) to factor, given by scalars and routing."""

    module: MvModule
    space: LinearSpace
    scalars: Tuple
    routing: Tuple
    name: str = ""

    def label(self) -> str:
        return self.name or f"{self.module.describe()} -> {self.space.describe()}"

    def build(self, budget: Optional[Budget] = None) -> ModuleHom:
        target = gamma_V_over(self.space, self.module.scalars)
        hom = MvHom(self.module.carrier, target.carrier, self.scalars, self.routing)
        return ModuleHom(self.module, target, hom).validate(budget)


@traced_check("check_adjunction")
def check_adjunction(instances: Sequence[AdjunctionInstance], budget: Optional[Budget] = None) -> LawReport:
    budget = budget or get_budget()
    report = LawReport(instance=f"{len(instances)} adjunction instances", seed=budget.seed)
    if not instances:
        report.notes.append("vacuous: no instances, zero cases")
        return report
    for instance in instances:
        try:
            f = instance.build(budget)
        except MvlabError as exc:
            label = instance.label()
            logger.warning(f"Invalid adjunction instance {label}: {exc}", extra={"instance": label})
            report.invalid.append({"instance": label, "error": str(exc)})
            continue
        _, arrow = universal_arrow_report(instance.module, instance.space, f, budget)
        report.extend(arrow, prefix=instance.label())
    return report


@dataclass
class AdjunctionFamily:
    modules: List[MvModule]
    homs: List[ModuleHom] = field(default_factory=list)
    instances: List[AdjunctionInstance] = field(default_factory=list)

    def composable_pairs(self) -> List[Tuple[ModuleHom, ModuleHom]]:
        """(g, h) with g∘h defined."""
        return [(g, h) for h in self.homs for g in self.homs if h.target == g.source]


def build_family(modules: Sequence[MvModule], extra: Sequence[AdjunctionInstance] = ()) -> AdjunctionFamily:
    """Every module hom among ``modules``, and an instance for each ι_M and each ι_N∘h."""
    modules = list(dict.fromkeys(modules))
    homs = [h for m in modules for n in modules for h in module_hom_all(m, n)]
    instances = []
    for module in modules:
        iota = unit_map(module)
        instances.append(AdjunctionInstance(module, functor_L_obj(module), iota.scalars, iota.routing, f"ι[{module}]"))
    for h in homs:
        composite = unit_map(h.target).compose(h)
        space = functor_L_obj(h.target)
        instances.append(
            AdjunctionInstance(h.source, space, composite.scalars, composite.routing, f"ι∘[{h.describe()}]")
        )
    instances.extend(extra)
    return AdjunctionFamily(modules, homs, instances)


def default_family() -> AdjunctionFamily:
    boolean = boolean_scalars()
    modules = [module_make(boolean, RationalSubgroup.cyclic(Fraction(1, d)), 1) for d in (2, 4, 6, 12)]
    modules.append(MvModule(boolean, gamma([RationalSubgroup.cyclic(Fraction(1, 2))] * 2, 1)))
    dyadic = gamma_ring(RationalSubring.localized([2]))
    dyadic_module = module_make(dyadic, RationalSubgroup.localized([2]), 1)
    modules.append(dyadic_module)
    doubling = AdjunctionInstance(dyadic_module, linear_space(2), (Fraction(2),), (0,), f"doubling[{dyadic_module}]")
    return build_family(modules, [doubling])


def load_family(path) -> AdjunctionFamily:
    """One module expression per line; text after ``#`` is ignored."""
    modules = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            modules.append(parse_module(line))
    return build_family(modules)


@traced_check("adjoint_check")
def check_family(family: AdjunctionFamily, budget: Optional[Budget] = None) -> LawReport:
    """Triangle and uniqueness on every instance, functoriality on every composable pair, naturality on every hom."""
    budget = budget or get_budget()
    report = LawReport(instance=f"family of {len(family.modules)} modules, {len(family.homs)} homs", seed=budget.seed)
    report.extend(check_adjunction(family.instances, budget), prefix="adjunction")
    for module in family.modules:
        report.add(check_identity_lift(module, budget))
    for g, h in family.composable_pairs():
        report.extend(check_functoriality(g, h, budget), prefix="functoriality")
    for h in family.homs:
        report.extend(check_naturality(h, budget), prefix="naturality")
    report.notes.append(f"{len(family.instances)} instances, {len(family.composable_pairs())} composable pairs")
    return report


def _smallest_missing(module: MvModule, algebra, budget: Budget):
    """The element of ``algebra`` of least denominator that is not in the carrier of ``module``."""
    if len(algebra.factors) != 1:
        return None
    candidates = sorted(algebra.elements(budget.order), key=lambda q: (q.denominator, q))
    for q in candidates:
        if not module.carrier.contains(q):
            return q
    return None


@traced_check("witness_nonequivalence")
def non_equivalence_witness(module: Optional[MvModule] = None, budget: Optional[Budget] = None) -> ConstructionReport:
    """
    Build Gamma(L(M)) and decide whether it is isomorphic to M.

    The default M is the 3-element chain over the Boolean scalars obtained from
    (Z, 1); there Gamma(L(M)) is the rational unit interval, so the unit of the
    adjunction is not an isomorphism.
    """
    budget = budget or get_budget()
    if module is None:
        module = module_make(boolean_scalars(), RationalSubgroup.cyclic(Fraction(1, 2)), 1)
    expected = "isomorphic" if all(group.full for group in module.carrier.groups) else "not_isomorphic"
    report = ConstructionReport(instance=module.describe(), verdict="", expected=expected, seed=budget.seed)

    pmv = module.scalars
    report.step("scalars", pmv=pmv.describe(), ring=pmv.rings[0].describe(), unit=ONE)
    quotient = fraction_field(pmv.rings[0])
    report.step("quotient_field", K=quotient.describe(), source=quotient.source.describe())
    space = functor_L_obj(module)
    report.step("lift", space=space.describe())
    lifted = functor_gamma_V(space).carrier
    report.step("gamma_of_lift", algebra=lifted.describe(), size="infinite" if lifted.size is None else lifted.size)
    certificate = is_isomorphic(module.carrier, lifted)
    report.step("isomorphism", **certificate.to_dict())
    witness = _smallest_missing(module, lifted, budget)
    if witness is not None:
        report.step("witness", element=witness, in_module=False, reason="no element of M maps onto it under ι_M")
    report.verdict = "isomorphic" if certificate.isomorphic else "not_isomorphic"
    report.certificates.append(certificate.reason)
    return report
