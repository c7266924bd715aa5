"""
Semisimple tensor products of Gamma-images.

For rank-1 carriers the tensor of [0, u]_G and [0, v]_H is [0, uv] inside the
subgroup generated by the pairwise products of G and H, and the canonical
bimorphism is rational multiplication. Products distribute over every pair of
factors.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .conf import Budget, get_budget
from .exceptions import (
    HypothesisNotMetError,
    InvalidHomError,
    PreconditionError,
    UniversalPropertyError,
    UnsupportedCarrierError,
)
from .laws import evaluate_law, evaluate_mixed
from .mv_core import MvAlgebra, MvHom, Rank1Algebra, gamma, hom_all, interval_algebra
from .mvmod import ModuleHom, MvModule, module_over
from .otel_config import traced_check
from .pmv import PmvAlgebra
from .rational_core import RationalSubgroup, format_rational
from .reports import LawCheck, LawReport

logger = logging.getLogger(__name__)

GroupLike = Union[RationalSubgroup, Sequence[RationalSubgroup]]


def tensor_group(left: GroupLike, right: GroupLike):
    """Subgroup of the rationals generated by the products xy, x in ``left`` and y in ``right``."""
    if isinstance(left, RationalSubgroup) and isinstance(right, RationalSubgroup):
        if left.full or right.full:
            return RationalSubgroup.all()
        return RationalSubgroup(scale=left.scale * right.scale, primes=left.primes | right.primes)
    lefts = (left,) if isinstance(left, RationalSubgroup) else tuple(left)
    rights = (right,) if isinstance(right, RationalSubgroup) else tuple(right)
    return tuple(tensor_group(g, h) for g in lefts for h in rights)


@dataclass(frozen=True)
class TensorResult:
    left: MvAlgebra
    right: MvAlgebra
    result: MvAlgebra

    @property
    def factor_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(len(self.left.factors)) for j in range(len(self.right.factors))]

    def beta(self, a, b):
        """The canonical bimorphism: (a, b) -> a·b, one component per pair of factors."""
        xs, ys = self.left.to_components(a), self.right.to_components(b)
        return self.result.from_components([xs[i] * ys[j] for i, j in self.factor_pairs])

    def iota(self, side: str) -> MvHom:
        if side == "right":
            scalars = tuple(self.left.units[i] for i, _ in self.factor_pairs)
            routing = tuple(j for _, j in self.factor_pairs)
            return MvHom(self.right, self.result, scalars, routing)
        if side == "left":
            scalars = tuple(self.right.units[j] for _, j in self.factor_pairs)
            routing = tuple(i for i, _ in self.factor_pairs)
            return MvHom(self.left, self.result, scalars, routing)
        raise PreconditionError(f"side must be 'left' or 'right', got {side!r}")

    def describe(self) -> str:
        return f"{self.left.describe()} ⊗ {self.right.describe()}"

    def to_dict(self):
        return {"left": self.left.describe(), "right": self.right.describe(), "result": self.result.describe()}


def tensor_ss(left: MvAlgebra, right: MvAlgebra) -> TensorResult:
    groups = tensor_group(left.groups, right.groups)
    units = tuple(left.units[i] * right.units[j] for i in range(len(left.factors)) for j in range(len(right.factors)))
    if len(groups) == 1:
        result = gamma(groups[0], units[0])
    else:
        result = gamma(groups, units)
    logger.debug(f"{left.describe()} ⊗ {right.describe()} = {result.describe()}")
    return TensorResult(left, right, result)


@traced_check("check_bimorphism")
def check_bimorphism(
    tensor: TensorResult,
    budget: Optional[Budget] = None,
    beta: Optional[Callable] = None,
    target: Optional[MvAlgebra] = None,
    unital: bool = True,
) -> LawReport:
    """Additivity where the partial sums are defined, and ∨/∧ preservation, in each slot."""
    budget = budget or get_budget()
    beta = beta or tensor.beta
    A, B = tensor.left, tensor.right
    C = target or tensor.result
    left, right = A.elements(budget.order), B.elements(budget.order)
    finite = A.is_finite and B.is_finite
    report = LawReport(instance=tensor.describe(), seed=budget.seed)

    def law(name, pools, predicate, names):
        report.add(evaluate_mixed(name, pools, predicate, budget, finite, names))

    law(
        "β(a+a',b)=β(a,b)+β(a',b)",
        [left, left, right],
        lambda a, a2, b: not A.sum_defined(a, a2) or beta(A.add(a, a2), b) == C.add(beta(a, b), beta(a2, b)),
        ("a", "a'", "b"),
    )
    law(
        "β(a,b+b')=β(a,b)+β(a,b')",
        [left, right, right],
        lambda a, b, b2: not B.sum_defined(b, b2) or beta(a, B.add(b, b2)) == C.add(beta(a, b), beta(a, b2)),
        ("a", "b", "b'"),
    )
    law(
        "β(a∨a',b)=β(a,b)∨β(a',b)",
        [left, left, right],
        lambda a, a2, b: beta(A.join(a, a2), b) == C.join(beta(a, b), beta(a2, b)),
        ("a", "a'", "b"),
    )
    law(
        "β(a∧a',b)=β(a,b)∧β(a',b)",
        [left, left, right],
        lambda a, a2, b: beta(A.meet(a, a2), b) == C.meet(beta(a, b), beta(a2, b)),
        ("a", "a'", "b"),
    )
    law(
        "β(a,b∨b')=β(a,b)∨β(a,b')",
        [left, right, right],
        lambda a, b, b2: beta(a, B.join(b, b2)) == C.join(beta(a, b), beta(a, b2)),
        ("a", "b", "b'"),
    )
    law(
        "β(a,b∧b')=β(a,b)∧β(a,b')",
        [left, right, right],
        lambda a, b, b2: beta(a, B.meet(b, b2)) == C.meet(beta(a, b), beta(a, b2)),
        ("a", "b", "b'"),
    )
    law("β(a,b)∈C", [left, right], lambda a, b: C.contains(beta(a, b)), ("a", "b"))
    law("β(0,b)=0", [right], lambda b: beta(A.zero, b) == C.zero, ("b",))
    if unital:
        law("β(1,1)=1", [[A.top]], lambda a: beta(a, B.top) == C.top, ("a",))
    return report


def tensor_module_structure(scalars: PmvAlgebra, algebra: MvAlgebra) -> MvModule:
    """The tensor of the scalars' carrier with ``algebra``, as a module over the scalars."""
    if len(scalars.factors) > 1 and len(algebra.factors) > 1:
        raise PreconditionError("a product of scalar algebras needs a rank-1 right factor")
    result = tensor_ss(scalars.base, algebra).result
    # tensor groups are closed under the scalar ring; MvModule re-checks it
    return module_over(scalars, result)


def iota_embedding(tensor: TensorResult, side: str = "right", budget: Optional[Budget] = None) -> MvHom:
    hom = tensor.iota(side).validate(budget)
    if not hom.is_injective:
        raise InvalidHomError(f"{hom.describe()} is not injective")
    return hom


def _forced_extension(tensor: TensorResult, module: MvModule, f: MvHom) -> MvHom:
    # the scalar carrier is rank-1 with unit u, so iota_B(b) = u·b and f̃ must divide f's scalars by u
    u = tensor.left.units[0]
    scalars = tuple(s / u for s in f.scalars)
    try:
        return MvHom(tensor.result, module.carrier, scalars, f.routing)
    except InvalidHomError as exc:
        raise UniversalPropertyError(f"no scalar extends {f.describe()}: {exc}") from exc


def _triangle_holds(hom: MvHom, iota: MvHom, f: MvHom, elements) -> bool:
    return all(hom(iota(b)) == f(b) for b in elements)


def extend_hom(scalars: PmvAlgebra, algebra: MvAlgebra, module: MvModule, f: MvHom, budget=None) -> ModuleHom:
    """The unique module hom f̃ out of the tensor with f̃∘ι_B = f."""
    budget = budget or get_budget()
    if not scalars.is_totally_ordered:
        raise HypothesisNotMetError(f"{scalars.describe()} is not totally ordered")
    if module.scalars != scalars:
        raise PreconditionError(f"{module.describe()} is not a module over {scalars.describe()}")
    if f.source != algebra or f.target != module.carrier:
        raise PreconditionError(f"{f.describe()} does not run from {algebra.describe()} to {module.carrier.describe()}")
    tensor = tensor_ss(scalars.base, algebra)
    iota = iota_embedding(tensor, "right", budget)
    extension = _forced_extension(tensor, module, f)
    elements = algebra.elements(budget.order)
    if not _triangle_holds(extension, iota, f, elements):
        raise UniversalPropertyError(f"{extension.describe()} does not restrict to {f.describe()}")
    candidates = [h for h in hom_all(tensor.result, module.carrier) if _triangle_holds(h, iota, f, elements)]
    if candidates != [extension]:
        raise UniversalPropertyError(f"{len(candidates)} homomorphisms extend {f.describe()}, expected exactly one")
    return ModuleHom(tensor_module_structure(scalars, algebra), module, extension).validate(budget)


@traced_check("extend_hom")
def verify_extension(scalars: PmvAlgebra, algebra: MvAlgebra, module: MvModule, f: MvHom, budget=None) -> LawReport:
    budget = budget or get_budget()
    tensor = tensor_ss(scalars.base, algebra)
    report = LawReport(instance=f"{tensor.describe()} -> {module.describe()}", seed=budget.seed)
    try:
        extension = extend_hom(scalars, algebra, module, f, budget)
    except (UniversalPropertyError, InvalidHomError) as exc:
        logger.warning(f"Extension of {f.describe()} failed: {exc}")
        failure = LawCheck("f̃ exists and is unique", cases=1, exhaustive=True, counterexamples=[{"error": str(exc)}])
        report.add(failure)
        return report
    iota = tensor.iota("right")
    candidates = hom_all(tensor.result, module.carrier)
    uniqueness = report.add(LawCheck("f̃ exists and is unique", cases=len(candidates), exhaustive=True))
    uniqueness.certificates.append(f"the unit constraint forces the scalars {_scalars(extension.hom)}")
    report.add(
        evaluate_law(
            "f̃∘ι_B=f",
            algebra.elements(budget.order),
            1,
            lambda b: extension(iota(b)) == f(b),
            budget,
            algebra.is_finite,
            ("b",),
        )
    )
    report.extend(extension.validation_report(budget), prefix="f̃")
    report.certificates.append(f"f̃ = {extension.describe()}")
    return report


def _scalars(hom: MvHom) -> str:
    return "(" + ", ".join(format_rational(s) for s in hom.scalars) + ")"


def factor_bimorphism(tensor: TensorResult, target: MvAlgebra, beta: Callable, budget=None):
    """
    Factor a bimorphism ``beta`` into ``target`` through the tensor.

    Returns (omega, report) where omega maps the tensor into the interval
    [0, beta(1, 1)] of ``target`` and omega(a·b) = beta(a, b). omega is None when
    no homomorphism factors ``beta``.
    """
    budget = budget or get_budget()
    if not isinstance(tensor.result, Rank1Algebra) or not isinstance(target, Rank1Algebra):
        raise UnsupportedCarrierError("bimorphisms are factored into rank-1 targets only")
    A, B = tensor.left, tensor.right
    report = check_bimorphism(tensor, budget, beta=beta, target=target, unital=False)
    report.instance = f"{tensor.describe()} -> {target.describe()}"
    top = beta(A.top, B.top)
    if top == target.zero:
        report.notes.append("β(1,1)=0, so β is the zero bimorphism")
        return None, report
    interval = interval_algebra(target, top)
    kappa = top / tensor.result.unit
    try:
        omega = MvHom(tensor.result, interval, (kappa,), (0,))
    except InvalidHomError as exc:
        report.add(LawCheck("ω exists", cases=1, exhaustive=True, counterexamples=[{"error": str(exc)}]))
        return None, report
    pools = [A.elements(budget.order), B.elements(budget.order)]
    finite = A.is_finite and B.is_finite
    report.add(
        evaluate_mixed(
            "ω(a·b)=β(a,b)",
            pools,
            lambda a, b: omega(tensor.beta(a, b)) == beta(a, b),
            budget,
            finite,
            ("a", "b"),
        )
    )
    pairs = list(itertools.product(*pools))
    matching = [
        h for h in hom_all(tensor.result, interval) if all(h(tensor.beta(a, b)) == beta(a, b) for a, b in pairs)
    ]
    report.add(
        LawCheck(
            "ω is unique",
            cases=len(hom_all(tensor.result, interval)),
            exhaustive=True,
            counterexamples=[] if matching == [omega] else [{"matching": len(matching)}],
        )
    )
    report.certificates.append(f"ω = {omega.describe()}")
    return omega, report
