"""
Evaluation of equational laws and quasi-identities over carrier enumerations.

A law of arity k is checked on every k-tuple when the carrier is finite and
small enough for the budget, otherwise on a seeded sample of tuples.
"""

import itertools
import logging
import random
from typing import Callable, Iterable, Sequence, Tuple

from .conf import Budget
from .exceptions import MvlabError
from .reports import LawCheck

logger = logging.getLogger(__name__)

DEFAULT_NAMES = ("x", "y", "z", "w")


def select_tuples(
    law: str, elements: Sequence, arity: int, finite: bool, budget: Budget
) -> Tuple[Iterable[tuple], bool]:
    """Return (tuples, exhaustive) for the given law; exhaustive tuples come as an iterator."""
    count = len(elements) ** arity
    if finite and len(elements) <= budget.exhaustive_limit:
        return itertools.product(elements, repeat=arity), True
    if count <= budget.samples:
        return list(itertools.product(elements, repeat=arity)), False
    rng = random.Random(f"{budget.seed}:{law}")
    tuples = [tuple(rng.choice(elements) for _ in range(arity)) for _ in range(budget.samples)]
    return tuples, False


def evaluate_law(
    law: str,
    elements: Sequence,
    arity: int,
    predicate: Callable[..., bool],
    budget: Budget,
    finite: bool,
    names: Sequence[str] = DEFAULT_NAMES,
) -> LawCheck:
    """Evaluate ``predicate`` on the selected tuples, stopping at the first counterexample."""
    tuples, exhaustive = select_tuples(law, elements, arity, finite, budget)
    check = evaluate_pairs(law, tuples, predicate, names)
    check.exhaustive = exhaustive
    return check


def evaluate_pairs(law: str, pairs: Iterable[tuple], predicate: Callable[..., bool], names=DEFAULT_NAMES) -> LawCheck:
    """Evaluate on explicit tuples (used when tuples are not drawn from one carrier)."""
    check = LawCheck(law=law, exhaustive=False)
    for values in pairs:
        check.cases += 1
        try:
            holds = predicate(*values)
            error = None
        except MvlabError as exc:
            holds, error = False, str(exc)
        if not holds:
            assignment = dict(zip(names, values))
            if error:
                assignment["error"] = error
            check.counterexamples.append(assignment)
            logger.info(f"Law '{law}' fails", extra={"law": law})
            break
    return check


def mixed_tuples(law: str, pools: Sequence[Sequence], finite: bool, budget: Budget) -> Tuple[Iterable[tuple], bool]:
    """Like select_tuples, but slot i draws from ``pools[i]``."""
    count = 1
    for pool in pools:
        count *= len(pool)
    if finite and all(len(pool) <= budget.exhaustive_limit for pool in pools):
        return itertools.product(*pools), True
    if count <= budget.samples:
        return list(itertools.product(*pools)), False
    rng = random.Random(f"{budget.seed}:{law}")
    return [tuple(rng.choice(pool) for pool in pools) for _ in range(budget.samples)], False


def evaluate_mixed(
    law: str,
    pools: Sequence[Sequence],
    predicate: Callable[..., bool],
    budget: Budget,
    finite: bool,
    names: Sequence[str] = DEFAULT_NAMES,
) -> LawCheck:
    tuples, exhaustive = mixed_tuples(law, pools, finite, budget)
    check = evaluate_pairs(law, tuples, predicate, names)
    check.exhaustive = exhaustive
    return check
