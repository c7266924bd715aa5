"""
Exact rational arithmetic and the concrete lu-groups, lu-rings and quotient fields.

Every carrier in mvlab lives inside the rationals. Groups are the rank-1
subgroups c*Z[1/S] (c > 0, S a finite set of primes) together with the full
rationals; cyclic groups are the case S = {}. Rings are the localizations
Z[1/S] and the full rationals. Values are ``fractions.Fraction`` throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from sympy import igcd, ilcm, nextprime, primefactors

from .exceptions import InvalidGeneratorError, PreconditionError

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to a Fraction in lowest terms."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _strip_primes(n: int, primes: Iterable[int]) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def primes_of(n: int) -> FrozenSet[int]:
    return frozenset(primefactors(abs(n))) if abs(n) > 1 else frozenset()


def is_smooth(n: int, primes: FrozenSet[int]) -> bool:
    """True when every prime factor of ``n`` lies in ``primes``."""
    return _strip_primes(abs(n), primes) == 1


def smooth_numbers(primes: FrozenSet[int], bound: int) -> List[int]:
    """All positive integers <= bound whose prime factors lie in ``primes``."""
    found = {1}
    frontier = [1]
    while frontier:
        current = frontier.pop()
        for p in primes:
            nxt = current * p
            if nxt <= bound and nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    return sorted(found)


def farey_sequence(order: int) -> Iterator[Fraction]:
    """Yield the Farey sequence of the given order, 0/1 up to 1/1, in increasing order."""
    if order < 1:
        raise PreconditionError(f"Farey order must be positive, got {order}")
    a, b, c, d = 0, 1, 1, order
    yield Fraction(a, b)
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield Fraction(a, b)


def _format_primes(primes: FrozenSet[int]) -> str:
    return str(reduce(lambda x, y: x * y, sorted(primes), 1))


@dataclass(frozen=True)
class RationalSubgroup:
    """
    The subgroup scale*Z[1/primes] of the rationals, or all of them when ``full``.

    ``scale`` is kept free of the inverted primes so that equal groups have
    equal descriptors.
    """

    scale: Fraction = ONE
    primes: FrozenSet[int] = field(default_factory=frozenset)
    full: bool = False

    def __post_init__(self):
        if self.full:
            object.__setattr__(self, "scale", ONE)
            object.__setattr__(self, "primes", frozenset())
            return
        scale = as_rational(self.scale)
        if scale <= 0:
            raise InvalidGeneratorError(f"subgroup scale must be positive, got {scale}")
        primes = frozenset(self.primes)
        scale = Fraction(_strip_primes(scale.numerator, primes), _strip_primes(scale.denominator, primes))
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "primes", primes)

    @classmethod
    def cyclic(cls, step: RationalLike) -> "RationalSubgroup":
        return cls(scale=as_rational(step))

    @classmethod
    def localized(cls, primes: Iterable[int], scale: RationalLike = 1) -> "RationalSubgroup":
        return cls(scale=as_rational(scale), primes=frozenset(primes))

    @classmethod
    def all(cls) -> "RationalSubgroup":
        return cls(full=True)

    @property
    def is_cyclic(self) -> bool:
        return not self.full and not self.primes

    @property
    def step(self) -> Fraction:
        if not self.is_cyclic:
            raise PreconditionError(f"{self.describe()} is not cyclic")
        return self.scale

    def member(self, q: RationalLike) -> bool:
        if self.full:
            return True
        ratio = as_rational(q) / self.scale
        return is_smooth(ratio.denominator, self.primes)

    def __contains__(self, q) -> bool:
        return self.member(q)

    def includes(self, other: "RationalSubgroup") -> bool:
        """True when ``other`` is a subgroup of this group."""
        if self.full:
            return True
        if other.full:
            return False
        return other.primes <= self.primes and self.member(other.scale)

    def scaled(self, factor: RationalLike) -> "RationalSubgroup":
        factor = as_rational(factor)
        if self.full:
            return self
        return RationalSubgroup(scale=self.scale * abs(factor), primes=self.primes)

    def interval_elements(self, top: Fraction, order: int) -> List[Fraction]:
        """
        Members of the group in [0, top].

        Cyclic groups give the exact (finite) list. The full rationals give every
        p/q in [0, top] with q <= order. Localized groups give the members whose
        quotient by ``scale`` has a smooth denominator <= order**2.
        """
        if self.is_cyclic:
            count = int(top / self.scale)
            return [self.scale * k for k in range(count + 1)]
        if self.full:
            denominators = range(1, order + 1)
            unit = ONE
        else:
            denominators = smooth_numbers(self.primes, order * order)
            unit = self.scale
        values = set()
        for m in denominators:
            step = unit / m
            for k in range(int(top / step) + 1):
                values.add(step * k)
        return sorted(values)

    def describe(self) -> str:
        if self.full:
            return "rationals"
        if self.is_cyclic:
            return "integers" if self.scale == ONE else f"cyclic({format_rational(self.scale)})"
        base = _format_primes(self.primes)
        if self.scale == ONE:
            return f"localized({base})"
        return f"localized({base}, {format_rational(self.scale)})"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class RationalSubring:
    """The unital subring Z[1/primes] of the rationals, or all of them when ``full``."""

    primes: FrozenSet[int] = field(default_factory=frozenset)
    full: bool = False

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset() if self.full else frozenset(self.primes))

    @classmethod
    def localized(cls, primes: Iterable[int] = ()) -> "RationalSubring":
        return cls(primes=frozenset(primes))

    @classmethod
    def integers(cls) -> "RationalSubring":
        return cls()

    @classmethod
    def all(cls) -> "RationalSubring":
        return cls(full=True)

    def member(self, q: RationalLike) -> bool:
        return self.full or is_smooth(as_rational(q).denominator, self.primes)

    def __contains__(self, q) -> bool:
        return self.member(q)

    def as_group(self) -> RationalSubgroup:
        return RationalSubgroup.all() if self.full else RationalSubgroup.localized(self.primes)

    def describe(self) -> str:
        if self.full:
            return "rationals"
        return f"localized({_format_primes(self.primes)})" if self.primes else "integers"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class RationalField:
    """The rationals with unit 1, remembering the ring they were obtained from."""

    source: RationalSubring = field(default_factory=RationalSubring.all, compare=False)
    unit: Fraction = ONE

    def member(self, q: RationalLike) -> bool:
        return True

    def as_group(self) -> RationalSubgroup:
        return RationalSubgroup.all()

    def express_quotient(self, q: RationalLike) -> Tuple[Fraction, Fraction]:
        """Return (x, y) with x, y in the source ring, y != 0 and x / y == q."""
        q = as_rational(q)
        x, y = Fraction(q.numerator), Fraction(q.denominator)
        if not (self.source.member(x) and self.source.member(y)):
            raise PreconditionError(f"{format_rational(q)} is not a quotient of {self.source.describe()}")
        return x, y

    def describe(self) -> str:
        return "rationals"


def subgroup_generate(gens: List[RationalLike]) -> RationalSubgroup:
    """Smallest subgroup of the rationals containing the positive generators ``gens``."""
    if not gens:
        raise InvalidGeneratorError("at least one generator is required")
    values = [as_rational(g) for g in gens]
    for g in values:
        if g <= 0:
            raise InvalidGeneratorError(f"generators must be positive, got {g}")
    common = reduce(ilcm, (g.denominator for g in values), 1)
    numerator = reduce(igcd, (g.numerator * (common // g.denominator) for g in values), 0)
    return RationalSubgroup.cyclic(Fraction(numerator, common))


def subgroup_localized(primes: Iterable[int], scale: RationalLike = 1) -> RationalSubgroup:
    """The submodule scale*Z[1/primes]; with no primes this is the cyclic group of ``scale``."""
    return RationalSubgroup.localized(primes, scale)


def subgroup_member(group: RationalSubgroup, q: RationalLike) -> bool:
    return group.member(q)


def subring_generate(gens: List[RationalLike]) -> RationalSubring:
    primes = frozenset()
    for g in gens:
        primes |= primes_of(as_rational(g).denominator)
    return RationalSubring.localized(primes)


def subring_member(ring: RationalSubring, q: RationalLike) -> bool:
    return ring.member(q)


def fraction_field(ring: RationalSubring) -> RationalField:
    logger.debug("quotient field of %s is the rationals", ring.describe())
    return RationalField(source=ring)


def archimedean_witness(a: RationalLike, b: RationalLike) -> int:
    """Least n with n*a > b."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise PreconditionError(f"archimedean_witness needs positive arguments, got ({a}, {b})")
    return int(b // a) + 1


def ring_acts_on(ring: RationalSubring, group: RationalSubgroup) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Check that ``group`` is closed under multiplication by ``ring``.

    Returns None when it is, otherwise a witness (r, g) with r in the ring,
    g in the group and r*g outside the group.
    """
    if group.full:
        return None
    if ring.full:
        p = 2
        while p in group.primes:
            p = nextprime(p)
        return Fraction(1, p), group.scale
    for p in sorted(ring.primes - group.primes):
        return Fraction(1, p), group.scale
    return None
