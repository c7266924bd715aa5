"""
The algebra-description language used on the command line.

    chain(INT) | boolean | interval_q | gamma(GROUP, RATIONAL) | prod(E, ...)
    pmv(E) | localized(INT) | localized(INT, RATIONAL) | integers | rationals
    cyclic(RATIONAL) | module(scalars=E, group=GROUP, unit=RATIONAL)
    module(scalars=E, algebra=E)

Rationals are written ``p/q`` or as integers. Whitespace is ignored.
``parse_expr`` builds the syntax tree, ``print_expr`` writes it back in canonical
form and the ``elaborate_*`` functions turn it into validated structures.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .exceptions import DslSyntaxError, ElaborationError, MvlabError, NotProductClosedError
from .mv_core import MvAlgebra, boolean, finite_chain, gamma, interval_q, product
from .mvmod import MvModule, boolean_scalars, module_make, module_over
from .pmv import PmvAlgebra, factor_ring, gamma_ring, pmv_from_algebra
from .rational_core import RationalSubgroup, RationalSubring, format_rational, primes_of


@dataclass(frozen=True)
class Chain:
    d: int


@dataclass(frozen=True)
class Boolean:
    pass


@dataclass(frozen=True)
class IntervalQ:
    pass


@dataclass(frozen=True)
class Gamma:
    group: "Expr"
    unit: Fraction


@dataclass(frozen=True)
class Prod:
    items: Tuple["Expr", ...]


@dataclass(frozen=True)
class Pmv:
    inner: "Expr"


@dataclass(frozen=True)
class Localized:
    n: int
    scale: Union[Fraction, None] = None


@dataclass(frozen=True)
class Integers:
    pass


@dataclass(frozen=True)
class Rationals:
    pass


@dataclass(frozen=True)
class Cyclic:
    step: Fraction


@dataclass(frozen=True)
class Module:
    scalars: "Expr"
    group: Union["Expr", None] = None
    unit: Union[Fraction, None] = None
    algebra: Union["Expr", None] = None


Expr = Union[Chain, Boolean, IntervalQ, Gamma, Prod, Pmv, Localized, Integers, Rationals, Cyclic, Module]

ATOMS = {"boolean": Boolean, "interval_q": IntervalQ, "integers": Integers, "rationals": Rationals}

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<symbol>[(),=/-]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        match = TOKEN_PATTERN.match(text, i)
        if not match or match.end() == i:
            raise DslSyntaxError(f"unexpected character {text[i]!r}", i)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        i = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.cur
        self.i += 1
        return token

    def expect(self, text: str) -> Token:
        if self.cur.text != text:
            found = repr(self.cur.text) if self.cur.kind != "end" else "end of input"
            raise DslSyntaxError(f"expected {text!r}, found {found}", self.cur.position)
        return self.advance()

    def parse(self) -> Expr:
        if self.cur.kind == "end":
            raise DslSyntaxError("empty expression", 0)
        expr = self.expression()
        if self.cur.kind != "end":
            raise DslSyntaxError(f"unexpected {self.cur.text!r}", self.cur.position)
        return expr

    def integer(self) -> int:
        if self.cur.kind != "int":
            raise DslSyntaxError("expected an integer", self.cur.position)
        return int(self.advance().text)

    def rational(self) -> Fraction:
        sign = -1 if self.cur.text == "-" else 1
        if sign < 0:
            self.advance()
        numerator = self.integer()
        if self.cur.text != "/":
            return Fraction(sign * numerator)
        self.advance()
        position = self.cur.position
        denominator = self.integer()
        if denominator == 0:
            raise DslSyntaxError("zero denominator", position)
        return Fraction(sign * numerator, denominator)

    def keyword(self, name: str):
        if self.cur.kind != "name" or self.cur.text != name:
            raise DslSyntaxError(f"expected {name}=", self.cur.position)
        self.advance()
        self.expect("=")

    def expression(self) -> Expr:
        if self.cur.kind != "name":
            raise DslSyntaxError("expected an expression", self.cur.position)
        token = self.advance()
        name = token.text
        if name in ATOMS:
            return ATOMS[name]()
        if name == "chain":
            self.expect("(")
            d = self.integer()
            self.expect(")")
            return Chain(d)
        if name == "cyclic":
            self.expect("(")
            step = self.rational()
            self.expect(")")
            return Cyclic(step)
        if name == "localized":
            self.expect("(")
            n = self.integer()
            scale = None
            if self.cur.text == ",":
                self.advance()
                scale = self.rational()
            self.expect(")")
            return Localized(n, scale)
        if name == "gamma":
            self.expect("(")
            group = self.expression()
            self.expect(",")
            unit = self.rational()
            self.expect(")")
            return Gamma(group, unit)
        if name == "prod":
            self.expect("(")
            items = [self.expression()]
            while self.cur.text == ",":
                self.advance()
                items.append(self.expression())
            self.expect(")")
            return Prod(tuple(items))
        if name == "pmv":
            self.expect("(")
            inner = self.expression()
            self.expect(")")
            return Pmv(inner)
        if name == "module":
            return self.module()
        raise DslSyntaxError(f"unknown constructor {name!r}", token.position)

    def module(self) -> Module:
        self.expect("(")
        self.keyword("scalars")
        scalars = self.expression()
        self.expect(",")
        if self.cur.text == "algebra":
            self.keyword("algebra")
            algebra = self.expression()
            self.expect(")")
            return Module(scalars, algebra=algebra)
        self.keyword("group")
        group = self.expression()
        self.expect(",")
        self.keyword("unit")
        unit = self.rational()
        self.expect(")")
        return Module(scalars, group=group, unit=unit)


def parse_expr(text: str) -> Expr:
    return Parser(text).parse()


def print_expr(expr: Expr) -> str:
    if isinstance(expr, Chain):
        return f"chain({expr.d})"
    for name, atom in ATOMS.items():
        if isinstance(expr, atom):
            return name
    if isinstance(expr, Cyclic):
        return f"cyclic({format_rational(expr.step)})"
    if isinstance(expr, Localized):
        if expr.scale is None:
            return f"localized({expr.n})"
        return f"localized({expr.n}, {format_rational(expr.scale)})"
    if isinstance(expr, Gamma):
        return f"gamma({print_expr(expr.group)}, {format_rational(expr.unit)})"
    if isinstance(expr, Prod):
        return "prod(" + ", ".join(print_expr(item) for item in expr.items) + ")"
    if isinstance(expr, Pmv):
        return f"pmv({print_expr(expr.inner)})"
    if isinstance(expr, Module):
        if expr.algebra is not None:
            return f"module(scalars={print_expr(expr.scalars)}, algebra={print_expr(expr.algebra)})"
        return (
            f"module(scalars={print_expr(expr.scalars)}, group={print_expr(expr.group)}, "
            f"unit={format_rational(expr.unit)})"
        )
    raise TypeError(f"not an expression: {expr!r}")


def _kind(expr: Expr) -> str:
    return type(expr).__name__.lower()


def elaborate_group(expr: Expr) -> RationalSubgroup:
    if isinstance(expr, Integers):
        return RationalSubgroup.cyclic(1)
    if isinstance(expr, Rationals):
        return RationalSubgroup.all()
    try:
        if isinstance(expr, Cyclic):
            return RationalSubgroup.cyclic(expr.step)
        if isinstance(expr, Localized):
            return RationalSubgroup.localized(primes_of(expr.n), 1 if expr.scale is None else expr.scale)
    except MvlabError as exc:
        raise ElaborationError(f"{print_expr(expr)}: {exc}") from exc
    raise ElaborationError(f"{print_expr(expr)} is not a group")


def elaborate_ring(expr: Expr) -> RationalSubring:
    if isinstance(expr, Integers):
        return RationalSubring.integers()
    if isinstance(expr, Rationals):
        return RationalSubring.all()
    if isinstance(expr, Localized) and expr.scale is None:
        return RationalSubring.localized(primes_of(expr.n))
    raise ElaborationError(f"{print_expr(expr)} is not a unital subring of the rationals")


def elaborate_algebra(expr: Expr) -> MvAlgebra:
    try:
        if isinstance(expr, Chain):
            return finite_chain(expr.d)
        if isinstance(expr, Boolean):
            return boolean()
        if isinstance(expr, IntervalQ):
            return interval_q()
        if isinstance(expr, Gamma):
            return gamma(elaborate_group(expr.group), expr.unit)
        if isinstance(expr, Prod):
            return product(*(elaborate_algebra(item) for item in expr.items))
        if isinstance(expr, Pmv):
            return elaborate_pmv(expr).base
        if isinstance(expr, Module):
            return elaborate_module(expr).carrier
    except ElaborationError:
        raise
    except MvlabError as exc:
        raise ElaborationError(f"{print_expr(expr)}: {exc}") from exc
    raise ElaborationError(f"{print_expr(expr)} is a {_kind(expr)}, not an algebra")


def _scalar_ring(expr: Expr) -> RationalSubring:
    if isinstance(expr, (Integers, Rationals, Localized)):
        return elaborate_ring(expr)
    factors = elaborate_algebra(expr).factors
    if len(factors) != 1:
        raise ElaborationError(f"{print_expr(expr)}: nested products are not scalar factors")
    return factor_ring(factors[0])


def elaborate_pmv(expr: Expr) -> PmvAlgebra:
    inner = expr.inner if isinstance(expr, Pmv) else expr
    try:
        if isinstance(inner, (Integers, Rationals, Localized)):
            return gamma_ring(elaborate_ring(inner))
        if isinstance(inner, Prod):
            return gamma_ring([_scalar_ring(item) for item in inner.items])
        return pmv_from_algebra(elaborate_algebra(inner))
    except NotProductClosedError as exc:
        raise ElaborationError(f"carrier not product-closed: {exc}") from exc
    except ElaborationError:
        raise
    except MvlabError as exc:
        raise ElaborationError(f"{print_expr(expr)}: {exc}") from exc


def elaborate_module(expr: Expr) -> MvModule:
    """A module expression; a pmv(...) is a module over itself and a plain algebra a module over pmv(boolean)."""
    try:
        if isinstance(expr, Module):
            scalars = elaborate_pmv(expr.scalars)
            if expr.algebra is not None:
                return module_over(scalars, elaborate_algebra(expr.algebra))
            return module_make(scalars, elaborate_group(expr.group), expr.unit)
        if isinstance(expr, Pmv):
            scalars = elaborate_pmv(expr)
            return MvModule(scalars, scalars.base)
        return MvModule(boolean_scalars(), elaborate_algebra(expr))
    except ElaborationError:
        raise
    except MvlabError as exc:
        raise ElaborationError(f"{print_expr(expr)}: {exc}") from exc


def parse_algebra(text: str) -> MvAlgebra:
    return elaborate_algebra(parse_expr(text))


def parse_pmv(text: str) -> PmvAlgebra:
    return elaborate_pmv(parse_expr(text))


def parse_module(text: str) -> MvModule:
    return elaborate_module(parse_expr(text))
