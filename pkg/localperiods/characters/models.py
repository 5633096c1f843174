"""Multiplicative characters of F* and E*, and their |.|-shifted versions."""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, replace
from dataclasses import field as dataclass_field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Tuple, Union

from ..errors import ContextError
from ..padic import ExtensionElement, FieldContext, TruncatedElement
from .groups import UnitGroup, e_unit_group, f_unit_group

Argument = Union[TruncatedElement, ExtensionElement]


@dataclass(frozen=True)
class MultChar:
    """chi(x) = value_at_uniformizer^(v(x)) * unit_char(unit part of x).

    ``field`` is ``"F"`` for characters of F*, ``"E"`` for characters of E*
    (inert or ramified E; split E uses one F-character per place).
    ``value_at_uniformizer`` is the value at p for F and inert E, at sqrt D
    for ramified E.
    """

    p: int
    field: str = "F"
    level: int = 0
    value_at_uniformizer: complex = 1.0
    exponents: Tuple[int, ...] = ()
    extension_kind: str = "inert"
    D: int = 0
    name: str = dataclass_field(default="chi", compare=False)

    @property
    def q(self) -> int:
        return self.p

    def group(self) -> Optional[UnitGroup]:
        if self.level == 0:
            return None
        if self.field == "F":
            return f_unit_group(self.p, self.level)
        return e_unit_group(self.p, self.D, self.level)

    def unit_value(self, residue: Tuple[int, ...]) -> complex:
        group = self.group()
        if group is None:
            return 1.0 + 0.0j
        logs = group.log(residue)
        phase = sum(k * e / n for k, e, n in zip(self.exponents, logs, group.orders))
        return cmath.exp(2j * math.pi * (phase % 1.0))

    def uniformizer_power(self, x: Argument) -> int:
        v = x.require_valuation()
        if self.field == "E" and self.extension_kind == "ramified":
            return int(2 * v)
        if v != int(v):
            raise ContextError("half-integral valuation for a character without ramified uniformizer")
        return int(v)

    def __call__(self, x: Argument) -> complex:
        return eval_character(self, x)

    def restricted_unit_value(self, u: int) -> complex:
        """Value on the F-unit u (as an element of O_E* when field is E)."""
        if self.level == 0:
            return 1.0 + 0.0j
        modulus = self.p ** self.level
        if self.field == "F":
            return self.unit_value((u % modulus,))
        return self.unit_value((u % modulus, 0))

    def squared(self) -> "MultChar":
        return MultChar(
            p=self.p,
            field=self.field,
            level=self.level,
            value_at_uniformizer=self.value_at_uniformizer ** 2,
            exponents=tuple(2 * k for k in self.exponents),
            extension_kind=self.extension_kind,
            D=self.D,
            name=f"{self.name}^2",
        )

    def inverse(self) -> "MultChar":
        return replace(
            self,
            value_at_uniformizer=1 / self.value_at_uniformizer,
            exponents=tuple(-k for k in self.exponents),
            name=f"{self.name}^-1",
        )

    def __mul__(self, other: "MultChar") -> "MultChar":
        """Pointwise product of two characters of the same group."""
        if (self.p, self.field, self.D) != (other.p, other.field, other.D):
            raise ContextError("characters of different groups")
        level = max(self.level, other.level)
        mine, theirs = _lift_exponents(self, level), _lift_exponents(other, level)
        return MultChar(
            p=self.p,
            field=self.field,
            level=level,
            value_at_uniformizer=self.value_at_uniformizer * other.value_at_uniformizer,
            exponents=tuple(a + b for a, b in zip(mine, theirs)) if level else (),
            extension_kind=self.extension_kind,
            D=self.D,
            name=f"{self.name}*{other.name}",
        )

    def actual_level(self) -> int:
        """Smallest j with the character trivial on 1 + p^j O (O_E)."""
        group = self.group()
        if group is None:
            return 0
        modulus = self.p ** self.level
        tol = 1e-12
        if all(abs(self.unit_value(g) - 1) < tol for g in group.generators):
            return 0
        for j in range(1, self.level + 1):
            gens = [((1 + self.p ** j) % modulus,)] if self.field == "F" else [
                ((1 + self.p ** j) % modulus, 0),
                (1, self.p ** j % modulus),
            ]
            if all(abs(self.unit_value(g) - 1) < tol for g in gens):
                return j
        return self.level  # pragma: no cover


@dataclass(frozen=True)
class ShiftedChar:
    """base * |.|^(sign*(s + 1/2)) with |.| the normalized absolute value of base's field."""

    base: MultChar
    s: complex
    sign: int = 1

    @property
    def exponent(self) -> complex:
        return self.sign * (self.s + 0.5)

    def abs_uniformizer(self) -> float:
        q = self.base.p
        if self.base.field == "F":
            return 1.0 / q
        if self.base.extension_kind == "ramified":
            return 1.0 / q
        return 1.0 / (q * q)

    @property
    def value_at_uniformizer(self) -> complex:
        return self.base.value_at_uniformizer * self.abs_uniformizer() ** self.exponent

    def __call__(self, x: Argument) -> complex:
        return eval_character(self, x)


def _lift_exponents(chi: MultChar, level: int) -> Tuple[int, ...]:
    """Exponents of chi against the generators of the level-`level` unit group."""
    if level == 0:
        return ()
    target = f_unit_group(chi.p, level) if chi.field == "F" else e_unit_group(chi.p, chi.D, level)
    if chi.level == 0:
        return tuple(0 for _ in target.orders)
    if chi.level == level:
        return chi.exponents
    source = chi.group()
    modulus = chi.p ** chi.level
    out = []
    for generator, order in zip(target.generators, target.orders):
        reduced = tuple(x % modulus for x in generator)
        logs = source.log(reduced)
        phase = sum(Fraction(k * e, n) for k, e, n in zip(chi.exponents, logs, source.orders))
        out.append(int(phase * order) % order)
    return tuple(out)


def _as_field_argument(chi: MultChar, x: Argument) -> Argument:
    if chi.field == "E" and isinstance(x, TruncatedElement):
        return ExtensionElement(chi.extension_kind, chi.D, x, TruncatedElement.zero_ball(x.p, x.prec))
    return x


def eval_character(chi: Union[MultChar, ShiftedChar], x: Argument) -> complex:
    """chi(p)^v(x) * unit_char(unit part), with the |.|-twist for shifted characters."""
    if isinstance(chi, ShiftedChar):
        base = chi.base
        power = base.uniformizer_power(_as_field_argument(base, x))
        return eval_character(base, x) * chi.abs_uniformizer() ** (chi.exponent * power)
    x = _as_field_argument(chi, x)
    if isinstance(x, TruncatedElement) and x.is_zero_ball:
        raise ContextError("characters are not evaluated at 0")
    power = chi.uniformizer_power(x)
    value = chi.value_at_uniformizer ** power if power else 1.0 + 0.0j
    if chi.level == 0:
        return value
    if chi.field == "F":
        residue: Tuple[int, ...] = (x.unit_residue(chi.level),)
    else:
        residue = x.unit_residue(chi.level)
    return value * chi.unit_value(residue)


def make_unit_character(
    ctx: FieldContext,
    c: int,
    exponents: Iterable[int] = (),
    value_at_uniformizer: complex = 1.0,
    field: str = "F",
    name: str = "chi",
) -> MultChar:
    """A character of exact level c given by exponents against the fixed generators."""
    if field == "E" and ctx.extension_kind == "split":
        raise ContextError("split E* characters are pairs of F-characters")
    if field == "E" and ctx.extension_kind == "ramified" and c > 0:
        raise ContextError("ramified-extension characters are modelled unramified on O_E*")
    exps = tuple(int(k) for k in exponents)
    if c == 0:
        exps = ()
    else:
        expected = 1 if field == "F" else 3
        if len(exps) != expected:
            raise ContextError(f"expected {expected} exponents for a level-{c} {field}-character")
        if c > ctx.precision:
            raise ContextError(f"level {c} exceeds working precision {ctx.precision}")
    chi = MultChar(
        p=ctx.p,
        field=field,
        level=c,
        value_at_uniformizer=complex(value_at_uniformizer),
        exponents=exps,
        extension_kind=ctx.extension_kind if field == "E" else "inert",
        D=ctx.D if field == "E" else 0,
        name=name,
    )
    actual = chi.actual_level()
    if actual != c:
        raise ContextError(f"exponents {exps} give level {actual}, not {c}")
    return chi


def find_character(
    ctx: FieldContext,
    c: int,
    field: str = "F",
    value_at_uniformizer: complex = 1.0,
    predicate: Callable[[MultChar], bool] = lambda chi: True,
    name: str = "chi",
) -> MultChar:
    """First character of exact level c (deterministic exponent order) satisfying ``predicate``."""
    if c == 0:
        chi = make_unit_character(ctx, 0, (), value_at_uniformizer, field, name)
        if predicate(chi):
            return chi
        raise ContextError("the unramified character fails the requested property")
    group = f_unit_group(ctx.p, c) if field == "F" else e_unit_group(ctx.p, ctx.D, c)
    for exps in itertools.product(*(range(n) for n in group.orders)):
        try:
            chi = make_unit_character(ctx, c, exps, value_at_uniformizer, field, name)
        except ContextError:
            continue
        if predicate(chi):
            return chi
    raise ContextError(f"no level-{c} {field}-character with the requested property")


def trivial_on_f_units(chi: MultChar) -> bool:
    """True when chi restricted to O_F* is trivial (chi|F* unramified)."""
    if chi.level == 0:
        return True
    return all(
        abs(chi.restricted_unit_value(u) - 1) < 1e-12
        for u in range(1, chi.p ** chi.level)
        if u % chi.p
    )


__all__ = [
    "MultChar",
    "ShiftedChar",
    "eval_character",
    "make_unit_character",
    "find_character",
    "trivial_on_f_units",
]
