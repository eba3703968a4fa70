"""Exact arithmetic in finitely generated clopen value sets.

A value set is modelled as the module spanned by ``generators + [1]`` over one
of the rings ZZ, ZZ[1/m] or QQ.  Values are exact rational combinations of the
unit and a finite list of irrational symbols.  The symbols are *declared*
linearly independent over QQ together with 1; nothing here verifies that, and
every membership or equality answer is conditional on the declaration.

Ordering of values with irrational parts is decided by interval arithmetic on
the rational enclosures attached to each symbol.  When an enclosure is too
wide to fix a sign, :class:`PrecisionExhausted` is raised rather than guessed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from . import _linalg
from .errors import InvalidInput, PrecisionExhausted


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise InvalidInput("floats are not accepted; use 'p/q' strings or Fractions")
    return Fraction(x)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Ring(enum.Enum):
    INTEGERS = "Z"
    INTEGERS_INVERTING = "Z[1/m]"
    RATIONALS = "Q"


@dataclass(frozen=True)
class IrrationalSymbol:
    """A formal irrational with a certified rational enclosure ``lo <= beta <= hi``."""

    name: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if not self.name:
            raise InvalidInput("symbol name must be nonempty")
        if not (0 < self.lo < self.hi <= 1):
            raise InvalidInput(f"symbol {self.name}: need 0 < lo < hi <= 1")

    @classmethod
    def inverse_pi(cls, name: str = "inv_pi", digits: int = 50) -> IrrationalSymbol:
        """1/pi with a rigorous enclosure from mpmath interval arithmetic."""
        import mpmath

        ctx = mpmath.iv
        old = ctx.dps
        ctx.dps = digits
        try:
            lo, hi = (1 / ctx.pi)._mpi_
        finally:
            ctx.dps = old
        return cls(name, _mpf_to_fraction(lo), _mpf_to_fraction(hi))


def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    q = Fraction(int(man)) * (Fraction(2) ** exp)
    return -q if sign else q


@dataclass(frozen=True)
class Value:
    """``rational + sum(coeff * symbol)`` in canonical form (no zero coefficients)."""

    rational: Fraction = Fraction(0)
    symbols: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rational", as_fraction(self.rational))
        merged: dict[str, Fraction] = {}
        for name, c in self.symbols:
            merged[name] = merged.get(name, Fraction(0)) + as_fraction(c)
        object.__setattr__(
            self, "symbols", tuple(sorted((n, c) for n, c in merged.items() if c))
        )

    @classmethod
    def of(cls, rational=0, **symbols) -> Value:
        return cls(as_fraction(rational), tuple((n, as_fraction(c)) for n, c in symbols.items()))

    @classmethod
    def symbol(cls, name: str, coeff=1) -> Value:
        return cls(Fraction(0), ((name, as_fraction(coeff)),))

    @property
    def coords(self) -> dict[str, Fraction]:
        return dict(self.symbols)

    def is_rational(self) -> bool:
        return not self.symbols

    def is_zero(self) -> bool:
        return not self.rational and not self.symbols

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Value(self.rational + other.rational, self.symbols + other.symbols)

    __radd__ = __add__

    def __neg__(self):
        return Value(-self.rational, tuple((n, -c) for n, c in self.symbols))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Value):
            if other.is_rational():
                other = other.rational
            elif self.is_rational():
                return other * self.rational
            else:
                raise InvalidInput("product of two irrational values is not representable")
        try:
            k = as_fraction(other)
        except TypeError:
            return NotImplemented
        return Value(self.rational * k, tuple((n, c * k) for n, c in self.symbols))

    __rmul__ = __mul__

    def __truediv__(self, other):
        k = as_fraction(other)
        return self * (1 / k)

    def __str__(self):
        parts = [format_fraction(self.rational)] if self.rational or not self.symbols else []
        parts += [f"{format_fraction(c)}*{n}" for n, c in self.symbols]
        return " + ".join(parts)


def _coerce(x):
    if isinstance(x, Value):
        return x
    try:
        return Value(as_fraction(x))
    except TypeError:
        return NotImplemented


ZERO = Value()
ONE = Value(Fraction(1))


@dataclass(frozen=True)
class ValueGroup:
    """The module spanned by ``generators`` and 1 over ``ring``.

    ``m`` is only meaningful for ``Ring.INTEGERS_INVERTING``.  When
    ``declared_ring`` is set, closure of the module under products is checked
    on the generators at construction time.
    """

    ring: Ring
    generators: tuple[Value, ...] = ()
    symbols: tuple[IrrationalSymbol, ...] = ()
    declared_ring: bool = False
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise InvalidInput("symbol names must be unique")
        if self.ring is Ring.INTEGERS_INVERTING:
            if self.m is None or self.m < 2:
                raise InvalidInput("Z[1/m] needs an integer m >= 2")
        elif self.m is not None:
            object.__setattr__(self, "m", None)
        for g in self.generators:
            for n, _ in g.symbols:
                if n not in names:
                    raise InvalidInput(f"generator uses undeclared symbol {n!r}")
            lo, hi = self.enclose(g)
            if not (lo > 0 and hi <= 1):
                if g.is_rational():
                    raise InvalidInput(f"generator {g} is not in (0, 1]")
                raise PrecisionExhausted(f"cannot certify generator {g} lies in (0, 1]")
        if self.declared_ring:
            for g, h in combinations_with_replacement(self.generators, 2):
                if not g.is_rational() and not h.is_rational():
                    raise InvalidInput(f"declared ring: product {g} * {h} is not representable")
                if not self.member(g * h):
                    raise InvalidInput(f"declared ring: product {g} * {h} is not a member")

    # ----- constructors for the named examples

    @classmethod
    def dyadic(cls) -> ValueGroup:
        return cls(Ring.INTEGERS_INVERTING, (ONE,), m=2, declared_ring=True)

    @classmethod
    def rationals(cls, *symbols: IrrationalSymbol) -> ValueGroup:
        gens = tuple(Value.symbol(s.name) for s in symbols)
        return cls(Ring.RATIONALS, gens, symbols)

    @classmethod
    def half_and_inverse_pi(cls, digits: int = 50) -> ValueGroup:
        pi_inv = IrrationalSymbol.inverse_pi(digits=digits)
        return cls(Ring.INTEGERS, (Value(Fraction(1, 2)), Value.symbol(pi_inv.name)), (pi_inv,))

    # ----- structure

    @property
    def symbol_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def vector(self, v: Value) -> list[Fraction] | None:
        """Coordinates of ``v`` on the basis ``[1, *symbols]``; None if ``v`` uses
        a symbol foreign to this group."""
        coords = v.coords
        if any(n not in self.symbol_names for n in coords):
            return None
        return [v.rational] + [coords.get(n, Fraction(0)) for n in self.symbol_names]

    def from_vector(self, vec) -> Value:
        return Value(vec[0], tuple(zip(self.symbol_names, vec[1:])))

    @cached_property
    def _lattice(self):
        vecs = [self.vector(ONE)] + [self.vector(g) for g in self.generators]
        scale = _linalg.common_denominator(x for vec in vecs for x in vec)
        rows = [[int(x * scale) for x in vec] for vec in vecs]
        basis, pivots = _linalg.integer_row_basis(rows)
        return scale, basis, pivots

    def lattice_basis(self) -> list[Value]:
        """A basis of the ZZ-lattice spanned by the generators and 1."""
        scale, basis, _ = self._lattice
        return [self.from_vector([Fraction(x, scale) for x in row]) for row in basis]

    def lattice_coordinates(self, v: Value) -> list[Fraction] | None:
        """Coefficients of ``v`` on :meth:`lattice_basis` (None outside the QQ-span)."""
        vec = self.vector(v)
        if vec is None:
            return None
        scale, basis, pivots = self._lattice
        return _linalg.echelon_coordinates(basis, pivots, [x * scale for x in vec])

    def scalar_ok(self, q: Fraction) -> bool:
        """Is the rational ``q`` an element of the coefficient ring?"""
        if self.ring is Ring.RATIONALS:
            return True
        if self.ring is Ring.INTEGERS:
            return q.denominator == 1
        return _linalg.strip_factors(q.denominator, self.m) == 1

    # ----- operations

    def member(self, v: Value) -> bool:
        coeffs = self.lattice_coordinates(v)
        return coeffs is not None and all(self.scalar_ok(c) for c in coeffs)

    def enclose(self, v: Value) -> tuple[Fraction, Fraction]:
        enc = {s.name: s for s in self.symbols}
        lo = hi = v.rational
        for name, c in v.symbols:
            try:
                s = enc[name]
            except KeyError:
                raise InvalidInput(f"no enclosure for symbol {name!r}") from None
            if c > 0:
                lo, hi = lo + c * s.lo, hi + c * s.hi
            else:
                lo, hi = lo + c * s.hi, hi + c * s.lo
        return lo, hi

    def sign(self, v: Value) -> Order:
        if v.is_zero():
            return Order.EQUAL
        lo, hi = self.enclose(v)
        if lo > 0:
            return Order.GREATER
        if hi < 0:
            return Order.LESS
        raise PrecisionExhausted(f"sign of {v} undetermined within [{lo}, {hi}]")

    def compare(self, v: Value, w: Value) -> Order:
        if v == w:
            return Order.EQUAL
        return self.sign(v - w)

    def is_group_like(self) -> bool:
        if self.ring is not Ring.INTEGERS:
            return True
        return any(not g.is_rational() for g in self.generators)

    def is_q_like(self) -> bool:
        return self.ring is Ring.RATIONALS

    # ----- helpers built on compare

    def lt(self, v, w) -> bool:
        return self.compare(_coerce(v), _coerce(w)) is Order.LESS

    def le(self, v, w) -> bool:
        return self.compare(_coerce(v), _coerce(w)) is not Order.GREATER

    def min(self, v: Value, w: Value) -> Value:
        return v if self.le(v, w) else w

    def is_positive(self, v: Value) -> bool:
        return self.sign(v) is Order.GREATER


def member(V: ValueGroup, v: Value) -> bool:
    return V.member(v)


def compare(V: ValueGroup, v: Value, w: Value) -> Order:
    return V.compare(v, w)


def is_group_like(V: ValueGroup) -> bool:
    return V.is_group_like()


def is_q_like(V: ValueGroup) -> bool:
    return V.is_q_like()


def value_sum(values: Iterable[Value]) -> Value:
    total = ZERO
    for v in values:
        total = total + v
    return total


def value_from_mapping(rational, symbols: Mapping[str, object] | None = None) -> Value:
    return Value(as_fraction(rational), tuple((n, as_fraction(c)) for n, c in (symbols or {}).items()))
