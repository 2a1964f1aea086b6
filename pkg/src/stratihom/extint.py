"""Integers extended by -inf and +inf, with saturating arithmetic.

Dimension bookkeeping needs ``dim(empty) = -inf`` and perversity values may
be infinite, so the package does all such arithmetic with :class:`ExtInt`
instead of floats.  Finite values stay exact Python ints.
"""

from __future__ import annotations

from typing import Union

IntoExtInt = Union[int, "ExtInt"]


class ExtInt:
    """An element of Z with -inf and +inf adjoined.

    Totally ordered and hashable.  Addition saturates at either infinity;
    the mixed sum (-inf) + (+inf) has no meaning anywhere in this package
    and raises :class:`ArithmeticError`.
    """

    __slots__ = ("_inf", "_val")

    def __init__(self, value: IntoExtInt = 0):
        if isinstance(value, ExtInt):
            self._inf = value._inf
            self._val = value._val
        elif isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot build an ExtInt from {value!r}")
        else:
            self._inf = 0
            self._val = value

    @classmethod
    def _infinity(cls, sign: int) -> "ExtInt":
        obj = cls.__new__(cls)
        obj._inf = sign
        obj._val = 0
        return obj

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    def finite_value(self) -> int:
        if self._inf:
            raise ValueError(f"{self} is not finite")
        return self._val

    def _coerce(self, other: IntoExtInt) -> "ExtInt":
        if isinstance(other, ExtInt):
            return other
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented  # type: ignore[return-value]
        return ExtInt(other)

    def _cmp_key(self) -> tuple[int, int]:
        return (self._inf, self._val)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)  # type: ignore[arg-type]
        if o is NotImplemented:
            return NotImplemented
        return self._cmp_key() == o._cmp_key()

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return NotImplemented
        return not eq

    def __lt__(self, other: IntoExtInt) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp_key() < o._cmp_key()

    def __le__(self, other: IntoExtInt) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp_key() <= o._cmp_key()

    def __gt__(self, other: IntoExtInt) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp_key() > o._cmp_key()

    def __ge__(self, other: IntoExtInt) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp_key() >= o._cmp_key()

    def __hash__(self) -> int:
        return hash(("ExtInt", self._inf, self._val))

    def __add__(self, other: IntoExtInt) -> "ExtInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._inf and o._inf and self._inf != o._inf:
            raise ArithmeticError("indeterminate sum (-inf) + (+inf)")
        if self._inf:
            return self
        if o._inf:
            return o
        return ExtInt(self._val + o._val)

    __radd__ = __add__

    def __neg__(self) -> "ExtInt":
        if self._inf:
            return ExtInt._infinity(-self._inf)
        return ExtInt(-self._val)

    def __sub__(self, other: IntoExtInt) -> "ExtInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: IntoExtInt) -> "ExtInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __int__(self) -> int:
        return self.finite_value()

    def __repr__(self) -> str:
        if self._inf < 0:
            return "-inf"
        if self._inf > 0:
            return "+inf"
        return str(self._val)

    __str__ = __repr__


NEG_INF = ExtInt._infinity(-1)
POS_INF = ExtInt._infinity(+1)


def ext(value: IntoExtInt) -> ExtInt:
    """Coerce an int (or ExtInt) to an :class:`ExtInt`."""
    return ExtInt(value)


def parse_extint(raw: "int | str") -> ExtInt:
    """Read an ExtInt from JSON-ish input: an int, or 'inf'/'+inf'/'-inf'."""
    if isinstance(raw, bool):
        raise ValueError(f"not an extended integer: {raw!r}")
    if isinstance(raw, int):
        return ExtInt(raw)
    if isinstance(raw, str):
        text = raw.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return POS_INF
        if text in ("-inf", "-infinity"):
            return NEG_INF
        return ExtInt(int(text, 10))
    raise ValueError(f"not an extended integer: {raw!r}")


def format_extint(value: ExtInt) -> "int | str":
    """Inverse of :func:`parse_extint`, for JSON output."""
    if value.is_finite:
        return value.finite_value()
    return "inf" if value > 0 else "-inf"
