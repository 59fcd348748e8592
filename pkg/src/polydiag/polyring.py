"""Dense integer polynomials in ``u`` and in ``(u, x)``.

``u`` stands for ``t^2 = z * zbar``; every variety handled by the package has
a Hodge polynomial in ``u`` alone. ``x`` is a formal symbol for the Hodge
polynomial of the underlying variety. Coefficients are Python ints, so
arithmetic is exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from polydiag.errors import DivisibilityError, ValidationError


def _trim(cs: Iterable) -> tuple:
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class UPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: int) -> "UPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> "UPoly":
        return cls((0,) * deg + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, int):
            return UPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValidationError(f"exponent must be a nonnegative integer, got {e!r}", "exponent")
        result, base = UPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, q: "UPoly") -> tuple["UPoly", "UPoly"]:
        """Division by a polynomial with leading coefficient +-1."""
        if not q:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = q.coeffs[-1]
        if lead not in (1, -1):
            raise ValidationError("divisor must have leading coefficient 1 or -1", "divisor")
        rem = list(self.coeffs)
        dq = q.degree
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dq] = c
                for j, y in enumerate(q.coeffs):
                    rem[i - dq + j] -= c * y
        return UPoly(tuple(quot)), UPoly(tuple(rem))

    def __call__(self, value):
        acc = 0 if not isinstance(value, UPoly) else UPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def render(self, var: str = "u") -> str:
        """``u^2+4u+1`` style; ``var="t"`` doubles every exponent."""
        return _render_terms(self.coeffs, var, 2 if var == "t" else 1)

    def __str__(self):
        return self.render()

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "UPoly":
        try:
            return cls(tuple(int(c) for c in data))
        except (TypeError, ValueError):
            raise ValidationError("polynomial JSON must be a list of integers or decimal strings", "coeffs") from None


def _render_terms(coeffs, var, step) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = i * step
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        sign = "-" if c < 0 else "+"
        terms.append((sign, body + mono))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def exact_div(p: UPoly, q: UPoly) -> UPoly:
    """Quotient ``p / q``; raises :class:`DivisibilityError` rather than truncating."""
    quot, rem = p.divmod(q)
    if rem:
        raise DivisibilityError(f"{p} is not divisible by {q} (remainder {rem})", rem)
    return quot


U = UPoly((0, 1))
ONE = UPoly.const(1)
ZERO = UPoly()

Scalar = Union[int, UPoly]


@dataclass(frozen=True)
class XPoly:
    """Polynomial in ``x`` whose coefficients are :class:`UPoly`."""

    coeffs: tuple[UPoly, ...] = ()

    def __post_init__(self):
        cs = tuple(c if isinstance(c, UPoly) else UPoly.const(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", _trim(cs))

    @classmethod
    def x_power(cls, k: int, c: Scalar = 1) -> "XPoly":
        c = c if isinstance(c, UPoly) else UPoly.const(c)
        return cls((ZERO,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> UPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (int, UPoly)):
            return XPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return XPoly(tuple(self[i] + other[i] for i in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return XPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, p in enumerate(a):
            if p:
                for j, q in enumerate(b):
                    out[i + j] = out[i + j] + p * q
        return XPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValidationError(f"exponent must be a nonnegative integer, got {e!r}", "exponent")
        result = XPoly((ONE,))
        for _ in range(e):
            result = result * self
        return result

    def eval_x(self, value):
        """Substitute ``value`` (UPoly, XPoly or int) for ``x``."""
        acc = XPoly() if isinstance(value, XPoly) else ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def render(self, var: str = "u") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            xm = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = c.render(var)
            if not xm:
                terms.append(body if len([v for v in c.coeffs if v]) == 1 else f"({body})")
            elif c == ONE:
                terms.append(xm)
            elif c == -ONE:
                terms.append("-" + xm)
            elif len([v for v in c.coeffs if v]) == 1:
                terms.append(f"{body}*{xm}")
            else:
                terms.append(f"({body})*{xm}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __str__(self):
        return self.render()

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "XPoly":
        if not isinstance(data, list):
            raise ValidationError("XPoly JSON must be a list of coefficient lists", "coeffs")
        return cls(tuple(UPoly.from_json(c) for c in data))


X = XPoly((ZERO, ONE))


def h(d: int) -> UPoly:
    """``u + u^2 + ... + u^(d-1)``: the projective space P^(d-1) minus a point."""
    if not isinstance(d, int) or d < 1:
        raise ValidationError(f"h(d) needs d >= 1, got {d!r}", "d")
    return UPoly((0,) + (1,) * (d - 1))


def projective(d: int) -> UPoly:
    """``1 + u + ... + u^(d-1)``."""
    if not isinstance(d, int) or d < 1:
        raise ValidationError(f"projective(d) needs d >= 1, got {d!r}", "d")
    return UPoly((1,) * d)
