"""Polynomials over GF(2).

A polynomial b_d x^d + ... + b_1 x + b_0 is stored as the non-negative
integer b_d 2^d + ... + b_1 2 + b_0, so addition is XOR and multiplication
by x is a left shift.  The same integers double as bit-vectors: bit ``i`` is
the coefficient of ``x^i``, i.e. position ``i`` of the word.

Codes built on top of a seed code of length ``n`` live in the variable
``y = x^(1/2^j)``; every exponent stays an ordinary integer and the
"fractional" exponent scaling becomes :func:`substitute_power`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "BinPolynomial",
    "bits_to_int",
    "int_to_bits",
    "parse_bitstring",
    "format_bitstring",
    "divmod_poly",
    "gcd",
    "lcm",
    "powmod",
    "substitute_power",
    "frobenius_power",
]


def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        a ^= b << shift
        q |= 1 << shift
    return q, a


def _mod(a: int, b: int) -> int:
    return _divmod(a, b)[1]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _spread(a: int, t: int) -> int:
    # exponent e -> t*e
    out = 0
    e = 0
    while a:
        if a & 1:
            out |= 1 << (e * t)
        a >>= 1
        e += 1
    return out


@dataclass(frozen=True, order=False)
class BinPolynomial:
    """Immutable polynomial over GF(2) backed by an integer bit mask."""

    value: int = 0

    def __post_init__(self):
        if not isinstance(self.value, (int, np.integer)) or self.value < 0:
            raise ValueError(f"polynomial mask must be a non-negative int, got {self.value!r}")
        object.__setattr__(self, "value", int(self.value))

    # -- constructors -------------------------------------------------
    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "BinPolynomial":
        v = 0
        for e in exponents:
            v ^= 1 << int(e)
        return cls(v)

    @classmethod
    def from_bits(cls, bits) -> "BinPolynomial":
        """Build from a bit sequence where index ``i`` is the coefficient of x^i."""
        return cls(bits_to_int(bits))

    @classmethod
    def parse(cls, text: str) -> "BinPolynomial":
        """Parse ``1+x^2+x^4`` style text, or a plain ``0``/``1`` bit-string.

        Either ``x`` or ``y`` is accepted as the variable.  A string made only
        of the characters 0 and 1 with length > 1 is read as a bit-string
        (index = exponent), so ``"10101"`` and ``"1+x^2+x^4"`` agree.
        """
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if len(s) > 1 and set(s) <= {"0", "1"}:
            return cls(parse_bitstring(s))
        if s == "0":
            return cls(0)
        v = 0
        for term in s.split("+"):
            m = re.fullmatch(r"(?:1|([xy])(?:\^(\d+))?)", term)
            if m is None:
                raise ValueError(f"cannot parse polynomial term {term!r} in {text!r}")
            if m.group(1) is None:
                e = 0
            else:
                e = int(m.group(2)) if m.group(2) is not None else 1
            v ^= 1 << e
        return cls(v)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int | None:
        """Highest exponent with a nonzero coefficient; ``None`` for zero."""
        return self.value.bit_length() - 1 if self.value else None

    @property
    def ord(self) -> int | None:
        """Lowest exponent with a nonzero coefficient; ``None`` for zero."""
        return (self.value & -self.value).bit_length() - 1 if self.value else None

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def exponents(self) -> Iterator[int]:
        v, e = self.value, 0
        while v:
            if v & 1:
                yield e
            v >>= 1
            e += 1

    def coefficient(self, e: int) -> int:
        return (self.value >> e) & 1

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __len__(self) -> int:
        return self.value.bit_length()

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        return BinPolynomial(self.value ^ _as_int(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__
    __xor__ = __add__

    def __mul__(self, other):
        return BinPolynomial(_mul(self.value, _as_int(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _divmod(self.value, _as_int(other))
        return BinPolynomial(q), BinPolynomial(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = 1, self.value
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return BinPolynomial(result)

    def __call__(self, point: int) -> int:
        """Evaluate at an element of GF(2) (0 or 1)."""
        if point not in (0, 1):
            raise ValueError("evaluation point must be 0 or 1; use gf2m for field elements")
        return self.value & 1 if point == 0 else self.weight & 1

    def reciprocal(self, degree: int | None = None) -> "BinPolynomial":
        """Return x^d f(1/x) with ``d`` defaulting to deg(f)."""
        d = self.degree if degree is None else degree
        if d is None:
            return BinPolynomial(0)
        out = 0
        for e in self.exponents():
            if e > d:
                raise ValueError(f"degree {d} is below the polynomial degree")
            out |= 1 << (d - e)
        return BinPolynomial(out)

    # -- rendering ----------------------------------------------------
    def to_bits(self, length: int | None = None) -> np.ndarray:
        return int_to_bits(self.value, len(self) if length is None else length)

    def to_bitstring(self, length: int | None = None) -> str:
        return format_bitstring(self.value, len(self) if length is None else length)

    def format(self, var: str = "x") -> str:
        if not self.value:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"BinPolynomial({self.format()!r})"


def _as_int(p) -> int:
    if isinstance(p, BinPolynomial):
        return p.value
    if isinstance(p, (int, np.integer)) and p >= 0:
        return int(p)
    raise TypeError(f"expected BinPolynomial or non-negative int, got {type(p).__name__}")


def _poly(p) -> BinPolynomial:
    return p if isinstance(p, BinPolynomial) else BinPolynomial(_as_int(p))


# -- bit-vector helpers ---------------------------------------------------

def bits_to_int(bits) -> int:
    """Pack a 0/1 sequence (index ``i`` -> bit ``i``) into an int."""
    if isinstance(bits, str):
        return parse_bitstring(bits)
    v = 0
    for i, b in enumerate(np.asarray(bits).ravel().tolist()):
        if b not in (0, 1):
            raise ValueError(f"bit-vector entries must be 0 or 1, got {b!r}")
        if b:
            v |= 1 << i
    return v


def int_to_bits(value: int, length: int) -> np.ndarray:
    if value >> length:
        raise ValueError(f"value has bits beyond length {length}")
    raw = np.frombuffer(value.to_bytes((length + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length].copy()


def parse_bitstring(text: str) -> int:
    """``"101"`` -> 0b101 read index-0-leftmost, i.e. 1 + x^2."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit-string: {text!r}")
    v = 0
    for i, ch in enumerate(text):
        if ch == "1":
            v |= 1 << i
    return v


def format_bitstring(value: int, length: int) -> str:
    if value >> length:
        raise ValueError(f"value has bits beyond length {length}")
    return "".join("1" if (value >> i) & 1 else "0" for i in range(length))


# -- operations ---------------------------------------------------------

def divmod_poly(a, b) -> tuple[BinPolynomial, BinPolynomial]:
    """Long division: returns (q, r) with a = q*b + r and deg r < deg b."""
    return divmod(_poly(a), _poly(b))


def gcd(a, b) -> BinPolynomial:
    return BinPolynomial(_gcd(_as_int(a), _as_int(b)))


def lcm(a, b) -> BinPolynomial:
    a, b = _as_int(a), _as_int(b)
    if a == 0 or b == 0:
        raise ValueError("lcm of the zero polynomial is undefined")
    q, r = _divmod(_mul(a, b), _gcd(a, b))
    assert r == 0
    return BinPolynomial(q)


def powmod(base, exponent: int, modulus) -> BinPolynomial:
    """base^exponent mod modulus, by square-and-multiply."""
    m = _as_int(modulus)
    result, b = _mod(1, m), _mod(_as_int(base), m)
    while exponent:
        if exponent & 1:
            result = _mod(_mul(result, b), m)
        b = _mod(_mul(b, b), m)
        exponent >>= 1
    return BinPolynomial(result)


def substitute_power(f, t: int) -> BinPolynomial:
    """Return f(y^t): each exponent e becomes t*e."""
    if t < 1:
        raise ValueError("substitution power must be >= 1")
    return BinPolynomial(_spread(_as_int(f), t))


def frobenius_power(f, j: int) -> BinPolynomial:
    """Return f^(2^j) computed by repeated squaring."""
    if j < 0:
        raise ValueError("j must be non-negative")
    v = _as_int(f)
    for _ in range(j):
        v = _mul(v, v)
    return BinPolynomial(v)
