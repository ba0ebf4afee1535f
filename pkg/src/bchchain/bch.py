"""Seed binary BCH codes and systematic encoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .binpoly import BinPolynomial, _mod, bits_to_int, int_to_bits, lcm
from .gf2m import FieldTables, build_field, default_field, minimal_polynomial

__all__ = ["BchCode", "construct_bch", "encode_systematic", "is_codeword"]


@dataclass(frozen=True)
class BchCode:
    """Narrow- or wide-sense binary BCH code of length n = 2^s - 1.

    The generator is the lcm of the minimal polynomials of zeta^c, ...,
    zeta^(c + delta - 2).
    """

    s: int
    c: int
    delta: int
    g: BinPolynomial
    field: FieldTables = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return (1 << self.s) - 1

    @property
    def r(self) -> int:
        return self.g.degree

    @property
    def k(self) -> int:
        return self.n - self.r

    # shared names with ChainCode so the codec can treat both alike
    @property
    def length(self) -> int:
        return self.n

    @property
    def dimension(self) -> int:
        return self.k

    @property
    def generator(self) -> BinPolynomial:
        return self.g

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def level(self) -> int:
        return 0

    @property
    def label(self) -> str:
        return f"({self.n},{self.k})"


def construct_bch(s: int, c: int = 1, delta: int = 3, prim_poly=None) -> BchCode:
    if s < 2:
        raise ValueError(f"field degree s must be >= 2, got {s}")
    n = (1 << s) - 1
    if not 2 <= delta <= n:
        raise ValueError(f"delta out of range: need 2 <= delta <= {n}, got {delta}")
    if c < 1:
        raise ValueError(f"offset c must be >= 1, got {c}")
    t = default_field(s) if prim_poly is None else build_field(s, prim_poly)

    g = BinPolynomial(1)
    for i in range(c, c + delta - 1):
        # lcm absorbs repeats from shared cyclotomic cosets
        g = lcm(g, minimal_polynomial(i % n, t))
    if _mod((1 << n) | 1, g.value):
        raise ArithmeticError(f"generator {g} does not divide x^{n} - 1")
    if g.degree >= n:
        raise ValueError(f"parameters s={s}, c={c}, delta={delta} leave no message bits (k <= 0)")
    return BchCode(s=s, c=c, delta=delta, g=g, field=t)


def _check_len(word, length: int, what: str) -> int:
    arr = np.asarray(word)
    if isinstance(word, str):
        if len(word) != length:
            raise ValueError(f"{what} length {len(word)} != {length}")
    elif arr.size != length:
        raise ValueError(f"{what} length {arr.size} != {length}")
    return bits_to_int(word)


def encode_systematic(code: BchCode, message) -> np.ndarray:
    """Systematic encoding v(x) = (x^(n-k) m(x) mod g) + x^(n-k) m(x).

    The message sits in the top k positions, parity in the bottom n-k.
    """
    m = _check_len(message, code.k, "message")
    shifted = m << code.r
    return int_to_bits(shifted ^ _mod(shifted, code.g.value), code.n)


def is_codeword(code: BchCode, word) -> bool:
    w = _check_len(word, code.n, "word")
    return _mod(w, code.g.value) == 0
