"""Arithmetic in GF(2^s) = GF(2)[x]/(p(x)) via log/antilog tables.

Elements are s-bit integers: bit k is the coefficient of zeta^k, where zeta
is the class of x, a root of the primitive polynomial p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binpoly import BinPolynomial, _mod, _mul

__all__ = [
    "DEFAULT_PRIMITIVE_POLYNOMIALS",
    "NotPrimitiveError",
    "FieldTables",
    "build_field",
    "default_field",
    "is_primitive",
    "mul",
    "cyclotomic_coset",
    "cyclotomic_cosets",
    "minimal_polynomial",
]

# One primitive polynomial per degree; each is re-verified by build_field.
DEFAULT_PRIMITIVE_POLYNOMIALS: dict[int, int] = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class NotPrimitiveError(ValueError):
    """The supplied polynomial does not generate the full multiplicative group."""


def _cycle_length(p: int, s: int) -> int:
    """Multiplicative order of x modulo p, or 0 if x never returns to 1."""
    order = (1 << s) - 1
    a = 1
    for k in range(1, order + 1):
        a <<= 1
        if a >> s:
            a ^= p
        if a == 1:
            return k
        if a == 0:
            return 0
    return 0


def is_primitive(p, s: int | None = None) -> bool:
    """Exhaustive primitivity check: x must have order exactly 2^s - 1 mod p."""
    p = int(p.value if isinstance(p, BinPolynomial) else p)
    deg = p.bit_length() - 1
    if s is None:
        s = deg
    if deg != s or s < 1 or not p & 1:
        return False
    return _cycle_length(p, s) == (1 << s) - 1


@dataclass(frozen=True)
class FieldTables:
    s: int
    prim_poly: BinPolynomial
    # exp is stored twice over so log[a] + log[b] indexes without a modulo
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^s - 1."""
        return (1 << self.s) - 1

    @property
    def size(self) -> int:
        return 1 << self.s

    def power(self, e: int) -> int:
        """zeta^e."""
        return self.exp[e % self.order]

    def elements(self) -> list[int]:
        return list(range(self.size))

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^s)")
        return self.exp[(self.order - self.log[a]) % self.order]

    def __hash__(self):
        return hash((self.s, self.prim_poly))

    def __eq__(self, other):
        return isinstance(other, FieldTables) and (self.s, self.prim_poly) == (other.s, other.prim_poly)


def build_field(s: int, prim_poly=None) -> FieldTables:
    if s < 2:
        raise ValueError(f"field degree s must be >= 2, got {s}")
    if s > 16:
        raise ValueError(f"field degree s must be <= 16 for table arithmetic, got {s}")
    if prim_poly is None:
        prim_poly = DEFAULT_PRIMITIVE_POLYNOMIALS[s]
    if isinstance(prim_poly, str):
        prim_poly = BinPolynomial.parse(prim_poly)
    p = BinPolynomial(int(prim_poly.value if isinstance(prim_poly, BinPolynomial) else prim_poly))
    if p.degree != s:
        raise ValueError(f"primitive polynomial {p} has degree {p.degree}, expected {s}")
    if not p.value & 1:
        raise NotPrimitiveError(f"{p} has zero constant term")

    order = (1 << s) - 1
    exp = [0] * (2 * order)
    log = [0] * (1 << s)
    a = 1
    for k in range(order):
        if k > 0 and a == 1:
            raise NotPrimitiveError(f"{p} is not primitive: cycle length {k} < {order}")
        exp[k] = a
        log[a] = k
        a <<= 1
        if a >> s:
            a ^= p.value
        if a == 0:
            raise NotPrimitiveError(f"{p} is reducible")
    if a != 1:
        raise NotPrimitiveError(f"{p} is not primitive")
    for k in range(order, 2 * order):
        exp[k] = exp[k - order]
    return FieldTables(s=s, prim_poly=p, exp=tuple(exp), log=tuple(log))


_DEFAULT_CACHE: dict[int, FieldTables] = {}


def default_field(s: int) -> FieldTables:
    if s not in _DEFAULT_CACHE:
        _DEFAULT_CACHE[s] = build_field(s)
    return _DEFAULT_CACHE[s]


def mul(a: int, b: int, t: FieldTables) -> int:
    if a == 0 or b == 0:
        return 0
    return t.exp[t.log[a] + t.log[b]]


def mul_direct(a: int, b: int, t: FieldTables) -> int:
    """Schoolbook product reduced mod p; the table-free reference path."""
    return _mod(_mul(a, b), t.prim_poly.value)


def cyclotomic_coset(i: int, n: int) -> list[int]:
    """The 2-cyclotomic coset {i, 2i, 4i, ...} mod n, in generation order."""
    i %= n
    coset = [i]
    e = (2 * i) % n
    while e != i:
        coset.append(e)
        e = (2 * e) % n
    return coset


def cyclotomic_cosets(n: int) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i not in seen:
            c = cyclotomic_coset(i, n)
            seen.update(c)
            out.append(c)
    return out


def evaluate(poly, a: int, t: FieldTables) -> int:
    """Evaluate a binary polynomial at a field element (Horner)."""
    v = poly.value if isinstance(poly, BinPolynomial) else int(poly)
    acc = 0
    for e in range(v.bit_length() - 1, -1, -1):
        acc = mul(acc, a, t) ^ ((v >> e) & 1)
    return acc


def minimal_polynomial(i: int, t: FieldTables) -> BinPolynomial:
    """Minimal polynomial over GF(2) of zeta^i.

    Expands prod (x - zeta^e) over the cyclotomic coset of i with coefficients
    in GF(2^s); the result must come out binary.
    """
    if not 0 <= i <= t.order - 1:
        raise ValueError(f"exponent {i} out of range 0..{t.order - 1}")
    coeffs = [1]  # ascending, field elements
    for e in cyclotomic_coset(i, t.order):
        root = t.power(e)
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] ^= c
            nxt[k] ^= mul(c, root, t)
        coeffs = nxt
    v = 0
    for k, c in enumerate(coeffs):
        if c not in (0, 1):
            raise ArithmeticError(f"non-binary coefficient in minimal polynomial of zeta^{i}")
        v |= c << k
    return BinPolynomial(v)
