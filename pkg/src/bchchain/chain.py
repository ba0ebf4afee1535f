"""The chain {C^j} of binary cyclic codes grown from a seed BCH code.

Level j has length N_j = 2^(j-1) (n+1) n and generator G_j(y) = g(y^(2^j)).
All maps between levels are exponent scalings on integer bit masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bch import BchCode, _check_len
from .binpoly import BinPolynomial, _spread, int_to_bits, powmod

__all__ = [
    "DEFAULT_MAX_LENGTH",
    "NonEmbeddedSupport",
    "ChainCode",
    "derive_code",
    "derive_chain",
    "rate_table",
    "embed_bch",
    "project_bch",
    "chain_embed",
]

DEFAULT_MAX_LENGTH = 1 << 20


class NonEmbeddedSupport(ValueError):
    """A chain word has support off the embedded grid of the seed code."""


@dataclass(frozen=True)
class ChainCode:
    j: int
    seed: BchCode
    generator: BinPolynomial

    @property
    def n_prime(self) -> int:
        return (self.seed.n + 1) * self.seed.n

    @property
    def length(self) -> int:
        return (1 << (self.j - 1)) * self.n_prime

    @property
    def redundancy(self) -> int:
        return (1 << self.j) * self.seed.r

    @property
    def dimension(self) -> int:
        return self.length - self.redundancy

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dimension, self.length)

    @property
    def level(self) -> int:
        return self.j

    @property
    def scale(self) -> int:
        """Exponent multiplier 2^j of the seed-to-level embedding."""
        return 1 << self.j

    @property
    def label(self) -> str:
        return f"({self.length},{self.dimension})"


def derive_code(seed: BchCode, j: int, max_length: int | None = DEFAULT_MAX_LENGTH) -> ChainCode:
    if j < 1:
        raise ValueError(f"chain level must be >= 1, got {j}")
    length = (1 << (j - 1)) * (seed.n + 1) * seed.n
    if max_length is not None and length > max_length:
        raise ValueError(f"level {j} has length {length} beyond the bound {max_length}")
    G = BinPolynomial(_spread(seed.g.value, 1 << j))
    # y^N = 1 mod G  <=>  G | y^N - 1
    if powmod(BinPolynomial(2), length, G).value != 1:
        raise ArithmeticError(f"G_{j} = {G.format('y')} does not divide y^{length} - 1")
    return ChainCode(j=j, seed=seed, generator=G)


def derive_chain(seed: BchCode, j_max: int, max_length: int | None = DEFAULT_MAX_LENGTH) -> list[ChainCode]:
    return [derive_code(seed, j, max_length) for j in range(1, j_max + 1)]


def rate_table(seed: BchCode, j_max: int) -> list[Fraction]:
    """[R_0, R_1, ..., R_jmax] as exact fractions, straight from the closed forms."""
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    n, r = seed.n, seed.r
    n_prime = (n + 1) * n
    rates = [Fraction(n - r, n)]
    for j in range(1, j_max + 1):
        N = (1 << (j - 1)) * n_prime
        rates.append(Fraction(N - (1 << j) * r, N))
    return rates


def embed_bch(seed_word, target: ChainCode) -> np.ndarray:
    """Lift a length-n word: coefficient at x^i moves to y^(2^j i)."""
    w = _check_len(seed_word, target.seed.n, "seed word")
    return int_to_bits(_spread(w, target.scale), target.length)


def _project_int(w: int, scale: int, n: int) -> int:
    out = 0
    e = 0
    while w:
        if w & 1:
            if e % scale or e // scale >= n:
                raise NonEmbeddedSupport(
                    f"nonzero coefficient at exponent {e} is outside the embedded grid "
                    f"(multiples of {scale} up to {scale * (n - 1)})"
                )
            out |= 1 << (e // scale)
        w >>= 1
        e += 1
    return out


def project_bch(chain_word, source: ChainCode) -> np.ndarray:
    w = _check_len(chain_word, source.length, "chain word")
    return int_to_bits(_project_int(w, source.scale, source.seed.n), source.seed.n)


def restrict_to_grid(chain_word, source: ChainCode) -> np.ndarray:
    """Read the n grid positions 2^j i of a chain word, ignoring everything else.

    Unlike :func:`project_bch` this never fails; it is what a receiver that
    knows the sender rode the embedded subcode can do with a noisy word.
    """
    arr = np.asarray(chain_word, dtype=np.uint8)
    if arr.size != source.length:
        raise ValueError(f"chain word length {arr.size} != {source.length}")
    return arr[:: source.scale][: source.seed.n].copy()


def chain_embed(word, source: ChainCode) -> np.ndarray:
    """Carry a level-j word into level j+1 by doubling exponents."""
    w = _check_len(word, source.length, "chain word")
    return int_to_bits(_spread(w, 2), 2 * source.length)
