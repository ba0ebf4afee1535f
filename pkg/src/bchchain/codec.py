"""Matrices, syndrome tables and syndrome decoding for cyclic codes.

Works for both the seed :class:`~bchchain.bch.BchCode` and any
:class:`~bchchain.chain.ChainCode`; both expose ``length``, ``dimension``
and ``generator``.

Syndromes are stored as ints whose bit ``i`` is the dot product of the word
with parity-check row ``i``; printed index-0-leftmost this gives the familiar
``1010`` style.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bch import _check_len
from .binpoly import BinPolynomial, _divmod, _spread, format_bitstring, int_to_bits
from .chain import ChainCode, _project_int

__all__ = [
    "MAX_TABLE_REDUNDANCY",
    "UnknownSyndrome",
    "IncompleteTableWarning",
    "GeneratorMatrix",
    "ParityCheckMatrix",
    "SyndromeTable",
    "ChainDecodeResult",
    "generator_matrix",
    "check_polynomial",
    "parity_check_matrix",
    "syndrome",
    "build_syndrome_table",
    "syndrome_decode",
    "decode_via_chain",
    "trace_decode_via_chain",
    "decoder_for",
    "gf2_rank",
    "minimum_distance",
]

MAX_TABLE_REDUNDANCY = 24
MAX_DISTANCE_ENUMERATION = 1 << 20


class UnknownSyndrome(KeyError):
    """The syndrome has no coset leader in an incomplete table."""


class IncompleteTableWarning(UserWarning):
    pass


def _rows_to_masks(rows: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(rows.reshape(len(rows), -1), axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


@dataclass(frozen=True)
class GeneratorMatrix:
    rows: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.shape

    @property
    def masks(self) -> tuple[int, ...]:
        return _rows_to_masks(self.rows)


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.uint8)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_masks", _rows_to_masks(rows))
        cols = []
        for c in range(rows.shape[1]):
            v = 0
            for i in range(rows.shape[0]):
                if rows[i, c]:
                    v |= 1 << i
            cols.append(v)
        object.__setattr__(self, "_columns", tuple(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.shape

    @property
    def length(self) -> int:
        return self.rows.shape[1]

    @property
    def redundancy(self) -> int:
        return self.rows.shape[0]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def column_syndromes(self) -> tuple[int, ...]:
        return self._columns

    def syndrome_of(self, word: int) -> int:
        s = 0
        for i, row in enumerate(self._masks):
            s |= ((word & row).bit_count() & 1) << i
        return s


def generator_matrix(code) -> GeneratorMatrix:
    N, K = code.length, code.dimension
    g = code.generator.value
    return GeneratorMatrix(np.stack([int_to_bits(g << i, N) for i in range(K)]))


def check_polynomial(code) -> BinPolynomial:
    N = code.length
    h, rem = _divmod((1 << N) | 1, code.generator.value)
    if rem:
        raise ArithmeticError(f"generator does not divide y^{N} - 1")
    return BinPolynomial(h)


def parity_check_matrix(code) -> ParityCheckMatrix:
    """Rows are shifts of the reciprocal check polynomial y^K h(1/y)."""
    N, K = code.length, code.dimension
    h_rec = check_polynomial(code).reciprocal(K).value
    return ParityCheckMatrix(np.stack([int_to_bits(h_rec << i, N) for i in range(N - K)]))


def syndrome(word, H: ParityCheckMatrix) -> np.ndarray:
    w = _check_len(word, H.length, "word")
    return int_to_bits(H.syndrome_of(w), H.redundancy)


@dataclass(frozen=True, eq=False)
class SyndromeTable:
    length: int
    redundancy: int
    leaders: dict[int, int] = field(repr=False)
    complete: bool = False

    def __len__(self) -> int:
        return len(self.leaders)

    def __contains__(self, s: int) -> bool:
        return s in self.leaders

    def leader(self, s: int) -> int:
        try:
            return self.leaders[s]
        except KeyError:
            raise UnknownSyndrome(
                f"syndrome {format_bitstring(s, self.redundancy)} has no coset leader in this table"
            ) from None

    def entries(self) -> list[tuple[str, str]]:
        """(leader, syndrome) bit-strings ordered by leader weight then support."""
        def key(item):
            mask = item[1]
            return (mask.bit_count(), [i for i in range(self.length) if (mask >> i) & 1])

        return [
            (format_bitstring(m, self.length), format_bitstring(s, self.redundancy))
            for s, m in sorted(self.leaders.items(), key=key)
        ]


def build_syndrome_table(
    H: ParityCheckMatrix, max_weight: int | None = None, force: bool = False
) -> SyndromeTable:
    """Coset leaders by increasing weight, lowest-positions-first on ties.

    Rather than walking all C(N, w) patterns, weight-w leaders are grown from
    weight-(w-1) leaders by appending one position above their largest. The
    lexicographically smallest minimum-weight support of a syndrome always
    arises this way from the smallest support of the syndrome one column
    back, so the result equals brute-force enumeration in
    ``itertools.combinations`` order.
    """
    N, red = H.length, H.redundancy
    if red > MAX_TABLE_REDUNDANCY and not force:
        raise ValueError(f"table would hold 2^{red} entries; pass force=True to build anyway")
    if max_weight is None:
        max_weight = N
    cols = H.column_syndromes
    total = 1 << red
    leaders = {0: 0}
    frontier: dict[int, tuple[int, ...]] = {0: ()}
    w = 0
    while len(leaders) < total and frontier and w < max_weight:
        w += 1
        nxt: dict[int, tuple[int, ...]] = {}
        for s0, support in frontier.items():
            start = support[-1] + 1 if support else 0
            for i in range(start, N):
                s = s0 ^ cols[i]
                if s in leaders:
                    continue
                cand = support + (i,)
                best = nxt.get(s)
                if best is None or cand < best:
                    nxt[s] = cand
        for s, support in nxt.items():
            mask = 0
            for i in support:
                mask |= 1 << i
            leaders[s] = mask
        frontier = nxt
    complete = len(leaders) == total
    if not complete:
        warnings.warn(
            f"syndrome table incomplete: {len(leaders)} of {total} cosets after weight {w}",
            IncompleteTableWarning,
            stacklevel=2,
        )
    return SyndromeTable(length=N, redundancy=red, leaders=leaders, complete=complete)


def _decode_int(w: int, H: ParityCheckMatrix, table: SyndromeTable) -> tuple[int, int, int]:
    s = H.syndrome_of(w)
    e = table.leader(s)
    return w ^ e, s, e


def syndrome_decode(received, H: ParityCheckMatrix, table: SyndromeTable) -> np.ndarray:
    w = _check_len(received, H.length, "received word")
    corrected, _, _ = _decode_int(w, H, table)
    return int_to_bits(corrected, H.length)


@lru_cache(maxsize=64)
def decoder_for(code) -> tuple[ParityCheckMatrix, SyndromeTable]:
    """Parity-check matrix and complete syndrome table for a code, memoized."""
    H = parity_check_matrix(code)
    return H, build_syndrome_table(H)


@dataclass(frozen=True)
class ChainDecodeResult:
    received: str
    lifted: str
    syndrome: str
    leader: str
    corrected: str
    projected: str


def trace_decode_via_chain(received_bch, target: ChainCode, H=None, table=None) -> ChainDecodeResult:
    """Lift, syndrome-decode in the chain code, project back; keep every stage."""
    n, N = target.seed.n, target.length
    b = _check_len(received_bch, n, "received word")
    if H is None or table is None:
        H, table = decoder_for(target)
    lifted = _spread(b, target.scale)
    corrected, s, e = _decode_int(lifted, H, table)
    projected = _project_int(corrected, target.scale, n)
    return ChainDecodeResult(
        received=format_bitstring(b, n),
        lifted=format_bitstring(lifted, N),
        syndrome=format_bitstring(s, H.redundancy),
        leader=format_bitstring(e, N),
        corrected=format_bitstring(corrected, N),
        projected=format_bitstring(projected, n),
    )


def decode_via_chain(received_bch, target: ChainCode, H=None, table=None) -> np.ndarray:
    res = trace_decode_via_chain(received_bch, target, H, table)
    return np.array([int(ch) for ch in res.projected], dtype=np.uint8)


def gf2_rank(rows) -> int:
    basis: dict[int, int] = {}  # leading bit -> reduced row
    for m in _rows_to_masks(np.asarray(rows, dtype=np.uint8)):
        while m:
            top = m.bit_length() - 1
            if top not in basis:
                basis[top] = m
                break
            m ^= basis[top]
    return len(basis)


def minimum_distance(code, cap: int = MAX_DISTANCE_ENUMERATION) -> int | None:
    """Minimum weight over all nonzero codewords, or None if 2^K exceeds ``cap``."""
    K = code.dimension
    if (1 << K) > cap:
        return None
    g = code.generator.value
    rows = [g << i for i in range(K)]
    best = None
    word = 0
    # Gray-code walk: one row toggled per step
    for step in range(1, 1 << K):
        word ^= rows[(step & -step).bit_length() - 1]
        wt = word.bit_count()
        if best is None or wt < best:
            best = wt
    return best
