"""Bandwidth planning: W = w * R_u / (m * R), in exact rational arithmetic."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bch import BchCode
from .chain import rate_table

__all__ = [
    "ModulationScheme",
    "LinkBudget",
    "BandwidthRow",
    "PRINTED_VALUES",
    "required_bandwidth",
    "bandwidth_extrema",
    "bandwidth_table",
    "saving_ratio",
    "total_spectrum",
    "format_khz",
    "table_to_csv",
    "table_from_csv",
    "format_table",
]

STANDARD_LABELS = {1: "BPSK", 2: "QPSK", 3: "8PSK", 4: "16QAM", 6: "64QAM"}

# Values printed for the (3,1) seed with w = 1.2, R_u = 64 kbps, keyed by m.
# They do not follow from the formula; kept only for side-by-side audit.
PRINTED_VALUES: dict[int, dict[str, tuple[float, ...]]] = {
    1: {"table": (236.4, 118.2)},
    3: {"table": (78.8, 39.4), "worked_example": (69.78, 34.89)},
}


def _frac(x) -> Fraction:
    if isinstance(x, float):
        # 1.2 should mean 6/5, not the binary float nearest to it
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class ModulationScheme:
    m: int
    label: str = ""

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"bits per symbol must be a positive integer, got {self.m}")
        if not self.label:
            object.__setattr__(self, "label", STANDARD_LABELS.get(self.m, f"{2 ** self.m}-ary"))


@dataclass(frozen=True)
class LinkBudget:
    """Source rate ``ru`` in kbps and bandwidth-expansion factor ``w``."""

    ru: Fraction
    w: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "ru", _frac(self.ru))
        object.__setattr__(self, "w", _frac(self.w))
        if self.ru <= 0 or self.w <= 0:
            raise ValueError("R_u and w must both be positive")


def _mod_bits(mod) -> int:
    return mod.m if isinstance(mod, ModulationScheme) else int(mod)


def required_bandwidth(budget: LinkBudget, mod, rate) -> Fraction:
    """Bandwidth in kHz for a code of the given rate."""
    R = _frac(rate)
    if not 0 < R <= 1:
        raise ValueError(f"code rate must satisfy 0 < R <= 1, got {R}")
    m = _mod_bits(mod)
    if m < 1:
        raise ValueError("bits per symbol must be >= 1")
    return budget.w * budget.ru / (m * R)


def bandwidth_extrema(budget: LinkBudget, m_min, m_max, r_min, r_max) -> tuple[Fraction, Fraction]:
    """(W_max, W_min): the largest bandwidth pairs the sparsest modulation with the lowest rate."""
    m_min, m_max = _mod_bits(m_min), _mod_bits(m_max)
    r_min, r_max = _frac(r_min), _frac(r_max)
    if m_min > m_max:
        raise ValueError("m_min must not exceed m_max")
    if r_min > r_max:
        raise ValueError("R_min must not exceed R_max")
    return required_bandwidth(budget, m_min, r_min), required_bandwidth(budget, m_max, r_max)


def saving_ratio(seed: BchCode) -> Fraction:
    """W^j / W^0 = R_0 / R_j, the same for every level j."""
    r0, r1 = rate_table(seed, 1)
    return r0 / r1


def total_spectrum(j0: int, chain_bandwidth, seed_bandwidth) -> Fraction:
    """Spectrum held when j0 chain primaries and the seed user all transmit."""
    return j0 * _frac(chain_bandwidth) + _frac(seed_bandwidth)


@dataclass(frozen=True)
class BandwidthRow:
    m: int
    label: str
    w0: Fraction
    chain: tuple[Fraction, ...]
    saving_ratio: Fraction
    printed: tuple[float, ...] | None = field(default=None, compare=False)


def bandwidth_table(
    seed: BchCode, j_max: int, budget: LinkBudget, mods: Sequence
) -> list[BandwidthRow]:
    rates = rate_table(seed, j_max)
    rows = []
    for mod in mods:
        if not isinstance(mod, ModulationScheme):
            mod = ModulationScheme(int(mod))
        w0 = required_bandwidth(budget, mod, rates[0])
        chain = tuple(required_bandwidth(budget, mod, r) for r in rates[1:])
        printed = None
        if (seed.n, seed.k) == (3, 1) and budget == LinkBudget(64, Fraction(6, 5)):
            printed = PRINTED_VALUES.get(mod.m, {}).get("table")
        rows.append(BandwidthRow(mod.m, mod.label, w0, chain, chain[0] / w0, printed))
    return rows


def format_khz(x: Fraction) -> str:
    return f"{float(x):.1f}"


def _header(j_max: int) -> list[str]:
    return ["m", "label", "W0"] + [f"W{j}" for j in range(1, j_max + 1)] + ["saving_ratio"]


def table_to_csv(rows: list[BandwidthRow]) -> str:
    """Exact values as fractions (``1152/5``) so the CSV round-trips."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    j_max = len(rows[0].chain) if rows else 0
    writer.writerow(_header(j_max))
    for r in rows:
        writer.writerow([r.m, r.label, str(r.w0), *map(str, r.chain), str(r.saving_ratio)])
    return buf.getvalue()


def table_from_csv(text: str) -> list[BandwidthRow]:
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for rec in reader:
        chain_keys = sorted((k for k in rec if k.startswith("W") and k != "W0"), key=lambda k: int(k[1:]))
        rows.append(
            BandwidthRow(
                m=int(rec["m"]),
                label=rec["label"],
                w0=Fraction(rec["W0"]),
                chain=tuple(Fraction(rec[k]) for k in chain_keys),
                saving_ratio=Fraction(rec["saving_ratio"]),
            )
        )
    return rows


def format_table(rows: list[BandwidthRow], printed: bool = False) -> str:
    """Aligned text table with kHz values to one decimal."""
    if not rows:
        return ""
    j_max = len(rows[0].chain)
    header = ["m", "label", "W0 kHz"] + [f"W{j} kHz" for j in range(1, j_max + 1)] + ["W^j/W0"]
    body = []
    for r in rows:
        cells = [str(r.m), r.label, format_khz(r.w0), *(format_khz(x) for x in r.chain), str(r.saving_ratio)]
        if printed:
            if r.printed is not None:
                cells[2] += f" (printed {r.printed[0]})"
                cells[3:3 + j_max] = [c + f" (printed {r.printed[1]})" for c in cells[3:3 + j_max]]
            else:
                cells[2] += " (no printed value)"
        body.append(cells)
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(row, widths)) for row in [header] + body]
    return "\n".join(lines)
