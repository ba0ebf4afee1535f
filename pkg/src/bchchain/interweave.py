"""Slotted simulator for interweave access by a BCH user over chain channels.

Channel 0 is the seed user's own band (code C^0, bandwidth W^0).  Channels
1..j0 belong to primaries running C^1..C^j0, each at bandwidth W.  In every
slot the seed user senses the chain channels and, if one looks vacant, lifts
its BCH codeword into that channel's code and transmits there as a secondary;
otherwise it falls back to its own band.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bandwidth import LinkBudget, ModulationScheme, required_bandwidth
from .bch import BchCode, construct_bch
from .binpoly import _divmod, _spread
from .chain import ChainCode, NonEmbeddedSupport, _project_int, derive_code
from .codec import UnknownSyndrome, _decode_int, decoder_for

__all__ = [
    "ConfigError",
    "SimConfig",
    "SlotEvent",
    "SimMetrics",
    "Schedule",
    "parse_config",
    "load_config",
    "load_traces",
    "opportunity_schedule",
    "run_simulation",
    "summarize",
    "write_event_log",
    "read_event_log",
    "format_metrics",
    "parse_metrics",
    "metrics_to_json",
    "metrics_from_json",
]

OK, CORRECTED, FAILED = "ok", "corrected", "failed"
PRIMARY, SECONDARY, IDLE = "primary", "secondary", "idle"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    s: int = 2
    c: int = 1
    delta: int = 3
    prim_poly: str | None = None
    j0: int = 1
    slots: int = 1000
    # one activity probability per chain channel; a single value is broadcast
    occupancy: tuple[float, ...] = (0.5,)
    # boolean busy matrix, shape (j0, >= slots); overrides occupancy
    traces: np.ndarray | None = field(default=None, repr=False, compare=False)
    crossover: float = 0.0
    sensing_miss: float = 0.0
    sensing_false_alarm: float = 0.0
    ru: Fraction = Fraction(64)
    w: Fraction = Fraction(6, 5)
    m: int = 1
    modulation: str = ""
    rng_seed: int = 0
    p0_traffic: int = 1
    # "grid": read the embedded positions, then lift/decode/project
    # "full": syndrome-decode the whole received chain word, then project
    secondary_receiver: str = "grid"
    max_length: int = 1 << 20

    def __post_init__(self):
        occ = self.occupancy
        if isinstance(occ, (int, float)):
            occ = (float(occ),)
        occ = tuple(float(x) for x in occ)
        if len(occ) == 1:
            occ = occ * self.j0
        object.__setattr__(self, "occupancy", occ)
        if self.j0 < 1:
            raise ConfigError("j0 must be >= 1")
        if self.slots < 1:
            raise ConfigError("slots must be >= 1")
        if len(occ) != self.j0:
            raise ConfigError(f"occupancy lists {len(occ)} channels, expected j0 = {self.j0}")
        if any(not 0 <= x <= 1 for x in occ):
            raise ConfigError("occupancy probabilities must lie in [0, 1]")
        if not 0 <= self.crossover < 0.5:
            raise ConfigError("crossover must lie in [0, 1/2)")
        for name in ("sensing_miss", "sensing_false_alarm"):
            if not 0 <= getattr(self, name) <= 1:
                raise ConfigError(f"{name} must lie in [0, 1]")
        if self.p0_traffic < 1:
            raise ConfigError("p0_traffic must be >= 1")
        if self.secondary_receiver not in ("grid", "full"):
            raise ConfigError("secondary_receiver must be 'grid' or 'full'")
        if self.traces is not None:
            tr = np.asarray(self.traces, dtype=bool)
            if tr.ndim != 2 or tr.shape[0] != self.j0:
                raise ConfigError(f"traces must have shape (j0={self.j0}, T)")
            if tr.shape[1] < self.slots:
                raise ConfigError(f"traces cover {tr.shape[1]} slots, need {self.slots}")
            object.__setattr__(self, "traces", tr)

    def seed_code(self) -> BchCode:
        return construct_bch(self.s, self.c, self.delta, self.prim_poly)

    def budget(self) -> LinkBudget:
        return LinkBudget(self.ru, self.w)

    def modulation_scheme(self) -> ModulationScheme:
        return ModulationScheme(self.m, self.modulation)


_INT_KEYS = {"s", "c", "delta", "j0", "slots", "m", "rng_seed", "p0_traffic", "max_length"}
_FLOAT_KEYS = {"crossover", "sensing_miss", "sensing_false_alarm"}
_FRACTION_KEYS = {"ru", "w"}
_STR_KEYS = {"prim_poly", "modulation", "secondary_receiver"}


def parse_config(text: str, base_dir: Path | str | None = None, **overrides) -> SimConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    ``trace = path.csv`` loads a busy trace (columns slot, channel, busy)
    relative to ``base_dir``.
    """
    values: dict = {}
    trace_path = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _FRACTION_KEYS:
                values[key] = Fraction(value)
            elif key in _STR_KEYS:
                values[key] = value
            elif key == "occupancy":
                values[key] = tuple(float(x) for x in value.split(","))
            elif key == "trace":
                trace_path = value
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value!r} ({exc})") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    if trace_path is not None and "traces" not in values:
        p = Path(trace_path)
        if base_dir is not None and not p.is_absolute():
            p = Path(base_dir) / p
        values["traces"] = load_traces(p, values.get("j0", 1))
    try:
        return SimConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path, **overrides) -> SimConfig:
    path = Path(path)
    return parse_config(path.read_text(), base_dir=path.parent, **overrides)


def load_traces(path, j0: int) -> np.ndarray:
    """Read a busy trace CSV with columns slot, channel (1-based), busy."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ConfigError(f"{path}: empty trace")
    T = max(int(r["slot"]) for r in rows) + 1
    busy = np.zeros((j0, T), dtype=bool)
    for r in rows:
        ch = int(r["channel"])
        if not 1 <= ch <= j0:
            raise ConfigError(f"{path}: channel {ch} outside 1..{j0}")
        busy[ch - 1, int(r["slot"])] = r["busy"].strip() not in ("0", "")
    return busy


@dataclass
class SlotEvent:
    slot: int
    channel: int
    actor: str
    level: int = 0
    codewords: int = 0
    bits_sent: int = 0
    bit_errors: int = 0
    info_bits: int = 0
    info_bit_errors: int = 0
    word_errors: int = 0
    outcome: str = ""
    collision: bool = False
    bandwidth: Fraction = Fraction(0)
    baseline_bandwidth: Fraction = Fraction(0)


@dataclass
class SimMetrics:
    slots: int = 0
    utilization: dict[int, float] = field(default_factory=dict)
    secondary_throughput: float = 0.0
    p0_throughput: float = 0.0
    secondary_opportunities: int = 0
    secondary_word_error_rate: float = 0.0
    post_decode_ber: float = 0.0
    raw_ber: float = 0.0
    p0_bandwidth_secondary: float = 0.0
    p0_bandwidth_primary: float = 0.0
    bandwidth_saving: float = 0.0
    collisions: int = 0


@dataclass(frozen=True)
class Schedule:
    """Per-slot channel for the seed user (0 = own band) and collision flags."""

    assignment: np.ndarray
    collision: np.ndarray
    sensed_busy: np.ndarray


def opportunity_schedule(busy, sensing_miss: float = 0.0, sensing_false_alarm: float = 0.0, rng=None) -> Schedule:
    """Lowest-index channel sensed vacant, else the own band.

    A busy channel is misread as vacant with probability ``sensing_miss``; a
    vacant one is misread as busy with probability ``sensing_false_alarm``.
    """
    busy = np.atleast_2d(np.asarray(busy, dtype=bool))
    rng = np.random.default_rng(rng)
    u = rng.random(busy.shape)
    sensed = np.where(busy, u >= sensing_miss, u < sensing_false_alarm)
    vacant = ~sensed
    any_vacant = vacant.any(axis=0)
    assignment = np.where(any_vacant, vacant.argmax(axis=0) + 1, 0)
    cols = np.arange(busy.shape[1])
    collision = any_vacant & busy[np.maximum(assignment - 1, 0), cols]
    return Schedule(assignment=assignment, collision=collision, sensed_busy=sensed)


def _random_word(rng: np.random.Generator, k: int) -> int:
    if k == 0:
        return 0
    bits = rng.integers(0, 2, size=k, dtype=np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _bsc_mask(rng: np.random.Generator, n: int, p: float) -> int:
    flips = rng.random(n) < p
    return int.from_bytes(np.packbits(flips, bitorder="little").tobytes(), "little")


def _encode(code, message: int) -> int:
    red = code.length - code.dimension
    shifted = message << red
    return shifted ^ _divmod(shifted, code.generator.value)[1]


def _outcome(errors: int, failed: int) -> str:
    if failed:
        return FAILED
    return CORRECTED if errors else OK


class _Sim:
    def __init__(self, config: SimConfig):
        self.cfg = config
        self.seed = config.seed_code()
        self.chain: list[ChainCode] = [derive_code(self.seed, j, config.max_length) for j in range(1, config.j0 + 1)]
        self.seed_decoder = decoder_for(self.seed)
        self.chain_decoders = [decoder_for(code) for code in self.chain]
        budget, mod = config.budget(), config.modulation_scheme()
        self.w0 = required_bandwidth(budget, mod, self.seed.rate)
        self.wj = [required_bandwidth(budget, mod, code.rate) for code in self.chain]

    def primary(self, rng, slot: int, j: int, collided: bool) -> SlotEvent:
        code = self.chain[j - 1]
        H, table = self.chain_decoders[j - 1]
        K, red = code.dimension, code.length - code.dimension
        msg = _random_word(rng, K)
        sent = _encode(code, msg)
        noise = _bsc_mask(rng, code.length, self.cfg.crossover)
        try:
            decoded, _, _ = _decode_int(sent ^ noise, H, table)
        except UnknownSyndrome:
            decoded = sent ^ noise
        failed = collided or decoded != sent
        return SlotEvent(
            slot=slot, channel=j, actor=PRIMARY, level=j, codewords=1,
            bits_sent=code.length, bit_errors=noise.bit_count(),
            info_bits=K, info_bit_errors=0 if collided else ((decoded ^ sent) >> red).bit_count(),
            word_errors=int(failed), outcome=_outcome(noise, failed), collision=collided,
            bandwidth=self.wj[j - 1],
        )

    def p0(self, rng, slot: int, j: int, collided: bool) -> SlotEvent:
        seed, cfg = self.seed, self.cfg
        n, k, r = seed.n, seed.k, seed.r
        bits_sent = bit_errors = info_errors = word_errors = 0
        for _ in range(cfg.p0_traffic):
            sent = _encode(seed, _random_word(rng, k))
            if j == 0:
                noise = _bsc_mask(rng, n, cfg.crossover)
                bits_sent += n
                delivered, raw = self._own_band_receive(sent ^ noise)
            else:
                code = self.chain[j - 1]
                noise = _bsc_mask(rng, code.length, cfg.crossover)
                bits_sent += code.length
                delivered, raw = self._secondary_receive(_spread(sent, code.scale) ^ noise, code)
            bit_errors += noise.bit_count()
            if collided or delivered is None or delivered != sent:
                word_errors += 1
            if not collided:
                got = raw if delivered is None else delivered
                info_errors += ((got ^ sent) >> r).bit_count()
        return SlotEvent(
            slot=slot, channel=j, actor=SECONDARY if j else PRIMARY, level=j,
            codewords=cfg.p0_traffic, bits_sent=bits_sent, bit_errors=bit_errors,
            info_bits=k * cfg.p0_traffic, info_bit_errors=info_errors,
            word_errors=word_errors, outcome=_outcome(bit_errors, word_errors), collision=collided,
            bandwidth=self.wj[j - 1] if j else self.w0, baseline_bandwidth=self.w0,
        )

    @staticmethod
    def _grid_mask(code: ChainCode) -> int:
        return _spread((1 << code.seed.n) - 1, code.scale)

    def _own_band_receive(self, received: int) -> tuple[int | None, int]:
        H, table = self.seed_decoder
        try:
            return _decode_int(received, H, table)[0], received
        except UnknownSyndrome:
            return None, received

    def _secondary_receive(self, received: int, code: ChainCode) -> tuple[int | None, int]:
        """Decoded seed codeword (None on failure) and the raw grid readout."""
        n = code.seed.n
        H, table = self.chain_decoders[code.j - 1]
        on_grid = received & self._grid_mask(code)
        raw = _project_int(on_grid, code.scale, n)
        if self.cfg.secondary_receiver == "grid":
            # the sender rode the embedded subcode: off-grid positions carry nothing
            received = on_grid
        try:
            corrected = _decode_int(received, H, table)[0]
            return _project_int(corrected, code.scale, n), raw
        except (UnknownSyndrome, NonEmbeddedSupport):
            return None, raw


def run_simulation(config: SimConfig) -> tuple[SimMetrics, list[SlotEvent]]:
    sim = _Sim(config)
    occ_seq, sense_seq, traffic_seq = np.random.SeedSequence(config.rng_seed).spawn(3)
    T = config.slots
    if config.traces is not None:
        busy = config.traces[:, :T]
    else:
        occ_rng = np.random.default_rng(occ_seq)
        busy = occ_rng.random((config.j0, T)) < np.asarray(config.occupancy)[:, None]
    sched = opportunity_schedule(busy, config.sensing_miss, config.sensing_false_alarm, np.random.default_rng(sense_seq))
    rng = np.random.default_rng(traffic_seq)

    events: list[SlotEvent] = []
    for t in range(T):
        ride = int(sched.assignment[t])
        collided = bool(sched.collision[t])
        for j in range(1, config.j0 + 1):
            if busy[j - 1, t]:
                events.append(sim.primary(rng, t, j, collided and ride == j))
            elif ride != j:
                events.append(SlotEvent(slot=t, channel=j, actor=IDLE, level=j, outcome=OK))
        events.append(sim.p0(rng, t, ride, collided))
    return summarize(events, T), events


def summarize(events: list[SlotEvent], slots: int | None = None) -> SimMetrics:
    """Metrics computed from the event log alone."""
    if not events:
        return SimMetrics(slots=slots or 0)
    T = slots if slots is not None else max(e.slot for e in events) + 1
    channels = sorted({e.channel for e in events if e.channel > 0})
    used = {ch: set() for ch in channels}
    for e in events:
        if e.channel > 0 and e.actor != IDLE:
            used[e.channel].add(e.slot)
    sec = [e for e in events if e.actor == SECONDARY]
    p0 = [e for e in events if e.actor == SECONDARY or (e.actor == PRIMARY and e.channel == 0)]
    live = [e for e in events if e.actor != IDLE]
    clean = [e for e in live if not e.collision]

    def delivered(evs):
        return sum(e.info_bits for e in evs if e.outcome != FAILED)

    info = sum(e.info_bits for e in clean)
    sent = sum(e.bits_sent for e in live)
    sec_words = sum(e.codewords for e in sec)
    w_sec = float(sum(e.bandwidth for e in sec) / len(sec)) if sec else 0.0
    w0 = float(max((e.baseline_bandwidth for e in p0), default=0))
    return SimMetrics(
        slots=T,
        utilization={ch: len(used[ch]) / T for ch in channels},
        secondary_throughput=delivered(sec) / T,
        p0_throughput=delivered(p0) / T,
        secondary_opportunities=len(sec),
        secondary_word_error_rate=sum(e.word_errors for e in sec) / sec_words if sec_words else 0.0,
        post_decode_ber=sum(e.info_bit_errors for e in clean) / info if info else 0.0,
        raw_ber=sum(e.bit_errors for e in live) / sent if sent else 0.0,
        p0_bandwidth_secondary=w_sec,
        p0_bandwidth_primary=w0,
        bandwidth_saving=1 - w_sec / w0 if sec and w0 else 0.0,
        collisions=sum(1 for e in sec if e.collision),
    )


# -- serialization ----------------------------------------------------

_EVENT_FIELDS = [f.name for f in fields(SlotEvent)]


def write_event_log(events: list[SlotEvent]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_EVENT_FIELDS)
    for e in events:
        row = asdict(e)
        row["collision"] = int(e.collision)
        writer.writerow([str(row[k]) for k in _EVENT_FIELDS])
    return buf.getvalue()


def read_event_log(text: str) -> list[SlotEvent]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(
            SlotEvent(
                slot=int(rec["slot"]), channel=int(rec["channel"]), actor=rec["actor"],
                level=int(rec["level"]), codewords=int(rec["codewords"]),
                bits_sent=int(rec["bits_sent"]), bit_errors=int(rec["bit_errors"]),
                info_bits=int(rec["info_bits"]), info_bit_errors=int(rec["info_bit_errors"]),
                word_errors=int(rec["word_errors"]), outcome=rec["outcome"],
                collision=rec["collision"] == "1",
                bandwidth=Fraction(rec["bandwidth"]), baseline_bandwidth=Fraction(rec["baseline_bandwidth"]),
            )
        )
    return out


def _flat_metrics(m: SimMetrics) -> dict:
    d = asdict(m)
    util = d.pop("utilization")
    for ch, u in sorted(util.items()):
        d[f"utilization_{ch}"] = u
    return d


def format_metrics(m: SimMetrics) -> str:
    return "".join(f"{k} = {v!r}\n" for k, v in _flat_metrics(m).items())


def _unflatten(d: dict) -> SimMetrics:
    util = {}
    kw = {}
    types = {f.name: f.type for f in fields(SimMetrics)}
    for k, v in d.items():
        if k.startswith("utilization_"):
            util[int(k.split("_", 1)[1])] = float(v)
        elif k in types:
            kw[k] = int(v) if types[k] == "int" else float(v)
        else:
            raise ValueError(f"unknown metric {k!r}")
    return SimMetrics(utilization=util, **kw)


def parse_metrics(text: str) -> SimMetrics:
    d = {}
    for line in text.splitlines():
        if line.strip():
            k, v = (p.strip() for p in line.split("=", 1))
            d[k] = v
    return _unflatten(d)


def metrics_to_json(m: SimMetrics) -> str:
    return json.dumps(_flat_metrics(m), sort_keys=True)


def metrics_from_json(text: str) -> SimMetrics:
    return _unflatten(json.loads(text))
