"""
Counter-based uniform source.

Every draw is Philox4x32-10 evaluated at counter (draw_index, stream_id) under
the 64-bit master seed as key, so a value depends only on
(seed, stream_id, draw_index). Per-index streams give parallel and sequential
runs the same bid vectors.
"""
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

PHILOX_M4x32_0 = 0xD2511F53
PHILOX_M4x32_1 = 0xCD9E8D57
PHILOX_W32_0 = 0x9E3779B9
PHILOX_W32_1 = 0xBB67AE85
PHILOX_ROUNDS = 10

MASK32 = 0xFFFFFFFF
MASK64 = (1 << 64) - 1
UNIT_53 = 2.0 ** -53

# Stream ids at and above this are reserved for write-conflict resolution.
CONFLICT_STREAM_BASE = 1 << 63

_M0 = np.uint64(PHILOX_M4x32_0)
_M1 = np.uint64(PHILOX_M4x32_1)
_MASK32 = np.uint64(MASK32)
_SHIFT32 = np.uint64(32)
_SHIFT11 = np.uint64(11)


class RngSeed(BaseModel):
    """64-bit master seed."""
    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(ge=0, le=MASK64)


SeedLike = Union[int, RngSeed]


def seed_value(seed: SeedLike) -> int:
    if isinstance(seed, RngSeed):
        return seed.master_seed
    return RngSeed(master_seed=seed).master_seed


def conflict_stream_id(trial: int) -> int:
    return CONFLICT_STREAM_BASE + trial


def philox4x32(counter: Tuple[int, int, int, int], key: Tuple[int, int]) -> Tuple[int, int, int, int]:
    """Philox4x32-10 block function on Python ints."""
    c0, c1, c2, c3 = counter
    k0, k1 = key
    for r in range(PHILOX_ROUNDS):
        if r:
            k0 = (k0 + PHILOX_W32_0) & MASK32
            k1 = (k1 + PHILOX_W32_1) & MASK32
        prod0 = c0 * PHILOX_M4x32_0
        prod1 = c2 * PHILOX_M4x32_1
        hi0, lo0 = prod0 >> 32, prod0 & MASK32
        hi1, lo1 = prod1 >> 32, prod1 & MASK32
        c0, c1, c2, c3 = (hi1 ^ c1 ^ k0) & MASK32, lo1, (hi0 ^ c3 ^ k1) & MASK32, lo0
    return c0, c1, c2, c3


def philox4x32_array(c0, c1, c2, c3, k0: int, k1: int):
    """Philox4x32-10 over uint64 arrays holding 32-bit words."""
    for r in range(PHILOX_ROUNDS):
        if r:
            k0 = (k0 + PHILOX_W32_0) & MASK32
            k1 = (k1 + PHILOX_W32_1) & MASK32
        prod0 = c0 * _M0
        prod1 = c2 * _M1
        hi0, lo0 = prod0 >> _SHIFT32, prod0 & _MASK32
        hi1, lo1 = prod1 >> _SHIFT32, prod1 & _MASK32
        c0, c1, c2, c3 = hi1 ^ c1 ^ np.uint64(k0), lo1, hi0 ^ c3 ^ np.uint64(k1), lo0
    return c0, c1, c2, c3


def _key(seed: int) -> Tuple[int, int]:
    return seed & MASK32, (seed >> 32) & MASK32


def raw53(seed: int, stream_id: int, counter: int) -> int:
    """Top 53 bits of the first two Philox output words."""
    out = philox4x32(
        (counter & MASK32, (counter >> 32) & MASK32, stream_id & MASK32, (stream_id >> 32) & MASK32),
        _key(seed),
    )
    return ((out[0] << 32) | out[1]) >> 11


def raw53_array(seed: int, stream_ids: np.ndarray, counter: int) -> np.ndarray:
    streams = np.asarray(stream_ids, dtype=np.uint64)
    c0 = np.full(streams.shape, counter & MASK32, dtype=np.uint64)
    c1 = np.full(streams.shape, (counter >> 32) & MASK32, dtype=np.uint64)
    k0, k1 = _key(seed)
    w0, w1, _, _ = philox4x32_array(c0, c1, streams & _MASK32, streams >> _SHIFT32, k0, k1)
    return ((w0 << _SHIFT32) | w1) >> _SHIFT11


class UniformSource:
    """
    Stateful single-owner source for one (seed, stream_id).
    Do not share an instance between concurrent workers.
    """

    __slots__ = ("seed", "stream_id", "counter")

    def __init__(self, seed: int, stream_id: int, counter: int = 0):
        self.seed = seed
        self.stream_id = stream_id
        self.counter = counter

    def draw(self) -> float:
        """Next value in (0, 1); a zero raw value is rejected and redrawn."""
        while True:
            raw = raw53(self.seed, self.stream_id, self.counter)
            self.counter += 1
            if raw:
                return raw * UNIT_53

    def __repr__(self):
        return f"UniformSource(stream_id={self.stream_id}, counter={self.counter})"


def substream(seed: SeedLike, stream_id: int) -> UniformSource:
    """Source whose draws depend only on (seed, stream_id). Safe to call from any thread."""
    if stream_id < 0 or stream_id > MASK64:
        raise ValueError(f"stream_id out of range: {stream_id}")
    return UniformSource(seed_value(seed), stream_id)


def draw_open_unit(source: UniformSource) -> float:
    return source.draw()


def index_sources(seed: SeedLike, n: int, trial: int = 0) -> list:
    """One source per index for trial `trial` (stream id = trial * n + index)."""
    base = trial * n
    return [substream(seed, base + i) for i in range(n)]


def uniform_block(seed: SeedLike, stream_ids: Sequence[int], counter: int = 0) -> np.ndarray:
    """
    Draws at `counter` for many streams at once, with the same zero-rejection
    rule as UniformSource. With counter=0 this equals each fresh source's first draw.
    """
    s = seed_value(seed)
    streams = np.asarray(stream_ids, dtype=np.uint64)
    raw = raw53_array(s, streams, counter)
    zero = raw == 0
    step = counter
    while zero.any():
        step += 1
        logger.debug(f"Redrawing {int(zero.sum())} zero uniforms at counter {step}")
        raw[zero] = raw53_array(s, streams[zero], step)
        zero = raw == 0
    return raw.astype(np.float64) * UNIT_53


def trial_uniforms(seed: SeedLike, n: int, trial_start: int, trial_count: int,
                   indices: Optional[np.ndarray] = None) -> np.ndarray:
    """
    (trial_count, len(indices)) matrix of first draws for streams trial * n + index.
    `indices` defaults to all n; draws do not depend on which other streams are evaluated.
    """
    cols = np.arange(n, dtype=np.uint64) if indices is None else np.asarray(indices, dtype=np.uint64)
    ids = (np.arange(trial_start, trial_start + trial_count, dtype=np.uint64)[:, None] * np.uint64(n)
           + cols[None, :])
    return uniform_block(seed, ids.ravel()).reshape(trial_count, cols.size)
