"""Bit-string genomes, the evaluated-individual container, and seeded randomness.

Genomes are fixed-length bit vectors packed into a single Python int (bit i of
``value`` is position i), which makes popcounts, Hamming distances and mask
operations cheap enough for runs with 10^7+ fitness evaluations. Semantically a
BitString is just the sequence of its n bits.

All randomness flows through :class:`RngStream`, a thin buffered wrapper around
numpy's PCG64. Equal seeds give bit-identical draw sequences, and
``derive(index)`` produces statistically independent child streams as a pure
function of (seed, index path), so experiment repetitions can be re-run in
isolation.
"""

from __future__ import annotations

import math
from bisect import bisect_right

import numpy as np

__all__ = [
    "BitString",
    "Individual",
    "RngStream",
    "count_ones",
    "count_zeros",
    "hamming",
    "sample_uniform",
    "derive_seed",
]


class BitString:
    """Immutable fixed-length sequence of bits over {0, 1}."""

    __slots__ = ("n", "value")

    def __init__(self, n: int, value: int):
        if n < 1:
            raise ValueError(f"bit-string length must be positive, got {n}")
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} does not fit in {n} bits")
        self.n = n
        self.value = value

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_bits(cls, bits) -> "BitString":
        """Build from an iterable of 0/1 values; bits[0] is position 0."""
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit at position {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(len(bits), value)

    @classmethod
    def from01(cls, text: str) -> "BitString":
        """Build from a string like '1010'; text[0] is position 0."""
        return cls.from_bits(int(c) for c in text)

    def count_ones(self) -> int:
        return self.value.bit_count()

    def count_zeros(self) -> int:
        return self.n - self.value.bit_count()

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for length {self.n}")
        return (self.value >> i) & 1

    def to01(self) -> str:
        return "".join(str((self.value >> i) & 1) for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        v = self.value
        for _ in range(self.n):
            yield v & 1
            v >>= 1

    def __getitem__(self, i: int) -> int:
        return self.bit(i)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.n == other.n
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.n, self.value))

    def __repr__(self) -> str:
        text = self.to01()
        if self.n > 24:
            text = text[:24] + "..."
        return f"BitString({text}, n={self.n})"


def count_ones(x: BitString) -> int:
    """Number of 1-bits in x."""
    return x.value.bit_count()


def count_zeros(x: BitString) -> int:
    """Number of 0-bits in x."""
    return x.n - x.value.bit_count()


def hamming(x: BitString, y: BitString) -> int:
    """Number of positions where x and y differ; requires equal lengths."""
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    return (x.value ^ y.value).bit_count()


class Individual:
    """A genome plus its cached objective vector.

    Objectives are set once at construction (or left None for a not-yet-
    evaluated individual); instances are treated as immutable so populations
    can share them freely.
    """

    __slots__ = ("genome", "objectives")

    def __init__(self, genome: BitString, objectives: tuple | None = None):
        self.genome = genome
        self.objectives = objectives

    @property
    def evaluated(self) -> bool:
        return self.objectives is not None

    def __repr__(self) -> str:
        return f"Individual({self.genome!r}, objectives={self.objectives})"


_UNIFORM_BUF = 8192
_BYTE_BUF = 1 << 14


class RngStream:
    """Deterministic random stream with reproducible child-stream derivation.

    Backed by numpy's PCG64 seeded from ``SeedSequence(seed, spawn_key)``.
    Identical (seed, spawn_key) pairs produce bit-identical draw sequences.
    Draws are buffered in blocks for speed; buffering is invisible to the
    consumption order. A stream is single-owner: never share one across
    concurrent workers, derive children instead.
    """

    GENERATOR = "pcg64"

    __slots__ = (
        "seed",
        "spawn_key",
        "_gen",
        "_uni",
        "_upos",
        "_ulen",
        "_bytes",
        "_bpos",
        "_binom_cdfs",
    )

    def __init__(self, seed: int, spawn_key: tuple = ()):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.spawn_key = tuple(int(i) for i in spawn_key)
        ss = np.random.SeedSequence(entropy=seed, spawn_key=self.spawn_key)
        self._gen = np.random.Generator(np.random.PCG64(ss))
        self._uni: list[float] = []
        self._upos = 0
        self._ulen = 0
        self._bytes = b""
        self._bpos = 0
        self._binom_cdfs: dict[tuple[int, float], list[float]] = {}

    def derive(self, index: int) -> "RngStream":
        """Independent child stream; a pure function of (seed, index path)."""
        return RngStream(self.seed, self.spawn_key + (int(index),))

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        if self._upos == self._ulen:
            self._uni = self._gen.random(_UNIFORM_BUF).tolist()
            self._upos = 0
            self._ulen = _UNIFORM_BUF
        u = self._uni[self._upos]
        self._upos += 1
        return u

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        i = int(self.random() * n)
        return i if i < n else n - 1

    def bits(self, nbits: int) -> int:
        """Integer with nbits independent fair random bits."""
        nb = (nbits + 7) >> 3
        if nb > _BYTE_BUF:
            chunk = self._gen.bytes(nb)
        else:
            if self._bpos + nb > len(self._bytes):
                self._bytes = self._gen.bytes(_BYTE_BUF)
                self._bpos = 0
            chunk = self._bytes[self._bpos : self._bpos + nb]
            self._bpos += nb
        return int.from_bytes(chunk, "little") & ((1 << nbits) - 1)

    def binomial(self, n: int, p: float) -> int:
        """Binomial(n, p) draw via a cached inverse-CDF table."""
        key = (n, p)
        cdf = self._binom_cdfs.get(key)
        if cdf is None:
            cdf = _binomial_cdf(n, p)
            self._binom_cdfs[key] = cdf
        return bisect_right(cdf, self.random())

    def distinct_indices(self, n: int, m: int) -> list[int]:
        """m distinct uniform indices from [0, n), in draw order."""
        if m > n:
            raise ValueError(f"cannot draw {m} distinct indices from {n}")
        if m == n:
            return list(range(n))
        if m == 0:
            return []
        if m == 1:
            return [self.randrange(n)]
        seen: set[int] = set()
        out: list[int] = []
        while len(out) < m:
            j = self.randrange(n)
            if j not in seen:
                seen.add(j)
                out.append(j)
        return out

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"


def _binomial_cdf(n: int, p: float) -> list[float]:
    """Cumulative Binomial(n, p) table such that bisect_right(cdf, u) is a draw.

    Terms are computed in log space (lgamma), so the table stays accurate even
    when individual tail probabilities underflow to 0.0.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    if p == 0.0:
        return [1.0] * (n + 1)
    if p == 1.0:
        return [0.0] * n + [1.0]
    log_p = math.log(p)
    log_q = math.log1p(-p)
    lg_n = math.lgamma(n + 1)
    cdf = []
    acc = 0.0
    for i in range(n + 1):
        log_pmf = lg_n - math.lgamma(i + 1) - math.lgamma(n - i + 1) + i * log_p + (n - i) * log_q
        acc += math.exp(log_pmf)
        cdf.append(acc)
    cdf[-1] = 1.0
    return cdf


def sample_uniform(n: int, rng: RngStream) -> BitString:
    """Length-n bit string with each bit independently 0 or 1 w.p. 1/2."""
    if n < 1:
        raise ValueError(f"bit-string length must be positive, got {n}")
    return BitString(n, rng.bits(n))


def derive_seed(base_seed: int, *indices: int) -> int:
    """64-bit seed derived from a base seed and an index path.

    Pure function of its arguments; used to give every (cell, repetition) of an
    experiment its own reproducible seed.
    """
    ss = np.random.SeedSequence(entropy=int(base_seed), spawn_key=tuple(int(i) for i in indices))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
