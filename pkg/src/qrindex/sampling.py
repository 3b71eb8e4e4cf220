"""Uniform residue sampling with exact random-bit accounting.

All randomness flows through a BitSource, one bit per call, so consumers
can count precisely how much entropy each strategy spends.  Two
strategies are implemented on top of the same rejection primitive:

* index sampling: draw a uniform index in [1, |QR(N)|] and decode it,
  spending ceil(log2 |QR(N)|) bits per attempt;
* classical sampling: draw x in [1, N-1], retry until gcd(x, N) = 1,
  and square it, spending ceil(log2 (N-1)) bits per attempt.

Both are exactly uniform over QR(N); they differ only in bit cost and
retry behaviour, which compare_bit_budgets measures.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass

from .indexing import FactoredModulus, decode_index, index_space_size

_MAX_REJECTIONS = 128


class BitSourceExhaustedError(RuntimeError):
    """A finite bit source was asked for more bits than it holds."""


class RejectionLimitError(RuntimeError):
    """A rejection loop failed to accept within the retry cap."""


class BitSource:
    """Interface: next_bit() returns 0 or 1."""

    def next_bit(self) -> int:
        raise NotImplementedError


class SystemBitSource(BitSource):
    """Bits from os.urandom, delivered most significant first per byte."""

    def __init__(self):
        self._buffer = 0
        self._remaining = 0

    def next_bit(self) -> int:
        if self._remaining == 0:
            self._buffer = os.urandom(1)[0]
            self._remaining = 8
        self._remaining -= 1
        return (self._buffer >> self._remaining) & 1


class SeededBitSource(BitSource):
    """Deterministic bits from a Mersenne Twister keyed by a 64-bit seed.

    Identical seeds yield identical bit streams across runs and
    platforms, which pins down every sampling record in the test suite.
    """

    def __init__(self, seed: int):
        if not 0 <= seed < 1 << 64:
            raise ValueError(f"seed must fit in 64 bits, got {seed}")
        self._rng = random.Random(seed)

    def next_bit(self) -> int:
        return self._rng.getrandbits(1)


class ScriptedBitSource(BitSource):
    """Replays a fixed bit string, for worked examples and tests.

    Whitespace in the script is ignored.  ``position`` exposes how many
    bits have been served; running past the end raises
    BitSourceExhaustedError.
    """

    def __init__(self, script: str):
        bits = "".join(script.split())
        if bits.strip("01"):
            raise ValueError("script must contain only 0, 1 and whitespace")
        self._bits = bits
        self.position = 0

    def next_bit(self) -> int:
        if self.position >= len(self._bits):
            raise BitSourceExhaustedError(
                f"script of {len(self._bits)} bits exhausted"
            )
        bit = int(self._bits[self.position])
        self.position += 1
        return bit


@dataclass
class RandomBitLedger:
    """Running totals a sampling call adds to: bits drawn, attempts made."""

    bits_consumed: int = 0
    attempts: int = 0


def draw_uniform(n: int, source: BitSource, ledger: RandomBitLedger) -> int:
    """Uniform integer in [0, n) by rejection on ceil(log2 n)-bit words.

    Bits are assembled most significant first.  Each attempt counts one
    ledger attempt and exactly b bits; values >= n are rejected.  n = 1
    draws zero bits and accepts immediately.  Gives up after 128
    rejections, which a fair source reaches with probability < 2**-128.
    """
    if n < 1:
        raise ValueError(f"range must be positive, got {n}")
    b = (n - 1).bit_length()
    for _ in range(_MAX_REJECTIONS):
        ledger.attempts += 1
        value = 0
        for _ in range(b):
            value = value << 1 | source.next_bit()
            ledger.bits_consumed += 1
        if value < n:
            return value
    raise RejectionLimitError(f"no draw below {n} within {_MAX_REJECTIONS} attempts")


def sample_residue_by_index(
    m: FactoredModulus, source: BitSource
) -> tuple[int, RandomBitLedger]:
    """Uniform quadratic residue modulo N via a uniform index draw.

    Returns the residue and a fresh ledger holding this call's bit and
    attempt counts.
    """
    ledger = RandomBitLedger()
    index = 1 + draw_uniform(index_space_size(m), source, ledger)
    return decode_index(m, index), ledger


def sample_residue_classical(
    m: FactoredModulus, source: BitSource
) -> tuple[int, RandomBitLedger]:
    """Uniform quadratic residue modulo N by squaring a uniform unit.

    Draws x in [1, N-1], retries until x is coprime to N (each such
    round counts as a ledger attempt too), then returns x**2 mod N with
    the fresh ledger.  Uniform because squaring is a constant-to-one map
    on the unit group; the cost is the bigger draw range and the
    coprimality retries.
    """
    ledger = RandomBitLedger()
    for _ in range(_MAX_REJECTIONS):
        x = 1 + draw_uniform(m.n - 1, source, ledger)
        if math.gcd(x, m.n) == 1:
            return x * x % m.n, ledger
        # Not a unit: the attempt stays on the ledger and we redraw.
    raise RejectionLimitError(
        f"no unit modulo {m.n} within {_MAX_REJECTIONS} attempts"
    )


@dataclass(frozen=True)
class SampleReport:
    """Aggregate cost statistics for one sampling run."""

    method: str
    samples: int
    total_bits: int
    total_attempts: int
    mean_bits_per_sample: float
    theoretical_floor: float


def _log2(n: int) -> float:
    # math.log2 rejects ints past float range; go via bit_length.
    if n < 1 << 53:
        return math.log2(n)
    shift = n.bit_length() - 53
    return math.log2(n >> shift) + shift


def compare_bit_budgets(
    m: FactoredModulus, n_samples: int, seed: int
) -> tuple[SampleReport, SampleReport]:
    """Run both strategies for n_samples draws each and report costs.

    The index strategy streams bits from seed; the classical strategy
    from seed + 1 (mod 2**64) so the two runs are independent but both
    reproducible.  theoretical_floor is log2 |QR(N)| for both, the
    entropy of the target distribution.
    """
    if n_samples < 1:
        raise ValueError(f"sample count must be positive, got {n_samples}")
    floor = _log2(index_space_size(m))
    reports = []
    for method, seed_i, sample in (
        ("index", seed, sample_residue_by_index),
        ("classical", (seed + 1) % (1 << 64), sample_residue_classical),
    ):
        source = SeededBitSource(seed_i)
        total_bits = 0
        total_attempts = 0
        for _ in range(n_samples):
            _, ledger = sample(m, source)
            total_bits += ledger.bits_consumed
            total_attempts += ledger.attempts
        reports.append(
            SampleReport(
                method=method,
                samples=n_samples,
                total_bits=total_bits,
                total_attempts=total_attempts,
                mean_bits_per_sample=total_bits / n_samples,
                theoretical_floor=floor,
            )
        )
    return reports[0], reports[1]
