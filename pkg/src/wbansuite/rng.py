"""Fibonacci LFSRs, keystream generation, and uniform index selection.

This is the randomness substrate for both schemes: an 8-bit register
generates encryption keystreams, a wider register drives the per-frame
choices of reference frame, field, tone, and key. State objects are
immutable; every operation returns the advanced register alongside its
output, so identical (taps, seed) always reproduce identical streams.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import Bits
from .config import ZERO_SEED_SUBSTITUTE
from .errors import WidthMismatchError, ZeroStateError

# Tap positions are indexed from the output end of the register (bit 0 is
# emitted each step; feedback re-enters at the top). Each set realizes a
# maximal-length polynomial, verified exhaustively by the test suite:
#   width 8  -> x^8 + x^6 + x^5 + x^4 + 1   (period 255)
#   width 4  -> x^4 + x^3 + 1               (period 15)
#   width 16 -> x^16 + x^14 + x^13 + x^11 + 1 (period 65535)
KEYSTREAM_WIDTH = 8
KEYSTREAM_TAPS = frozenset((0, 2, 3, 4))
SHORT_SELECTOR_WIDTH = 4
SHORT_SELECTOR_TAPS = frozenset((0, 3))
SELECTOR_WIDTH = 16
SELECTOR_TAPS = frozenset((0, 2, 3, 5))


@dataclass(frozen=True)
class LfsrState:
    """One Fibonacci LFSR register: `width` bits, never all-zero."""

    width: int
    taps: frozenset
    state: int

    def __post_init__(self):
        if self.width < 2:
            raise WidthMismatchError(f"register width too small: {self.width}")
        if not self.taps or not all(0 <= t < self.width for t in self.taps):
            raise WidthMismatchError(f"taps {sorted(self.taps)} outside width {self.width}")
        if 0 not in self.taps:
            # Without a tap at the output bit the register is not maximal
            # (states with only low bits set decay to zero).
            raise WidthMismatchError("tap set must include bit 0")
        if not 0 < self.state < (1 << self.width):
            raise ZeroStateError(f"register state must be a nonzero {self.width}-bit value")


def lfsr_step(s: LfsrState) -> tuple[int, LfsrState]:
    """Advance one step: emit bit 0, shift right, feedback enters the top."""
    if s.state == 0:
        raise ZeroStateError("all-zero LFSR state is absorbing")
    out = s.state & 1
    fb = 0
    for t in s.taps:
        fb ^= (s.state >> t) & 1
    nxt = (s.state >> 1) | (fb << (s.width - 1))
    return out, LfsrState(s.width, s.taps, nxt)


def keystream_lfsr(seed: int, zero_substitute: int = ZERO_SEED_SUBSTITUTE) -> LfsrState:
    """Load the 8-bit keystream register from a field-value seed.

    Seed 0 is remapped to the documented substitute; a zero register
    would emit zeros forever.
    """
    state = seed & 0xFF
    if state == 0:
        state = zero_substitute
    return LfsrState(KEYSTREAM_WIDTH, KEYSTREAM_TAPS, state)


def keystream(seed: int, nbits: int,
              zero_substitute: int = ZERO_SEED_SUBSTITUTE) -> Bits:
    """Concatenate `nbits` output bits of the seeded 8-bit register.

    The first 8 bits equal the (substituted) seed read LSB-first, since
    each step emits bit 0 before shifting.
    """
    if nbits < 1:
        raise WidthMismatchError("keystream length must be >= 1")
    s = keystream_lfsr(seed, zero_substitute)
    value = 0
    for _ in range(nbits):
        bit, s = lfsr_step(s)
        value = (value << 1) | bit
    return Bits(value, nbits)


@dataclass(frozen=True)
class KeyPair:
    """The per-frame key pair: k2 is always the bitwise complement of k1."""

    k1: Bits
    k2: Bits

    def __post_init__(self):
        if self.k1.width != self.k2.width:
            raise WidthMismatchError("key widths differ")
        if self.k2 != ~self.k1:
            raise WidthMismatchError("k2 must be the complement of k1")

    @classmethod
    def from_k1(cls, k1: Bits) -> "KeyPair":
        return cls(k1, ~k1)


def derive_keypair(seed: int, width: int,
                   zero_substitute: int = ZERO_SEED_SUBSTITUTE) -> KeyPair:
    """Generate k1 from the keystream and invert it for k2."""
    if width < 2 or width % 2:
        raise WidthMismatchError(
            f"key width must be even (cipher splits halves), got {width}"
        )
    return KeyPair.from_k1(keystream(seed, width, zero_substitute))


def new_selector(seed: int = 1) -> LfsrState:
    """Selection register used for frame/field/tone/key choices.

    A 4-bit register has only 15 states, so its 4-bit draws can never be
    zero nor cover 16 outcomes; selection therefore runs on the 16-bit
    maximal register, which still emits 4-bit values per draw.
    """
    return LfsrState(SELECTOR_WIDTH, SELECTOR_TAPS, seed % ((1 << SELECTOR_WIDTH) - 1) + 1)


def draw_nibble(sel: LfsrState) -> tuple[int, LfsrState]:
    """Emit four bits, assembled LSB-first."""
    value = 0
    for i in range(4):
        bit, sel = lfsr_step(sel)
        value |= bit << i
    return value, sel


def pick_uniform(sel: LfsrState, m: int) -> tuple[int, LfsrState]:
    """Uniform index in [0, m) by rejection over 4-bit draws, 1 <= m <= 16.

    Rejection (rather than a modulo) keeps the selection unbiased; m=1
    returns 0 without consuming the register.
    """
    if not 1 <= m <= 16:
        raise WidthMismatchError(f"pick_uniform range must be 1..16, got {m}")
    if m == 1:
        return 0, sel
    while True:
        value, sel = draw_nibble(sel)
        if value < m:
            return value, sel


def pick_index(sel: LfsrState, m: int) -> tuple[int, LfsrState]:
    """Uniform index in [0, m) for larger ranges (dummy tables up to 65536).

    Composes LSB-first nibbles to cover the range, then rejects overshoot.
    Matches pick_uniform for m <= 16.
    """
    if m <= 16:
        return pick_uniform(sel, m)
    if m > (1 << 16):
        raise WidthMismatchError(f"pick_index range too large: {m}")
    nibbles = ((m - 1).bit_length() + 3) // 4
    while True:
        value = 0
        for i in range(nibbles):
            nib, sel = draw_nibble(sel)
            value |= nib << (4 * i)
        if value < m:
            return value, sel
