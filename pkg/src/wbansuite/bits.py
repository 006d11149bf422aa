"""Fixed-width bitstrings.

Everything on the wire is a :class:`Bits` value. Bit 0 of a serialized
stream is the most significant bit of the first field, so concatenation
and slicing below are MSB-first throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CodecError, WidthMismatchError


@dataclass(frozen=True)
class Bits:
    """An immutable bitstring of exactly `width` bits."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise CodecError(f"negative width: {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise CodecError(
                f"value {self.value:#x} does not fit in {self.width} bits"
            )

    @classmethod
    def zeros(cls, width: int) -> "Bits":
        return cls(0, width)

    @classmethod
    def from_hex(cls, text: str, width: int | None = None) -> "Bits":
        text = text.strip()
        if width is None:
            width = 4 * len(text)
        try:
            value = int(text, 16) if text else 0
        except ValueError as exc:
            raise CodecError(f"bad hex string: {text!r}") from exc
        return cls(value, width)

    def to_hex(self) -> str:
        digits = (self.width + 3) // 4
        return f"{self.value:0{digits}X}" if digits else ""

    def __len__(self) -> int:
        return self.width

    def __add__(self, other: "Bits") -> "Bits":
        return Bits((self.value << other.width) | other.value,
                    self.width + other.width)

    def __xor__(self, other: "Bits") -> "Bits":
        if self.width != other.width:
            raise WidthMismatchError(
                f"xor width mismatch: {self.width} vs {other.width}"
            )
        return Bits(self.value ^ other.value, self.width)

    def __invert__(self) -> "Bits":
        mask = (1 << self.width) - 1
        return Bits(self.value ^ mask, self.width)

    def halves(self) -> tuple["Bits", "Bits"]:
        """Split into (left, right) halves; width must be even."""
        if self.width % 2:
            raise WidthMismatchError(f"cannot halve odd width {self.width}")
        h = self.width // 2
        return Bits(self.value >> h, h), Bits(self.value & ((1 << h) - 1), h)

    def subfield(self, start: int, width: int) -> "Bits":
        """Extract `width` bits starting at MSB-first offset `start`."""
        if start < 0 or width < 0 or start + width > self.width:
            raise CodecError(
                f"subfield [{start}:{start + width}] outside width {self.width}"
            )
        shift = self.width - start - width
        return Bits((self.value >> shift) & ((1 << width) - 1), width)

    def flip(self, index: int) -> "Bits":
        """Return a copy with the bit at MSB-first `index` inverted."""
        if not 0 <= index < self.width:
            raise CodecError(f"bit index {index} outside width {self.width}")
        return Bits(self.value ^ (1 << (self.width - 1 - index)), self.width)

    def __repr__(self) -> str:
        return f"Bits(0x{self.to_hex()}, {self.width})"


def rotl8(value: int, count: int) -> int:
    """Circular left shift of an 8-bit value."""
    value &= 0xFF
    count %= 8
    return ((value << count) | (value >> (8 - count))) & 0xFF
