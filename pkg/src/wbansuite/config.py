"""Shared protocol configuration.

Every wire width, table dimension, and threshold derives from one
:class:`ProtocolConfig` record so that both endpoints of a session are
guaranteed to agree on frame layouts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CodecError

#: Seed value substituted when a field value of 0 would freeze the LFSR.
#: Applied identically at sender and receiver, so key agreement holds.
ZERO_SEED_SUBSTITUTE = 0x5A


@dataclass(frozen=True)
class ProtocolConfig:
    """All tunables for one deployment of the suite."""

    num_readings: int = 3          # sensor fields per data frame
    iamkeys_enc_bits: int = 16     # ENC_DATA width in the long-haul wire frame
    block_bits: int = 16           # cipher block width (two 8-bit halves)
    kemesis_frames: int = 16       # dummy table rows (n)
    kemesis_fields: int = 8        # dummy table columns (k)
    kemesis_field_bits: int = 8    # width of one table cell / body-side payload
    ref_list_size: int = 5         # preloaded reference frames
    alarm_threshold: int = 10      # unacked emissions / missing frames before alarm
    unacked_capacity: int = 10     # plaintext frames retained awaiting ACK
    refresh_period: int = 10       # data frames between table refreshes
    zero_seed_substitute: int = ZERO_SEED_SUBSTITUTE

    def __post_init__(self):
        if self.num_readings < 0:
            raise CodecError("num_readings must be >= 0")
        if self.block_bits < 2 or self.block_bits % 2:
            raise CodecError("block_bits must be even and >= 2")
        if self.iamkeys_enc_bits % self.block_bits:
            raise CodecError("iamkeys_enc_bits must be a multiple of block_bits")
        if self.kemesis_frames < 1 or self.kemesis_fields < 1:
            raise CodecError("dummy table dimensions must be positive")
        if self.kemesis_field_bits % 8 or self.kemesis_field_bits < 8:
            raise CodecError("kemesis_field_bits must be a positive multiple of 8")
        if self.ref_list_size < 1:
            raise CodecError("ref_list_size must be positive")

    @property
    def alpha(self) -> int:
        """Cost-model alpha: hashable fields minus one."""
        return self.num_readings

    @property
    def hashable_count(self) -> int:
        """Fields usable as key seeds: timestamp low byte plus readings."""
        return self.num_readings + 1

    @property
    def data_seq_start(self) -> int:
        """First data-frame sequence number.

        The preloaded reference frames occupy 0..ref_list_size-1, and a
        sequence number must never name two frames at once.
        """
        return self.ref_list_size

    @property
    def payload_bits(self) -> int:
        """Packed data payload width: timestamp + readings, block padded."""
        raw = 32 + 8 * self.num_readings
        return ((raw + self.block_bits - 1) // self.block_bits) * self.block_bits


def simulation_config(profile: str = "analysis") -> ProtocolConfig:
    """Configuration presets used by the simulator and CLI."""
    base = ProtocolConfig()
    if profile == "analysis":
        # Table dimensions that make the cost model exact; the wire frame
        # carries the full packed payload (56 bits padded to 64).
        return ProtocolConfig(iamkeys_enc_bits=base.payload_bits)
    if profile == "realistic":
        # Larger dummy table: 256 frames of 16 fields, 16 bits each.
        return ProtocolConfig(
            iamkeys_enc_bits=base.payload_bits,
            kemesis_frames=256,
            kemesis_fields=16,
            kemesis_field_bits=16,
        )
    raise CodecError(f"unknown profile: {profile!r}")


PROFILE_NAMES = ("analysis", "realistic")
