"""Domain frames and their bit-exact wire layouts.

Serialization concatenates fields most-significant-bit-first in a fixed
order, so every frame maps to exactly one fixed-width bitstring for a
given configuration. Range rules that only matter on reception (tone
bounds, table indices) are enforced during deserialization; constructors
check unsigned field widths only, which keeps layout tests able to
express degenerate all-zero frames.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import Bits
from .config import ProtocolConfig
from .errors import CodecError

ACK_TYPE_BYTE = 0xAC

_U8 = 1 << 8
_U32 = 1 << 32


def _check_range(name: str, value: int, limit: int) -> None:
    if not 0 <= value < limit:
        raise CodecError(f"{name}={value} outside [0, {limit})")


@dataclass(frozen=True)
class DataFrame:
    """One aggregated plaintext reading set; doubles as a reference frame."""

    seq_no: int
    timestamp: int
    readings: tuple[int, ...]

    def __post_init__(self):
        _check_range("seq_no", self.seq_no, _U32)
        _check_range("timestamp", self.timestamp, _U32)
        object.__setattr__(self, "readings", tuple(self.readings))
        for i, r in enumerate(self.readings):
            _check_range(f"readings[{i}]", r, _U8)

    def hashable_fields(self) -> tuple[int, ...]:
        """Seed-eligible 8-bit fields: timestamp low byte, then readings."""
        return (self.timestamp & 0xFF,) + self.readings

    def pack_payload(self, enc_bits: int) -> Bits:
        """Pack timestamp and readings into the encryptable payload.

        The sequence number travels in clear in the wire frame, so it is
        not part of the payload. Zero-padded up to `enc_bits`.
        """
        raw = 32 + 8 * len(self.readings)
        if enc_bits < raw:
            raise CodecError(f"payload needs {raw} bits, frame allows {enc_bits}")
        payload = Bits(self.timestamp, 32)
        for r in self.readings:
            payload = payload + Bits(r, 8)
        return payload + Bits.zeros(enc_bits - raw)

    @classmethod
    def unpack_payload(cls, payload: Bits, seq_no: int, num_readings: int) -> "DataFrame":
        raw = 32 + 8 * num_readings
        if payload.width < raw:
            raise CodecError(f"payload too short: {payload.width} < {raw}")
        timestamp = payload.subfield(0, 32).value
        readings = tuple(
            payload.subfield(32 + 8 * i, 8).value for i in range(num_readings)
        )
        return cls(seq_no, timestamp, readings)


@dataclass(frozen=True)
class IamkeysWireFrame:
    """Long-haul frame: ENC_DATA, SEQ_NO, REF_FRM_SEQ_NO, FIELD_NO, TONE, SENDER_AUTH."""

    enc_data: Bits
    seq_no: int
    ref_frm_seq_no: int
    field_no: int
    tone: int
    sender_auth: int

    def __post_init__(self):
        _check_range("seq_no", self.seq_no, _U32)
        _check_range("ref_frm_seq_no", self.ref_frm_seq_no, _U32)
        _check_range("field_no", self.field_no, _U8)
        _check_range("tone", self.tone, _U8)
        _check_range("sender_auth", self.sender_auth, _U8)


@dataclass(frozen=True)
class KemesisWireFrame:
    """Body-side frame: FRM_TYPE, SEQ_NO, FRAME_NO, FIELD_NO, KEY_USED, SIG, ENC_DATA."""

    frm_type: int
    seq_no: int
    frame_no: int
    field_no: int
    key_used: int
    sig: int
    enc_data: Bits

    def __post_init__(self):
        _check_range("frm_type", self.frm_type, _U8)
        _check_range("seq_no", self.seq_no, _U32)
        _check_range("frame_no", self.frame_no, _U8)
        _check_range("field_no", self.field_no, _U8)
        _check_range("key_used", self.key_used, _U8)
        _check_range("sig", self.sig, _U8)


@dataclass(frozen=True)
class AckFrame:
    """Acknowledgement of one previously transmitted frame."""

    acked_seq_no: int

    def __post_init__(self):
        _check_range("acked_seq_no", self.acked_seq_no, _U32)


def iamkeys_frame_bits(config: ProtocolConfig) -> int:
    return config.iamkeys_enc_bits + 88


def kemesis_frame_bits(config: ProtocolConfig) -> int:
    return 72 + config.kemesis_field_bits


ACK_FRAME_BITS = 40


def serialize_iamkeys(frame: IamkeysWireFrame, config: ProtocolConfig) -> Bits:
    if frame.enc_data.width != config.iamkeys_enc_bits:
        raise CodecError(
            f"enc_data is {frame.enc_data.width} bits, configured width is "
            f"{config.iamkeys_enc_bits}"
        )
    return (
        frame.enc_data
        + Bits(frame.seq_no, 32)
        + Bits(frame.ref_frm_seq_no, 32)
        + Bits(frame.field_no, 8)
        + Bits(frame.tone, 8)
        + Bits(frame.sender_auth, 8)
    )


def deserialize_iamkeys(bits: Bits, config: ProtocolConfig) -> IamkeysWireFrame:
    expected = iamkeys_frame_bits(config)
    if bits.width != expected:
        raise CodecError(f"frame is {bits.width} bits, expected {expected}")
    w = config.iamkeys_enc_bits
    frame = IamkeysWireFrame(
        enc_data=bits.subfield(0, w),
        seq_no=bits.subfield(w, 32).value,
        ref_frm_seq_no=bits.subfield(w + 32, 32).value,
        field_no=bits.subfield(w + 64, 8).value,
        tone=bits.subfield(w + 72, 8).value,
        sender_auth=bits.subfield(w + 80, 8).value,
    )
    if not 1 <= frame.tone <= 5:
        raise CodecError(f"tone out of range: {frame.tone}")
    if frame.field_no >= config.hashable_count:
        raise CodecError(f"field_no out of range: {frame.field_no}")
    return frame


def serialize_kemesis(frame: KemesisWireFrame, config: ProtocolConfig) -> Bits:
    if frame.enc_data.width != config.kemesis_field_bits:
        raise CodecError(
            f"enc_data is {frame.enc_data.width} bits, configured width is "
            f"{config.kemesis_field_bits}"
        )
    return (
        Bits(frame.frm_type, 8)
        + Bits(frame.seq_no, 32)
        + Bits(frame.frame_no, 8)
        + Bits(frame.field_no, 8)
        + Bits(frame.key_used, 8)
        + Bits(frame.sig, 8)
        + frame.enc_data
    )


def deserialize_kemesis(bits: Bits, config: ProtocolConfig) -> KemesisWireFrame:
    expected = kemesis_frame_bits(config)
    if bits.width != expected:
        raise CodecError(f"frame is {bits.width} bits, expected {expected}")
    frame = KemesisWireFrame(
        frm_type=bits.subfield(0, 8).value,
        seq_no=bits.subfield(8, 32).value,
        frame_no=bits.subfield(40, 8).value,
        field_no=bits.subfield(48, 8).value,
        key_used=bits.subfield(56, 8).value,
        sig=bits.subfield(64, 8).value,
        enc_data=bits.subfield(72, config.kemesis_field_bits),
    )
    if frame.frm_type not in (0, 1):
        raise CodecError(f"frm_type out of range: {frame.frm_type}")
    if frame.key_used not in (0, 1):
        raise CodecError(f"key_used out of range: {frame.key_used}")
    if frame.frame_no >= config.kemesis_frames:
        raise CodecError(f"frame_no out of range: {frame.frame_no}")
    if frame.field_no >= config.kemesis_fields:
        raise CodecError(f"field_no out of range: {frame.field_no}")
    return frame


def serialize_ack(ack: AckFrame) -> Bits:
    return Bits(ACK_TYPE_BYTE, 8) + Bits(ack.acked_seq_no, 32)


def deserialize_ack(bits: Bits) -> AckFrame:
    if bits.width != ACK_FRAME_BITS:
        raise CodecError(f"ack is {bits.width} bits, expected {ACK_FRAME_BITS}")
    kind = bits.subfield(0, 8).value
    if kind != ACK_TYPE_BYTE:
        raise CodecError(f"not an ack frame: type byte {kind:#04x}")
    return AckFrame(bits.subfield(8, 32).value)
