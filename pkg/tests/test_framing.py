"""Bit-exact codec behavior for all three frame kinds."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from wbansuite.bits import Bits
from wbansuite.config import ProtocolConfig
from wbansuite.errors import CodecError
from wbansuite.framing import (
    AckFrame,
    DataFrame,
    IamkeysWireFrame,
    KemesisWireFrame,
    deserialize_ack,
    deserialize_iamkeys,
    deserialize_kemesis,
    iamkeys_frame_bits,
    kemesis_frame_bits,
    serialize_ack,
    serialize_iamkeys,
    serialize_kemesis,
)

CONFIG = ProtocolConfig()


def test_all_zero_iamkeys_frame_serializes_to_zero_bits():
    frame = IamkeysWireFrame(Bits.zeros(16), 0, 0, 0, 0, 0)
    bits = serialize_iamkeys(frame, CONFIG)
    assert bits.width == 104 == iamkeys_frame_bits(CONFIG)
    assert bits.value == 0
    assert bits.to_hex() == "0" * 26


def test_tone_byte_lands_at_byte_11():
    frame = IamkeysWireFrame(Bits.zeros(16), 0, 0, 0, 5, 0)
    bits = serialize_iamkeys(frame, CONFIG)
    assert bits.to_hex() == "00" * 11 + "05" + "00"
    # MSB-first bit numbering: the tone byte spans offsets 88..95.
    assert bits.subfield(88, 8).value == 5


def test_iamkeys_width_mismatch_is_rejected():
    frame = IamkeysWireFrame(Bits.zeros(8), 0, 0, 0, 1, 0)
    with pytest.raises(CodecError, match="enc_data"):
        serialize_iamkeys(frame, CONFIG)


def test_iamkeys_round_trip_over_random_frames():
    rng = random.Random(20240501)
    for _ in range(1000):
        frame = IamkeysWireFrame(
            enc_data=Bits(rng.getrandbits(16), 16),
            seq_no=rng.getrandbits(32),
            ref_frm_seq_no=rng.getrandbits(32),
            field_no=rng.randrange(CONFIG.hashable_count),
            tone=rng.randint(1, 5),
            sender_auth=rng.getrandbits(8),
        )
        bits = serialize_iamkeys(frame, CONFIG)
        assert deserialize_iamkeys(bits, CONFIG) == frame
        # Bijection: re-serializing the decoded frame restores the bits.
        assert serialize_iamkeys(deserialize_iamkeys(bits, CONFIG), CONFIG) == bits


def test_iamkeys_deserialize_rejects_zero_tone():
    with pytest.raises(CodecError, match="tone"):
        deserialize_iamkeys(Bits.zeros(104), CONFIG)


def test_iamkeys_deserialize_rejects_bad_length():
    with pytest.raises(CodecError, match="expected 104"):
        deserialize_iamkeys(Bits.zeros(96), CONFIG)


def test_iamkeys_deserialize_rejects_bad_field_no():
    frame = IamkeysWireFrame(Bits.zeros(16), 1, 2, CONFIG.hashable_count, 3, 0)
    bits = serialize_iamkeys(frame, CONFIG)
    with pytest.raises(CodecError, match="field_no"):
        deserialize_iamkeys(bits, CONFIG)


def test_all_zero_kemesis_frame_serializes_to_zero_bits():
    frame = KemesisWireFrame(0, 0, 0, 0, 0, 0, Bits.zeros(8))
    bits = serialize_kemesis(frame, CONFIG)
    assert bits.width == 80 == kemesis_frame_bits(CONFIG)
    assert bits.value == 0


def test_kemesis_byte_placement():
    frame = KemesisWireFrame(1, 0, 7, 0, 0, 0, Bits.zeros(8))
    bits = serialize_kemesis(frame, CONFIG)
    assert bits.subfield(0, 8).value == 0x01      # byte 0: FRM_TYPE
    assert bits.subfield(40, 8).value == 0x07     # byte 5: FRAME_NO
    assert bits.to_hex() == "01" + "00000000" + "07" + "00" * 4


def test_kemesis_round_trip_over_random_frames():
    rng = random.Random(77)
    for _ in range(1000):
        frame = KemesisWireFrame(
            frm_type=rng.randint(0, 1),
            seq_no=rng.getrandbits(32),
            frame_no=rng.randrange(CONFIG.kemesis_frames),
            field_no=rng.randrange(CONFIG.kemesis_fields),
            key_used=rng.randint(0, 1),
            sig=rng.getrandbits(8),
            enc_data=Bits(rng.getrandbits(8), 8),
        )
        bits = serialize_kemesis(frame, CONFIG)
        assert deserialize_kemesis(bits, CONFIG) == frame


@pytest.mark.parametrize("field,value,message", [
    ("frm_type", 2, "frm_type"),
    ("key_used", 3, "key_used"),
    ("frame_no", 16, "frame_no"),
    ("field_no", 8, "field_no"),
])
def test_kemesis_deserialize_rejects_out_of_range(field, value, message):
    fields = dict(frm_type=0, seq_no=1, frame_no=0, field_no=0, key_used=0,
                  sig=0, enc_data=Bits.zeros(8))
    fields[field] = value
    bits = serialize_kemesis(KemesisWireFrame(**fields), CONFIG)
    with pytest.raises(CodecError, match=message):
        deserialize_kemesis(bits, CONFIG)


def test_kemesis_respects_wider_field_profile():
    config = ProtocolConfig(kemesis_frames=256, kemesis_fields=16,
                            kemesis_field_bits=16)
    frame = KemesisWireFrame(0, 9, 200, 12, 1, 0x44, Bits(0xBEEF, 16))
    bits = serialize_kemesis(frame, config)
    assert bits.width == 88
    assert deserialize_kemesis(bits, config) == frame


def test_ack_round_trip_and_layout():
    assert serialize_ack(AckFrame(0)).to_hex() == "AC00000000"
    rng = random.Random(3)
    for _ in range(200):
        ack = AckFrame(rng.getrandbits(32))
        assert deserialize_ack(serialize_ack(ack)) == ack


def test_ack_wrong_type_byte():
    with pytest.raises(CodecError, match="type byte"):
        deserialize_ack(Bits(0xAB00000000, 40))


def test_ack_wrong_length():
    with pytest.raises(CodecError, match="40"):
        deserialize_ack(Bits.zeros(39))


@given(
    enc=st.integers(min_value=0, max_value=(1 << 16) - 1),
    seq=st.integers(min_value=0, max_value=(1 << 32) - 1),
    ref=st.integers(min_value=0, max_value=(1 << 32) - 1),
    field=st.integers(min_value=0, max_value=3),
    tone=st.integers(min_value=1, max_value=5),
    auth=st.integers(min_value=0, max_value=255),
)
@settings(max_examples=100, deadline=None)
def test_iamkeys_round_trip_property(enc, seq, ref, field, tone, auth):
    frame = IamkeysWireFrame(Bits(enc, 16), seq, ref, field, tone, auth)
    assert deserialize_iamkeys(serialize_iamkeys(frame, CONFIG), CONFIG) == frame


def test_data_frame_hashable_fields_and_payload_round_trip():
    frame = DataFrame(seq_no=12, timestamp=0x01020384, readings=(10, 20, 30))
    assert frame.hashable_fields() == (0x84, 10, 20, 30)
    payload = frame.pack_payload(64)
    assert payload.width == 64
    assert DataFrame.unpack_payload(payload, 12, 3) == frame


def test_data_frame_payload_needs_room():
    frame = DataFrame(0, 0, (1, 2, 3))
    with pytest.raises(CodecError, match="payload"):
        frame.pack_payload(48)


def test_data_frame_validates_ranges():
    with pytest.raises(CodecError):
        DataFrame(-1, 0, ())
    with pytest.raises(CodecError):
        DataFrame(0, 0, (256,))
