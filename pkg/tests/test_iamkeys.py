"""Long-haul scheme: cipher, signatures, and the endpoint state machines."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from wbansuite.bits import Bits
from wbansuite.config import ProtocolConfig, simulation_config
from wbansuite.errors import AlarmLatchedError, CodecError
from wbansuite.framing import AckFrame, DataFrame, deserialize_iamkeys, serialize_iamkeys
from wbansuite.iamkeys import (
    IamkeysReceiver,
    IamkeysSender,
    ReferenceFrameList,
    choose_seed,
    decrypt_block,
    encrypt_block,
    encrypt_payload,
    make_dummy_reference_frames,
    sign_frame,
)
from wbansuite.rng import KeyPair, derive_keypair, new_selector

from oracles import pick_uniform_ref, rotl8_ref, two_round_encrypt_ref

SIM = simulation_config()


def zero_keypair():
    return KeyPair.from_k1(Bits(0, 16))


def test_zero_key_complements_the_plaintext():
    # k1 all-zero forces k2 all-one; both rounds reduce to an inversion.
    assert encrypt_block(Bits(0xF0F0, 16), zero_keypair()) == Bits(0x0F0F, 16)
    assert encrypt_block(Bits(0x0000, 16), zero_keypair()) == Bits(0xFFFF, 16)


def test_encrypt_matches_bit_level_oracle():
    kp = derive_keypair(0xA5, 16)
    got = encrypt_block(Bits(0x1234, 16), kp)
    expected = two_round_encrypt_ref(0x1234, kp.k1.value, kp.k2.value, 16)
    assert got.value == expected == 0x0620


def test_decrypt_of_complement_case():
    assert decrypt_block(Bits(0x0F0F, 16), zero_keypair()) == Bits(0xF0F0, 16)


def test_involution_on_random_pairs():
    rng = random.Random(5)
    for _ in range(1000):
        d = Bits(rng.getrandbits(16), 16)
        kp = derive_keypair(rng.getrandbits(8), 16)
        assert encrypt_block(encrypt_block(d, kp), kp) == d


@given(st.integers(min_value=0, max_value=(1 << 16) - 1),
       st.integers(min_value=0, max_value=255))
@settings(max_examples=100, deadline=None)
def test_involution_property(d, seed):
    kp = derive_keypair(seed, 16)
    block = Bits(d, 16)
    assert decrypt_block(encrypt_block(block, kp), kp) == block


def test_order_preservation_differential():
    # Flipping bit i of the left half flips exactly bit i of the output's
    # left half: the two rounds keep halves in place.
    kp = derive_keypair(0x3C, 16)
    base = encrypt_block(Bits(0x5AC3, 16), kp)
    for i in range(8):
        flipped = encrypt_block(Bits(0x5AC3 ^ (1 << (15 - i)), 16), kp)
        assert base.value ^ flipped.value == 1 << (15 - i)


def test_encrypt_payload_blocks_independent():
    kp = derive_keypair(0x11, 16)
    payload = Bits(0x0123456789ABCDEF, 64)
    enc = encrypt_payload(payload, kp)
    parts = [encrypt_block(payload.subfield(i * 16, 16), kp) for i in range(4)]
    assert enc == parts[0] + parts[1] + parts[2] + parts[3]
    assert encrypt_payload(enc, kp) == payload


def test_sign_frame_rotates_the_field_sum():
    zeros = DataFrame(0, 0, (0, 0, 0))
    ones = DataFrame(0, 0xFF, (0, 0, 0))
    for tone in range(1, 6):
        assert sign_frame(zeros, tone) == 0x00
    # timestamp byte 0xFF with zero readings sums to 0xFF; rotation fixes it
    for tone in range(1, 6):
        assert sign_frame(ones, tone) == 0xFF
    frame81 = DataFrame(0, 0x81, (0, 0, 0))
    assert sign_frame(frame81, 1) == 0x03 == rotl8_ref(0x81, 1)
    assert [sign_frame(frame81, t) for t in range(1, 6)] == [0x03, 0x06, 0x0C, 0x18, 0x30]


def test_sign_frame_rejects_bad_tone():
    frame = DataFrame(0, 0, (0, 0, 0))
    for tone in (0, 6):
        with pytest.raises(CodecError, match="tone"):
            sign_frame(frame, tone)


def test_choose_seed_degenerate_single_field():
    config = ProtocolConfig(num_readings=0)
    ref_list = ReferenceFrameList(make_dummy_reference_frames(config))
    selector = new_selector(4)
    for _ in range(20):
        _, field_no, seed, selector = choose_seed(ref_list, selector)
        assert field_no == 0
        assert 0 <= seed < 256


def test_choose_seed_trace_matches_selector_oracle():
    ref_list = ReferenceFrameList(make_dummy_reference_frames(SIM))
    selector = new_selector(1)
    ref_frame, field_no, seed, _ = choose_seed(ref_list, selector)
    ref_ix, state = pick_uniform_ref(selector.state, 5)
    field_ix, _ = pick_uniform_ref(state, 4)
    assert ref_list.frames.index(ref_frame) == ref_ix == 2
    assert field_no == field_ix == 0
    assert seed == ref_list.frames[2].hashable_fields()[0]


def test_choose_seed_covers_all_indices_over_100_frames():
    ref_list = ReferenceFrameList(make_dummy_reference_frames(SIM))
    selector = new_selector(1)
    refs, fields = set(), set()
    for _ in range(100):
        ref_frame, field_no, _, selector = choose_seed(ref_list, selector)
        refs.add(ref_list.frames.index(ref_frame))
        fields.add(field_no)
    assert refs == set(range(5))
    assert fields == set(range(4))


def test_reference_list_requires_distinct_seqs():
    frames = make_dummy_reference_frames(SIM)
    frames[1] = frames[0]
    with pytest.raises(CodecError, match="distinct"):
        ReferenceFrameList(frames)


def make_frame(sender, value=7):
    readings = tuple((value + i) & 0xFF for i in range(SIM.num_readings))
    return DataFrame(sender.next_seq, 1000 + sender.next_seq, readings)


def test_first_emission_uses_preloaded_dummies():
    sender = IamkeysSender(SIM)
    emit = sender.emit(make_frame(sender))
    assert emit.frame.seq_no == SIM.data_seq_start
    assert emit.frame.ref_frm_seq_no in range(SIM.ref_list_size)
    assert 1 <= emit.frame.tone <= 5
    assert sender.frames_since_last_ack == 1


def test_emit_validates_sequence_continuity():
    sender = IamkeysSender(SIM)
    with pytest.raises(CodecError, match="seq"):
        sender.emit(DataFrame(99, 0, (0,) * SIM.num_readings))


def test_receiver_accept_ack_and_commit_lag():
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    first = make_frame(sender)
    r1 = receiver.accept(sender.emit(first).frame)
    assert r1.accepted and r1.ack == AckFrame(first.seq_no)
    assert r1.data == first
    # Staged, not yet committed: the list still holds the five dummies.
    assert receiver.pending_update == first
    assert {f.seq_no for f in receiver.ref_list.frames} == set(range(5))

    # The ACK is still in flight when frame 2 goes out, so frame 2 still
    # references the preloaded list at both ends.
    second = make_frame(sender, value=50)
    e2 = sender.emit(second)
    sender.on_ack(r1.ack)
    r2 = receiver.accept(e2.frame)
    assert r2.accepted and r2.ack == AckFrame(second.seq_no)
    # One reception later the first frame replaced the oldest dummy.
    assert receiver.ref_list.lookup(first.seq_no) == first
    assert receiver.ref_list.lookup(0) is None
    assert receiver.pending_update == second


def test_commit_window_drops_then_recovers():
    # When an ACK beats the next emission, the sender may reference the
    # frame it just committed while the receiver still has it staged; such
    # frames drop without an ACK (the loss path) and the link recovers as
    # soon as an emission references a surviving entry.
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    first = make_frame(sender)
    r1 = receiver.accept(sender.emit(first).frame)
    sender.on_ack(r1.ack)

    e2 = sender.emit(make_frame(sender, value=50))
    assert e2.frame.ref_frm_seq_no == first.seq_no   # the staged frame
    r2 = receiver.accept(e2.frame)
    assert (r2.accepted, r2.reason, r2.ack) == (False, "unknown-reference-frame", None)

    for value in range(3, 9):
        emit = sender.emit(make_frame(sender, value=value))
        result = receiver.accept(emit.frame)
        if emit.frame.ref_frm_seq_no != first.seq_no:
            assert result.accepted
            break
        assert result.reason == "unknown-reference-frame"
    else:
        pytest.fail("no emission referenced a shared entry")


def test_receiver_derives_identical_keys():
    # Pipelined interleave: the ACK for frame i lands after frame i+1 is
    # already out, which keeps both reference lists in step.
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    pending_ack = None
    for i in range(20):
        emit = sender.emit(make_frame(sender, value=i))
        if pending_ack is not None:
            sender.on_ack(pending_ack)
        wire = deserialize_iamkeys(serialize_iamkeys(emit.frame, SIM), SIM)
        result = receiver.accept(wire)
        assert result.accepted
        assert result.keys == emit.keys
        pending_ack = result.ack


def test_replay_is_rejected_without_state_change():
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    frame = sender.emit(make_frame(sender)).frame
    assert receiver.accept(frame).accepted
    before = (receiver.last_seen_seq, list(receiver.ref_list.frames))
    replay = receiver.accept(frame)
    assert not replay.accepted and replay.reason == "replay"
    assert replay.ack is None
    assert (receiver.last_seen_seq, list(receiver.ref_list.frames)) == before


def test_unknown_reference_frame_is_dropped_without_ack():
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    emit = sender.emit(make_frame(sender))
    forged = deserialize_iamkeys(serialize_iamkeys(emit.frame, SIM), SIM)
    forged = type(forged)(forged.enc_data, forged.seq_no, 999,
                          forged.field_no, forged.tone, forged.sender_auth)
    result = receiver.accept(forged)
    assert (result.accepted, result.reason, result.ack) == (False, "unknown-reference-frame", None)


def test_any_single_bit_flip_of_auth_rejects():
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    frame = sender.emit(make_frame(sender)).frame
    for bit in range(8):
        forged = type(frame)(frame.enc_data, frame.seq_no, frame.ref_frm_seq_no,
                             frame.field_no, frame.tone, frame.sender_auth ^ (1 << bit))
        result = receiver.accept(forged)
        assert not result.accepted and result.reason == "auth-failure"
    assert receiver.accept(frame).accepted


def test_sender_on_ack_commits_and_resets():
    sender = IamkeysSender(SIM)
    frame = make_frame(sender)
    sender.emit(frame)
    assert sender.frames_since_last_ack == 1
    assert sender.on_ack(AckFrame(frame.seq_no)) is True
    assert sender.ref_list.lookup(frame.seq_no) == frame
    assert sender.ref_list.lookup(0) is None          # oldest dummy evicted
    assert sender.frames_since_last_ack == 0
    # Duplicate and unknown acks are no-ops.
    assert sender.on_ack(AckFrame(frame.seq_no)) is False
    assert sender.on_ack(AckFrame(9999)) is False


def test_alarm_latches_at_ten_unacked_frames():
    sender = IamkeysSender(SIM)
    for i in range(10):
        emit = sender.emit(make_frame(sender, value=i))
        assert emit.frame.seq_no == SIM.data_seq_start + i
    assert sender.alarmed
    with pytest.raises(AlarmLatchedError):
        sender.emit(make_frame(sender))
    # ACKs do not clear a latched alarm; only the administrator reset does.
    sender.on_ack(AckFrame(SIM.data_seq_start))
    assert sender.alarmed
    sender.reset_alarm()
    sender.emit(make_frame(sender))


def test_unacked_buffer_evicts_beyond_capacity():
    sender = IamkeysSender(SIM)
    for i in range(10):
        sender.emit(make_frame(sender, value=i))
    sender.reset_alarm()
    sender.emit(make_frame(sender, value=99))
    assert len(sender.sent_unacked) == SIM.unacked_capacity
    assert SIM.data_seq_start not in sender.sent_unacked
    # The evicted frame can no longer refresh the list.
    assert sender.on_ack(AckFrame(SIM.data_seq_start)) is False


def test_receiver_gap_alarm_latches():
    sender = IamkeysSender(SIM)
    receiver = IamkeysReceiver(SIM)
    wires = []
    for i in range(12):
        if sender.alarmed:
            sender.reset_alarm()
        emit = sender.emit(make_frame(sender, value=i))
        wires.append(emit.frame)
    assert receiver.accept(wires[0]).accepted
    assert not receiver.alarmed
    result = receiver.accept(wires[11])     # frames 2..11 never arrive
    assert result.accepted and result.gap == 10
    assert receiver.alarmed
