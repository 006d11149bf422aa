"""Long-haul endpoint logic: controller-to-monitoring-station scheme.

Keys are derived independently at both ends from a shared, rolling list
of reference frames. Each frame is encrypted with a fresh key pair by a
two-round cross-half cipher, signed with a tone-repeated rotate hash of
the chosen reference frame, and never retransmitted: freshness beats
reliability for live physiological data.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

from .bits import Bits, rotl8
from .config import ProtocolConfig
from .errors import AlarmLatchedError, CodecError, WidthMismatchError
from .framing import AckFrame, DataFrame, IamkeysWireFrame
from .rng import KeyPair, LfsrState, derive_keypair, new_selector, pick_uniform

# Selection register defaults; any nonzero seed works, these are fixed so
# traces are reproducible without configuration.
SENDER_SELECTOR_SEED = 0x1D2C

REJECT_REPLAY = "replay"
REJECT_UNKNOWN_REFERENCE = "unknown-reference-frame"
REJECT_AUTH = "auth-failure"
REJECT_FIELD = "field-out-of-range"


def make_dummy_reference_frames(config: ProtocolConfig) -> list[DataFrame]:
    """The administrator's preloaded reference frames.

    Deterministic placeholder values, identical at both endpoints, with
    sequence numbers 0..size-1 so "oldest" is well defined from the start.
    """
    frames = []
    for i in range(config.ref_list_size):
        readings = tuple(
            (0x21 * (i + 1) + 0x17 * j) & 0xFF for j in range(config.num_readings)
        )
        frames.append(DataFrame(seq_no=i, timestamp=0xD0 + i, readings=readings))
    return frames


class ReferenceFrameList:
    """The shared secret: a fixed-size list of previously agreed frames."""

    def __init__(self, frames: list[DataFrame]):
        frames = list(frames)
        seqs = [f.seq_no for f in frames]
        if len(set(seqs)) != len(seqs):
            raise CodecError("reference frame sequence numbers must be distinct")
        self.frames = frames

    def __len__(self) -> int:
        return len(self.frames)

    def __eq__(self, other) -> bool:
        return isinstance(other, ReferenceFrameList) and self.frames == other.frames

    def lookup(self, seq_no: int) -> DataFrame | None:
        for f in self.frames:
            if f.seq_no == seq_no:
                return f
        return None

    def oldest_index(self) -> int:
        return min(range(len(self.frames)), key=lambda i: self.frames[i].seq_no)

    def commit(self, frame: DataFrame) -> DataFrame:
        """Replace the oldest entry (minimum seq_no); returns the evicted frame."""
        i = self.oldest_index()
        evicted = self.frames[i]
        self.frames[i] = frame
        return evicted

    def copy(self) -> "ReferenceFrameList":
        return ReferenceFrameList(self.frames)


def choose_seed(ref_list: ReferenceFrameList,
                selector: LfsrState) -> tuple[DataFrame, int, int, LfsrState]:
    """Draw a reference frame and one of its hashable fields as the key seed."""
    ref_index, selector = pick_uniform(selector, len(ref_list))
    ref_frame = ref_list.frames[ref_index]
    fields = ref_frame.hashable_fields()
    field_no, selector = pick_uniform(selector, len(fields))
    return ref_frame, field_no, fields[field_no], selector


def _encrypt_raw(d: int, k1: int, k2: int, half: int, half_mask: int) -> int:
    # Round 1: E1 = [RHD^LHK1 | LHD^RHK1]; round 2 repeats with K2.
    e1 = (((d & half_mask) ^ (k1 >> half)) << half) | ((d >> half) ^ (k1 & half_mask))
    return (((e1 & half_mask) ^ (k2 >> half)) << half) | ((e1 >> half) ^ (k2 & half_mask))


def encrypt_block(d: Bits, keys: KeyPair) -> Bits:
    """Two-round cross-half cipher.

    Each round XORs the swapped halves of its input with the halves of
    one key, so after both rounds the data order is preserved and the
    transform is an involution: applying it twice restores the input.
    """
    w = keys.k1.width
    if d.width != w:
        raise WidthMismatchError(f"block is {d.width} bits, keys are {w}")
    if w % 2:
        raise WidthMismatchError(f"block width must be even, got {w}")
    half = w // 2
    half_mask = (1 << half) - 1
    return Bits(_encrypt_raw(d.value, keys.k1.value, keys.k2.value, half, half_mask), w)


def decrypt_block(e: Bits, keys: KeyPair) -> Bits:
    """Decryption is the same transform; the two-round map inverts itself."""
    return encrypt_block(e, keys)


def encrypt_payload(payload: Bits, keys: KeyPair) -> Bits:
    """Encrypt a payload as independent consecutive key-width blocks."""
    w = keys.k1.width
    if payload.width % w:
        raise WidthMismatchError(
            f"payload width {payload.width} is not a multiple of block width {w}"
        )
    out = Bits.zeros(0)
    for i in range(payload.width // w):
        out = out + encrypt_block(payload.subfield(i * w, w), keys)
    return out


decrypt_payload = encrypt_payload


def sign_frame(ref_frame: DataFrame, tone: int) -> int:
    """Sender authentication code.

    The hashable fields of the reference frame are summed mod 256 and
    the sum is hashed (one-bit circular left shift) `tone` times.
    """
    if not 1 <= tone <= 5:
        raise CodecError(f"tone out of range: {tone}")
    total = sum(ref_frame.hashable_fields()) & 0xFF
    return rotl8(total, tone)


@dataclass(frozen=True)
class IamkeysEmit:
    """What one emission produced, including key material for instrumentation."""

    frame: IamkeysWireFrame
    keys: KeyPair
    ref_index: int
    field_no: int
    tone: int
    seed: int


@dataclass(frozen=True)
class IamkeysAccept:
    accepted: bool
    reason: str | None = None
    data: DataFrame | None = None
    ack: AckFrame | None = None
    keys: KeyPair | None = None
    gap: int = 0


class IamkeysSender:
    """Controller-side state machine (the aggregating sink node).

    Single-owner: call emit/on_ack from one thread at a time.
    """

    def __init__(self, config: ProtocolConfig,
                 ref_frames: list[DataFrame] | None = None,
                 selector_seed: int = SENDER_SELECTOR_SEED):
        self.config = config
        self.ref_list = ReferenceFrameList(ref_frames or make_dummy_reference_frames(config))
        self.next_seq = config.data_seq_start
        self.sent_unacked: OrderedDict[int, DataFrame] = OrderedDict()
        self.frames_since_last_ack = 0
        self.selector = new_selector(selector_seed)
        self.alarmed = False

    def emit(self, current: DataFrame) -> IamkeysEmit:
        """Encrypt and frame `current`; raises once the alarm is latched."""
        if self.alarmed:
            raise AlarmLatchedError(
                "link presumed lost after "
                f"{self.config.alarm_threshold} unacknowledged frames"
            )
        if current.seq_no != self.next_seq:
            raise CodecError(
                f"frame seq {current.seq_no} does not continue the session "
                f"(expected {self.next_seq})"
            )
        if len(current.readings) != self.config.num_readings:
            raise CodecError(
                f"expected {self.config.num_readings} readings, got {len(current.readings)}"
            )

        ref_frame, field_no, seed, self.selector = choose_seed(self.ref_list, self.selector)
        ref_index = self.ref_list.frames.index(ref_frame)
        keys = derive_keypair(seed, self.config.block_bits,
                              self.config.zero_seed_substitute)
        enc = encrypt_payload(current.pack_payload(self.config.iamkeys_enc_bits), keys)
        tone_ix, self.selector = pick_uniform(self.selector, 5)
        tone = tone_ix + 1
        frame = IamkeysWireFrame(
            enc_data=enc,
            seq_no=current.seq_no,
            ref_frm_seq_no=ref_frame.seq_no,
            field_no=field_no,
            tone=tone,
            sender_auth=sign_frame(ref_frame, tone),
        )

        # Plaintext retained so a late ACK can still refresh the list;
        # entries older than the alarm horizon are useless and evicted.
        self.sent_unacked[current.seq_no] = current
        while len(self.sent_unacked) > self.config.unacked_capacity:
            self.sent_unacked.popitem(last=False)
        self.next_seq += 1
        self.frames_since_last_ack += 1
        if self.frames_since_last_ack >= self.config.alarm_threshold:
            self.alarmed = True
        return IamkeysEmit(frame, keys, ref_index, field_no, tone, seed)

    def on_ack(self, ack: AckFrame) -> bool:
        """Refresh the reference list from an acknowledged frame.

        Unknown or duplicate acknowledgements are ignored. The ACK counter
        resets only for known acks; the alarm, once latched, stays latched
        until an administrator reset.
        """
        frame = self.sent_unacked.pop(ack.acked_seq_no, None)
        if frame is None:
            return False
        self.ref_list.commit(frame)
        self.frames_since_last_ack = 0
        return True

    def reset_alarm(self) -> None:
        """Administrator reset after a lost-link alarm."""
        self.alarmed = False
        self.frames_since_last_ack = 0


class IamkeysReceiver:
    """Monitoring-station state machine."""

    def __init__(self, config: ProtocolConfig,
                 ref_frames: list[DataFrame] | None = None):
        self.config = config
        self.ref_list = ReferenceFrameList(ref_frames or make_dummy_reference_frames(config))
        self.pending_update: DataFrame | None = None
        self.last_seen_seq = config.data_seq_start - 1
        self.missed_run = 0
        self.alarmed = False

    def accept(self, f: IamkeysWireFrame) -> IamkeysAccept:
        """Authenticate, decrypt, acknowledge, and stage the list update.

        The previously accepted frame is committed into the reference list
        only now ("waits for one more reception"), so the receiver's list
        trails the sender's by exactly one acknowledged frame.
        """
        if f.seq_no <= self.last_seen_seq:
            return IamkeysAccept(False, REJECT_REPLAY)
        ref_frame = self.ref_list.lookup(f.ref_frm_seq_no)
        if ref_frame is None:
            return IamkeysAccept(False, REJECT_UNKNOWN_REFERENCE)
        fields = ref_frame.hashable_fields()
        if f.field_no >= len(fields):
            return IamkeysAccept(False, REJECT_FIELD)
        if sign_frame(ref_frame, f.tone) != f.sender_auth:
            return IamkeysAccept(False, REJECT_AUTH)

        keys = derive_keypair(fields[f.field_no], self.config.block_bits,
                              self.config.zero_seed_substitute)
        payload = decrypt_payload(f.enc_data, keys)
        data = DataFrame.unpack_payload(payload, f.seq_no, self.config.num_readings)
        ack = AckFrame(f.seq_no)

        if self.pending_update is not None:
            self.ref_list.commit(self.pending_update)
        self.pending_update = data

        gap = f.seq_no - self.last_seen_seq - 1
        self.missed_run = gap
        if gap >= self.config.alarm_threshold:
            self.alarmed = True
        self.last_seen_seq = f.seq_no
        return IamkeysAccept(True, data=data, ack=ack, keys=keys, gap=gap)

    def reset_alarm(self) -> None:
        self.alarmed = False
        self.missed_run = 0
