"""Body-side endpoint logic: sensor-to-controller scheme.

A static table of dummy values, shared by the controller and every
sensor, seeds per-frame keys; encryption is a single XOR with either the
keystream or its complement. Control frames refresh the table one cell
at a time, and sensors sleep between their transmission and its ACK.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import Bits, rotl8
from .config import ProtocolConfig
from .errors import CodecError, RefreshPendingError, SensorAsleepError, WidthMismatchError
from .framing import AckFrame, KemesisWireFrame
from .rng import draw_nibble, keystream, new_selector, pick_index, pick_uniform

ROLE_SENSOR = "sensor"
ROLE_WCC = "wcc"

#: Keystream seed used to fill deployment-time dummy tables.
TABLE_FILL_SEED = 0xC3

REJECT_REPLAY = "replay"
REJECT_SIGNATURE = "signature-mismatch"
REJECT_INDEX = "index-out-of-range"


class DummyTable:
    """The n-by-k grid of arbitrary field values shared by all nodes."""

    def __init__(self, values: list[list[int]], field_bits: int):
        if not values or not values[0]:
            raise CodecError("dummy table must be non-empty")
        k = len(values[0])
        limit = 1 << field_bits
        for row in values:
            if len(row) != k:
                raise CodecError("dummy table rows must have equal length")
            for v in row:
                if not 0 <= v < limit:
                    raise CodecError(f"table value {v} exceeds {field_bits} bits")
        self.values = [list(row) for row in values]
        self.field_bits = field_bits

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def k(self) -> int:
        return len(self.values[0])

    def get(self, frame_no: int, field_no: int) -> int:
        if not (0 <= frame_no < self.n and 0 <= field_no < self.k):
            raise IndexError(f"cell ({frame_no}, {field_no}) outside {self.n}x{self.k}")
        return self.values[frame_no][field_no]

    def set(self, frame_no: int, field_no: int, value: int) -> None:
        if not 0 <= value < (1 << self.field_bits):
            raise CodecError(f"value {value} exceeds {self.field_bits} bits")
        if not (0 <= frame_no < self.n and 0 <= field_no < self.k):
            raise IndexError(f"cell ({frame_no}, {field_no}) outside {self.n}x{self.k}")
        self.values[frame_no][field_no] = value

    def clone(self) -> "DummyTable":
        return DummyTable(self.values, self.field_bits)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DummyTable)
                and self.field_bits == other.field_bits
                and self.values == other.values)

    def diff(self, other: "DummyTable") -> list[tuple[int, int]]:
        """Cells at which two tables disagree."""
        cells = []
        for i in range(self.n):
            for j in range(self.k):
                if self.values[i][j] != other.values[i][j]:
                    cells.append((i, j))
        return cells


def make_dummy_table(config: ProtocolConfig) -> DummyTable:
    """Deployment-time table fill.

    Values are arbitrary by design; drawing them from a fixed keystream
    keeps both endpoints identical and every run reproducible.
    """
    n, k, w = config.kemesis_frames, config.kemesis_fields, config.kemesis_field_bits
    stream = keystream(TABLE_FILL_SEED, n * k * w, config.zero_seed_substitute)
    values = [
        [stream.subfield((i * k + j) * w, w).value for j in range(k)]
        for i in range(n)
    ]
    return DummyTable(values, w)


def kemesis_derive_key(table: DummyTable, frame_no: int, field_no: int,
                       key_used: int, zero_substitute: int | None = None) -> Bits:
    """Key for one frame: keystream seeded by the cell's low byte.

    key_used selects between the keystream (0) and its complement (1).
    """
    if key_used not in (0, 1):
        raise CodecError(f"key_used out of range: {key_used}")
    cell = table.get(frame_no, field_no)
    if zero_substitute is None:
        k1 = keystream(cell & 0xFF, table.field_bits)
    else:
        k1 = keystream(cell & 0xFF, table.field_bits, zero_substitute)
    return k1 if key_used == 0 else ~k1


def kemesis_encrypt(data: Bits, key: Bits) -> Bits:
    """Plain XOR; decryption is the same operation."""
    if data.width != key.width:
        raise WidthMismatchError(f"data is {data.width} bits, key is {key.width}")
    return data ^ key


kemesis_decrypt = kemesis_encrypt


def kemesis_sign(field_value: int) -> int:
    """One-shot signature: a single circular left shift of the cell value."""
    return rotl8(field_value & 0xFF, 1)


@dataclass(frozen=True)
class KemesisEmit:
    frame: KemesisWireFrame
    key: Bits
    frame_no: int
    field_no: int
    key_used: int


@dataclass(frozen=True)
class KemesisAccept:
    accepted: bool
    reason: str | None = None
    value: int | None = None
    ack: AckFrame | None = None
    key: Bits | None = None
    control: bool = False


@dataclass(frozen=True)
class RefreshEmit:
    frame: KemesisWireFrame
    key: Bits
    frame_no: int
    field_no: int
    new_value: int


class KemesisEndpoint:
    """One side of the body-side scheme; single-owner like the other machines.

    The controller instance serves several sensor peers, so replay
    tracking is per peer name.
    """

    def __init__(self, config: ProtocolConfig, role: str,
                 table: DummyTable | None = None, selector_seed: int = 1):
        if role not in (ROLE_SENSOR, ROLE_WCC):
            raise CodecError(f"unknown role: {role!r}")
        self.config = config
        self.role = role
        self.table = table.clone() if table is not None else make_dummy_table(config)
        self.awake = True
        self.next_seq = 1
        self.last_seen: dict[str, int] = {}
        self.selector = new_selector(selector_seed)
        self.pending_refresh: tuple[int, int, int, int] | None = None

    def _draw_target(self) -> tuple[int, int]:
        frame_no, self.selector = pick_index(self.selector, self.config.kemesis_frames)
        field_no, self.selector = pick_index(self.selector, self.config.kemesis_fields)
        return frame_no, field_no

    def emit_data(self, reading: int) -> KemesisEmit:
        """Encrypt one reading; a sensor then sleeps until acknowledged."""
        if not self.awake:
            raise SensorAsleepError("sensor is asleep until the next ACK")
        frame_no, field_no = self._draw_target()
        key_used, self.selector = pick_uniform(self.selector, 2)
        key = kemesis_derive_key(self.table, frame_no, field_no, key_used,
                                 self.config.zero_seed_substitute)
        frame = KemesisWireFrame(
            frm_type=0,
            seq_no=self.next_seq,
            frame_no=frame_no,
            field_no=field_no,
            key_used=key_used,
            sig=kemesis_sign(self.table.get(frame_no, field_no)),
            enc_data=kemesis_encrypt(Bits(reading, self.config.kemesis_field_bits), key),
        )
        self.next_seq += 1
        if self.role == ROLE_SENSOR:
            self.awake = False
        return KemesisEmit(frame, key, frame_no, field_no, key_used)

    def accept(self, f: KemesisWireFrame, peer: str = "peer") -> KemesisAccept:
        """Verify and decrypt; control frames update the table after the ACK."""
        if f.seq_no <= self.last_seen.get(peer, 0):
            return KemesisAccept(False, REJECT_REPLAY)
        try:
            cell = self.table.get(f.frame_no, f.field_no)
        except IndexError:
            return KemesisAccept(False, REJECT_INDEX)
        if kemesis_sign(cell) != f.sig:
            return KemesisAccept(False, REJECT_SIGNATURE)
        key = kemesis_derive_key(self.table, f.frame_no, f.field_no, f.key_used,
                                 self.config.zero_seed_substitute)
        value = kemesis_decrypt(f.enc_data, key).value
        ack = AckFrame(f.seq_no)
        self.last_seen[peer] = f.seq_no
        control = f.frm_type == 1
        if control:
            # Responder commits at ACK-send time; the initiator commits
            # when that ACK arrives.
            self.table.set(f.frame_no, f.field_no, value)
        return KemesisAccept(True, value=value, ack=ack, key=key, control=control)

    def emit_refresh(self) -> RefreshEmit:
        """Start one table-cell refresh (initiator side).

        The targeted cell's current value is both the key seed and the
        signature input, so the frame is only verifiable before commit.
        """
        if self.pending_refresh is not None:
            raise RefreshPendingError("previous refresh still unacknowledged")
        frame_no, field_no = self._draw_target()
        key_used, self.selector = pick_uniform(self.selector, 2)
        new_value = 0
        for _ in range(self.config.kemesis_field_bits // 4):
            nib, self.selector = draw_nibble(self.selector)
            new_value = (new_value << 4) | nib
        key = kemesis_derive_key(self.table, frame_no, field_no, key_used,
                                 self.config.zero_seed_substitute)
        frame = KemesisWireFrame(
            frm_type=1,
            seq_no=self.next_seq,
            frame_no=frame_no,
            field_no=field_no,
            key_used=key_used,
            sig=kemesis_sign(self.table.get(frame_no, field_no)),
            enc_data=kemesis_encrypt(Bits(new_value, self.config.kemesis_field_bits), key),
        )
        self.pending_refresh = (frame.seq_no, frame_no, field_no, new_value)
        self.next_seq += 1
        return RefreshEmit(frame, key, frame_no, field_no, new_value)

    def on_ack(self, ack: AckFrame) -> str | None:
        """ACKs wake sensors and commit the initiator's pending refresh."""
        if self.role == ROLE_SENSOR:
            was_asleep = not self.awake
            self.awake = True
            return "woke" if was_asleep else None
        if self.pending_refresh is not None and ack.acked_seq_no == self.pending_refresh[0]:
            _, frame_no, field_no, new_value = self.pending_refresh
            self.table.set(frame_no, field_no, new_value)
            self.pending_refresh = None
            return "refresh-committed"
        return None

    def abandon_refresh(self) -> tuple[int, int, int, int] | None:
        """Drop an unacknowledged refresh; the resulting desync is the
        caller's to log, not to repair."""
        pending = self.pending_refresh
        self.pending_refresh = None
        return pending
