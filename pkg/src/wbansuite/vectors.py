"""Golden wire vectors.

A fixed set of named bitstrings covering the codec layouts, keystreams,
key pairs, signatures, and the block cipher. Files hold one
`name: hex` pair per line; regeneration must reproduce them exactly,
which pins the bit order chosen for this implementation.
"""

from __future__ import annotations

from pathlib import Path

from .bits import Bits
from .config import ProtocolConfig
from .errors import CodecError
from .framing import (
    AckFrame,
    DataFrame,
    IamkeysWireFrame,
    KemesisWireFrame,
    serialize_ack,
    serialize_iamkeys,
    serialize_kemesis,
)
from .iamkeys import encrypt_block, sign_frame
from .kemesis import kemesis_derive_key, kemesis_sign, make_dummy_table
from .rng import derive_keypair, draw_nibble, keystream, new_selector


def _selector_nibbles(seed: int, count: int) -> str:
    sel = new_selector(seed)
    digits = []
    for _ in range(count):
        value, sel = draw_nibble(sel)
        digits.append(f"{value:X}")
    return "".join(digits)


def build_vectors(config: ProtocolConfig | None = None) -> list[tuple[str, str]]:
    """Compute every golden vector for the given (default) configuration."""
    config = config or ProtocolConfig()
    kp = derive_keypair(0xA5, 16)
    sum81_frame = DataFrame(seq_no=0, timestamp=0x81, readings=(0,) * config.num_readings)
    table = make_dummy_table(config)

    entries = [
        ("keystream_seed_a5_16", keystream(0xA5, 16).to_hex()),
        ("keystream_seed_00_8", keystream(0x00, 8).to_hex()),
        ("keystream_seed_10_8", keystream(0x10, 8).to_hex()),
        ("keypair_seed_a5_16", (kp.k1 + kp.k2).to_hex()),
        ("block_cipher_d1234_seed_a5", encrypt_block(Bits(0x1234, 16), kp).to_hex()),
        ("kemesis_key_cell_a5_used0",
         kemesis_derive_key(_single_cell_table(0xA5, config), 0, 0, 0).to_hex()),
        ("kemesis_key_cell_a5_used1",
         kemesis_derive_key(_single_cell_table(0xA5, config), 0, 0, 1).to_hex()),
        ("kemesis_sig_cell_81", f"{kemesis_sign(0x81):02X}"),
        ("dummy_table_row0",
         "".join(f"{v:0{config.kemesis_field_bits // 4}X}" for v in table.values[0])),
        ("selector_nibbles_seed1_16", _selector_nibbles(1, 16)),
        ("iamkeys_frame_demo", serialize_iamkeys(
            IamkeysWireFrame(
                enc_data=encrypt_block(Bits(0x1234, 16), kp),
                seq_no=5, ref_frm_seq_no=2, field_no=3, tone=4, sender_auth=0x18,
            ), config).to_hex()),
        ("kemesis_frame_demo", serialize_kemesis(
            KemesisWireFrame(
                frm_type=1, seq_no=7, frame_no=3, field_no=5, key_used=1,
                sig=0x30, enc_data=Bits(0x5A, config.kemesis_field_bits),
            ), config).to_hex()),
        ("ack_frame_demo", serialize_ack(AckFrame(5)).to_hex()),
    ]
    for tone in range(1, 6):
        entries.append(
            (f"iamkeys_auth_sum81_tone{tone}", f"{sign_frame(sum81_frame, tone):02X}")
        )
    return entries


def _single_cell_table(value: int, config: ProtocolConfig):
    from .kemesis import DummyTable

    return DummyTable([[value]], config.kemesis_field_bits)


def write_vectors(path: str | Path, config: ProtocolConfig | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{name}: {hexval}" for name, hexval in build_vectors(config)]
    path.write_text("\n".join(lines) + "\n")
    return path


def parse_vectors(text: str) -> list[tuple[str, str]]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise CodecError(f"vector line {lineno}: expected 'name: hex'")
        name, hexval = (part.strip() for part in line.split(":", 1))
        entries.append((name, hexval))
    return entries


def verify_vectors(path: str | Path,
                   config: ProtocolConfig | None = None) -> list[str]:
    """Recompute and diff; returns human-readable mismatch descriptions."""
    stored = parse_vectors(Path(path).read_text())
    expected = dict(build_vectors(config))
    problems = []
    seen = set()
    for name, hexval in stored:
        seen.add(name)
        if name not in expected:
            problems.append(f"unknown vector: {name}")
        elif expected[name] != hexval:
            problems.append(f"mismatch: {name}: stored {hexval}, computed {expected[name]}")
    for name in expected:
        if name not in seen:
            problems.append(f"missing vector: {name}")
    return problems
