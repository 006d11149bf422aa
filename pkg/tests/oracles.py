"""Independent bit-level oracles.

Everything here works on plain ints and bit lists and deliberately
shares no code with the package: derived expected values in the tests
are computed (or were frozen) from these reference routines.
"""

TAPS8 = (0, 2, 3, 4)
TAPS4 = (0, 3)
TAPS16 = (0, 2, 3, 5)
ZERO_SUB = 0x5A


def step_ref(width, taps, state):
    """One LFSR step: emit bit 0, shift right, XOR feedback into the top."""
    out = state & 1
    fb = 0
    for t in taps:
        fb ^= (state >> t) & 1
    return out, (state >> 1) | (fb << (width - 1))


def period_ref(width, taps, start=1):
    state = start
    count = 0
    while True:
        _, state = step_ref(width, taps, state)
        count += 1
        if state == start:
            return count
        if count > (1 << width) + 1:
            return None


def keystream_bits_ref(seed, nbits, width=8, taps=TAPS8, zero_sub=ZERO_SUB):
    state = seed if seed else zero_sub
    bits = []
    for _ in range(nbits):
        bit, state = step_ref(width, taps, state)
        bits.append(bit)
    return bits


def bits_to_int(bits):
    """MSB-first bit list to integer."""
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def int_to_bits(value, width):
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def keystream_ref(seed, nbits):
    return bits_to_int(keystream_bits_ref(seed, nbits))


def two_round_encrypt_ref(d, k1, k2, width):
    """The two-round cross-half cipher on explicit bit lists."""
    db, k1b, k2b = (int_to_bits(v, width) for v in (d, k1, k2))
    h = width // 2
    lhd, rhd = db[:h], db[h:]
    lhk1, rhk1 = k1b[:h], k1b[h:]
    lhk2, rhk2 = k2b[:h], k2b[h:]
    xor = lambda a, b: [x ^ y for x, y in zip(a, b)]
    e1 = xor(rhd, lhk1) + xor(lhd, rhk1)
    e2 = xor(e1[h:], lhk2) + xor(e1[:h], rhk2)
    return bits_to_int(e2)


def rotl8_ref(value, count):
    bits = int_to_bits(value & 0xFF, 8)
    count %= 8
    return bits_to_int(bits[count:] + bits[:count])


def nibble_ref(state, width=16, taps=TAPS16):
    """Four steps assembled LSB-first, as the selection register draws."""
    value = 0
    for i in range(4):
        bit, state = step_ref(width, taps, state)
        value |= bit << i
    return value, state


def pick_uniform_ref(state, m, width=16, taps=TAPS16):
    if m == 1:
        return 0, state
    while True:
        value, state = nibble_ref(state, width, taps)
        if value < m:
            return value, state
