#!/usr/bin/env python3
"""Builds the SBF fixtures from the published GALRawINAV block layout.

Independent of the C++ encoder: own CRC-16-CCITT, own CRC-24Q, own bit packing.
Writes golden.sbf, golden_expected.jsonl, corrupted.sbf and unrelated.sbf.
"""
import hashlib
import json
import os
import struct

WEEK = 604800
GAL_RAW_INAV = 4023


def crc16(data):
    crc = 0
    for byte in data:
        crc ^= byte << 8
        for _ in range(8):
            crc = ((crc << 1) ^ 0x1021) if crc & 0x8000 else crc << 1
            crc &= 0xFFFF
    return crc


def crc24q(bits):
    reg = 0
    for b in bits:
        top = (reg >> 23) & 1
        reg = (reg << 1) & 0xFFFFFF
        if top != b:
            reg ^= 0x864CFB
    return reg


def to_bits(data, n):
    return [(data[i // 8] >> (7 - i % 8)) & 1 for i in range(n)]


def from_bits(bits):
    bits = bits + [0] * (-len(bits) % 8)
    return bytes(int("".join(map(str, bits[i:i + 8])), 2) for i in range(0, len(bits), 8))


def page(seed):
    """240-bit nominal I/NAV page: even half 120 bits, odd half 120 bits."""
    h = hashlib.sha256(seed.encode()).digest()
    data = to_bits(h, 128 + 40)
    even = [0, 0] + data[:112] + [0] * 6           # flag, type, data1, tail
    odd = [1, 0] + data[112:128] + data[128:168]    # flag, type, data2, OSNMA
    odd += [0] * 22 + [0] * 2                       # SAR, spare
    crc = crc24q(even[:114] + odd[:82])
    odd += [(crc >> (23 - i)) & 1 for i in range(24)]
    odd += [0] * 8 + [0] * 6                        # SSP, tail
    assert len(even) == 120 and len(odd) == 120
    return even, odd


def block(block_id, body):
    length = 8 + len(body)
    assert length % 4 == 0
    head = struct.pack("<HH", block_id, length)
    return b"$@" + struct.pack("<H", crc16(head + body)) + head + body


def raw_inav(gst_s, svid, even, odd, source=17):
    end = gst_s + 2  # receiver time tags the end of the page
    tow_ms = (end % WEEK) * 1000
    wnc = end // WEEK + 1024
    nav = from_bits(even[:114] + odd)
    nav += bytes(32 - len(nav))
    words = b"".join(struct.pack("<I", int.from_bytes(nav[i:i + 4], "big")) for i in range(0, 32, 4))
    body = struct.pack("<IHBBBBBB", tow_ms, wnc, svid + 70, 1, 0, source, 0, 3) + words
    return block(GAL_RAW_INAV, body)


def receiver_time():
    body = struct.pack("<IH", 123000, 2291) + bytes(10)
    return block(5914, body)


def main():
    out = os.path.dirname(os.path.abspath(__file__))
    t0 = 1267 * WEEK + 35400
    pages = [(t0 + 2, 4, "a"), (t0, 27, "b"), (t0 + 2, 11, "c")]
    blocks = [b"\x00\x13junk", receiver_time()]
    expected = []
    for gst, svid, seed in pages:
        even, odd = page(seed)
        blocks.append(raw_inav(gst, svid, even, odd))
        full = from_bits(even + odd)
        expected.append((gst, svid, full.hex()))
    # same page on E5b: must be skipped
    e, o = page("e5b")
    blocks.insert(3, raw_inav(t0, 12, e, o, source=21))
    with open(os.path.join(out, "golden.sbf"), "wb") as f:
        f.write(b"".join(blocks))

    expected.sort(key=lambda r: (r[0], r[1]))
    with open(os.path.join(out, "golden_expected.jsonl"), "w") as f:
        for gst, svid, hexpage in expected:
            rec = {"wn": gst // WEEK, "tow": gst % WEEK, "svid": svid, "page_hex": hexpage}
            f.write(json.dumps(rec, separators=(",", ":")) + "\n")

    bad = bytearray(b"".join(blocks))
    victim = bytes(blocks[2])
    pos = bytes(bad).find(victim) + 30
    bad[pos] ^= 0x01
    with open(os.path.join(out, "corrupted.sbf"), "wb") as f:
        f.write(bytes(bad))

    with open(os.path.join(out, "unrelated.sbf"), "wb") as f:
        f.write(receiver_time() + receiver_time())


if __name__ == "__main__":
    main()
