import hashlib
import struct

import pytest
from hypothesis import given, settings, strategies as st

from pufgate.errors import FormatError
from pufgate.image import (
    BramGeometry,
    BramImage,
    ProgramHex,
    align_instructions,
    bind_image,
    format_hex,
    image_from_bytes,
    image_to_bytes,
    parse_hex,
    program_digest,
    read_image,
    write_image,
)

DIGEST = bytes(range(32))


def test_parse_boundary_values():
    assert parse_hex("00000\n3FFFF\n").instructions == (0x00000, 0x3FFFF)


def test_parse_preserves_order_and_tolerates_blanks():
    prog = parse_hex("01001\n\n2d000  \n22000\n\n")
    assert prog.instructions == (0x01001, 0x2D000, 0x22000)
    assert len(prog) == 3


@pytest.mark.parametrize("text", ["40000\n", "FFFFF\n", "0100\n", "010010\n", "0x100\n", "0G000\n", "", "\n\n"])
def test_parse_rejects(text):
    with pytest.raises(FormatError):
        parse_hex(text)


def test_hex_round_trip():
    prog = ProgramHex((1, 0x3FFFF, 0x2D000))
    assert parse_hex(format_hex(prog)) == prog


def test_align():
    assert align_instructions(ProgramHex((0x3FFFF,))) == [0x0003FFFF]
    assert align_instructions(ProgramHex((0,))) == [0]
    words = align_instructions(ProgramHex(tuple(range(0, 100 * 2000, 2000))))
    assert len(words) == 100
    assert all(w >> 18 == 0 for w in words)


def test_bind_layout():
    prog = ProgramHex((0x01001, 0x2D000, 0x22000))
    image = bind_image(prog, BramGeometry(64), DIGEST)
    assert len(image.words) == 64
    assert image.words[:3] == prog.instructions
    assert all(w == 0 for w in image.words[3:56])
    region = struct.pack(">56I", *image.words[:56])
    expected = bytes(a ^ b for a, b in zip(hashlib.sha256(region).digest(), DIGEST))
    assert image.signature == expected
    assert struct.pack(">8I", *image.words[56:]) == expected


def test_zero_device_digest_gives_bare_program_digest():
    image = bind_image(ProgramHex((5,)), BramGeometry(), bytes(32))
    assert image.signature == program_digest(image)


def test_default_geometry_region_is_4064_bytes():
    image = bind_image(ProgramHex((5,)), BramGeometry(), DIGEST)
    region = struct.pack(">1016I", *image.program_region)
    assert len(region) == 4064  # 63.5 blocks of data
    assert program_digest(image) == hashlib.sha256(region).digest()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 2**18 - 1), min_size=1, max_size=56), st.binary(min_size=32, max_size=32))
def test_signature_xor_recovers_device_digest(instructions, digest):
    image = bind_image(ProgramHex(tuple(instructions)), BramGeometry(64), digest)
    recovered = bytes(a ^ b for a, b in zip(image.signature, program_digest(image)))
    assert recovered == digest
    assert all(w >> 18 == 0 for w in image.words[:len(instructions)])


def test_bind_rejects_oversized_program():
    with pytest.raises(ValueError):
        bind_image(ProgramHex((1,) * 57), BramGeometry(64), DIGEST)
    bind_image(ProgramHex((1,) * 56), BramGeometry(64), DIGEST)


def test_bind_is_deterministic():
    prog = ProgramHex((1, 2, 3))
    assert bind_image(prog, BramGeometry(), DIGEST) == bind_image(prog, BramGeometry(), DIGEST)


def test_file_round_trip(tmp_path):
    image = bind_image(ProgramHex((1, 2, 3)), BramGeometry(), DIGEST)
    path = tmp_path / "a.img"
    write_image(image, path)
    assert path.stat().st_size == 4096
    assert read_image(path) == image
    assert path.read_bytes()[:4] == b"\x00\x00\x00\x01"


@settings(max_examples=50, deadline=None)
@given(st.integers(8, 64).flatmap(lambda n: st.lists(st.integers(0, 2**32 - 1), min_size=n, max_size=n)))
def test_bytes_round_trip(words):
    image = BramImage(tuple(words), BramGeometry(len(words)))
    assert image_from_bytes(image_to_bytes(image), image.geometry) == image


def test_truncated_file_rejected(tmp_path):
    path = tmp_path / "short.img"
    path.write_bytes(b"\x00" * 4095)
    with pytest.raises(FormatError):
        read_image(path)


def test_geometry_validation():
    with pytest.raises(ValueError):
        BramGeometry(7)
    with pytest.raises(ValueError):
        BramImage((0,) * 10, BramGeometry(16))
