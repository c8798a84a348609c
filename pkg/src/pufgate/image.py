"""BRAM image packing: assembler hex in, bound big-endian word image out.

Image layout, by word address::

    0 .. P-1         instructions, each 14 zero bits + 18 instruction bits
    P .. W-9         zero fill
    W-8 .. W-1       golden signature, most significant word first

The golden signature is SHA-256(words 0 .. W-9) xor the device key digest.
"""

import struct
from dataclasses import dataclass
from pathlib import Path

from pufgate.errors import FormatError
from pufgate.sha256 import sha256, xor_digests

INSTRUCTION_BITS = 18
INSTRUCTION_MASK = (1 << INSTRUCTION_BITS) - 1
WORD_BITS = 32
SIGNATURE_WORDS = 8
DEFAULT_BRAM_WORDS = 1024


@dataclass(frozen=True)
class ProgramHex:
    instructions: tuple

    def __post_init__(self):
        if not self.instructions:
            raise ValueError("program is empty")
        for value in self.instructions:
            if not 0 <= value <= INSTRUCTION_MASK:
                raise ValueError(f"instruction {value:#x} exceeds 18 bits")

    def __len__(self):
        return len(self.instructions)


@dataclass(frozen=True)
class BramGeometry:
    total_words: int = DEFAULT_BRAM_WORDS
    word_bits: int = WORD_BITS
    signature_words: int = SIGNATURE_WORDS

    def __post_init__(self):
        if self.word_bits != WORD_BITS or self.signature_words != SIGNATURE_WORDS:
            raise ValueError("only 32-bit words with an 8-word signature are supported")
        if self.total_words < SIGNATURE_WORDS:
            raise ValueError(f"BRAM must hold at least {SIGNATURE_WORDS} words")

    @property
    def program_words(self):
        return self.total_words - self.signature_words

    @property
    def size_bytes(self):
        return self.total_words * 4


@dataclass(frozen=True)
class BramImage:
    words: tuple
    geometry: BramGeometry = BramGeometry()

    def __post_init__(self):
        if len(self.words) != self.geometry.total_words:
            raise ValueError(f"image has {len(self.words)} words, geometry expects {self.geometry.total_words}")
        if any(not 0 <= w <= 0xFFFFFFFF for w in self.words):
            raise ValueError("image words must be 32-bit")

    @property
    def program_region(self):
        return self.words[:self.geometry.program_words]

    @property
    def signature(self):
        """The piggybacked 256-bit reference, as 32 bytes."""
        return struct.pack(">8I", *self.words[self.geometry.program_words:])

    def flip_bit(self, word_index, bit):
        """Copy of the image with one bit flipped (bit 0 = least significant)."""
        words = list(self.words)
        words[word_index] ^= 1 << bit
        return BramImage(tuple(words), self.geometry)


def parse_hex(text):
    """One 5-digit hex instruction per non-blank line."""
    instructions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if len(line) != 5 or any(c not in "0123456789abcdefABCDEF" for c in line):
            raise FormatError(f"line {lineno}: expected 5 hex digits, got {raw!r}")
        value = int(line, 16)
        if value > INSTRUCTION_MASK:
            raise FormatError(f"line {lineno}: {line} exceeds 18 bits")
        instructions.append(value)
    if not instructions:
        raise FormatError("hex file contains no instructions")
    return ProgramHex(tuple(instructions))


def format_hex(prog):
    return "".join(f"{v:05X}\n" for v in prog.instructions)


def align_instructions(prog):
    # 18-bit values zero-extend unchanged; kept as a step for the layout contract
    return [v & INSTRUCTION_MASK for v in prog.instructions]


def program_region_bytes(words):
    return struct.pack(f">{len(words)}I", *words)


def program_digest(image):
    return sha256(program_region_bytes(image.program_region))


def bind_image(prog, geometry, device_digest):
    """Pack ``prog`` into ``geometry`` and piggyback the golden signature."""
    if len(device_digest) != 32:
        raise ValueError("device digest must be 32 bytes")
    if len(prog) > geometry.program_words:
        raise ValueError(
            f"program of {len(prog)} instructions does not fit: "
            f"{geometry.total_words}-word BRAM leaves {geometry.program_words} program words"
        )
    region = align_instructions(prog)
    region += [0] * (geometry.program_words - len(region))
    golden = xor_digests(sha256(program_region_bytes(region)), device_digest)
    return BramImage(tuple(region) + struct.unpack(">8I", golden), geometry)


def image_to_bytes(image):
    return struct.pack(f">{len(image.words)}I", *image.words)


def image_from_bytes(data, geometry=BramGeometry()):
    if len(data) != geometry.size_bytes:
        raise FormatError(f"image is {len(data)} bytes, expected {geometry.size_bytes}")
    return BramImage(struct.unpack(f">{geometry.total_words}I", data), geometry)


def write_image(image, path):
    Path(path).write_bytes(image_to_bytes(image))


def read_image(path, geometry=BramGeometry()):
    return image_from_bytes(Path(path).read_bytes(), geometry)
