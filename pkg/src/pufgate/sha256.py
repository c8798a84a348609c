"""SHA-256, one-shot and as a word-streaming engine with cycle accounting.

The streaming engine models the hardware digest unit: one 32-bit BRAM word
enters the 512-bit input buffer per clock cycle, and a compression runs
concurrently with the next fill, so a block costs exactly 16 cycles.
"""

import struct
from dataclasses import dataclass, replace

from pufgate import _backend
from pufgate.bits import Bits

IV = (0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19)
BLOCK_BYTES = 64
WORDS_PER_BLOCK = 16
CYCLES_PER_WORD = 1
KEY_BITS = 448


def _padding(total_bytes):
    zeros = (55 - total_bytes) % BLOCK_BYTES
    return b"\x80" + b"\x00" * zeros + struct.pack(">Q", total_bytes * 8)


def padded_block_count(message_bits):
    """Compressions needed for a message of ``message_bits`` bits, padding included."""
    return -(-(message_bits + 1 + 64) // 512)


def sha256(message):
    message = bytes(message)
    state = _backend.sha256_compress(IV, message + _padding(len(message)))
    return struct.pack(">8I", *state)


@dataclass(frozen=True)
class StreamState:
    chaining_state: tuple = IV
    buffered: bytes = b""
    total_bits: int = 0
    cycles_consumed: int = 0
    blocks_compressed: int = 0


def stream_absorb_word(state, word):
    if not 0 <= word <= 0xFFFFFFFF:
        raise ValueError(f"not a 32-bit word: {word!r}")
    buffered = state.buffered + struct.pack(">I", word)
    chaining = state.chaining_state
    blocks = state.blocks_compressed
    if len(buffered) == BLOCK_BYTES:
        chaining = _backend.sha256_compress(chaining, buffered)
        buffered = b""
        blocks += 1
    return replace(
        state,
        chaining_state=chaining,
        buffered=buffered,
        total_bits=state.total_bits + 32,
        cycles_consumed=state.cycles_consumed + CYCLES_PER_WORD,
        blocks_compressed=blocks,
    )


def stream_absorb_words(state, words):
    """Absorb many words at once; same result and accounting as one at a time."""
    words = list(words)
    if not words:
        return state
    data = state.buffered + struct.pack(f">{len(words)}I", *words)
    full = len(data) - len(data) % BLOCK_BYTES
    chaining = state.chaining_state
    if full:
        chaining = _backend.sha256_compress(chaining, data[:full])
    return StreamState(
        chaining_state=chaining,
        buffered=data[full:],
        total_bits=state.total_bits + 32 * len(words),
        cycles_consumed=state.cycles_consumed + CYCLES_PER_WORD * len(words),
        blocks_compressed=state.blocks_compressed + full // BLOCK_BYTES,
    )


def stream_finalize(state):
    tail = state.buffered + _padding(state.total_bits // 8)
    return struct.pack(">8I", *_backend.sha256_compress(state.chaining_state, tail))


def final_block_count(state):
    """Total compressions the stream will have run once finalized."""
    return state.blocks_compressed + padded_block_count(len(state.buffered) * 8)


def digest_key(key):
    """SHA-256 of a 448-bit derived key, as the 56-byte message it encodes."""
    if not isinstance(key, Bits) or key.width != KEY_BITS:
        width = key.width if isinstance(key, Bits) else f"{len(key) * 8}"
        raise ValueError(f"key must be {KEY_BITS} bits, got {width}")
    return sha256(key.to_bytes())


def xor_digests(a, b):
    if len(a) != len(b):
        raise ValueError("digest length mismatch")
    return bytes(x ^ y for x, y in zip(a, b))
