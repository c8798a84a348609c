"""Simulated pre-execution authentication unit and execution gate."""

import enum
from dataclasses import dataclass

from pufgate.fuzzy import fe_decode
from pufgate.image import SIGNATURE_WORDS, WORD_BITS
from pufgate.puf import read_response
from pufgate.sha256 import (
    WORDS_PER_BLOCK,
    StreamState,
    digest_key,
    final_block_count,
    padded_block_count,
    stream_absorb_words,
    stream_finalize,
    xor_digests,
)

DEFAULT_CLOCK_HZ = 100_000_000
COMPARE_CYCLES = 1


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


class ExecutionGate:
    """Instruction-fetch enable. Starts closed and can only ever open."""

    __slots__ = ("_enabled",)

    def __init__(self):
        self._enabled = False

    @property
    def enabled(self):
        return self._enabled

    def open_for(self, report):
        if report.verdict is Verdict.PASS and report.consistent():
            self._enabled = True
        return self._enabled

    def __repr__(self):
        return f"ExecutionGate(enabled={self._enabled})"


@dataclass(frozen=True)
class AuthReport:
    device_id: str
    sha_bpuf: bytes
    sha_prog_bin: bytes
    sha_exor_hardware: bytes
    sha_exor_reference: bytes
    verdict: Verdict
    cycles: int
    latency_seconds: float

    def consistent(self):
        """XOR algebra and verdict agree with the recorded digests."""
        return (
            xor_digests(self.sha_exor_hardware, self.sha_bpuf) == self.sha_prog_bin
            and (self.verdict is Verdict.PASS) == (self.sha_exor_hardware == self.sha_exor_reference)
        )

    @property
    def passed(self):
        return self.verdict is Verdict.PASS

    def render(self):
        return "\n".join([
            f"device={self.device_id}",
            f"sha_bpuf={self.sha_bpuf.hex()}",
            f"sha_prog_bin={self.sha_prog_bin.hex()}",
            f"sha_exor_hardware={self.sha_exor_hardware.hex()}",
            f"sha_exor_reference={self.sha_exor_reference.hex()}",
            f"verdict={self.verdict.value}",
            f"cycles={self.cycles}",
            f"latency_us={self.latency_seconds * 1e6:.3f}",
        ]) + "\n"


def cycle_model(total_words):
    """Clock cycles to authenticate a ``total_words`` BRAM image."""
    if total_words < SIGNATURE_WORDS:
        raise ValueError(f"BRAM must hold at least {SIGNATURE_WORDS} words, got {total_words}")
    region_bits = (total_words - SIGNATURE_WORDS) * WORD_BITS
    return WORDS_PER_BLOCK * padded_block_count(region_bits) + COMPARE_CYCLES


def authenticate(image, device, helper, read_seed, clock_hz=DEFAULT_CLOCK_HZ, gate=None, geometry=None):
    """Run one authentication of ``image`` on ``device``.

    If ``gate`` is given it is opened after the comparison, and only on Pass.
    """
    helper.check()
    if geometry is not None and geometry != image.geometry:
        raise ValueError(f"image geometry {image.geometry} does not match expected {geometry}")
    if clock_hz <= 0:
        raise ValueError("clock_hz must be positive")

    response = read_response(device, read_seed)
    sha_bpuf = digest_key(fe_decode(response, helper))

    stream = stream_absorb_words(StreamState(), image.program_region)
    sha_prog_bin = stream_finalize(stream)
    cycles = WORDS_PER_BLOCK * final_block_count(stream) + COMPARE_CYCLES

    sha_exor_hardware = xor_digests(sha_prog_bin, sha_bpuf)
    reference = image.signature
    verdict = Verdict.PASS if sha_exor_hardware == reference else Verdict.FAIL
    report = AuthReport(
        device_id=device.device_id,
        sha_bpuf=sha_bpuf,
        sha_prog_bin=sha_prog_bin,
        sha_exor_hardware=sha_exor_hardware,
        sha_exor_reference=reference,
        verdict=verdict,
        cycles=cycles,
        latency_seconds=cycles / clock_hz,
    )
    if gate is not None:
        gate.open_for(report)
    return report
