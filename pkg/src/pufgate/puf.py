"""Behavioral model of a 128-cell Butterfly PUF array.

Each simulated device has a fixed preferred value per cell (drawn once from
its creation seed) and an independent per-read flip probability per cell.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from pufgate.bits import Bits
from pufgate.errors import FormatError

N_CELLS = 128
DEFAULT_NOISE = 0.05
U64_MAX = (1 << 64) - 1

DEVICE_HEADER = "PUFBIND-DEVICE v1"


@dataclass(frozen=True)
class DeviceModel:
    device_id: str
    cell_biases: Bits
    flip_probabilities: tuple
    creation_seed: int

    def __post_init__(self):
        _check_device_id(self.device_id)
        if self.cell_biases.width != N_CELLS:
            raise ValueError(f"expected {N_CELLS} cells, got {self.cell_biases.width}")
        if len(self.flip_probabilities) != N_CELLS:
            raise ValueError(f"expected {N_CELLS} flip probabilities")
        if not all(0.0 <= p <= 1.0 for p in self.flip_probabilities):
            raise ValueError("flip probabilities must lie in [0, 1]")
        _check_u64(self.creation_seed, "creation_seed")

    @property
    def noise_level(self):
        return self.flip_probabilities[0]


@dataclass(frozen=True)
class PufResponse:
    bits: Bits
    device_id: str

    def __post_init__(self):
        if self.bits.width != N_CELLS:
            raise ValueError(f"response must be {N_CELLS} bits, got {self.bits.width}")


def _check_u64(value, name):
    if not isinstance(value, (int, np.integer)) or not 0 <= value <= U64_MAX:
        raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")


def _check_device_id(device_id):
    if not device_id or any(c.isspace() for c in device_id):
        raise ValueError(f"device id must be non-empty without whitespace: {device_id!r}")


def create_device(creation_seed, noise_level=DEFAULT_NOISE, device_id=None):
    """Manufacture a simulated device; identical arguments give an identical device."""
    _check_u64(creation_seed, "creation_seed")
    if not 0.0 <= noise_level < 0.5:
        raise ValueError(f"noise_level must lie in [0, 0.5), got {noise_level}")
    rng = np.random.default_rng(creation_seed)
    biases = Bits.from_array(rng.integers(0, 2, size=N_CELLS, dtype=np.uint8))
    return DeviceModel(
        device_id=device_id or f"fpga-{creation_seed}",
        cell_biases=biases,
        flip_probabilities=(float(noise_level),) * N_CELLS,
        creation_seed=int(creation_seed),
    )


def read_response(device, read_seed):
    """One noisy readout; each cell flips independently with its own probability."""
    _check_u64(read_seed, "read_seed")
    rng = np.random.default_rng([read_seed, device.creation_seed])
    flips = rng.random(N_CELLS) < np.asarray(device.flip_probabilities)
    return PufResponse(device.cell_biases ^ Bits.from_array(flips), device.device_id)


def nominal_response(device):
    """Noise-suppressed readout used at enrollment: the stable cell pattern."""
    return PufResponse(device.cell_biases, device.device_id)


def format_device(device):
    noise = device.noise_level
    if any(p != noise for p in device.flip_probabilities):
        raise ValueError("device file format only stores a uniform noise level")
    return "\n".join([
        DEVICE_HEADER,
        f"id={device.device_id}",
        f"seed={device.creation_seed}",
        f"noise={noise!r}",
        f"biases={device.cell_biases.hex()}",
    ]) + "\n"


def _field(line, key):
    prefix = key + "="
    if not line.startswith(prefix):
        raise FormatError(f"expected '{prefix}...', got {line!r}")
    return line[len(prefix):]


def parse_device(text):
    lines = text.splitlines()
    if len(lines) != 5:
        raise FormatError(f"device file must have 5 lines, got {len(lines)}")
    if lines[0] != DEVICE_HEADER:
        raise FormatError(f"bad device header {lines[0]!r}")
    device_id = _field(lines[1], "id")
    seed_text = _field(lines[2], "seed")
    noise_text = _field(lines[3], "noise")
    bias_text = _field(lines[4], "biases")
    if not seed_text.isdigit():
        raise FormatError(f"seed must be a decimal integer: {seed_text!r}")
    try:
        noise = float(noise_text)
    except ValueError:
        raise FormatError(f"bad noise value {noise_text!r}") from None
    if not 0.0 <= noise < 0.5:
        raise FormatError(f"noise must lie in [0, 0.5): {noise}")
    if len(bias_text) != 32 or any(c not in "0123456789abcdefABCDEF" for c in bias_text):
        raise FormatError(f"biases must be 32 hex characters: {bias_text!r}")
    try:
        return DeviceModel(
            device_id=device_id,
            cell_biases=Bits.from_hex(bias_text, N_CELLS),
            flip_probabilities=(noise,) * N_CELLS,
            creation_seed=int(seed_text),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def save_device(device, path):
    Path(path).write_text(format_device(device))


def load_device(path):
    return parse_device(Path(path).read_text())
