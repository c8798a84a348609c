import numpy as np
import pytest

from pufgate.bits import Bits
from pufgate.errors import FormatError
from pufgate.puf import (
    N_CELLS,
    create_device,
    format_device,
    load_device,
    nominal_response,
    parse_device,
    read_response,
    save_device,
)


def test_same_seed_same_device():
    assert create_device(1, 0.05) == create_device(1, 0.05)


def test_device_shape():
    dev = create_device(3, 0.05)
    assert dev.cell_biases.width == N_CELLS
    assert len(dev.flip_probabilities) == N_CELLS
    assert set(dev.flip_probabilities) == {0.05}


def test_distinct_seeds_differ():
    a, b = create_device(1, 0.05), create_device(2, 0.05)
    assert a.cell_biases != b.cell_biases


@pytest.mark.parametrize("noise", [0.6, 0.5, -0.01])
def test_rejects_noise_outside_range(noise):
    with pytest.raises(ValueError):
        create_device(7, noise)


def test_rejects_seed_outside_u64():
    with pytest.raises(ValueError):
        create_device(2**64, 0.05)


def test_inter_device_distance_near_half():
    # 1000 seed pairs; each pair distance ~ Binomial(128, 1/2)/128
    hd = [create_device(2 * i, 0.0).cell_biases.hamming(create_device(2 * i + 1, 0.0).cell_biases) / N_CELLS
          for i in range(1000)]
    assert abs(np.mean(hd) - 0.5) < 0.03


def test_zero_noise_read_is_exact():
    dev = create_device(11, 0.0)
    for seed in range(20):
        assert read_response(dev, seed).bits == dev.cell_biases


def test_read_is_deterministic():
    dev = create_device(11, 0.05)
    assert read_response(dev, 42) == read_response(dev, 42)


def test_intra_device_flip_count_is_binomial():
    dev = create_device(5, 0.05)
    flips = np.array([read_response(dev, s).bits.hamming(dev.cell_biases) for s in range(1000)])
    # mean of Binomial(128, 0.05) is 6.4; standard error over 1000 reads
    se = np.sqrt(128 * 0.05 * 0.95 / 1000)
    assert abs(flips.mean() - 6.4) < 3 * se
    assert abs(flips.mean() / 128 - 0.05) < 0.01


def test_nominal_response_is_bias_pattern():
    dev = create_device(5, 0.2)
    assert nominal_response(dev).bits == dev.cell_biases


def test_device_file_round_trip(tmp_path):
    dev = create_device(123456789, 0.05, "board-7")
    path = tmp_path / "d.dev"
    save_device(dev, path)
    assert load_device(path) == dev
    lines = path.read_text().splitlines()
    assert lines[0] == "PUFBIND-DEVICE v1"
    assert lines[4] == "biases=" + dev.cell_biases.hex()


def test_device_file_bias_is_msb_first():
    dev = create_device(1, 0.0)
    text = format_device(dev)
    biases = Bits.from_hex(text.splitlines()[4].split("=")[1], 128)
    assert biases.bit(0) == dev.cell_biases.to_array()[0]


@pytest.mark.parametrize("mutate", [
    lambda ls: ls[:4],
    lambda ls: ["PUFBIND-DEVICE v2"] + ls[1:],
    lambda ls: ls[:1] + ["name=x"] + ls[2:],
    lambda ls: ls[:2] + ["seed=-1"] + ls[3:],
    lambda ls: ls[:3] + ["noise=0.5"] + ls[4:],
    lambda ls: ls[:3] + ["noise=abc"] + ls[4:],
    lambda ls: ls[:4] + [ls[4][:-1]],
    lambda ls: ls[:4] + [ls[4][:-1] + "g"],
    lambda ls: ls[:1] + ["id=has space"] + ls[2:],
])
def test_device_parser_rejects_malformed(mutate):
    lines = format_device(create_device(1, 0.05)).splitlines()
    with pytest.raises(FormatError):
        parse_device("\n".join(mutate(lines)) + "\n")
