import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from pufgate.bits import Bits
from pufgate.errors import FormatError
from pufgate.fuzzy import (
    FuzzyParams,
    HelperData,
    fe_decode,
    fe_encode,
    format_helper,
    hkdf_sha256,
    parse_helper,
)
from pufgate.puf import create_device, nominal_response


@pytest.fixture
def enrolled():
    r0 = nominal_response(create_device(2024, 0.05))
    key, helper = fe_encode(r0, FuzzyParams(), encode_seed=9)
    return r0, key, helper


def _flip_random(bits, count, rng):
    return bits.flip(*rng.sample(range(bits.width), count))


def test_rfc5869_hkdf_vector():
    # RFC 5869 test case 1
    ikm = bytes([0x0b] * 22)
    salt = bytes(range(13))
    info = bytes(range(0xf0, 0xfa))
    okm = hkdf_sha256(ikm, salt, info, 42)
    assert okm.hex() == ("3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf"
                         "34007208d5b887185865")


def test_zero_error_round_trip(enrolled):
    r0, key, helper = enrolled
    assert key.width == 448
    assert fe_decode(r0, helper) == key


def test_thirteen_errors_recover_key(enrolled, backend):
    r0, key, helper = enrolled
    rng = random.Random(13)
    for _ in range(300):
        assert fe_decode(_flip_random(r0.bits, 13, rng), helper) == key


def test_forty_errors_do_not_recover_key(enrolled):
    r0, key, helper = enrolled
    rng = random.Random(40)
    misses = sum(fe_decode(_flip_random(r0.bits, 40, rng), helper) != key for _ in range(300))
    assert misses == 300


def test_other_device_gets_other_key(enrolled):
    _, key, helper = enrolled
    for seed in range(200):
        other = nominal_response(create_device(10_000 + seed, 0.05))
        assert fe_decode(other, helper) != key


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**128 - 1), st.integers(0, 2**64 - 1), st.data())
def test_round_trip_within_budget(value, seed, data):
    r0 = Bits(value, 128)
    key, helper = fe_encode(r0, FuzzyParams(), seed)
    positions = data.draw(st.lists(st.integers(0, 127), max_size=13, unique=True))
    assert fe_decode(r0.flip(*positions), helper) == key


def test_helper_is_pure_function_of_inputs(enrolled):
    r0, key, helper = enrolled
    assert fe_encode(r0, FuzzyParams(), 9) == (key, helper)
    assert fe_encode(r0, FuzzyParams(), 10)[1] != helper


def test_key_is_448_bits_for_any_decode(enrolled):
    _, _, helper = enrolled
    for value in (0, 2**128 - 1, 0x5555 << 60):
        assert fe_decode(Bits(value, 128), helper).width == 448


def test_rejects_wrong_response_width():
    with pytest.raises(ValueError):
        fe_encode(Bits(0, 64), FuzzyParams(), 0)


def test_rejects_helper_with_wrong_n(enrolled):
    r0, _, helper = enrolled
    bad = replace(helper, params=FuzzyParams(n=64))
    with pytest.raises(ValueError):
        fe_decode(r0, bad)


@pytest.mark.parametrize("params", [FuzzyParams(k=0), FuzzyParams(k=64), FuzzyParams(key_bits=256)])
def test_rejects_bad_params(params):
    with pytest.raises(ValueError):
        fe_encode(Bits(0, 128), params, 0)


def test_rejects_short_salt(enrolled):
    r0, _, helper = enrolled
    with pytest.raises(ValueError):
        fe_decode(r0, replace(helper, extractor_salt=b"\x00" * 8))


def test_helper_text_round_trip(enrolled):
    _, _, helper = enrolled
    text = format_helper(helper)
    lines = text.splitlines()
    assert lines[0] == "PUFBIND-HELPER v1"
    assert lines[1:3] == ["n=128", "k=13"]
    assert lines[3] == "offset=" + helper.code_offset.hex()
    assert parse_helper(text) == helper


@pytest.mark.parametrize("index,line", [
    (1, "n=64"),
    (2, "k=0"),
    (2, "k=x"),
    (3, "offset=00"),
    (3, "offset=" + "A" * 32),
    (4, "salt=zz" + "0" * 30),
    (4, "pepper=" + "0" * 32),
])
def test_helper_parser_rejects_malformed(enrolled, index, line):
    lines = format_helper(enrolled[2]).splitlines()
    lines[index] = line
    with pytest.raises(FormatError):
        parse_helper("\n".join(lines))


def test_larger_budget_selects_stronger_code():
    assert FuzzyParams(k=13).code.t == 21
    assert FuzzyParams(k=25).code.t == 25
    r0 = Bits(random.Random(1).getrandbits(128), 128)
    key, helper = fe_encode(r0, FuzzyParams(k=25), 3)
    assert isinstance(helper, HelperData)
    assert fe_decode(r0.flip(*range(0, 100, 4)), helper) == key
