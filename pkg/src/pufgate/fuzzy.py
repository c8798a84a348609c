"""Code-offset fuzzy extractor over 128-bit PUF responses.

Encoding picks a random codeword ``c`` of an extended BCH code and publishes
``offset = R0 xor c``. Decoding corrects ``R1 xor offset`` back to ``c`` and so
recovers ``R0``; the 448-bit key is an HKDF-SHA256 expansion of ``R0`` salted
with a public random salt.

The code is BCH(127, 29) with correction radius 21, extended by an overall
parity bit to 128 bits (minimum distance 44). The parity bit carries cell 127.
It is never used for correction, so errors in that cell cost nothing.
"""

import hashlib
import hmac
from dataclasses import dataclass

import numpy as np

from pufgate.bch import bch_code
from pufgate.bits import Bits
from pufgate.errors import FormatError
from pufgate.puf import N_CELLS, PufResponse

KEY_BITS = 448
SALT_BYTES = 16
# at 5% cell noise a radius-13 decoder fails on ~0.5% of reads; 21 gives ~4e-7
MIN_CODE_RADIUS = 21

HELPER_HEADER = "PUFBIND-HELPER v1"
_HKDF_INFO = b"pufgate/fuzzy-extractor/key"


@dataclass(frozen=True)
class FuzzyParams:
    n: int = N_CELLS
    k: int = 13
    key_bits: int = KEY_BITS

    def check(self):
        if self.n != N_CELLS:
            raise ValueError(f"fuzzy extractor input width must be {N_CELLS}, got {self.n}")
        if not 0 < self.k < self.n // 2:
            raise ValueError(f"correction budget k must be in 1..{self.n // 2 - 1}, got {self.k}")
        if self.key_bits != KEY_BITS:
            raise ValueError(f"key width must be {KEY_BITS}, got {self.key_bits}")

    @property
    def code_radius(self):
        return max(self.k, MIN_CODE_RADIUS)

    @property
    def code(self):
        return bch_code(self.code_radius)


@dataclass(frozen=True)
class HelperData:
    code_offset: Bits
    extractor_salt: bytes
    params: FuzzyParams

    def check(self):
        self.params.check()
        if self.code_offset.width != self.params.n:
            raise ValueError(f"code offset must be {self.params.n} bits, got {self.code_offset.width}")
        if len(self.extractor_salt) != SALT_BYTES:
            raise ValueError(f"salt must be {SALT_BYTES} bytes, got {len(self.extractor_salt)}")


def _extend(codeword):
    return (codeword << 1) | (codeword.bit_count() & 1)


def hkdf_sha256(ikm, salt, info, length):
    prk = hmac.new(salt, ikm, hashlib.sha256).digest()
    out = b""
    block = b""
    counter = 1
    while len(out) < length:
        block = hmac.new(prk, block + info + bytes([counter]), hashlib.sha256).digest()
        out += block
        counter += 1
    return out[:length]


def _derive_key(stable, salt):
    return Bits.from_bytes(hkdf_sha256(stable.to_bytes(), salt, _HKDF_INFO, KEY_BITS // 8))


def _response_bits(response):
    bits = response.bits if isinstance(response, PufResponse) else response
    if bits.width != N_CELLS:
        raise ValueError(f"response must be {N_CELLS} bits, got {bits.width}")
    return bits


def fe_encode(response, params=FuzzyParams(), encode_seed=0):
    """Return ``(key, helper)`` for an enrollment response.

    The helper is a pure function of (response, params, encode_seed).
    """
    params.check()
    bits = _response_bits(response)
    code = params.code
    rng = np.random.default_rng(encode_seed)
    message = int.from_bytes(rng.bytes(8), "big") & ((1 << code.k) - 1)
    salt = rng.bytes(SALT_BYTES)
    codeword = Bits(_extend(code.encode(message)), N_CELLS)
    helper = HelperData(code_offset=bits ^ codeword, extractor_salt=salt, params=params)
    return _derive_key(bits, salt), helper


def fe_decode(noisy_response, helper):
    """Regenerate the key from a noisy readout.

    Always returns a key. When the readout is too far from the enrolled one
    the key is simply wrong; callers detect that by comparing digests.
    """
    helper.check()
    bits = _response_bits(noisy_response)
    shifted = (bits ^ helper.code_offset).value
    code = helper.params.code
    word = shifted >> 1
    corrected = code.decode(word)
    if corrected is None:
        corrected = word
    stable = helper.code_offset ^ Bits(_extend(corrected), N_CELLS)
    return _derive_key(stable, helper.extractor_salt)


def format_helper(helper):
    helper.check()
    return "\n".join([
        HELPER_HEADER,
        f"n={helper.params.n}",
        f"k={helper.params.k}",
        f"offset={helper.code_offset.hex()}",
        f"salt={helper.extractor_salt.hex()}",
    ]) + "\n"


def _hex_field(text, nbytes, name):
    if len(text) != 2 * nbytes or text != text.lower():
        raise FormatError(f"{name} must be {2 * nbytes} lowercase hex characters")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise FormatError(f"{name} is not valid hex") from None


def helper_from_fields(fields):
    """Build helper data from a mapping with ``n``, ``k``, ``offset``, ``salt``."""
    try:
        n_text, k_text = fields["n"], fields["k"]
        offset_text, salt_text = fields["offset"], fields["salt"]
    except KeyError as exc:
        raise FormatError(f"missing helper field {exc.args[0]!r}") from None
    if not n_text.isdigit() or not k_text.isdigit():
        raise FormatError("n and k must be decimal integers")
    params = FuzzyParams(n=int(n_text), k=int(k_text))
    try:
        params.check()
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    helper = HelperData(
        code_offset=Bits.from_bytes(_hex_field(offset_text, N_CELLS // 8, "offset")),
        extractor_salt=_hex_field(salt_text, SALT_BYTES, "salt"),
        params=params,
    )
    return helper


def parse_helper(text):
    lines = text.splitlines()
    if len(lines) != 5 or lines[0] != HELPER_HEADER:
        raise FormatError("helper data must be a 'PUFBIND-HELPER v1' header and 4 fields")
    fields = {}
    for key, line in zip(("n", "k", "offset", "salt"), lines[1:]):
        if not line.startswith(key + "="):
            raise FormatError(f"expected '{key}=...', got {line!r}")
        fields[key] = line[len(key) + 1:]
    return helper_from_fields(fields)
