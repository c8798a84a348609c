"""Fixed-width bit strings, most-significant bit first."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Bits:
    """An immutable bit string of exactly ``width`` bits.

    Bit index 0 is the most significant bit of ``value``, so the hex
    rendering reads left to right in index order.
    """

    value: int
    width: int

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value does not fit in {self.width} bits")

    @classmethod
    def from_bytes(cls, data, width=None):
        width = len(data) * 8 if width is None else width
        if width > len(data) * 8:
            raise ValueError("not enough bytes for requested width")
        return cls(int.from_bytes(data, "big") >> (len(data) * 8 - width), width)

    @classmethod
    def from_hex(cls, text, width):
        if len(text) != (width + 3) // 4:
            raise ValueError(f"expected {(width + 3) // 4} hex digits, got {len(text)}")
        try:
            value = int(text, 16)
        except ValueError:
            raise ValueError(f"not a hex string: {text!r}") from None
        return cls(value, width)

    @classmethod
    def from_array(cls, arr):
        """Build from a 0/1 array, element 0 becoming the MSB."""
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("expected a non-empty 1-d bit array")
        if np.any(arr > 1):
            raise ValueError("bit array must contain only 0 and 1")
        packed = np.packbits(arr).tobytes()
        return cls.from_bytes(packed, arr.size)

    def to_array(self):
        data = self.value.to_bytes((self.width + 7) // 8, "big")
        arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        return arr[(len(data) * 8 - self.width):]

    def to_bytes(self):
        if self.width % 8:
            raise ValueError(f"{self.width}-bit string is not byte aligned")
        return self.value.to_bytes(self.width // 8, "big")

    def hex(self):
        return format(self.value, f"0{(self.width + 3) // 4}x")

    def bit(self, index):
        if not 0 <= index < self.width:
            raise IndexError(index)
        return (self.value >> (self.width - 1 - index)) & 1

    def flip(self, *indices):
        mask = 0
        for i in indices:
            if not 0 <= i < self.width:
                raise IndexError(i)
            mask ^= 1 << (self.width - 1 - i)
        return Bits(self.value ^ mask, self.width)

    def weight(self):
        return self.value.bit_count()

    def hamming(self, other):
        self._check_width(other)
        return (self.value ^ other.value).bit_count()

    def __xor__(self, other):
        self._check_width(other)
        return Bits(self.value ^ other.value, self.width)

    def __len__(self):
        return self.width

    def _check_width(self, other):
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
