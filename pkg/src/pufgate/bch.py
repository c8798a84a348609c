"""Narrow-sense primitive binary BCH codes of length 127.

Codewords and polynomials over GF(2) are plain ints, bit i holding the
coefficient of x^i. Encoding is systematic: the message occupies the top
``k`` coefficients.
"""

from functools import lru_cache

from pufgate import _backend
from pufgate._fallback import GF_EXP, GF_LOG, GF_ORDER

N = GF_ORDER


def _cyclotomic_coset(c):
    coset = []
    e = c % N
    while e not in coset:
        coset.append(e)
        e = (e * 2) % N
    return coset


def _minimal_polynomial(c):
    # product of (x + alpha^e) over the coset; coefficients land in GF(2)
    poly = [1]
    for e in _cyclotomic_coset(c):
        root = GF_EXP[e]
        nxt = [0] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] ^= coef
            if coef:
                nxt[i] ^= GF_EXP[GF_LOG[coef] + GF_LOG[root]]
        poly = nxt
    if any(coef not in (0, 1) for coef in poly):
        raise AssertionError("minimal polynomial escaped GF(2)")
    return sum(1 << i for i, coef in enumerate(poly) if coef)


def _gf2_mul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_mod(a, m):
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


class BCHCode:
    """Binary BCH code, length 127, designed to correct ``t`` errors."""

    def __init__(self, t):
        if not 0 < t < 64:
            raise ValueError(f"t must be in 1..63, got {t}")
        self.t = t
        self.n = N
        seen = set()
        g = 1
        for c in range(1, 2 * t + 1):
            coset = frozenset(_cyclotomic_coset(c))
            if coset in seen:
                continue
            seen.add(coset)
            g = _gf2_mul(g, _minimal_polynomial(c))
        self.generator = g
        self.k = N - (g.bit_length() - 1)

    def __repr__(self):
        return f"BCHCode(n={self.n}, k={self.k}, t={self.t})"

    def encode(self, message):
        if not 0 <= message < (1 << self.k):
            raise ValueError(f"message must fit in {self.k} bits")
        shifted = message << (self.n - self.k)
        return shifted ^ gf2_mod(shifted, self.generator)

    def is_codeword(self, word):
        return gf2_mod(word, self.generator) == 0

    def decode(self, received):
        """Nearest codeword within radius t, or None when decoding fails."""
        if not 0 <= received < (1 << self.n):
            raise ValueError("received word must fit in 127 bits")
        locations = _backend.bch_locate_errors(received, self.t)
        if locations is None:
            return None
        word = received
        for p in locations:
            word ^= 1 << p
        if not self.is_codeword(word):
            return None
        return word


@lru_cache(maxsize=None)
def bch_code(t):
    return BCHCode(t)
