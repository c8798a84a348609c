"""Pure-Python versions of the hot kernels.

Selected by :mod:`pufgate._backend` when the compiled ``_kernels`` extension
is missing or ``PUFGATE_PURE_PYTHON`` is set. Signatures and results must
match the extension exactly.
"""

import struct

_M32 = 0xFFFFFFFF

K256 = (
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
)

# GF(2^7) with primitive polynomial x^7 + x^3 + 1
GF_ORDER = 127
GF_POLY = 0x89

GF_EXP = [0] * (2 * GF_ORDER)
GF_LOG = [0] * (GF_ORDER + 1)
_x = 1
for _i in range(GF_ORDER):
    GF_EXP[_i] = GF_EXP[_i + GF_ORDER] = _x
    GF_LOG[_x] = _i
    _x <<= 1
    if _x & 0x80:
        _x ^= GF_POLY
del _x, _i


def sha256_compress(state, blocks):
    """Run the compression function over every 64-byte block in ``blocks``."""
    if len(blocks) % 64:
        raise ValueError("blocks must be a multiple of 64 bytes")
    h0, h1, h2, h3, h4, h5, h6, h7 = state
    k = K256
    for off in range(0, len(blocks), 64):
        w = list(struct.unpack_from(">16I", blocks, off))
        for i in range(16, 64):
            x = w[i - 15]
            y = w[i - 2]
            s0 = ((x >> 7) | (x << 25)) ^ ((x >> 18) | (x << 14)) ^ (x >> 3)
            s1 = ((y >> 17) | (y << 15)) ^ ((y >> 19) | (y << 13)) ^ (y >> 10)
            w.append((w[i - 16] + s0 + w[i - 7] + s1) & _M32)
        a, b, c, d, e, f, g, h = h0, h1, h2, h3, h4, h5, h6, h7
        for i in range(64):
            S1 = ((e >> 6) | (e << 26)) ^ ((e >> 11) | (e << 21)) ^ ((e >> 25) | (e << 7))
            ch = (e & f) ^ (~e & g)
            t1 = (h + (S1 & _M32) + ch + k[i] + w[i]) & _M32
            S0 = ((a >> 2) | (a << 30)) ^ ((a >> 13) | (a << 19)) ^ ((a >> 22) | (a << 10))
            maj = (a & b) ^ (a & c) ^ (b & c)
            t2 = ((S0 & _M32) + maj) & _M32
            h, g, f, e, d, c, b, a = g, f, e, (d + t1) & _M32, c, b, a, (t1 + t2) & _M32
        h0 = (h0 + a) & _M32
        h1 = (h1 + b) & _M32
        h2 = (h2 + c) & _M32
        h3 = (h3 + d) & _M32
        h4 = (h4 + e) & _M32
        h5 = (h5 + f) & _M32
        h6 = (h6 + g) & _M32
        h7 = (h7 + h) & _M32
    return (h0, h1, h2, h3, h4, h5, h6, h7)


def _gf_mul(a, b):
    if a == 0 or b == 0:
        return 0
    return GF_EXP[GF_LOG[a] + GF_LOG[b]]


def bch_locate_errors(received, t):
    """Error positions of a length-127 narrow-sense binary BCH word.

    ``received`` is the word as an int (bit i = coefficient of x^i). Returns
    the sorted error positions, or None when the pattern is not decodable
    within radius ``t``.
    """
    if not 0 < t < 64:
        raise ValueError("t must be in 1..63")
    ones = [i for i in range(GF_ORDER) if (received >> i) & 1]
    nsyn = 2 * t
    syn = [0] * (nsyn + 1)
    for j in range(1, nsyn + 1, 2):
        s = 0
        for i in ones:
            s ^= GF_EXP[(i * j) % GF_ORDER]
        syn[j] = s
    for j in range(2, nsyn + 1, 2):
        syn[j] = _gf_mul(syn[j // 2], syn[j // 2])
    if not any(syn):
        return []

    # Berlekamp-Massey
    C = [1] + [0] * nsyn
    B = [1] + [0] * nsyn
    L, m, b = 0, 1, 1
    for r in range(nsyn):
        d = syn[r + 1]
        for i in range(1, L + 1):
            if C[i] and syn[r + 1 - i]:
                d ^= GF_EXP[GF_LOG[C[i]] + GF_LOG[syn[r + 1 - i]]]
        if d == 0:
            m += 1
            continue
        coef = GF_EXP[(GF_LOG[d] - GF_LOG[b]) % GF_ORDER]
        if 2 * L <= r:
            T = C[:]
            for i in range(nsyn + 1 - m):
                if B[i]:
                    C[i + m] ^= _gf_mul(coef, B[i])
            L = r + 1 - L
            B = T
            b = d
            m = 1
        else:
            for i in range(nsyn + 1 - m):
                if B[i]:
                    C[i + m] ^= _gf_mul(coef, B[i])
            m += 1
    if L > t:
        return None

    # Chien search: position p is in error iff Lambda(alpha^-p) == 0
    logs = [(k, GF_LOG[C[k]]) for k in range(1, L + 1) if C[k]]
    found = []
    for p in range(GF_ORDER):
        v = 1
        neg = GF_ORDER - p
        for k, lc in logs:
            v ^= GF_EXP[(lc + neg * k) % GF_ORDER]
        if v == 0:
            found.append(p)
    if len(found) != L:
        return None
    return found
