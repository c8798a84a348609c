# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: SHA-256 compression and BCH error location over GF(2^7).

Mirrors :mod:`pufgate._fallback` bit for bit.
"""

from libc.stdint cimport uint32_t, uint64_t

cdef uint32_t K256[64]
K256[:] = [
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
]

cdef enum:
    GF_ORDER = 127
    GF_POLY = 0x89

cdef int GF_EXP[2 * GF_ORDER]
cdef int GF_LOG[GF_ORDER + 1]


cdef void _init_gf():
    cdef int x = 1
    cdef int i
    for i in range(GF_ORDER):
        GF_EXP[i] = x
        GF_EXP[i + GF_ORDER] = x
        GF_LOG[x] = i
        x <<= 1
        if x & 0x80:
            x ^= GF_POLY
    GF_LOG[0] = 0


_init_gf()


cdef inline uint32_t rotr(uint32_t x, int n) nogil:
    return (x >> n) | (x << (32 - n))


def sha256_compress(state, const unsigned char[:] blocks):
    """Run the compression function over every 64-byte block in ``blocks``."""
    cdef Py_ssize_t nbytes = blocks.shape[0]
    if nbytes % 64:
        raise ValueError("blocks must be a multiple of 64 bytes")
    cdef uint32_t H[8]
    cdef uint32_t w[64]
    cdef uint32_t a, b, c, d, e, f, g, h, t1, t2
    cdef Py_ssize_t off, i, j
    for i in range(8):
        H[i] = <uint32_t>state[i]
    with nogil:
        off = 0
        while off < nbytes:
            for i in range(16):
                j = off + 4 * i
                w[i] = ((<uint32_t>blocks[j] << 24) | (<uint32_t>blocks[j + 1] << 16)
                        | (<uint32_t>blocks[j + 2] << 8) | <uint32_t>blocks[j + 3])
            for i in range(16, 64):
                w[i] = (w[i - 16]
                        + (rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3))
                        + w[i - 7]
                        + (rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10)))
            a = H[0]; b = H[1]; c = H[2]; d = H[3]
            e = H[4]; f = H[5]; g = H[6]; h = H[7]
            for i in range(64):
                t1 = h + (rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25)) + ((e & f) ^ (~e & g)) + K256[i] + w[i]
                t2 = (rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22)) + ((a & b) ^ (a & c) ^ (b & c))
                h = g; g = f; f = e; e = d + t1
                d = c; c = b; b = a; a = t1 + t2
            H[0] += a; H[1] += b; H[2] += c; H[3] += d
            H[4] += e; H[5] += f; H[6] += g; H[7] += h
            off += 64
    return (H[0], H[1], H[2], H[3], H[4], H[5], H[6], H[7])


cdef inline int gf_mul(int a, int b) nogil:
    if a == 0 or b == 0:
        return 0
    return GF_EXP[GF_LOG[a] + GF_LOG[b]]


def bch_locate_errors(received, int t):
    """Error positions of a length-127 narrow-sense binary BCH word, or None."""
    if not 0 < t < 64:
        raise ValueError("t must be in 1..63")
    cdef uint64_t lo = <uint64_t>(received & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t hi = <uint64_t>((received >> 64) & 0x7FFFFFFFFFFFFFFF)
    cdef int ones[GF_ORDER]
    cdef int nones = 0
    cdef int syn[128]
    cdef int C[128]
    cdef int B[128]
    cdef int T[128]
    cdef int found[GF_ORDER]
    cdef int nfound = 0
    cdef int nsyn = 2 * t
    cdef int i, j, k, r, s, d, L, m, bb, coef, v, p, any_syn
    with nogil:
        for i in range(64):
            if (lo >> i) & 1:
                ones[nones] = i
                nones += 1
        for i in range(63):
            if (hi >> i) & 1:
                ones[nones] = 64 + i
                nones += 1
        any_syn = 0
        for j in range(nsyn + 1):
            syn[j] = 0
        j = 1
        while j <= nsyn:
            s = 0
            for k in range(nones):
                s ^= GF_EXP[(ones[k] * j) % GF_ORDER]
            syn[j] = s
            any_syn |= s
            j += 2
        j = 2
        while j <= nsyn:
            syn[j] = gf_mul(syn[j // 2], syn[j // 2])
            j += 2
    if any_syn == 0:
        return []
    with nogil:
        for i in range(nsyn + 1):
            C[i] = 0
            B[i] = 0
        C[0] = 1
        B[0] = 1
        L = 0
        m = 1
        bb = 1
        for r in range(nsyn):
            d = syn[r + 1]
            for i in range(1, L + 1):
                d ^= gf_mul(C[i], syn[r + 1 - i])
            if d == 0:
                m += 1
                continue
            coef = GF_EXP[(GF_LOG[d] - GF_LOG[bb] + GF_ORDER) % GF_ORDER]
            if 2 * L <= r:
                for i in range(nsyn + 1):
                    T[i] = C[i]
                for i in range(nsyn + 1 - m):
                    C[i + m] ^= gf_mul(coef, B[i])
                L = r + 1 - L
                for i in range(nsyn + 1):
                    B[i] = T[i]
                bb = d
                m = 1
            else:
                for i in range(nsyn + 1 - m):
                    C[i + m] ^= gf_mul(coef, B[i])
                m += 1
    if L > t:
        return None
    with nogil:
        for p in range(GF_ORDER):
            v = 1
            for k in range(1, L + 1):
                if C[k]:
                    v ^= GF_EXP[(GF_LOG[C[k]] + (GF_ORDER - p) * k) % GF_ORDER]
            if v == 0:
                found[nfound] = p
                nfound += 1
    if nfound != L:
        return None
    return [found[i] for i in range(nfound)]
