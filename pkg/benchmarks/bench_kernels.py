"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times the two hot paths of an authentication run (the 64-block program
digest and one BCH decode) plus a full ``authenticate`` call per backend.
"""

import argparse
import random
import struct
import timeit

from pufgate import _backend, _fallback

try:
    from pufgate import _kernels
except ImportError:
    _kernels = None


def _workloads():
    from pufgate.bch import bch_code
    from pufgate.sha256 import IV

    rng = random.Random(0)
    region = struct.pack(">1016I", *(rng.getrandbits(32) for _ in range(1016)))
    blocks = region + b"\x80" + b"\x00" * 55 + struct.pack(">Q", len(region) * 8)
    blocks = blocks[:64 * 64]
    code = bch_code(21)
    received = code.encode(rng.getrandbits(code.k))
    for p in rng.sample(range(127), 8):
        received ^= 1 << p
    return IV, blocks, received


def _bench_backend(impl, repeat):
    from pufgate.authenticator import authenticate
    from pufgate.fuzzy import FuzzyParams, fe_encode
    from pufgate.image import BramGeometry, bind_image
    from pufgate.picoblaze import ring_counter_program
    from pufgate.puf import create_device, nominal_response
    from pufgate.sha256 import digest_key

    saved = _backend.sha256_compress, _backend.bch_locate_errors
    _backend.sha256_compress = impl.sha256_compress
    _backend.bch_locate_errors = impl.bch_locate_errors
    try:
        iv, blocks, received = _workloads()
        device = create_device(1, 0.05)
        key, helper = fe_encode(nominal_response(device), FuzzyParams(), 0)
        image = bind_image(ring_counter_program(), BramGeometry(), digest_key(key))
        return {
            "sha256 64 blocks": min(timeit.repeat(lambda: impl.sha256_compress(iv, blocks), number=1, repeat=repeat)),
            "bch decode t=21": min(timeit.repeat(lambda: impl.bch_locate_errors(received, 21), number=1, repeat=repeat)),
            "authenticate": min(timeit.repeat(lambda: authenticate(image, device, helper, 3), number=1, repeat=repeat)),
        }
    finally:
        _backend.sha256_compress, _backend.bch_locate_errors = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=50)
    args = parser.parse_args()

    python = _bench_backend(_fallback, args.repeat)
    compiled = _bench_backend(_kernels, args.repeat) if _kernels else None

    print(f"{'kernel':<20}{'python (us)':>14}{'compiled (us)':>16}{'speedup':>10}")
    for name, t_py in python.items():
        if compiled is None:
            print(f"{name:<20}{t_py * 1e6:>14.1f}{'n/a':>16}{'n/a':>10}")
        else:
            t_c = compiled[name]
            print(f"{name:<20}{t_py * 1e6:>14.1f}{t_c * 1e6:>16.1f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
