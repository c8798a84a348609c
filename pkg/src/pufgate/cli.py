"""Command-line front end.

Exit status: 0 on success or Pass, 1 on a Fail verdict, 2 on usage or
format errors.
"""

import argparse
import sys
from pathlib import Path

from pufgate.authenticator import DEFAULT_CLOCK_HZ, ExecutionGate, authenticate
from pufgate.errors import FormatError, RegistryError
from pufgate.image import BramGeometry, DEFAULT_BRAM_WORDS, bind_image, parse_hex, read_image, write_image
from pufgate.picoblaze import CoreFault, CoreState, run as run_core
from pufgate.puf import DEFAULT_NOISE, U64_MAX, create_device, load_device, save_device
from pufgate.registry import Registry, authenticate_device, enroll_device

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def enroll(device_file, registry_path, encode_seed=0):
    return enroll_device(load_device(device_file), Registry(registry_path), encode_seed)


def auth_device(device_file, registry_path, read_seed):
    device = load_device(device_file)
    record = Registry(registry_path).get(device.device_id)
    return authenticate_device(device, record, read_seed)


def bind(hex_file, registry_path, device_id, bram_words=DEFAULT_BRAM_WORDS, output=None):
    record = Registry(registry_path).get(device_id)
    prog = parse_hex(Path(hex_file).read_text())
    image = bind_image(prog, BramGeometry(bram_words), record.sha256_k0)
    if output is not None:
        write_image(image, output)
    return image


def verify(image_file, device_file, registry_path, read_seed, clock_hz=DEFAULT_CLOCK_HZ,
           bram_words=DEFAULT_BRAM_WORDS, gate=None):
    geometry = BramGeometry(bram_words)
    image = read_image(image_file, geometry)
    device = load_device(device_file)
    record = Registry(registry_path).get(device.device_id)
    return authenticate(image, device, record.helper, read_seed, clock_hz, gate=gate, geometry=geometry)


def run(image_file, device_file, registry_path, read_seed, max_steps, bram_words=DEFAULT_BRAM_WORDS,
        clock_hz=DEFAULT_CLOCK_HZ):
    """Verify, then execute only if the gate opened. Returns ``(report, core)``."""
    gate = ExecutionGate()
    report = verify(image_file, device_file, registry_path, read_seed, clock_hz, bram_words, gate)
    core = CoreState()
    if gate.enabled:
        core = run_core(core, read_image(image_file, BramGeometry(bram_words)), gate, max_steps)
    return report, core


def _u64(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"{value} is not an unsigned 64-bit integer")
    return value


def _int_at_least(low):
    def parse(text):
        try:
            value = int(text, 10)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < low:
            raise argparse.ArgumentTypeError(f"must be at least {low}")
        return value
    return parse


_positive_int = _int_at_least(1)
_non_negative_int = _int_at_least(0)


def build_parser():
    parser = argparse.ArgumentParser(prog="pufgate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new-device", help="manufacture a simulated PUF device file")
    p.add_argument("output", type=Path)
    p.add_argument("--seed", type=_u64, required=True, help="creation seed")
    p.add_argument("--noise", type=float, default=DEFAULT_NOISE, help="per-read cell flip probability")
    p.add_argument("--id", dest="device_id", default=None)

    p = sub.add_parser("enroll", help="record <SHA256_K0, helper data> for a device")
    p.add_argument("device", type=Path)
    p.add_argument("--registry", type=Path, required=True)
    p.add_argument("--seed", type=_u64, default=0, help="fuzzy extractor encode seed")

    p = sub.add_parser("auth-device", help="authenticate a device against its enrollment")
    p.add_argument("device", type=Path)
    p.add_argument("--registry", type=Path, required=True)
    p.add_argument("--seed", type=_u64, default=0, help="PUF read seed")

    p = sub.add_parser("bind", help="bind a program hex file to an enrolled device")
    p.add_argument("hex_file", type=Path)
    p.add_argument("--registry", type=Path, required=True)
    p.add_argument("--device-id", required=True)
    p.add_argument("--bram-words", type=_positive_int, default=DEFAULT_BRAM_WORDS)
    p.add_argument("-o", "--output", type=Path, required=True)

    for name, help_text in (("verify", "authenticate a bound image on a device"),
                            ("run", "authenticate, then execute on Pass")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("image", type=Path)
        p.add_argument("device", type=Path)
        p.add_argument("--registry", type=Path, required=True)
        p.add_argument("--seed", type=_u64, default=0, help="PUF read seed")
        p.add_argument("--bram-words", type=_positive_int, default=DEFAULT_BRAM_WORDS)
        p.add_argument("--clock-hz", type=_positive_int, default=DEFAULT_CLOCK_HZ)
        if name == "run":
            p.add_argument("--max-steps", type=_non_negative_int, default=64)
    return parser


def _dispatch(args, out):
    if args.command == "new-device":
        device = create_device(args.seed, args.noise, args.device_id)
        save_device(device, args.output)
        print(f"id={device.device_id}", file=out)
        return EXIT_PASS

    if args.command == "enroll":
        record = enroll(args.device, args.registry, args.seed)
        print(record.to_line(), file=out)
        return EXIT_PASS

    if args.command == "auth-device":
        ok = auth_device(args.device, args.registry, args.seed)
        print("Pass" if ok else "Fail", file=out)
        return EXIT_PASS if ok else EXIT_FAIL

    if args.command == "bind":
        image = bind(args.hex_file, args.registry, args.device_id, args.bram_words, args.output)
        print(f"signature={image.signature.hex()}", file=out)
        return EXIT_PASS

    if args.command == "verify":
        report = verify(args.image, args.device, args.registry, args.seed, args.clock_hz, args.bram_words)
        out.write(report.render())
        return EXIT_PASS if report.passed else EXIT_FAIL

    if args.command == "run":
        report, core = run(args.image, args.device, args.registry, args.seed, args.max_steps,
                           args.bram_words, args.clock_hz)
        if not report.passed:
            out.write(report.render())
            return EXIT_FAIL
        for value in core.port_writes:
            print(f"{value:02x}", file=out)
        return EXIT_PASS

    raise AssertionError(args.command)


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args, out)
    except (FormatError, RegistryError, CoreFault, ValueError, OSError) as exc:
        print(f"pufgate: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
