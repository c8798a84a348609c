"""Minimal KCPSM6 (PicoBlaze) interpreter gated by the authentication unit.

Supported subset, using the KCPSM6 opcode field (bits 17..12)::

    LOAD sX, kk     0x01 X kk
    ADD  sX, kk     0x11 X kk     8-bit wrap, flags not modelled
    OUTPUT sX, pp   0x2D X pp
    JUMP aaa        0x22 aaa
    HALT            0x00000       (simulator convention; not a KCPSM6 instruction)

Only the low 18 bits of a BRAM word are decoded.
"""

from dataclasses import dataclass, replace
from importlib import resources

from pufgate.image import INSTRUCTION_MASK, parse_hex

OP_LOAD = 0x01
OP_ADD = 0x11
OP_OUTPUT = 0x2D
OP_JUMP = 0x22
HALT = 0x00000
N_REGISTERS = 16


class GateClosedError(RuntimeError):
    """Instruction fetch attempted while the execution gate is closed."""


class CoreFault(RuntimeError):
    """Undecodable instruction, fetch outside the program region, or step after halt."""


@dataclass(frozen=True)
class CoreState:
    pc: int = 0
    registers: tuple = (0,) * N_REGISTERS
    output_port: int = 0
    halted: bool = False
    instructions_retired: int = 0
    port_writes: tuple = ()


def _check_reg(reg):
    if not 0 <= reg < N_REGISTERS:
        raise ValueError(f"register s{reg:X} does not exist")


def _check_byte(value):
    if not 0 <= value <= 0xFF:
        raise ValueError(f"{value} is not a byte")


def encode_load(reg, constant):
    _check_reg(reg)
    _check_byte(constant)
    return (OP_LOAD << 12) | (reg << 8) | constant


def encode_add(reg, constant):
    _check_reg(reg)
    _check_byte(constant)
    return (OP_ADD << 12) | (reg << 8) | constant


def encode_output(reg, port=0):
    _check_reg(reg)
    _check_byte(port)
    return (OP_OUTPUT << 12) | (reg << 8) | port


def encode_jump(address):
    if not 0 <= address <= 0xFFF:
        raise ValueError(f"jump target {address:#x} exceeds 12 bits")
    return (OP_JUMP << 12) | address


def ring_counter_program():
    """The LED ring-counter demo: writes 0x01, 0x02, ... 0x80 to port 0 forever."""
    text = resources.files("pufgate").joinpath("data/ring_counter.hex").read_text()
    return parse_hex(text)


def step(core, image, gate):
    if not gate.enabled:
        raise GateClosedError("execution gate is closed; BRAM fetch refused")
    if core.halted:
        raise CoreFault("core is halted")
    program_words = image.geometry.program_words
    if not 0 <= core.pc < program_words:
        raise CoreFault(f"pc {core.pc} outside program region of {program_words} words")

    instr = image.words[core.pc] & INSTRUCTION_MASK
    retired = core.instructions_retired + 1
    if instr == HALT:
        return replace(core, halted=True, instructions_retired=retired)

    opcode = instr >> 12
    reg = (instr >> 8) & 0xF
    operand = instr & 0xFF
    nxt = core.pc + 1
    if opcode == OP_LOAD:
        regs = list(core.registers)
        regs[reg] = operand
        return replace(core, pc=nxt, registers=tuple(regs), instructions_retired=retired)
    if opcode == OP_ADD:
        regs = list(core.registers)
        regs[reg] = (regs[reg] + operand) & 0xFF
        return replace(core, pc=nxt, registers=tuple(regs), instructions_retired=retired)
    if opcode == OP_OUTPUT:
        value = core.registers[reg]
        return replace(
            core,
            pc=nxt,
            output_port=value,
            port_writes=core.port_writes + (value,),
            instructions_retired=retired,
        )
    if opcode == OP_JUMP:
        return replace(core, pc=instr & 0xFFF, instructions_retired=retired)
    raise CoreFault(f"undecodable instruction {instr:05X} at pc {core.pc}")


def run(core, image, gate, max_steps):
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    for _ in range(max_steps):
        if core.halted:
            break
        core = step(core, image, gate)
    return core
