"""Adders, table lookups and lookup additions as Toffoli networks.

Exact Toffoli constants of the builders here (the "manifest"):

* ripple-carry adder, n-bit operands: 2n, with or without a carry-out bit;
* controlled adder: 4n (n to mask the addend, 2n to add, n to unmask);
* carry absorbed by a k-bit extension (runway or coset padding): k - 1
  counted Toffolis, the matching uncomputations are measurement based;
* table lookup over w address bits: 2^w - 2, uncomputation measurement based;
* lookup addition of a value register into a target split into p pieces with
  k-bit extensions: (2^w - 2) + 2 * value_bits + p * (k - 1).
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .circuit import Circuit

# Toffolis beyond the leading term, per builder. Used by tests and docs.
ADDER_MANIFEST = {
    "uncontrolled": (2, 0),  # (coefficient of n, constant)
    "controlled": (4, 0),
}


def _maj(circ: Circuit, c: int, b: int, a: int) -> None:
    circ.cx(a, b)
    circ.cx(a, c)
    circ.ccx(c, b, a)


def _uma(circ: Circuit, c: int, b: int, a: int) -> None:
    circ.ccx(c, b, a)
    circ.cx(a, c)
    circ.cx(c, b)


def append_cuccaro(circ: Circuit, a: Sequence[int], b: Sequence[int], carry_in: int,
                   on_carry: Optional[Callable[[int], None]] = None) -> None:
    """b <- a + b (mod 2^len(b)) using a zeroed ``carry_in`` ancilla.

    ``on_carry`` is called with the qubit holding the carry-out while it is
    available (between the MAJ and UMA sweeps); it must not disturb a, b or
    that qubit.
    """
    n = len(a)
    if len(b) != n:
        raise ValueError(f"operand widths differ: {len(a)} vs {len(b)}")
    if n == 0:
        return
    _maj(circ, carry_in, b[0], a[0])
    for i in range(1, n):
        _maj(circ, a[i - 1], b[i], a[i])
    if on_carry is not None:
        on_carry(a[n - 1])
    for i in range(n - 1, 0, -1):
        _uma(circ, a[i - 1], b[i], a[i])
    _uma(circ, carry_in, b[0], a[0])


def append_increment(circ: Circuit, control: int, reg: Sequence[int], work: Sequence[int]) -> None:
    """reg += control (mod 2^len(reg)); ``work`` holds len(reg) - 1 zeroed ancillas."""
    k = len(reg)
    if k == 0:
        return
    if len(work) < k - 1:
        raise ValueError(f"increment of {k} bits needs {k - 1} work qubits, got {len(work)}")
    # work[j] = control & reg[0] & ... & reg[j], the carry into reg[j + 1]
    prev = control
    for j in range(k - 1):
        circ.ccx(prev, reg[j], work[j])
        prev = work[j]
    for j in range(k - 1, 0, -1):
        circ.cx(work[j - 1], reg[j])
        below = control if j == 1 else work[j - 2]
        circ.ccx(below, reg[j - 1], work[j - 1], measured=True)
    circ.cx(control, reg[0])


def append_block_addition(circ: Circuit, source: Sequence[int], target: Sequence[int],
                          extension: Sequence[int], carry_in: int, work: Sequence[int]) -> None:
    """target:extension += source, where source is no wider than target.

    Target bits above the source width join the extension, which only ever
    absorbs the carry; a carry out of the extension is dropped.
    """
    a = len(source)
    if a > len(target):
        raise ValueError("source is wider than the target block")
    if a == 0:
        return
    ext = list(target[a:]) + list(extension)
    hook = (lambda c: append_increment(circ, c, ext, work)) if ext else None
    append_cuccaro(circ, source, target[:a], carry_in, hook)


def build_cuccaro_adder(n: int, controlled: bool = False) -> Circuit:
    """b <- a + b (mod 2^(n+1)) with a: n bits and b: n + 1 bits.

    Registers: ``a``, ``b``, ``anc`` (carry-in, zero) and for the controlled
    variant ``ctrl`` and ``mask`` (n zeroed qubits).
    """
    if n < 1:
        raise ValueError("adder width must be at least 1")
    circ = Circuit()
    ctrl = circ.add_register("ctrl", 1) if controlled else None
    a = circ.add_register("a", n)
    b = circ.add_register("b", n + 1)
    anc = circ.add_register("anc", 1)[0]
    hook = lambda c: circ.cx(c, b[n])
    if not controlled:
        append_cuccaro(circ, a, b[:n], anc, hook)
        return circ
    mask = circ.add_register("mask", n)
    for ai, mi in zip(a, mask):
        circ.ccx(ctrl[0], ai, mi)
    append_cuccaro(circ, mask, b[:n], anc, hook)
    for ai, mi in zip(a, mask):
        circ.ccx(ctrl[0], ai, mi)
    return circ


def _unary_iterate(circ: Circuit, control: Optional[int], bits: Sequence[int], table: Sequence[int],
                   offset: int, target: Sequence[int], work: Sequence[int], measured: bool) -> None:
    if offset >= len(table):
        return
    if not bits:
        value = table[offset]
        for i, q in enumerate(target):
            if value >> i & 1:
                if control is None:
                    circ.x(q)
                else:
                    circ.cx(control, q)
        return
    top, rest = bits[0], bits[1:]
    half = 1 << len(rest)
    if control is None:
        circ.x(top)
        _unary_iterate(circ, top, rest, table, offset, target, work, measured)
        circ.x(top)
        _unary_iterate(circ, top, rest, table, offset + half, target, work, measured)
        return
    anc, deeper = work[0], work[1:]
    circ.x(top)
    circ.ccx(control, top, anc, measured=measured)
    circ.x(top)
    _unary_iterate(circ, anc, rest, table, offset, target, deeper, measured)
    circ.cx(control, anc)
    _unary_iterate(circ, anc, rest, table, offset + half, target, deeper, measured)
    circ.ccx(control, top, anc, measured=True)


def append_lookup(circ: Circuit, table: Sequence[int], address: Sequence[int], target: Sequence[int],
                  work: Sequence[int], measured: bool = False) -> None:
    """target ^= table[address] by unary iteration.

    ``address`` is little-endian; ``work`` needs len(address) - 1 zeroed
    qubits. With ``measured`` set every Toffoli is flagged as measurement
    based, which is how the uncomputing lookup is modeled.
    """
    if len(table) > 1 << len(address):
        raise ValueError(f"table of {len(table)} entries needs more than {len(address)} address bits")
    if len(work) < max(0, len(address) - 1):
        raise ValueError("not enough work qubits for the lookup")
    _unary_iterate(circ, None, list(reversed(address)), table, 0, target, work, measured)


def check_table(table: Sequence[int], width: int, modulus: Optional[int] = None) -> None:
    for i, v in enumerate(table):
        if v < 0 or v >> width:
            raise ValueError(f"table entry {i} = {v} does not fit in {width} bits")
        if modulus is not None and v >= modulus:
            raise ValueError(f"table entry {i} = {v} is not canonical modulo {modulus}")


def build_lookup_addition(table: Sequence[int], address_width: int, target_width: int,
                          modulus: Optional[int] = None, value_width: Optional[int] = None,
                          c_sep: Optional[int] = None, c_pad: int = 0) -> Circuit:
    """target += table[address], through a lookup output register.

    Without runway parameters the addition is modulo 2^target_width. With
    ``c_sep`` the target becomes a runway register (see
    :class:`shorcost.sim.coset.RunwayLayout`) whose data part is
    ``value_width`` bits followed by ``c_pad`` padding bits.

    Registers: ``address``, ``target``, ``runways`` (when present),
    ``lookup`` (value register), ``work``, ``carry``, ``inc``.
    """
    from .coset import RunwayLayout

    if value_width is None:
        value_width = modulus.bit_length() if modulus is not None else target_width
    check_table(table, value_width, modulus)
    if len(table) > 1 << address_width:
        raise ValueError(f"table of {len(table)} entries needs more than {address_width} address bits")
    if value_width > target_width:
        raise ValueError(f"value register ({value_width} bits) is wider than the target")
    if c_sep is None:
        layout = RunwayLayout(target_width, max(target_width, 1), 0, data_bits=value_width)
    else:
        layout = RunwayLayout(target_width, c_sep, c_pad, data_bits=value_width)
    circ = Circuit()
    address = circ.add_register("address", address_width)
    target = circ.add_register("target", target_width)
    runway_bits = circ.add_register("runways", layout.runway_count * layout.c_pad) if layout.runway_count else []
    value = circ.add_register("lookup", value_width)
    work = circ.add_register("work", max(0, address_width - 1))
    carry = circ.add_register("carry", 1)[0]
    inc = circ.add_register("inc", max(0, layout.max_extension - 1))
    runways = [runway_bits[i * layout.c_pad:(i + 1) * layout.c_pad] for i in range(layout.runway_count)]
    append_lookup(circ, table, address, value, work)
    append_piecewise_addition(circ, value, target, runways, layout, carry, inc)
    append_lookup(circ, table, address, value, work, measured=True)
    return circ


def append_piecewise_addition(circ: Circuit, source: Sequence[int], main: Sequence[int],
                              runways: Sequence[Sequence[int]], layout, carry_in: int,
                              work: Sequence[int]) -> None:
    """Add ``source`` into a runway register one piece at a time.

    Piece i's slice of the source is added into piece i of the main register;
    its carry runs into runway i (the top piece's carry runs into whatever
    main bits lie above the source, then is dropped).
    """
    if len(main) != layout.width or len(runways) != layout.runway_count:
        raise ValueError("register does not match the runway layout")
    for i in range(layout.pieces):
        lo, hi = layout.piece_range(i)
        src = list(source[lo:min(hi, len(source))])
        ext = runways[i] if i < layout.runway_count else []
        append_block_addition(circ, src, main[lo:hi], ext, carry_in, work)
