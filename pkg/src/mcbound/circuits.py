"""XOR-AND circuit values: evaluation, truth tables, and the
function-preserving gate rewrites.

A circuit has n inputs and an ordered list of AND gates; each gate side is
the XOR of a set of terms (inputs, the constant T, outputs of earlier
gates), and one final XOR set produces the output.  All values here are
immutable; every operation returns a new circuit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from . import topology as _topo
from .errors import CapacityError, CircuitError, ContractError, ParseError

MAX_ARITY = 16


class Term(NamedTuple):
    """One XOR-set member: kind is "x" (input), "g" (gate) or "T" (constant)."""

    kind: str
    idx: int

    def __str__(self):
        return "T" if self.kind == "T" else f"{self.kind}{self.idx}"


TOP = Term("T", 0)


def x(j):
    """Input term x<j>."""
    return Term("x", j)


def g(i):
    """Earlier-gate term g<i>."""
    return Term("g", i)


_KIND_ORDER = {"x": 0, "T": 1, "g": 2}


def term_sort_key(t):
    return (_KIND_ORDER[t.kind], t.idx)


def _coerce_terms(terms, where):
    out = frozenset(terms)
    for t in out:
        if not isinstance(t, Term) or t.kind not in _KIND_ORDER:
            raise CircuitError(f"{where}: not a circuit term: {t!r}")
    return out


@dataclass(frozen=True)
class TruthTable:
    """Output bits of an n-ary Boolean function: bit v is the value at the
    assignment encoded by v, with x1 as the least-significant bit."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise CircuitError("arity must be at least 1")
        if self.n > MAX_ARITY:
            raise CapacityError(f"arity {self.n} exceeds the supported cap of {MAX_ARITY}")
        if not 0 <= self.bits < (1 << self.size):
            raise CircuitError(f"truth table needs exactly {self.size} bits")

    @property
    def size(self):
        return 1 << self.n

    def bit(self, v):
        return (self.bits >> v) & 1

    def to_string(self):
        return "".join(str(self.bit(v)) for v in range(self.size))

    @classmethod
    def from_string(cls, n, bits):
        if len(bits) != (1 << n) or set(bits) - {"0", "1"}:
            raise CircuitError(f"need exactly {1 << n} characters of 0/1")
        value = 0
        for v, ch in enumerate(bits):
            if ch == "1":
                value |= 1 << v
        return cls(n, value)


@dataclass(frozen=True)
class Circuit:
    """n inputs, ordered AND gates of XOR-set side pairs, and an output XOR
    set.  Gate references must point at strictly earlier gates."""

    n: int
    gates: tuple
    output: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise CircuitError("arity must be at least 1")
        if self.n > MAX_ARITY:
            raise CapacityError(f"arity {self.n} exceeds the supported cap of {MAX_ARITY}")
        gates = tuple(
            (_coerce_terms(left, f"gate {i}"), _coerce_terms(right, f"gate {i}"))
            for i, (left, right) in enumerate(self.gates, 1)
        )
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "output", _coerce_terms(self.output, "output"))
        for i, (left, right) in enumerate(gates, 1):
            for t in left | right:
                self._check_term(t, i)
        for t in self.output:
            self._check_term(t, len(gates) + 1)

    def _check_term(self, t, gate_limit):
        if t.kind == "x" and not 1 <= t.idx <= self.n:
            raise CircuitError(f"input x{t.idx} out of range 1..{self.n}")
        if t.kind == "g" and not 1 <= t.idx < gate_limit:
            raise CircuitError(f"gate g{t.idx} referenced before it is defined")

    @property
    def k(self):
        return len(self.gates)


def _coerce_assignment(n, assignment):
    if isinstance(assignment, int):
        if not 0 <= assignment < (1 << n):
            raise ValueError(f"assignment must be in 0..{(1 << n) - 1}")
        return assignment
    bits = tuple(assignment)
    if len(bits) != n:
        raise ValueError(f"assignment must provide exactly {n} bits")
    value = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError("assignment bits must be 0 or 1")
        value |= b << j
    return value


def _fold_bit(terms, assignment, values):
    acc = 0
    for t in terms:
        if t.kind == "x":
            acc ^= (assignment >> (t.idx - 1)) & 1
        elif t.kind == "T":
            acc ^= 1
        else:
            acc ^= values[t.idx - 1]
    return acc


def evaluate(c, assignment):
    """Single output bit of the circuit at one assignment; gate values are
    computed in index order.  Accepts an integer code or a bit sequence
    (x1 first)."""
    a = _coerce_assignment(c.n, assignment)
    values = []
    for left, right in c.gates:
        values.append(_fold_bit(left, a, values) & _fold_bit(right, a, values))
    return _fold_bit(c.output, a, values)


def _input_table(j, n):
    # Bit v of the result is bit j-1 of v: a periodic 0-run/1-run pattern.
    p = 1 << (j - 1)
    unit = ((1 << p) - 1) << p
    reps = ((1 << (1 << n)) - 1) // ((1 << (2 * p)) - 1)
    return unit * reps


def _fold_table(terms, xtabs, full, values):
    acc = 0
    for t in terms:
        if t.kind == "x":
            acc ^= xtabs[t.idx - 1]
        elif t.kind == "T":
            acc ^= full
        else:
            acc ^= values[t.idx - 1]
    return acc


def truth_table(c):
    """Tables for all 2^n assignments at once, one bit-parallel sweep over
    the gates."""
    if c.n > MAX_ARITY:
        raise CapacityError(f"arity {c.n} exceeds the supported cap of {MAX_ARITY}")
    full = (1 << (1 << c.n)) - 1
    xtabs = [_input_table(j, c.n) for j in range(1, c.n + 1)]
    values = []
    for left, right in c.gates:
        values.append(_fold_table(left, xtabs, full, values)
                      & _fold_table(right, xtabs, full, values))
    return TruthTable(c.n, _fold_table(c.output, xtabs, full, values))


def _gate_mask(terms):
    mask = 0
    for t in terms:
        if t.kind == "g":
            mask |= 1 << (t.idx - 1)
    return mask


def topology_of(c):
    """The circuit's gate-to-gate wiring only: inputs, T and the output set
    are discarded."""
    return _topo.Topology(c.k, tuple((_gate_mask(l), _gate_mask(r)) for l, r in c.gates))


def is_negation_normal(c):
    """True iff no gate XORs the constant into both of its sides."""
    return all(not (TOP in left and TOP in right) for left, right in c.gates)


_TOP_SET = frozenset({TOP})


def negation_normalize(c):
    """Remove every gate that has T on both sides, preserving the function.

    One pass in index order: a violating gate drops T from both sides, and
    every later set that uses the gate absorbs the correction terms by
    symmetric difference (XOR contributions cancel pairwise).  The pass also
    covers violations the corrections introduce downstream.
    """
    gates = list(c.gates)
    output = c.output
    changed = False
    for i in range(len(gates)):
        left, right = gates[i]
        if TOP not in left or TOP not in right:
            continue
        changed = True
        left = left - _TOP_SET
        right = right - _TOP_SET
        gates[i] = (left, right)
        fix = left ^ right ^ _TOP_SET
        ref = Term("g", i + 1)
        for j in range(i + 1, len(gates)):
            lj, rj = gates[j]
            if ref in lj:
                lj = lj ^ fix
            if ref in rj:
                rj = rj ^ fix
            gates[j] = (lj, rj)
        if ref in output:
            output = output ^ fix
    if not changed:
        return c
    return Circuit(c.n, tuple(gates), output)


def _linear_part(terms):
    return frozenset(t for t in terms if t.kind != "g")


def _gate_terms(mask):
    return frozenset(Term("g", i) for i in _topo.mask_indices(mask))


def minimalize_circuit(c):
    """Rewrite gates whose topology sides are nested or whose shared part is
    not order-minimal, until the topology is minimal.

    Each rewrite replaces one gate by an equivalent gate (the two sides trade
    XOR terms and possibly T) and never changes the union of the gate's
    sides, so the function, the gate count, the layering and well-layering
    are all unchanged.  The input circuit's topology must be well-layered.
    """
    topo = topology_of(c)
    if not _topo.is_well_layered(topo):
        raise ContractError("minimalize_circuit requires a well-layered topology")
    gates = list(c.gates)
    changed = False
    for _ in range(3 * len(gates) + 1):
        masks = [(_gate_mask(l), _gate_mask(r)) for l, r in gates]
        hit = None
        for i, (lg, rg) in enumerate(masks, 1):
            if lg and (lg & ~rg) == 0:
                hit = (i, "left-nested")
                break
            if rg and (rg & ~lg) == 0:
                hit = (i, "right-nested")
                break
            shared = lg & rg
            if shared and not (shared < (lg & ~rg) and shared < (rg & ~lg)):
                hit = (i, "shared")
                break
        if hit is None:
            break
        changed = True
        i, kind = hit
        left, right = gates[i - 1]
        lg, rg = masks[i - 1]
        corr = _linear_part(left) ^ _linear_part(right) ^ _TOP_SET
        if kind == "left-nested":
            # left side repeated inside right: strip it from the right
            gates[i - 1] = (left, _gate_terms(rg & ~lg) | corr)
        elif kind == "right-nested":
            gates[i - 1] = (_gate_terms(lg & ~rg) | corr, right)
        else:
            lonly = lg & ~rg
            ronly = rg & ~lg
            merged = _gate_terms(lonly | ronly) | corr
            # keep whichever side makes the remaining shared part order-minimal
            if min(lg & rg, lonly, ronly) == lonly:
                gates[i - 1] = (left, merged)
            else:
                gates[i - 1] = (merged, right)
    else:
        raise AssertionError("minimalization did not converge")
    if not changed:
        return c
    return Circuit(c.n, tuple(gates), c.output)


def _rename_terms(terms, pi):
    return frozenset(Term("g", pi[t.idx]) if t.kind == "g" else t for t in terms)


def normalize_circuit_layering(c):
    """Reorder gates (renaming references accordingly) until the circuit's
    topology is well-layered; the computed function is unchanged.  Mirrors
    well_layer_normalize on the topology."""
    gates = list(c.gates)
    output = c.output
    changed = False
    for _ in range(c.k + 2):
        masks = [(_gate_mask(l), _gate_mask(r)) for l, r in gates]
        action = _topo._well_layer_step(masks)
        if action is None:
            if not changed:
                return c
            return Circuit(c.n, tuple(gates), output)
        changed = True
        _, i, j = action
        pi = _topo._move_permutation(len(gates), i, j)
        swap_moved = j >= 1 and Term("g", j) in gates[i - 1][1]
        new = [None] * len(gates)
        for z in range(1, len(gates) + 1):
            left = _rename_terms(gates[z - 1][0], pi)
            right = _rename_terms(gates[z - 1][1], pi)
            if z == i and swap_moved:
                left, right = right, left
            new[pi[z] - 1] = (left, right)
        gates = new
        output = _rename_terms(output, pi)
    raise AssertionError("layering normalization did not converge")


# --- text formats -----------------------------------------------------------

_CIRCUIT_HEADER = re.compile(r"^circuit\s+n=(\d+)\s+k=(\d+)\s*$")
_CIRCUIT_GATE = re.compile(r"^gate\s+(\d+):\s*L=\{([^}]*)\}\s*R=\{([^}]*)\}\s*$")
_CIRCUIT_OUT = re.compile(r"^out:\s*\{([^}]*)\}\s*$")
_TT_LINE = re.compile(r"^tt\s+n=(\d+)\s+([01]+)\s*$")
_TERM_TOKEN = re.compile(r"^(?:x(\d+)|g(\d+)|T)$")


def _fmt_terms(terms):
    return "{" + ",".join(str(t) for t in sorted(terms, key=term_sort_key)) + "}"


def format_circuit(c):
    lines = [f"circuit n={c.n} k={c.k}"]
    for i, (left, right) in enumerate(c.gates, 1):
        lines.append(f"gate {i}: L={_fmt_terms(left)} R={_fmt_terms(right)}")
    lines.append(f"out: {_fmt_terms(c.output)}")
    return "\n".join(lines) + "\n"


def _parse_terms(body, line, lineno):
    body = body.strip()
    if not body:
        return frozenset()
    terms = []
    for token in body.split(","):
        token = token.strip()
        m = _TERM_TOKEN.match(token)
        if not m:
            col = line.find(token) + 1 if token and token in line else None
            raise ParseError(f"unknown term {token!r}", line=lineno, col=col)
        if m.group(1) is not None:
            terms.append(Term("x", int(m.group(1))))
        elif m.group(2) is not None:
            terms.append(Term("g", int(m.group(2))))
        else:
            terms.append(TOP)
    return frozenset(terms)


def parse_circuit(text):
    numbered = [(i, line) for i, line in enumerate(text.splitlines(), 1) if line.strip()]
    if not numbered:
        raise ParseError("empty circuit", line=1)
    lineno, line = numbered[0]
    header = _CIRCUIT_HEADER.match(line)
    if not header:
        raise ParseError("expected 'circuit n=<n> k=<k>'", line=lineno)
    n = int(header.group(1))
    k = int(header.group(2))
    if len(numbered) != k + 2:
        raise ParseError(f"expected {k} gate lines and one 'out:' line", line=lineno)
    gates = []
    for pos, (lineno, line) in enumerate(numbered[1:k + 1], 1):
        m = _CIRCUIT_GATE.match(line)
        if not m:
            raise ParseError("expected 'gate <i>: L={...} R={...}'", line=lineno)
        if int(m.group(1)) != pos:
            raise ParseError(f"gate numbered {m.group(1)}, expected {pos}", line=lineno)
        gates.append((_parse_terms(m.group(2), line, lineno),
                      _parse_terms(m.group(3), line, lineno)))
    lineno, line = numbered[k + 1]
    m = _CIRCUIT_OUT.match(line)
    if not m:
        raise ParseError("expected 'out: {...}'", line=lineno)
    output = _parse_terms(m.group(1), line, lineno)
    try:
        return Circuit(n, tuple(gates), output)
    except CircuitError as exc:
        raise ParseError(str(exc), line=numbered[0][0]) from exc


def format_truth_table(tt):
    return f"tt n={tt.n} {tt.to_string()}"


def parse_truth_table(text):
    m = _TT_LINE.match(text.strip())
    if not m:
        raise ParseError("expected 'tt n=<n> <bits>'", line=1)
    n = int(m.group(1))
    try:
        return TruthTable.from_string(n, m.group(2))
    except CircuitError as exc:
        raise ParseError(str(exc), line=1) from exc
