"""Topology representation, layering, equivalence, canonical forms, and the
isomorph-pruned generation of all minimal well-layered gate topologies."""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product

from . import kernel
from .errors import CapacityError, CircuitError, ContractError, ParseError

MAX_GENERATE_K = 7


def mask_indices(mask):
    """Gate indices (1-based) of a gate-set bit mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def mask_of(indices):
    """Bit mask of a collection of 1-based gate indices."""
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class Topology:
    """AND-gate wiring only: gate i's sides are masks over gates 1..i-1."""

    k: int
    gates: tuple

    def __post_init__(self):
        gates = tuple((int(l), int(r)) for l, r in self.gates)
        object.__setattr__(self, "gates", gates)
        if self.k != len(gates):
            raise CircuitError(f"topology k={self.k} but {len(gates)} gates given")
        for i, (left, right) in enumerate(gates, 1):
            allowed = (1 << (i - 1)) - 1
            if left < 0 or right < 0 or (left | right) & ~allowed:
                raise CircuitError(f"gate {i} may only reference gates 1..{i - 1}")

    def encode(self):
        out = bytearray()
        for left, right in self.gates:
            out.append(left)
            out.append(right)
        return bytes(out)

    @classmethod
    def from_encoding(cls, data):
        pairs = tuple((data[2 * i], data[2 * i + 1]) for i in range(len(data) // 2))
        return cls(len(pairs), pairs)


@dataclass(frozen=True)
class Layering:
    """Ordered partition of a topology's gates into layers, as bit masks."""

    layers: tuple

    @property
    def sizes(self):
        return tuple(m.bit_count() for m in self.layers)

    def __len__(self):
        return len(self.layers)


@dataclass(frozen=True)
class TopologySet:
    """Deduplicated representatives of the topology classes on k gates."""

    k: int
    members: tuple

    @property
    def count(self):
        return len(self.members)


def _layer_masks(pairs):
    layers = []
    cur = 0
    for i, (left, right) in enumerate(pairs):
        if cur & (left | right):
            layers.append(cur)
            cur = 0
        cur |= 1 << i
    if cur:
        layers.append(cur)
    return layers


def layering(t):
    """Maximal layering: scan gates in index order, a gate joins the current
    layer unless one of its sides already meets it."""
    return Layering(tuple(_layer_masks(t.gates)))


def is_well_layered(t):
    """True iff every gate beyond the first layer uses (on either side) some
    gate of the immediately preceding layer."""
    prev = 0
    for mask in _layer_masks(t.gates):
        if prev:
            m = mask
            while m:
                low = m & -m
                m ^= low
                left, right = t.gates[low.bit_length() - 1]
                if not (left | right) & prev:
                    return False
        prev = mask
    return True


def _well_layer_step(pairs):
    """Smallest fix toward well-layering: ("move", i, j) reinserts gate i
    right after gate j, its highest referenced gate.  None when done."""
    layers = _layer_masks(pairs)
    prev = 0
    for mask in layers:
        if prev:
            m = mask
            while m:
                low = m & -m
                m ^= low
                i = low.bit_length()
                left, right = pairs[i - 1]
                if not (left | right) & prev:
                    j = (left | right).bit_length()
                    return ("move", i, j)
        prev = mask
    return None


def _map_mask(mask, pi):
    """Apply a 1-based index permutation to a gate-set mask."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << (pi[low.bit_length()] - 1)
        mask ^= low
    return out


def _move_permutation(k, i, j):
    """1-based permutation list inserting gate i at position j+1."""
    pi = list(range(k + 1))
    pi[i] = j + 1
    for z in range(j + 1, i):
        pi[z] = z + 1
    return pi


def _apply_move(pairs, i, j):
    k = len(pairs)
    pi = _move_permutation(k, i, j)
    new = [None] * k
    swap_moved = j >= 1 and (pairs[i - 1][1] >> (j - 1)) & 1
    for z in range(1, k + 1):
        left = _map_mask(pairs[z - 1][0], pi)
        right = _map_mask(pairs[z - 1][1], pi)
        if z == i and swap_moved:
            left, right = right, left
        new[pi[z] - 1] = (left, right)
    return tuple(new)


def well_layer_normalize(t):
    """Equivalent well-layered form of a topology, built by repeatedly moving
    a violating gate down next to its highest referenced gate (renaming
    references accordingly)."""
    pairs = t.gates
    for _ in range(t.k + 2):
        action = _well_layer_step(pairs)
        if action is None:
            return t if pairs is t.gates else Topology(t.k, pairs)
        pairs = _apply_move(pairs, action[1], action[2])
    raise AssertionError("layering normalization did not converge")


def is_minimal(t):
    """True iff no gate has a nonempty side nested in the other, and any
    shared part is order-minimal against both side remainders (masks compare
    as integers)."""
    for left, right in t.gates:
        if left and (left & ~right) == 0:
            return False
        if right and (right & ~left) == 0:
            return False
        shared = left & right
        if shared and not (shared < (left & ~right) and shared < (right & ~left)):
            return False
    return True


def _gate_depths(pairs):
    depths = []
    for left, right in pairs:
        refs = left | right
        d = 0
        m = refs
        while m:
            low = m & -m
            m ^= low
            d = max(d, depths[low.bit_length() - 1])
        depths.append(d + 1 if refs else 0)
    return depths


def equivalent(t1, t2):
    """Whether some relabeling of gate indices, with per-gate side swaps,
    maps one topology's gate list onto the other's."""
    if t1.k != t2.k:
        return False
    k = t1.k
    if k == 0:
        return True
    d1 = _gate_depths(t1.gates)
    d2 = _gate_depths(t2.gates)
    groups1 = {}
    groups2 = {}
    for i in range(k):
        groups1.setdefault(d1[i], []).append(i)
        groups2.setdefault(d2[i], []).append(i)
    if {d: len(v) for d, v in groups1.items()} != {d: len(v) for d, v in groups2.items()}:
        return False
    depths = sorted(groups1)
    source = [groups1[d] for d in depths]
    choices = [permutations(groups2[d]) for d in depths]
    for assignment in product(*choices):
        pi = [0] * k
        for src, dst in zip(source, assignment):
            for a, b in zip(src, dst):
                pi[a] = b
        ok = True
        for i in range(k):
            left, right = t1.gates[i]
            lm = 0
            m = left
            while m:
                low = m & -m
                lm |= 1 << pi[low.bit_length() - 1]
                m ^= low
            rm = 0
            m = right
            while m:
                low = m & -m
                rm |= 1 << pi[low.bit_length() - 1]
                m ^= low
            target = t2.gates[pi[i]]
            if (lm, rm) != target and (rm, lm) != target:
                ok = False
                break
        if ok:
            return True
    return False


def canonical_form(t, backend=None):
    """Least-encoding equivalent of a well-layered topology, searched over
    within-layer index permutations and per-gate side swaps (swaps never
    disturb the layering, which only sees the union of a gate's sides).
    Two well-layered topologies are equivalent iff their canonical forms are
    equal; validated exhaustively against permutation search for k <= 4."""
    if not is_well_layered(t):
        raise ContractError("canonical_form requires a well-layered topology")
    if t.k == 0:
        return t
    kern = kernel.get_backend(backend)
    key, _ = kern.canonical_keys(t.gates, layering(t).sizes)
    return Topology.from_encoding(key)


def representative_form(t, backend=None):
    """Like canonical_form but restricted to variants whose gates all satisfy
    the minimality conditions, so the representative of a minimal topology is
    itself minimal.  Falls back to canonical_form when no variant qualifies."""
    if not is_well_layered(t):
        raise ContractError("representative_form requires a well-layered topology")
    if t.k == 0:
        return t
    kern = kernel.get_backend(backend)
    key_any, key_min = kern.canonical_keys(t.gates, layering(t).sizes)
    return Topology.from_encoding(key_min if key_min is not None else key_any)


def has_minimal_member(t, backend=None):
    """Whether some relabeling of the topology's class satisfies the
    minimality conditions."""
    if not is_well_layered(t):
        raise ContractError("has_minimal_member requires a well-layered topology")
    if t.k == 0:
        return True
    kern = kernel.get_backend(backend)
    return kern.canonical_keys(t.gates, layering(t).sizes)[1] is not None


def _default_workers():
    value = os.environ.get("MCBOUND_WORKERS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return 1


def _extend_task(args):
    enc, k, backend = args
    return kernel.get_backend(backend).extend(enc, k)


def generate(k, *, workers=None, backend=None, progress=None):
    """Representatives of every class of minimal well-layered topologies on
    exactly k gates.

    Starts from the single-layer all-empty seeds of 1..k gates and grows one
    layer per round: every new gate must use the current last layer and may
    not have one side nested in the other, candidates are pruned to one
    class via canonical keys, and finished classes are kept exactly when
    some relabeling satisfies the minimality conditions (that least minimal
    relabeling is the stored representative).  The member list is a
    deterministic function of k alone, independent of worker count.
    """
    if k < 0:
        raise ValueError("gate count must be non-negative")
    if k == 0:
        return TopologySet(0, ())
    if k > MAX_GENERATE_K:
        raise CapacityError(f"generation is capped at k <= {MAX_GENERATE_K}")
    if workers is None:
        workers = _default_workers()
    kern = kernel.get_backend(backend)
    full_len = 2 * k
    full = {}
    partials = []
    for length in range(1, k + 1):
        seed = bytes(2 * length)
        if length == k:
            full[seed] = seed  # the all-empty topology is its own minimal form
        else:
            partials.append(seed)
    for rnd in range(2, k + 1):
        grown = []
        if workers > 1 and len(partials) > 1:
            args = [(enc, k, kern.BACKEND) for enc in partials]
            chunk = max(1, len(args) // (workers * 8))
            with ProcessPoolExecutor(max_workers=workers) as pool:
                done = 0
                for keys in pool.map(_extend_task, args, chunksize=chunk):
                    grown.extend(keys)
                    done += 1
                    if progress and done % 512 == 0:
                        progress({"phase": "extend", "round": rnd, "done": done,
                                  "pending": len(partials), "found": len(grown)})
        else:
            for idx, enc in enumerate(partials):
                grown.extend(kern.extend(enc, k))
                if progress and (idx + 1) % 256 == 0:
                    progress({"phase": "extend", "round": rnd, "done": idx + 1,
                              "pending": len(partials), "found": len(grown)})
        next_partials = set()
        for key_any, key_min in grown:
            if len(key_any) == full_len:
                full[key_any] = key_min
            else:
                next_partials.add(key_any)
        partials = sorted(next_partials)
        if progress:
            progress({"phase": "round", "round": rnd, "complete": len(full),
                      "partial": len(partials)})
    members = tuple(Topology.from_encoding(enc)
                    for enc in sorted(m for m in full.values() if m is not None))
    return TopologySet(k, members)


# --- text formats -----------------------------------------------------------

_TOPOLOGY_HEADER = re.compile(r"^topology\s+k=(\d+)\s*$")
_GATE_LINE = re.compile(r"^gate\s+(\d+):\s*L=\{([^}]*)\}\s*R=\{([^}]*)\}\s*$")
_SET_HEADER = re.compile(r"^topologyset\s+k=(\d+)\s+count=(\d+)\s*$")


def _fmt_mask(mask):
    return ",".join(str(i) for i in mask_indices(mask))


def format_topology(t):
    lines = [f"topology k={t.k}"]
    for i, (left, right) in enumerate(t.gates, 1):
        lines.append(f"gate {i}: L={{{_fmt_mask(left)}}} R={{{_fmt_mask(right)}}}")
    return "\n".join(lines)


def _parse_index_set(text, lineno):
    mask = 0
    body = text.strip()
    if not body:
        return 0
    for token in body.split(","):
        token = token.strip()
        if not token.isdigit() or int(token) < 1:
            raise ParseError(f"bad gate index {token!r}", line=lineno)
        mask |= 1 << (int(token) - 1)
    return mask


def _parse_topology_lines(lines, start_lineno):
    header = _TOPOLOGY_HEADER.match(lines[0])
    if not header:
        raise ParseError("expected 'topology k=<k>'", line=start_lineno)
    k = int(header.group(1))
    if len(lines) != k + 1:
        raise ParseError(f"expected {k} gate lines", line=start_lineno)
    gates = []
    for offset, line in enumerate(lines[1:], 1):
        lineno = start_lineno + offset
        m = _GATE_LINE.match(line)
        if not m:
            raise ParseError("expected 'gate <i>: L={...} R={...}'", line=lineno)
        if int(m.group(1)) != offset:
            raise ParseError(f"gate numbered {m.group(1)}, expected {offset}", line=lineno)
        gates.append((_parse_index_set(m.group(2), lineno),
                      _parse_index_set(m.group(3), lineno)))
    try:
        return Topology(k, tuple(gates))
    except CircuitError as exc:
        raise ParseError(str(exc), line=start_lineno) from exc


def parse_topology(text):
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty topology", line=1)
    return _parse_topology_lines(lines, 1)


def format_topology_set(ts):
    blocks = [f"topologyset k={ts.k} count={ts.count}"]
    for t in ts.members:
        blocks.append(format_topology(t))
    return "\n\n".join(blocks) + "\n"


def parse_topology_set(text):
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise ParseError("empty topology set", line=1)
    header = _SET_HEADER.match(lines[idx])
    if not header:
        raise ParseError("expected 'topologyset k=<k> count=<c>'", line=idx + 1)
    k = int(header.group(1))
    count = int(header.group(2))
    members = []
    block = []
    block_start = None
    for lineno, line in enumerate(lines[idx + 1:], idx + 2):
        if line.strip():
            if block_start is None:
                block_start = lineno
            block.append(line)
        elif block:
            members.append(_parse_topology_lines(block, block_start))
            block = []
            block_start = None
    if block:
        members.append(_parse_topology_lines(block, block_start))
    if len(members) != count:
        raise ParseError(f"header says count={count} but {len(members)} blocks found", line=idx + 1)
    for t in members:
        if t.k != k:
            raise ParseError(f"member with k={t.k} in a k={k} set", line=idx + 1)
    return TopologySet(k, tuple(members))


def save_topology_set(ts, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_topology_set(ts))


def load_topology_set(path):
    with open(path, "r", encoding="ascii") as fh:
        return parse_topology_set(fh.read())
