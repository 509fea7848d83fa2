import random

import pytest

from mcbound.errors import CapacityError, CircuitError, ContractError, ParseError
from mcbound.oracle import literal_equivalent
from mcbound.topology import (Topology, canonical_form, equivalent,
                              format_topology, format_topology_set, generate,
                              has_minimal_member, is_minimal, is_well_layered,
                              layering, load_topology_set, mask_indices, mask_of,
                              parse_topology, parse_topology_set,
                              representative_form, save_topology_set,
                              well_layer_normalize)

MAJ4_TOPOLOGY = Topology(4, ((0, 0), (0, 0), (0, 2), (1, 2)))
# the same wiring listed in a different gate order; not well-layered
REORDERED_MAJ4 = Topology(4, ((0, 0), (0, 1), (0, 0), (4, 1)))


def all_raw(k):
    from mcbound.oracle import enumerate_raw_topologies
    return list(enumerate_raw_topologies(k))


# --- type invariants ----------------------------------------------------------

def test_topology_validation():
    with pytest.raises(CircuitError):
        Topology(2, ((0, 0),))
    with pytest.raises(CircuitError):
        Topology(2, ((0, 0), (2, 0)))  # gate 2 referencing itself
    with pytest.raises(CircuitError):
        Topology(1, ((1, 0),))


def test_encoding_roundtrip():
    t = MAJ4_TOPOLOGY
    assert Topology.from_encoding(t.encode()) == t


def test_mask_helpers():
    assert mask_indices(0b1011) == (1, 2, 4)
    assert mask_of((1, 2, 4)) == 0b1011


# --- layering -------------------------------------------------------------

def test_layering_majority():
    assert layering(MAJ4_TOPOLOGY).layers == (0b0011, 0b1100)
    assert layering(MAJ4_TOPOLOGY).sizes == (2, 2)


def test_layering_reordered():
    assert layering(REORDERED_MAJ4).layers == (0b0001, 0b0110, 0b1000)


def test_layering_independent_gates():
    t = Topology(4, ((0, 0),) * 4)
    assert layering(t).layers == (0b1111,)


def test_layering_maximality():
    # the gate that opens each layer is blocked by the previous one
    for t in all_raw(4):
        lay = layering(t).layers
        for prev, cur in zip(lay, lay[1:]):
            opener = cur & -cur
            left, right = t.gates[opener.bit_length() - 1]
            assert (left | right) & prev


# --- well-layering ----------------------------------------------------------

def test_is_well_layered_examples():
    assert is_well_layered(MAJ4_TOPOLOGY)
    assert not is_well_layered(REORDERED_MAJ4)
    assert is_well_layered(Topology(1, ((0, 0),)))


def test_well_layer_normalize_reordered():
    norm = well_layer_normalize(REORDERED_MAJ4)
    assert is_well_layered(norm)
    assert equivalent(norm, REORDERED_MAJ4)
    assert equivalent(norm, MAJ4_TOPOLOGY)


def test_well_layer_normalize_no_op():
    assert well_layer_normalize(MAJ4_TOPOLOGY) is MAJ4_TOPOLOGY


@pytest.mark.parametrize("k", [2, 3, 4])
def test_well_layer_normalize_exhaustive(k):
    for t in all_raw(k):
        norm = well_layer_normalize(t)
        assert is_well_layered(norm)
        assert literal_equivalent(norm, t)


def test_well_layer_normalize_sampled_k5():
    rng = random.Random(23)
    for _ in range(200):
        gates = tuple((rng.randrange(1 << i), rng.randrange(1 << i)) for i in range(5))
        t = Topology(5, gates)
        norm = well_layer_normalize(t)
        assert is_well_layered(norm)
        assert literal_equivalent(norm, t)


# --- minimality -----------------------------------------------------------

def test_is_minimal_examples():
    assert is_minimal(MAJ4_TOPOLOGY)
    assert not is_minimal(Topology(3, ((0, 0), (0, 0), (1, 3))))  # {1} inside {1,2}
    # shared {3} must be below both {2} and {1} in mask order; 4 > 2
    assert not is_minimal(Topology(4, ((0, 0), (0, 0), (0, 0), (6, 5))))


# --- equivalence ------------------------------------------------------------

def test_equivalent_relabeled_majority():
    relabeled = Topology(4, ((0, 0), (0, 0), (0, 1), (2, 1)))  # gates 1 and 2 swapped
    assert equivalent(MAJ4_TOPOLOGY, relabeled)


def test_equivalent_reordering():
    assert equivalent(MAJ4_TOPOLOGY, REORDERED_MAJ4)


def test_not_equivalent_different_wiring():
    t1 = Topology(2, ((0, 0), (1, 0)))
    t2 = Topology(2, ((0, 0), (0, 0)))
    assert not equivalent(t1, t2)
    assert not equivalent(t1, Topology(1, ((0, 0),)))


def test_equivalent_is_an_equivalence_relation():
    rng = random.Random(5)
    tops = [t for t in all_raw(3)]
    for _ in range(60):
        a, b, c = rng.choice(tops), rng.choice(tops), rng.choice(tops)
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)


def test_equivalent_relation_on_related_k5_triples():
    # random relabelings-with-swaps of one topology must stay in one class
    rng = random.Random(9)
    for _ in range(40):
        gates = tuple((rng.randrange(1 << i), rng.randrange(1 << i)) for i in range(5))
        a = Topology(5, gates)
        b = well_layer_normalize(a)
        c = well_layer_normalize(b)
        assert equivalent(a, b) and equivalent(b, c) and equivalent(a, c)


def test_equivalent_agrees_with_literal_search():
    rng = random.Random(17)
    tops = all_raw(3)
    for _ in range(150):
        a, b = rng.choice(tops), rng.choice(tops)
        assert equivalent(a, b) == literal_equivalent(a, b)


# --- canonical forms ---------------------------------------------------------

def test_canonical_form_idempotent():
    for t in all_raw(3):
        if is_well_layered(t):
            c = canonical_form(t)
            assert canonical_form(c) == c


def test_canonical_form_fixes_independent_gates():
    t = Topology(3, ((0, 0),) * 3)
    assert canonical_form(t) == t


def test_canonical_form_requires_well_layered():
    with pytest.raises(ContractError):
        canonical_form(REORDERED_MAJ4)


@pytest.mark.parametrize("k", [2, 3])
def test_canonical_form_matches_equivalence(k):
    wl = [t for t in all_raw(k) if is_well_layered(t)]
    by_key = {}
    for t in wl:
        by_key.setdefault(canonical_form(t).encode(), []).append(t)
    keys = list(by_key)
    for members in by_key.values():
        for m in members[1:]:
            assert literal_equivalent(members[0], m)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            assert not literal_equivalent(by_key[keys[i]][0], by_key[keys[j]][0])


def test_representative_form_is_minimal_when_possible():
    for t in all_raw(4):
        if not (is_well_layered(t) and is_minimal(t)):
            continue
        rep = representative_form(t)
        assert is_minimal(rep)
        assert has_minimal_member(t)
        assert equivalent(rep, t)


# --- generation ---------------------------------------------------------------

def test_generate_counts_match_definitional_quotient():
    # exact class counts of well-layered minimal topologies; cross-checked
    # against brute-force classing in the oracle tests and acceptance suite
    assert [generate(k).count for k in range(5)] == [0, 1, 2, 8, 85]


def test_generate_members_are_valid():
    for k in (1, 2, 3, 4):
        ts = generate(k)
        assert ts.k == k
        for m in ts.members:
            assert m.k == k
            assert is_well_layered(m)
            assert is_minimal(m)
            assert representative_form(m) == m
        for i in range(ts.count):
            for j in range(i + 1, ts.count):
                assert not equivalent(ts.members[i], ts.members[j])


def test_generate_deterministic_across_runs_and_workers():
    base = generate(4)
    assert generate(4).members == base.members
    assert generate(4, workers=3).members == base.members


def test_generate_caps():
    assert generate(0).count == 0
    with pytest.raises(CapacityError):
        generate(8)
    with pytest.raises(ValueError):
        generate(-1)


# --- text formats ----------------------------------------------------------

def test_topology_text_roundtrip():
    text = format_topology(MAJ4_TOPOLOGY)
    assert text.splitlines()[0] == "topology k=4"
    assert "gate 4: L={1} R={2}" in text
    assert parse_topology(text) == MAJ4_TOPOLOGY


def test_parse_topology_errors():
    with pytest.raises(ParseError):
        parse_topology("topology k=1\ngate 1: L={1} R={}")
    with pytest.raises(ParseError):
        parse_topology("topology k=2\ngate 1: L={} R={}")
    with pytest.raises(ParseError):
        parse_topology("gate 1: L={} R={}")


def test_topology_set_roundtrip(tmp_path):
    ts = generate(3)
    text = format_topology_set(ts)
    assert text.startswith("topologyset k=3 count=8")
    assert parse_topology_set(text) == ts
    path = tmp_path / "t3.txt"
    save_topology_set(ts, path)
    assert load_topology_set(path) == ts


def test_parse_topology_set_errors():
    with pytest.raises(ParseError):
        parse_topology_set("topologyset k=2 count=3\n\ntopology k=2\ngate 1: L={} R={}\ngate 2: L={} R={}\n")
    with pytest.raises(ParseError):
        parse_topology_set("not a header\n")
