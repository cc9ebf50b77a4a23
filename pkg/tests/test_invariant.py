import dataclasses
import hashlib
import random
import re
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C6, TWO_C3, atlas, random_graph, random_perm
from swcanon.automaton import build_automaton
from swcanon.graph import Graph, cycle, path, permute
from swcanon.invariant import (
    FORMAT_VERSION,
    MalformedInvariant,
    reconstruct_canonical,
    sw_forward_reduce,
    sw_invariant,
)
from swcanon.linalg import SparseMatrix
from swcanon.mia import canonical_form, forward_reduce
from swcanon.oracles import walk_census


def test_isomorphic_copies_serialize_identically():
    rng = random.Random(8)
    for _ in range(15):
        g = random_graph(rng.randint(1, 6), 0.5, rng)
        h = permute(g, random_perm(g.n, rng))
        for k in (1, 2):
            assert sw_invariant(g, k, 1).serialize() == sw_invariant(h, k, 1).serialize()


@settings(max_examples=25)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_isomorphism_property_k1(n, seed):
    rng = random.Random(seed)
    g = random_graph(n, rng.random(), rng)
    h = permute(g, random_perm(n, rng))
    assert sw_invariant(g, 1, 2).serialize() == sw_invariant(h, 1, 2).serialize()


def test_c6_vs_two_triangles():
    assert sw_invariant(C6, 1, 1).serialize() == sw_invariant(TWO_C3, 1, 1).serialize()
    a, b = walk_census(C6, 1, 1, 6), walk_census(TWO_C3, 1, 1, 6)
    assert all(a[t] == b[t] for t in range(1, 7))
    assert sw_invariant(C6, 2, 1).serialize() != sw_invariant(TWO_C3, 2, 1).serialize()
    a, b = walk_census(C6, 2, 1, 2), walk_census(TWO_C3, 2, 1, 2)
    assert a[1] != b[1]


@pytest.mark.parametrize("k", [1, 2])
def test_reconstruction_round_trip(k):
    for g in atlas(5, 1):
        aut = build_automaton(g, k, 1)
        inv = sw_invariant(g, k, 1, automaton=aut)
        assert reconstruct_canonical(inv) == canonical_form(aut, "3b")


def test_empty_graph_sentinel():
    inv = sw_invariant(Graph(0, frozenset()), 1, 1)
    assert inv.size == 0
    rec = reconstruct_canonical(inv)
    assert rec.dim == 0 and rec.alphabet == () and rec.transitions == ()
    assert "basis 0" in inv.serialize()


def test_mask_with_absent_color():
    inv = sw_invariant(path(4), 1, 1)
    assert inv.d_plus.mask(set(), set()).is_zero()


def test_fast_path_matches_generic_on_samples():
    for g in (C6, path(5), cycle(5)):
        for k in (1, 2):
            aut = build_automaton(g, k, 1)
            assert sw_forward_reduce(aut).key() == forward_reduce(aut, "3b").key()


def test_serialization_format():
    inv = sw_invariant(path(4), 2, 1)
    text = inv.serialize()
    lines = text.splitlines()
    assert lines[0] == FORMAT_VERSION
    assert lines[1] == f"n 4 k 2 h 1 states {len(build_automaton(path(4), 2, 1).states)} basis {inv.size}"
    body, last = text.rsplit("digest ", 1)
    assert last.strip() == hashlib.sha256(body.encode()).hexdigest()
    for line in lines:
        for tok in line.split():
            if "/" in tok:
                num, den = tok.split("/")
                assert int(den) > 0
    values = re.findall(r"(-?\d+)/(\d+)", text)
    assert all(gcd(int(a), int(b)) == 1 for a, b in values)


def test_size_bounds():
    for g in atlas(5, 1)[::3]:
        for k in (1, 2):
            inv = sw_invariant(g, k, 1)
            assert inv.size <= inv.n_states
            entries = inv.d_plus.nnz + inv.d_minus.nnz + sum(m.nnz for _, m in inv.t)
            assert entries <= (3 * k + 2) * inv.size ** 2


def test_variant_3a_has_empty_word_and_cannot_be_reconstructed():
    inv = sw_invariant(path(3), 1, 1, variant="3a")
    assert inv.words[0] == ()
    with pytest.raises(MalformedInvariant):
        reconstruct_canonical(inv)


def test_malformed_shapes():
    inv = sw_invariant(path(3), 1, 1)
    bad = dataclasses.replace(inv, d_plus=SparseMatrix((inv.size + 1, inv.size + 1)))
    with pytest.raises(MalformedInvariant):
        reconstruct_canonical(bad)
    bad = dataclasses.replace(inv, alpha=inv.alpha[:-1])
    with pytest.raises(MalformedInvariant):
        reconstruct_canonical(bad)


def test_bad_parameters():
    with pytest.raises(ValueError):
        sw_invariant(path(3), 0, 1)
