import itertools
import random

import pytest

from helpers import C6, TWO_C3, atlas, random_perm
from swcanon.graph import atomic_type, cycle, path, permute
from swcanon.wl import (
    ColorNode,
    base,
    chi_kh,
    chi_table,
    color_key,
    color_order,
    deep_equal,
    rounds_needed,
    wl_colors,
    wl_round,
)


def naive_wl(g, k, rounds):
    """Independent k-WL: colors are plain nested tuples, no interning, no hashing tricks."""
    tuples = list(itertools.product(range(g.n), repeat=k))
    cur = {t: ("atp", atomic_type(g, t)) for t in tuples}
    out = [cur]
    for _ in range(rounds):
        nxt = {}
        for t in tuples:
            sig = sorted(
                (repr(atomic_type(g, t + (v,))), tuple(repr(cur[t[:p] + (v,) + t[p + 1:]]) for p in range(k)))
                for v in range(g.n)
            )
            nxt[t] = (cur[t], tuple(sig))
        cur = nxt
        out.append(cur)
    return out


def same_partition(pairs):
    """``pairs`` is a list of (a, b) labels; a-equality must match b-equality."""
    for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
        if (a1 is a2) != (b1 == b2):
            return False
    return True


class TestRefinement:
    def test_c6_single_color(self):
        t = wl_colors(C6, 1, 1)
        assert len(set(t.rounds[1].values())) == 1

    def test_p3_degree_split(self):
        t = wl_colors(path(3), 1, 1)
        assert t.color((0,), 1) is t.color((2,), 1)
        assert t.color((0,), 1) is not t.color((1,), 1)

    def test_round_zero_is_atomic_type(self):
        g = path(4)
        t = wl_colors(g, 2, 0)
        for u, c in t.rounds[0].items():
            assert c is base(atomic_type(g, u))

    def test_stable_fixed_point(self):
        g = path(5)
        t = wl_colors(g, 1, 6)
        parts = [len(set(r.values())) for r in t.rounds]
        r = next(i for i in range(len(parts) - 1) if parts[i] == parts[i + 1])
        nxt = wl_round(g, 1, t.rounds[r + 1])
        assert len(set(nxt.values())) == parts[r + 1]

    def test_c6_vs_2c3(self):
        for r in range(4):
            assert wl_colors(C6, 1, r).histogram(r) == wl_colors(TWO_C3, 1, r).histogram(r)
        assert wl_colors(C6, 2, 2).histogram(2) != wl_colors(TWO_C3, 2, 2).histogram(2)

    def test_monotone(self):
        for g in atlas(4, 1):
            t = wl_colors(g, 2, 3)
            for r in range(3):
                for u, v in itertools.combinations(t.rounds[r], 2):
                    if t.rounds[r + 1][u] is t.rounds[r + 1][v]:
                        assert t.rounds[r][u] is t.rounds[r][v]
                assert len(t.histogram(r)) <= len(t.histogram(r + 1))

    @pytest.mark.parametrize("k", [1, 2])
    def test_matches_naive_wl_across_graphs(self, k):
        graphs = atlas(4, 1)
        rounds = 3
        labels = [[] for _ in range(rounds + 1)]
        for g in graphs:
            ours = wl_colors(g, k, rounds)
            theirs = naive_wl(g, k, rounds)
            for r in range(rounds + 1):
                labels[r] += [(ours.rounds[r][t], theirs[r][t]) for t in ours.rounds[r]]
        for r in range(rounds + 1):
            assert same_partition(labels[r])

    def test_isomorphic_histograms(self):
        rng = random.Random(2)
        for g in atlas(5, 2)[::3]:
            h = permute(g, random_perm(g.n, rng))
            a, b = wl_colors(g, 2, 3), wl_colors(h, 2, 3)
            for r in range(4):
                assert a.histogram(r) == b.histogram(r)


class TestChi:
    def test_top_length_is_atomic_type(self):
        g = cycle(5)
        table = wl_colors(g, 2, rounds_needed(2, 1))
        assert chi_kh(g, (0, 1, 3), 2, 1, table) == atomic_type(g, (0, 1, 3))

    def test_k1_h1_is_degree_color(self):
        graphs = atlas(5, 1)
        labels = []
        for g in graphs:
            table = wl_colors(g, 1, rounds_needed(1, 1))
            # the multiset also counts non-neighbors, so the vertex count is part of the color
            labels += [(chi_kh(g, (v,), 1, 1, table), (g.n, g.degree(v))) for v in g.vertices]
        assert same_partition(labels)

    def test_k2_h1_single_vertex_reads_round_two(self):
        for g in atlas(4, 1):
            table = wl_colors(g, 2, rounds_needed(2, 1))
            theirs = naive_wl(g, 2, 2)
            labels = []
            for v in g.vertices:
                c = chi_kh(g, (v,), 2, 1, table)
                assert c is table.color((v, v), 2)
                assert c is wl_colors(g, 2, 2).color((v, v), 2)
                labels.append((c, theirs[2][(v, v)]))
            assert same_partition(labels)

    def test_padding_and_round_index(self):
        g = path(4)
        table = wl_colors(g, 3, rounds_needed(3, 2))
        assert chi_kh(g, (1, 2), 3, 2, table) is table.color((1, 2, 2), 3)
        assert chi_kh(g, (1,), 3, 2, table) is table.color((1, 1, 1), 4)

    def test_errors(self):
        g = path(3)
        table = wl_colors(g, 1, 0)
        with pytest.raises(ValueError):
            chi_kh(g, (0, 1, 2), 1, 1, table)
        with pytest.raises(ValueError):
            chi_kh(g, (), 1, 1, table)
        with pytest.raises(ValueError):
            chi_kh(g, (0,), 1, 1, table)

    def test_records_atomic_type(self):
        seen = {}
        for g in atlas(4, 1):
            for k, h in ((1, 1), (2, 1), (2, 2)):
                for u, c in chi_table(g, k, h).items():
                    key = (k, h, c)
                    a = atomic_type(g, u)
                    assert seen.setdefault(key, a) == a


class TestOrder:
    def colors(self):
        out = []
        for g in atlas(4, 1):
            out += list(chi_table(g, 2, 1).values())
        return list(dict.fromkeys(out))

    def test_total_order_axioms(self):
        cs = self.colors()
        for a in cs:
            assert color_order(a, a) == 0
        for a, b in itertools.combinations(cs, 2):
            assert color_order(a, b) == -color_order(b, a) != 0
        ordered = sorted(cs, key=color_key)
        for i in range(len(ordered) - 1):
            assert color_order(ordered[i], ordered[i + 1]) == -1

    def test_atomic_types_first(self):
        cs = self.colors()
        atp = [c for c in cs if not isinstance(c, ColorNode)]
        nodes = [c for c in cs if isinstance(c, ColorNode)]
        assert all(color_order(a, b) == -1 for a in atp for b in nodes)

    def test_cross_graph_equal(self):
        g = path(4)
        h = permute(g, [3, 1, 0, 2])
        a = chi_kh(g, (0,), 2, 1, wl_colors(g, 2, 2))
        b = chi_kh(h, (3,), 2, 1, wl_colors(h, 2, 2))
        assert color_order(a, b) == 0 and a is b

    def test_deep_equal_agrees_with_identity(self):
        nodes = [c for c in self.colors() if isinstance(c, ColorNode)]
        for a, b in itertools.combinations(nodes[:40], 2):
            assert deep_equal(a, b) == (a is b)
        assert all(deep_equal(a, a) for a in nodes)
