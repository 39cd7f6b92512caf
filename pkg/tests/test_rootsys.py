import itertools

import pytest

from chevcount.rootsys import (RootSystem, WeylElement, build_root_system,
                               enumerate_j_reduced, weyl_group_order,
                               subsystem_types, weyl_subgroup_order)

POS_COUNTS = {
    "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C3": 9,
    "C4": 16, "D4": 12, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120,
}
W_ORDERS = {
    "A2": 6, "A3": 24, "A4": 120, "B2": 8, "B3": 48, "B4": 384, "C3": 48,
    "C4": 384, "D4": 192, "G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040,
    "E8": 696729600,
}


@pytest.fixture(scope="module")
def systems():
    return {name: build_root_system(name) for name in POS_COUNTS}


def test_positive_root_counts(systems):
    for name, n in POS_COUNTS.items():
        assert systems[name].n_pos == n, name


def test_weyl_group_orders(systems):
    for name, order in W_ORDERS.items():
        assert weyl_group_order(systems[name]) == order, name


def test_simple_roots_lead_canonical_order(systems):
    for rs in systems.values():
        for i in range(rs.rank):
            assert rs.roots[i] == tuple(int(j == i) for j in range(rs.rank))
        # height-major order, descending lex within a height
        for i in range(rs.n_pos - 1):
            a, b = rs.roots[i], rs.roots[i + 1]
            assert (sum(a), tuple(-c for c in a)) < (sum(b), tuple(-c for c in b))


def test_negation_layout(systems):
    for rs in systems.values():
        for i in range(rs.n_pos):
            j = rs.negate(i)
            assert j == i + rs.n_pos
            assert rs.roots[j] == tuple(-c for c in rs.roots[i])
            assert rs.negate(j) == i
            assert rs.is_positive(i) and not rs.is_positive(j)


def test_heights_match_coefficients(systems):
    for rs in systems.values():
        assert rs.heights == [sum(v) for v in rs.roots[:rs.n_pos]]


def test_root_index_inverts_roots(systems):
    for rs in systems.values():
        for i, v in enumerate(rs.roots):
            assert rs.root_index[v] == i


def test_reflections_are_involutions(systems):
    for rs in systems.values():
        for i in range(rs.rank):
            s = WeylElement.reflection(rs, i)
            assert (s * s).perm == tuple(range(2 * rs.n_pos))
            assert s.act(i) == rs.negate(i)
            # s_i permutes the other positive roots
            moved = [r for r in range(rs.n_pos) if r != i]
            assert sorted(s.act(r) for r in moved) == moved


def test_length_counts_inversions(systems):
    rs = systems["B3"]
    w = WeylElement.from_word(rs, (0, 1, 2, 1, 0))
    inversions = [r for r in range(rs.n_pos) if not rs.is_positive(w.act(r))]
    assert w.length == len(inversions)
    assert WeylElement.identity(rs).length == 0


def test_reduced_word_reproduces_element(systems):
    rs = systems["C3"]
    w = WeylElement.from_word(rs, (0, 1, 2, 0, 1, 0, 2))
    red = w.reduced_word()
    assert len(red) == w.length
    assert WeylElement.from_word(rs, red).perm == w.perm


def test_longest_element_exists(systems):
    for name in ("A2", "B2", "G2"):
        rs = systems[name]
        perms = {WeylElement.identity(rs).perm}
        frontier = [WeylElement.identity(rs)]
        elements = [WeylElement.identity(rs)]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(rs.rank):
                    u = w * WeylElement.reflection(rs, i)
                    if u.perm not in perms:
                        perms.add(u.perm)
                        nxt.append(u)
                        elements.append(u)
            frontier = nxt
        assert len(perms) == W_ORDERS[name]
        assert max(w.length for w in elements) == rs.n_pos


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_j_reduced_enumeration_counts(systems, name):
    rs = systems[name]
    for m in range(rs.rank + 1):
        for J in itertools.combinations(range(rs.rank), m):
            count = 0
            for el in enumerate_j_reduced(rs, J):
                count += 1
                w = el.to_weyl()
                assert w.length == el.length
                # minimal coset representative: w^{-1} keeps Phi_J^+ positive
                wi = w.inverse()
                assert all(rs.is_positive(wi.act(j)) for j in J)
            assert count == W_ORDERS[name] // weyl_subgroup_order(rs, J)


def test_j_reduced_inversion_bits(systems):
    rs = systems["B2"]
    for el in enumerate_j_reduced(rs, (0,)):
        w = el.to_weyl()
        expect = {r for r in range(rs.n_pos) if not rs.is_positive(w.act(r))}
        assert set(el.inversion_roots()) == expect
        assert el.length == len(expect)


def test_check_j_rejects_bad_input(systems):
    rs = systems["A2"]
    with pytest.raises(ValueError):
        rs.check_j((2,))
    with pytest.raises(ValueError):
        rs.check_j((0, 0))
    assert rs.check_j([1, 0]) == (0, 1)


def test_phi_j_positive(systems):
    rs = systems["B2"]
    assert rs.phi_j_positive(()) == []
    assert rs.phi_j_positive((0,)) == [0]
    assert sorted(rs.phi_j_positive((0, 1))) == list(range(rs.n_pos))


def test_subsystem_types(systems):
    e8 = systems["E8"]
    assert subsystem_types(e8, (1, 2, 3, 4)) == [("D", 4)]
    assert subsystem_types(e8, (0, 1, 2, 3, 4, 5, 6)) == [("E", 7)]
    assert subsystem_types(e8, (2, 3, 4, 5, 6, 7)) == [("A", 6)]
    assert subsystem_types(e8, (0, 1)) == [("A", 1), ("A", 1)]
    assert subsystem_types(e8, (1, 3)) == [("A", 2)]
    assert subsystem_types(e8, ()) == []
    f4 = systems["F4"]
    assert subsystem_types(f4, (1, 2)) == [("B", 2)]
    assert subsystem_types(systems["B3"], (0, 1, 2)) == [("B", 3)]
    assert subsystem_types(systems["C3"], (0, 1, 2)) == [("C", 3)]
    assert subsystem_types(systems["D4"], (0, 2, 3)) == [("A", 1)] * 3


def test_weyl_subgroup_order_matches_full_group(systems):
    for name in ("A3", "B3", "D4", "E6"):
        rs = systems[name]
        assert weyl_subgroup_order(rs, range(rs.rank)) == W_ORDERS[name]
        assert weyl_subgroup_order(rs, ()) == 1
