import pytest

from gradedtraces.groups import (CATALOG, FiniteGroup, abelianization, catalog_group,
                                 class_representatives, commutator_subgroup,
                                 cycles_to_perm, decomposition_from_images, perm_to_cycles)

# |G|, number of classes, |G^ab|
KNOWN = {"S3": (6, 3, 2), "S4": (24, 5, 2), "A4": (12, 4, 3), "D4": (8, 5, 4),
         "Z3xS3": (18, 9, 6), "A4xZ2": (24, 8, 6), "SL(2,3)": (24, 7, 3), "G20": (20, 5, 4)}


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_invariants(name):
    G = catalog_group(name)
    order, nclasses, ab = KNOWN[name]
    assert G.order == order
    classes = G.classes()
    assert len(classes) == nclasses
    assert sum(len(c) for c in classes) == G.order
    for c in classes:
        assert len(c) * len(G.centralizer(c[0])) == G.order
    assert G.order // len(commutator_subgroup(G)) == ab
    dec = abelianization(G)
    assert dec.size == ab and dec.check()
    reps = class_representatives(G)
    assert sorted(min(G.conjugacy_class(r)) for r in reps) == sorted(min(c) for c in classes)
    assert G.check_table()


def test_cycle_notation_round_trip():
    p = cycles_to_perm("(1 2 3)(4 5)", 5)
    assert p == (1, 2, 0, 4, 3)
    assert perm_to_cycles(p) == "(1 2 3)(4 5)"


def test_words_and_labels():
    G = catalog_group("S4")
    g = G.word("(1 2)")
    assert G.element_order(g) == 2
    assert G.label(G.word("(1 2 3 4)")) == "(1 2 3 4)"
    D = catalog_group("D4")
    a, b = D.word("a"), D.word("b")
    assert D.power(a, 4) == 0 and D.m(b, a, b) == D.inv[a]


def test_group_from_generators_and_images():
    G = FiniteGroup([cycles_to_perm("(1 2)", 3), cycles_to_perm("(1 2 3)", 3)], names=["s", "r"])
    assert G.order == 6
    dec = decomposition_from_images(G, (2,), [(1,), (0,)])
    assert dec.degree(G.word("s*r")) == 1
    with pytest.raises(AssertionError):
        decomposition_from_images(G, (3,), [(0,), (1,)])
