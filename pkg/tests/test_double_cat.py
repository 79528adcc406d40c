import json

import pytest

from dblcat import FinDoubleCategory, FinTwoCategory, InvalidStructure, load_structure
from dblcat.catalog import NEGATIVE, broken_interchange
from dblcat.double_cat import (
    adjunction_from_comp_conj, chain_2cat, companionable_alt_check, embed_2cat, find_adjunctions,
    find_companions, fragment, grid_dblcat, is_companionable, is_companionship, left_adjoints,
    nerve_level_size, terminal_dblcat, two_cat_isomorphic_on_cells, unit_shaped_squares,
)

SIZES = {  # (objects, horizontal, vertical, squares)
    "terminal": (1, 1, 1, 1),
    "free_vertical_arrow": (2, 2, 3, 3),
    "free_square": (4, 6, 6, 9),
    "sq_poset1": (2, 3, 3, 6),
    "sq_poset2": (3, 6, 6, 20),
    "sq_poset11": (4, 9, 9, 36),
    "sq_galois": (2, 5, 5, 43),
}


@pytest.mark.parametrize("name", sorted(SIZES))
def test_catalog_sizes_and_axioms(dbl, name):
    D = dbl[name]
    assert (len(D.objects), len(D.h_arrows), len(D.v_arrows), len(D.squares)) == SIZES[name]
    assert D.check_axioms(first_only=False) == []


def test_two_categories_valid(twos):
    assert all(X.is_valid() and X.locally_posetal for X in twos.values())
    assert len(twos["galois_2cat"].one_cells) == 5


def test_broken_interchange_is_rejected():
    B = broken_interchange()
    v = B.check_axioms()
    assert len(v) == 1 and str(v[0]).startswith("interchange")
    with pytest.raises(InvalidStructure):
        B.ensure_valid()


def test_negative_fixtures_rejected(shipped):
    for name in NEGATIVE:
        assert not shipped[name].is_valid()


@pytest.mark.parametrize("name,sizes", [
    ("free_square", {(1, 1): 9, (2, 2): 16, (3, 3): 25}),
    ("sq_poset1", {(1, 1): 6, (2, 2): 20, (3, 3): 70}),
    ("sq_poset2", {(1, 1): 20, (2, 2): 175}),
    ("sq_galois", {(1, 1): 43, (2, 2): 13103, (3, 1): 3669}),
])
def test_nerve_level_sizes(dbl, name, sizes):
    D = dbl[name]
    for (n, m), k in sizes.items():
        assert nerve_level_size(D, n, m) == k
    X = D.nerve(2, 2)
    for (n, m), k in sizes.items():
        if n <= 2 and m <= 2 and k < 1000:
            assert X.size(n, m) == k


def test_nerve_lazy_membership_agrees(dbl):
    X = dbl["sq_poset2"].nerve(3, 3)
    cells = list(X.level(2, 1))
    assert all(X.has_cell(2, 1, c) for c in cells)


def test_grid_dblcat_is_free_square():
    G = grid_dblcat(1, 1)
    assert len(G.objects) == 4 and len(G.squares) == 9


def test_terminal():
    T = terminal_dblcat()
    assert T.is_valid() and len(T.squares) == 1


def test_paste_grid_composites(dbl):
    D = dbl["sq_poset2"]
    a = "[0->1|1->1|0->1|1->1]"
    b = "[1->2|1->2|1->1|2->2]"
    assert D.paste_grid([[a]]) == a
    assert D.paste_grid([[a, b]]) == "[0->2|1->2|0->1|2->2]"
    c = "[1->1|1->2|1->1|1->2]"
    assert D.paste_grid([[a], [c]]) == "[0->1|1->2|0->1|1->2]"


def test_paste_grid_rejects_mismatch(dbl):
    D = dbl["sq_poset2"]
    with pytest.raises(ValueError):
        D.paste_grid([["[0->1|1->2|0->1|1->2]", "[0->1|1->2|0->1|1->2]"]])


@pytest.mark.parametrize("which", ["horizontal", "vertical"])
def test_fragment_of_embedding(twos, which):
    X = twos["galois_2cat"]
    assert two_cat_isomorphic_on_cells(fragment(embed_2cat(X, which), which), X)


def test_hop_and_transpose_involutive(dbl):
    D = dbl["sq_galois"]
    for op in ("hop", "transpose"):
        E = getattr(getattr(D, op)(), op)()
        assert E.is_valid()
        assert len(E.squares) == len(D.squares)


def test_companions_in_sq_poset2(dbl):
    D = dbl["sq_poset2"]
    for f in D.v_arrows:
        comps = find_companions(D, f)
        assert len(comps) == 1
        c = comps[0]
        assert c.F == f
        assert is_companionship(D, c.f, c.F, c.unit, c.counit)
    # only identities have conjoints in a poset
    for f in D.v_arrows:
        a, b = f.split("->")
        assert len(find_companions(D, f, "conjoint")) == (1 if a == b else 0)


def test_unit_shaped_squares(dbl):
    assert len(unit_shaped_squares(dbl["sq_poset2"])) == 6


def test_companionable_agreement(dbl):
    for name in ("sq_poset2", "sq_galois", "free_square"):
        D = dbl[name]
        for s in D.squares:
            assert bool(is_companionable(D, s)) == companionable_alt_check(D, s)


def test_adjunctions_in_galois(twos):
    G = twos["galois_2cat"]
    assert find_adjunctions(G, "u") == [("v", "id_P=>c", "id_Q=>id_Q")]
    assert find_adjunctions(G, "c") == []
    assert [a[0] for a in left_adjoints(G, "v")] == ["u"]


def test_adjunction_from_companion_and_conjoint(dbl):
    D = dbl["sq_galois"]
    found = 0
    for f in D.v_arrows:
        comps = find_companions(D, f)
        conjs = find_companions(D, f, "conjoint")
        if comps and conjs:
            found += 1
            assert adjunction_from_comp_conj(D, f, comps[0], conjs[0]) is not None
    assert found >= 2


def test_json_round_trip_byte_stable(dbl, twos):
    for X in list(dbl.values()) + list(twos.values()):
        s = X.dumps()
        Y = load_structure(json.loads(s))
        assert type(Y) is type(X)
        assert Y.dumps() == s


def test_load_structure_rejects_unknown_kind():
    with pytest.raises((ValueError, KeyError)):
        load_structure({"kind": "triple-category"})


def test_chain_2cat():
    C = chain_2cat(2)
    assert isinstance(C, FinTwoCategory) and len(C.objects) == 3 and len(C.one_cells) == 6
    assert isinstance(embed_2cat(C, "vertical"), FinDoubleCategory)
