import copy

import pytest

from dblcat import InvalidStructure
from dblcat.double_cat import embed_2cat, fragment, two_cat_isomorphic_on_cells
from dblcat.freeliving import comp_presheaf
from dblcat.gray_sq import (
    chain_poset, filler_is_identity, globe_grid, globe_quotient, gray_functors, gray_grid, iota_maps,
    product_poset, sq_nerve, squares_dblcat,
)


def test_gray_grid_1_1():
    g = gray_grid(1, 1)
    assert g.objects == ("0,0", "0,1", "1,0", "1,1")
    assert sorted(g.hom("0,0", "1,1")) == ["0,0:DR", "0,0:RD"]
    nonid = [a for a in g.two_cells if g.two_cells[a][0] != g.two_cells[a][1]]
    assert nonid == ["0,0:RD=>0,0:DR"]


def test_gray_grid_paths():
    assert len(gray_grid(2, 1).hom("0,0", "2,1")) == 3


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_globe_grid_hom_count(m):
    assert len(globe_grid(1, m).hom("0", "1")) == m + 1


def test_product_poset_is_locally_posetal():
    P = product_poset(1, 1)
    assert P.is_valid() and len(P.objects) == 4


def test_sq_of_chain_is_comp():
    X = sq_nerve(chain_poset(1), 2, 2)
    C = comp_presheaf(2, 2)
    assert X.counts() == C.counts()


def test_sq_nerve_level_0_1(twos, dbl):
    X = sq_nerve(twos["poset2_2cat"], 2, 2)
    assert X.size(0, 1) == 6
    assert X.counts() == dbl["sq_poset2"].nerve(2, 2).counts()


def test_fillers_are_identities(twos):
    X = twos["poset1_2cat"]
    D = squares_dblcat(X)
    assert sum(filler_is_identity(X, D, s) for s in D.squares) == 6
    assert len(gray_functors(X, 1, 1)) == 6


def test_squares_fragments(twos):
    X = twos["galois_2cat"]
    D = squares_dblcat(X)
    assert D.is_valid()
    assert two_cat_isomorphic_on_cells(fragment(D, "horizontal"), X)
    assert two_cat_isomorphic_on_cells(fragment(D, "vertical"), X)


def test_squares_needs_posetal(twos):
    X = copy.copy(twos["poset1_2cat"])
    X.locally_posetal = False
    with pytest.raises(InvalidStructure):
        squares_dblcat(X)


def test_iota_maps():
    ih, iv = iota_maps(chain_poset(1), (2, 2))
    assert ih.is_valid() and iv.is_valid()
    assert ih.is_injective() and iv.is_injective()
    cell = (("0", "1"), (("0->1",),))
    assert ih((1, 0), cell) == ((("0", "1"),), (("0->1",),), (), ())


def test_globe_quotient_counts():
    Q, q = globe_quotient(1, 1, (2, 2))
    assert Q.counts() == {(0, 0): 2, (0, 1): 2, (0, 2): 2, (1, 0): 4, (1, 1): 5, (1, 2): 6,
                          (2, 0): 6, (2, 1): 8, (2, 2): 10}
    assert q.is_valid()


def test_embedded_globe_has_one_nonidentity_square():
    D = embed_2cat(globe_grid(1, 1), "horizontal")
    nonid = [s for s in D.squares if D.squares[s][0] != D.squares[s][1]]
    assert nonid == ["0->1:0=>0->1:1"]
