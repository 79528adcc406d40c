import pytest

from dblcat import InvalidStructure
from dblcat.double_cat import CompanionshipData, find_companions
from dblcat.freeliving import (
    act, comp_cells, comp_presheaf, count_extensions, extend_companionship, extend_conjunction,
    parse_staircase, sigma, staircase_str, transported_conjunction, unit_classes, verify_filtration,
)


def test_staircase_text_round_trip():
    assert staircase_str(parse_staircase("00/01")) == "00/01"
    with pytest.raises(ValueError):
        parse_staircase("10/11")
    with pytest.raises(ValueError):
        parse_staircase("01/00")


@pytest.mark.parametrize("n,m,k", [(0, 0, 2), (1, 1, 6), (2, 1, 10), (2, 2, 20), (3, 3, 70)])
def test_comp_level_sizes(n, m, k):
    assert len(comp_cells(n, m)) == k


def test_comp_and_conj_are_presheaves():
    assert comp_presheaf(2, 2).check_identities() == []
    assert comp_presheaf(2, 2, "conj").check_identities() == []
    with pytest.raises(ValueError):
        comp_presheaf(1, 1, "both")


def test_sigma():
    assert sigma(1) == ((0, 0), (0, 1))
    assert sigma(2) == ((0, 0, 0), (0, 0, 1), (0, 1, 1))
    assert act(sigma(2), (0, 2), (0, 2)) == sigma(1)
    with pytest.raises(ValueError):
        sigma(0)


def test_filtration():
    rep = verify_filtration(3, (2, 2))
    assert rep.ok, rep.failures()
    assert len(rep.stages) == 2


def test_extension_is_a_map_and_unique(dbl):
    D = dbl["sq_poset2"]
    data = find_companions(D, "0->1")[0]
    assert extend_companionship(D, data, 2, 2).is_valid()
    assert count_extensions(D, data.unit, 2, 2) == 1


def test_extension_rejects_bad_data(dbl):
    D = dbl["sq_poset2"]
    data = find_companions(D, "0->1")[0]
    bad = CompanionshipData(data.f, data.F, data.unit, "[0->1|1->2|0->1|1->2]")
    with pytest.raises(InvalidStructure):
        extend_companionship(D, bad, 1, 1)


def test_count_extensions_rejects_non_unit(dbl):
    with pytest.raises(ValueError):
        count_extensions(dbl["sq_poset2"], "[0->1|1->2|0->1|1->2]", 1, 1)


def test_conjunction_extension_matches_transport(dbl):
    D = dbl["sq_galois"]
    checked = 0
    for f in sorted(D.v_arrows):
        for cd in find_companions(D, f, "conjoint"):
            a = extend_conjunction(D, cd, 2, 2)
            b = transported_conjunction(D, cd, 2, 2)
            assert a.is_valid()
            for bd in a.source.bidegrees():
                for s in a.source.level(*bd):
                    assert a(bd, s) == b(bd, s)
            checked += 1
    assert checked == 3


def test_unit_classes_in_galois(dbl):
    D = dbl["sq_galois"]
    assert unit_classes(D, "u") == [["[id_P|u|id_P|u]"]]
    assert all(len(unit_classes(D, f)) == 1 for f in D.v_arrows)
