import pytest

from dblcat import BudgetExceeded
from dblcat.double_cat import chain_2cat, left_adjoints
from dblcat.functor_dbl import (
    companion_characterization, dbl_fun, double_functors, fun_lax, lax_adjoint_characterization,
    unit_componentwise, vertical_cotensor,
)


def shape(D):
    return len(D.objects), len(D.h_arrows), len(D.v_arrows), len(D.squares)


def test_functors_out_of_terminal(dbl):
    D = dbl["sq_poset2"]
    assert len(double_functors(dbl["terminal"], D)) == 3
    assert shape(dbl_fun(dbl["terminal"], D)) == shape(D)


def test_functor_double_category_is_valid(dbl):
    FD = dbl_fun(dbl["free_vertical_arrow"], dbl["sq_poset1"])
    assert shape(FD) == (3, 6, 6, 20)
    assert FD.check_axioms() == []


def test_vertical_cotensor(twos, dbl):
    V = vertical_cotensor(twos["poset1_2cat"], dbl["sq_poset1"])
    assert shape(V) == (3, 6, 6, 20)


def test_dbl_fun_budget(dbl):
    with pytest.raises(BudgetExceeded):
        dbl_fun(dbl["free_square"], dbl["sq_poset2"], budget=1000)


def test_companion_characterization_small(dbl):
    FD = dbl_fun(dbl["free_vertical_arrow"], dbl["sq_poset2"])
    rs = [companion_characterization(FD, H) for H in sorted(FD.h_arrows)]
    assert len(rs) == 20
    assert all(r.is_companion and r.agree and r.witness_matches for r in rs)


def test_unit_componentwise(dbl):
    FD = dbl_fun(dbl["free_vertical_arrow"], dbl["sq_poset1"])
    pairs = [unit_componentwise(FD, s) for s in FD.squares]
    assert all(a == b for a, b in pairs)
    assert any(a for a, _ in pairs)


def test_lax_adjoints_pointwise_terminal(twos):
    Y = twos["galois_2cat"]
    FL = fun_lax(chain_2cat(0), Y)
    rs = [lax_adjoint_characterization(FL, Y, H) for H in sorted(FL.h_arrows)]
    assert len(rs) == 5
    assert sum(r.right_adjoint for r in rs) == 3
    assert all(r.agree for r in rs)


def test_lax_adjoints_need_mates(twos):
    Y = twos["galois_2cat"]
    FL = fun_lax(twos["poset1_2cat"], Y)
    assert len(FL.h_arrows) == 43
    rs = {H: lax_adjoint_characterization(FL, Y, H) for H in FL.h_arrows}
    assert all(r.agree for r in rs.values())
    assert sum(r.right_adjoint for r in rs.values()) == 12
    assert all(r.left_adjoint_ok for r in rs.values() if r.pointwise)
    # transformations whose components all have left adjoints but whose mates fail
    comp_only = [H for H, r in rs.items()
                 if not r.pointwise and all(left_adjoints(Y, a) for a in FL.htrans[H][0].values())]
    assert len(comp_only) == 2
