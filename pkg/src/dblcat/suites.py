"""Property suites run over a fixture catalog (the ``verify`` verb)."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

from ._util import BudgetExceeded, sortkey
from .bisimplicial import horn_has_unique_lift, is_segal, non_convex_horns, segal_report
from .double_cat import (
    FinDoubleCategory, FinTwoCategory, InvalidStructure, chain_2cat, embed_2cat,
    two_cat_isomorphic_on_cells, fragment,
)
from .freeliving import verify_filtration
from .functor_dbl import companion_characterization, dbl_fun, fun_lax, lax_adjoint_characterization
from .gray_sq import squares_dblcat

# pairs left out of the Thm C grid: the functor double category is beyond the default budget
THM_C_SKIP = frozenset({("free_square", "sq_galois")})
THM_C_SOURCES = ("free_vertical_arrow", "free_square", "poset1_2cat")


class MissingInput(LookupError):
    """A suite needs a fixture the catalog does not have."""


@dataclass
class Record:
    suite: str
    subject: str
    status: str          # pass | fail | budget
    detail: str = ""


def _valid_dbl(catalog: dict) -> dict:
    return {k: v for k, v in catalog.items() if isinstance(v, FinDoubleCategory) and v.is_valid()}


def _two_cats(catalog: dict) -> dict:
    return {k: v for k, v in catalog.items() if isinstance(v, FinTwoCategory) and v.is_valid()}


def _guard(suite: str, subject: str, fn: Callable[[], tuple[bool, str]]) -> Record:
    try:
        ok, detail = fn()
    except BudgetExceeded as e:
        return Record(suite, subject, "budget", str(e))
    except InvalidStructure as e:
        return Record(suite, subject, "fail", str(e))
    return Record(suite, subject, "pass" if ok else "fail", detail)


def suite_horns(catalog: dict, levels=(3, 3)) -> list[Record]:
    N, M = levels
    horns = non_convex_horns(N, M)
    out = []
    for name, D in sorted(_valid_dbl(catalog).items()):
        def run(D=D):
            X = D.nerve(N + 1, M + 1)
            if not is_segal(X):
                return False, "; ".join(segal_report(X)[:3])
            Y = D.nerve(N, M)
            for S, T, n, m in horns:
                r = horn_has_unique_lift(S, T, n, m, Y)
                if not r:
                    return False, f"horn S={S} T={T} at {(n, m)}: {r.detail}"
            return True, f"segal at {(N + 1, M + 1)}, {len(horns)} horns"
        out.append(_guard("horns", name, run))
    return out


def suite_filtration(catalog: dict, levels=(3, 3)) -> list[Record]:
    def run():
        rep = verify_filtration(max(levels) + 1, tuple(levels))
        return rep.ok, "; ".join(rep.failures()[:3]) or f"{len(rep.stages)} stages"
    return [_guard("filtration", f"N={max(levels) + 1} at {tuple(levels)}", run)]


def suite_fragments(catalog: dict, levels=None) -> list[Record]:
    out = []
    for name, X in sorted(_two_cats(catalog).items()):
        if not X.locally_posetal:
            continue

        def run(X=X):
            D = squares_dblcat(X)
            h = two_cat_isomorphic_on_cells(fragment(D, "horizontal"), X)
            v = two_cat_isomorphic_on_cells(fragment(D, "vertical"), X)
            return h and v, f"horizontal {h}, vertical {v}"
        out.append(_guard("fragments", name, run))
    return out


def _thm_c_sources(catalog: dict) -> dict:
    src = {}
    for k in THM_C_SOURCES:
        obj = catalog.get(k)
        if isinstance(obj, FinTwoCategory):
            src[f"{k}_vertical"] = embed_2cat(obj, "vertical")
        elif isinstance(obj, FinDoubleCategory):
            src[k] = obj
    if not src:
        raise MissingInput("no source fixtures for thmC")
    return src


def thm_c_pair(X: FinDoubleCategory, D: FinDoubleCategory, budget=None) -> tuple[bool, str]:
    FD = dbl_fun(X, D, budget)
    bad = []
    n_comp = 0
    for H in sorted(FD.h_arrows, key=sortkey):
        r = companion_characterization(FD, H)
        n_comp += r.is_companion
        if not r.agree or (r.is_companion and not r.witness_matches):
            bad.append(H)
    if bad:
        return False, f"disagreement at {', '.join(bad[:5])}"
    return True, f"{len(FD.h_arrows)} transformations, {n_comp} companions"


def suite_thm_c(catalog: dict, levels=None) -> list[Record]:
    out = []
    sources = _thm_c_sources(catalog)
    for xn, X in sources.items():
        for dn, D in sorted(_valid_dbl(catalog).items()):
            if (xn, dn) in THM_C_SKIP:
                continue
            out.append(_guard("thmC", f"{xn} x {dn}", lambda X=X, D=D: thm_c_pair(X, D)))
    return out


def thm_d_pair(X: FinTwoCategory, Y: FinTwoCategory, budget=None) -> tuple[bool, str]:
    FL = fun_lax(X, Y, budget)
    bad = []
    ra = 0
    for H in sorted(FL.h_arrows, key=sortkey):
        r = lax_adjoint_characterization(FL, Y, H)
        ra += r.right_adjoint
        if not r.agree or (r.pointwise and not r.left_adjoint_ok):
            bad.append(H)
    if bad:
        return False, f"disagreement at {', '.join(bad[:5])}"
    return True, f"{len(FL.h_arrows)} lax transformations, {ra} right adjoints"


def suite_thm_d(catalog: dict, levels=None) -> list[Record]:
    Y = catalog.get("galois_2cat")
    X1 = catalog.get("poset1_2cat")
    if not isinstance(Y, FinTwoCategory) or not isinstance(X1, FinTwoCategory):
        raise MissingInput("thmD needs galois_2cat and poset1_2cat")
    return [_guard("thmD", f"{xn} x galois_2cat", lambda X=X: thm_d_pair(X, Y))
            for xn, X in (("terminal", chain_2cat(0)), ("poset1_2cat", X1))]


SUITES = {
    "fragments": suite_fragments,
    "filtration": suite_filtration,
    "thmD": suite_thm_d,
    "thmC": suite_thm_c,
    "horns": suite_horns,
}


def run_suite(name: str, catalog: dict, levels=(3, 3)) -> list[Record]:
    if not catalog:
        raise MissingInput("empty fixture catalog")
    names = list(SUITES) if name == "all" else [name]
    out: list[Record] = []
    for n in names:
        out.extend(SUITES[n](catalog, levels))
    return out


def records_json(records: list[Record]) -> list[dict]:
    return [asdict(r) for r in records]


__all__ = ["Record", "MissingInput", "SUITES", "run_suite", "records_json", "thm_c_pair", "thm_d_pair",
           "THM_C_SKIP", "THM_C_SOURCES"]
