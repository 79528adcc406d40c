"""Fixture catalog: builders for every shipped instance and JSON I/O."""

from __future__ import annotations

import json
from pathlib import Path

from .double_cat import (
    FinDoubleCategory, FinTwoCategory, grid_dblcat, load_structure, terminal_dblcat,
)
from .gray_sq import chain_poset, product_poset, squares_dblcat


def galois_2cat() -> FinTwoCategory:
    """Two objects ``P`` (the chain [1]) and ``Q`` (a point) inside posets:
    ``u : P -> Q`` is left adjoint to ``v : Q -> P`` picking the top element.
    ``c = u;v`` is the constant endomap of ``P`` and ``id_P <= c``."""
    one = {"id_P": ("P", "P"), "c": ("P", "P"), "u": ("P", "Q"), "v": ("Q", "P"), "id_Q": ("Q", "Q")}
    ids = {"P": "id_P", "Q": "id_Q"}
    comp = {}
    for f, (a, b) in one.items():
        if a == b:
            comp[(ids[a], f)] = f
        comp[(f, ids[b])] = f
        comp[(ids[a], f)] = f
    comp.update({("c", "c"): "c", ("c", "u"): "u", ("u", "v"): "c", ("v", "c"): "v", ("v", "u"): "id_Q"})
    return FinTwoCategory.posetal(["P", "Q"], one, ids, comp, [("id_P", "c")], name="galois")


def broken_interchange() -> FinDoubleCategory:
    """One object, identity arrows, squares ``e, a, b``.  Horizontally the
    squares form a left-zero band with unit ``e``, vertically a right-zero
    band with unit ``e``; everything holds except interchange."""
    sq = ["e", "a", "b"]
    hc = {(x, y): (y if x == "e" else x) for x in sq for y in sq}
    vc = {(x, y): (x if y == "e" else y) for x in sq for y in sq}
    return FinDoubleCategory(
        ["*"], {"1": ("*", "*")}, {"1": ("*", "*")}, {s: ("1", "1", "1", "1") for s in sq},
        {"*": "1"}, {"*": "1"}, {("1", "1"): "1"}, {("1", "1"): "1"}, hc, vc, {"1": "e"}, {"1": "e"},
        name="broken_interchange")


def two_categories() -> dict[str, FinTwoCategory]:
    return {
        "poset1_2cat": chain_poset(1),
        "poset2_2cat": chain_poset(2),
        "poset11_2cat": product_poset(1, 1),
        "galois_2cat": galois_2cat(),
    }


def double_categories() -> dict[str, FinDoubleCategory]:
    t = two_categories()
    out = {
        "terminal": terminal_dblcat(),
        "free_vertical_arrow": grid_dblcat(0, 1),
        "free_square": grid_dblcat(1, 1),
        "sq_poset1": squares_dblcat(t["poset1_2cat"]),
        "sq_poset2": squares_dblcat(t["poset2_2cat"]),
        "sq_poset11": squares_dblcat(t["poset11_2cat"]),
        "sq_galois": squares_dblcat(t["galois_2cat"]),
    }
    for k, D in out.items():
        D.name = k
    return out


NEGATIVE = {"broken_interchange": broken_interchange}


def write_fixtures(directory: str | Path) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    items = {**two_categories(), **double_categories(), **{k: f() for k, f in NEGATIVE.items()}}
    for name, obj in sorted(items.items()):
        obj.name = name
        p = d / f"{name}.json"
        p.write_text(obj.dumps() + "\n")
        written.append(p)
    return written


def load_file(path: str | Path):
    with open(path) as fh:
        data = json.load(fh)
    return load_structure(data)


def load_catalog(directory: str | Path) -> dict:
    """All structures in a fixture directory, keyed by file stem."""
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"fixture directory {d} not found")
    return {p.stem: load_file(p) for p in sorted(d.glob("*.json"))}


__all__ = ["galois_2cat", "broken_interchange", "two_categories", "double_categories",
           "write_fixtures", "load_file", "load_catalog", "NEGATIVE"]
