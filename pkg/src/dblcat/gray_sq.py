"""Gray grids, globes, and the squares construction on locally posetal 2-categories.

Grid objects are named ``"i,j"`` (column ``i``, row ``j``); a grid 1-cell is a
monotone lattice path written ``"i,j:MOVES"`` with moves ``R`` (right) and
``D`` (down).  In a Gray grid the unit square carries a 2-cell from the path
through its upper-right corner to the path through its lower-left corner.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import Any

from ._util import sortkey
from .bisimplicial import (
    BisimplicialMap, FinBisimplicialSet, DEFAULT_TRUNCATION, dualize, pushout, representable,
    identity_map, inclusion_map,
)
from .double_cat import FinDoubleCategory, FinTwoCategory, InvalidStructure, poset_2cat


# ---------------------------------------------------------------------------
# grids


def _path_name(i, j, moves):
    return f"{i},{j}:{moves}"


def _dcounts(moves: str) -> list[int]:
    out, d = [], 0
    for c in moves:
        d += c == "D"
        out.append(d)
    return out


def gray_grid(n: int, m: int) -> FinTwoCategory:
    """The oplax Gray tensor ``[n] (x) [m]`` as a locally posetal 2-category."""
    objs = [f"{i},{j}" for i in range(n + 1) for j in range(m + 1)]
    one, ids, moves_of = {}, {}, {}
    for i in range(n + 1):
        for j in range(m + 1):
            for k in range(i, n + 1):
                for l in range(j, m + 1):
                    r, d = k - i, l - j
                    for pos in _combos(r + d, d):
                        mv = "".join("D" if t in pos else "R" for t in range(r + d))
                        name = _path_name(i, j, mv)
                        one[name] = (f"{i},{j}", f"{k},{l}")
                        moves_of[name] = (i, j, mv)
            ids[f"{i},{j}"] = _path_name(i, j, "")
    comp = {}
    for f, (a, b) in one.items():
        i, j, mv = moves_of[f]
        for g, (b2, c) in one.items():
            if b2 == b:
                comp[(f, g)] = _path_name(i, j, mv + moves_of[g][2])
    le = []
    for f, st in one.items():
        for g, st2 in one.items():
            if f != g and st == st2:
                pf, pg = _dcounts(moves_of[f][2]), _dcounts(moves_of[g][2])
                if all(y >= x for x, y in zip(pf, pg)):
                    le.append((f, g))
    return FinTwoCategory.posetal(objs, one, ids, comp, le, name=f"[{n}]x[{m}]")


def _combos(k: int, r: int):
    from itertools import combinations
    return [set(c) for c in combinations(range(k), r)]


def globe_grid(n: int, m: int) -> FinTwoCategory:
    """The globular 2-category ``[n; m, ..., m]``: ``hom(i, j) = [m]^(j-i)``."""
    objs = [str(i) for i in range(n + 1)]
    one, ids, val = {}, {}, {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for t in _iproduct(range(m + 1), repeat=j - i):
                name = f"{i}->{j}:" + "".join(map(str, t))
                one[name] = (str(i), str(j))
                val[name] = (i, j, t)
        ids[str(i)] = f"{i}->{i}:"
    comp = {}
    for f, (a, b) in one.items():
        i, _, t = val[f]
        for g, (b2, c) in one.items():
            if b2 == b:
                _, k, u = val[g]
                comp[(f, g)] = f"{i}->{k}:" + "".join(map(str, t + u))
    le = [(f, g) for f in one for g in one
          if f != g and one[f] == one[g] and all(x <= y for x, y in zip(val[f][2], val[g][2]))]
    return FinTwoCategory.posetal(objs, one, ids, comp, le, name=f"[{n};{m}]")


def chain_poset(n: int) -> FinTwoCategory:
    return poset_2cat(list(range(n + 1)), lambda a, b: a <= b, name=f"[{n}]")


def product_poset(n: int, m: int) -> FinTwoCategory:
    els = [f"{i}{j}" for i in range(n + 1) for j in range(m + 1)]
    return poset_2cat(els, lambda a, b: a[0] <= b[0] and a[1] <= b[1], name=f"[{n}]x[{m}]")


# ---------------------------------------------------------------------------
# the squares construction


def _require_posetal(X: FinTwoCategory):
    if not X.locally_posetal:
        raise InvalidStructure("the squares construction needs a locally posetal 2-category")
    bad = X.check_axioms()
    if bad:
        raise InvalidStructure(f"2-category {X.name or '?'} violates {bad[0]}")


def sq_name(t, b, l, r) -> str:
    return f"[{t}|{b}|{l}|{r}]"


def squares_dblcat(X: FinTwoCategory) -> FinDoubleCategory:
    """``Sq(X)``: both arrow directions are the 1-cells of ``X``; a square with
    boundary ``(t, b, l, r)`` exists, uniquely, when ``t;r <= l;b``."""
    _require_posetal(X)
    out_of: dict = {}
    for f in sorted(X.one_cells, key=sortkey):
        out_of.setdefault(X.src(f), []).append(f)
    squares = {}
    for t in sorted(X.one_cells, key=sortkey):
        for l in out_of.get(X.src(t), ()):
            for r in out_of.get(X.tgt(t), ()):
                for b in out_of.get(X.tgt(l), ()):
                    if X.tgt(b) == X.tgt(r) and X.le(X.comp[(t, r)], X.comp[(l, b)]):
                        squares[sq_name(t, b, l, r)] = (t, b, l, r)
    hc, vc = {}, {}
    by_left: dict = {}
    by_top: dict = {}
    for s, (t, b, l, r) in squares.items():
        by_left.setdefault(l, []).append(s)
        by_top.setdefault(t, []).append(s)
    for s, (t, b, l, r) in squares.items():
        for s2 in by_left.get(r, ()):
            t2, b2, _, r2 = squares[s2]
            name = sq_name(X.comp[(t, t2)], X.comp[(b, b2)], l, r2)
            if name not in squares:
                raise InvalidStructure(f"composite of {s} and {s2} is missing")
            hc[(s, s2)] = name
        for s2 in by_top.get(b, ()):
            _, b2, l2, r2 = squares[s2]
            name = sq_name(t, b2, X.comp[(l, l2)], X.comp[(r, r2)])
            if name not in squares:
                raise InvalidStructure(f"composite of {s} over {s2} is missing")
            vc[(s, s2)] = name
    hid = {F: sq_name(F, F, X.ids[X.src(F)], X.ids[X.tgt(F)]) for F in X.one_cells}
    vid = {f: sq_name(X.ids[X.src(f)], X.ids[X.tgt(f)], f, f) for f in X.one_cells}
    return FinDoubleCategory(X.objects, X.one_cells, X.one_cells, squares, X.ids, X.ids,
                             X.comp, X.comp, hc, vc, hid, vid, name=f"Sq({X.name})")


def filler_is_identity(X: FinTwoCategory, D: FinDoubleCategory, s) -> bool:
    """Whether the square ``s`` of ``Sq(X)`` strictly commutes."""
    t, b, l, r = D.squares[s]
    return X.comp[(t, r)] == X.comp[(l, b)]


def gray_functors(X: FinTwoCategory, n: int, m: int, full_check: bool = False) -> list[tuple]:
    """2-functors ``[n] (x) [m] -> X`` for locally posetal ``X``.

    A 2-functor is returned as ``(vertices, h_edges, v_edges)``, rows ``j``
    outermost.  Only unit-square relations are imposed; with ``full_check``
    every 2-cell of the grid is verified as well."""
    _require_posetal(X)
    out_of: dict = {}
    for f in sorted(X.one_cells, key=sortkey):
        out_of.setdefault(X.src(f), []).append(f)
    results = []
    # rows are paths of n horizontal 1-cells, assigned top to bottom
    rows: list = []

    def row_paths(x, k, acc):
        if k == 0:
            rows.append(tuple(acc))
            return
        for F in out_of.get(x, ()):
            row_paths(X.tgt(F), k - 1, acc + [F])

    for x in X.objects:
        row_paths(x, n, [])

    def row_vertices(start, hs):
        v = [start]
        for F in hs:
            v.append(X.tgt(F))
        return tuple(v)

    row_list = []
    for x in X.objects:
        rows.clear()
        row_paths(x, n, [])
        for r in rows:
            row_list.append((row_vertices(x, r), r))

    def verticals(vtop, vbot):
        choices = []
        for a, b in zip(vtop, vbot):
            choices.append([f for f in out_of.get(a, ()) if X.tgt(f) == b])
        return _iproduct(*choices)

    def rec(acc_v, acc_h, acc_vs):
        if len(acc_v) == m + 1:
            cand = (tuple(acc_v), tuple(acc_h), tuple(acc_vs))
            if not full_check or _full_ok(X, cand, n, m):
                results.append(cand)
            return
        vtop, htop = acc_v[-1], acc_h[-1]
        for vbot, hbot in row_list:
            for vs in verticals(vtop, vbot):
                ok = all(X.le(X.comp[(htop[i], vs[i + 1])], X.comp[(vs[i], hbot[i])]) for i in range(n))
                if ok:
                    rec(acc_v + [vbot], acc_h + [hbot], acc_vs + [vs])

    for v0, h0 in row_list:
        rec([v0], [h0], [])
    return results


def _full_ok(X: FinTwoCategory, F, n, m) -> bool:
    verts, hs, vs = F
    G = gray_grid(n, m)

    def image(name):
        i, j, mv = name.split(",")[0], name.split(",")[1].split(":")[0], name.split(":")[1]
        i, j = int(i), int(j)
        acc = X.ids[verts[j][i]]
        for c in mv:
            if c == "R":
                acc = X.comp[(acc, hs[j][i])]
                i += 1
            else:
                acc = X.comp[(acc, vs[j][i])]
                j += 1
        return acc

    for a, (p, q) in G.two_cells.items():
        if not X.le(image(p), image(q)):
            return False
    return True


def gray_functor_to_cell(X: FinTwoCategory, F, n: int, m: int):
    """The nerve cell of ``Sq(X)`` corresponding to a 2-functor out of a grid."""
    verts, hs, vs = F
    sqs = tuple(tuple(sq_name(hs[j][i], hs[j + 1][i], vs[j][i], vs[j][i + 1]) for i in range(n))
                for j in range(m))
    return (tuple(verts), tuple(hs), tuple(vs), sqs)


def sq_nerve(X: FinTwoCategory, N: int = 3, M: int = 3) -> FinBisimplicialSet:
    return squares_dblcat(X).nerve(N, M)


# ---------------------------------------------------------------------------
# globe nerves and the comparison maps


def _globe_levels(X: FinTwoCategory, n: int, m: int):
    """2-functors ``[n; m, ..., m] -> X``: objects ``x_0..x_n`` and, for each
    step, an increasing chain of ``m + 1`` parallel 1-cells."""
    chains: dict = {}

    def chains_for(a, b):
        key = (a, b)
        if key not in chains:
            hom = X.hom(a, b)
            res = []

            def rec(acc):
                if len(acc) == m + 1:
                    res.append(tuple(acc))
                    return
                for g in hom:
                    if not acc or X.le(acc[-1], g):
                        rec(acc + [g])

            rec([])
            chains[key] = res
        return chains[key]

    out = []
    for objs in _iproduct(X.objects, repeat=n + 1):
        parts = [chains_for(objs[i], objs[i + 1]) for i in range(n)]
        for cs in _iproduct(*parts):
            out.append((tuple(objs), tuple(cs)))
    return out


def globe_nerve(X: FinTwoCategory, truncation=DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    """``X_h``: level ``(n, m)`` is the set of 2-functors ``[n; m, ..., m] -> X``."""
    _require_posetal(X)

    def op(kind, i, n, m, cell):
        objs, cs = cell
        if kind == "hf":
            if i == 0:
                return (objs[1:], cs[1:])
            if i == n:
                return (objs[:-1], cs[:-1])
            merged = tuple(X.comp[(a, b)] for a, b in zip(cs[i - 1], cs[i]))
            return (objs[:i] + objs[i + 1:], cs[: i - 1] + (merged,) + cs[i + 1:])
        if kind == "hd":
            idc = tuple(X.ids[objs[i]] for _ in range(m + 1))
            return (objs[: i + 1] + objs[i:], cs[:i] + (idc,) + cs[i:])
        if kind == "vf":
            return (objs, tuple(c[:i] + c[i + 1:] for c in cs))
        return (objs, tuple(c[: i + 1] + c[i:] for c in cs))

    return FinBisimplicialSet(truncation, lambda n, m: _globe_levels(X, n, m), op, name=f"{X.name}_h")


def globe_nerve_v(X: FinTwoCategory, truncation=DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    """``X_v``, the transpose of ``X_h``."""
    return dualize(globe_nerve(X, (truncation[1], truncation[0])), "transpose")


def iota_maps(X: FinTwoCategory, truncation=DEFAULT_TRUNCATION) -> tuple[BisimplicialMap, BisimplicialMap]:
    """``iota_h : X_h -> N(Sq X)`` and ``iota_v : X_v -> N(Sq X)``.

    ``iota_h`` puts chain element ``j`` on every horizontal edge of row ``j``
    and identities vertically; ``iota_v`` puts chain element ``n - i`` on the
    vertical edges of column ``i`` and identities horizontally."""
    N = sq_nerve(X, *truncation)
    Xh = globe_nerve(X, truncation)
    Xv = globe_nerve_v(X, truncation)

    def ih(bd, cell):
        n, m = bd
        objs, cs = cell
        hs = tuple(tuple(cs[i][j] for i in range(n)) for j in range(m + 1))
        vs = tuple(tuple(X.ids[objs[i]] for i in range(n + 1)) for _ in range(m))
        sqs = tuple(tuple(sq_name(cs[i][j], cs[i][j + 1], X.ids[objs[i]], X.ids[objs[i + 1]])
                          for i in range(n)) for j in range(m))
        return (tuple(tuple(objs) for _ in range(m + 1)), hs, vs, sqs)

    def iv(bd, cell):
        n, m = bd
        objs, cs = cell  # objs along the vertical direction, cs[j] has n + 1 entries
        verts = tuple(tuple(objs[j] for _ in range(n + 1)) for j in range(m + 1))
        hs = tuple(tuple(X.ids[objs[j]] for _ in range(n)) for j in range(m + 1))
        vs = tuple(tuple(cs[j][n - i] for i in range(n + 1)) for j in range(m))
        sqs = tuple(tuple(sq_name(X.ids[objs[j]], X.ids[objs[j + 1]], cs[j][n - i], cs[j][n - i - 1])
                          for i in range(n)) for j in range(m))
        return (verts, hs, vs, sqs)

    return BisimplicialMap(Xh, N, ih), BisimplicialMap(Xv, N, iv)


def globe_quotient(n: int, m: int, truncation=DEFAULT_TRUNCATION):
    """``[n, m]`` with each column ``{i} x [m]`` collapsed to a point, as a
    pushout along ``{0..n}_h x [m]_v -> {0..n}_h``.  Returns ``(Q, quotient map)``."""
    R = representable(n, m, truncation)
    cols = R.sub({bd: [c for c in R.level(*bd) if len(set(c[0])) == 1] for bd in R.bidegrees()},
                 name="columns")
    pts = representable(n, 0, truncation).sub(
        {bd: [c for c in representable(n, 0, truncation).level(*bd) if len(set(c[0])) == 1]
         for bd in R.bidegrees()}, name="points")
    to_pts = BisimplicialMap(cols, pts, lambda bd, c: (c[0], tuple(0 for _ in c[1])))
    Q, (iR, _) = pushout(inclusion_map(cols, R), to_pts)
    return Q, iR


__all__ = [
    "gray_grid", "globe_grid", "chain_poset", "product_poset", "squares_dblcat", "sq_name",
    "filler_is_identity", "gray_functors", "gray_functor_to_cell", "sq_nerve", "globe_nerve",
    "globe_nerve_v", "iota_maps", "globe_quotient",
]
