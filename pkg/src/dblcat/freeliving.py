"""The free-living companionship and conjunction, the sigma filtration, and
the extension of a companionship to all staircases.

A staircase at bidegree ``(n, m)`` is a monotone map ``[n] x [m] -> [1]``,
stored as a tuple of ``m + 1`` rows, each a tuple of ``n + 1`` bits; entry
``s[j][i]`` is the value at column ``i`` and row ``j``.  Serialised
row-major as ``"00/01"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ._util import monotone_maps, sortkey
from .bisimplicial import (
    BisimplicialMap, FinBisimplicialSet, DEFAULT_TRUNCATION, count_maps, descend, dualize,
    gamma_l, l_quotient, lower_triangle, pushout, representable,
)
from .double_cat import (
    CompanionshipData, ConjunctionData, FinDoubleCategory, InvalidStructure, cell_of_square,
    hor_inverse, is_companionship, is_conjunction, unit_shaped_squares, counits_for_unit,
)


def staircase_str(s) -> str:
    return "/".join("".join(map(str, row)) for row in s)


def parse_staircase(text: str):
    rows = tuple(tuple(int(c) for c in r) for r in text.split("/"))
    if not is_staircase(rows):
        raise ValueError(f"{text!r} is not a monotone 0/1 matrix")
    return rows


def is_staircase(s) -> bool:
    if not s or any(len(r) != len(s[0]) for r in s):
        return False
    for j, row in enumerate(s):
        for i, v in enumerate(row):
            if v not in (0, 1):
                return False
            if i and row[i - 1] > v:
                return False
            if j and s[j - 1][i] > v:
                return False
    return True


def comp_cells(n: int, m: int) -> list[tuple]:
    """All staircases of bidegree ``(n, m)``, ordered by their bit strings.

    A row is fixed by its number of leading zeros; rows going down can only
    lose zeros."""
    out = []

    def rec(rows, maxz):
        if len(rows) == m + 1:
            out.append(tuple(rows))
            return
        for z in range(maxz, -1, -1):
            rec(rows + [tuple([0] * z + [1] * (n + 1 - z))], z)

    rec([], n + 1)
    return sorted(out, key=staircase_str)


def _stair_op(kind, i, n, m, s):
    if kind == "hf":
        return tuple(r[:i] + r[i + 1:] for r in s)
    if kind == "hd":
        return tuple(r[: i + 1] + r[i:] for r in s)
    if kind == "vf":
        return s[:i] + s[i + 1:]
    return s[: i + 1] + s[i:]


def comp_presheaf(N: int = 3, M: int = 3, which: str = "comp") -> FinBisimplicialSet:
    """``comp`` as a truncated bisimplicial set; ``conj`` is its horizontal opposite."""
    C = FinBisimplicialSet((N, M), comp_cells, _stair_op, name="comp")
    if which == "comp":
        return C
    if which == "conj":
        X = dualize(C, "hop")
        X.name = "conj"
        return X
    raise ValueError("which must be 'comp' or 'conj'")


def sigma(n: int) -> tuple:
    """The ``(n, n)``-staircase that is 0 exactly where ``j <= n - i``."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return tuple(tuple(0 if j <= n - i else 1 for i in range(n + 1)) for j in range(n + 1))


def act(s, alpha, beta) -> tuple:
    """Restrict a staircase along monotone maps: ``(i, j) -> s[beta j][alpha i]``."""
    return tuple(tuple(s[b][a] for a in alpha) for b in beta)


# ---------------------------------------------------------------------------
# filtration


def stage_cells(k: int, truncation=DEFAULT_TRUNCATION) -> dict:
    """Cells of the sub-presheaf generated by ``sigma_1 .. sigma_k``."""
    N, M = truncation
    out = {}
    for a in range(N + 1):
        for b in range(M + 1):
            cells = set()
            for l in range(1, k + 1):
                s = sigma(l)
                for alpha in monotone_maps(a, l):
                    for beta in monotone_maps(b, l):
                        cells.add(act(s, alpha, beta))
            out[(a, b)] = cells
    return out


def _cell_map_from(s, n, m, shape_q: BisimplicialMap, C: FinBisimplicialSet) -> BisimplicialMap:
    """``L[n, m] -> comp`` induced by the ``(n, m)``-staircase ``s``."""
    R = shape_q.source
    yon = BisimplicialMap(R, C, lambda bd, c: act(s, c[0], c[1]))
    return descend(shape_q, yon)


@dataclass
class StageReport:
    k: int
    ok: bool
    detail: str = ""
    sizes: dict = field(default_factory=dict)


@dataclass
class FiltrationReport:
    stages: list
    exhausts: bool
    base_ok: bool

    @property
    def ok(self) -> bool:
        return self.base_ok and self.exhausts and all(s.ok for s in self.stages)

    def failures(self) -> list[str]:
        out = []
        if not self.base_ok:
            out.append("S_1 differs from the image of L")
        out += [f"stage {s.k}: {s.detail}" for s in self.stages if not s.ok]
        if not self.exhausts:
            out.append("the stages do not exhaust comp")
        return out


def verify_filtration(N: int, truncation=DEFAULT_TRUNCATION) -> FiltrationReport:
    """Check that each stage arises from the previous one by two pushouts.

    Stage ``k + 1`` is obtained from stage ``k`` by gluing ``L[k, k+1]`` along
    ``Gamma^0_L[k, k+1]`` (attached by ``sigma_{k+1}`` with column 0 deleted)
    and then ``L[k+1, k+1]`` along ``Gamma^0_L[k+1, k+1]`` (attached by
    ``sigma_{k+1}``).  Each pushout must map injectively onto the expected
    sub-presheaf of comp."""
    if N < 1:
        raise ValueError("N must be at least 1")
    C = comp_presheaf(*truncation)
    Lsh = lower_triangle(truncation)
    Lmap = _cell_map_from(sigma(1), 1, 1, Lsh.quotient, C)
    stage = {k: stage_cells(k, truncation) for k in range(1, N + 1)}
    base_ok = Lmap.is_injective() and Lmap.is_valid() and \
        all(Lmap.image()[bd] == stage[1][bd] for bd in C.bidegrees())
    stages = []
    for k in range(1, N):
        Sk = C.sub(stage[k], name=f"S_{k}")
        s_next = sigma(k + 1)
        tau = tuple(r[1:] for r in s_next)
        try:
            # first gluing
            G1 = gamma_l((0,), k, k + 1, truncation)
            L1 = l_quotient(k, k + 1, truncation)
            L1map = _cell_map_from(tau, k, k + 1, L1.quotient, C)
            g1c = G1.inclusion.then(L1map)
            if any(not g1c.image()[bd] <= stage[k][bd] for bd in C.bidegrees()):
                stages.append(StageReport(k, False, "first attaching map leaves S_k"))
                continue
            g1 = BisimplicialMap(G1.obj, Sk, g1c.components)
            P1, _ = pushout(G1.inclusion, g1)
            h1 = BisimplicialMap(P1, C, lambda bd, c: L1map(bd, c[1]) if c[0] == 0 else c[1])
            if not h1.is_valid() or not h1.is_injective():
                stages.append(StageReport(k, False, "first pushout does not embed in comp"))
                continue
            # second gluing
            G2 = gamma_l((0,), k + 1, k + 1, truncation)
            L2 = l_quotient(k + 1, k + 1, truncation)
            L2map = _cell_map_from(s_next, k + 1, k + 1, L2.quotient, C)
            g2c = G2.inclusion.then(L2map)
            inv = {bd: {v: c for c, v in h1.components[bd].items()} for bd in C.bidegrees()}
            if any(v not in inv[bd] for bd in C.bidegrees() for v in g2c.components[bd].values()):
                stages.append(StageReport(k, False, "second attaching map leaves the first pushout"))
                continue
            g2 = BisimplicialMap(G2.obj, P1, lambda bd, c: inv[bd][g2c.components[bd][c]])
            P2, _ = pushout(G2.inclusion, g2)
            h2 = BisimplicialMap(P2, C, lambda bd, c: L2map(bd, c[1]) if c[0] == 0 else h1(bd, c[1]))
            if not h2.is_valid() or not h2.is_injective():
                stages.append(StageReport(k, False, "second pushout does not embed in comp"))
                continue
            img = h2.image()
            if any(img[bd] != stage[k + 1][bd] for bd in C.bidegrees()):
                stages.append(StageReport(k, False, "image differs from S_{k+1}"))
                continue
            stages.append(StageReport(k, True, "", {"P1": sum(P1.counts().values()),
                                                     "P2": sum(P2.counts().values())}))
        except (ValueError, KeyError) as e:
            stages.append(StageReport(k, False, f"construction failed: {e}"))
    exhausts = all(stage[N][bd] == set(C.level(*bd)) for bd in C.bidegrees())
    return FiltrationReport(stages, exhausts, base_ok)


# ---------------------------------------------------------------------------
# extension


def _corner_square(D: FinDoubleCategory, f, F, unit, counit, x, y, corners):
    table = {
        ((0, 0), (0, 0)): D.vid_sq[D.v_id[x]],
        ((1, 1), (1, 1)): D.vid_sq[D.v_id[y]],
        ((0, 0), (0, 1)): unit,
        ((0, 1), (1, 1)): counit,
        ((0, 0), (1, 1)): D.vid_sq[f],
        ((0, 1), (0, 1)): D.hid_sq[F],
    }
    return table[corners]


def _grid_from_bits(D: FinDoubleCategory, s, f, F, unit, counit, hbits, sqcorner):
    x, y = D.v_arrows[f]
    obj = (x, y)
    m1, n1 = len(s), len(s[0])
    objs = tuple(tuple(obj[v] for v in row) for row in s)
    hs = tuple(tuple(hbits[(row[i], row[i + 1])] for i in range(n1 - 1)) for row in s)
    vmap = {(0, 0): D.v_id[x], (1, 1): D.v_id[y], (0, 1): f}
    vs = tuple(tuple(vmap[(s[j][i], s[j + 1][i])] for i in range(n1)) for j in range(m1 - 1))
    sqs = tuple(tuple(sqcorner[((s[j][i], s[j][i + 1]), (s[j + 1][i], s[j + 1][i + 1]))]
                      for i in range(n1 - 1)) for j in range(m1 - 1))
    return (objs, hs, vs, sqs)


def extension_cell(D: FinDoubleCategory, data: CompanionshipData, s):
    """Nerve cell assigned to the staircase ``s`` by corner substitution."""
    x, y = D.v_arrows[data.f]
    hbits = {(0, 0): D.h_id[x], (1, 1): D.h_id[y], (0, 1): data.F}
    corners = {}
    for top in ((0, 0), (0, 1), (1, 1)):
        for bot in ((0, 0), (0, 1), (1, 1)):
            if top[0] <= bot[0] and top[1] <= bot[1]:
                corners[(top, bot)] = _corner_square(D, data.f, data.F, data.unit, data.counit, x, y, (top, bot))
    return _grid_from_bits(D, s, data.f, data.F, data.unit, data.counit, hbits, corners)


def extend_companionship(D: FinDoubleCategory, data: CompanionshipData, N: int = 3, M: int = 3) -> BisimplicialMap:
    """The map ``comp -> N(D)`` sending each staircase to the grid whose unit
    squares are read off from its corner patterns."""
    D.ensure_valid()
    if not is_companionship(D, data.f, data.F, data.unit, data.counit):
        raise InvalidStructure("companionship data fail the triangle identities")
    C = comp_presheaf(N, M)
    return BisimplicialMap(C, D.nerve(N, M), lambda bd, s: extension_cell(D, data, s))


def conjunction_cell(D: FinDoubleCategory, data: ConjunctionData, s):
    x, y = D.v_arrows[data.f]
    r = tuple(tuple(reversed(row)) for row in s)
    hbits = {(0, 0): D.h_id[x], (1, 1): D.h_id[y], (1, 0): data.Fprime}
    corners = {
        ((0, 0), (0, 0)): D.vid_sq[D.v_id[x]],
        ((1, 1), (1, 1)): D.vid_sq[D.v_id[y]],
        ((0, 0), (1, 0)): data.unit,
        ((1, 0), (1, 1)): data.counit,
        ((0, 0), (1, 1)): D.vid_sq[data.f],
        ((1, 0), (1, 0)): D.hid_sq[data.Fprime],
    }
    return _grid_from_bits(D, r, data.f, data.Fprime, data.unit, data.counit, hbits, corners)


def extend_conjunction(D: FinDoubleCategory, data: ConjunctionData, N: int = 3, M: int = 3) -> BisimplicialMap:
    """The map ``conj -> N(D)``; column ``i`` of the grid is column ``n - i``
    of the staircase."""
    D.ensure_valid()
    if not is_conjunction(D, data.f, data.Fprime, data.unit, data.counit):
        raise InvalidStructure("conjunction data fail the triangle identities")
    C = comp_presheaf(N, M, "conj")
    return BisimplicialMap(C, D.nerve(N, M), lambda bd, s: conjunction_cell(D, data, s))


def hop_cell(cell):
    """Reverse the column order of a nerve cell (nerve of ``D^hop`` to nerve of ``D``)."""
    objs, hs, vs, sqs = cell
    rev = lambda rows: tuple(tuple(reversed(r)) for r in rows)
    return (rev(objs), rev(hs), rev(vs), rev(sqs))


def transported_conjunction(D: FinDoubleCategory, data: ConjunctionData, N: int = 3, M: int = 3) -> BisimplicialMap:
    """``conj -> N(D)`` obtained from the companionship extension in ``D^hop``."""
    Dh = D.hop()
    cd = CompanionshipData(data.f, data.Fprime, data.unit, data.counit)
    ext = extend_companionship(Dh, cd, N, M)
    C = comp_presheaf(N, M, "conj")
    return BisimplicialMap(C, D.nerve(N, M), lambda bd, s: hop_cell(ext(bd, s)))


def count_extensions(D: FinDoubleCategory, unit, N: int = 3, M: int = 3, budget: int | None = None) -> int:
    """Brute-force number of maps ``comp -> N(D)`` sending ``sigma_1`` to ``unit``."""
    D.ensure_valid()
    t, b, l, r = D.squares[unit]
    x = D.hsrc(t)
    if t != D.h_id[x] or l != D.v_id[x] or D.h_arrows[b] != D.v_arrows[r]:
        raise ValueError(f"square {unit!r} does not have the boundary of a companionship unit")
    C = comp_presheaf(N, M)
    fixed = {((1, 1), sigma(1)): cell_of_square(D, unit)}
    return count_maps(C, D.nerve(N, M), fixed=fixed, budget=budget)


def unit_classes(D: FinDoubleCategory, f) -> list[list]:
    """Genuine companionship units with right edge ``f``, grouped by the
    relation ``eta ~ eta'`` iff ``eta`` over an invertible horizontal 2-cell is ``eta'``."""
    units = [u for u in unit_shaped_squares(D) if D.squares[u][3] == f and counits_for_unit(D, u)]
    classes: list[list] = []
    for u in units:
        for cl in classes:
            v = cl[0]
            Fu, Fv = D.squares[u][1], D.squares[v][1]
            x, y = D.v_arrows[f]
            if any(D.sq_vcomp.get((v, th)) == u and hor_inverse(D, th) is not None
                   for th in D.squares_with(Fv, Fu, D.v_id[x], D.v_id[y])):
                cl.append(u)
                break
        else:
            classes.append([u])
    return classes


__all__ = [
    "comp_cells", "comp_presheaf", "sigma", "act", "stage_cells", "verify_filtration",
    "extend_companionship", "extend_conjunction", "transported_conjunction", "count_extensions",
    "extension_cell", "conjunction_cell", "hop_cell", "unit_classes", "staircase_str",
    "parse_staircase", "is_staircase", "FiltrationReport", "StageReport",
]
