"""Finite strict double categories and 2-categories.

Conventions
-----------
* Composition is written in diagrammatic order: ``hcomp(F, G)`` is ``F``
  followed by ``G``.
* A square has a boundary ``(top, bottom, left, right)``.  Horizontally it
  composes along a shared vertical edge (``sq_hcomp(a, b)``, ``a`` on the
  left), vertically along a shared horizontal edge (``sq_vcomp(a, b)``, ``a``
  on top).  Its 2-cell points from top to bottom.
* ``hid_sq[F]`` is the identity square on a horizontal arrow ``F`` (top and
  bottom ``F``), the unit for vertical composition.  ``vid_sq[f]`` is the
  identity square on a vertical arrow ``f`` (left and right ``f``), the unit
  for horizontal composition.
* ``Hor(D)`` has the horizontal arrows as 1-cells and the squares with
  identity sides as 2-cells ``top => bottom``.  ``Vert(D)`` has the vertical
  arrows as 1-cells and the squares with identity top and bottom as 2-cells
  ``right => left``; its 2-cells compose by horizontal square composition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as _iproduct
from typing import Any, Iterable, Mapping, Sequence

from ._util import BudgetExceeded, default_budget, sortkey
from .bisimplicial import FinBisimplicialSet, DEFAULT_TRUNCATION, representable


class InvalidStructure(ValueError):
    """Raised when an operation needs a valid structure and gets an invalid one."""


@dataclass(frozen=True)
class Violation:
    identity: str
    witnesses: tuple

    def __str__(self) -> str:
        return f"{self.identity}: {', '.join(map(str, self.witnesses))}"


def _triples(table: Mapping[tuple, Any]) -> list[list]:
    return sorted(([a, b, c] for (a, b), c in table.items()), key=sortkey)


def _untriple(rows) -> dict:
    return {(a, b): c for a, b, c in rows}


# ---------------------------------------------------------------------------
# 2-categories


class FinTwoCategory:
    """Finite strict 2-category given by composition tables.

    ``comp`` composes 1-cells, ``vcomp2`` composes 2-cells along a 1-cell and
    ``hcomp2`` along an object (whiskering is ``hcomp2`` with an identity)."""

    def __init__(self, objects, one_cells: Mapping, ids: Mapping, comp: Mapping,
                 two_cells: Mapping, id2: Mapping, vcomp2: Mapping, hcomp2: Mapping,
                 locally_posetal: bool = False, name: str = ""):
        self.objects = tuple(sorted(objects, key=sortkey))
        self.one_cells = {k: tuple(v) for k, v in one_cells.items()}
        self.ids = dict(ids)
        self.comp = dict(comp)
        self.two_cells = {k: tuple(v) for k, v in two_cells.items()}
        self.id2 = dict(id2)
        self.vcomp2 = dict(vcomp2)
        self.hcomp2 = dict(hcomp2)
        self.locally_posetal = bool(locally_posetal)
        self.name = name
        self._by_pair: dict | None = None
        self._posetal_compact = False

    # -- construction --------------------------------------------------
    @classmethod
    def posetal(cls, objects, one_cells: Mapping, ids: Mapping, comp: Mapping,
                le: Iterable[tuple[str, str]], name: str = "") -> "FinTwoCategory":
        """Locally posetal 2-category from its hom orders; ``le`` is closed
        reflexively here, the caller supplies transitivity."""
        rel = set(tuple(p) for p in le) | {(f, f) for f in one_cells}
        two = {f"{f}=>{g}": (f, g) for f, g in rel}
        cid = {(f, g): f"{f}=>{g}" for f, g in rel}
        id2 = {f: cid[(f, f)] for f in one_cells}
        vc, hc = {}, {}
        for (f, g) in rel:
            for (g2, h) in rel:
                if g2 == g and (f, h) in rel:
                    vc[(cid[(f, g)], cid[(g, h)])] = cid[(f, h)]
        for (f, g) in rel:
            for (f2, g2) in rel:
                if one_cells[f][1] == one_cells[f2][0]:
                    a, b = comp[(f, f2)], comp[(g, g2)]
                    if (a, b) in cid:
                        hc[(cid[(f, g)], cid[(f2, g2)])] = cid[(a, b)]
        K = cls(objects, one_cells, ids, comp, two, id2, vc, hc, locally_posetal=True, name=name)
        K._posetal_compact = True
        return K

    # -- queries --------------------------------------------------------
    def src(self, f):
        return self.one_cells[f][0]

    def tgt(self, f):
        return self.one_cells[f][1]

    def hom(self, a, b) -> list:
        return sorted((f for f, (s, t) in self.one_cells.items() if s == a and t == b), key=sortkey)

    def cells2(self, f, g) -> list:
        if self._by_pair is None:
            d: dict = {}
            for c, (s, t) in self.two_cells.items():
                d.setdefault((s, t), []).append(c)
            for v in d.values():
                v.sort(key=sortkey)
            self._by_pair = d
        return self._by_pair.get((f, g), [])

    def le(self, f, g) -> bool:
        return bool(self.cells2(f, g))

    def is_invertible2(self, a) -> Any:
        """Return an inverse of the 2-cell ``a`` or ``None``."""
        s, t = self.two_cells[a]
        for b in self.cells2(t, s):
            if self.vcomp2.get((a, b)) == self.id2[s] and self.vcomp2.get((b, a)) == self.id2[t]:
                return b
        return None

    def whisker_left(self, f, a):
        """``f`` followed by the 2-cell ``a``."""
        return self.hcomp2[(self.id2[f], a)]

    def whisker_right(self, a, f):
        return self.hcomp2[(a, self.id2[f])]

    # -- axioms ---------------------------------------------------------
    def check_axioms(self, first_only: bool = True) -> list[Violation]:
        out: list[Violation] = []

        def bad(identity, *w):
            out.append(Violation(identity, tuple(w)))
            return first_only

        obs = set(self.objects)
        for f, (s, t) in self.one_cells.items():
            if s not in obs or t not in obs:
                if bad("1-cell endpoints", f):
                    return out
        for x in self.objects:
            i = self.ids.get(x)
            if i is None or self.one_cells.get(i) != (x, x):
                if bad("identity 1-cell", x):
                    return out
        cells = sorted(self.one_cells, key=sortkey)
        for f in cells:
            for g in cells:
                if self.tgt(f) != self.src(g):
                    continue
                h = self.comp.get((f, g))
                if h is None or self.one_cells.get(h) != (self.src(f), self.tgt(g)):
                    if bad("1-cell composite", f, g):
                        return out
        for f in cells:
            if self.comp.get((self.ids[self.src(f)], f)) != f or self.comp.get((f, self.ids[self.tgt(f)])) != f:
                if bad("1-cell unit law", f):
                    return out
        for f in cells:
            for g in cells:
                if self.tgt(f) != self.src(g):
                    continue
                for h in cells:
                    if self.tgt(g) != self.src(h):
                        continue
                    if self.comp[(self.comp[(f, g)], h)] != self.comp[(f, self.comp[(g, h)])]:
                        if bad("1-cell associativity", f, g, h):
                            return out
        twos = sorted(self.two_cells, key=sortkey)
        for a in twos:
            s, t = self.two_cells[a]
            if s not in self.one_cells or t not in self.one_cells or self.one_cells[s] != self.one_cells[t]:
                if bad("2-cell boundary", a):
                    return out
        for f in cells:
            i = self.id2.get(f)
            if i is None or self.two_cells.get(i) != (f, f):
                if bad("identity 2-cell", f):
                    return out
        for a in twos:
            sa, ta = self.two_cells[a]
            if self.vcomp2.get((self.id2[sa], a)) != a or self.vcomp2.get((a, self.id2[ta])) != a:
                if bad("2-cell vertical unit law", a):
                    return out
            for b in twos:
                sb, tb = self.two_cells[b]
                if ta == sb:
                    c = self.vcomp2.get((a, b))
                    if c is None or self.two_cells.get(c) != (sa, tb):
                        if bad("2-cell vertical composite", a, b):
                            return out
                if self.tgt(sa) == self.src(sb):
                    c = self.hcomp2.get((a, b))
                    if c is None or self.two_cells.get(c) != (self.comp[(sa, sb)], self.comp[(ta, tb)]):
                        if bad("2-cell horizontal composite", a, b):
                            return out
        for f in cells:
            for g in cells:
                if self.tgt(f) == self.src(g):
                    if self.hcomp2[(self.id2[f], self.id2[g])] != self.id2[self.comp[(f, g)]]:
                        if bad("horizontal composite of identity 2-cells", f, g):
                            return out
        for a in twos:
            s, t = self.two_cells[a]
            ia, ib = self.id2[self.ids[self.src(s)]], self.id2[self.ids[self.tgt(s)]]
            if self.hcomp2[(ia, a)] != a or self.hcomp2[(a, ib)] != a:
                if bad("2-cell horizontal unit law", a):
                    return out
        vpairs = [(a, b) for (a, b) in self.vcomp2]
        for a in twos:
            for b in twos:
                if self.two_cells[a][1] != self.two_cells[b][0]:
                    continue
                for c in twos:
                    if self.two_cells[b][1] != self.two_cells[c][0]:
                        continue
                    if self.vcomp2[(self.vcomp2[(a, b)], c)] != self.vcomp2[(a, self.vcomp2[(b, c)])]:
                        if bad("2-cell vertical associativity", a, b, c):
                            return out
        hkeys = list(self.hcomp2)
        for (a, b) in hkeys:
            for c in twos:
                if self.tgt(self.two_cells[b][0]) != self.src(self.two_cells[c][0]):
                    continue
                if self.hcomp2[(self.hcomp2[(a, b)], c)] != self.hcomp2[(a, self.hcomp2[(b, c)])]:
                    if bad("2-cell horizontal associativity", a, b, c):
                        return out
        # interchange
        for (a, b) in vpairs:
            for (c, d) in vpairs:
                if (a, c) in self.hcomp2 and (b, d) in self.hcomp2:
                    lhs = self.hcomp2[(self.vcomp2[(a, b)], self.vcomp2[(c, d)])]
                    rhs = self.vcomp2[(self.hcomp2[(a, c)], self.hcomp2[(b, d)])]
                    if lhs != rhs:
                        if bad("2-cell interchange", a, b, c, d):
                            return out
        if self.locally_posetal:
            for f in cells:
                for g in cells:
                    if len(self.cells2(f, g)) > 1:
                        if bad("locally posetal: parallel 2-cells", f, g):
                            return out
                    if f != g and self.cells2(f, g) and self.cells2(g, f):
                        if bad("locally posetal: antisymmetry", f, g):
                            return out
        return out

    def is_valid(self) -> bool:
        return not self.check_axioms()

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        base = {
            "kind": "two_category",
            "name": self.name,
            "objects": list(self.objects),
            "one_cells": {k: list(v) for k, v in sorted(self.one_cells.items())},
            "ids": dict(sorted(self.ids.items())),
            "comp": _triples(self.comp),
            "locally_posetal": self.locally_posetal,
        }
        if self._posetal_compact:
            base["le"] = sorted([list(v) for v in self.two_cells.values() if v[0] != v[1]])
        else:
            base.update({
                "two_cells": {k: list(v) for k, v in sorted(self.two_cells.items())},
                "id2": dict(sorted(self.id2.items())),
                "vcomp2": _triples(self.vcomp2),
                "hcomp2": _triples(self.hcomp2),
            })
        return base

    @classmethod
    def from_json(cls, data: Mapping) -> "FinTwoCategory":
        one = {k: tuple(v) for k, v in data["one_cells"].items()}
        comp = _untriple(data["comp"])
        if "le" in data:
            return cls.posetal(data["objects"], one, data["ids"], comp,
                               [tuple(p) for p in data["le"]], name=data.get("name", ""))
        return cls(data["objects"], one, data["ids"], comp,
                   {k: tuple(v) for k, v in data["two_cells"].items()}, data["id2"],
                   _untriple(data["vcomp2"]), _untriple(data["hcomp2"]),
                   locally_posetal=data.get("locally_posetal", False), name=data.get("name", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def __repr__(self):
        return f"FinTwoCategory({self.name or '?'}: {len(self.objects)} objects, " \
               f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)"


def poset_2cat(elements: Sequence, leq, name: str = "") -> FinTwoCategory:
    """A poset as a locally discrete 2-category; 1-cells are named ``a->b``."""
    els = [str(e) for e in elements]
    raw = {str(e): e for e in elements}
    one = {}
    ids = {}
    for a in els:
        for b in els:
            if leq(raw[a], raw[b]):
                one[f"{a}->{b}"] = (a, b)
        ids[a] = f"{a}->{a}"
    comp = {}
    for f, (a, b) in one.items():
        for g, (b2, c) in one.items():
            if b == b2:
                comp[(f, g)] = f"{a}->{c}"
    return FinTwoCategory.posetal(els, one, ids, comp, [], name=name)


def chain_2cat(n: int) -> FinTwoCategory:
    """The poset ``[n]`` as a 2-category."""
    return poset_2cat(list(range(n + 1)), lambda a, b: a <= b, name=f"[{n}]")


def find_adjunctions(K: FinTwoCategory, u) -> list[tuple[Any, Any, Any]]:
    """All ``(v, unit, counit)`` with ``u -| v``, triangle identities checked."""
    a, b = K.src(u), K.tgt(u)
    out = []
    for v in K.hom(b, a):
        uv, vu = K.comp[(u, v)], K.comp[(v, u)]
        for eta in K.cells2(K.ids[a], uv):
            for eps in K.cells2(vu, K.ids[b]):
                t1 = K.vcomp2[(K.hcomp2[(eta, K.id2[u])], K.hcomp2[(K.id2[u], eps)])]
                t2 = K.vcomp2[(K.hcomp2[(K.id2[v], eta)], K.hcomp2[(eps, K.id2[v])])]
                if t1 == K.id2[u] and t2 == K.id2[v]:
                    out.append((v, eta, eps))
    return out


def left_adjoints(K: FinTwoCategory, v) -> list[tuple[Any, Any, Any]]:
    """All ``(u, unit, counit)`` with ``u -| v``."""
    out = []
    for u in K.hom(K.tgt(v), K.src(v)):
        for (w, eta, eps) in find_adjunctions(K, u):
            if w == v:
                out.append((u, eta, eps))
    return out


def two_cat_isomorphic_on_cells(K1: FinTwoCategory, K2: FinTwoCategory) -> bool:
    """Same objects and 1-cells (with composition) and, for locally posetal
    ``K2``, the same hom order; an isomorphism that is the identity on 1-cells."""
    if set(K1.objects) != set(K2.objects) or K1.one_cells != K2.one_cells:
        return False
    if K1.ids != K2.ids or K1.comp != K2.comp:
        return False
    for f in K1.one_cells:
        for g in K1.one_cells:
            if K1.one_cells[f] != K1.one_cells[g]:
                continue
            if len(K1.cells2(f, g)) != len(K2.cells2(f, g)):
                return False
    return True


# ---------------------------------------------------------------------------
# double categories


@dataclass(frozen=True)
class SquareCell:
    id: Any
    top: Any
    bottom: Any
    left: Any
    right: Any


class FinDoubleCategory:
    """Finite strict double category given by total composition tables."""

    def __init__(self, objects, h_arrows: Mapping, v_arrows: Mapping, squares: Mapping,
                 h_id: Mapping, v_id: Mapping, h_comp: Mapping, v_comp: Mapping,
                 sq_hcomp: Mapping, sq_vcomp: Mapping, hid_sq: Mapping, vid_sq: Mapping,
                 name: str = ""):
        self.objects = tuple(sorted(objects, key=sortkey))
        self.h_arrows = {k: tuple(v) for k, v in h_arrows.items()}
        self.v_arrows = {k: tuple(v) for k, v in v_arrows.items()}
        self.squares = {k: tuple(v) for k, v in squares.items()}
        self.h_id = dict(h_id)
        self.v_id = dict(v_id)
        self.h_comp = dict(h_comp)
        self.v_comp = dict(v_comp)
        self.sq_hcomp = dict(sq_hcomp)
        self.sq_vcomp = dict(sq_vcomp)
        self.hid_sq = dict(hid_sq)
        self.vid_sq = dict(vid_sq)
        self.name = name
        self._bnd_index: dict | None = None
        self._valid: bool | None = None
        self._nerves: dict = {}

    # -- queries --------------------------------------------------------
    def square(self, s) -> SquareCell:
        t, b, l, r = self.squares[s]
        return SquareCell(s, t, b, l, r)

    def boundary(self, s) -> tuple:
        return self.squares[s]

    def squares_with(self, top=None, bottom=None, left=None, right=None) -> list:
        if self._bnd_index is None:
            d: dict = {}
            for s, bnd in self.squares.items():
                d.setdefault(bnd, []).append(s)
            for v in d.values():
                v.sort(key=sortkey)
            self._bnd_index = d
        if None not in (top, bottom, left, right):
            return list(self._bnd_index.get((top, bottom, left, right), ()))
        out = []
        for s in sorted(self.squares, key=sortkey):
            t, b, l, r = self.squares[s]
            if ((top is None or t == top) and (bottom is None or b == bottom)
                    and (left is None or l == left) and (right is None or r == right)):
                out.append(s)
        return out

    def hsrc(self, F):
        return self.h_arrows[F][0]

    def htgt(self, F):
        return self.h_arrows[F][1]

    def vsrc(self, f):
        return self.v_arrows[f][0]

    def vtgt(self, f):
        return self.v_arrows[f][1]

    def h_hom(self, a, b) -> list:
        return sorted((F for F, st in self.h_arrows.items() if st == (a, b)), key=sortkey)

    def v_hom(self, a, b) -> list:
        return sorted((f for f, st in self.v_arrows.items() if st == (a, b)), key=sortkey)

    # -- axioms ---------------------------------------------------------
    def check_axioms(self, first_only: bool = True) -> list[Violation]:
        out: list[Violation] = []

        def bad(identity, *w):
            out.append(Violation(identity, tuple(w)))
            return first_only

        obs = set(self.objects)
        for kind, arrows, ids, comp in (("horizontal", self.h_arrows, self.h_id, self.h_comp),
                                         ("vertical", self.v_arrows, self.v_id, self.v_comp)):
            for f, (s, t) in arrows.items():
                if s not in obs or t not in obs:
                    if bad(f"{kind} arrow endpoints", f):
                        return out
            for x in self.objects:
                if arrows.get(ids.get(x)) != (x, x):
                    if bad(f"{kind} identity", x):
                        return out
            names = sorted(arrows, key=sortkey)
            for f in names:
                for g in names:
                    if arrows[f][1] != arrows[g][0]:
                        continue
                    h = comp.get((f, g))
                    if h is None or arrows.get(h) != (arrows[f][0], arrows[g][1]):
                        if bad(f"{kind} composite", f, g):
                            return out
            for f in names:
                s, t = arrows[f]
                if comp.get((ids[s], f)) != f or comp.get((f, ids[t])) != f:
                    if bad(f"{kind} unit law", f):
                        return out
            for f in names:
                for g in names:
                    if arrows[f][1] != arrows[g][0]:
                        continue
                    for h in names:
                        if arrows[g][1] != arrows[h][0]:
                            continue
                        if comp[(comp[(f, g)], h)] != comp[(f, comp[(g, h)])]:
                            if bad(f"{kind} associativity", f, g, h):
                                return out
        sqs = sorted(self.squares, key=sortkey)
        for s in sqs:
            t, b, l, r = self.squares[s]
            if not (t in self.h_arrows and b in self.h_arrows and l in self.v_arrows and r in self.v_arrows):
                if bad("square boundary arrows", s):
                    return out
                continue
            if (self.hsrc(t) != self.vsrc(l) or self.htgt(t) != self.vsrc(r)
                    or self.hsrc(b) != self.vtgt(l) or self.htgt(b) != self.vtgt(r)):
                if bad("square boundary corners", s):
                    return out
        for F in sorted(self.h_arrows, key=sortkey):
            s = self.hid_sq.get(F)
            if s is None or self.squares.get(s) != (F, F, self.v_id[self.hsrc(F)], self.v_id[self.htgt(F)]):
                if bad("horizontal identity square boundary", F):
                    return out
        for f in sorted(self.v_arrows, key=sortkey):
            s = self.vid_sq.get(f)
            if s is None or self.squares.get(s) != (self.h_id[self.vsrc(f)], self.h_id[self.vtgt(f)], f, f):
                if bad("vertical identity square boundary", f):
                    return out
        for x in self.objects:
            if self.hid_sq[self.h_id[x]] != self.vid_sq[self.v_id[x]]:
                if bad("identity square on an object", x):
                    return out
        for F in self.h_arrows:
            for G in self.h_arrows:
                if self.htgt(F) == self.hsrc(G):
                    if self.sq_hcomp.get((self.hid_sq[F], self.hid_sq[G])) != self.hid_sq[self.h_comp[(F, G)]]:
                        if bad("identity squares compose horizontally", F, G):
                            return out
        for f in self.v_arrows:
            for g in self.v_arrows:
                if self.vtgt(f) == self.vsrc(g):
                    if self.sq_vcomp.get((self.vid_sq[f], self.vid_sq[g])) != self.vid_sq[self.v_comp[(f, g)]]:
                        if bad("identity squares compose vertically", f, g):
                            return out
        by_left: dict = {}
        by_top: dict = {}
        for s in sqs:
            by_left.setdefault(self.squares[s][2], []).append(s)
            by_top.setdefault(self.squares[s][0], []).append(s)
        for a in sqs:
            t, b, l, r = self.squares[a]
            for c in by_left.get(r, ()):
                t2, b2, l2, r2 = self.squares[c]
                x = self.sq_hcomp.get((a, c))
                if x is None or self.squares.get(x) != (self.h_comp[(t, t2)], self.h_comp[(b, b2)], l, r2):
                    if bad("horizontal square composite", a, c):
                        return out
            for c in by_top.get(b, ()):
                t2, b2, l2, r2 = self.squares[c]
                x = self.sq_vcomp.get((a, c))
                if x is None or self.squares.get(x) != (t, b2, self.v_comp[(l, l2)], self.v_comp[(r, r2)]):
                    if bad("vertical square composite", a, c):
                        return out
            if self.sq_hcomp[(self.vid_sq[l], a)] != a or self.sq_hcomp[(a, self.vid_sq[r])] != a:
                if bad("horizontal square unit law", a):
                    return out
            if self.sq_vcomp[(self.hid_sq[t], a)] != a or self.sq_vcomp[(a, self.hid_sq[b])] != a:
                if bad("vertical square unit law", a):
                    return out
        for a in sqs:
            for b in by_left.get(self.squares[a][3], ()):
                ab = self.sq_hcomp[(a, b)]
                for c in by_left.get(self.squares[b][3], ()):
                    if self.sq_hcomp[(ab, c)] != self.sq_hcomp[(a, self.sq_hcomp[(b, c)])]:
                        if bad("horizontal square associativity", a, b, c):
                            return out
            for b in by_top.get(self.squares[a][1], ()):
                ab = self.sq_vcomp[(a, b)]
                for c in by_top.get(self.squares[b][1], ()):
                    if self.sq_vcomp[(ab, c)] != self.sq_vcomp[(a, self.sq_vcomp[(b, c)])]:
                        if bad("vertical square associativity", a, b, c):
                            return out
        # interchange: (a|b) over (c|d) == (a over c) | (b over d)
        by_top_left: dict = {}
        for s in sqs:
            by_top_left.setdefault((self.squares[s][0], self.squares[s][2]), []).append(s)
        for a in sqs:
            for b in by_left.get(self.squares[a][3], ()):
                for c in by_top.get(self.squares[a][1], ()):
                    for d in by_top_left.get((self.squares[b][1], self.squares[c][3]), ()):
                        lhs = self.sq_vcomp[(self.sq_hcomp[(a, b)], self.sq_hcomp[(c, d)])]
                        rhs = self.sq_hcomp[(self.sq_vcomp[(a, c)], self.sq_vcomp[(b, d)])]
                        if lhs != rhs:
                            if bad("interchange", a, b, c, d):
                                return out
        return out

    def is_valid(self) -> bool:
        if self._valid is None:
            self._valid = not self.check_axioms()
        return self._valid

    def ensure_valid(self) -> None:
        if not self.is_valid():
            v = self.check_axioms()[0]
            raise InvalidStructure(f"double category {self.name or '?'} violates {v}")

    # -- composites -------------------------------------------------------
    def paste_grid(self, grid: Sequence[Sequence[Any]]) -> Any:
        """Composite of a boundary-compatible grid of squares (rows top to
        bottom, each row left to right).  Row-first and column-first pasting
        are both evaluated and must agree."""
        rows = [list(r) for r in grid]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("grid must be a non-empty rectangle")
        for s in (s for row in rows for s in row):
            if s not in self.squares:
                raise ValueError(f"unknown square {s!r}")
        for j, row in enumerate(rows):
            for i, s in enumerate(row):
                if i + 1 < len(row) and self.squares[s][3] != self.squares[row[i + 1]][2]:
                    raise ValueError(f"incompatible vertical edge between ({i},{j}) and ({i + 1},{j})")
                if j + 1 < len(rows) and self.squares[s][1] != self.squares[rows[j + 1][i]][0]:
                    raise ValueError(f"incompatible horizontal edge between ({i},{j}) and ({i},{j + 1})")

        def hfold(seq):
            acc = seq[0]
            for s in seq[1:]:
                acc = self.sq_hcomp[(acc, s)]
            return acc

        def vfold(seq):
            acc = seq[0]
            for s in seq[1:]:
                acc = self.sq_vcomp[(acc, s)]
            return acc

        by_rows = vfold([hfold(r) for r in rows])
        by_cols = hfold([vfold([r[i] for r in rows]) for i in range(len(rows[0]))])
        if by_rows != by_cols:
            raise InvalidStructure("row-first and column-first pasting disagree")
        return by_rows

    # -- nerve ------------------------------------------------------------
    def nerve(self, N: int = 3, M: int = 3) -> FinBisimplicialSet:
        key = (N, M)
        if key not in self._nerves:
            self._nerves[key] = _nerve(self, N, M)
        return self._nerves[key]

    # -- dualities ------------------------------------------------------
    def hop(self) -> "FinDoubleCategory":
        """Reverse horizontal arrows; squares keep their ids and swap sides."""
        return FinDoubleCategory(
            self.objects,
            {F: (t, s) for F, (s, t) in self.h_arrows.items()}, self.v_arrows,
            {q: (t, b, r, l) for q, (t, b, l, r) in self.squares.items()},
            self.h_id, self.v_id,
            {(G, F): H for (F, G), H in self.h_comp.items()}, self.v_comp,
            {(b, a): c for (a, b), c in self.sq_hcomp.items()}, self.sq_vcomp,
            self.hid_sq, self.vid_sq, name=f"{self.name}^hop")

    def transpose(self) -> "FinDoubleCategory":
        return FinDoubleCategory(
            self.objects, self.v_arrows, self.h_arrows,
            {q: (l, r, t, b) for q, (t, b, l, r) in self.squares.items()},
            self.v_id, self.h_id, self.v_comp, self.h_comp,
            self.sq_vcomp, self.sq_hcomp, self.vid_sq, self.hid_sq, name=f"{self.name}^t")

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "kind": "double_category",
            "name": self.name,
            "objects": list(self.objects),
            "h_arrows": {k: list(v) for k, v in sorted(self.h_arrows.items())},
            "v_arrows": {k: list(v) for k, v in sorted(self.v_arrows.items())},
            "squares": {k: list(v) for k, v in sorted(self.squares.items())},
            "h_id": dict(sorted(self.h_id.items())),
            "v_id": dict(sorted(self.v_id.items())),
            "h_comp": _triples(self.h_comp),
            "v_comp": _triples(self.v_comp),
            "sq_hcomp": _triples(self.sq_hcomp),
            "sq_vcomp": _triples(self.sq_vcomp),
            "hid_sq": dict(sorted(self.hid_sq.items())),
            "vid_sq": dict(sorted(self.vid_sq.items())),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinDoubleCategory":
        try:
            return cls(data["objects"], data["h_arrows"], data["v_arrows"], data["squares"],
                       data["h_id"], data["v_id"], _untriple(data["h_comp"]), _untriple(data["v_comp"]),
                       _untriple(data["sq_hcomp"]), _untriple(data["sq_vcomp"]),
                       data["hid_sq"], data["vid_sq"], name=data.get("name", ""))
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed double category JSON: {e}") from e

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def __repr__(self):
        return (f"FinDoubleCategory({self.name or '?'}: {len(self.objects)} objects, "
                f"{len(self.h_arrows)}h, {len(self.v_arrows)}v, {len(self.squares)} squares)")


def load_structure(data: Mapping):
    kind = data.get("kind")
    if kind == "double_category":
        return FinDoubleCategory.from_json(data)
    if kind == "two_category":
        return FinTwoCategory.from_json(data)
    raise ValueError(f"unknown structure kind {kind!r}")


# ---------------------------------------------------------------------------
# nerve


class _Tables:
    """The four operations a horizontal face/degeneracy needs."""

    def __init__(self, comp, ident, sqcomp, sqident):
        self.comp, self.ident, self.sqcomp, self.sqident = comp, ident, sqcomp, sqident


def _hface(T: _Tables, cell, i: int, n: int):
    objs, hs, vs, sqs = cell

    def merge(row, comp):
        if i == 0:
            return row[1:]
        if i == n:
            return row[:-1]
        return row[: i - 1] + (comp[(row[i - 1], row[i])],) + row[i + 1:]

    return (tuple(r[:i] + r[i + 1:] for r in objs),
            tuple(merge(r, T.comp) for r in hs),
            tuple(r[:i] + r[i + 1:] for r in vs),
            tuple(merge(r, T.sqcomp) for r in sqs))


def _hdeg(T: _Tables, cell, i: int):
    objs, hs, vs, sqs = cell
    return (tuple(r[: i + 1] + r[i:] for r in objs),
            tuple(hr[:i] + (T.ident[orow[i]],) + hr[i:] for hr, orow in zip(hs, objs)),
            tuple(r[: i + 1] + r[i:] for r in vs),
            tuple(sr[:i] + (T.sqident[vrow[i]],) + sr[i:] for sr, vrow in zip(sqs, vs)))


def _vface(T: _Tables, cell, j: int, m: int):
    objs, hs, vs, sqs = cell

    def merge(rows, comp):
        if j == 0:
            return rows[1:]
        if j == m:
            return rows[:-1]
        joined = tuple(comp[(a, b)] for a, b in zip(rows[j - 1], rows[j]))
        return rows[: j - 1] + (joined,) + rows[j + 1:]

    return (objs[:j] + objs[j + 1:], hs[:j] + hs[j + 1:], merge(vs, T.comp), merge(sqs, T.sqcomp))


def _vdeg(T: _Tables, cell, j: int):
    objs, hs, vs, sqs = cell
    vrow = tuple(T.ident[x] for x in objs[j])
    srow = tuple(T.sqident[F] for F in hs[j])
    return (objs[: j + 1] + objs[j:], hs[: j + 1] + hs[j:], vs[:j] + (vrow,) + vs[j:], sqs[:j] + (srow,) + sqs[j:])


def _grid_count(rows, by_tops, m: int, sq) -> int:
    # number of m-row stacks of square rows, by a transfer count over row boundaries
    weight = {}
    for r in rows:
        bot = tuple(sq[s][1] for s in r)
        weight[bot] = weight.get(bot, 0) + 1
    for _ in range(m - 1):
        nxt: dict = {}
        for top, w in weight.items():
            for r in by_tops.get(top, ()):
                bot = tuple(sq[s][1] for s in r)
                nxt[bot] = nxt.get(bot, 0) + w
        weight = nxt
    return sum(weight.values())


def nerve_level_size(D: FinDoubleCategory, n: int, m: int) -> int:
    """Number of ``(n, m)``-cells of the nerve, counted without building them."""
    if n == 0 or m == 0:
        return len(D.nerve(n, m).level(n, m))
    sq = D.squares
    rows = D.nerve(n, 1).level(n, 1)
    by_tops: dict = {}
    for c in rows:
        by_tops.setdefault(tuple(sq[s][0] for s in c[3][0]), []).append(c[3][0])
    return _grid_count([c[3][0] for c in rows], by_tops, m, sq)


def _nerve(D: FinDoubleCategory, N: int, M: int) -> FinBisimplicialSet:
    HT = _Tables(D.h_comp, D.h_id, D.sq_hcomp, D.vid_sq)
    VT = _Tables(D.v_comp, D.v_id, D.sq_vcomp, D.hid_sq)
    sq = D.squares
    by_left: dict = {}
    for s in sorted(D.squares, key=sortkey):
        by_left.setdefault(sq[s][2], []).append(s)
    h_out: dict = {}
    for F in sorted(D.h_arrows, key=sortkey):
        h_out.setdefault(D.hsrc(F), []).append(F)
    v_out: dict = {}
    for f in sorted(D.v_arrows, key=sortkey):
        v_out.setdefault(D.vsrc(f), []).append(f)
    row_cache: dict = {}

    def paths(n, out, tgt):
        res = []

        def rec(x, acc):
            if len(acc) == n:
                res.append(tuple(acc))
                return
            for F in out.get(x, ()):
                rec(tgt(F), acc + [F])

        for x in D.objects:
            if n == 0:
                res.append((x,))
            else:
                rec(x, [])
        return res

    def square_rows(n):
        if n in row_cache:
            return row_cache[n]
        res = []

        def rec(acc):
            if len(acc) == n:
                res.append(tuple(acc))
                return
            for s in by_left.get(sq[acc[-1]][3], ()):
                rec(acc + [s])

        for s in sorted(D.squares, key=sortkey):
            rec([s])
        row_cache[n] = res
        return res

    def from_squares(sqs, n, m):
        objs, hs, vs = [], [], []
        for j in range(m + 1):
            row_o, row_h = [], []
            for i in range(n):
                s = sqs[j][i] if j < m else sqs[m - 1][i]
                t, b, l, r = sq[s]
                F = t if j < m else b
                row_h.append(F)
                row_o.append(D.hsrc(F))
            row_o.append(D.htgt(row_h[-1]))
            objs.append(tuple(row_o))
            hs.append(tuple(row_h))
        for j in range(m):
            vs.append(tuple([sq[s][2] for s in sqs[j]] + [sq[sqs[j][-1]][3]]))
        return (tuple(objs), tuple(hs), tuple(vs), tuple(tuple(r) for r in sqs))

    def levels(n, m):
        if n == 0 and m == 0:
            return [((( x,),), ((),), (), ()) for x in D.objects]
        if m == 0:
            out = []
            for p in paths(n, h_out, D.htgt):
                objs = tuple(D.hsrc(F) for F in p) + (D.htgt(p[-1]),)
                out.append(((objs,), (p,), (), ()))
            return out
        if n == 0:
            out = []
            for p in paths(m, v_out, D.vtgt):
                objs = tuple((D.vsrc(f),) for f in p) + ((D.vtgt(p[-1]),),)
                out.append((objs, tuple(() for _ in range(m + 1)), tuple((f,) for f in p),
                            tuple(() for _ in range(m))))
            return out
        rows = square_rows(n)
        by_tops: dict = {}
        for r in rows:
            by_tops.setdefault(tuple(sq[s][0] for s in r), []).append(r)
        size = _grid_count(rows, by_tops, m, sq)
        if size > default_budget():
            raise BudgetExceeded(f"nerve level {(n, m)} of {D.name or '?'} has {size} cells, "
                                 f"over the budget of {default_budget()}")
        grids = []

        def rec(acc):
            if len(acc) == m:
                grids.append(tuple(acc))
                return
            bottoms = tuple(sq[s][1] for s in acc[-1])
            for r in by_tops.get(bottoms, ()):
                rec(acc + [r])

        for r in rows:
            rec([r])
        return [from_squares(g, n, m) for g in grids]

    def op(kind, i, n, m, cell):
        if kind == "hf":
            return _hface(HT, cell, i, n)
        if kind == "hd":
            return _hdeg(HT, cell, i)
        if kind == "vf":
            return _vface(VT, cell, i, m)
        return _vdeg(VT, cell, i)

    def fillers(n, m, key):
        # a grid at least two wide (tall) is fixed by its outer column (row) faces
        if n >= 2:
            first, last = key[n], key[0]
            return [tuple(tuple(r0 + (r1[-1],) for r0, r1 in zip(first[k], last[k])) for k in range(4))]
        if m >= 2:
            off = n + 1 if n >= 1 else 0
            first, last = key[off + m], key[off]
            return [tuple(first[k] + (last[k][-1],) for k in range(4))]
        if n == 1 and m == 1:
            right, left, bottom, top = (c for c in key)
            return [cell_of_square(D, s) for s in
                    D.squares_with(top[1][0][0], bottom[1][0][0], left[2][0][0], right[2][0][0])]
        if n == 1:
            a, b = key[1][0][0][0], key[0][0][0][0]
            return [(((a, b),), ((F,),), (), ()) for F in D.h_hom(a, b)]
        if m == 1:
            a, b = key[1][0][0][0], key[0][0][0][0]
            return [(((a,), (b,)), ((), ()), ((f,),), ((),)) for f in D.v_hom(a, b)]
        return levels(0, 0)

    return FinBisimplicialSet((N, M), levels, op, name=f"N({D.name})", fillers=fillers)


def nerve(D: FinDoubleCategory, N: int = 3, M: int = 3) -> FinBisimplicialSet:
    """Level ``(n, m)``: ``n x m`` grids of boundary-compatible squares.  A cell
    is ``(objects, horizontal arrows, vertical arrows, squares)``, each a tuple
    of rows from top to bottom."""
    return D.nerve(N, M)


def cell_of_square(D: FinDoubleCategory, s):
    """The (1,1)-cell of the nerve for a square."""
    t, b, l, r = D.squares[s]
    return ((
        (D.hsrc(t), D.htgt(t)), (D.hsrc(b), D.htgt(b))), ((t,), (b,)), ((l, r),), ((s,),))


def from_nerve(X: FinBisimplicialSet, namer=None, name: str = "") -> FinDoubleCategory:
    """Double category of a Segal bisimplicial set with truncation at least (2,2).

    Composites are read off by inverting the spine maps at (2,0), (0,2),
    (2,1) and (1,2)."""
    if X.truncation[0] < 2 or X.truncation[1] < 2:
        raise ValueError("need truncation at least (2,2)")
    nm = namer or (lambda c: json.dumps(c, separators=(",", ":")))
    ob = {c: nm(c) for c in X.level(0, 0)}
    H = {c: nm(c) for c in X.level(1, 0)}
    V = {c: nm(c) for c in X.level(0, 1)}
    S = {c: nm(c) for c in X.level(1, 1)}
    h_arrows = {H[c]: (ob[X.apply("hf", 1, 1, 0, c)], ob[X.apply("hf", 0, 1, 0, c)]) for c in H}
    v_arrows = {V[c]: (ob[X.apply("vf", 1, 0, 1, c)], ob[X.apply("vf", 0, 0, 1, c)]) for c in V}
    squares = {S[c]: (H[X.apply("vf", 1, 1, 1, c)], H[X.apply("vf", 0, 1, 1, c)],
                      V[X.apply("hf", 1, 1, 1, c)], V[X.apply("hf", 0, 1, 1, c)]) for c in S}
    h_id = {ob[c]: H[X.apply("hd", 0, 0, 0, c)] for c in ob}
    v_id = {ob[c]: V[X.apply("vd", 0, 0, 0, c)] for c in ob}
    hid_sq = {H[c]: S[X.apply("vd", 0, 1, 0, c)] for c in H}
    vid_sq = {V[c]: S[X.apply("hd", 0, 0, 1, c)] for c in V}

    def comp_table(bd, kind, names):
        d = {}
        for c in X.level(*bd):
            a = X.apply(kind, 2, bd[0], bd[1], c)
            b = X.apply(kind, 0, bd[0], bd[1], c)
            k = (names[a], names[b])
            v = names[X.apply(kind, 1, bd[0], bd[1], c)]
            if d.setdefault(k, v) != v:
                raise InvalidStructure(f"spine at {bd} is not injective")
        return d

    return FinDoubleCategory(
        list(ob.values()), h_arrows, v_arrows, squares, h_id, v_id,
        comp_table((2, 0), "hf", H), comp_table((0, 2), "vf", V),
        comp_table((2, 1), "hf", S), comp_table((1, 2), "vf", S),
        hid_sq, vid_sq, name=name or f"from {X.name}")


def _grid_name(c) -> str:
    a, b = c
    return "".join(map(str, a)) + "," + "".join(map(str, b))


def grid_dblcat(n: int, m: int) -> FinDoubleCategory:
    """The double category freely generated by an ``n x m`` grid of squares
    (the representable ``[n, m]``).  A cell is named by its column and row
    ranges, e.g. ``"01,0"`` for the top horizontal arrow of ``[1, 1]``."""
    R = representable(n, m, (2, 2))
    return from_nerve(R, namer=_grid_name, name=f"grid({n},{m})")


def terminal_dblcat() -> FinDoubleCategory:
    return FinDoubleCategory(["*"], {"1": ("*", "*")}, {"1": ("*", "*")}, {"1": ("1", "1", "1", "1")},
                             {"*": "1"}, {"*": "1"}, {("1", "1"): "1"}, {("1", "1"): "1"},
                             {("1", "1"): "1"}, {("1", "1"): "1"}, {"1": "1"}, {"1": "1"}, name="terminal")


# ---------------------------------------------------------------------------
# fragments


def fragment(D: FinDoubleCategory, which: str) -> FinTwoCategory:
    """Horizontal or vertical fragment as a strict 2-category."""
    if which in ("horizontal", "h"):
        two = {s: (t, b) for s, (t, b, l, r) in D.squares.items()
               if l == D.v_id[D.vsrc(l)] and r == D.v_id[D.vsrc(r)]}
        id2 = {F: D.hid_sq[F] for F in D.h_arrows}
        vc = {(a, b): D.sq_vcomp[(a, b)] for a in two for b in two if two[a][1] == two[b][0]}
        hc = {(a, b): D.sq_hcomp[(a, b)] for a in two for b in two
              if D.htgt(two[a][0]) == D.hsrc(two[b][0])}
        K = FinTwoCategory(D.objects, D.h_arrows, D.h_id, D.h_comp, two, id2, vc, hc, name=f"Hor({D.name})")
    elif which in ("vertical", "v"):
        two = {s: (r, l) for s, (t, b, l, r) in D.squares.items()
               if t == D.h_id[D.hsrc(t)] and b == D.h_id[D.hsrc(b)]}
        id2 = {f: D.vid_sq[f] for f in D.v_arrows}
        # 2-cell a : r => l followed by b : l => l' is the horizontal composite b | a
        vc = {(a, b): D.sq_hcomp[(b, a)] for a in two for b in two if two[a][1] == two[b][0]}
        hc = {(a, b): D.sq_vcomp[(a, b)] for a in two for b in two
              if D.vtgt(two[a][0]) == D.vsrc(two[b][0])}
        K = FinTwoCategory(D.objects, D.v_arrows, D.v_id, D.v_comp, two, id2, vc, hc, name=f"Vert({D.name})")
    else:
        raise ValueError("which must be 'horizontal' or 'vertical'")
    K.locally_posetal = all(len(K.cells2(f, g)) <= 1 for f in K.one_cells for g in K.one_cells)
    return K


def embed_2cat(X: FinTwoCategory, which: str) -> FinDoubleCategory:
    """Double category with the 1-cells of ``X`` in one direction, identities
    in the other, and the 2-cells of ``X`` as squares.  Chosen so that the
    fragment in the same direction gives back ``X``."""
    ids_only = {X.ids[x]: (x, x) for x in X.objects}
    id_of = {x: X.ids[x] for x in X.objects}
    id_comp = {(X.ids[x], X.ids[x]): X.ids[x] for x in X.objects}
    if which in ("horizontal", "h"):
        squares = {a: (s, t, X.ids[X.src(s)], X.ids[X.tgt(s)]) for a, (s, t) in X.two_cells.items()}
        return FinDoubleCategory(
            X.objects, X.one_cells, ids_only, squares, X.ids, id_of, X.comp, id_comp,
            X.hcomp2, X.vcomp2, X.id2, {X.ids[x]: X.id2[X.ids[x]] for x in X.objects},
            name=f"{X.name}_h")
    if which in ("vertical", "v"):
        # 2-cell r => l is the square with left l and right r
        squares = {a: (X.ids[X.src(s)], X.ids[X.tgt(s)], t, s) for a, (s, t) in X.two_cells.items()}
        sq_h = {(b, a): c for (a, b), c in X.vcomp2.items()}
        return FinDoubleCategory(
            X.objects, ids_only, X.one_cells, squares, id_of, X.ids, id_comp, X.comp,
            sq_h, X.hcomp2, {X.ids[x]: X.id2[X.ids[x]] for x in X.objects}, X.id2,
            name=f"{X.name}_v")
    raise ValueError("which must be 'horizontal' or 'vertical'")


# ---------------------------------------------------------------------------
# companions and conjoints


@dataclass(frozen=True)
class CompanionshipData:
    f: Any
    F: Any
    unit: Any
    counit: Any


@dataclass(frozen=True)
class ConjunctionData:
    f: Any
    Fprime: Any
    unit: Any
    counit: Any


def is_companionship(D: FinDoubleCategory, f, F, unit, counit) -> bool:
    x, y = D.v_arrows[f]
    if D.h_arrows.get(F) != (x, y):
        return False
    if D.squares.get(unit) != (D.h_id[x], F, D.v_id[x], f):
        return False
    if D.squares.get(counit) != (F, D.h_id[y], f, D.v_id[y]):
        return False
    return (D.sq_vcomp[(unit, counit)] == D.vid_sq[f]
            and D.sq_hcomp[(unit, counit)] == D.hid_sq[F])


def is_conjunction(D: FinDoubleCategory, f, Fp, unit, counit) -> bool:
    x, y = D.v_arrows[f]
    if D.h_arrows.get(Fp) != (y, x):
        return False
    if D.squares.get(unit) != (D.h_id[x], Fp, f, D.v_id[x]):
        return False
    if D.squares.get(counit) != (Fp, D.h_id[y], D.v_id[y], f):
        return False
    return (D.sq_vcomp[(unit, counit)] == D.vid_sq[f]
            and D.sq_hcomp[(counit, unit)] == D.hid_sq[Fp])


def find_companions(D: FinDoubleCategory, f, direction: str = "companion") -> list:
    """Every companion (or conjoint) of the vertical arrow ``f`` with its unit
    and counit, in deterministic order."""
    D.ensure_valid()
    x, y = D.v_arrows[f]
    out = []
    if direction == "companion":
        for F in D.h_hom(x, y):
            for u in D.squares_with(D.h_id[x], F, D.v_id[x], f):
                for c in D.squares_with(F, D.h_id[y], f, D.v_id[y]):
                    if is_companionship(D, f, F, u, c):
                        out.append(CompanionshipData(f, F, u, c))
    elif direction == "conjoint":
        for Fp in D.h_hom(y, x):
            for u in D.squares_with(D.h_id[x], Fp, f, D.v_id[x]):
                for c in D.squares_with(Fp, D.h_id[y], D.v_id[y], f):
                    if is_conjunction(D, f, Fp, u, c):
                        out.append(ConjunctionData(f, Fp, u, c))
    else:
        raise ValueError("direction must be 'companion' or 'conjoint'")
    return out


def companions_of_horizontal(D: FinDoubleCategory, F, direction: str = "companion") -> list:
    """Every vertical arrow having ``F`` as companion (or conjoint), with data."""
    a, b = D.h_arrows[F]
    out = []
    if direction == "companion":
        for f in D.v_hom(a, b):
            out.extend(c for c in find_companions(D, f, "companion") if c.F == F)
    else:
        for f in D.v_hom(b, a):
            out.extend(c for c in find_companions(D, f, "conjoint") if c.Fprime == F)
    return out


def counits_for_unit(D: FinDoubleCategory, unit, direction: str = "companion") -> list:
    """Counits completing a unit-shaped square to a companionship (conjunction)."""
    t, b, l, r = D.squares[unit]
    if direction == "companion":
        f, F = r, b
        x, y = D.v_arrows[f]
        if t != D.h_id[x] or l != D.v_id[x] or D.h_arrows[F] != (x, y):
            return []
        return [c for c in D.squares_with(F, D.h_id[y], f, D.v_id[y]) if is_companionship(D, f, F, unit, c)]
    f, Fp = l, b
    x, y = D.v_arrows[f]
    if t != D.h_id[x] or r != D.v_id[x] or D.h_arrows[Fp] != (y, x):
        return []
    return [c for c in D.squares_with(Fp, D.h_id[y], D.v_id[y], f) if is_conjunction(D, f, Fp, unit, c)]


def is_unit(D: FinDoubleCategory, unit, direction: str = "companion") -> bool:
    return bool(counits_for_unit(D, unit, direction))


def unit_shaped_squares(D: FinDoubleCategory, direction: str = "companion") -> list:
    out = []
    for s in sorted(D.squares, key=sortkey):
        t, b, l, r = D.squares[s]
        x = D.hsrc(t)
        if direction == "companion":
            if t == D.h_id[x] and l == D.v_id[x] and D.h_arrows[b] == D.v_arrows[r]:
                out.append(s)
        else:
            if t == D.h_id[x] and r == D.v_id[x] and D.h_arrows[b] == D.v_arrows[l][::-1]:
                out.append(s)
    return out


def hor_inverse(D: FinDoubleCategory, a):
    """Inverse of a horizontal-fragment 2-cell (square with identity sides)."""
    t, b, l, r = D.squares[a]
    for c in D.squares_with(b, t, l, r):
        if D.sq_vcomp[(a, c)] == D.hid_sq[t] and D.sq_vcomp[(c, a)] == D.hid_sq[b]:
            return c
    return None


def vert_inverse(D: FinDoubleCategory, a):
    """Inverse of a vertical-fragment 2-cell (square with identity top and
    bottom), under horizontal square composition."""
    t, b, l, r = D.squares[a]
    for c in D.squares_with(t, b, r, l):
        if D.sq_hcomp[(a, c)] == D.vid_sq[l] and D.sq_hcomp[(c, a)] == D.vid_sq[r]:
            return c
    return None


@dataclass
class CompanionableResult:
    ok: bool
    top: Any = None      # companionship / conjunction data for the top edge
    bottom: Any = None
    pasted: Any = None
    inverse: Any = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_companionable(D: FinDoubleCategory, sq, direction: str = "companionable") -> CompanionableResult:
    """The square is companionable if its horizontal edges are companions and
    unit / square / counit pastes to an invertible vertical 2-cell.  The dual
    notion uses conjoints and their units and counits."""
    D.ensure_valid()
    t, b, l, r = D.squares[sq]
    conj = direction in ("conjointable", "conjoint")
    tops = companions_of_horizontal(D, t, "conjoint" if conj else "companion")
    bots = companions_of_horizontal(D, b, "conjoint" if conj else "companion")
    if not tops or not bots:
        return CompanionableResult(False, reason="a horizontal edge has no " + ("conjoint" if conj else "companion"))
    last = None
    for ct in tops:
        for cb in bots:
            pasted = D.paste_grid([[ct.unit], [sq], [cb.counit]])
            inv = vert_inverse(D, pasted)
            last = CompanionableResult(inv is not None, ct, cb, pasted, inv,
                                       "" if inv is not None else "pasted vertical 2-cell is not invertible")
            if inv is not None:
                return last
    return last


def companionable_alt_check(D: FinDoubleCategory, sq) -> bool:
    """Unit of the top edge pasted above the square equals the identity on the
    left edge pasted above the unit of the bottom edge."""
    D.ensure_valid()
    t, b, l, r = D.squares[sq]
    for ct in companions_of_horizontal(D, t):
        for cb in companions_of_horizontal(D, b):
            lhs = D.sq_vcomp[(ct.unit, sq)]
            rhs = D.sq_vcomp[(D.vid_sq[l], cb.unit)]
            if lhs == rhs:
                return True
    return False


def adjunction_from_comp_conj(D: FinDoubleCategory, f, comp: CompanionshipData, conj: ConjunctionData):
    """Unit ``eta | eta'`` and counit ``eps' | eps`` exhibiting ``F -| F'`` in
    the horizontal fragment."""
    D.ensure_valid()
    if comp.f != f or conj.f != f:
        raise ValueError("data are not for the given vertical arrow")
    if not is_companionship(D, f, comp.F, comp.unit, comp.counit):
        raise ValueError("invalid companionship data")
    if not is_conjunction(D, f, conj.Fprime, conj.unit, conj.counit):
        raise ValueError("invalid conjunction data")
    unit = D.sq_hcomp[(comp.unit, conj.unit)]
    counit = D.sq_hcomp[(conj.counit, comp.counit)]
    return unit, counit


__all__ = [
    "FinDoubleCategory", "FinTwoCategory", "SquareCell", "Violation", "InvalidStructure",
    "CompanionshipData", "ConjunctionData", "CompanionableResult",
    "poset_2cat", "chain_2cat", "find_adjunctions", "left_adjoints", "two_cat_isomorphic_on_cells",
    "nerve", "nerve_level_size", "from_nerve", "fragment", "embed_2cat", "find_companions", "companions_of_horizontal",
    "counits_for_unit", "is_unit", "unit_shaped_squares", "is_companionship", "is_conjunction",
    "hor_inverse", "vert_inverse", "is_companionable", "companionable_alt_check",
    "adjunction_from_comp_conj", "load_structure", "cell_of_square", "grid_dblcat", "terminal_dblcat",
]
