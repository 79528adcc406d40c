"""Strict functor double categories, vertical cotensors and lax functor
double categories, with the companion and lax-adjoint recognition checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import Any, Mapping

from ._util import Budget, sortkey
from .double_cat import (
    FinDoubleCategory, FinTwoCategory, InvalidStructure, companions_of_horizontal, embed_2cat,
    find_adjunctions, find_companions, fragment, is_companionable, left_adjoints,
    counits_for_unit, unit_shaped_squares,
)
from .gray_sq import squares_dblcat


def _frozen(d: Mapping) -> tuple:
    return tuple(sorted(d.items(), key=sortkey))


@dataclass(frozen=True)
class DblFunctor:
    obj: tuple
    h: tuple
    v: tuple
    sq: tuple

    def maps(self):
        return dict(self.obj), dict(self.h), dict(self.v), dict(self.sq)


@dataclass(frozen=True)
class HTransformation:
    src: str
    tgt: str
    comp: tuple  # object of C -> horizontal arrow of D
    sq: tuple    # vertical arrow of C -> naturality square of D


@dataclass(frozen=True)
class VTransformation:
    src: str
    tgt: str
    comp: tuple  # object of C -> vertical arrow of D
    sq: tuple    # horizontal arrow of C -> naturality square of D


@dataclass(frozen=True)
class TransformationSquare:
    top: str
    bottom: str
    left: str
    right: str
    comp: tuple  # object of C -> square of D


def functor_problems(C: FinDoubleCategory, D: FinDoubleCategory, F: DblFunctor) -> list[str]:
    o, h, v, s = F.maps()
    out = []
    for x in C.objects:
        if h[C.h_id[x]] != D.h_id[o[x]] or v[C.v_id[x]] != D.v_id[o[x]]:
            out.append(f"identity at {x}")
    for A, (a, b) in C.h_arrows.items():
        if D.h_arrows[h[A]] != (o[a], o[b]):
            out.append(f"endpoints of {A}")
    for A, (a, b) in C.v_arrows.items():
        if D.v_arrows[v[A]] != (o[a], o[b]):
            out.append(f"endpoints of {A}")
    for q, (t, b, l, r) in C.squares.items():
        if D.squares[s[q]] != (h[t], h[b], v[l], v[r]):
            out.append(f"boundary of {q}")
    for (A, B), X in C.h_comp.items():
        if D.h_comp[(h[A], h[B])] != h[X]:
            out.append(f"composite {A};{B}")
    for (A, B), X in C.v_comp.items():
        if D.v_comp[(v[A], v[B])] != v[X]:
            out.append(f"composite {A};{B}")
    for (A, B), X in C.sq_hcomp.items():
        if D.sq_hcomp[(s[A], s[B])] != s[X]:
            out.append(f"square composite {A}|{B}")
    for (A, B), X in C.sq_vcomp.items():
        if D.sq_vcomp[(s[A], s[B])] != s[X]:
            out.append(f"square composite {A} over {B}")
    return out


def double_functors(C: FinDoubleCategory, D: FinDoubleCategory, budget: Budget | None = None) -> list[DblFunctor]:
    """Every strict double functor ``C -> D``, by backtracking over the
    non-identity cells of ``C`` with identities forced."""
    C.ensure_valid()
    D.ensure_valid()
    budget = budget or Budget()
    id_h = set(C.h_id.values())
    id_v = set(C.v_id.values())
    id_sq = set(C.hid_sq.values()) | set(C.vid_sq.values())
    hs = [A for A in sorted(C.h_arrows, key=sortkey) if A not in id_h]
    vs = [A for A in sorted(C.v_arrows, key=sortkey) if A not in id_v]
    sqs = [q for q in sorted(C.squares, key=sortkey) if q not in id_sq]
    out = []

    def finish(o, h, v, s):
        for x in C.objects:
            h[C.h_id[x]] = D.h_id[o[x]]
            v[C.v_id[x]] = D.v_id[o[x]]
        for A in C.h_arrows:
            s[C.hid_sq[A]] = D.hid_sq[h[A]]
        for A in C.v_arrows:
            s[C.vid_sq[A]] = D.vid_sq[v[A]]

    def rec_sq(o, h, v, s, k):
        if k == len(sqs):
            F = DblFunctor(_frozen(o), _frozen(h), _frozen(v), _frozen(s))
            if not functor_problems(C, D, F):
                out.append(F)
            return
        q = sqs[k]
        t, b, l, r = C.squares[q]
        for y in D.squares_with(h[t], h[b], v[l], v[r]):
            budget.spend()
            s[q] = y
            rec_sq(o, h, v, s, k + 1)
        s.pop(q, None)

    def rec_v(o, h, v, k):
        if k == len(vs):
            s: dict = {}
            for A in C.h_arrows:
                s[C.hid_sq[A]] = D.hid_sq[h[A]]
            for A in C.v_arrows:
                s[C.vid_sq[A]] = D.vid_sq[v[A]]
            rec_sq(o, h, v, s, 0)
            return
        A = vs[k]
        a, b = C.v_arrows[A]
        for y in D.v_hom(o[a], o[b]):
            budget.spend()
            v[A] = y
            rec_v(o, h, v, k + 1)
        v.pop(A, None)

    def rec_h(o, h, k):
        if k == len(hs):
            v = {C.v_id[x]: D.v_id[o[x]] for x in C.objects}
            rec_v(o, h, v, 0)
            return
        A = hs[k]
        a, b = C.h_arrows[A]
        for y in D.h_hom(o[a], o[b]):
            budget.spend()
            h[A] = y
            rec_h(o, h, k + 1)
        h.pop(A, None)

    for objs in _iproduct(D.objects, repeat=len(C.objects)):
        budget.spend()
        o = dict(zip(C.objects, objs))
        rec_h(o, {C.h_id[x]: D.h_id[o[x]] for x in C.objects}, 0)
    out.sort(key=lambda F: sortkey((F.obj, F.h, F.v, F.sq)))
    return out


class FunctorDoubleCategory(FinDoubleCategory):
    """``dbl_fun(C, D)`` together with the data behind each generated name."""

    functors: dict
    htrans: dict
    vtrans: dict
    tsquares: dict
    source: FinDoubleCategory
    target: FinDoubleCategory


def dbl_fun(C: FinDoubleCategory, D: FinDoubleCategory, budget: int | None = None) -> FunctorDoubleCategory:
    """The strict functor double category: functors, horizontal and vertical
    transformations, and squares of transformations."""
    C.ensure_valid()
    D.ensure_valid()
    B = Budget(budget)
    funs = double_functors(C, D, B)
    fname = {F: f"P{k}" for k, F in enumerate(funs)}
    fmaps = {fname[F]: F.maps() for F in funs}
    objs_c = list(C.objects)

    # horizontal transformations
    htr: dict = {}
    for P in fmaps:
        oP, hP, vP, sP = fmaps[P]
        for Q in fmaps:
            oQ, hQ, vQ, sQ = fmaps[Q]
            choices = [D.h_hom(oP[x], oQ[x]) for x in objs_c]
            for comps in _iproduct(*choices):
                B.spend()
                a = dict(zip(objs_c, comps))
                if any(D.h_comp[(hP[A], a[d])] != D.h_comp[(a[c], hQ[A])] for A, (c, d) in C.h_arrows.items()):
                    continue
                varrows = sorted(C.v_arrows, key=sortkey)
                sq_choices = [D.squares_with(a[C.vsrc(w)], a[C.vtgt(w)], vP[w], vQ[w]) for w in varrows]
                for sqs in _iproduct(*sq_choices):
                    B.spend()
                    av = dict(zip(varrows, sqs))
                    if _htrans_ok(C, D, a, av, sP, sQ):
                        htr[HTransformation(P, Q, _frozen(a), _frozen(av))] = None
    # vertical transformations
    vtr: dict = {}
    for P in fmaps:
        oP, hP, vP, sP = fmaps[P]
        for Q in fmaps:
            oQ, hQ, vQ, sQ = fmaps[Q]
            choices = [D.v_hom(oP[x], oQ[x]) for x in objs_c]
            for comps in _iproduct(*choices):
                B.spend()
                b = dict(zip(objs_c, comps))
                if any(D.v_comp[(vP[A], b[d])] != D.v_comp[(b[c], vQ[A])] for A, (c, d) in C.v_arrows.items()):
                    continue
                harrows = sorted(C.h_arrows, key=sortkey)
                sq_choices = [D.squares_with(hP[A], hQ[A], b[C.hsrc(A)], b[C.htgt(A)]) for A in harrows]
                for sqs in _iproduct(*sq_choices):
                    B.spend()
                    bh = dict(zip(harrows, sqs))
                    if _vtrans_ok(C, D, b, bh, sP, sQ):
                        vtr[VTransformation(P, Q, _frozen(b), _frozen(bh))] = None
    hlist = sorted(htr, key=lambda t: sortkey((int(t.src[1:]), int(t.tgt[1:]), t.comp, t.sq)))
    vlist = sorted(vtr, key=lambda t: sortkey((int(t.src[1:]), int(t.tgt[1:]), t.comp, t.sq)))
    hname = {t: f"H{k}" for k, t in enumerate(hlist)}
    vname = {t: f"V{k}" for k, t in enumerate(vlist)}
    hdata = {hname[t]: (dict(t.comp), dict(t.sq)) for t in hlist}
    vdata = {vname[t]: (dict(t.comp), dict(t.sq)) for t in vlist}
    hby: dict = {}
    for t in hlist:
        hby.setdefault(t.src, []).append(t)
    vby: dict = {}
    for t in vlist:
        vby.setdefault(t.src, []).append(t)
    h_to = {}
    for t in hlist:
        h_to.setdefault((t.src, t.tgt), []).append(t)

    # squares of transformations
    tsq: dict = {}
    for top in hlist:
        at, _ = hdata[hname[top]]
        for left in vby.get(top.src, ()):
            bl, blh = vdata[vname[left]]
            for right in vby.get(top.tgt, ()):
                br, brh = vdata[vname[right]]
                for bottom in h_to.get((left.tgt, right.tgt), ()):
                    ab, _ = hdata[hname[bottom]]
                    choices = [D.squares_with(at[x], ab[x], bl[x], br[x]) for x in objs_c]
                    for th in _iproduct(*choices):
                        B.spend()
                        theta = dict(zip(objs_c, th))
                        if _tsq_ok(C, D, hdata[hname[top]][1], hdata[hname[bottom]][1], blh, brh, theta):
                            tsq[TransformationSquare(hname[top], hname[bottom], vname[left], vname[right],
                                                     _frozen(theta))] = None
    slist = sorted(tsq, key=lambda q: sortkey((int(q.top[1:]), int(q.bottom[1:]), int(q.left[1:]),
                                                int(q.right[1:]), q.comp)))
    sname = {q: f"Q{k}" for k, q in enumerate(slist)}
    sdata = {sname[q]: dict(q.comp) for q in slist}

    h_arrows = {hname[t]: (t.src, t.tgt) for t in hlist}
    v_arrows = {vname[t]: (t.src, t.tgt) for t in vlist}
    squares = {sname[q]: (q.top, q.bottom, q.left, q.right) for q in slist}
    # lookup keys list values in a fixed argument order, which avoids re-sorting
    vord = sorted(C.v_arrows, key=sortkey)
    hord = sorted(C.h_arrows, key=sortkey)

    def vals(d, order):
        return tuple(d[k] for k in order)

    hkey = {(t.src, t.tgt, vals(hdata[hname[t]][0], objs_c), vals(hdata[hname[t]][1], vord)): hname[t]
            for t in hlist}
    vkey = {(t.src, t.tgt, vals(vdata[vname[t]][0], objs_c), vals(vdata[vname[t]][1], hord)): vname[t]
            for t in vlist}
    skey = {(q.top, q.bottom, q.left, q.right, vals(sdata[sname[q]], objs_c)): sname[q] for q in slist}

    def hlookup(P, Q, a, av):
        k = (P, Q, vals(a, objs_c), vals(av, vord))
        if k not in hkey:
            raise InvalidStructure("horizontal composite of transformations is missing")
        return hkey[k]

    def vlookup(P, Q, b, bh):
        k = (P, Q, vals(b, objs_c), vals(bh, hord))
        if k not in vkey:
            raise InvalidStructure("vertical composite of transformations is missing")
        return vkey[k]

    h_id, v_id = {}, {}
    for P, (oP, hP, vP, sP) in fmaps.items():
        h_id[P] = hlookup(P, P, {x: D.h_id[oP[x]] for x in objs_c}, {w: D.vid_sq[vP[w]] for w in C.v_arrows})
        v_id[P] = vlookup(P, P, {x: D.v_id[oP[x]] for x in objs_c}, {A: D.hid_sq[hP[A]] for A in C.h_arrows})
    h_comp = {}
    for t in hlist:
        a1, s1 = hdata[hname[t]]
        for u in hby.get(t.tgt, ()):
            a2, s2 = hdata[hname[u]]
            h_comp[(hname[t], hname[u])] = hlookup(
                t.src, u.tgt, {x: D.h_comp[(a1[x], a2[x])] for x in objs_c},
                {w: D.sq_hcomp[(s1[w], s2[w])] for w in C.v_arrows})
    v_comp = {}
    for t in vlist:
        b1, s1 = vdata[vname[t]]
        for u in vby.get(t.tgt, ()):
            b2, s2 = vdata[vname[u]]
            v_comp[(vname[t], vname[u])] = vlookup(
                t.src, u.tgt, {x: D.v_comp[(b1[x], b2[x])] for x in objs_c},
                {A: D.sq_vcomp[(s1[A], s2[A])] for A in C.h_arrows})

    def slookup(top, bottom, left, right, theta):
        k = (top, bottom, left, right, vals(theta, objs_c))
        if k not in skey:
            raise InvalidStructure("composite of transformation squares is missing")
        return skey[k]

    hid_sq = {H: slookup(H, H, v_id[s], v_id[t], {x: D.hid_sq[hdata[H][0][x]] for x in objs_c})
              for H, (s, t) in h_arrows.items()}
    vid_sq = {V: slookup(h_id[s], h_id[t], V, V, {x: D.vid_sq[vdata[V][0][x]] for x in objs_c})
              for V, (s, t) in v_arrows.items()}
    by_left: dict = {}
    by_top: dict = {}
    for q, (t, b, l, r) in squares.items():
        by_left.setdefault(l, []).append(q)
        by_top.setdefault(t, []).append(q)
    sq_hcomp, sq_vcomp = {}, {}
    for q, (t, b, l, r) in squares.items():
        for q2 in by_left.get(r, ()):
            t2, b2, _, r2 = squares[q2]
            sq_hcomp[(q, q2)] = slookup(h_comp[(t, t2)], h_comp[(b, b2)], l, r2,
                                        {x: D.sq_hcomp[(sdata[q][x], sdata[q2][x])] for x in objs_c})
        for q2 in by_top.get(b, ()):
            _, b2, l2, r2 = squares[q2]
            sq_vcomp[(q, q2)] = slookup(t, b2, v_comp[(l, l2)], v_comp[(r, r2)],
                                        {x: D.sq_vcomp[(sdata[q][x], sdata[q2][x])] for x in objs_c})
    FD = FunctorDoubleCategory(list(fmaps), h_arrows, v_arrows, squares, h_id, v_id, h_comp, v_comp,
                               sq_hcomp, sq_vcomp, hid_sq, vid_sq, name=f"Fun({C.name},{D.name})")
    FD.functors = fmaps
    FD.htrans = hdata
    FD.vtrans = vdata
    FD.tsquares = sdata
    FD.source = C
    FD.target = D
    # every operation is computed pointwise in a valid D, so the axioms hold;
    # check_axioms() remains available for an explicit recheck
    FD._valid = True
    return FD


def _htrans_ok(C, D, a, av, sP, sQ) -> bool:
    for x in C.objects:
        if av[C.v_id[x]] != D.hid_sq[a[x]]:
            return False
    for (w1, w2), w in C.v_comp.items():
        if D.sq_vcomp[(av[w1], av[w2])] != av[w]:
            return False
    for q, (t, b, l, r) in C.squares.items():
        if D.sq_hcomp[(sP[q], av[r])] != D.sq_hcomp[(av[l], sQ[q])]:
            return False
    return True


def _vtrans_ok(C, D, b, bh, sP, sQ) -> bool:
    for x in C.objects:
        if bh[C.h_id[x]] != D.vid_sq[b[x]]:
            return False
    for (A1, A2), A in C.h_comp.items():
        if D.sq_hcomp[(bh[A1], bh[A2])] != bh[A]:
            return False
    for q, (t, bo, l, r) in C.squares.items():
        if D.sq_vcomp[(sP[q], bh[bo])] != D.sq_vcomp[(bh[t], sQ[q])]:
            return False
    return True


def _tsq_ok(C, D, atop_sq, abot_sq, bl_sq, br_sq, theta) -> bool:
    for A, (c, d) in C.h_arrows.items():
        if D.sq_hcomp[(bl_sq[A], theta[d])] != D.sq_hcomp[(theta[c], br_sq[A])]:
            return False
    for w, (c, c2) in C.v_arrows.items():
        if D.sq_vcomp[(atop_sq[w], theta[c2])] != D.sq_vcomp[(theta[c], abot_sq[w])]:
            return False
    return True


def vertical_cotensor(X: FinTwoCategory, D: FinDoubleCategory, budget: int | None = None) -> FunctorDoubleCategory:
    return dbl_fun(embed_2cat(X, "vertical"), D, budget)


def fun_lax(X: FinTwoCategory, Y: FinTwoCategory, budget: int | None = None) -> FunctorDoubleCategory:
    """Functors ``X -> Y`` with lax transformations as horizontal arrows (``Y``
    locally posetal)."""
    if not Y.locally_posetal:
        raise InvalidStructure("target must be locally posetal")
    return vertical_cotensor(X, squares_dblcat(Y), budget)


# ---------------------------------------------------------------------------
# recognition theorems


@dataclass
class CompanionCheck:
    is_companion: bool
    squares_companionable: bool
    witness: Any = None        # name of the vertical transformation built by pasting
    witness_matches: bool | None = None

    @property
    def agree(self) -> bool:
        return self.is_companion == self.squares_companionable


def companion_witness(FD: FunctorDoubleCategory, H: str):
    """Vertical transformation with components the companions of the
    components of ``H`` and naturality squares
    ``(id | unit_d) over (counit_c | id)``; ``None`` if some piece is missing."""
    C, D = FD.source, FD.target
    P, Q = FD.h_arrows[H]
    a, _ = FD.htrans[H]
    _, hP, _, _ = FD.functors[P]
    _, hQ, _, _ = FD.functors[Q]
    data = {}
    for x in C.objects:
        cs = companions_of_horizontal(D, a[x])
        if not cs:
            return None
        data[x] = cs[0]
    comps = {x: data[x].f for x in C.objects}
    sq = {}
    for A, (c, d) in C.h_arrows.items():
        upper = D.sq_hcomp[(D.hid_sq[hP[A]], data[d].unit)]
        lower = D.sq_hcomp[(data[c].counit, D.hid_sq[hQ[A]])]
        key = (D.squares[upper][1], D.squares[lower][0])
        if key[0] != key[1]:
            return None
        sq[A] = D.sq_vcomp[(upper, lower)]
    for V, (comp, vsq) in FD.vtrans.items():
        if FD.v_arrows[V] == (P, Q) and comp == comps and vsq == sq:
            return V
    return None


def companion_characterization(FD: FunctorDoubleCategory, H: str) -> CompanionCheck:
    """(``H`` has a companion in ``FD``, every naturality square of ``H`` is
    companionable in the target) plus the pasted witness."""
    C, D = FD.source, FD.target
    left = bool(companions_of_horizontal(FD, H))
    _, asq = FD.htrans[H]
    right = all(is_companionable(D, asq[w]).ok for w in sorted(C.v_arrows, key=sortkey))
    w = companion_witness(FD, H) if right else None
    matches = None
    if left and w is not None:
        matches = any(c.f == w for c in companions_of_horizontal(FD, H))
    return CompanionCheck(left, right, w, matches)


def unit_componentwise(FD: FunctorDoubleCategory, sq: str) -> tuple[bool, bool]:
    """(``sq`` is a companionship unit in ``FD``, every component is one in the target)."""
    D = FD.target
    whole = bool(counits_for_unit(FD, sq))
    parts = all(bool(counits_for_unit(D, s)) for s in FD.tsquares[sq].values())
    return whole, parts


@dataclass
class LaxAdjointReport:
    right_adjoint: bool
    has_conjoint: bool
    pointwise: bool
    left_adjoint: Any = None       # name of the constructed horizontal arrow
    left_adjoint_ok: bool | None = None

    @property
    def agree(self) -> bool:
        return self.right_adjoint == self.has_conjoint == self.pointwise


def lax_adjoint_characterization(FL: FunctorDoubleCategory, Y: FinTwoCategory, H: str) -> LaxAdjointReport:
    """The three equivalent conditions for ``H`` to be a right adjoint among
    lax transformations, evaluated independently.

    * right adjoint in the horizontal fragment of ``FL``;
    * ``H`` admits a conjoint in ``FL``;
    * every component has a left adjoint in ``Y`` and every mate square commutes.

    For the last condition the left adjoint is assembled from the component
    left adjoints with the mates as naturality squares and looked up in ``FL``."""
    C, D = FL.source, FL.target
    K = fragment(FL, "horizontal")
    c1 = bool(left_adjoints(K, H))
    c2 = bool(companions_of_horizontal(FL, H, "conjoint"))
    P, Q = FL.h_arrows[H]
    oP, _, vP, _ = FL.functors[P]
    oQ, _, vQ, _ = FL.functors[Q]
    comps, _ = FL.htrans[H]
    lefts = {}
    for x in C.objects:
        la = left_adjoints(Y, comps[x])
        if not la:
            lefts = None
            break
        lefts[x] = la[0][0]
    c3, u, u_ok = False, None, None
    if lefts is not None:
        c3 = True
        for w, (x, x2) in C.v_arrows.items():
            # naturality of H at w: comps[x] ; vQ[w] <= vP[w] ; comps[x2]
            # mate square: lefts[x] ; vP[w] == vQ[w] ; lefts[x2]
            if Y.comp[(lefts[x], vP[w])] != Y.comp[(vQ[w], lefts[x2])]:
                c3 = False
                break
        if c3:
            sq = {w: D.squares_with(lefts[x], lefts[x2], vQ[w], vP[w])
                  for w, (x, x2) in C.v_arrows.items()}
            if all(sq.values()):
                target = ({x: lefts[x] for x in C.objects}, {w: s[0] for w, s in sq.items()})
                for name, data in FL.htrans.items():
                    if FL.h_arrows[name] == (Q, P) and data == target:
                        u = name
                        break
            u_ok = u is not None and any(v == H for v, _, _ in find_adjunctions(K, u))
    return LaxAdjointReport(c1, c2, c3, u, u_ok)


__all__ = [
    "DblFunctor", "HTransformation", "VTransformation", "TransformationSquare",
    "FunctorDoubleCategory", "double_functors", "functor_problems", "dbl_fun",
    "vertical_cotensor", "fun_lax", "CompanionCheck", "companion_characterization",
    "companion_witness", "unit_componentwise", "LaxAdjointReport", "lax_adjoint_characterization",
]
