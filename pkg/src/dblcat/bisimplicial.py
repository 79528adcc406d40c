"""Truncated bisimplicial sets.

A :class:`FinBisimplicialSet` is a presheaf on ``Delta x Delta`` restricted to
bidegrees ``(n, m)`` with ``n <= N`` and ``m <= M``.  Bidegree ``(n, m)`` has
``n`` as the horizontal degree and ``m`` as the vertical one.  Cells are
opaque hashable identifiers.  Structure maps are given by a function and are
memoised per cell, so large nerves only pay for what a computation touches.

The four structure-map families are named by two-letter kinds:

* ``"hf"`` horizontal face ``d_i : (n, m) -> (n-1, m)``, ``0 <= i <= n``
* ``"hd"`` horizontal degeneracy ``s_i : (n, m) -> (n+1, m)``, ``0 <= i <= n``
* ``"vf"`` / ``"vd"`` the vertical analogues.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as _iproduct
from typing import Any, Callable, Iterable, Iterator, Mapping

from ._util import Budget, freeze, is_convex, monotone_maps, sortkey, sorted_cells, thaw

KINDS = ("hf", "hd", "vf", "vd")
DEFAULT_TRUNCATION = (3, 3)


def target_bidegree(kind: str, n: int, m: int) -> tuple[int, int]:
    if kind == "hf":
        return (n - 1, m)
    if kind == "hd":
        return (n + 1, m)
    if kind == "vf":
        return (n, m - 1)
    if kind == "vd":
        return (n, m + 1)
    raise ValueError(f"unknown structure map kind {kind!r}")


class FinBisimplicialSet:
    """Finite truncated bisimplicial set."""

    def __init__(
        self,
        truncation: tuple[int, int],
        levels: Callable[[int, int], Iterable] | Mapping[tuple[int, int], Iterable],
        op: Callable[[str, int, int, int, Any], Any],
        *,
        name: str = "",
        ambient: tuple | None = None,
        fillers: Callable[[int, int, tuple], Iterable] | None = None,
    ):
        self.truncation = (int(truncation[0]), int(truncation[1]))
        self._level_src = levels
        self._op = op
        self._levels: dict[tuple[int, int], tuple] = {}
        self._sets: dict[tuple[int, int], frozenset] = {}
        self._cache: dict[tuple, dict] = {}
        self._full: set[tuple] = set()
        self._degsrc: dict[tuple[int, int], dict] = {}
        self._faceidx: dict[tuple[int, int], dict] = {}
        self._restr: dict[tuple, dict] = {}
        self.name = name
        # optional lazy lookup: cells of a level with a given face_key, so that
        # searches never have to build a large level
        self._fillers = fillers
        self._known: dict[tuple[int, int], set] = {}
        # ("rep", n, m) when cells are pairs of monotone maps into [n] and [m]
        self.ambient = ambient

    # -- levels ---------------------------------------------------------
    def bidegrees(self) -> list[tuple[int, int]]:
        N, M = self.truncation
        return [(n, m) for n in range(N + 1) for m in range(M + 1)]

    def in_range(self, n: int, m: int) -> bool:
        return 0 <= n <= self.truncation[0] and 0 <= m <= self.truncation[1]

    def level(self, n: int, m: int) -> tuple:
        key = (n, m)
        lv = self._levels.get(key)
        if lv is None:
            if not self.in_range(n, m):
                raise IndexError(f"bidegree {(n, m)} outside truncation {self.truncation}")
            src = self._level_src
            raw = src(n, m) if callable(src) else src.get(key, ())
            lv = sorted_cells(raw)
            self._levels[key] = lv
        return lv

    def cellset(self, n: int, m: int) -> frozenset:
        s = self._sets.get((n, m))
        if s is None:
            s = frozenset(self.level(n, m))
            self._sets[(n, m)] = s
        return s

    def size(self, n: int, m: int) -> int:
        return len(self.level(n, m))

    def counts(self) -> dict[tuple[int, int], int]:
        return {bd: self.size(*bd) for bd in self.bidegrees()}

    def all_cells(self) -> Iterator[tuple[tuple[int, int], Any]]:
        for bd in self.bidegrees():
            for c in self.level(*bd):
                yield bd, c

    # -- structure maps -------------------------------------------------
    def has_op(self, kind: str, i: int, n: int, m: int) -> bool:
        if not self.in_range(n, m):
            return False
        tn, tm = target_bidegree(kind, n, m)
        if not self.in_range(tn, tm):
            return False
        top = n if kind[0] == "h" else m
        return 0 <= i <= top and (kind[1] == "d" or top >= 1)

    def ops_at(self, n: int, m: int) -> list[tuple[str, int]]:
        out = []
        for kind in KINDS:
            top = n if kind[0] == "h" else m
            for i in range(top + 1):
                if self.has_op(kind, i, n, m):
                    out.append((kind, i))
        return out

    def apply(self, kind: str, i: int, n: int, m: int, cell):
        key = (kind, i, n, m)
        tab = self._cache.get(key)
        if tab is None:
            tab = {}
            self._cache[key] = tab
        v = tab.get(cell, _MISSING)
        if v is _MISSING:
            v = self._op(kind, i, n, m, cell)
            tab[cell] = v
        return v

    def op_table(self, kind: str, i: int, n: int, m: int) -> dict:
        key = (kind, i, n, m)
        if key not in self._full:
            for c in self.level(n, m):
                self.apply(kind, i, n, m, c)
            self._full.add(key)
        return self._cache[key]

    def apply_ops(self, cell, bd: tuple[int, int], ops: Iterable[tuple[str, int]]):
        n, m = bd
        for kind, i in ops:
            cell = self.apply(kind, i, n, m, cell)
            n, m = target_bidegree(kind, n, m)
        return cell

    def act(self, cell, bd: tuple[int, int], alpha: tuple[int, ...], beta: tuple[int, ...]):
        """Restrict ``cell`` at ``bd`` along monotone ``alpha:[a]->[n]``, ``beta:[b]->[m]``."""
        for kind, i, n, m in _act_plan(bd, alpha, beta):
            cell = self.apply(kind, i, n, m, cell)
        return cell

    def restriction(self, bd: tuple[int, int], alpha: tuple[int, ...], beta: tuple[int, ...]) -> dict:
        """``act`` along ``(alpha, beta)`` tabulated over the whole level ``bd``."""
        key = (bd, alpha, beta)
        tab = self._restr.get(key)
        if tab is None:
            tab = {c: self.act(c, bd, alpha, beta) for c in self.level(*bd)}
            self._restr[key] = tab
        return tab

    def face_key(self, cell, n: int, m: int) -> tuple:
        key = []
        if n >= 1:
            key.extend(self.apply("hf", i, n, m, cell) for i in range(n + 1))
        if m >= 1:
            key.extend(self.apply("vf", j, n, m, cell) for j in range(m + 1))
        return tuple(key)

    def cells_with_faces(self, n: int, m: int, key: tuple):
        if self._fillers is not None and (n, m) not in self._faceidx and (n, m) not in self._levels:
            return tuple(c for c in self._fillers(n, m, key) if self.face_key(c, n, m) == key)
        return self.face_index(n, m).get(key, ())

    def has_cell(self, n: int, m: int, cell) -> bool:
        """Membership, answered through ``fillers`` when the level is not built."""
        if self._fillers is None or (n, m) in self._levels or n + m <= 1:
            return cell in self.cellset(n, m)
        known = self._known.setdefault((n, m), set())
        if cell in known:
            return True
        try:
            key = self.face_key(cell, n, m)
        except (KeyError, IndexError, TypeError):
            return False
        faces = ([target_bidegree("hf", n, m)] * (n + 1) if n >= 1 else []) + \
                ([target_bidegree("vf", n, m)] * (m + 1) if m >= 1 else [])
        if not all(self.has_cell(*bd, f) for bd, f in zip(faces, key)):
            return False
        if cell in self.cells_with_faces(n, m, key):
            known.add(cell)
            return True
        return False

    def face_index(self, n: int, m: int) -> dict:
        idx = self._faceidx.get((n, m))
        if idx is None:
            idx = {}
            for c in self.level(n, m):
                idx.setdefault(self.face_key(c, n, m), []).append(c)
            self._faceidx[(n, m)] = idx
        return idx

    # -- degeneracy structure ------------------------------------------
    def _degsource(self, n: int, m: int) -> dict:
        d = self._degsrc.get((n, m))
        if d is None:
            d = {}
            if n >= 1:
                for i in range(n):
                    for c in self.level(n - 1, m):
                        d.setdefault(self.apply("hd", i, n - 1, m, c), ("hd", i, c))
            if m >= 1:
                for j in range(m):
                    for c in self.level(n, m - 1):
                        d.setdefault(self.apply("vd", j, n, m - 1, c), ("vd", j, c))
            self._degsrc[(n, m)] = d
        return d

    def is_degenerate(self, cell, n: int, m: int) -> bool:
        return cell in self._degsource(n, m)

    def nondegenerate(self, n: int, m: int) -> tuple:
        d = self._degsource(n, m)
        return tuple(c for c in self.level(n, m) if c not in d)

    def ez(self, cell, n: int, m: int):
        """Eilenberg-Zilber form: ``(base, base_bidegree, degeneracy_ops)``."""
        ops: list[tuple[str, int]] = []
        while True:
            src = self._degsource(n, m).get(cell)
            if src is None:
                ops.reverse()
                return cell, (n, m), tuple(ops)
            kind, i, prev = src
            ops.append((kind, i))
            if kind == "hd":
                n -= 1
            else:
                m -= 1
            cell = prev

    # -- validation -----------------------------------------------------
    def check_identities(self, limit: int = 20) -> list[str]:
        """Exhaustive check of the simplicial identities in both directions and
        of the commutation of horizontal with vertical operators."""
        problems: list[str] = []

        def bad(msg):
            problems.append(msg)
            return len(problems) >= limit

        for (n, m) in self.bidegrees():
            for c in self.level(n, m):
                for kind, i in self.ops_at(n, m):
                    t = self.apply(kind, i, n, m, c)
                    if t not in self.cellset(*target_bidegree(kind, n, m)):
                        if bad(f"{kind}{i} at {(n, m)} leaves the level: {c!r}"):
                            return problems
                for d in ("h", "v"):
                    if _check_direction(self, d, n, m, c, bad):
                        return problems
                # cross commutation
                for k1, i in self.ops_at(n, m):
                    if k1[0] != "h":
                        continue
                    a = self.apply(k1, i, n, m, c)
                    bd1 = target_bidegree(k1, n, m)
                    for k2, j in self.ops_at(n, m):
                        if k2[0] != "v":
                            continue
                        bd2 = target_bidegree(k2, n, m)
                        if not self.has_op(k2, j, *bd1) or not self.has_op(k1, i, *bd2):
                            continue
                        x = self.apply(k2, j, bd1[0], bd1[1], a)
                        y = self.apply(k1, i, bd2[0], bd2[1], self.apply(k2, j, n, m, c))
                        if x != y and bad(f"{k1}{i} and {k2}{j} do not commute at {(n, m)} on {c!r}"):
                            return problems
        return problems

    # -- derived objects ------------------------------------------------
    def sub(self, cells: Mapping[tuple[int, int], Iterable], name: str = "") -> "FinBisimplicialSet":
        """Sub-presheaf on the given cells (closure is the caller's promise;
        see :func:`is_subpresheaf`)."""
        cells = {k: tuple(v) for k, v in cells.items()}
        return FinBisimplicialSet(self.truncation, cells, self._op, name=name, ambient=self.ambient)

    def with_truncation(self, truncation: tuple[int, int]) -> "FinBisimplicialSet":
        src = self._level_src
        if callable(src):
            lv = src
        else:
            lv = dict(src)
        return FinBisimplicialSet(truncation, lv, self._op, name=self.name, ambient=self.ambient,
                                  fillers=self._fillers)

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        N, M = self.truncation
        out: dict[str, Any] = {"truncation": [N, M], "levels": {}}
        fams = {"hf": "h_face", "hd": "h_deg", "vf": "v_face", "vd": "v_deg"}
        for fam in fams.values():
            out[fam] = {}
        index = {bd: {c: k for k, c in enumerate(self.level(*bd))} for bd in self.bidegrees()}
        for (n, m) in self.bidegrees():
            key = f"{n},{m}"
            out["levels"][key] = [thaw(c) for c in self.level(n, m)]
            for kind, fam in fams.items():
                top = n if kind[0] == "h" else m
                rows = []
                for i in range(top + 1):
                    if not self.has_op(kind, i, n, m):
                        continue
                    tgt = index[target_bidegree(kind, n, m)]
                    rows.append([tgt[self.apply(kind, i, n, m, c)] for c in self.level(n, m)])
                if rows:
                    out[fam][key] = rows
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "FinBisimplicialSet":
        N, M = data["truncation"]
        levels: dict[tuple[int, int], list] = {}
        for key, cells in data["levels"].items():
            n, m = (int(t) for t in key.split(","))
            levels[(n, m)] = [freeze(c) for c in cells]
        fams = {"hf": "h_face", "hd": "h_deg", "vf": "v_face", "vd": "v_deg"}
        tables: dict[tuple, dict] = {}
        order = {bd: sorted_cells(cs) for bd, cs in levels.items()}
        for kind, fam in fams.items():
            for key, rows in data.get(fam, {}).items():
                n, m = (int(t) for t in key.split(","))
                src = order[(n, m)]
                tgt = order[target_bidegree(kind, n, m)]
                for i, row in enumerate(rows):
                    if len(row) != len(src):
                        raise ValueError(f"{fam} row {i} at {key} has wrong length")
                    tables[(kind, i, n, m)] = {c: tgt[j] for c, j in zip(src, row)}

        def op(kind, i, n, m, cell):
            try:
                return tables[(kind, i, n, m)][cell]
            except KeyError:
                raise KeyError(f"missing {kind}{i} at {(n, m)} for {cell!r}") from None

        X = cls((N, M), levels, op)
        for (n, m) in X.bidegrees():
            for kind, i in X.ops_at(n, m):
                if (kind, i, n, m) not in tables and X.level(n, m):
                    raise ValueError(f"missing structure map {kind}{i} at {(n, m)}")
        return X

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"FinBisimplicialSet({self.name or '?'}, truncation={self.truncation})"


_MISSING = object()


@lru_cache(maxsize=None)
def _operator_ops(direction: str, alpha: tuple[int, ...], n: int, other: int):
    """Face-then-degeneracy decomposition of a monotone map ``alpha:[a]->[n]``.

    Returns the list of structure maps to apply and the resulting degree pair
    (first component is the new degree in ``direction``)."""
    image = sorted(set(alpha))
    f, d = direction + "f", direction + "d"
    ops = []
    cur = n
    for i in range(n, -1, -1):
        if i not in image:
            ops.append((f, i))
            cur -= 1
    pos = {v: k for k, v in enumerate(image)}
    sigma = [pos[v] for v in alpha]
    for p in range(len(alpha) - 1):
        if sigma[p] == sigma[p + 1]:
            ops.append((d, p))
            cur += 1
    return tuple(ops), (cur, other)


@lru_cache(maxsize=None)
def _act_plan(bd: tuple[int, int], alpha: tuple[int, ...], beta: tuple[int, ...]) -> tuple:
    """Structure maps, each with its source bidegree, realising ``(alpha, beta)``."""
    n, m = bd
    ops, (a, _) = _operator_ops("h", alpha, n, m)
    ops2, _ = _operator_ops("v", beta, m, a)
    plan = []
    for kind, i in ops + ops2:
        plan.append((kind, i, n, m))
        n, m = target_bidegree(kind, n, m)
    return tuple(plan)


def _check_direction(X: FinBisimplicialSet, d: str, n: int, m: int, c, bad) -> bool:
    """Simplicial identities in one direction for one cell."""
    f, s = d + "f", d + "d"
    top = n if d == "h" else m

    def bd_after(kind, bd):
        return target_bidegree(kind, *bd)

    def ap(kind, i, bd, x):
        return X.apply(kind, i, bd[0], bd[1], x)

    bd = (n, m)
    # d_i d_j = d_{j-1} d_i for i < j
    if top >= 2:
        for j in range(top + 1):
            for i in range(j):
                if not (X.has_op(f, j, *bd) and X.has_op(f, i, *bd)):
                    continue
                b1 = bd_after(f, bd)
                if ap(f, i, b1, ap(f, j, bd, c)) != ap(f, j - 1, b1, ap(f, i, bd, c)):
                    if bad(f"{d} face identity d{i}d{j} fails at {bd} on {c!r}"):
                        return True
    # face of degeneracy, and degeneracy of degeneracy
    for j in range(top + 1):
        if not X.has_op(s, j, *bd):
            continue
        up = bd_after(s, bd)
        sc = ap(s, j, bd, c)
        for i in range(top + 2):
            if not X.has_op(f, i, *up):
                continue
            got = ap(f, i, up, sc)
            if i < j:
                if top >= 1 and X.has_op(f, i, *bd):
                    want = ap(s, j - 1, bd_after(f, bd), ap(f, i, bd, c))
                else:
                    continue
            elif i in (j, j + 1):
                want = c
            else:
                if top >= 1 and X.has_op(f, i - 1, *bd):
                    want = ap(s, j, bd_after(f, bd), ap(f, i - 1, bd, c))
                else:
                    continue
            if got != want and bad(f"{d} identity d{i}s{j} fails at {bd} on {c!r}"):
                return True
        for i in range(j + 1):
            if not X.has_op(s, i, *up):
                continue
            lhs = ap(s, i, up, sc)
            if not X.has_op(s, i, *bd):
                continue
            rhs = ap(s, j + 1, bd_after(s, bd), ap(s, i, bd, c))
            if lhs != rhs and bad(f"{d} identity s{i}s{j} fails at {bd} on {c!r}"):
                return True
    return False


# ---------------------------------------------------------------------------
# maps


class BisimplicialMap:
    """Levelwise function between truncated bisimplicial sets."""

    def __init__(self, source: FinBisimplicialSet, target: FinBisimplicialSet,
                 components: Mapping[tuple[int, int], Mapping] | Callable):
        if source.truncation != target.truncation:
            raise ValueError("source and target truncations differ")
        self.source = source
        self.target = target
        if callable(components):
            comps = {bd: {c: components(bd, c) for c in source.level(*bd)} for bd in source.bidegrees()}
        else:
            comps = {bd: dict(components.get(bd, {})) for bd in source.bidegrees()}
        self.components: dict[tuple[int, int], dict] = comps

    def __call__(self, bd: tuple[int, int], cell):
        return self.components[bd][cell]

    def problems(self, limit: int = 10) -> list[str]:
        out = []
        S, T = self.source, self.target
        for bd in S.bidegrees():
            comp = self.components[bd]
            for c in S.level(*bd):
                if c not in comp:
                    out.append(f"no value for {c!r} at {bd}")
                elif not T.has_cell(bd[0], bd[1], comp[c]):
                    out.append(f"value of {c!r} at {bd} is not a target cell")
                else:
                    for kind, i in S.ops_at(*bd):
                        tb = target_bidegree(kind, *bd)
                        lhs = self.components[tb].get(S.apply(kind, i, bd[0], bd[1], c), _MISSING)
                        rhs = T.apply(kind, i, bd[0], bd[1], comp[c])
                        if lhs != rhs:
                            out.append(f"{kind}{i} not preserved at {bd} on {c!r}")
                            break
                if len(out) >= limit:
                    return out
        return out

    def is_valid(self) -> bool:
        return not self.problems(limit=1)

    def is_injective(self) -> bool:
        return all(len(set(v.values())) == len(v) for v in self.components.values())

    def is_surjective(self) -> bool:
        return all(set(self.components[bd].values()) == set(self.target.level(*bd))
                   for bd in self.source.bidegrees())

    def is_isomorphism(self) -> bool:
        return self.is_valid() and self.is_injective() and self.is_surjective()

    def image(self) -> dict[tuple[int, int], set]:
        return {bd: set(v.values()) for bd, v in self.components.items()}

    def then(self, other: "BisimplicialMap") -> "BisimplicialMap":
        """Diagrammatic composite: first ``self`` then ``other``."""
        return BisimplicialMap(self.source, other.target,
                               {bd: {c: other.components[bd][v] for c, v in comp.items()}
                                for bd, comp in self.components.items()})

    def key(self) -> tuple:
        return tuple((bd, tuple(self.components[bd][c] for c in self.source.level(*bd)))
                     for bd in self.source.bidegrees())

    def __eq__(self, other) -> bool:
        return (isinstance(other, BisimplicialMap) and self.source is other.source
                and self.target is other.target and self.components == other.components)

    def __hash__(self):
        return hash(self.key())


def identity_map(X: FinBisimplicialSet) -> BisimplicialMap:
    return BisimplicialMap(X, X, lambda bd, c: c)


def inclusion_map(A: FinBisimplicialSet, B: FinBisimplicialSet) -> BisimplicialMap:
    return BisimplicialMap(A, B, lambda bd, c: c)


def descend(q: BisimplicialMap, f: BisimplicialMap) -> BisimplicialMap:
    """Factor ``f`` through the levelwise surjection ``q`` (both out of the same source)."""
    comps = {}
    for bd in q.source.bidegrees():
        d: dict = {}
        for c in q.source.level(*bd):
            k, v = q.components[bd][c], f.components[bd][c]
            if d.setdefault(k, v) != v:
                raise ValueError(f"map is not constant on the fibres of the quotient at {bd}")
        comps[bd] = d
    return BisimplicialMap(q.target, f.target, comps)


def is_subpresheaf(X: FinBisimplicialSet, cells: Mapping[tuple[int, int], Iterable]) -> bool:
    sets = {bd: set(cells.get(bd, ())) for bd in X.bidegrees()}
    for bd, s in sets.items():
        for c in s:
            for kind, i in X.ops_at(*bd):
                if X.apply(kind, i, bd[0], bd[1], c) not in sets[target_bidegree(kind, *bd)]:
                    return False
    return True


# ---------------------------------------------------------------------------
# representables and shapes


def _pair_op(kind: str, i: int, n: int, m: int, cell):
    a, b = cell
    if kind == "hf":
        return (a[:i] + a[i + 1:], b)
    if kind == "hd":
        return (a[: i + 1] + a[i:], b)
    if kind == "vf":
        return (a, b[:i] + b[i + 1:])
    return (a, b[: i + 1] + b[i:])


def representable(n: int, m: int, truncation: tuple[int, int] = DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    """The representable ``[n, m]``: level ``(a, b)`` is pairs of monotone maps
    ``([a]->[n], [b]->[m])``; structure maps precompose."""

    def levels(a, b):
        return list(_iproduct(monotone_maps(a, n), monotone_maps(b, m)))

    return FinBisimplicialSet(truncation, levels, _pair_op, name=f"[{n},{m}]", ambient=("rep", n, m))


def terminal(truncation: tuple[int, int] = DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    return representable(0, 0, truncation)


def _sub_rep(R: FinBisimplicialSet, pred: Callable[[tuple, tuple], bool], name: str) -> FinBisimplicialSet:
    def levels(a, b):
        return [c for c in R.level(a, b) if pred(*c)]

    return FinBisimplicialSet(R.truncation, levels, _pair_op, name=name, ambient=R.ambient)


def _in_horn(S: frozenset, k: int):
    """Membership test for the simplicial horn ``Lambda^S[k]``: the image of
    the map misses some vertex outside ``S``."""
    outside = [i for i in range(k + 1) if i not in S]

    def test(alpha):
        img = set(alpha)
        return any(i not in img for i in outside)

    return test


def horn(S: Iterable[int], T: Iterable[int], n: int, m: int,
         truncation: tuple[int, int] = DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    S, T = frozenset(S), frozenset(T)
    if not S <= set(range(n + 1)) or not T <= set(range(m + 1)):
        raise ValueError(f"invalid horn parameters S={sorted(S)} T={sorted(T)} for [{n},{m}]")
    R = representable(n, m, truncation)
    hs, vs = _in_horn(S, n), _in_horn(T, m)
    name = f"horn(S={sorted(S)},T={sorted(T)},{n},{m})"
    return _sub_rep(R, lambda a, b: hs(a) or vs(b), name)


def boundary(n: int, m: int, truncation=DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    X = horn((), (), n, m, truncation)
    X.name = f"boundary({n},{m})"
    return X


def spine(direction: str, n: int, m: int, truncation=DEFAULT_TRUNCATION) -> FinBisimplicialSet:
    """Union of the ``[{i,i+1}]`` strips of ``[n, m]`` in one direction."""
    R = representable(n, m, truncation)
    if direction == "h":
        def pred(a, b):
            return n == 0 or max(a) - min(a) <= 1
    elif direction == "v":
        def pred(a, b):
            return m == 0 or max(b) - min(b) <= 1
    else:
        raise ValueError("direction must be 'h' or 'v'")
    return _sub_rep(R, pred, f"spine-{direction}({n},{m})")


def _collapsed(n: int, m: int):
    """Cells of ``[{0},{0<=1}] u [[n],{0}]`` inside ``[n, m]``."""
    def pred(a, b):
        return (max(a) == 0 and max(b) <= 1) or max(b) == 0
    return pred


@dataclass
class Shape:
    obj: FinBisimplicialSet
    inclusion: BisimplicialMap | None = None  # into the ambient representable or L[n,m]
    quotient: BisimplicialMap | None = None  # from the pre-quotient object
    spec: "ShapeSpec | None" = None


def collapse(X: FinBisimplicialSet, pred: Callable[[Any], bool], name: str = "") -> tuple[FinBisimplicialSet, BisimplicialMap]:
    """Quotient of ``X`` by the sub-presheaf of cells satisfying ``pred``,
    collapsed to a point; computed as a pushout against the terminal object."""
    K = X.sub({bd: [c for c in X.level(*bd) if pred(c)] for bd in X.bidegrees()}, name="K")
    pt = terminal(X.truncation)
    inc = inclusion_map(K, X)
    to_pt = BisimplicialMap(K, pt, lambda bd, c: pt.level(*bd)[0])
    P, (qX, _qpt) = pushout(inc, to_pt)
    P.name = name
    return P, qX


def l_quotient(n: int, m: int, truncation=DEFAULT_TRUNCATION) -> Shape:
    if m < 1:
        raise ValueError("L[n,m] needs m >= 1")
    R = representable(n, m, truncation)
    pred = _collapsed(n, m)
    Q, q = collapse(R, lambda c: pred(*c), name=f"L[{n},{m}]")
    return Shape(Q, None, q)


def lower_triangle(truncation=DEFAULT_TRUNCATION) -> Shape:
    sh = l_quotient(1, 1, truncation)
    sh.obj.name = "L"
    return sh


def gamma_l(T: Iterable[int], n: int, m: int, truncation=DEFAULT_TRUNCATION) -> Shape:
    """``Gamma^T_L[n,m]``: the horn ``Lambda^{{},T}[n,m]`` with the L-collapse,
    together with its inclusion into ``L[n,m]``."""
    T = frozenset(T)
    if n < 1 or m < 2 or not T <= set(range(m)):
        raise ValueError(f"gamma-L needs n>=1, m>=2, T within [m-1]; got T={sorted(T)}, n={n}, m={m}")
    H = horn((), T, n, m, truncation)
    pred = _collapsed(n, m)
    G, qH = collapse(H, lambda c: pred(*c), name=f"GammaL(T={sorted(T)},{n},{m})")
    Lsh = l_quotient(n, m, truncation)
    # H -> [n,m] -> L[n,m], descended along H -> G
    h_to_l = BisimplicialMap(H, Lsh.obj, lambda bd, c: Lsh.quotient.components[bd][c])
    inc = descend(qH, h_to_l)
    return Shape(G, inc, qH)


# ---------------------------------------------------------------------------
# shape specifications


SHAPE_KINDS = ("representable", "boundary", "spine-h", "spine-v", "horn",
               "lower-triangle", "L-quotient", "gamma-L")


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    n: int = 1
    m: int = 1
    S: tuple[int, ...] = ()
    T: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "ShapeSpec":
        """Parse ``kind:key=value:...``; set values are comma separated,
        e.g. ``horn:S=1:T=:n=2:m=1``."""
        parts = text.strip().split(":")
        kind = parts[0]
        if kind not in SHAPE_KINDS:
            raise ValueError(f"unknown shape kind {kind!r}")
        kw: dict[str, Any] = {}
        for p in parts[1:]:
            if "=" not in p:
                raise ValueError(f"malformed shape parameter {p!r}")
            k, v = p.split("=", 1)
            if k in ("S", "T"):
                kw[k] = tuple(int(x) for x in v.split(",") if x != "")
            elif k in ("n", "m"):
                kw[k] = int(v)
            else:
                raise ValueError(f"unknown shape parameter {k!r}")
        if kind == "lower-triangle":
            kw.setdefault("n", 1)
            kw.setdefault("m", 1)
        return cls(kind, **kw)

    def __str__(self) -> str:
        if self.kind == "lower-triangle":
            return "lower-triangle"
        fields = []
        if self.kind == "horn":
            fields.append("S=" + ",".join(map(str, self.S)))
        if self.kind in ("horn", "gamma-L"):
            fields.append("T=" + ",".join(map(str, self.T)))
        fields += [f"n={self.n}", f"m={self.m}"]
        return ":".join([self.kind] + fields)


def build_shape(spec: ShapeSpec | str, truncation=DEFAULT_TRUNCATION) -> Shape:
    if isinstance(spec, str):
        spec = ShapeSpec.parse(spec)
    k, n, m = spec.kind, spec.n, spec.m
    if n < 0 or m < 0:
        raise ValueError("negative degree")
    R = representable(n, m, truncation)
    if k == "representable":
        sh = Shape(R, identity_map(R))
    elif k in ("boundary", "spine-h", "spine-v", "horn"):
        if k == "boundary":
            A = boundary(n, m, truncation)
        elif k == "horn":
            A = horn(spec.S, spec.T, n, m, truncation)
        else:
            A = spine(k[-1], n, m, truncation)
        sh = Shape(A, inclusion_map(A, R))
    elif k == "lower-triangle":
        sh = lower_triangle(truncation)
    elif k == "L-quotient":
        sh = l_quotient(n, m, truncation)
    elif k == "gamma-L":
        sh = gamma_l(spec.T, n, m, truncation)
    else:
        raise ValueError(f"unknown shape kind {k!r}")
    sh.spec = spec
    return sh


# ---------------------------------------------------------------------------
# colimits, products, dualities


def pushout(f: BisimplicialMap, g: BisimplicialMap):
    """Levelwise pushout of ``B <-f- A -g-> C``.

    Returns ``(P, (iB, iC))``.  A cell of ``P`` is the smallest tagged member
    ``(0, b)`` or ``(1, c)`` of its class."""
    if f.source is not g.source:
        raise ValueError("pushout legs must share their source")
    A, B, C = f.source, f.target, g.target
    if not (A.truncation == B.truncation == C.truncation):
        raise ValueError("truncation mismatch")
    reps: dict[tuple[int, int], dict] = {}
    for bd in A.bidegrees():
        parent: dict = {}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for b in B.level(*bd):
            parent[(0, b)] = (0, b)
        for c in C.level(*bd):
            parent[(1, c)] = (1, c)
        for a in A.level(*bd):
            x, y = find((0, f.components[bd][a])), find((1, g.components[bd][a]))
            if x != y:
                if sortkey(y) < sortkey(x):
                    x, y = y, x
                parent[y] = x
        reps[bd] = {e: find(e) for e in parent}

    def levels(n, m):
        return set(reps[(n, m)].values())

    def op(kind, i, n, m, cell):
        t, x = cell
        X = B if t == 0 else C
        y = X.apply(kind, i, n, m, x)
        return reps[target_bidegree(kind, n, m)][(t, y)]

    P = FinBisimplicialSet(A.truncation, levels, op, name=f"{B.name}+{C.name}")
    iB = BisimplicialMap(B, P, lambda bd, b: reps[bd][(0, b)])
    iC = BisimplicialMap(C, P, lambda bd, c: reps[bd][(1, c)])
    return P, (iB, iC)


def product(X: FinBisimplicialSet, Y: FinBisimplicialSet) -> FinBisimplicialSet:
    if X.truncation != Y.truncation:
        raise ValueError("truncation mismatch")

    def levels(n, m):
        return list(_iproduct(X.level(n, m), Y.level(n, m)))

    def op(kind, i, n, m, cell):
        return (X.apply(kind, i, n, m, cell[0]), Y.apply(kind, i, n, m, cell[1]))

    return FinBisimplicialSet(X.truncation, levels, op, name=f"{X.name}x{Y.name}")


DUALITIES = ("transpose", "hop", "vop")


def _relabel(which: str, ambient):
    """Cell relabelling that turns the dual of a sub-presheaf of ``[n, m]`` back
    into a sub-presheaf of the matching representable."""
    if ambient is None or ambient[0] != "rep":
        return None, ambient
    _, n, m = ambient
    if which == "transpose":
        return (lambda c: (c[1], c[0])), ("rep", m, n)
    if which == "hop":
        return (lambda c: (tuple(n - x for x in reversed(c[0])), c[1])), ambient
    return (lambda c: (c[0], tuple(m - x for x in reversed(c[1])))), ambient


def dualize(X: FinBisimplicialSet, which: str) -> FinBisimplicialSet:
    """Transpose (swap directions), hop (reverse horizontal order) or vop."""
    if which not in DUALITIES:
        raise ValueError(f"unknown duality {which!r}")
    N, M = X.truncation
    rl, amb = _relabel(which, X.ambient)
    r = rl or (lambda c: c)

    if which == "transpose":
        trunc = (M, N)

        def levels(n, m):
            return [r(c) for c in X.level(m, n)]

        swap = {"hf": "vf", "hd": "vd", "vf": "hf", "vd": "hd"}

        def op(kind, i, n, m, cell):
            return r(X.apply(swap[kind], i, m, n, r(cell)))
    else:
        trunc = (N, M)
        d = "h" if which == "hop" else "v"

        def levels(n, m):
            return [r(c) for c in X.level(n, m)]

        def op(kind, i, n, m, cell):
            if kind[0] == d:
                top = n if d == "h" else m
                # faces and degeneracies are reindexed i -> top - i
                i = top - i
            return r(X.apply(kind, i, n, m, r(cell)))

    Y = FinBisimplicialSet(trunc, levels, op, name=f"{X.name}^{which}", ambient=amb)
    Y._dual_relabel = r
    return Y


def dualize_map(f: BisimplicialMap, which: str, source=None, target=None) -> BisimplicialMap:
    S = source or dualize(f.source, which)
    T = target or dualize(f.target, which)
    rs, rt = S._dual_relabel, T._dual_relabel
    comps = {}
    for bd, comp in f.components.items():
        nbd = (bd[1], bd[0]) if which == "transpose" else bd
        comps[nbd] = {rs(c): rt(v) for c, v in comp.items()}
    return BisimplicialMap(S, T, comps)


# ---------------------------------------------------------------------------
# maps into a presheaf: constraint search


class _Plan:
    """Search plan for maps ``A -> X``: nondegenerate cells of ``A`` in order
    of total degree, each with its faces expressed through earlier cells."""

    def __init__(self, A: FinBisimplicialSet):
        self.A = A
        order = []
        for bd in sorted(A.bidegrees(), key=lambda t: (t[0] + t[1], t)):
            for c in A.nondegenerate(*bd):
                order.append((bd, c))
        self.order = order
        self.pos = {(bd, c): k for k, (bd, c) in enumerate(order)}
        faces = []
        for bd, c in order:
            n, m = bd
            fl = []
            for kind, rng in (("hf", n if n >= 1 else -1), ("vf", m if m >= 1 else -1)):
                for i in range(rng + 1):
                    tb = target_bidegree(kind, n, m)
                    base, bbd, ops = A.ez(A.apply(kind, i, n, m, c), *tb)
                    fl.append((self.pos[(bbd, base)], bbd, ops))
            faces.append(tuple(fl))
        self.faces = faces

    def extend(self, X: FinBisimplicialSet, vals: list) -> dict:
        A = self.A
        comps = {}
        for bd in A.bidegrees():
            d = {}
            for c in A.level(*bd):
                base, bbd, ops = A.ez(c, *bd)
                d[c] = X.apply_ops(vals[self.pos[(bbd, base)]], bbd, ops)
            comps[bd] = d
        return comps


def _search(A: FinBisimplicialSet, X: FinBisimplicialSet, fixed: Mapping | None = None,
            budget: Budget | None = None, plan: _Plan | None = None) -> Iterator[list]:
    """Yield value lists (aligned with ``plan.order``) of all maps ``A -> X``
    agreeing with ``fixed`` (keyed by ``(bidegree, cell)``) on nondegenerate cells."""
    if A.truncation != X.truncation:
        raise ValueError("truncation mismatch")
    plan = plan or _Plan(A)
    budget = budget or Budget()
    K = len(plan.order)
    fixed = fixed or {}
    fixed_vals = [fixed.get(key, _MISSING) for key in plan.order]
    vals: list = [None] * K
    cands: list = [None] * K
    ptr = [0] * K
    if K == 0:
        yield []
        return
    k = 0
    while k >= 0:
        if k == K:
            yield list(vals)
            k -= 1
            continue
        if cands[k] is None:
            bd = plan.order[k][0]
            key = tuple(X.apply_ops(vals[p], bbd, ops) for p, bbd, ops in plan.faces[k])
            lst = X.cells_with_faces(bd[0], bd[1], key)
            fv = fixed_vals[k]
            if fv is not _MISSING:
                lst = (fv,) if fv in lst else ()
            cands[k] = lst
            ptr[k] = 0
        if ptr[k] < len(cands[k]):
            vals[k] = cands[k][ptr[k]]
            ptr[k] += 1
            budget.spend()
            k += 1
            if k < K:
                cands[k] = None
        else:
            cands[k] = None
            k -= 1


def iter_maps(A: FinBisimplicialSet, X: FinBisimplicialSet, fixed: Mapping | None = None,
              budget: int | Budget | None = None) -> Iterator[BisimplicialMap]:
    b = budget if isinstance(budget, Budget) else Budget(budget)
    plan = _Plan(A)
    for vals in _search(A, X, fixed, b, plan):
        yield BisimplicialMap(A, X, plan.extend(X, vals))


def hom_set(A: FinBisimplicialSet, X: FinBisimplicialSet, budget: int | None = None) -> list[BisimplicialMap]:
    """All maps ``A -> X`` at the common truncation, in deterministic order."""
    return list(iter_maps(A, X, budget=budget))


def count_maps(A: FinBisimplicialSet, X: FinBisimplicialSet, fixed: Mapping | None = None,
               budget: int | Budget | None = None, limit: int | None = None) -> int:
    b = budget if isinstance(budget, Budget) else Budget(budget)
    n = 0
    for _ in _search(A, X, fixed, b):
        n += 1
        if limit is not None and n >= limit:
            break
    return n


def fixed_from_map(f: BisimplicialMap, i: BisimplicialMap | None = None) -> dict:
    """Constraints ``{(bd, i(a)): f(a)}`` on nondegenerate cells, for lifting along ``i``."""
    out = {}
    for bd in f.source.bidegrees():
        for a in f.source.nondegenerate(*bd):
            b = i.components[bd][a] if i is not None else a
            out[(bd, b)] = f.components[bd][a]
    return out


@dataclass
class LiftResult:
    unique: bool
    counterexample: Any = None
    n_maps: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.unique


def has_unique_lift(i: BisimplicialMap, X: FinBisimplicialSet, budget: int | None = None,
                    method: str = "auto") -> LiftResult:
    """Does every map ``A -> X`` extend uniquely along the mono ``i: A -> B``?"""
    if not i.is_injective():
        raise ValueError("has_unique_lift needs a levelwise injective map")
    B = i.target
    fast = (method in ("auto", "generators") and B.ambient is not None and B.ambient[0] == "rep"
            and i.source.ambient == B.ambient
            and all(v == c for comp in i.components.values() for c, v in comp.items()))
    if method == "generators" and not fast:
        raise ValueError("generator method needs a sub-presheaf of a representable")
    if fast:
        return _lift_generators(i.source, B.ambient[1], B.ambient[2], X, Budget(budget))
    b = Budget(budget)
    bplan = _Plan(B)
    total = 0
    for f in iter_maps(i.source, X, budget=b):
        total += 1
        fixed = fixed_from_map(f, i)
        k = 0
        for _ in _search(B, X, fixed, b, bplan):
            k += 1
            if k > 1:
                break
        if k != 1:
            return LiftResult(False, f, total, f"{k if k == 0 else 'several'} extensions")
    return LiftResult(True, None, total)


def _lift_generators(A: FinBisimplicialSet, n: int, m: int, X: FinBisimplicialSet, budget: Budget) -> LiftResult:
    """Unique lifting for a sub-presheaf ``A`` of ``[n, m]``.

    ``A`` is the union of the sub-representables spanned by its maximal
    nondegenerate cells, so a map out of ``A`` is a family of cells of ``X``,
    one per generator, agreeing on pairwise intersections.  Unique lifting
    means restriction from ``X_{n,m}`` to such families is bijective."""
    if n > X.truncation[0] or m > X.truncation[1]:
        raise ValueError("shape exceeds the truncation of the target")
    nd = []
    for bd in A.bidegrees():
        for (a, b) in A.level(*bd):
            if len(set(a)) == len(a) and len(set(b)) == len(b):
                nd.append((frozenset(a), frozenset(b)))
    gens = [g for g in nd if not any(g != h and g[0] <= h[0] and g[1] <= h[1] for h in nd)]
    return _lift_from_generators(gens, n, m, X, budget)


def horn_generators(S: Iterable[int], T: Iterable[int], n: int, m: int) -> list[tuple[frozenset, frozenset]]:
    """Maximal faces of ``Lambda^{S,T}[n,m]``: one per missing vertex outside ``S`` or ``T``."""
    S, T = set(S), set(T)
    full_a, full_b = frozenset(range(n + 1)), frozenset(range(m + 1))
    gens = [(full_a - {i}, full_b) for i in range(n + 1) if i not in S]
    gens += [(full_a, full_b - {j}) for j in range(m + 1) if j not in T]
    return [g for g in gens if g[0] and g[1]]


def horn_has_unique_lift(S: Iterable[int], T: Iterable[int], n: int, m: int, X: FinBisimplicialSet,
                         budget: int | None = None) -> LiftResult:
    """Unique lifting against ``Lambda^{S,T}[n,m] -> [n,m]`` from the closed-form generators."""
    if not set(S) <= set(range(n + 1)) or not set(T) <= set(range(m + 1)):
        raise ValueError(f"invalid horn parameters S={sorted(S)} T={sorted(T)} for [{n},{m}]")
    return _lift_from_generators(horn_generators(S, T, n, m), n, m, X, Budget(budget))


def _lift_from_generators(gens, n: int, m: int, X: FinBisimplicialSet, budget: Budget) -> LiftResult:
    if n > X.truncation[0] or m > X.truncation[1]:
        raise ValueError("shape exceeds the truncation of the target")
    gens = sorted(gens, key=lambda g: (-len(g[0]) - len(g[1]), sorted(g[0]), sorted(g[1])))
    gtup = [(tuple(sorted(g[0])), tuple(sorted(g[1]))) for g in gens]

    def pos_in(sub, sup):
        return tuple(sup.index(x) for x in sub)

    inter = []  # for gen k: list of (p, coords in k, coords in p)
    for k, (ak, bk) in enumerate(gtup):
        lst = []
        for p in range(k):
            ap_, bp = gtup[p]
            ia = tuple(sorted(set(ak) & set(ap_)))
            ib = tuple(sorted(set(bk) & set(bp)))
            if ia and ib:
                lst.append((p, (pos_in(ia, ak), pos_in(ib, bk)), (pos_in(ia, ap_), pos_in(ib, bp))))
        inter.append(lst)

    bds = [(len(ak) - 1, len(bk) - 1) for ak, bk in gtup]
    indexes = []
    for k in range(len(gtup)):
        tabs = [X.restriction(bds[k], ca, cb) for _, (ca, cb), _ in inter[k]]
        idx: dict = {}
        for x in X.level(*bds[k]):
            idx.setdefault(tuple(t[x] for t in tabs), []).append(x)
        indexes.append(idx)
    # restriction tables used to build the lookup key of generator k
    keytabs = [[(p, X.restriction(bds[p], pa, pb)) for p, _, (pa, pb) in inter[k]]
               for k in range(len(gtup))]

    seen: dict = {}
    for x in X.level(n, m):
        fam = tuple(X.restriction((n, m), a, b)[x] for a, b in gtup)
        if fam in seen:
            return LiftResult(False, fam, 0, "two cells restrict to the same family")
        seen[fam] = x

    K = len(gtup)
    vals: list = [None] * K
    state = {"count": 0, "orphan": None}

    def rec(k):
        if k == K:
            state["count"] += 1
            if state["orphan"] is None and tuple(vals) not in seen:
                state["orphan"] = tuple(vals)
            return
        key = tuple(t[vals[p]] for p, t in keytabs[k])
        for x in indexes[k].get(key, ()):
            budget.spend()
            vals[k] = x
            rec(k + 1)
            if state["orphan"] is not None:
                return

    rec(0)
    if state["orphan"] is not None:
        return LiftResult(False, state["orphan"], state["count"], "family without a filler")
    return LiftResult(True, None, state["count"])


# ---------------------------------------------------------------------------
# Segal condition


def _spine_ok(X: FinBisimplicialSet, d: str, n: int, m: int) -> tuple[bool, str]:
    bd = (n, m)
    deg = n if d == "h" else m
    edge_bd = (1, m) if d == "h" else (n, 1)
    pt_bd = (0, m) if d == "h" else (n, 0)
    f = "hf" if d == "h" else "vf"
    ident_other = tuple(range((m if d == "h" else n) + 1))
    images = set()
    for x in X.level(*bd):
        parts = []
        for k in range(deg):
            if d == "h":
                parts.append(X.act(x, bd, (k, k + 1), ident_other))
            else:
                parts.append(X.act(x, bd, ident_other, (k, k + 1)))
        images.add(tuple(parts))
    if len(images) != X.size(*bd):
        return False, f"spine map at {bd} ({d}) is not injective"
    # count composable chains of edges
    src, tgt = {}, {}
    for e in X.level(*edge_bd):
        src[e] = X.apply(f, 1, edge_bd[0], edge_bd[1], e)
        tgt[e] = X.apply(f, 0, edge_bd[0], edge_bd[1], e)
    ways = {p: 1 for p in X.level(*pt_bd)}
    for _ in range(deg):
        new: dict = {}
        for e in X.level(*edge_bd):
            w = ways.get(src[e], 0)
            if w:
                new[tgt[e]] = new.get(tgt[e], 0) + w
        ways = new
    chains = sum(ways.values())
    if chains != len(images):
        return False, f"spine map at {bd} ({d}) misses {chains - len(images)} chains"
    return True, ""


def segal_report(X: FinBisimplicialSet) -> list[str]:
    N, M = X.truncation
    out = []
    for n in range(2, N + 1):
        for m in range(M + 1):
            ok, msg = _spine_ok(X, "h", n, m)
            if not ok:
                out.append(msg)
    for m in range(2, M + 1):
        for n in range(N + 1):
            ok, msg = _spine_ok(X, "v", n, m)
            if not ok:
                out.append(msg)
    return out


def is_segal(X: FinBisimplicialSet) -> bool:
    """Spine restrictions are bijective in both directions at every in-range bidegree."""
    return not segal_report(X)


def non_convex_horns(max_n: int = 3, max_m: int = 3) -> list[tuple[tuple[int, ...], tuple[int, ...], int, int]]:
    """All ``(S, T, n, m)`` with ``[n]-S`` or ``[m]-T`` non-convex."""
    from itertools import combinations

    def subsets(k):
        pts = range(k + 1)
        return [c for r in range(k + 2) for c in combinations(pts, r)]

    out = []
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            for S in subsets(n):
                for T in subsets(m):
                    cs = [i for i in range(n + 1) if i not in S]
                    ct = [j for j in range(m + 1) if j not in T]
                    if not is_convex(cs) or not is_convex(ct):
                        out.append((S, T, n, m))
    return out


def levelwise_bijection(f: Callable[[tuple[int, int], Any], Any], X: FinBisimplicialSet,
                        Y: FinBisimplicialSet) -> BisimplicialMap | None:
    """Build ``X -> Y`` from a cell function; return it if it is an isomorphism."""
    if X.truncation != Y.truncation:
        return None
    g = BisimplicialMap(X, Y, f)
    return g if g.is_isomorphism() else None


__all__ = [
    "FinBisimplicialSet", "BisimplicialMap", "Shape", "ShapeSpec", "LiftResult",
    "representable", "terminal", "horn", "boundary", "spine", "lower_triangle", "l_quotient",
    "gamma_l", "build_shape", "collapse", "pushout", "product", "dualize", "dualize_map",
    "hom_set", "iter_maps", "count_maps", "has_unique_lift", "horn_generators", "horn_has_unique_lift", "is_segal", "segal_report",
    "identity_map", "inclusion_map", "descend", "is_subpresheaf", "non_convex_horns",
    "fixed_from_map", "levelwise_bijection", "target_bidegree", "KINDS",
]
