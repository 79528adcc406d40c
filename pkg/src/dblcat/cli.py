"""``dblcat`` command line.

Exit codes: 0 success, 1 validation or property failure, 2 unreadable or
missing input, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import _util
from ._util import BudgetExceeded, sortkey, thaw
from .catalog import load_catalog, load_file
from .double_cat import (
    CompanionshipData, FinDoubleCategory, FinTwoCategory, InvalidStructure, counits_for_unit,
    embed_2cat, find_companions, fragment, nerve_level_size, unit_shaped_squares,
)
from .freeliving import (
    comp_presheaf, count_extensions, extend_companionship, sigma, staircase_str,
)
from .functor_dbl import companion_characterization, dbl_fun, fun_lax, lax_adjoint_characterization
from .gray_sq import globe_grid, gray_grid, squares_dblcat
from .suites import MissingInput, records_json, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Failure(Exception):
    """A check ran and the property does not hold."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


def _emit(fmt: str, payload, table_lines) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=1))
    else:
        for line in table_lines():
            click.echo(line)


def common(fn):
    """Shared flags plus uniform error-to-exit-code mapping."""

    @click.option("--levels", nargs=2, type=int, default=(3, 3), show_default=True,
                  help="Truncation N M.")
    @click.option("--budget", type=int, default=None, help="Enumeration cap (default 10^7).")
    @click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
    @functools.wraps(fn)
    def wrapper(*args, levels, budget, fmt, **kw):
        if min(levels) < 0:
            raise click.BadParameter("levels must be non-negative", param_hint="--levels")
        saved = _util.default_budget()
        if budget is not None:
            _util.set_default_budget(budget)
        try:
            fn(*args, levels=tuple(levels), budget=budget, fmt=fmt, **kw)
        except Failure as e:
            if e.payload is not None:
                _emit(fmt, e.payload, lambda: [])
            click.echo(f"FAIL: {e}", err=True)
            sys.exit(EXIT_FAIL)
        except InvalidStructure as e:
            click.echo(f"FAIL: {e}", err=True)
            sys.exit(EXIT_FAIL)
        except BudgetExceeded as e:
            click.echo(f"budget exceeded: {e}", err=True)
            sys.exit(EXIT_BUDGET)
        except (OSError, ValueError, KeyError, MissingInput) as e:
            click.echo(f"input error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        finally:
            _util.set_default_budget(saved)

    return wrapper


def _load(path: str, want=None):
    obj = load_file(path)
    if want is not None and not isinstance(obj, want):
        raise ValueError(f"{path}: expected a {'double' if want is FinDoubleCategory else 'two'} category")
    return obj


def _as_double(path: str) -> FinDoubleCategory:
    obj = load_file(path)
    if isinstance(obj, FinTwoCategory):
        return embed_2cat(obj, "vertical")
    return obj


def _resolve_unit(D: FinDoubleCategory, unit: str) -> str:
    if unit in D.squares:
        return unit
    if unit.startswith("u") and unit[1:].isdigit():
        units = [u for u in unit_shaped_squares(D) if counits_for_unit(D, u)]
        k = int(unit[1:])
        if k < len(units):
            return units[k]
        raise ValueError(f"only {len(units)} companionship units, no {unit}")
    raise ValueError(f"no square named {unit!r}")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Finite double categories, nerves and companionship combinatorics."""


# -- structures -------------------------------------------------------------

@main.command()
@click.argument("what", type=click.Choice(["axioms", "thmC", "thmD"]))
@click.argument("file", required=False)
@click.option("--x", "xfile", help="Source fixture (thmC, thmD).")
@click.option("--d", "dfile", help="Target fixture (thmC, thmD).")
@common
def check(what, file, xfile, dfile, levels, budget, fmt):
    """Check axioms of FILE, or a recognition theorem on --x/--d."""
    if what == "axioms":
        if not file:
            raise ValueError("check axioms needs a FILE")
        obj = load_file(file)
        viol = obj.check_axioms(first_only=False)
        payload = {"name": obj.name, "valid": not viol,
                   "violations": [{"identity": v.identity, "witnesses": list(v.witnesses)} for v in viol]}
        if viol:
            raise Failure(str(viol[0]), payload)
        _emit(fmt, payload, lambda: [f"{obj.name}: all axioms hold"])
        return
    if not xfile or not dfile:
        raise ValueError(f"check {what} needs --x and --d")
    if what == "thmC":
        FD = dbl_fun(_as_double(xfile), _as_double(dfile), budget)
        rows = []
        for H in sorted(FD.h_arrows, key=sortkey):
            r = companion_characterization(FD, H)
            rows.append({"transformation": H, "is_companion": r.is_companion,
                         "squares_companionable": r.squares_companionable,
                         "witness": r.witness, "witness_matches": r.witness_matches, "agree": r.agree})
    else:
        X, Y = _load(xfile, FinTwoCategory), _load(dfile, FinTwoCategory)
        FL = fun_lax(X, Y, budget)
        rows = []
        for H in sorted(FL.h_arrows, key=sortkey):
            r = lax_adjoint_characterization(FL, Y, H)
            rows.append({"transformation": H, "right_adjoint": r.right_adjoint,
                         "has_conjoint": r.has_conjoint, "pointwise": r.pointwise,
                         "left_adjoint": r.left_adjoint, "left_adjoint_ok": r.left_adjoint_ok,
                         "agree": r.agree})
    payload = {"check": what, "results": rows, "ok": all(r["agree"] for r in rows)}
    bad = [r["transformation"] for r in rows if not r["agree"]]
    if bad:
        raise Failure(f"conditions disagree at {', '.join(bad)}", payload)
    _emit(fmt, payload, lambda: [" ".join(f"{k}={v}" for k, v in r.items()) for r in rows]
          + [f"{what}: {len(rows)} transformations, all agree"])


@main.command("nerve")
@click.argument("file")
@common
def nerve_cmd(file, levels, budget, fmt):
    """Nerve of a double category, truncated at --levels."""
    D = _load(file, FinDoubleCategory)
    D.ensure_valid()
    X = D.nerve(*levels)
    if fmt == "json":
        _emit(fmt, X.to_json(), None)
        return
    for n, m in X.bidegrees():
        click.echo(f"{n},{m}\t{nerve_level_size(D, n, m)}")


@main.command("fragment")
@click.argument("file")
@click.argument("which", type=click.Choice(["horizontal", "vertical"]))
@common
def fragment_cmd(file, which, levels, budget, fmt):
    """Horizontal or vertical fragment as a 2-category."""
    D = _load(file, FinDoubleCategory)
    D.ensure_valid()
    K = fragment(D, which)
    _emit(fmt, K.to_json(), lambda: [repr(K)] + [f"{f}: {s} -> {t}" for f, (s, t) in sorted(K.one_cells.items())])


def _companions(file, arrow, direction, fmt):
    D = _load(file, FinDoubleCategory)
    D.ensure_valid()
    arrows = [arrow] if arrow else sorted(D.v_arrows, key=sortkey)
    for f in arrows:
        if f not in D.v_arrows:
            raise ValueError(f"no vertical arrow named {f!r}")
    key = "F" if direction == "companion" else "Fprime"
    rows = []
    for f in arrows:
        for c in find_companions(D, f, direction):
            rows.append({"f": f, key: getattr(c, key), "unit": c.unit, "counit": c.counit})
    _emit(fmt, rows, lambda: [f"{r['f']}\t{r[key]}\tunit {r['unit']}\tcounit {r['counit']}" for r in rows])


@main.command()
@click.argument("file")
@click.argument("arrow", required=False)
@common
def companion(file, arrow, levels, budget, fmt):
    """Companions of vertical arrows, with units and counits."""
    _companions(file, arrow, "companion", fmt)


@main.command()
@click.argument("file")
@click.argument("arrow", required=False)
@common
def conjoint(file, arrow, levels, budget, fmt):
    """Conjoints of vertical arrows, with units and counits."""
    _companions(file, arrow, "conjoint", fmt)


# -- free-living companionship ---------------------------------------------

@main.command()
@click.argument("file")
@click.option("--unit", required=True, help="Square name, or uK for the K-th companionship unit.")
@common
def extend(file, unit, levels, budget, fmt):
    """Extend a companionship unit to a map from comp."""
    D = _load(file, FinDoubleCategory)
    D.ensure_valid()
    u = _resolve_unit(D, unit)
    counits = counits_for_unit(D, u)
    if not counits:
        raise Failure(f"square {u} is not a companionship unit")
    t, b, l, r = D.squares[u]
    ext = extend_companionship(D, CompanionshipData(r, b, u, counits[0]), *levels)
    problems = ext.problems(limit=1)
    if problems:
        raise Failure(problems[0])
    payload = {"unit": u, "f": r, "F": b, "counit": counits[0], "truncation": list(levels),
               "levels": {f"{n},{m}": [[staircase_str(s), thaw(c)] for s, c in sorted(ext.components[(n, m)].items())]
                          for n, m in ext.source.bidegrees()}}
    _emit(fmt, payload, lambda: [f"unit {u}: f={r} F={b} counit={counits[0]}"]
          + [f"{k}\t{len(v)} cells" for k, v in payload["levels"].items()])


@main.command("count-extensions")
@click.argument("file")
@click.option("--unit", required=True, help="Square name, or uK for the K-th companionship unit.")
@common
def count_extensions_cmd(file, unit, levels, budget, fmt):
    """Count maps comp -> N(D) sending sigma_1 to the square."""
    D = _load(file, FinDoubleCategory)
    u = _resolve_unit(D, unit)
    k = count_extensions(D, u, *levels, budget=budget)
    _emit(fmt, {"unit": u, "truncation": list(levels), "count": k}, lambda: [f"count {k}"])


def _stairs(n, m, which, fmt):
    cells = comp_presheaf(n, m, which).level(n, m)
    rows = [staircase_str(s) for s in cells]
    _emit(fmt, rows, lambda: rows)


@main.command()
@click.argument("n", type=click.IntRange(0))
@click.argument("m", type=click.IntRange(0))
@common
def comp(n, m, levels, budget, fmt):
    """Staircases of bidegree (n, m)."""
    _stairs(n, m, "comp", fmt)


@main.command()
@click.argument("n", type=click.IntRange(0))
@click.argument("m", type=click.IntRange(0))
@common
def conj(n, m, levels, budget, fmt):
    """Cells of conj of bidegree (n, m)."""
    _stairs(n, m, "conj", fmt)


@main.command("sigma")
@click.argument("n", type=click.IntRange(0))
@common
def sigma_cmd(n, levels, budget, fmt):
    """The staircase sigma_n."""
    s = staircase_str(sigma(n))
    _emit(fmt, s, lambda: [s])


# -- squares and Gray grids -------------------------------------------------

def _two_cat_lines(K):
    return [repr(K)] + [f"{f}: {s} -> {t}" for f, (s, t) in sorted(K.one_cells.items(), key=sortkey)]


@main.command()
@click.argument("n", type=click.IntRange(0))
@click.argument("m", type=click.IntRange(0))
@common
def gray(n, m, levels, budget, fmt):
    """The Gray grid [n] (x) [m] as a 2-category."""
    K = gray_grid(n, m)
    _emit(fmt, K.to_json(), lambda: _two_cat_lines(K))


@main.command()
@click.argument("n", type=click.IntRange(0))
@click.argument("m", type=click.IntRange(0))
@common
def globe(n, m, levels, budget, fmt):
    """The globular grid of bidegree (n, m) as a 2-category."""
    K = globe_grid(n, m)
    _emit(fmt, K.to_json(), lambda: _two_cat_lines(K))


@main.command()
@click.argument("file")
@common
def sq(file, levels, budget, fmt):
    """The squares double category Sq(X) of a locally posetal 2-category."""
    X = _load(file, FinTwoCategory)
    viol = X.check_axioms()
    if viol:
        raise Failure(f"{X.name or file} violates {viol[0]}")
    D = squares_dblcat(X)
    N, M = levels
    sizes = {f"{n},{m}": nerve_level_size(D, n, m) for n in range(N + 1) for m in range(M + 1)}
    if fmt == "json":
        out = D.to_json()
        out["nerve_sizes"] = sizes
        _emit(fmt, out, None)
    else:
        click.echo(repr(D))
        for k, v in sizes.items():
            click.echo(f"{k}\t{v}")


# -- functor double categories ------------------------------------------------

def _fd_payload(FD):
    out = FD.to_json()
    out["functors"] = {P: [dict(x) for x in maps] for P, maps in FD.functors.items()}
    out["htrans"] = {H: [a, s] for H, (a, s) in FD.htrans.items()}
    out["vtrans"] = {V: [b, s] for V, (b, s) in FD.vtrans.items()}
    out["tsquares"] = dict(FD.tsquares)
    return out


def _fd_lines(FD):
    return [repr(FD)] + [f"{H}: {s} -> {t}" for H, (s, t) in sorted(FD.h_arrows.items(), key=sortkey)]


@main.command()
@click.argument("cfile")
@click.argument("dfile")
@common
def dblfun(cfile, dfile, levels, budget, fmt):
    """The functor double category from C to D."""
    FD = dbl_fun(_as_double(cfile), _as_double(dfile), budget)
    _emit(fmt, _fd_payload(FD), lambda: _fd_lines(FD))


@main.command()
@click.argument("xfile")
@click.argument("yfile")
@common
def funlax(xfile, yfile, levels, budget, fmt):
    """Functors X -> Y with lax transformations, as a double category."""
    FL = fun_lax(_load(xfile, FinTwoCategory), _load(yfile, FinTwoCategory), budget)
    _emit(fmt, _fd_payload(FL), lambda: _fd_lines(FL))


# -- suites ----------------------------------------------------------------------

@main.command()
@click.argument("name", type=click.Choice(["all", "horns", "filtration", "thmC", "thmD", "fragments"]))
@click.option("--fixtures", default="fixtures", show_default=True, type=click.Path(),
              help="Fixture directory.")
@common
def verify(name, fixtures, levels, budget, fmt):
    """Run a property suite over the fixture catalog."""
    if not Path(fixtures).is_dir():
        raise MissingInput(f"fixture directory {fixtures} not found")
    catalog = load_catalog(fixtures)
    records = run_suite(name, catalog, levels)
    payload = {"suite": name, "records": records_json(records),
               "ok": all(r.status == "pass" for r in records)}
    _emit(fmt, payload, lambda: [f"{r.status.upper():6} {r.suite:10} {r.subject}  {r.detail}" for r in records])
    if any(r.status == "fail" for r in records):
        sys.exit(EXIT_FAIL)
    if any(r.status == "budget" for r in records):
        sys.exit(EXIT_BUDGET)


if __name__ == "__main__":  # pragma: no cover
    main()
