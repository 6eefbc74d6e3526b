"""Instance builders, checker dispatch and the suite runner."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..errors import ConfigurationError, RanklabError, UsageError
from ..generators import (idempotent_family, idempotent_pair, idempotent_triple, matrix_pair, matrix_triple,
                          projector_pair, random_idempotent, random_square, sample_equation_solutions,
                          spectral_square)
from ..geninv import sample_gen_inverse
from ..matrix import Matrix, range_contained
from ..rng import make_rng, random_rank_matrix, small_rational
from ..scalar import QI, ExactScalar, FieldSpec
from .base import Ctx, Fact, Miss, Rel

RESAMPLE_BUDGET = 16
MAX_PAYLOADS = 5

_IMAG = ExactScalar(0, 1)
_SQUARE_EIGS = (0, 0, 1, -1, 2, _IMAG, -_IMAG)


# -- instance builders -----------------------------------------------------------
# Each returns a dict of named matrices (a list under "family").  Instances are
# always drawn over Q(i) and moved into the entry's field afterwards.

def _pick(rng, modes):
    if not modes:
        return None
    return modes[int(rng.integers(len(modes)))]


def _rank_mat(rng, rows, cols):
    return random_rank_matrix(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)))


def _b_square(m, rng, mode):
    if rng.integers(4) == 0:
        return {"A": random_square(m, rng)}
    return {"A": spectral_square(m, rng, QI, _SQUARE_EIGS)}


def _b_hh25(m, rng, mode):
    n = int(rng.integers(1, m + 2))
    A = _rank_mat(rng, m, n)
    B = sample_gen_inverse(A, "1", rng).inverse if rng.integers(2) else _rank_mat(rng, n, m)
    return {"A": A, "B": B}


def _b_hh27(m, rng, mode):
    n, p, q = (int(rng.integers(1, m + 2)) for _ in range(3))
    return {"A": _rank_mat(rng, m, n), "X": _rank_mat(rng, n, p), "B": _rank_mat(rng, p, q),
            "Y": _rank_mat(rng, q, m)}


def _b_idem_pair(m, rng, mode):
    A, B = idempotent_pair(m, rng, QI, mode)
    return {"A": A, "B": B}


def _b_proj_pair(m, rng, mode):
    A, B = projector_pair(m, rng, QI, mode)
    return {"A": A, "B": B}


def _b_star_pair(m, rng, mode):
    A = random_idempotent(m, int(rng.integers(0, m + 1)), rng)
    return {"A": A, "B": A.H}


def _b_triple(m, rng, mode):
    return dict(zip("ABC", idempotent_triple(m, rng, QI, mode)))


def _b_commuting_triple(m, rng, mode):
    return dict(zip("ABC", idempotent_triple(m, rng, QI, "commuting")))


def _b_family(m, rng, mode):
    return {"family": idempotent_family(m, int(rng.integers(2, 5)), rng)}


def _b_equation(kind):
    def build(m, rng, mode):
        out = sample_equation_solutions(kind, m, rng)
        return dict(zip("MXY" if kind == "z1" else "ABXY", out))
    return build


def _b_matrix_pair(m, rng, mode):
    A, B = matrix_pair(m, rng, QI, mode)
    return {"A": A, "B": B}


def _b_matrix_triple(m, rng, mode):
    return dict(zip("ABC", matrix_triple(m, rng)))


def _b_k42(m, rng, mode):
    A, B = matrix_pair(m, rng, QI, mode)
    l = int(rng.integers(1, m + 2))
    return {"A": A, "B": B, "C": _rank_mat(rng, l, A.cols)}


BUILDERS = {
    "square": _b_square,
    "hh25": _b_hh25,
    "hh27": _b_hh27,
    "idempotent-pair": _b_idem_pair,
    "projector-pair": _b_proj_pair,
    "star-pair": _b_star_pair,
    "idempotent-triple": _b_triple,
    "commuting-triple": _b_commuting_triple,
    "idempotent-family": _b_family,
    "equation-z1": _b_equation("z1"),
    "equation-z8": _b_equation("z8"),
    "equation-z11": _b_equation("z11"),
    "matrix-pair": _b_matrix_pair,
    "matrix-triple": _b_matrix_triple,
    "k42": _b_k42,
}


def _idem(X):
    return X @ X == X


def in_class(kind: str, mats: dict) -> bool:
    """Verify (rather than assume) that an instance belongs to its input class."""
    if kind in ("idempotent-pair", "idempotent-triple"):
        return all(_idem(X) for X in mats.values())
    if kind == "projector-pair":
        return all(_idem(X) and X.H == X for X in mats.values())
    if kind == "star-pair":
        return _idem(mats["A"]) and mats["B"] == mats["A"].H
    if kind == "commuting-triple":
        A, B, C = mats["A"], mats["B"], mats["C"]
        return all(_idem(X) for X in (A, B, C)) and A @ B == B @ A and A @ C == C @ A and B @ C == C @ B
    if kind == "idempotent-family":
        return all(_idem(X) for X in mats["family"])
    if kind == "equation-z1":
        M, X, Y = mats["M"], mats["X"], mats["Y"]
        return M @ X == X and Y @ M == Y and M @ Y == X @ M
    if kind == "equation-z8":
        A, B, X, Y = mats["A"], mats["B"], mats["X"], mats["Y"]
        return A @ X == X and Y @ B == Y and A @ Y == X @ B
    if kind == "equation-z11":
        A, B, X, Y = mats["A"], mats["B"], mats["X"], mats["Y"]
        return (A @ X == X and B @ Y == Y and range_contained(A @ Y, X) and range_contained(B @ X, Y))
    return True


def _move(mats: dict, field: FieldSpec) -> dict:
    out = {}
    for name, X in mats.items():
        out[name] = [Y.in_field(field) for Y in X] if isinstance(X, list) else X.in_field(field)
    return out


def sample_scalars(entry, rng) -> dict:
    if entry.scalar_fn is not None:
        return entry.scalar_fn(rng)
    return {s.name: small_rational(rng, s.exclude, s.nonzero) for s in entry.scalars}


# -- field and k planning ---------------------------------------------------------

def plan_sweep(entry, field: FieldSpec | None = None, k_sweep=None) -> list:
    """(k, field) pairs to check for ``entry``.

    Without an explicit field every k gets the extension its radicals need.  An
    explicit field must accommodate every requested k, except that a default k
    sweep is quietly narrowed to the compatible values.
    """
    if entry.k is None:
        ks, explicit_k = (None,), False
    elif k_sweep:
        ks, explicit_k = tuple(k_sweep), True
    else:
        ks, explicit_k = entry.k, False
    out, dropped = [], []
    for k in ks:
        need = entry.radicand_for(k)
        if field is None:
            out.append((k, FieldSpec(need)))
        elif need in (0, field.d):
            out.append((k, field))
        else:
            dropped.append((k, need))
    if dropped and (explicit_k or not out or not callable(entry.radicand)):
        k, need = dropped[0]
        where = f" at k = {k}" if k is not None else ""
        raise ConfigurationError(f"{entry.id}{where} needs sqrt({need}); field {field} does not contain it")
    return out


# -- evaluation --------------------------------------------------------------------

def _json_value(v):
    if isinstance(v, Matrix):
        return v.to_json()
    if isinstance(v, Rel):
        return v.describe()
    if isinstance(v, Fact):
        return {"mode": v.mode, "clauses": [bool(c) for c in v.clauses]}
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return str(v)


def _groups(res, atom):
    res = list(res)
    if all(isinstance(x, atom) for x in res):
        return [res]
    return [list(g) if isinstance(g, (list, tuple)) else [g] for g in res]


def judge(kind: str, res):
    """(passed, lhs, rhs) for a checker result of the given kind."""
    if kind in ("matrix-identity", "conditional-inverse-identity", "rank-equality"):
        atom = int if kind == "rank-equality" else Matrix
        for g in _groups(res, atom):
            for other in g[1:]:
                if other != g[0]:
                    return False, g[0], other
        return True, None, None
    if kind == "subspace-identity":
        for rel in res:
            if not rel.holds():
                return False, rel, rel.text
        return True, None, None
    facts = [res] if isinstance(res, Fact) else list(res)
    for f in facts:
        if not f.holds():
            return False, f, f.mode
    return True, None, None


@dataclass
class Outcome:
    status: str                    # "pass", "fail" or "miss"
    k: object = None
    lhs: object = None
    rhs: object = None
    error: str | None = None


def evaluate(entry, fn, m, field, mats, scalars, k, draw_rng) -> Outcome:
    ctx = Ctx(m, field, mats, scalars, k, draw_rng)
    try:
        res = fn(ctx)
        ok, lhs, rhs = judge(entry.kind, res)
    except Miss as exc:
        return Outcome("miss", k, error=str(exc))
    except RanklabError as exc:
        return Outcome("fail", k, error=f"{type(exc).__name__}: {exc}")
    if ok:
        return Outcome("pass", k)
    return Outcome("fail", k, lhs, rhs)


@dataclass
class Trial:
    outcome: Outcome
    mats: dict = dc_field(default_factory=dict)
    scalars: dict = dc_field(default_factory=dict)
    attempt: int = 0


def _instance(entry, seed, m, trial, attempt):
    rng = make_rng(seed, entry.id, m, trial, attempt)
    mode = _pick(rng, entry.modes)
    mats = BUILDERS[entry.inputs](m, rng, mode)
    if not in_class(entry.inputs, mats):
        return None, None
    return mats, sample_scalars(entry, rng)


def run_trial(entry, seed, m, trial, plan, fns=None) -> list[Trial]:
    """One trial for each checker in ``fns`` (default: the corrected form).

    All checkers see the same instance; the instance is redrawn (up to the
    resample budget) while the first checker reports a precondition miss.
    """
    fns = fns or [entry.fn]
    last = None
    for attempt in range(RESAMPLE_BUDGET + 1):
        mats, scalars = _instance(entry, seed, m, trial, attempt)
        if mats is None:
            last = [Trial(Outcome("miss", error="input class violated"), attempt=attempt) for _ in fns]
            continue
        results = []
        for fn in fns:
            verdict = Outcome("pass")
            for k, field in plan:
                draw_rng = make_rng(seed, entry.id, m, trial, attempt, "draws", -1 if k is None else k)
                o = evaluate(entry, fn, m, field, _move(mats, field), scalars, k, draw_rng)
                if o.status != "pass":
                    verdict = o
                    if o.status == "fail":
                        break
            results.append(Trial(verdict, mats, scalars, attempt))
        last = results
        if results[0].outcome.status != "miss":
            return results
    return last


def _payload(entry, seed, m, trial, t: Trial) -> dict:
    o = t.outcome
    inputs = {name: ([x.to_json() for x in X] if isinstance(X, list) else X.to_json())
              for name, X in sorted(t.mats.items())}
    out = {"dim": m, "trial": trial, "attempt": t.attempt, "k": o.k, "seed": seed, "inputs": inputs,
           "scalars": {k: str(v) for k, v in sorted(t.scalars.items())},
           "lhs": _json_value(o.lhs), "rhs": _json_value(o.rhs)}
    if o.error:
        out["error"] = o.error
    return out


def _tally():
    return {"passes": 0, "fails": 0, "misses": 0}


def _count(t: dict, status: str):
    t[{"pass": "passes", "fail": "fails", "miss": "misses"}[status]] += 1


# -- suite --------------------------------------------------------------------------

def select_entries(ids=None, audit: bool = False) -> list:
    from . import CATALOG, ENTRIES

    if ids is None:
        if audit:
            return [e for e in ENTRIES if e.note is not None]
        return [e for e in ENTRIES if not e.audit_only]
    unknown = [i for i in ids if i not in CATALOG]
    if unknown:
        raise UsageError(f"unknown entry id: {', '.join(unknown)}")
    chosen = [CATALOG[i] for i in ids]
    if not audit:
        blocked = [e.id for e in chosen if e.audit_only]
        if blocked:
            raise UsageError(f"entry {', '.join(blocked)} is audit-only; use audit mode")
    return chosen


def _check_dims(dims):
    lo, hi = dims
    if not (1 <= lo <= hi):
        raise UsageError(f"bad dimension range {lo}..{hi}")


def run_suite(entries=None, dims=(2, 5), trials: int = 25, seed: int = 0, field: FieldSpec | None = None,
              k_sweep=None) -> dict:
    """Check the selected entries; returns the report as a JSON-ready dict."""
    if trials < 1:
        raise UsageError("trials must be at least 1")
    _check_dims(dims)
    chosen = select_entries(entries)
    plans = {e.id: plan_sweep(e, field, k_sweep) for e in chosen}
    rows = []
    for e in chosen:
        row = {"id": e.id, "label": e.label, "kind": e.kind, "inputs": e.inputs, **_tally(), "failures": []}
        for m in range(dims[0], dims[1] + 1):
            for trial in range(trials):
                (t,) = run_trial(e, seed, m, trial, plans[e.id])
                _count(row, t.outcome.status)
                if t.outcome.status == "fail" and len(row["failures"]) < MAX_PAYLOADS:
                    row["failures"].append(_payload(e, seed, m, trial, t))
        rows.append(row)
    return {"meta": _meta(seed, dims, trials, field, k_sweep, "check"), "entries": rows,
            "summary": _summary(rows)}


def run_audit(entries=None, dims=(2, 5), trials: int = 25, seed: int = 0, field: FieldSpec | None = None,
              k_sweep=None) -> dict:
    """Evaluate the printed and the corrected reading of every annotated entry on shared instances."""
    from . import ERRATA

    if trials < 1:
        raise UsageError("trials must be at least 1")
    _check_dims(dims)
    chosen = [e for e in select_entries(entries, audit=True) if e.note is not None]
    rows = []
    for e in chosen:
        plan = plan_sweep(e, field, k_sweep)
        lit, cor = _tally(), _tally()
        disagreements, example = 0, None
        for m in range(dims[0], dims[1] + 1):
            for trial in range(trials):
                tc, tl = run_trial(e, seed, m, trial, plan, [e.fn, e.literal or e.fn])
                _count(cor, tc.outcome.status)
                _count(lit, tl.outcome.status)
                if tc.outcome.status != tl.outcome.status:
                    disagreements += 1
                    if example is None:
                        example = _payload(e, seed, m, trial, tl)
        row = {"id": e.id, "label": e.label, "annotation": e.note, "category": e.category,
               "literal": lit, "corrected": cor, "disagreements": disagreements,
               "discrepancy": disagreements > 0 or lit["fails"] > 0}
        if example is not None:
            row["example"] = example
        rows.append(row)
    return {"meta": _meta(seed, dims, trials, field, k_sweep, "audit"), "errata": list(ERRATA),
            "entries": rows}


def _meta(seed, dims, trials, field, k_sweep, mode):
    return {"seed": seed, "dims": [dims[0], dims[1]], "trials": trials,
            "field": None if field is None else field.d, "k_sweep": list(k_sweep) if k_sweep else None,
            "mode": mode}


def _summary(rows):
    tot = _tally()
    for r in rows:
        for key in tot:
            tot[key] += r[key]
    return {"entries": len(rows), **tot}
