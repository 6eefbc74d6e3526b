"""Command-line front end: ``ranklab {check,extremal,gen,report}``.

Every command writes one JSON document (sorted keys) to stdout or to --out.
Exit codes: 0 success, 1 a checked statement failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .errors import RanklabError, UsageError
from .scalar import FieldSpec

DIM_CAP = 8
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_dims(text: str, cap: int = DIM_CAP) -> tuple[int, int]:
    """"2..5" -> (2, 5); a single number means a one-point range."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"malformed dims {text!r}; expected A..B") from None
    if lo > hi:
        raise UsageError(f"malformed dims {text!r}: {lo} > {hi}")
    if lo < 1 or hi > cap:
        raise UsageError(f"dims {text!r} outside 1..{cap}")
    return lo, hi


def parse_int_list(text: str | None, what: str):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed {what} list {text!r}") from None


def parse_ids(text: str | None):
    if text is None:
        return None
    ids = [x.strip() for x in text.split(",") if x.strip()]
    if not ids:
        raise UsageError("empty id list")
    return ids


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RANKLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RANKLAB_SEED={env!r} is not an integer") from None


def _field(args):
    return None if args.field is None else FieldSpec(args.field)


def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def write_output(text: str, path: str | None):
    """stdout, or an atomic replace of ``path``."""
    if path is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".ranklab-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands ------------------------------------------------------------------

def cmd_check(args):
    from .catalog import run_audit, run_suite

    dims = parse_dims(args.dims or "2..5", args.max_dim)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    kw = dict(entries=parse_ids(args.entries), dims=dims, trials=args.trials, seed=_seed(args),
              field=_field(args), k_sweep=parse_int_list(args.k_sweep, "k"))
    if args.audit:
        return run_audit(**kw), EXIT_OK
    rep = run_suite(**kw)
    return rep, EXIT_FAIL if rep["summary"]["fails"] else EXIT_OK


def cmd_extremal(args):
    from .extremal import FAMILIES, run_extremal

    lo, hi = parse_dims(args.dims or "2..4", args.max_dim)
    families = parse_ids(args.family) or list(FAMILIES)
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise UsageError(f"unknown family: {', '.join(unknown)}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    rep = run_extremal(families, list(range(lo, hi + 1)), args.instances, args.trials, _seed(args))
    return rep, EXIT_FAIL if rep["summary"]["violations"] else EXIT_OK


def _verify_instance(kind: str, mats: dict) -> list:
    """In-band checks of the generator contract; returns the list of checks made."""
    from .errors import PreconditionError

    done = []
    if kind in ("idempotent-pair", "idempotent-triple", "projector-pair", "idempotent-family", "star-pair"):
        for name, X in mats.items():
            if X @ X != X:
                raise PreconditionError(f"generated {name} is not idempotent")
            done.append(f"{name} idempotent")
    if kind == "projector-pair":
        for name, X in mats.items():
            if X.H != X:
                raise PreconditionError(f"generated {name} is not Hermitian")
            done.append(f"{name} Hermitian")
    if kind == "star-pair":
        if mats["B"] != mats["A"].H:
            raise PreconditionError("B is not the conjugate transpose of A")
        done.append("B = A*")
    return done


def cmd_gen(args):
    from .generators import generate_instance
    from .rng import make_rng
    from .scalar import QI

    if args.kind is None:
        raise UsageError("gen needs --kind")
    m = args.m
    if not 1 <= m <= args.max_dim:
        raise UsageError(f"--m {m} outside 1..{args.max_dim}")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    seed = _seed(args)
    field = _field(args) or QI
    ranks = parse_int_list(args.ranks, "rank")
    out = []
    for i in range(args.count):
        rng = make_rng(seed, "gen", args.kind, m, i)
        mats = generate_instance(args.kind, m, rng, ranks=ranks, field=field, system=args.system)
        out.append({"index": i, "matrices": {k: v.to_json() for k, v in mats.items()},
                    "verified": _verify_instance(args.kind, mats)})
    doc = {"meta": {"kind": args.kind, "m": m, "seed": seed, "field": field.d, "ranks": ranks,
                    "count": args.count, "mode": "gen"},
           "instances": out}
    return doc, EXIT_OK


def cmd_report(args):
    from .catalog import ERRATA, catalog_index
    from .extremal import FAMILIES

    fams = {f.id: {"pencil": f.text, "regimes": [("none" if r is None else str(r)) for r in f.regimes],
                   "inverseModes": ["shared", "independent"] if len(f.shared_modes) > 1 else ["independent"]}
            for f in FAMILIES.values()}
    return {"meta": {"mode": "report"}, "entries": catalog_index(), "errata": list(ERRATA),
            "families": fams}, EXIT_OK


COMMANDS = {"check": cmd_check, "extremal": cmd_extremal, "gen": cmd_gen, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ranklab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--entries", help="comma-separated catalog ids (default: all)")
    p.add_argument("--family", help="comma-separated extremal families (default: all)")
    p.add_argument("--dims", help="inclusive dimension range A..B")
    p.add_argument("--max-dim", type=int, default=DIM_CAP, help="upper cap for --dims and --m")
    p.add_argument("--trials", type=int, default=None, help="trials per entry and dim, or draws per instance")
    p.add_argument("--instances", type=int, default=50, help="random instances per extremal regime")
    p.add_argument("--seed", type=int, default=None, help="falls back to $RANKLAB_SEED, then 0")
    p.add_argument("--field", type=int, default=None, help="radicand d of Q(i)(sqrt d); 0 is Q(i)")
    p.add_argument("--out", help="output path (written atomically); stdout when omitted")
    p.add_argument("--audit", action="store_true", help="compare printed and corrected readings")
    p.add_argument("--k-sweep", help="comma-separated exponents for entries with a k parameter")
    p.add_argument("--kind", help="instance kind for gen")
    p.add_argument("--m", type=int, default=3, help="order for gen")
    p.add_argument("--ranks", help="comma-separated member ranks for gen")
    p.add_argument("--count", type=int, default=1, help="instances for gen")
    p.add_argument("--system", default="z1", help="equation system for gen --kind equation-system")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.trials is None:
            args.trials = 16 if args.command == "extremal" else 25
        doc, code = COMMANDS[args.command](args)
        write_output(dump(doc), args.out)
        return code
    except UsageError as exc:
        print(f"ranklab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RanklabError as exc:
        print(f"ranklab: failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
