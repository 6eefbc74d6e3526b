"""Entry type, checker kinds and the per-instance evaluation context."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import PreconditionError, SingularMatrixError, UsageError
from ..geninv import E_, F_, drazin, moore_penrose, sample_gen_inverse
from ..matrix import Matrix, hstack, range_contained, range_equal, range_intersection_basis, vstack
from ..scalar import ExactScalar, FieldSpec

KINDS = ("matrix-identity", "rank-equality", "subspace-identity", "fact-equivalence",
         "conditional-inverse-identity")

DEFAULT_K = (1, 2, 3)


class Miss(Exception):
    """The sampled instance does not meet the entry's hypothesis."""


@dataclass(frozen=True)
class Scalar:
    name: str
    exclude: tuple = ()
    nonzero: bool = True


@dataclass
class Entry:
    id: str
    label: str
    kind: str
    inputs: str
    fn: Callable
    k: tuple | None = None            # default sweep; None means no power parameter
    scalars: tuple = ()
    radicand: Callable | int | None = None
    literal: Callable | None = None   # printed form, evaluated only in audit mode
    note: str | None = None           # erratum / ambiguity annotation
    category: str | None = None       # "erratum", "ambiguous" or "audit-only"
    modes: tuple | None = None        # preferred generator modes
    scalar_fn: Callable | None = None  # custom scalar sampler (rng) -> dict
    group: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"{self.id}: unknown checker kind {self.kind!r}")
        if self.note and self.category is None:
            self.category = "erratum"

    @property
    def audit_only(self) -> bool:
        return self.category == "audit-only"

    def radicand_for(self, k) -> int:
        if self.radicand is None:
            return 0
        if callable(self.radicand):
            return self.radicand(k)
        return self.radicand

    def twin(self, new_id: str, label: str, inputs: str = "star-pair", **kw) -> "Entry":
        """Same checker on a different input class (used for the B = A* specializations)."""
        data = dict(self.__dict__)
        data.update(id=new_id, label=label, inputs=inputs, modes=None)
        data.update(kw)
        return Entry(**data)


class Ctx:
    """Everything a checker function sees for one instance."""

    def __init__(self, m: int, field: FieldSpec, mats: dict, scalars: dict, k, rng):
        self.m = m
        self.field = field
        self.mats = mats
        self.scal = scalars
        self.k = k
        self.rng = rng
        self.I = Matrix.identity(m, field)
        self.Z = Matrix.zeros(m, m, field)
        self.draws: dict = {}

    def __getattr__(self, name):
        mats = self.__dict__.get("mats", {})
        if name in mats:
            return mats[name]
        scal = self.__dict__.get("scal", {})
        if name in scal:
            return scal[name]
        raise AttributeError(name)

    def s(self, x) -> ExactScalar:
        """Field element from an int, Fraction or text."""
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, str):
            return ExactScalar.parse(x, self.field)
        return ExactScalar(Fraction(x), 0, 0, 0, self.field)

    def sqrt(self, n: int) -> ExactScalar:
        return ExactScalar.sqrt_of(n, self.field)

    def eye(self, n: int) -> Matrix:
        return Matrix.identity(n, self.field)

    def zeros(self, r: int, c: int) -> Matrix:
        return Matrix.zeros(r, c, self.field)

    def ginv(self, X: Matrix, name: str, cls: str = "1") -> Matrix:
        """A random {1}-inverse of X, remembered under ``name`` for failure payloads."""
        if name in self.draws:
            return self.draws[name]
        g = sample_gen_inverse(X, cls, self.rng).inverse
        self.draws[name] = g
        return g


# -- helpers used by the entry tables -----------------------------------------

def r(X: Matrix) -> int:
    return X.rank()


def cat(*ms: Matrix) -> Matrix:
    return hstack(*ms)


def stk(*ms: Matrix) -> Matrix:
    return vstack(*ms)


def mp(X: Matrix) -> Matrix:
    return moore_penrose(X)


def dz(X: Matrix) -> Matrix:
    return drazin(X)


def nonsingular(X: Matrix) -> bool:
    return X.rows == X.cols and X.rank() == X.rows


def require(cond: bool, why: str = "hypothesis not met"):
    if not cond:
        raise Miss(why)


def inv(X: Matrix) -> Matrix:
    """Inverse inside a conditional identity; singular means a precondition miss."""
    try:
        return X.inverse()
    except SingularMatrixError as exc:
        raise Miss(str(exc)) from None


# -- subspaces ----------------------------------------------------------------
# A subspace is carried around as a matrix whose columns span it.

def Rg(X: Matrix) -> Matrix:
    return X


def Nu(X: Matrix) -> Matrix:
    return X.kernel()


def cap(S: Matrix, T: Matrix) -> Matrix:
    return range_intersection_basis(S, T)


def plus(S: Matrix, T: Matrix) -> Matrix:
    return hstack(S, T)


def is_zero_space(S: Matrix) -> bool:
    return S.rank() == 0


@dataclass
class Rel:
    op: str  # "eq" or "sub"
    left: Matrix
    right: Matrix
    text: str = ""

    def holds(self) -> bool:
        if self.op == "eq":
            return range_equal(self.left, self.right)
        return range_contained(self.left, self.right)

    def describe(self) -> dict:
        return {"relation": self.op, "text": self.text, "dim_left": self.left.rank(),
                "dim_right": self.right.rank(), "dim_sum": hstack(self.left, self.right).rank()}


def same(S, T, text="") -> Rel:
    return Rel("eq", S, T, text)


def within(S, T, text="") -> Rel:
    return Rel("sub", S, T, text)


# -- facts ----------------------------------------------------------------------

@dataclass
class Fact:
    mode: str  # "iff", "implies" or "holds"
    clauses: Sequence[bool] = dc_field(default_factory=list)

    def holds(self) -> bool:
        c = [bool(x) for x in self.clauses]
        if self.mode == "iff":
            return all(x == c[0] for x in c)
        if self.mode == "implies":
            return (not c[0]) or c[1]
        return all(c)


def iff(*clauses) -> Fact:
    return Fact("iff", list(clauses))


def implies(a, b) -> Fact:
    return Fact("implies", [a, b])


def holds(*clauses) -> Fact:
    return Fact("holds", list(clauses))


def facts(*fs: Fact) -> list:
    return list(fs)


def truthy_rank_expr(value: int) -> bool:
    """Literal reading of a bare rank expression used as a clause: true when nonzero."""
    return value != 0


# -- exact existence / universality of {1}-inverse equations ------------------

def exists_affine_zero(const: Matrix, terms) -> bool:
    """Is there a choice of the free matrices making const + sum L_i V_i R_i = 0?

    ``terms`` is a list of (L, R) pairs, each with its own unknown V_i.
    """
    from ..errors import NoSolutionError
    from ..matrix import solve_linear_matrix_system
    from ..rng import make_rng

    unknowns = [(L.cols, R.rows) for L, R in terms]
    constraint = ([(i, L, R) for i, (L, R) in enumerate(terms)], -const)
    try:
        solve_linear_matrix_system([constraint], unknowns, make_rng(0, "exists"), const.field, spread=0)
    except NoSolutionError:
        return False
    return True


def forall_affine_zero(const: Matrix, terms) -> bool:
    """Is const + sum L_i V_i R_i = 0 for every choice of the free matrices?"""
    return const.is_zero() and all(L.is_zero() or R.is_zero() for L, R in terms)


__all__ = [
    "KINDS", "DEFAULT_K", "Miss", "Scalar", "Entry", "Ctx", "r", "cat", "stk", "mp", "dz", "E_", "F_",
    "nonsingular", "require", "inv", "Rg", "Nu", "cap", "plus", "is_zero_space", "Rel", "same", "within",
    "Fact", "iff", "implies", "holds", "facts", "truthy_rank_expr", "exists_affine_zero",
    "forall_affine_zero", "PreconditionError",
]
