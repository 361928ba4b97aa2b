"""Constraint systems for the four union-closed optimization problems.

Problem kinds:
  F   maximize the number of sets subject to a per-element degree cap a.
  G   minimize the frequency of element 1 (forced to be a most frequent
      element by an ordering chain) subject to an exact set count m.
  FT / GT  the same objectives with every element additionally required
      to be a non-trivial twin difference, via continuous link variables.

A built ConstraintSystem is an immutable value consumed by the witness
checker here and by the LP writer; the exact search in ``solver`` works
on the problems directly.

Variable naming: ``x_<d>`` is the 0/1 indicator of the subset whose bit
pattern has decimal value d; ``z_<d>_e<k>`` is the twin link variable for
little twin d and element k.  Constraint rows are named u<i> (union),
deg<e>, ord<i>, card, tl<i> (twin link), tc<e> (twin cover), numbered in
canonical order, and every build is byte-deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .families import Family, MAX_GROUND_SET, frequencies, twin_pairs


class ModelKind(enum.Enum):
    F = "f"
    G = "g"
    FT = "ft"
    GT = "gt"

    @property
    def maximize(self) -> bool:
        return self in (ModelKind.F, ModelKind.FT)

    @property
    def twin(self) -> bool:
        return self in (ModelKind.FT, ModelKind.GT)

    @classmethod
    def parse(cls, token: str) -> "ModelKind":
        try:
            return cls(token.lower())
        except ValueError:
            raise ValueError(f"unknown model kind {token!r}; expected f, g, ft or gt")


@dataclass(frozen=True)
class ModelInstance:
    """One optimization problem: kind plus (n, a) or (n, m).

    G/GT instances with param > 2^n are constructible; they solve to
    infeasible.
    """

    kind: ModelKind
    n: int
    param: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise ValueError(f"n={self.n} out of range 1..{MAX_GROUND_SET}")
        if self.param < 1:
            raise ValueError(f"param must be positive, got {self.param}")

    def __str__(self):
        return f"{self.kind.value}(n={self.n},{'a' if self.kind.maximize else 'm'}={self.param})"


def var_x(mask: int) -> str:
    return f"x_{mask}"


def var_z(little: int, e: int) -> str:
    return f"z_{little}_e{e}"


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[int, str], ...]
    sense: str  # "<=", ">=", "="
    rhs: int

    def evaluate(self, assignment) -> bool:
        lhs = sum(coef * assignment[var] for coef, var in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class ConstraintSystem:
    inst: ModelInstance
    maximize: bool
    objective: tuple[tuple[int, str], ...]
    constraints: tuple[Constraint, ...]
    binaries: tuple[str, ...]  # 0/1 set variables
    unit_interval: tuple[str, ...]  # continuous twin variables in [0, 1]

    def by_prefix(self, prefix: str) -> list[Constraint]:
        return [c for c in self.constraints if c.name.startswith(prefix)]


def _union_rows(n: int) -> list[Constraint]:
    rows = []
    idx = 0
    for s in range(1 << n):
        if s.bit_count() < 2:
            continue
        pairs = []
        t = (s - 1) & s
        while t:
            # u ranges over supersets of s \ t within s; skip u == s, dedup t < u
            rest = s & ~t
            w = t
            while True:
                u = rest | w
                if u != s and u > t:
                    pairs.append((t, u))
                if w == 0:
                    break
                w = (w - 1) & t
            t = (t - 1) & s
        for t, u in sorted(pairs):
            idx += 1
            rows.append(
                Constraint(
                    f"u{idx}",
                    ((1, var_x(t)), (1, var_x(u)), (-1, var_x(s))),
                    "<=",
                    1,
                )
            )
    return rows


def _twin_vars(n: int) -> list[tuple[int, int]]:
    """(little, e) pairs in canonical order: e ascending, little ascending."""
    out = []
    for e in range(1, n + 1):
        bit = 1 << (e - 1)
        for little in range(1 << n):
            if not little & bit:
                out.append((little, e))
    return out


@lru_cache(maxsize=128)
def build(inst: ModelInstance) -> ConstraintSystem:
    """Emit the complete, duplicate-free constraint system for an instance."""
    n = inst.n
    kind = inst.kind
    all_masks = range(1 << n)

    constraints = list(_union_rows(n))

    if kind.maximize:
        for e in range(1, n + 1):
            bit = 1 << (e - 1)
            terms = tuple((1, var_x(m)) for m in all_masks if m & bit)
            constraints.append(Constraint(f"deg{e}", terms, "<=", inst.param))
    else:
        for i in range(1, n):
            bit_i = 1 << (i - 1)
            bit_j = 1 << i
            # shared masks (containing both i and i+1) cancel
            pos = tuple((1, var_x(m)) for m in all_masks if m & bit_i and not m & bit_j)
            neg = tuple((-1, var_x(m)) for m in all_masks if m & bit_j and not m & bit_i)
            constraints.append(Constraint(f"ord{i}", pos + neg, ">=", 0))
        constraints.append(
            Constraint("card", tuple((1, var_x(m)) for m in all_masks), "=", inst.param)
        )

    unit_interval: tuple[str, ...] = ()
    if kind.twin:
        zvars = _twin_vars(n)
        unit_interval = tuple(var_z(little, e) for little, e in zvars)
        idx = 0
        for little, e in zvars:
            big = little | (1 << (e - 1))
            for member in (little, big):
                idx += 1
                constraints.append(
                    Constraint(
                        f"tl{idx}",
                        ((1, var_z(little, e)), (-1, var_x(member))),
                        "<=",
                        0,
                    )
                )
        for e in range(1, n + 1):
            bit = 1 << (e - 1)
            terms = tuple(
                (1, var_z(m, e))
                for m in all_masks
                if not m & bit and m.bit_count() != n - 1
            )
            constraints.append(Constraint(f"tc{e}", terms, ">=", 1))

    if kind.maximize:
        objective = tuple((1, var_x(m)) for m in all_masks)
    else:
        objective = tuple((1, var_x(m)) for m in all_masks if m & 1)

    return ConstraintSystem(
        inst=inst,
        maximize=kind.maximize,
        objective=objective,
        constraints=tuple(constraints),
        binaries=tuple(var_x(m) for m in all_masks),
        unit_interval=unit_interval,
    )


def family_assignment(inst: ModelInstance, fam: Family) -> dict[str, int]:
    """0/1 x values for a family, with each z at its maximum min(x_S, x_Se).

    Under this z choice the twin-link rows always hold and a twin-cover
    row holds iff the element has a fully included non-trivial pair, so
    feasibility of the assignment matches feasibility of the family.
    """
    members = set(fam.sets)
    assignment = {var_x(m): int(m in members) for m in range(1 << inst.n)}
    if inst.kind.twin:
        for little, e in _twin_vars(inst.n):
            big = little | (1 << (e - 1))
            assignment[var_z(little, e)] = int(little in members and big in members)
    return assignment


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[str, ...]

    def __bool__(self):
        return self.feasible


def check_feasible(inst: ModelInstance, fam: Family) -> FeasibilityReport:
    """Test a family against every constraint of its instance.

    Returns the names of all violated rows; empty means feasible.
    """
    if fam.n != inst.n:
        raise ValueError(f"family over [{fam.n}] checked against n={inst.n} instance")
    system = build(inst)
    assignment = family_assignment(inst, fam)
    violated = tuple(c.name for c in system.constraints if not c.evaluate(assignment))
    return FeasibilityReport(not violated, violated)


def objective_value(inst: ModelInstance, fam: Family) -> int:
    """m(F) for the maximization kinds, m_1(F) for the minimization kinds."""
    if fam.n != inst.n:
        raise ValueError(f"family over [{fam.n}] evaluated against n={inst.n} instance")
    if inst.kind.maximize:
        return fam.m
    if not fam.sets:
        return 0
    return frequencies(fam)[0]


def has_nontrivial_twin_cover(fam: Family) -> bool:
    """True iff every element is a non-trivial twin difference."""
    return all(
        any(not p.trivial for p in twin_pairs(fam, e)) for e in range(1, fam.n + 1)
    )
