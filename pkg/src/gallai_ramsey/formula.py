"""Closed-form values of gr_k(K3 : r*B3+, s*S3+, t*K3) and related tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import PatternGraph, pattern

ROLE_PATTERNS = ("B3plus", "S3plus", "K3")


@dataclass(frozen=True)
class Parameters:
    """Color counts: ``r`` colors avoid B3+, then ``s`` avoid S3+, then ``t`` avoid K3."""

    r: int
    s: int
    t: int

    def __post_init__(self):
        if min(self.r, self.s, self.t) < 0:
            raise ValueError(f"parameters must be nonnegative, got {self.as_tuple()}")

    @property
    def k(self) -> int:
        return self.r + self.s + self.t

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    def role(self, color: int) -> str:
        """Name of the pattern color ``color`` must avoid (positional roles)."""
        if not 1 <= color <= self.k:
            raise ValueError(f"color {color} outside 1..{self.k}")
        if color <= self.r:
            return "B3plus"
        if color <= self.r + self.s:
            return "S3plus"
        return "K3"

    def colors_of(self, role: str) -> range:
        if role == "B3plus":
            return range(1, self.r + 1)
        if role == "S3plus":
            return range(self.r + 1, self.r + self.s + 1)
        if role == "K3":
            return range(self.r + self.s + 1, self.k + 1)
        raise ValueError(f"unknown role {role!r}")

    def __str__(self) -> str:
        return f"({self.r},{self.s},{self.t})"


def as_params(p) -> Parameters:
    return p if isinstance(p, Parameters) else Parameters(*p)


def condition_label(p) -> str:
    """Which of the ten cases c1..c10 of the main formula applies."""
    p = as_params(p)
    r, s, t = p.as_tuple()
    if p.k == 0:
        raise ValueError("condition label needs k = r+s+t >= 1")
    if s == 0:
        if r % 2 == 0:
            return "c1" if t % 2 == 0 else "c2"
        return "c3" if t % 2 == 1 else "c4"
    if r % 2 == 0:
        return "c5" if (s + t) % 2 == 0 else "c6"
    if (s + t) % 2 == 0:
        return "c10"
    if t >= 1:
        return "c7"
    return "c9" if s == 1 else "c8"


def f(p) -> int:
    """Largest order of a Gallai coloring avoiding every assigned pattern.

    ``f(0,0,0) = 1`` (the single vertex). Integer arithmetic only.
    """
    p = as_params(p)
    r, s, t = p.as_tuple()
    if p.k == 0:
        return 1
    label = condition_label(p)
    if label == "c1":
        return 17 ** (r // 2) * 5 ** (t // 2)
    if label == "c2":
        return 2 * 17 ** (r // 2) * 5 ** ((t - 1) // 2)
    if label == "c3":
        return 8 * 17 ** ((r - 1) // 2) * 5 ** ((t - 1) // 2)
    if label == "c4":
        return 4 * 17 ** ((r - 1) // 2) * 5 ** (t // 2)
    if label == "c5":
        return 6 * 17 ** (r // 2) * 5 ** ((s + t - 2) // 2)
    if label == "c6":
        return 3 * 17 ** (r // 2) * 5 ** ((s + t - 1) // 2)
    if label == "c7":
        return 48 * 17 ** ((r - 1) // 2) * 5 ** ((s + t - 3) // 2)
    if label == "c8":
        return 48 * 17 ** ((r - 1) // 2) * 5 ** ((s - 3) // 2)
    if label == "c9":
        return 9 * 17 ** ((r - 1) // 2)
    return 24 * 17 ** ((r - 1) // 2) * 5 ** ((s + t - 2) // 2)


def gallai_ramsey_value(p) -> int:
    p = as_params(p)
    if p.k == 0:
        raise ValueError("Gallai-Ramsey number needs k >= 1")
    return f(p) + 1


# single-family formulas, kept separate from f() as cross-checks

def gr_b3plus_only(r: int) -> int:
    if r < 1:
        raise ValueError("r >= 1")
    return 17 ** (r // 2) + 1 if r % 2 == 0 else 4 * 17 ** ((r - 1) // 2) + 1


def gr_k3_only(t: int) -> int:
    if t < 1:
        raise ValueError("t >= 1")
    return 5 ** (t // 2) + 1 if t % 2 == 0 else 2 * 5 ** ((t - 1) // 2) + 1


def gr_s3plus_only(s: int) -> int:
    if s < 1:
        raise ValueError("s >= 1")
    return 6 * 5 ** ((s - 2) // 2) + 1 if s % 2 == 0 else 3 * 5 ** ((s - 1) // 2) + 1


# two-color Ramsey numbers of the three target graphs
_CLASSICAL = {
    frozenset(["K3"]): 6,
    frozenset(["S3plus"]): 7,
    frozenset(["B3plus"]): 18,
    frozenset(["K3", "S3plus"]): 7,
    frozenset(["K3", "B3plus"]): 9,
    frozenset(["S3plus", "B3plus"]): 10,
}


def classical_ramsey(a: PatternGraph | str, b: PatternGraph | str) -> int:
    key = frozenset([pattern(a).name, pattern(b).name])
    try:
        return _CLASSICAL[key]
    except KeyError:
        raise ValueError(f"no tabulated Ramsey number for ({pattern(a).name}, {pattern(b).name})") from None


# --------------------------------------------------------------------------
# Ratio inequalities used by the upper-bound induction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Inequality:
    index: int
    shift: tuple[int, int, int]
    bound: Fraction
    equality: bool = False  # the relation is "=" rather than "<="

    def bound_at(self, r: int, s: int, t: int) -> Fraction:
        if self.index == 3 and s == 1 and t == 0:
            return Fraction(1, 3)
        return self.bound


INEQUALITIES = (
    Inequality(1, (0, 0, -1), Fraction(1, 2)),
    Inequality(2, (0, -1, 0), Fraction(1, 2)),
    Inequality(3, (-1, 0, 0), Fraction(5, 16)),  # 1/3 when s=1, t=0
    Inequality(4, (-1, 1, 0), Fraction(3, 4)),
    Inequality(5, (-1, 0, 1), Fraction(2, 3)),
    Inequality(6, (0, 0, -2), Fraction(1, 5)),
    Inequality(7, (0, -1, -1), Fraction(1, 5)),
    Inequality(8, (0, -2, 0), Fraction(1, 5)),
    Inequality(9, (-1, 0, -1), Fraction(1, 8)),
    Inequality(10, (-1, -1, 0), Fraction(1, 8)),
    Inequality(11, (-1, 1, -1), Fraction(3, 8)),
    Inequality(12, (-1, -1, 1), Fraction(5, 16)),
    Inequality(13, (-2, 1, 1), Fraction(15, 34)),
    Inequality(14, (-2, 1, 0), Fraction(3, 17)),
    Inequality(15, (-2, 0, 2), Fraction(16, 51)),
    Inequality(16, (-2, 0, 1), Fraction(8, 51)),
    Inequality(17, (-2, 0, 0), Fraction(1, 17), equality=True),
)


@dataclass(frozen=True)
class InequalityCheck:
    index: int
    triple: tuple[int, int, int]
    ratio: Fraction
    bound: Fraction
    passed: bool

    @property
    def tight(self) -> bool:
        return self.ratio == self.bound

    def line(self) -> str:
        r, s, t = self.triple
        status = "pass" if self.passed else "fail"
        return (f"ineq={self.index} triple=({r},{s},{t}) "
                f"ratio={self.ratio.numerator}/{self.ratio.denominator} status={status}")


@dataclass
class InequalityReport:
    checks: list[InequalityCheck]

    @property
    def violations(self) -> list[InequalityCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.violations

    def tight(self, index: int) -> list[InequalityCheck]:
        return [c for c in self.checks if c.index == index and c.tight]


def iter_triples(max_r: int, max_s: int, max_t: int) -> Iterator[tuple[int, int, int]]:
    for r in range(max_r + 1):
        for s in range(max_s + 1):
            for t in range(max_t + 1):
                yield r, s, t


def check_inequalities(max_r: int = 8, max_s: int = 8, max_t: int = 8) -> InequalityReport:
    """Evaluate every ratio bound exactly over ``0..max`` in each coordinate.

    An instance is skipped when the base triple has ``k = 0`` or a shifted
    coordinate is negative. ``f(0,0,0) = 1`` is used where the shift lands on
    the empty palette.
    """
    if min(max_r, max_s, max_t) < 2:
        raise ValueError("bounds must be >= 2")
    checks = []
    for r, s, t in iter_triples(max_r, max_s, max_t):
        if r + s + t == 0:
            continue
        base = f((r, s, t))
        for ineq in INEQUALITIES:
            dr, ds, dt = ineq.shift
            shifted = (r + dr, s + ds, t + dt)
            if min(shifted) < 0:
                continue
            ratio = Fraction(f(shifted), base)
            bound = ineq.bound_at(r, s, t)
            passed = ratio == bound if ineq.equality else ratio <= bound
            checks.append(InequalityCheck(ineq.index, (r, s, t), ratio, bound, passed))
    return InequalityReport(checks)
