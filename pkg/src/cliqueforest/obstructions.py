"""Algebraic obstructions on concrete finite inputs.

A centralizer quadruple (g1, g2, h1, h2) with [g1,h1] = [g2,h1] = [g2,h2] = 1
but [g1,h2] != 1 makes the commutation graph connected and incomplete, which
rules out an embedding into the analytic diffeomorphisms of the interval.
The desk-scale witness is a ball in the integral Heisenberg group, in exact
integer arithmetic.  The sine-shear suite shows the transitivity failing on
the (non-compact) line.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .diffeo import (
    DEFAULT_GRID,
    Power,
    SineShear,
    Translation,
    commutator_residual,
    commutator_witness,
)


@dataclass(frozen=True)
class UnipotentMatrix:
    """3x3 upper-triangular integer matrix with unit diagonal.

    Stored by its strictly-upper entries (a, b, c) at positions (1,2), (2,3),
    (1,3); the group law is exact integer matrix multiplication.
    """

    a: int
    b: int
    c: int

    def __mul__(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        return UnipotentMatrix(
            self.a + other.a, self.b + other.b, self.c + other.c + self.a * other.b
        )

    def inverse(self) -> "UnipotentMatrix":
        return UnipotentMatrix(-self.a, -self.b, self.a * self.b - self.c)

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def commutes_with(self, other: "UnipotentMatrix") -> bool:
        # [m, n] = 1 iff a1 b2 = a2 b1 for unipotent 3x3 matrices
        return self * other == other * self

    def rows(self) -> Tuple[Tuple[int, int, int], ...]:
        return ((1, self.a, self.c), (0, 1, self.b), (0, 0, 1))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "UnipotentMatrix":
        r = [list(map(int, row)) for row in rows]
        if len(r) != 3 or any(len(row) != 3 for row in r):
            raise ValueError("need a 3x3 matrix")
        if [r[0][0], r[1][1], r[2][2]] != [1, 1, 1] or any(
            r[i][j] != 0 for i in range(3) for j in range(3) if i > j
        ):
            raise ValueError("matrix is not upper-triangular unipotent")
        return UnipotentMatrix(r[0][1], r[1][2], r[0][2])


X = UnipotentMatrix(1, 0, 0)
Y = UnipotentMatrix(0, 1, 0)
Z = UnipotentMatrix(0, 0, 1)  # the central commutator [X, Y]


@dataclass(frozen=True)
class CommutationOracle:
    """Finite labelled element list with an exact commutation predicate."""

    labels: Tuple[str, ...]
    elements: Tuple[UnipotentMatrix, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.elements):
            raise ValueError("labels and elements differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")

    def element(self, label: str) -> UnipotentMatrix:
        return self.elements[self.labels.index(label)]

    def commute(self, la: str, lb: str) -> bool:
        return self.element(la).commutes_with(self.element(lb))

    def is_identity(self, label: str) -> bool:
        return self.element(label).is_identity()


def heisenberg_ball(radius: int) -> CommutationOracle:
    """All products of at most ``radius`` standard generators x, y, z and
    inverses, deduplicated by exact matrix equality."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    gens = [("x", X), ("x^-1", X.inverse()), ("y", Y), ("y^-1", Y.inverse()),
            ("z", Z), ("z^-1", Z.inverse())]
    seen: Dict[UnipotentMatrix, str] = {UnipotentMatrix(0, 0, 0): "id"}
    frontier = [UnipotentMatrix(0, 0, 0)]
    for _ in range(radius):
        nxt = []
        for m in frontier:
            base = seen[m]
            for gname, gm in gens:
                prod = m * gm
                if prod not in seen:
                    seen[prod] = gname if base == "id" else f"{base}.{gname}"
                    nxt.append(prod)
        frontier = nxt
    items = sorted(seen.items(), key=lambda kv: kv[1])
    labels = tuple(lbl for _, lbl in items)
    elems = tuple(m for m, _ in items)
    return CommutationOracle(labels, elems)


def oracle_from_matrices(entries: Sequence[Tuple[str, Sequence[Sequence[int]]]]) -> CommutationOracle:
    labels = tuple(lbl for lbl, _ in entries)
    elems = tuple(UnipotentMatrix.from_rows(rows) for _, rows in entries)
    return CommutationOracle(labels, elems)


def parse_oracle(text: str) -> CommutationOracle:
    """One element per line: 'label a11 a12 a13 a21 a22 a23 a31 a32 a33'."""
    entries = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 10:
            raise ValueError(f"line {ln}: expected label plus 9 integers")
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"line {ln}: non-integer matrix entry")
        rows = [nums[0:3], nums[3:6], nums[6:9]]
        try:
            entries.append((parts[0], rows))
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}")
    return oracle_from_matrices(entries)


@dataclass(frozen=True)
class ObstructionCertificate:
    """Quadruple with three verified commutations and one non-commutation."""

    g1: str
    g2: str
    h1: str
    h2: str

    def facts(self) -> Tuple[Tuple[str, str, bool], ...]:
        return (
            (self.g1, self.h1, True),
            (self.g2, self.h1, True),
            (self.g2, self.h2, True),
            (self.g1, self.h2, False),
        )

    def reverify(self, oracle: CommutationOracle) -> bool:
        return all(oracle.commute(a, b) == want for a, b, want in self.facts())

    def to_dict(self) -> dict:
        return {
            "g1": self.g1,
            "g2": self.g2,
            "h1": self.h1,
            "h2": self.h2,
            "facts": [
                {"pair": [a, b], "commute": want} for a, b, want in self.facts()
            ],
            "scope_note": "search was over this finite element list only",
        }


def find_centralizer_quadruple(oracle: CommutationOracle) -> Optional[ObstructionCertificate]:
    """Exhaustive deterministic search for a centralizer quadruple.

    The search is lexicographic over labels with pruning on the first failed
    commutation; a None result means no quadruple exists within this element
    list, never a group-level conclusion.
    """
    labels = [l for l in oracle.labels if not oracle.is_identity(l)]
    elems = {l: oracle.element(l) for l in labels}
    for lg1 in labels:
        e_g1 = elems[lg1]
        for lg2 in labels:
            if lg2 == lg1:
                continue
            e_g2 = elems[lg2]
            for lh1 in labels:
                if lh1 in (lg1, lg2):
                    continue
                e_h1 = elems[lh1]
                if not e_g1.commutes_with(e_h1):
                    continue
                if not e_g2.commutes_with(e_h1):
                    continue
                for lh2 in labels:
                    if lh2 in (lg1, lg2, lh1):
                        continue
                    e_h2 = elems[lh2]
                    if not e_g2.commutes_with(e_h2):
                        continue
                    if e_g1.commutes_with(e_h2):
                        continue
                    cert = ObstructionCertificate(lg1, lg2, lh1, lh2)
                    assert cert.reverify(oracle)
                    return cert
    return None


@dataclass(frozen=True)
class CenterWitness:
    central: str
    noncommuting_pair: Tuple[str, str]


def center_nonabelian_check(oracle: CommutationOracle) -> Tuple[bool, Optional[CenterWitness]]:
    """True with witnesses when some non-identity element commutes with every
    listed element while the list is not abelian."""
    labels = list(oracle.labels)
    elems = [oracle.element(l) for l in labels]
    central = None
    for l, e in zip(labels, elems):
        if e.is_identity():
            continue
        if all(e.commutes_with(o) for o in elems):
            central = l
            break
    pair = None
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not elems[i].commutes_with(elems[j]):
                pair = (labels[i], labels[j])
                break
        if pair:
            break
    if central is not None and pair is not None:
        return True, CenterWitness(central, pair)
    return False, None


# ---------------------------------------------------------------------------
# the line counterexample family


@dataclass(frozen=True)
class CounterexampleReport:
    """Commutation residuals for the sine-shear family on the line.

    f_a commutes with its own period translation and translations commute
    with each other, yet suitable powers of f_a and f_b fail to commute:
    commutation is not transitive on the (non-compact) line.
    """

    a: float
    b: float
    n_max: int
    grid_n: int
    domain: Tuple[float, float]
    res_fa_ga: float
    res_ga_gb: float
    power_residuals: Tuple[Tuple[int, float, float], ...]  # (n, witness x, residual)

    @property
    def max_power_residual(self) -> float:
        return max((r for _, _, r in self.power_residuals), default=0.0)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "n_max": self.n_max,
            "grid_n": self.grid_n,
            "domain": list(self.domain),
            "residual_fa_ga": self.res_fa_ga,
            "residual_ga_gb": self.res_ga_gb,
            "power_residuals": [
                {"n": n, "witness_x": x, "residual": r}
                for n, x, r in self.power_residuals
            ],
        }


def remark_counterexample_suite(
    a: float,
    b: float,
    n_max: int = 1,
    grid_n: int = 2048,
    domain: Tuple[float, float] = (0.0, 4 * math.pi),
) -> CounterexampleReport:
    if a == 0 or b == 0 or a == b:
        raise ValueError("need distinct nonzero parameters")
    fa, fb = SineShear(a), SineShear(b)
    ga, gb = Translation(2 * math.pi / a), Translation(2 * math.pi / b)
    res_fa_ga = commutator_residual(fa, ga, grid_n, domain)
    res_ga_gb = commutator_residual(ga, gb, grid_n, domain)
    powers = []
    for n in range(1, n_max + 1):
        x, r = commutator_witness(Power(fa, n), Power(fb, n), grid_n, domain)
        powers.append((n, x, r))
    return CounterexampleReport(
        a, b, n_max, grid_n, domain, res_fa_ga, res_ga_gb, tuple(powers)
    )
