"""Orientation-preserving analytic maps of I, S^1 and R as closed expression trees.

Every expression carries exactly one manifold tag.  Circle maps are stored
through their degree-one lifts F: R -> R with F(x+1) = F(x) + 1; evaluation
reduces mod 1, residuals are measured as circle distances.  All objects are
immutable after construction and every operation is a pure function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence, Tuple

import numpy as np

INVERSION_TOL = 1e-14
INVERSION_MAX_ITER = 200
DEFAULT_GRID = 1024


class Manifold(str, Enum):
    INTERVAL = "I"
    CIRCLE = "S1"
    LINE = "R"


class DomainError(ValueError):
    """Point outside the manifold's model domain."""


class TagMismatchError(ValueError):
    """Operands live on different manifolds."""


class InvariantBreach(RuntimeError):
    """An expression failed to behave like an increasing diffeomorphism."""


class InversionError(InvariantBreach):
    """Monotone root search did not converge (non-monotone expression)."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# bump summands for perturbed maps


@dataclass(frozen=True)
class BumpPoly:
    """Polynomial bump c * x^k (1-x)^k * T(x) vanishing at 0 and 1.

    ``t_coeffs`` are the ascending coefficients of the low-degree factor T.
    Optional sup/derivative bounds are re-verified on a grid at construction.
    """

    c: float
    stage: int
    k: int = 1
    t_coeffs: Tuple[float, ...] = (1.0,)
    sup_bound: Optional[float] = None
    deriv_bound: Optional[float] = None

    def __post_init__(self):
        if self.stage < 1:
            raise ValueError("bump stage must be >= 1")
        if self.k < 1:
            raise ValueError("shape exponent must be >= 1")
        if self.sup_bound is not None or self.deriv_bound is not None:
            xs = np.linspace(0.0, 1.0, DEFAULT_GRID + 1)
            if self.sup_bound is not None and np.max(np.abs(self.values(xs))) >= self.sup_bound:
                raise InvariantBreach(f"bump stage {self.stage}: sup bound violated")
            if self.deriv_bound is not None and np.max(np.abs(self.deriv_values(xs))) >= self.deriv_bound:
                raise InvariantBreach(f"bump stage {self.stage}: derivative bound violated")

    @property
    def coeffs(self) -> Tuple[float, ...]:
        return _bump_coeffs(self.c, self.k, self.t_coeffs)

    def values(self, xs):
        return np.polynomial.polynomial.polyval(xs, self.coeffs)

    def deriv_values(self, xs):
        return np.polynomial.polynomial.polyval(
            xs, np.polynomial.polynomial.polyder(self.coeffs)
        )

    def to_dict(self) -> dict:
        d = {
            "c": _fmt(self.c),
            "stage": self.stage,
            "k": self.k,
            "t_coeffs": [_fmt(t) for t in self.t_coeffs],
        }
        if self.sup_bound is not None:
            d["sup_bound"] = _fmt(self.sup_bound)
        if self.deriv_bound is not None:
            d["deriv_bound"] = _fmt(self.deriv_bound)
        return d

    @staticmethod
    def from_dict(d: dict) -> "BumpPoly":
        return BumpPoly(
            c=float(d["c"]),
            stage=int(d["stage"]),
            k=int(d["k"]),
            t_coeffs=tuple(float(t) for t in d["t_coeffs"]),
            sup_bound=float(d["sup_bound"]) if "sup_bound" in d else None,
            deriv_bound=float(d["deriv_bound"]) if "deriv_bound" in d else None,
        )


@lru_cache(maxsize=None)
def _bump_coeffs(c: float, k: int, t_coeffs: Tuple[float, ...]) -> Tuple[float, ...]:
    P = np.polynomial.polynomial
    shape = P.polypow((0.0, 1.0), k)          # x^k
    shape = P.polymul(shape, P.polypow((1.0, -1.0), k))  # (1-x)^k
    return tuple(float(v) for v in c * P.polymul(shape, t_coeffs))


@dataclass(frozen=True)
class BumpTrig:
    """Periodic bump c * sin(2 pi x + phase) for perturbed circle lifts."""

    c: float
    stage: int
    phase: float = 0.0
    sup_bound: Optional[float] = None
    deriv_bound: Optional[float] = None

    def __post_init__(self):
        if self.stage < 1:
            raise ValueError("bump stage must be >= 1")
        if self.sup_bound is not None and abs(self.c) >= self.sup_bound:
            raise InvariantBreach(f"trig bump stage {self.stage}: sup bound violated")
        if self.deriv_bound is not None and abs(self.c) * 2 * math.pi >= self.deriv_bound:
            raise InvariantBreach(f"trig bump stage {self.stage}: derivative bound violated")

    def value(self, x):
        return self.c * np.sin(2 * math.pi * x + self.phase)

    def deriv(self, x):
        return self.c * 2 * math.pi * np.cos(2 * math.pi * x + self.phase)

    def to_dict(self) -> dict:
        d = {"c": _fmt(self.c), "stage": self.stage, "phase": _fmt(self.phase)}
        if self.sup_bound is not None:
            d["sup_bound"] = _fmt(self.sup_bound)
        if self.deriv_bound is not None:
            d["deriv_bound"] = _fmt(self.deriv_bound)
        return d

    @staticmethod
    def from_dict(d: dict) -> "BumpTrig":
        return BumpTrig(
            c=float(d["c"]),
            stage=int(d["stage"]),
            phase=float(d["phase"]),
            sup_bound=float(d["sup_bound"]) if "sup_bound" in d else None,
            deriv_bound=float(d["deriv_bound"]) if "deriv_bound" in d else None,
        )


# ---------------------------------------------------------------------------
# expression nodes


class DiffeoExpr:
    """Base class: an orientation-preserving analytic map of one 1-manifold.

    Subclasses implement ``_raw`` / ``_draw`` on the model domain ([0,1] for I,
    the lift for S^1, all of R for the line).
    """

    manifold: Manifold

    def _raw(self, x: float) -> float:
        raise NotImplementedError

    def _draw(self, x: float) -> float:
        raise NotImplementedError

    def _inv_raw(self, y: float) -> float:
        """Invert via guaranteed-bracketing monotone root search."""
        return _solve_increasing(self, y)

    def kind(self) -> str:
        raise NotImplementedError

    def children(self) -> Tuple["DiffeoExpr", ...]:
        return ()

    def params(self) -> dict:
        return {}

    def __repr__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.kind()}({ps})"


@dataclass(frozen=True, repr=False)
class Identity(DiffeoExpr):
    manifold: Manifold = Manifold.INTERVAL

    def _raw(self, x):
        return x

    def _draw(self, x):
        return 1.0

    def _inv_raw(self, y):
        return y

    def kind(self):
        return "identity"


@dataclass(frozen=True, repr=False)
class MobiusI(DiffeoExpr):
    """x -> alpha x / ((alpha - 1) x + 1) on [0,1]; fixes 0 and 1 exactly."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("Mobius parameter must be positive")

    @property
    def manifold(self):
        return Manifold.INTERVAL

    def _raw(self, x):
        return self.alpha * x / ((self.alpha - 1.0) * x + 1.0)

    def _draw(self, x):
        den = (self.alpha - 1.0) * x + 1.0
        return self.alpha / (den * den)

    def kind(self):
        return "mobius"

    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True, repr=False)
class RotationS1(DiffeoExpr):
    """Rotation by ``theta`` radians; lift x -> x + theta / 2 pi."""

    theta: float

    @property
    def manifold(self):
        return Manifold.CIRCLE

    def _raw(self, x):
        return x + self.theta / (2 * math.pi)

    def _draw(self, x):
        return 1.0

    def kind(self):
        return "rotation"

    def params(self):
        return {"theta": self.theta}


@dataclass(frozen=True, repr=False)
class SineShear(DiffeoExpr):
    """x -> sin(a x) / 2 + x on the line (monotone for |a| <= 2)."""

    a: float

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("sine-shear parameter must be nonzero")

    @property
    def manifold(self):
        return Manifold.LINE

    def _raw(self, x):
        return 0.5 * math.sin(self.a * x) + x

    def _draw(self, x):
        return 0.5 * self.a * math.cos(self.a * x) + 1.0

    def kind(self):
        return "sine_shear"

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True, repr=False)
class Translation(DiffeoExpr):
    c: float

    @property
    def manifold(self):
        return Manifold.LINE

    def _raw(self, x):
        return x + self.c

    def _draw(self, x):
        return 1.0

    def _inv_raw(self, y):
        return y - self.c

    def kind(self):
        return "translation"

    def params(self):
        return {"c": self.c}


class PerturbedF(DiffeoExpr):
    """Identity plus a finite schedule of polynomial bumps on [0,1].

    Strict monotonicity is certified by grid derivative positivity at
    construction; there is no closed-form inverse.
    """

    __slots__ = ("bumps", "_coeffs", "_dcoeffs")

    def __init__(self, bumps: Sequence[BumpPoly] = (), grid_n: int = DEFAULT_GRID):
        self.bumps = tuple(bumps)
        P = np.polynomial.polynomial
        coeffs = np.array([0.0, 1.0])
        for b in self.bumps:
            coeffs = P.polyadd(coeffs, b.coeffs)
        self._coeffs = tuple(float(v) for v in coeffs)
        self._dcoeffs = tuple(float(v) for v in P.polyder(self._coeffs))
        xs = np.linspace(0.0, 1.0, grid_n + 1)
        dmin = float(np.min(P.polyval(xs, self._dcoeffs)))
        if dmin <= 0:
            raise InvariantBreach(f"perturbed map not increasing (min grid derivative {dmin})")

    @property
    def manifold(self):
        return Manifold.INTERVAL

    def _raw(self, x):
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def _draw(self, x):
        acc = 0.0
        for c in reversed(self._dcoeffs):
            acc = acc * x + c
        return acc

    def kind(self):
        return "perturbed"

    def params(self):
        return {"bumps": len(self.bumps)}

    def __eq__(self, other):
        return isinstance(other, PerturbedF) and self.bumps == other.bumps

    def __hash__(self):
        return hash(("perturbed", self.bumps))


class PerturbedLiftS1(DiffeoExpr):
    """Degree-one circle lift: identity plus periodic trigonometric bumps."""

    __slots__ = ("bumps",)

    def __init__(self, bumps: Sequence[BumpTrig] = (), grid_n: int = DEFAULT_GRID):
        self.bumps = tuple(bumps)
        xs = np.linspace(0.0, 1.0, grid_n + 1)
        d = np.ones_like(xs)
        for b in self.bumps:
            d = d + b.deriv(xs)
        if float(np.min(d)) <= 0:
            raise InvariantBreach("perturbed lift not increasing on grid")

    @property
    def manifold(self):
        return Manifold.CIRCLE

    def _raw(self, x):
        y = x
        for b in self.bumps:
            y += b.c * math.sin(2 * math.pi * x + b.phase)
        return y

    def _draw(self, x):
        d = 1.0
        for b in self.bumps:
            d += b.c * 2 * math.pi * math.cos(2 * math.pi * x + b.phase)
        return d

    def kind(self):
        return "perturbed_lift"

    def params(self):
        return {"bumps": len(self.bumps)}

    def __eq__(self, other):
        return isinstance(other, PerturbedLiftS1) and self.bumps == other.bumps

    def __hash__(self):
        return hash(("perturbed_lift", self.bumps))


@dataclass(frozen=True, repr=False)
class Compose(DiffeoExpr):
    """Compose(parts) applies parts right to left: parts[0] o ... o parts[-1]."""

    parts: Tuple[DiffeoExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty composition")
        tags = {p.manifold for p in self.parts}
        if len(tags) != 1:
            raise TagMismatchError(f"mixed manifold tags in composition: {tags}")

    @property
    def manifold(self):
        return self.parts[0].manifold

    def _raw(self, x):
        for p in reversed(self.parts):
            x = p._raw(x)
        return x

    def _draw(self, x):
        d = 1.0
        for p in reversed(self.parts):
            d *= p._draw(x)
            x = p._raw(x)
        return d

    def _inv_raw(self, y):
        for p in self.parts:
            y = p._inv_raw(y)
        return y

    def kind(self):
        return "compose"

    def children(self):
        return self.parts


@dataclass(frozen=True, repr=False)
class Inverse(DiffeoExpr):
    inner: DiffeoExpr

    @property
    def manifold(self):
        return self.inner.manifold

    def _raw(self, x):
        return self.inner._inv_raw(x)

    def _draw(self, x):
        y = self.inner._inv_raw(x)
        d = self.inner._draw(y)
        if d <= 0:
            raise InvariantBreach(f"non-positive derivative at preimage {y}")
        return 1.0 / d

    def _inv_raw(self, y):
        return self.inner._raw(y)

    def kind(self):
        return "inverse"

    def children(self):
        return (self.inner,)


@dataclass(frozen=True, repr=False)
class Power(DiffeoExpr):
    inner: DiffeoExpr
    exponent: int

    @property
    def manifold(self):
        return self.inner.manifold

    def _raw(self, x):
        if self.exponent >= 0:
            for _ in range(self.exponent):
                x = self.inner._raw(x)
        else:
            for _ in range(-self.exponent):
                x = self.inner._inv_raw(x)
        return x

    def _draw(self, x):
        d = 1.0
        if self.exponent >= 0:
            for _ in range(self.exponent):
                d *= self.inner._draw(x)
                x = self.inner._raw(x)
        else:
            for _ in range(-self.exponent):
                x = self.inner._inv_raw(x)
                di = self.inner._draw(x)
                if di <= 0:
                    raise InvariantBreach("non-positive derivative in inverse power")
                d /= di
        return d

    def _inv_raw(self, y):
        return Power(self.inner, -self.exponent)._raw(y)

    def kind(self):
        return "power"

    def children(self):
        return (self.inner,)

    def params(self):
        return {"exponent": self.exponent}


# ---------------------------------------------------------------------------
# monotone inversion


def _solve_increasing(e: DiffeoExpr, y: float) -> float:
    if e.manifold is Manifold.INTERVAL:
        lo, hi = 0.0, 1.0
        flo, fhi = e._raw(lo) - y, e._raw(hi) - y
        if flo > 0 or fhi < 0:
            raise InversionError(f"target {y} outside range of {e.kind()} on [0,1]")
    else:
        # expanding bracket around y (lift / line maps are near-translations)
        lo, hi = y - 1.0, y + 1.0
        step = 1.0
        for _ in range(64):
            if e._raw(lo) - y <= 0:
                break
            lo -= step
            step *= 2
        else:
            raise InversionError("bracket expansion failed (lower)")
        step = 1.0
        for _ in range(64):
            if e._raw(hi) - y >= 0:
                break
            hi += step
            step *= 2
        else:
            raise InversionError("bracket expansion failed (upper)")
        flo, fhi = e._raw(lo) - y, e._raw(hi) - y
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi

    scale = max(1.0, abs(y))
    x = min(max(y, lo), hi)  # good first guess for near-identity maps
    for _ in range(INVERSION_MAX_ITER):
        fx = e._raw(x) - y
        if fx == 0.0:
            return x
        if fx > 0:
            hi = x
        else:
            lo = x
        if hi - lo <= 4e-16 * max(1.0, abs(lo), abs(hi)) and abs(fx) <= INVERSION_TOL * scale:
            return x
        xn = None
        d = e._draw(x)
        if d > 0:
            cand = x - fx / d
            if lo < cand < hi:
                xn = cand
        x = xn if xn is not None else 0.5 * (lo + hi)
    if abs(e._raw(x) - y) > 1e-9 * scale:
        raise InversionError(
            f"inversion of {e.kind()} did not converge at y={y} (non-monotone expression?)"
        )
    return x


# ---------------------------------------------------------------------------
# public operations


def _check_domain(e: DiffeoExpr, x: float) -> float:
    if not math.isfinite(x):
        raise DomainError(f"non-finite point {x}")
    if e.manifold is Manifold.INTERVAL:
        if x < -1e-12 or x > 1 + 1e-12:
            raise DomainError(f"{x} outside [0,1]")
        return min(max(x, 0.0), 1.0)
    if e.manifold is Manifold.CIRCLE:
        return x % 1.0
    return x


def evaluate(e: DiffeoExpr, x: float) -> float:
    """Evaluate ``e`` at ``x`` in the manifold's model domain.

    Inverse nodes are resolved by bracketed monotone root search
    (tolerance 1e-14).  The result lies in the same model domain.
    """
    x = _check_domain(e, x)
    y = e._raw(x)
    if e.manifold is Manifold.INTERVAL:
        return min(max(y, 0.0), 1.0)
    if e.manifold is Manifold.CIRCLE:
        return y % 1.0
    return y


def lift_evaluate(e: DiffeoExpr, x: float) -> float:
    """Evaluate the degree-one lift of a circle expression (no mod-1 reduction)."""
    if e.manifold is not Manifold.CIRCLE:
        raise TagMismatchError("lift evaluation is for circle expressions")
    return e._raw(x)


def derivative(e: DiffeoExpr, x: float) -> float:
    """Derivative of ``e`` at ``x`` by the chain rule over the tree."""
    x = _check_domain(e, x)
    d = e._draw(x)
    if d <= 0:
        raise InvariantBreach(f"derivative {d} <= 0 at x={x} for {e.kind()}")
    return d


def _circle_dist(u: float, v: float) -> float:
    d = abs(u - v) % 1.0
    return min(d, 1.0 - d)


def point_distance(m: Manifold, u: float, v: float) -> float:
    """Distance between two points of the manifold (lifted circle distance)."""
    if m is Manifold.CIRCLE:
        return _circle_dist(u, v)
    return abs(u - v)


@dataclass(frozen=True)
class FixedPointSet:
    """Approximate fixed points of a map, with per-point transversality flags."""

    points: Tuple[float, ...]
    flags: Tuple[str, ...]  # "transverse" | "tangency-suspect"
    residual_tol: float
    interval_signs: Tuple[int, ...]  # sign of f - id on complementary intervals
    degenerate: bool  # |f - id| < tol on the whole grid
    grid_n: int

    def transverse_points(self) -> Tuple[float, ...]:
        return tuple(p for p, fl in zip(self.points, self.flags) if fl == "transverse")


def _grid(m: Manifold, grid_n: int, domain=None):
    if m is Manifold.LINE:
        if domain is None:
            raise DomainError("line expressions need an explicit (lo, hi) domain")
        return np.linspace(domain[0], domain[1], grid_n + 1)
    return np.linspace(0.0, 1.0, grid_n + 1)


def fixed_points(
    e: DiffeoExpr,
    grid_n: int = DEFAULT_GRID,
    tol: float = 1e-10,
    domain=None,
) -> FixedPointSet:
    """Locate fixed points by grid sign changes of f - id refined by bisection.

    Near-tangencies (small residual on a grid cell without a sign change)
    are flagged, never dropped.  An everywhere-small residual yields a
    degenerate, flagged-everywhere result.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    m = e.manifold
    xs = _grid(m, grid_n, domain)

    if m is Manifold.CIRCLE:
        rs = np.array([e._raw(x) - x for x in xs])
        if float(np.max(np.abs(rs - np.round(rs)))) < tol:
            return FixedPointSet(tuple(xs), ("tangency-suspect",) * len(xs), tol, (), True, grid_n)
        n_lo = int(math.floor(rs.min()))
        n_hi = int(math.ceil(rs.max()))
        found = []
        for n in range(n_lo, n_hi + 1):
            found.extend(_roots_on_grid(lambda x: e._raw(x) - x - n, xs, tol))
        found = [( _p % 1.0, fl) for _p, fl in found]
        found.sort()
        pts, flags = _dedup(found, tol)
        signs = ()
    else:
        rs = np.array([e._raw(x) - x for x in xs])
        if float(np.max(np.abs(rs))) < tol:
            return FixedPointSet(tuple(xs), ("tangency-suspect",) * len(xs), tol, (), True, grid_n)
        found = _roots_on_grid(lambda x: e._raw(x) - x, xs, tol)
        found.sort()
        pts, flags = _dedup(found, tol)
        # sign of f - id strictly between consecutive fixed points
        signs = []
        bounds = list(pts)
        if m is Manifold.INTERVAL:
            probes = [0.5 * (a + b) for a, b in zip(bounds, bounds[1:])]
        else:
            probes = [0.5 * (a + b) for a, b in zip(bounds, bounds[1:])]
        for q in probes:
            r = e._raw(q) - q
            signs.append(0 if abs(r) < tol else (1 if r > 0 else -1))
        signs = tuple(signs)
    return FixedPointSet(tuple(pts), tuple(flags), tol, signs, False, grid_n)


def _roots_on_grid(f, xs, tol):
    out = []
    vals = [f(x) for x in xs]
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            out.append((a, "transverse"))
            continue
        if fa * fb < 0:
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = f(mid)
                if fm == 0.0 or b - a < tol:
                    break
                if fa * fm < 0:
                    b, fb = mid, fm
                else:
                    a, fa = mid, fm
            out.append((0.5 * (a + b), "transverse"))
        elif min(abs(fa), abs(fb)) < tol:
            # near-tangency without sign change: flag the closer endpoint
            out.append((a if abs(fa) <= abs(fb) else b, "tangency-suspect"))
    last = xs[-1]
    if vals[-1] == 0.0:
        out.append((last, "transverse"))
    return out


def _dedup(found, tol):
    pts, flags = [], []
    for p, fl in found:
        if pts and abs(p - pts[-1]) <= max(tol, 1e-9):
            if fl == "transverse" and flags[-1] != "transverse":
                flags[-1] = "transverse"
            continue
        pts.append(float(p))
        flags.append(fl)
    return pts, flags


def _apply_seq(seq, x: float) -> float:
    """Apply [(expr, +-1), ...] right to left."""
    for e, s in reversed(seq):
        x = e._raw(x) if s > 0 else e._inv_raw(x)
    return x


def commutator_residual(
    e1: DiffeoExpr,
    e2: DiffeoExpr,
    grid_n: int = DEFAULT_GRID,
    domain=None,
) -> float:
    """Grid sup of |[e1, e2](x) - x| with [e1, e2] = e1 e2 e1^-1 e2^-1.

    Zero at working precision iff the two maps commute; circle residuals are
    lifted angular distances.
    """
    if e1.manifold is not e2.manifold:
        raise TagMismatchError(f"{e1.manifold} vs {e2.manifold}")
    m = e1.manifold
    xs = _grid(m, grid_n, domain)
    seq = [(e1, 1), (e2, 1), (e1, -1), (e2, -1)]
    worst = 0.0
    for x in xs:
        y = _apply_seq(seq, float(x))
        r = point_distance(m, y, float(x)) if m is Manifold.CIRCLE else abs(y - float(x))
        if r > worst:
            worst = r
    return worst


def commutator_witness(
    e1: DiffeoExpr,
    e2: DiffeoExpr,
    grid_n: int = DEFAULT_GRID,
    domain=None,
) -> Tuple[float, float]:
    """(x, residual) maximizing the commutator residual over the grid."""
    if e1.manifold is not e2.manifold:
        raise TagMismatchError(f"{e1.manifold} vs {e2.manifold}")
    m = e1.manifold
    xs = _grid(m, grid_n, domain)
    seq = [(e1, 1), (e2, 1), (e1, -1), (e2, -1)]
    worst, wx = -1.0, float(xs[0])
    for x in xs:
        y = _apply_seq(seq, float(x))
        r = point_distance(m, y, float(x)) if m is Manifold.CIRCLE else abs(y - float(x))
        if r > worst:
            worst, wx = r, float(x)
    return wx, worst


Word = Sequence[Tuple[str, int]]


def word_evaluate(word: Word, assignment: Mapping[str, DiffeoExpr], x: float) -> float:
    """Apply a word over named generators to ``x``, right to left.

    ``word`` is a sequence of (name, exponent) pairs, assumed freely reduced.
    Negative exponents invert through the monotone root search.
    """
    exprs = []
    tag = None
    for name, k in word:
        if name not in assignment:
            raise KeyError(f"unassigned generator name {name!r}")
        e = assignment[name]
        if tag is None:
            tag = e.manifold
        elif e.manifold is not tag:
            raise TagMismatchError(f"{e.manifold} vs {tag} for {name!r}")
        exprs.append((e, k))
    if tag is None:
        return x
    x = _check_domain(exprs[0][0], x)
    for e, k in reversed(exprs):
        s = 1 if k > 0 else -1
        for _ in range(abs(k)):
            x = e._raw(x) if s > 0 else e._inv_raw(x)
    if tag is Manifold.INTERVAL:
        return min(max(x, 0.0), 1.0)
    if tag is Manifold.CIRCLE:
        return x % 1.0
    return x


def identity_residual(e: DiffeoExpr, grid_n: int = DEFAULT_GRID, domain=None) -> float:
    """Grid sup of |e(x) - x| (distance from the identity map)."""
    m = e.manifold
    xs = _grid(m, grid_n, domain)
    worst = 0.0
    for x in xs:
        y = e._raw(float(x))
        r = point_distance(m, y, float(x)) if m is Manifold.CIRCLE else abs(y - float(x))
        if r > worst:
            worst = r
    return worst
