"""Constructive embeddings: alpha sequences, word schedules, the perturbation
recursion building f, generator assembly h_{i,n} = f^i g_n f^-i, and the
verification of a finished assignment.

The recursion walks the word list in order; each stage either certifies that
the current word already moves the basepoint (zero bump) or adds one small
polynomial bump chosen so that the sup/derivative budgets of the stage hold
on a verification grid.  Tolerances eps_m are derived from an explicit
Lipschitz bound and protect all earlier margins against later bumps.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .diffeo import (
    DEFAULT_GRID,
    BumpPoly,
    BumpTrig,
    Compose,
    DiffeoExpr,
    Identity,
    Manifold,
    MobiusI,
    PerturbedF,
    PerturbedLiftS1,
    Power,
    RotationS1,
    _fmt,
    commutator_residual,
    commutator_witness,
    point_distance,
)
from .graphs import CliqueForest, MissingEdgeWitness, SimpleGraph, is_clique_forest
from .raag import NotApplicableError, normal_form
from . import serialize

# word letters: (sym, sign) with sym 0 = f and sym n >= 1 = g_n; sign is +-1
Letter = Tuple[int, int]
FreeWord = Tuple[Letter, ...]

DEFAULT_BASEPOINT = 0.70710678
DEFAULT_WORD_LEN = 6
DEFAULT_ALPHA_K = 5
_RELATION_TOL = 1e-9
_RELATION_CHECK_LIMIT = 5_000_000


class SynthesisError(RuntimeError):
    """A recursion stage could not be completed."""


class NotEmbeddableError(ValueError):
    def __init__(self, witness: MissingEdgeWitness):
        self.witness = witness
        super().__init__(
            f"graph is not a clique forest: vertices {witness.u} and {witness.v} "
            f"share a component but no edge"
        )


# ---------------------------------------------------------------------------
# alpha sequence


@dataclass(frozen=True)
class AlphaSequence:
    """Multiplier parameters in (1, pi) with a height-bounded relation check.

    ``min_relation`` is the minimum of |sum k_i log(alpha_i)| over all integer
    vectors with 0 < max|k_i| <= k_bound; it certifies rational independence
    of the logs up to that height (full independence is not decidable
    numerically).
    """

    alphas: Tuple[float, ...]
    k_bound: int
    min_relation: float

    def to_dict(self) -> dict:
        return {
            "alphas": [_fmt(a) for a in self.alphas],
            "k_bound": self.k_bound,
            "min_relation": _fmt(self.min_relation),
        }

    @staticmethod
    def from_dict(d: dict) -> "AlphaSequence":
        return AlphaSequence(
            tuple(float(a) for a in d["alphas"]),
            int(d["k_bound"]),
            float(d["min_relation"]),
        )


def _first_primes(n: int) -> List[int]:
    primes: List[int] = []
    cand = 2
    while len(primes) < n:
        if all(cand % p for p in primes):
            primes.append(cand)
        cand += 1
    return primes


def choose_alphas(n: int, k: int = DEFAULT_ALPHA_K) -> AlphaSequence:
    """alpha_i = exp(sqrt(p_i)/C) for the first n primes, scaled into (1, pi).

    The logs are proportional to square roots of distinct primes, hence
    rationally independent; the height-k relation minimum is verified by
    exhaustive enumeration and recorded.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    primes = _first_primes(n)
    c = math.sqrt(primes[-1]) / 1.1  # log(alpha_i) <= 1.1 < log(pi)
    logs = [math.sqrt(p) / c for p in primes]
    alphas = tuple(math.exp(v) for v in logs)
    if not all(1.0 < a < math.pi for a in alphas):
        raise SynthesisError(f"alpha values escaped (1, pi): {alphas}")
    if (2 * k + 1) ** n - 1 > _RELATION_CHECK_LIMIT:
        raise ValueError("relation check too large; lower n or k")
    best = math.inf
    for ks in itertools.product(range(-k, k + 1), repeat=n):
        if all(v == 0 for v in ks):
            continue
        best = min(best, abs(sum(kv * lg for kv, lg in zip(ks, logs))))
    if best <= _RELATION_TOL:
        raise SynthesisError(
            f"alpha relation check failed: minimum {best} at height {k}"
        )
    return AlphaSequence(alphas, k, best)


# ---------------------------------------------------------------------------
# word enumeration


def _letter_key(let: Letter) -> int:
    sym, sign = let
    base = 0 if sym == 0 else 2 * sym
    return base + (0 if sign > 0 else 1)


def letter_str(let: Letter) -> str:
    sym, sign = let
    name = "f" if sym == 0 else f"g{sym}"
    return name if sign > 0 else f"{name}^-1"


def word_str(word: FreeWord) -> str:
    return " ".join(letter_str(l) for l in word) if word else "1"


def enumerate_words(num_g: int, max_len: int, require_f: bool = True) -> List[FreeWord]:
    """All freely reduced words of length <= max_len over f, g_1..g_num_g and
    inverses, ordered by length then lexicographically.

    With ``require_f`` (the default) only words containing f or f^-1 are kept,
    matching the schedule the recursion needs.
    """
    if num_g < 1:
        raise ValueError("need at least one g generator")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    letters = sorted(
        [(s, sgn) for s in range(num_g + 1) for sgn in (1, -1)], key=_letter_key
    )
    # length-major order: enumerate per length
    by_len: List[FreeWord] = []
    for length in range(1, max_len + 1):
        def exact(prefix: List[Letter], has_f: bool):
            if len(prefix) == length:
                if has_f or not require_f:
                    by_len.append(tuple(prefix))
                return
            for let in letters:
                if prefix and prefix[-1] == (let[0], -let[1]):
                    continue
                prefix.append(let)
                exact(prefix, has_f or let[0] == 0)
                prefix.pop()

        exact([], False)
    return by_len


def _free_product_forest(num_g: int) -> CliqueForest:
    # vertex 0 = f alone; vertices 1..num_g form one clique (the g's commute)
    return CliqueForest(((0,), tuple(range(1, num_g + 1))))


def word_is_nontrivial(word: FreeWord, num_g: int) -> bool:
    """Nontriviality in <f> * <g_1, ..., g_num_g abelian> via the syllable
    normal form (free reduction alone is not enough once the g's commute)."""
    return not normal_form(word, _free_product_forest(num_g)).trivial


# ---------------------------------------------------------------------------
# synthesis state


@dataclass(frozen=True)
class SynthesisOptions:
    word_len: int = DEFAULT_WORD_LEN
    grid_n: int = DEFAULT_GRID
    basepoint: float = DEFAULT_BASEPOINT
    alpha_k: int = DEFAULT_ALPHA_K
    fallback_basepoints: Tuple[float, ...] = (0.58113883, 0.41421356, 0.8660254)
    eps_floor: float = 1e-300


@dataclass(frozen=True)
class SynthesisState:
    """Audit trail of the recursion.

    ``margins[m-1]`` is D_m for the m-th scheduled word (None when the word is
    trivial in the free product and the stage is vacuous), ``eps[m-1]`` the
    tolerance after stage m.  Words are not stored: the schedule is exactly
    ``enumerate_words(num_g, max_len)`` and is regenerated on load.
    """

    manifold: Manifold
    p: float
    num_g: int
    max_len: int
    word_count: int
    margins: Tuple[Optional[float], ...]
    eps: Tuple[float, ...]
    bumps: Tuple[object, ...]  # BumpPoly on I, BumpTrig on S1
    lambda_est: float
    grid_n: int
    min_derivative: float
    deriv_lower_bound: float

    def words(self) -> List[FreeWord]:
        return enumerate_words(self.num_g, self.max_len)

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold.value,
            "p": _fmt(self.p),
            "num_g": self.num_g,
            "max_len": self.max_len,
            "word_count": self.word_count,
            "margins": [None if m is None else _fmt(m) for m in self.margins],
            "eps": [_fmt(e) for e in self.eps],
            "bumps": [b.to_dict() for b in self.bumps],
            "lambda_est": _fmt(self.lambda_est),
            "grid_n": self.grid_n,
            "min_derivative": _fmt(self.min_derivative),
            "deriv_lower_bound": _fmt(self.deriv_lower_bound),
        }

    @staticmethod
    def from_dict(d: dict) -> "SynthesisState":
        m = Manifold(d["manifold"])
        bump_cls = BumpPoly if m is Manifold.INTERVAL else BumpTrig
        return SynthesisState(
            manifold=m,
            p=float(d["p"]),
            num_g=int(d["num_g"]),
            max_len=int(d["max_len"]),
            word_count=int(d["word_count"]),
            margins=tuple(None if v is None else float(v) for v in d["margins"]),
            eps=tuple(float(v) for v in d["eps"]),
            bumps=tuple(bump_cls.from_dict(b) for b in d["bumps"]),
            lambda_est=float(d["lambda_est"]),
            grid_n=int(d["grid_n"]),
            min_derivative=float(d["min_derivative"]),
            deriv_lower_bound=float(d["deriv_lower_bound"]),
        )


def _word_apply(word: FreeWord, f: DiffeoExpr, gens: Sequence[DiffeoExpr], x: float) -> float:
    """Apply a free word to x (right to left), on lifts for the circle."""
    for sym, sign in reversed(word):
        e = f if sym == 0 else gens[sym - 1]
        x = e._raw(x) if sign > 0 else e._inv_raw(x)
    return x


def _word_margin(word, f, gens, p, manifold) -> float:
    return point_distance(manifold, _word_apply(word, f, gens, p), p)


def _measure_lambda(f: DiffeoExpr, gens: Sequence[DiffeoExpr], grid_n: int) -> float:
    xs = np.linspace(0.0, 1.0, grid_n + 1)
    lam = 1.0
    for e in list(gens) + [f]:
        ds = np.array([e._draw(float(x)) for x in xs])
        dmin, dmax = float(np.min(ds)), float(np.max(ds))
        if dmin <= 0:
            raise SynthesisError(f"letter {e.kind()} has non-positive grid derivative")
        lam = max(lam, dmax, 1.0 / dmin)
    return lam


_POLY_SHAPES: Tuple[Tuple[int, Tuple[float, ...]], ...] = (
    (1, (1.0,)),          # x (1-x)
    (1, (0.0, 1.0)),      # x^2 (1-x)
    (1, (1.0, -1.0)),     # x (1-x)^2
)
_TRIG_PHASES: Tuple[float, ...] = (0.0, math.pi / 2, math.pi / 4)


def _candidate_bumps(manifold, stage, sup_budget, deriv_budget, grid_n):
    """Deterministic candidate list honouring the stage budgets strictly."""
    xs = np.linspace(0.0, 1.0, grid_n + 1)
    cands = []
    if manifold is Manifold.INTERVAL:
        for k, t in _POLY_SHAPES:
            probe = BumpPoly(1.0, stage, k, t)
            s_sup = float(np.max(np.abs(probe.values(xs))))
            ds_sup = float(np.max(np.abs(probe.deriv_values(xs))))
            cmax = 0.999 * min(sup_budget / s_sup, deriv_budget / ds_sup)
            if not (cmax > 0 and math.isfinite(cmax)):
                continue
            for frac in (2, 4, 8):
                for sign in (1.0, -1.0):
                    cands.append(
                        BumpPoly(
                            sign * cmax / frac,
                            stage,
                            k,
                            t,
                            sup_bound=sup_budget,
                            deriv_bound=deriv_budget,
                        )
                    )
    else:
        for phase in _TRIG_PHASES:
            cmax = 0.999 * min(sup_budget, deriv_budget / (2 * math.pi))
            if not (cmax > 0 and math.isfinite(cmax)):
                continue
            for frac in (2, 4, 8):
                for sign in (1.0, -1.0):
                    cands.append(
                        BumpTrig(
                            sign * cmax / frac,
                            stage,
                            phase,
                            sup_bound=sup_budget,
                            deriv_bound=deriv_budget,
                        )
                    )
    return cands


def _build_f(manifold, bumps, grid_n):
    if not bumps:
        return Identity(manifold)
    if manifold is Manifold.INTERVAL:
        return PerturbedF(bumps, grid_n)
    return PerturbedLiftS1(bumps, grid_n)


def perturb_f(
    words: Sequence[FreeWord],
    gens: Sequence[DiffeoExpr],
    p: float,
    opts: SynthesisOptions = SynthesisOptions(),
    manifold: Optional[Manifold] = None,
) -> Tuple[DiffeoExpr, SynthesisState]:
    """Run the recursion over ``words`` and return (f, audit state).

    Stage m leaves f unchanged when the word already moves p by more than the
    stage's sup budget; otherwise it picks the budgeted bump maximizing the
    margin D_m.  The margin of every earlier word is protected by the eps
    chain; all margins are re-verified against the final f before returning.
    """
    if manifold is None:
        manifold = gens[0].manifold if gens else Manifold.INTERVAL
    num_g = len(gens)
    if not words:
        state = SynthesisState(
            manifold, p, num_g, 0, 0, (), (), (), 1.0, opts.grid_n, 1.0, 1.0
        )
        return Identity(manifold), state

    for basepoint in (p,) + tuple(opts.fallback_basepoints):
        try:
            return _perturb_f_at(words, gens, basepoint, opts, manifold, num_g)
        except SynthesisError as exc:
            last_exc = exc
    raise SynthesisError(f"all basepoint retries failed; last: {last_exc}")


def _perturb_f_at(words, gens, p, opts, manifold, num_g):
    if not (0.0 < p < 1.0):
        raise ValueError("basepoint must lie in (0, 1)")
    grid_n = opts.grid_n
    bumps: List[object] = []
    f: DiffeoExpr = Identity(manifold)
    lam = _measure_lambda(f, gens, grid_n)
    margins: List[Optional[float]] = []
    eps: List[float] = []
    eps_prev = 1.0
    fp_forest = _free_product_forest(num_g) if num_g else None

    for m, word in enumerate(words, 1):
        sup_budget = math.ldexp(eps_prev, -(m + 1))
        deriv_budget = math.ldexp(1.0, -(m + 1))
        nontrivial = (
            not normal_form(word, fp_forest).trivial if fp_forest else bool(word)
        )
        if not nontrivial:
            # trivial in <f> * <g's abelian>: the paper's free-group schedule
            # includes such words but no basepoint displacement exists for them
            margins.append(None)
            eps.append(eps_prev)
            continue
        d_prev = _word_margin(word, f, gens, p, manifold)
        if d_prev > sup_budget:
            d_m = d_prev  # zero bump: budgets hold vacuously, margin already there
        else:
            best = None
            for bump in _candidate_bumps(manifold, m, sup_budget, deriv_budget, grid_n):
                cand_f = _build_f(manifold, tuple(bumps) + (bump,), grid_n)
                d_c = _word_margin(word, cand_f, gens, p, manifold)
                if best is None or d_c > best[0]:
                    best = (d_c, bump, cand_f)
            if best is None or best[0] <= 0.0:
                raise SynthesisError(
                    f"stage {m} ({word_str(word)}): no candidate bump moves the "
                    f"basepoint {p} (budget {sup_budget:.3e})"
                )
            d_m, bump, f = best
            bumps.append(bump)
            lam = _measure_lambda(f, gens, grid_n)
        margins.append(d_m)
        # Lipschitz tolerance: a word of length L built from letters with grid
        # derivative sup <= lam moves by at most L lam^(L-1) times a sup-norm
        # perturbation of one letter; divide by a safety factor of 4
        length = len(word)
        eps_m = min(eps_prev, d_m / (8.0 * length * lam ** (length - 1)))
        if not (eps_m > opts.eps_floor):
            raise SynthesisError(
                f"stage {m}: tolerance underflow (eps={eps_m!r}); margins too small"
            )
        eps.append(eps_m)
        eps_prev = eps_m

    # final map and direct re-verification of every margin
    final_f = _build_f(manifold, tuple(bumps), grid_n)
    for m, (word, d_m) in enumerate(zip(words, margins), 1):
        if d_m is None:
            continue
        got = _word_margin(word, final_f, gens, p, manifold)
        if not got > d_m / 2.0:
            raise SynthesisError(
                f"stage {m} ({word_str(word)}): final margin {got} <= D/2 = {d_m / 2}"
            )

    xs = np.linspace(0.0, 1.0, grid_n + 1)
    min_deriv = float(min(final_f._draw(float(x)) for x in xs))
    bound = 1.0 - sum(math.ldexp(1.0, -(b.stage + 1)) for b in bumps)
    max_len = max(len(w) for w in words)
    state = SynthesisState(
        manifold=manifold,
        p=p,
        num_g=num_g,
        max_len=max_len,
        word_count=len(words),
        margins=tuple(margins),
        eps=tuple(eps),
        bumps=tuple(bumps),
        lambda_est=lam,
        grid_n=grid_n,
        min_derivative=min_deriv,
        deriv_lower_bound=bound,
    )
    return final_f, state


# ---------------------------------------------------------------------------
# generator assignment


@dataclass(frozen=True)
class GeneratorAssignment:
    """Vertex -> diffeomorphism realizing the RAAG, h_{i,n} = f^i g_n f^-i."""

    graph: SimpleGraph
    manifold: Manifold
    forest: CliqueForest
    alphas: AlphaSequence
    layout: Tuple[Tuple[int, int, int], ...]  # (vertex, component index i, slot n)
    f: DiffeoExpr
    gens: Tuple[DiffeoExpr, ...]
    state: Optional[SynthesisState]

    def expr_for(self, v: int) -> DiffeoExpr:
        for vv, i, n in self.layout:
            if vv == v:
                g = self.gens[n - 1]
                if isinstance(self.f, Identity):
                    return g
                return Compose((Power(self.f, i), g, Power(self.f, -i)))
        raise KeyError(v)

    def exprs(self) -> Dict[int, DiffeoExpr]:
        return {v: self.expr_for(v) for v, _, _ in self.layout}

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "manifold": self.manifold.value,
            "clique_forest": self.forest.to_dict(),
            "alphas": self.alphas.to_dict(),
            "layout": [list(t) for t in self.layout],
            "f": serialize.expr_to_node(self.f),
            "gens": [serialize.expr_to_node(g) for g in self.gens],
            "state": self.state.to_dict() if self.state else None,
        }

    @staticmethod
    def from_dict(d: dict) -> "GeneratorAssignment":
        m = Manifold(d["manifold"])
        return GeneratorAssignment(
            graph=SimpleGraph.from_dict(d["graph"]),
            manifold=m,
            forest=CliqueForest.from_dict(d["clique_forest"]),
            alphas=AlphaSequence.from_dict(d["alphas"]),
            layout=tuple(tuple(t) for t in d["layout"]),
            f=serialize.node_to_expr(d["f"], m),
            gens=tuple(serialize.node_to_expr(g, m) for g in d["gens"]),
            state=SynthesisState.from_dict(d["state"]) if d["state"] else None,
        )


def synthesize_embedding(
    g: SimpleGraph,
    manifold: Manifold = Manifold.INTERVAL,
    opts: SynthesisOptions = SynthesisOptions(),
) -> GeneratorAssignment:
    """Build an explicit embedding of the RAAG of ``g`` when it exists.

    Component i (1-based) receives h_{i,n} = f^i g_n f^-i for its n-th vertex.
    A single clique needs no f at all: its g's already form a free abelian
    group of the right rank.
    """
    if manifold is Manifold.LINE:
        raise NotApplicableError("synthesis covers I and S1 only")
    cert = is_clique_forest(g)
    if isinstance(cert, MissingEdgeWitness):
        raise NotEmbeddableError(cert)
    forest = cert
    if not forest.components:
        alphas = AlphaSequence((), opts.alpha_k, math.inf)
        return GeneratorAssignment(
            g, manifold, forest, alphas, (), Identity(manifold), (), None
        )
    num_g = max(forest.sizes)
    # relation height must cover the largest exponent any scheduled pure-g
    # word can reach, i.e. the word length
    alphas = choose_alphas(num_g, max(opts.alpha_k, opts.word_len))
    if manifold is Manifold.INTERVAL:
        gens = tuple(MobiusI(a) for a in alphas.alphas)
    else:
        gens = tuple(RotationS1(a) for a in alphas.alphas)
    layout = []
    for i, comp in enumerate(forest.components, 1):
        for n, v in enumerate(comp, 1):
            layout.append((v, i, n))
    layout = tuple(sorted(layout))
    if len(forest.components) == 1:
        return GeneratorAssignment(
            g, manifold, forest, alphas, layout, Identity(manifold), gens, None
        )
    words = enumerate_words(num_g, opts.word_len)
    f, state = perturb_f(words, gens, opts.basepoint, opts, manifold)
    return GeneratorAssignment(g, manifold, forest, alphas, layout, f, gens, state)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    manifold: Manifold
    grid_n: int
    tol: float
    word_len: int  # truncation: only words up to this length are certified
    edge_checks: Tuple[dict, ...]
    non_edge_checks: Tuple[dict, ...]
    margin_checks: Tuple[Tuple[int, float, float], ...]  # (word index, margin, D/2)
    margin_failures: Tuple[dict, ...]
    pure_g_checked: int
    pure_g_all_nontrivial: bool
    notes: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "manifold": self.manifold.value,
            "grid_n": self.grid_n,
            "tol": self.tol,
            "word_len": self.word_len,
            "truncation_note": (
                f"certification covers words of length <= {self.word_len} only"
            ),
            "edge_checks": list(self.edge_checks),
            "non_edge_checks": list(self.non_edge_checks),
            "margins": [[i, _fmt(m), _fmt(t)] for i, m, t in self.margin_checks],
            "margin_failures": list(self.margin_failures),
            "pure_g_checked": self.pure_g_checked,
            "pure_g_all_nontrivial": self.pure_g_all_nontrivial,
            "notes": list(self.notes),
        }


def verify_assignment(
    assignment: GeneratorAssignment,
    word_len: Optional[int] = None,
    grid_n: int = DEFAULT_GRID,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check edges (commutation), non-edges (a witness point moved by more
    than 10 tol), and the free-product margins of the synthesis state.

    Margin certification is truncated at ``word_len`` (the state's own
    schedule length by default); the report says so prominently.
    """
    g = assignment.graph
    exprs = assignment.exprs()
    notes = []
    ok = True

    edge_checks = []
    for u, v in sorted(g.edges):
        r = commutator_residual(exprs[u], exprs[v], grid_n)
        good = r < tol
        ok = ok and good
        edge_checks.append({"u": u, "v": v, "residual": r, "ok": good})

    non_edge_checks = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            x, r = commutator_witness(exprs[u], exprs[v], grid_n)
            good = r > 10 * tol
            ok = ok and good
            non_edge_checks.append(
                {"u": u, "v": v, "witness_x": x, "residual": r, "ok": good}
            )

    margin_checks: List[Tuple[int, float, float]] = []
    margin_failures: List[dict] = []
    pure_g_checked = 0
    pure_g_ok = True
    state = assignment.state
    if state is not None and state.word_count:
        wl = state.max_len if word_len is None else min(word_len, state.max_len)
        if word_len is not None and word_len > state.max_len:
            notes.append(
                f"requested word_len {word_len} exceeds the recorded schedule "
                f"({state.max_len}); certification truncated there"
            )
        words = state.words()
        for idx, (word, d_m) in enumerate(zip(words, state.margins), 1):
            if len(word) > wl:
                continue
            if d_m is None:
                continue
            margin = _word_margin(word, assignment.f, assignment.gens, state.p,
                                  assignment.manifold)
            margin_checks.append((idx, margin, d_m / 2.0))
            if not margin > d_m / 2.0:
                ok = False
                margin_failures.append(
                    {"index": idx, "word": word_str(word), "margin": margin,
                     "threshold": d_m / 2.0}
                )
        # pure-g words: nontrivial exactly when the exponent vector is nonzero;
        # the alpha independence record certifies the nonzero case as long as
        # the exponents stay within the checked height
        fp = _free_product_forest(state.num_g)
        for word in enumerate_words(state.num_g, wl, require_f=False):
            if any(sym == 0 for sym, _ in word):
                continue
            pure_g_checked += 1
            nf = normal_form(word, fp)
            if nf.trivial:
                continue  # zero exponent vector: genuinely trivial
            worst = max(abs(e) for _, e in nf.syllables[0].exponents)
            if worst > assignment.alphas.k_bound:
                pure_g_ok = False
                notes.append(
                    f"pure-g word {word_str(word)} has exponent height {worst} "
                    f"above the checked alpha relation bound {assignment.alphas.k_bound}"
                )
        ok = ok and pure_g_ok
        wl_used = wl
    else:
        wl_used = word_len or 0
        if state is None:
            notes.append("single-clique assignment: no f, free-product checks vacuous")

    return VerificationReport(
        ok=ok,
        manifold=assignment.manifold,
        grid_n=grid_n,
        tol=tol,
        word_len=wl_used,
        edge_checks=tuple(edge_checks),
        non_edge_checks=tuple(non_edge_checks),
        margin_checks=tuple(margin_checks),
        margin_failures=tuple(margin_failures),
        pure_g_checked=pure_g_checked,
        pure_g_all_nontrivial=pure_g_ok,
        notes=tuple(notes),
    )
