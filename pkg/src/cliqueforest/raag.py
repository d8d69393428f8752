"""RAAG embeddability decision, free-product normal forms, commutation graphs.

A right-angled Artin group on a clique forest splits as a free product of
free abelian factors, one per component; its word problem reduces to the
syllable normal form implemented here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

from .diffeo import (
    DEFAULT_GRID,
    DiffeoExpr,
    Manifold,
    Power,
    TagMismatchError,
    commutator_residual,
    identity_residual,
)
from .graphs import (
    CliqueForest,
    MissingEdgeWitness,
    SimpleGraph,
    is_clique_forest,
)

RaagWord = Sequence[Tuple[int, int]]  # (vertex, nonzero exponent) pairs

DEFAULT_TOL = 1e-9
DEFAULT_POWER_BOUND = 12


class NotApplicableError(ValueError):
    """The requested manifold is outside the decision theorem's scope."""


@dataclass(frozen=True)
class Syllable:
    component: int
    exponents: Tuple[Tuple[int, int], ...]  # (vertex, exponent), vertex-sorted

    def to_dict(self):
        return {"component": self.component, "exponents": [list(p) for p in self.exponents]}


@dataclass(frozen=True)
class NormalForm:
    """Reduced syllable sequence in the free product of abelian factors.

    Adjacent syllables lie in distinct components; no zero syllables; the
    empty form represents exactly the trivial element.
    """

    syllables: Tuple[Syllable, ...]

    @property
    def trivial(self) -> bool:
        return not self.syllables

    def __str__(self):
        if self.trivial:
            return "1"
        chunks = []
        for s in self.syllables:
            inner = " ".join(
                f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in s.exponents
            )
            chunks.append(f"[{inner}]")
        return " ".join(chunks)


def normal_form(word: RaagWord, forest: CliqueForest) -> NormalForm:
    """Unique normal form of a RAAG word over a clique forest.

    Consecutive same-component letters collapse into one exponent vector;
    zero syllables are deleted and neighbours re-merge, to a fixpoint.
    """
    comp_of: Dict[int, int] = {}
    for i, comp in enumerate(forest.components):
        for v in comp:
            comp_of[v] = i
    stack: List[Tuple[int, Dict[int, int]]] = []
    for v, e in word:
        if e == 0:
            continue
        try:
            c = comp_of[v]
        except KeyError:
            raise KeyError(f"vertex {v} not in the clique forest")
        if stack and stack[-1][0] == c:
            vec = stack[-1][1]
            nv = vec.get(v, 0) + e
            if nv:
                vec[v] = nv
            else:
                vec.pop(v, None)
                if not vec:
                    stack.pop()
        else:
            stack.append((c, {v: e}))
    return NormalForm(
        tuple(
            Syllable(c, tuple(sorted(vec.items())))
            for c, vec in stack
        )
    )


def word_inverse(word: RaagWord) -> Tuple[Tuple[int, int], ...]:
    return tuple((v, -e) for v, e in reversed(word))


def word_concat(*words: RaagWord) -> Tuple[Tuple[int, int], ...]:
    out: List[Tuple[int, int]] = []
    for w in words:
        out.extend(w)
    return tuple(out)


@dataclass(frozen=True)
class EmbeddabilityDecision:
    embeddable: bool
    manifold: Manifold
    certificate: Union[CliqueForest, MissingEdgeWitness]

    def to_dict(self) -> dict:
        d = {"embeddable": self.embeddable, "manifold": self.manifold.value}
        if self.embeddable:
            d["clique_forest"] = self.certificate.to_dict()
        else:
            d["missing_edge"] = self.certificate.to_dict()
        return d


def embeddable_raag(g: SimpleGraph, manifold: Manifold) -> EmbeddabilityDecision:
    """Decide embeddability of the RAAG of ``g`` into the analytic
    diffeomorphism group of the interval or the circle.

    The criterion is the same for both manifolds: every connected component
    of ``g`` must be complete.  The line is rejected: the transitivity
    lemmas underlying the criterion fail there.
    """
    if manifold is Manifold.LINE:
        raise NotApplicableError("the decision criterion covers I and S1 only")
    cert = is_clique_forest(g)
    return EmbeddabilityDecision(isinstance(cert, CliqueForest), manifold, cert)


@dataclass(frozen=True)
class CommutationGraphResult:
    """Empirical commutation graph plus the parameters that produced it."""

    graph: SimpleGraph
    manifold: Manifold
    tol: float
    power_bound: int  # cap on the power search (meaningful for the circle)
    grid_n: int
    residuals: Tuple[Tuple[int, int, float], ...]  # (i, j, best residual)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "manifold": self.manifold.value,
            "tol": self.tol,
            "power_bound": self.power_bound,
            "grid_n": self.grid_n,
            "residuals": [[i, j, r] for i, j, r in self.residuals],
        }


def commutation_graph(
    fs: Sequence[DiffeoExpr],
    tol: float = DEFAULT_TOL,
    power_bound: int = DEFAULT_POWER_BOUND,
    grid_n: int = DEFAULT_GRID,
    domain=None,
) -> CommutationGraphResult:
    """Edge between i and j iff the maps commute within ``tol``.

    On the circle an edge means some pair of equal powers m <= power_bound
    commutes; absence of an edge only means no commuting powers were found
    up to the cap.  Maps indistinguishable from the identity are rejected,
    mirroring the non-triviality hypotheses of the underlying lemmas.
    """
    if not fs:
        raise ValueError("empty map list")
    tags = {e.manifold for e in fs}
    if len(tags) != 1:
        raise TagMismatchError(f"mixed manifold tags: {tags}")
    m = fs[0].manifold
    if power_bound < 1:
        raise ValueError("power_bound must be >= 1")
    for idx, e in enumerate(fs):
        if identity_residual(e, grid_n, domain) < tol:
            raise ValueError(f"map {idx} is numerically the identity; rejected")
    edges = []
    residuals = []
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if m is Manifold.CIRCLE:
                best = None
                for k in range(1, power_bound + 1):
                    r = commutator_residual(
                        Power(fs[i], k), Power(fs[j], k), grid_n, domain
                    )
                    if best is None or r < best:
                        best = r
                    if r < tol:
                        break
            else:
                best = commutator_residual(fs[i], fs[j], grid_n, domain)
            residuals.append((i, j, best))
            if best < tol:
                edges.append((i, j))
    return CommutationGraphResult(
        SimpleGraph.from_edges(len(fs), edges),
        m,
        tol,
        power_bound,
        grid_n,
        tuple(residuals),
    )
