import itertools
import json
import math

import pytest

from cliqueforest import (
    Identity,
    Manifold,
    MobiusI,
    NotApplicableError,
    NotEmbeddableError,
    SimpleGraph,
    choose_alphas,
    commutator_residual,
    commutator_witness,
    enumerate_words,
    evaluate,
    perturb_f,
    synthesize_embedding,
    verify_assignment,
)
from cliqueforest.synthesis import (
    GeneratorAssignment,
    SynthesisOptions,
    SynthesisState,
    _letter_key,
    word_is_nontrivial,
)


def brute_force_words(num_g, max_len, require_f=True):
    """Oracle: generate-and-filter over all letter tuples."""
    letters = [(s, sgn) for s in range(num_g + 1) for sgn in (1, -1)]
    out = []
    for n in range(1, max_len + 1):
        batch = []
        for w in itertools.product(letters, repeat=n):
            if any(w[i] == (w[i + 1][0], -w[i + 1][1]) for i in range(n - 1)):
                continue  # not freely reduced
            if require_f and not any(sym == 0 for sym, _ in w):
                continue
            batch.append(w)
        batch.sort(key=lambda w: [_letter_key(l) for l in w])
        out.extend(batch)
    return out


class TestChooseAlphas:
    def test_range(self):
        seq = choose_alphas(4, 3)
        assert all(1.0 < a < math.pi for a in seq.alphas)
        assert len(seq.alphas) == 4

    def test_relation_minimum_positive(self):
        seq = choose_alphas(3, 5)
        assert seq.min_relation > 1e-9
        assert seq.k_bound == 5

    def test_log_ratios_are_sqrt_prime_ratios(self):
        # independent characterization of the construction
        seq = choose_alphas(3, 2)
        logs = [math.log(a) for a in seq.alphas]
        for (la, p), (lb, q) in itertools.combinations(zip(logs, (2, 3, 5)), 2):
            assert la / lb == pytest.approx(math.sqrt(p / q), rel=1e-12)

    def test_relation_minimum_matches_brute_force(self):
        seq = choose_alphas(2, 4)
        logs = [math.log(a) for a in seq.alphas]
        best = min(
            abs(k1 * logs[0] + k2 * logs[1])
            for k1 in range(-4, 5)
            for k2 in range(-4, 5)
            if (k1, k2) != (0, 0)
        )
        assert seq.min_relation == pytest.approx(best, rel=1e-9)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            choose_alphas(0, 5)
        with pytest.raises(ValueError):
            choose_alphas(30, 30)  # relation check too large

    def test_round_trip(self):
        seq = choose_alphas(2, 3)
        from cliqueforest import AlphaSequence

        back = AlphaSequence.from_dict(json.loads(json.dumps(seq.to_dict())))
        assert back.alphas == seq.alphas
        assert back.min_relation == seq.min_relation


class TestEnumerateWords:
    def test_counts_against_oracle(self):
        for num_g, max_len, require_f in [(1, 2, True), (1, 3, True), (2, 3, True),
                                          (2, 2, False), (3, 2, True)]:
            assert enumerate_words(num_g, max_len, require_f) == brute_force_words(
                num_g, max_len, require_f
            )

    def test_one_g_len_two_count(self):
        # 4 reduced length-2 words per f-letter pairing plus f, f^-1 alone
        assert len(enumerate_words(1, 2)) == 12

    def test_length_major_order(self):
        ws = enumerate_words(2, 4)
        lens = [len(w) for w in ws]
        assert lens == sorted(lens)

    def test_all_reduced(self):
        for w in enumerate_words(2, 3):
            assert not any(
                w[i] == (w[i + 1][0], -w[i + 1][1]) for i in range(len(w) - 1)
            )

    def test_require_f(self):
        assert all(any(s == 0 for s, _ in w) for w in enumerate_words(2, 3))

    def test_bad_args(self):
        with pytest.raises(ValueError):
            enumerate_words(0, 3)
        with pytest.raises(ValueError):
            enumerate_words(2, 0)


class TestWordNontriviality:
    def test_f_conjugated_g_commutator_is_trivial(self):
        # g1 g2 g1^-1 g2^-1 dies once the g's commute, so its f-conjugate does too
        w = ((0, 1), (1, 1), (2, 1), (1, -1), (2, -1), (0, -1))
        assert not word_is_nontrivial(w, 2)

    def test_basic_nontrivial(self):
        assert word_is_nontrivial(((0, 1), (1, 1)), 2)
        assert word_is_nontrivial(((0, 1),), 2)

    def test_free_reduction_not_enough(self):
        # freely reduced but trivial in the free product
        w = ((1, 1), (2, 1), (1, -1), (2, -1))
        assert not word_is_nontrivial(w, 2)


class TestPerturbF:
    def test_small_interval_run(self):
        gens = (MobiusI(2.0), MobiusI(2.5))
        words = enumerate_words(2, 3)
        f, state = perturb_f(words, gens, 0.70710678)
        assert state.word_count == len(words)
        # margins: positive for nontrivial words, None for free-product-trivial
        for w, m in zip(words, state.margins):
            if word_is_nontrivial(w, 2):
                assert m is not None and m > 0
            else:
                assert m is None
        # eps chain is nonincreasing and positive
        assert all(a >= b for a, b in zip(state.eps, state.eps[1:]))
        assert state.eps[-1] > 0
        assert state.min_derivative > 0

    def test_margins_survive_final_map(self):
        gens = (MobiusI(2.0), MobiusI(2.5))
        words = enumerate_words(2, 3)
        f, state = perturb_f(words, gens, 0.70710678)
        from cliqueforest.synthesis import _word_margin

        for w, m in zip(words, state.margins):
            if m is not None:
                assert _word_margin(w, f, gens, state.p, Manifold.INTERVAL) > m / 2

    def test_state_round_trip_exact(self):
        gens = (MobiusI(2.0), MobiusI(2.5))
        f, state = perturb_f(enumerate_words(2, 3), gens, 0.70710678)
        back = SynthesisState.from_dict(json.loads(json.dumps(state.to_dict())))
        assert back == state

    def test_empty_schedule(self):
        f, state = perturb_f((), (MobiusI(2.0),), 0.5)
        assert isinstance(f, Identity)
        assert state.word_count == 0

    def test_bad_basepoint(self):
        with pytest.raises(ValueError):
            perturb_f(enumerate_words(1, 1), (MobiusI(2.0),), 1.5,
                      SynthesisOptions(fallback_basepoints=()))


class TestSynthesizeEmbedding:
    def test_single_clique_needs_no_f(self):
        g = SimpleGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
        asg = synthesize_embedding(g)
        assert isinstance(asg.f, Identity)
        assert asg.state is None
        assert len(asg.gens) == 3
        rep = verify_assignment(asg)
        assert rep.ok
        assert rep.non_edge_checks == ()

    def test_not_embeddable(self):
        g = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
        with pytest.raises(NotEmbeddableError) as ei:
            synthesize_embedding(g)
        assert (ei.value.witness.u, ei.value.witness.v) == (0, 2)

    def test_line_rejected(self):
        with pytest.raises(NotApplicableError):
            synthesize_embedding(SimpleGraph.from_edges(2, [(0, 1)]), Manifold.LINE)

    def test_empty_graph(self):
        asg = synthesize_embedding(SimpleGraph.from_edges(0, []))
        assert asg.layout == ()
        assert verify_assignment(asg).ok

    def test_two_cliques_interval(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, opts=SynthesisOptions(word_len=4))
        rep = verify_assignment(asg, word_len=4)
        assert rep.ok
        # edges commute, non-edges visibly do not
        assert all(c["residual"] < 1e-9 for c in rep.edge_checks)
        assert all(c["residual"] > 1e-8 for c in rep.non_edge_checks)

    def test_two_cliques_circle(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, Manifold.CIRCLE, SynthesisOptions(word_len=4))
        rep = verify_assignment(asg, word_len=4)
        assert rep.ok

    def test_layout_respects_components(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, opts=SynthesisOptions(word_len=4))
        assert asg.layout == ((0, 1, 1), (1, 1, 2), (2, 2, 1), (3, 2, 2))
        # conjugation depth varies with the component, not the slot
        for v, i, n in asg.layout:
            e = asg.expr_for(v)
            if not isinstance(asg.f, Identity):
                assert e.parts[0].exponent == i

    def test_alpha_height_covers_word_len(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, opts=SynthesisOptions(word_len=6))
        assert asg.alphas.k_bound >= 6


class TestVerifyAssignment:
    def test_round_trip_preserves_residuals(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, opts=SynthesisOptions(word_len=4))
        back = GeneratorAssignment.from_dict(json.loads(json.dumps(asg.to_dict())))
        r1 = verify_assignment(asg, word_len=4)
        r2 = verify_assignment(back, word_len=4)
        assert r1.to_dict() == r2.to_dict()

    def test_truncation_note(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        asg = synthesize_embedding(g, opts=SynthesisOptions(word_len=4))
        rep = verify_assignment(asg, word_len=9)
        assert any("truncated" in n for n in rep.notes)
        assert rep.word_len == 4
        assert "length <= 4" in rep.to_dict()["truncation_note"]

    def test_doctored_assignment_fails(self):
        # replace one generator with a non-commuting impostor: the edge check
        # must catch it
        g = SimpleGraph.from_edges(2, [(0, 1)])
        asg = synthesize_embedding(g)
        from cliqueforest import BumpPoly, PerturbedF

        bad = PerturbedF((BumpPoly(0.05, 1),))
        doctored = GeneratorAssignment(
            asg.graph, asg.manifold, asg.forest, asg.alphas, asg.layout,
            asg.f, (asg.gens[0], bad), asg.state,
        )
        rep = verify_assignment(doctored)
        assert not rep.ok


class TestAcceptanceScaleRun:
    def test_k2_k3_report_ok(self, k2_k3_assignment):
        rep = verify_assignment(k2_k3_assignment, word_len=6)
        assert rep.ok
        assert rep.pure_g_all_nontrivial

    def test_k2_k3_distinct_components_forced_apart(self, k2_k3_assignment):
        # vertices in different components genuinely fail to commute
        e0 = k2_k3_assignment.expr_for(0)
        e2 = k2_k3_assignment.expr_for(2)
        _, r = commutator_witness(e0, e2, 256)
        assert r > 1e-8
