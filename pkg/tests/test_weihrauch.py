import itertools

import pytest
from hypothesis import given

from transfinia import corpus as C
from transfinia import oracles as O
from transfinia import weihrauch as Wh
from transfinia.diff_core import UNDEFINED, eval_diff_dec, eval_diff_inc, eval_hybrid
from transfinia.learners import change_events, horizon_value, mind_change_otype
from transfinia.ordinals import OMEGA, add, ordinal
from transfinia.staged_sets import NEVER, NON_WO, CoStagedSet, DecSegment, Member, Ramp, SeqSpec, StagedSet, WellOrder

from strategies import rng_from, seeds

W = OMEGA
N = NEVER


def test_least_number_examples():
    assert Wh.lnp_pi11(StagedSet((N, N, N, 4, N, 0))) == 3
    assert Wh.lnp_pi11(StagedSet((N, N, 1))) == 2
    assert Wh.lnp_pi11(StagedSet((3, 0, 2))) == 0
    with pytest.raises(Wh.EmptyInstance):
        Wh.lnp_pi11(StagedSet((N, N)))


def test_count_examples():
    assert Wh.count_sigma11(CoStagedSet((0, 0, 0))) == 0
    assert Wh.count_sigma11(CoStagedSet((0, N, 0, 0, N))) == 2
    assert Wh.count_sigma11(CoStagedSet((5, 5, N))) == 1


def test_star_transform_examples():
    star = Wh.star_transform(StagedSet((N, N, 1, N, 0)))
    assert star.final == {0, 1}
    assert Wh.star_transform(StagedSet((0, N))).final == frozenset()
    assert Wh.star_transform(StagedSet((N, 2))).final == {0}


def test_count_to_lnp_examples():
    assert Wh.count_to_lnp_transform(CoStagedSet((N, N, N))).final == {3}
    assert sorted(Wh.count_to_lnp_transform(CoStagedSet((1, N))).final) == [1, 2]
    assert Wh.count_to_lnp_transform(CoStagedSet((0, 0))).final == {0}


def test_lnp_to_count_examples():
    a = Wh.lnp_to_count_transform(StagedSet((0, 3, N)))
    assert O.brute_min(a.final) == 2
    a = Wh.lnp_to_count_transform(StagedSet((N, 4, N)))
    assert O.brute_min(a.final) == 1


def test_transforms_by_exhaustion_on_small_universes():
    for entry in itertools.product((0, 1, 2, 3, N), repeat=4):
        a = StagedSet(entry)
        if a.final:
            assert O.brute_min(a.final) == O.brute_count(Wh.star_transform(a).final)
    corpus = [StagedSet(e) for e in itertools.product((0, 1, 2, 3, N), repeat=4)]
    corpus = [a for a in corpus if a.final]
    report = Wh.verify_reduction(Wh.PI11_LNP_TO_SIGMA11_COUNT, Wh.PI11_LNP, Wh.SIGMA11_COUNT, corpus)
    assert report.ok and len(report.records) == len(corpus)


def test_identity_and_corrupted_reductions():
    corpus = [StagedSet(e) for e in itertools.product((0, 1, N), repeat=2) if e != (N, N)]
    ident = Wh.identity_reduction()
    assert Wh.verify_reduction(ident, Wh.PI11_LNP, Wh.PI11_LNP, corpus).ok
    bad = Wh.verify_reduction(Wh.corrupted(ident), Wh.PI11_LNP, Wh.PI11_LNP, corpus)
    assert not bad.ok and bad.failures


def test_parallel_verification_keeps_order():
    corpus = [C.random_staged_set(rng_from(i), 4, p_never=0.2) for i in range(60)]
    corpus = [a for a in corpus if a.final]
    one = Wh.verify_reduction(Wh.PI11_LNP_TO_SIGMA11_COUNT, Wh.PI11_LNP, Wh.SIGMA11_COUNT, corpus, jobs=1)
    many = Wh.verify_reduction(Wh.PI11_LNP_TO_SIGMA11_COUNT, Wh.PI11_LNP, Wh.SIGMA11_COUNT, corpus, jobs=4)
    assert one == many


def test_two_valued_examples():
    assert Wh.lnp_wo_two_valued(StagedSet((0, 0)), NON_WO) == 0
    assert Wh.lnp_wo_two_valued(StagedSet((N, 0)), WellOrder((0, 1))) == 1
    assert Wh.lnp_wo_two_valued(StagedSet((0, N, 0)), WellOrder((2, 1, 0))) == 0


def test_level_sets_example():
    p, y = StagedSet((2, 1, N)), WellOrder((0, 1, 2))
    b = Wh.bn_sets([(p, y)])
    assert b.otype(0) == ordinal(2)
    assert eval_diff_dec(b) == frozenset() and Wh.lnp_wo_two_valued(p, y) == 0
    assert Wh.bn_sets([(p, y)], include_wo_level=True).otype(0) == ordinal(3)
    assert Wh.bn_sets([(StagedSet((N, N)), y)]).otype(0) == ordinal(0)
    assert Wh.bn_sets([(p, NON_WO)]).otype(0) == ordinal(0)


@given(seeds)
def test_level_sets_decide_the_two_valued_problem(seed):
    rng = rng_from(seed)
    size = rng.randint(1, 5)
    fam = [(C.random_staged_set(rng, size), C.random_code(rng, size)) for _ in range(3)]
    diff = eval_diff_dec(Wh.bn_sets(fam))
    assert [int(i in diff) for i in range(3)] == [Wh.lnp_wo_two_valued(a, y) for a, y in fam]


def test_increasing_embedding_examples():
    seq = SeqSpec.inc(2, [1, 2])
    red, _ = Wh.embed_inc_diff(seq)
    assert Wh.lnp_wo_two_valued(*red.inner(0)) == 1 and 0 in eval_diff_inc(seq)
    s, _ = red.inner(1)
    assert s.final == frozenset() and Wh.lnp_wo_two_valued(*red.inner(1)) == 0


def test_decreasing_embedding_examples():
    eta = add(W, 1)
    seq = SeqSpec(eta, "dec", (
        Member(DecSegment(1), Ramp(0, 1)),
        Member(DecSegment(W), Ramp(0, 1)),
        Member(DecSegment(0), Ramp(0, 1)),
    ))
    red, _ = Wh.embed_dec_diff(seq)
    assert [Wh.sigma_lnp_wo_two_valued(*red.inner(x)) for x in range(3)] == [1, 0, 0]
    assert eval_diff_dec(seq) == {0}


@given(seeds)
def test_embeddings_are_pointwise_exact(seed):
    rng = rng_from(seed)
    eta = rng.choice(C.EMBED_ETAS)
    inc = C.random_inc_seq(rng, eta, rng.randint(1, 5))
    red, _ = Wh.embed_inc_diff(inc)
    diff = eval_diff_inc(inc)
    assert [Wh.lnp_wo_two_valued(*red.inner(x)) for x in range(inc.size)] == [int(x in diff) for x in range(inc.size)]
    dec = C.random_dec_seq(rng, eta, rng.randint(1, 5), force_limit=False)
    red, _ = Wh.embed_dec_diff(dec)
    diff = eval_diff_dec(dec)
    assert [Wh.sigma_lnp_wo_two_valued(*red.inner(x)) for x in range(dec.size)] == [int(x in diff) for x in range(dec.size)]


def test_guess_trace_examples():
    assert Wh.sigma_lnp_guess_trace(CoStagedSet((1, N)), NON_WO, "c").segments[0].value == "c"
    assert len(Wh.sigma_lnp_guess_trace(CoStagedSet((1, N)), NON_WO, "c").segments) == 1
    tr = Wh.sigma_lnp_guess_trace(CoStagedSet((1, 2, N)), WellOrder((0, 1, 2)), "c")
    after_reveal = change_events(tr)[1:]
    assert len(after_reveal) == 2 and horizon_value(tr) == 2


@pytest.mark.parametrize("n", range(9))
def test_ladder_forces_changes(n):
    s, y = Wh.guess_ladder(n)
    tr = Wh.sigma_lnp_guess_trace(s, y, 0)
    assert mind_change_otype(tr) >= ordinal(n)
    assert horizon_value(tr) == n


@given(seeds)
def test_change_predicate_agrees_with_direct_evaluation(seed):
    rng = rng_from(seed)
    size = rng.randint(1, 5)
    s, y = C.random_costaged_set(rng, size), C.random_code(rng, size)
    assert Wh.sigma_lnp_wo_by_changes(s, y) == Wh.sigma_lnp_wo_two_valued(s, y)


def test_realizers():
    fam = [StagedSet((N, 3, 1)), StagedSet((N, N, N)), StagedSet((0, 0, 0))]
    assert eval_hybrid(Wh.lnp_realizer_spec(fam)) == (1, UNDEFINED, 0)
    fam = [CoStagedSet((1, 2, N)), CoStagedSet((N, N, N))]
    assert eval_hybrid(Wh.sigma_lnp_realizer_spec(fam)) == (2, 0)
