"""Property suites run by ``transfinia check``.

A suite turns a config into cases ``(case_id, payload)``; ``payload`` is
plain JSON that fully describes the case, so a failing case can be re-run
from its witness alone.  ``check(payload)`` returns ``(ok, detail)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import corpus as C
from . import oracles as O
from .diff_core import (
    UNDEFINED,
    HybridSpec,
    IndexValues,
    NotComplementary,
    delta_normalize,
    eval_diff,
    eval_diff_dec,
    eval_diff_inc,
    eval_hybrid,
)
from .learners import (
    merge_countdowns,
    OmegaBlock,
    Plateau,
    Trace,
    countdown_to_diff,
    dec_to_mindchange,
    diff_to_countdown,
    horizon_value,
    mind_change_otype,
    mindchange_to_dec,
    validate_countdown,
    validate_semicontinuity,
)
from .matrices import (
    InputsDisagree,
    complement_matrix,
    diagonalize,
    eval_matrix_diff,
    eval_type_delta,
    is_delta_omega_plus_one,
    matrix_guess_trace,
    matrix_normalize,
    merge_delta,
    pwo_coproduct_dec,
    relabel,
    validate_matrix,
)
from .ordinals import OMEGA, ONE, ZERO, add, compare, from_json, fundamental_seq, mul, ordinal, parity, sub, to_json
from .serialize import dump, load
from .staged_sets import (
    DECREASING,
    INCREASING,
    NEVER,
    Constant,
    DecSegment,
    Member,
    Ramp,
    SeqSpec,
    StagedSet,
    WellOrder,
    from_slices,
    probe_grid,
    validate_monotone,
)
from .tree_system import build_tree, check_wellfounded, recover_membership, sigma_x
from . import weihrauch as Wh

__all__ = ["Suite", "SUITES", "DEFAULT_SUITES", "default_bounds", "suite_cases", "run_case"]


@dataclass(frozen=True)
class Suite:
    name: str
    cases: Callable
    check: Callable
    bounds: dict = field(default_factory=dict)
    description: str = ""


def _fail(**detail):
    return False, detail


def _ok(**detail):
    return True, detail


def _ords(values) -> list:
    return [to_json(v) for v in values]


def _val(v):
    if v is UNDEFINED:
        return "undefined"
    return to_json(v) if hasattr(v, "terms") else v


# ---------------------------------------------------------------------------
# ordinal algebra

def _ordinal_cases(cfg, b):
    count, batch = b["count"], b["batch"]
    for start in range(0, count, batch):
        rng = C.case_rng(cfg["seed"], "ordinals", start)
        triples = [[to_json(C.random_ordinal(rng)) for _ in range(3)] for _ in range(min(batch, count - start))]
        yield f"triples-{start}", {"triples": triples}


def _ordinal_check(p):
    for raw in p["triples"]:
        a, b, c = (from_json(t) for t in raw)
        where = {"triple": raw}
        if add(add(a, b), c) != add(a, add(b, c)):
            return _fail(law="add associativity", **where)
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return _fail(law="left distributivity", **where)
        oa, ob, oc = (O.to_oracle(t) for t in (a, b, c))
        if O.from_oracle(oa + ob) != add(a, b) or O.from_oracle(oa * ob) != mul(a, b):
            return _fail(law="oracle arithmetic", **where)
        if (oa < ob) != (a < b) or (oa == ob) != (a == b):
            return _fail(law="oracle order", **where)
        for x, y in ((a, b), (b, c), (a, c)):
            r = compare(x, y)
            if r != {"LT": "GT", "GT": "LT", "EQ": "EQ"}[compare(y, x)]:
                return _fail(law="compare antisymmetry", **where)
            if (r == "EQ") != (x == y):
                return _fail(law="compare totality", **where)
        for x, y, z in itertools.permutations((a, b, c)):
            if x < y and y < z and not x < z:
                return _fail(law="compare transitivity", **where)
        for x in (a, b, c):
            if parity(add(x, ONE)) != 1 - parity(x):
                return _fail(law="parity of successor", **where)
            if x.is_limit and parity(x) != 0:
                return _fail(law="limits are even", **where)
            if O.nested_parity(x) != parity(x):
                return _fail(law="oracle parity", **where)
            if compare(x, add(x, b)) != ("EQ" if b.is_zero else "LT"):
                return _fail(law="x < x + b", **where)
            if x.is_limit:
                prev = None
                for k in range(6):
                    f = fundamental_seq(x, k)
                    if not f < x or (prev is not None and not prev < f):
                        return _fail(law="fundamental sequence", **where)
                    prev = f
    return _ok()


# ---------------------------------------------------------------------------
# difference operators

def _diff_cases(cfg, b):
    for direction in (INCREASING, DECREASING):
        for size in range(0, b["universe"] + 1):
            for eta in range(0, b["eta"] + 1):
                yield f"{direction}-n{size}-eta{eta}", {"direction": direction, "size": size, "eta": eta}


def _diff_check(p):
    direction, size, eta = p["direction"], p["size"], p["eta"]
    count = 0
    for seq in C.monotone_families(size, eta, direction):
        sets = [seq.slice(i).final for i in range(eta)]
        if direction == INCREASING:
            want, got = O.nested_diff_inc(sets), eval_diff_inc(seq)
        else:
            want, got = O.nested_diff_dec(sets), eval_diff_dec(seq)
        hyb = HybridSpec(0, seq)
        as_set = frozenset(x for x, v in enumerate(eval_hybrid(hyb)) if v == 1)
        if want != got or as_set != got:
            return _fail(family=dump(seq), expected=sorted(want), got=sorted(got), hybrid=sorted(as_set))
        count += 1
    return _ok(families=count)


def _transfinite_cases(cfg, b):
    etas = cfg.get("etas") or [to_json(e) for e in C.DEC_ETAS]
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "diff-transfinite", i)
        eta = from_json(etas[i % len(etas)])
        size = rng.randint(1, b["universe"])
        seq = C.random_inc_seq(rng, eta, size) if i % 2 else C.random_dec_seq(rng, eta, size)
        yield f"seq-{i}", {"seq": dump(seq)}


def transfinite_oracle(seq: SeqSpec) -> frozenset:
    """The difference by the union formulas over a probe set that includes every element's key indices."""
    member = O.Membership(seq)
    if seq.direction == INCREASING:
        idx = {ordinal(n) for n in range(4)}
        for x in range(seq.size):
            g = seq.start(x)
            if g is not None:
                idx.update({g, add(g, ONE)})
        return O.union_diff_inc(seq.length, idx, member)
    return O.union_diff_dec(seq.length, O.dec_probe_indices(seq), member)


def _transfinite_check(p):
    seq = load(p["seq"])
    if validate_monotone(seq):
        return _fail(reason="generated sequence is not monotone", violations=[str(v) for v in validate_monotone(seq)])
    want = transfinite_oracle(seq)
    got = eval_diff(seq)
    if want != got:
        return _fail(expected=sorted(want), got=sorted(got))
    grid = probe_grid(seq)
    rebuilt = from_slices(seq.length, seq.direction, grid, [seq.slice(g) for g in grid])
    if eval_diff(rebuilt) != got:
        return _fail(reason="slice round trip changed the difference")
    return _ok()


def _delta_cases(cfg, b):
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "delta", i)
        size = rng.randint(1, b["universe"])
        a = C.random_dec_seq(rng, OMEGA, size, force_limit=False)
        da = eval_diff_dec(a)
        members = []
        for x in range(size):
            while True:
                m = C.random_dec_member(rng, OMEGA)
                if C.segment_value(m.segment, OMEGA) != int(x in da):
                    break
            members.append(m)
        bseq = SeqSpec(OMEGA, DECREASING, tuple(members))
        plus = add(OMEGA, ONE)
        p = C.random_dec_seq(rng, plus, size, force_limit=False)
        dp = eval_diff_dec(p)
        qm = []
        for x in range(size):
            while True:
                m = C.random_dec_member(rng, plus)
                if C.segment_value(m.segment, plus) != int(x in dp):
                    break
            qm.append(m)
        q = SeqSpec(plus, DECREASING, tuple(qm))
        yield f"pair-{i}", {"a": dump(a), "b": dump(bseq), "p": dump(p), "q": dump(q)}


def _delta_check(p):
    a, bseq = load(p["a"]), load(p["b"])
    norm = delta_normalize(a, bseq)
    if validate_monotone(norm):
        return _fail(reason="normalized sequence is not monotone")
    if any(norm.otype(x) >= OMEGA for x in range(norm.size)):
        return _fail(reason="an element survives every level")
    if eval_diff_dec(norm) != eval_diff_dec(a):
        return _fail(reason="normalization changed the difference")
    try:
        delta_normalize(a, a)
        if a.size:
            return _fail(reason="identical inputs were accepted as complementary")
    except NotComplementary:
        pass
    pseq, qseq = load(p["p"]), load(p["q"])
    d = merge_delta(pseq, qseq)
    if validate_monotone(d.levels):
        return _fail(reason="merged levels are not monotone")
    dp = eval_diff_dec(pseq)
    for x in range(pseq.size):
        if eval_type_delta(d, x) != int(x in dp):
            return _fail(reason="merged process guesses wrong", element=x)
        cp, cq = min(pseq.otype(x), OMEGA), min(qseq.otype(x), OMEGA)
        if not d.levels.otype(x) <= min(cp, add(cq, ONE)):
            return _fail(reason="merged process changes too often", element=x)
    try:
        merge_delta(pseq, pseq)
        return _fail(reason="equal processes were accepted")
    except InputsDisagree:
        pass
    return _ok()


# ---------------------------------------------------------------------------
# learners

def _inc_cases(cfg, b):
    etas = cfg.get("etas") or [to_json(e) for e in C.INC_ETAS]
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "learners-inc", i)
        eta = from_json(etas[i % len(etas)])
        spec = C.random_inc_hybrid(rng, eta, rng.randint(1, b["universe"]))
        yield f"spec-{i}", {"spec": dump(spec)}


def _inc_check(p):
    spec = load(p["spec"])
    values = eval_hybrid(spec)
    eta = spec.seq.length
    for x in range(spec.seq.size):
        tr, cd = diff_to_countdown(spec, x)
        if horizon_value(tr) != values[x]:
            return _fail(element=x, expected=_val(values[x]), got=_val(horizon_value(tr)), trace=dump(tr))
        problems = validate_countdown(tr, cd)
        if problems:
            return _fail(element=x, reason=str(problems[0]))
        if any(ordinal(s.value) > eta for s in cd.segments):
            return _fail(element=x, reason="countdown exceeds the length")
        fam = countdown_to_diff(tr, cd, eta, x)
        if fam.evaluate(spec.c) != values[x]:
            return _fail(element=x, reason="inverse translation disagrees", got=_val(fam.evaluate(spec.c)))
    comp = _complement_spec(spec.seq)
    char = HybridSpec(0, spec.seq)
    diff = eval_diff_inc(spec.seq)
    for x in range(spec.seq.size):
        tr, cd = merge_countdowns(char, comp, x)
        if horizon_value(tr) != int(x in diff):
            return _fail(element=x, reason="merged learner guesses wrong", trace=dump(tr))
        if any(not ordinal(s.value) < eta for s in cd.segments):
            return _fail(element=x, reason="merged countdown reaches the length")
    return _ok()


def _complement_spec(seq: SeqSpec) -> HybridSpec:
    """A characteristic increasing spec for the complement of ``seq``'s difference.

    An element starting at ``g`` starts at ``g + 1`` instead (flipping the
    parity) at the same stage; an element that never starts enters the
    least index whose parity puts it in the difference.
    """
    from .staged_sets import IncSegment

    eta = seq.length
    fresh = ONE if parity(eta) == 0 and ONE < eta else ZERO
    members = []
    for x in range(seq.size):
        g = seq.start(x)
        if g is None:
            members.append(Member(IncSegment(fresh), Constant(0)))
            continue
        nxt = add(g, ONE)
        t = seq.fact_stage(x, g)
        members.append(Member(IncSegment(nxt if nxt < eta else eta), Constant(t)))
    return HybridSpec(0, SeqSpec(eta, INCREASING, tuple(members)))


def _dec_cases(cfg, b):
    etas = cfg.get("etas") or [to_json(e) for e in C.DEC_ETAS]
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "learners-dec", i)
        eta = from_json(etas[i % len(etas)])
        spec = C.random_dec_hybrid(rng, eta, rng.randint(1, b["universe"]))
        yield f"spec-{i}", {"spec": dump(spec)}


def _dec_check(p):
    spec = load(p["spec"])
    values = eval_hybrid(spec)
    eta = spec.seq.length
    c = spec.c
    for x in range(spec.seq.size):
        tr = dec_to_mindchange(spec, c, x)
        if horizon_value(tr, c) != values[x]:
            return _fail(element=x, expected=_val(values[x]), got=_val(horizon_value(tr, c)), trace=dump(tr))
        otype = mind_change_otype(tr)
        if otype > eta:
            return _fail(element=x, reason=f"{otype} changes exceed the length")
        problems = validate_semicontinuity(tr, c)
        if problems:
            return _fail(element=x, reason=str(problems[0]))
        fam = mindchange_to_dec(tr, c, eta, x)
        if fam.evaluate(c) != values[x]:
            return _fail(element=x, reason="inverse translation disagrees")
        if any(isinstance(s, OmegaBlock) and s.alternates for s in tr.segments):
            for cd in _candidate_countdowns(tr, eta):
                if not validate_countdown(tr, cd):
                    return _fail(element=x, reason="an alternating trace validated a countdown")
    return _ok()


def _candidate_countdowns(tr: Trace, eta):
    """Countdowns a cheating learner might offer: constant, or dropping at every segment."""
    yield Trace.constant(eta)
    drops = [Plateau(ZERO, add(eta, len(tr.segments)))]
    for k, seg in enumerate(tr.segments[1:], 1):
        drops.append(Plateau(seg.start, add(eta, len(tr.segments) - k)))
    yield Trace(tuple(drops))


# ---------------------------------------------------------------------------
# tree systems

def _tree_cases(cfg, b):
    for size in range(0, b["universe"] + 1):
        for levels in range(1, b["depth"] + 1):
            yield f"n{size}-depth{levels}", {"size": size, "levels": levels}


def _tree_check(p):
    count = 0
    for cd in C.cell_decompositions(p["size"], p["levels"]):
        tree = build_tree(cd)
        diff = eval_diff_dec(cd.seq)
        sets = [frozenset(x for x in range(cd.size) if cd.theta[x][n] is not None) for n in range(cd.levels)]
        nested = O.nested_diff_dec(sets)
        for x in range(cd.size):
            rec = recover_membership(cd, x, tree)
            label = tree.nodes[sigma_x(cd, x)].label
            if not rec == label == int(x in diff) == int(x in nested):
                return _fail(cells=dump(cd), element=x, recovered=rec, label=label, diff=int(x in diff))
        empty = all(cd.depth(x) < cd.levels for x in range(cd.size))
        if check_wellfounded(tree, cd) != empty:
            return _fail(cells=dump(cd), reason="well-foundedness flag disagrees")
        for sigma, node in tree.nodes.items():
            for x in node.q:
                if tuple(cd.theta[x][: len(sigma)]) != sigma:
                    return _fail(cells=dump(cd), reason="node holds a foreign element")
        count += 1
    return _ok(decompositions=count)


# ---------------------------------------------------------------------------
# least-number and counting reductions

_TRANSFORMS = {
    "star": (Wh.PI11_LNP_TO_SIGMA11_COUNT, Wh.PI11_LNP, Wh.SIGMA11_COUNT, "staged"),
    "co-star": (Wh.SIGMA11_LNP_TO_PI11_COUNT, Wh.SIGMA11_LNP, Wh.PI11_COUNT, "costaged"),
    "count-to-lnp": (Wh.SIGMA11_COUNT_TO_PI11_LNP, Wh.SIGMA11_COUNT, Wh.PI11_LNP, "costaged"),
    "lnp-to-count": (Wh.PI11_COUNT_TO_SIGMA11_LNP, Wh.PI11_COUNT, Wh.SIGMA11_LNP, "staged"),
}


def _menu(cfg):
    if cfg.get("stages"):
        return tuple(from_json(t) for t in cfg["stages"])
    return C.WIDE_STAGE_MENU


def _weihrauch_cases(cfg, b):
    menu = [to_json(t) for t in _menu(cfg)] + ["never"]
    for name in _TRANSFORMS:
        for size in range(1, b["universe"] + 1):
            for first in menu:
                yield f"{name}-n{size}-{first}", {
                    "transform": name, "size": size, "first": first, "menu": menu, "corrupt": False,
                }


def _stage_of(t):
    return NEVER if t == "never" else from_json(t)


def _reduction_corpus(p):
    from .staged_sets import CoStagedSet

    menu = [_stage_of(t) for t in p["menu"]]
    first = _stage_of(p["first"])
    _, src, _, shape = _TRANSFORMS[p["transform"]]
    make = StagedSet if shape == "staged" else CoStagedSet
    for rest in itertools.product(menu, repeat=p["size"] - 1):
        inst = make((first,) + rest)
        if src.domain(inst):
            yield inst


def _weihrauch_check(p):
    red, src, tgt, _ = _TRANSFORMS[p["transform"]]
    if p.get("corrupt"):
        red = Wh.corrupted(red)
    instances = list(_reduction_corpus(p))
    report = Wh.verify_reduction(red, src, tgt, instances)
    if not report.ok:
        bad = report.failures[0]
        return _fail(
            reduction=report.name,
            instance=dump(bad.instance),
            answer=_val(bad.answer),
            pulled=_val(bad.pulled),
            reason=bad.reason,
            failures=len(report.failures),
        )
    if p["transform"] == "star":
        for a in instances:
            if O.brute_min(a.final) != O.brute_count(Wh.star_transform(a).final):
                return _fail(reason="min A differs from the size of its star set", instance=dump(a))
    return _ok(instances=len(instances))


def _negative_cases(cfg, b):
    menu = [0, 1, 2, "never"]
    for name in _TRANSFORMS:
        yield f"corrupted-{name}", {
            "transform": name, "size": 2, "first": 0, "menu": menu, "corrupt": True,
        }


def _realizer_cases(cfg, b):
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "realizers", i)
        size = rng.randint(1, b["universe"])
        fam = [C.random_staged_set(rng, size) for _ in range(rng.randint(1, 4))]
        cofam = [C.random_costaged_set(rng, size) for _ in range(rng.randint(1, 4))]
        yield f"family-{i}", {"pi": [dump(a) for a in fam], "sigma": [dump(s) for s in cofam]}


def _realizer_check(p):
    fam = [load(d) for d in p["pi"]]
    cofam = [load(d) for d in p["sigma"]]
    got = eval_hybrid(Wh.lnp_realizer_spec(fam))
    for i, a in enumerate(fam):
        want = O.brute_min(a.final)
        if (UNDEFINED if want is None else want) != got[i]:
            return _fail(reason="least-number realizer", index=i, got=_val(got[i]))
    got = eval_hybrid(Wh.sigma_lnp_realizer_spec(cofam))
    for i, s in enumerate(cofam):
        want = O.brute_min(s.final)
        if want is not None and want != got[i]:
            return _fail(reason="analytic least-number realizer", index=i, got=_val(got[i]))
    return _ok()


# ---------------------------------------------------------------------------
# least elements along well-order codes

def _lnp_wo_cases(cfg, b):
    etas = cfg.get("etas") or [to_json(e) for e in C.EMBED_ETAS]
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "lnp-wo", i)
        size = rng.randint(1, b["universe"])
        fam = []
        for _ in range(rng.randint(1, 4)):
            fam.append((C.random_staged_set(rng, size), C.random_code(rng, size)))
        sig = (C.random_costaged_set(rng, size), C.random_code(rng, size))
        eta = from_json(etas[i % len(etas)])
        inc = C.random_inc_seq(rng, eta, rng.randint(1, b["universe"]))
        dec = C.random_dec_seq(rng, eta, rng.randint(1, b["universe"]), force_limit=False)
        yield f"instance-{i}", {
            "family": [dump(f) for f in fam],
            "sigma": dump(sig),
            "inc": dump(inc),
            "dec": dump(dec),
        }
    for n in range(b["ladder"] + 1):
        yield f"ladder-{n}", {"ladder": n}


def _lnp_wo_check(p):
    if "ladder" in p:
        n = p["ladder"]
        s, y = Wh.guess_ladder(n)
        tr = Wh.sigma_lnp_guess_trace(s, y, 0)
        changes = mind_change_otype(tr)
        if changes < ordinal(n):
            return _fail(reason="ladder instance changes too rarely", changes=to_json(changes))
        return _ok(changes=to_json(changes))
    fam = [load(d) for d in p["family"]]
    for want_level in (False,):
        bn = Wh.bn_sets(fam, include_wo_level=want_level)
        if validate_monotone(bn):
            return _fail(reason="level sets are not monotone")
        diff = eval_diff_dec(bn)
        for i, (a, y) in enumerate(fam):
            if int(i in diff) != Wh.lnp_wo_two_valued(a, y):
                return _fail(reason="level-set difference disagrees", index=i)
    s, y = load(p["sigma"])
    tr = Wh.sigma_lnp_guess_trace(s, y, "c")
    direct = O.brute_min(sorted(s.final, key=lambda n: y.rank[n])) if isinstance(y, WellOrder) else None
    want = "c" if direct is None else direct
    if isinstance(y, WellOrder) and s.final:
        want = min(s.final, key=lambda n: y.rank[n])
    if horizon_value(tr) != want:
        return _fail(reason="guessing trace ends on the wrong element", got=_val(horizon_value(tr)))
    if Wh.sigma_lnp_wo_by_changes(s, y) != Wh.sigma_lnp_wo_two_valued(s, y):
        return _fail(reason="change-predicate evaluation disagrees")
    inc = load(p["inc"])
    red, _ = Wh.embed_inc_diff(inc)
    diff = eval_diff_inc(inc)
    for x in range(inc.size):
        if Wh.lnp_wo_two_valued(*red.inner(x)) != int(x in diff):
            return _fail(reason="increasing embedding disagrees", element=x)
    dec = load(p["dec"])
    red, _ = Wh.embed_dec_diff(dec)
    diff = eval_diff_dec(dec)
    for x in range(dec.size):
        if Wh.sigma_lnp_wo_two_valued(*red.inner(x)) != int(x in diff):
            return _fail(reason="decreasing embedding disagrees", element=x)
    return _ok()


# ---------------------------------------------------------------------------
# matrices

def _matrix_cases(cfg, b):
    for i in range(b["count"]):
        rng = C.case_rng(cfg["seed"], "matrices", i)
        m = C.random_matrix(rng, rng.randint(1, b["height"]), rng.randint(1, b["universe"]))
        yield f"matrix-{i}", {"matrix": dump(m)}
    for i in range(b["relabelings"]):
        rng = C.case_rng(cfg["seed"], "relabel", i)
        size = rng.randint(1, b["universe"])
        m = C.random_matrix(rng, rng.randint(1, b["height"]), size)
        pi = [rng.randrange(size) for _ in range(rng.randint(1, b["universe"]))]
        yield f"relabel-{i}", {"matrix": dump(m), "pi": pi}
    for height in range(1, b["diag_height"] + 1):
        rng = C.case_rng(cfg["seed"], "diagonal", height)
        k = b["diag_corpus"]
        corpus = [C.random_matrix(rng, height, k) for _ in range(k)]
        yield f"diagonal-{height}", {"corpus": [dump(m) for m in corpus]}


def _matrix_props(m, label: str):
    problems = validate_matrix(m)
    if problems:
        return _fail(reason=f"{label}: {problems[0]}")
    for x in range(m.size):
        value = eval_matrix_diff(m, x)
        if value != O.matrix_value_oracle(m, x):
            return _fail(reason=f"{label}: recursion disagrees with the level scan", element=x)
        tr = matrix_guess_trace(m, x)
        bad = is_delta_omega_plus_one(tr)
        if bad:
            return _fail(reason=f"{label}: {bad[0]}", element=x, trace=dump(tr))
        if horizon_value(tr) != value:
            return _fail(reason=f"{label}: guess ends on {horizon_value(tr)}, value {value}", element=x, trace=dump(tr))
    return _ok()


def _matrix_check(p):
    if "corpus" in p:
        corpus = [load(d) for d in p["corpus"]]
        diag = diagonalize(corpus)
        if diag.witness.height != corpus[0].height + 1:
            return _fail(reason="witness has the wrong height")
        ok, detail = _matrix_props(diag.witness, "diagonal witness")
        if not ok:
            return ok, detail
        for x, mx in enumerate(corpus):
            if diag.values[x] != 1 - eval_matrix_diff(mx, x):
                return _fail(reason="witness is not the diagonal complement", element=x)
        missing = [i for i, hit in enumerate(diag.differs_at) if hit is None]
        if missing:
            return _fail(reason="diagonal set agrees with a corpus matrix", matrix=missing[0])
        return _ok()
    m = load(p["matrix"])
    if "pi" in p:
        pi = p["pi"]
        pulled = relabel(m, pi)
        if validate_matrix(pulled):
            return _fail(reason="relabeled matrix violates the staging condition")
        for i, j in enumerate(pi):
            if eval_matrix_diff(pulled, i) != eval_matrix_diff(m, j):
                return _fail(reason="substitution changes the value", element=i)
        return _ok()
    ok, detail = _matrix_props(m, "matrix")
    if not ok:
        return ok, detail
    if matrix_normalize(m) != m:
        return _fail(reason="normalization is not idempotent")
    comp = complement_matrix(m)
    if validate_matrix(comp):
        return _fail(reason="complement violates the staging condition")
    for x in range(m.size):
        if eval_matrix_diff(comp, x) != 1 - eval_matrix_diff(m, x):
            return _fail(reason="complement matrix is wrong", element=x)
    return _ok()


# ---------------------------------------------------------------------------
# coproducts

def _coproduct_cases(cfg, b):
    for eta in (OMEGA, add(OMEGA, 2)):
        for k, fam in enumerate(C.coproduct_families(eta, b["indices"], b["universe"])):
            yield f"eta{eta}-{k}", {"family": [dump(e) for e in fam]}


def _coproduct_check(p):
    fam = [load(d) for d in p["family"]]
    q, q_dual = pwo_coproduct_dec(fam)
    for seq, what in ((q, "coproduct"), (q_dual, "dual coproduct")):
        problems = validate_monotone(seq)
        if problems:
            return _fail(reason=f"{what} is not monotone: {problems[0]}")
    dq, ddual = eval_diff_dec(q), eval_diff_dec(q_dual)
    size = fam[0].seq.size
    for i, e in enumerate(fam):
        if isinstance(e.code, WellOrder) and eval_diff_dec(e.seq) & eval_diff_dec(e.dual):
            return _fail(reason="input pair is not complementary", index=i)
        for x in range(size):
            z = i * size + x
            want = O.coproduct_oracle(fam, i, x)
            if int(z in dq) != want:
                return _fail(reason="coproduct membership", index=i, element=x)
            if int(z in ddual) != 1 - want:
                return _fail(reason="dual is not the complement", index=i, element=x)
            if isinstance(e.code, WellOrder):
                for xi in O.dec_probe_indices(q):
                    t = q.fact_stage(z, xi)
                    if t is not NEVER and t < e.code.revealed_at:
                        return _fail(reason="fact enumerated before the code is revealed", index=i, element=x)
    return _ok()


# ---------------------------------------------------------------------------

SUITES = {
    s.name: s
    for s in (
        Suite("ordinals", _ordinal_cases, _ordinal_check, {"count": 1000, "batch": 50}, "ordinal algebra laws"),
        Suite("diff", _diff_cases, _diff_check, {"universe": 6, "eta": 4}, "finite differences against nested set differences"),
        Suite("diff-transfinite", _transfinite_cases, _transfinite_check, {"count": 200, "universe": 6}, "transfinite differences against the union formulas"),
        Suite("delta", _delta_cases, _delta_check, {"count": 150, "universe": 6}, "normalization and merging of complementary pairs"),
        Suite("learners-inc", _inc_cases, _inc_check, {"count": 500, "universe": 8}, "countdown learners round trip"),
        Suite("learners-dec", _dec_cases, _dec_check, {"count": 500, "universe": 8}, "mind-change learners round trip"),
        Suite("trees", _tree_cases, _tree_check, {"universe": 5, "depth": 4}, "tree systems of cell decompositions"),
        Suite("weihrauch", _weihrauch_cases, _weihrauch_check, {"universe": 5}, "least-number and counting reductions"),
        Suite("realizers", _realizer_cases, _realizer_check, {"count": 200, "universe": 5}, "least numbers computed by difference operators"),
        Suite("lnp-wo", _lnp_wo_cases, _lnp_wo_check, {"count": 300, "universe": 5, "ladder": 8}, "least elements along well-order codes"),
        Suite("matrices", _matrix_cases, _matrix_check, {
            "count": 300, "universe": 6, "height": 3, "relabelings": 50, "diag_height": 4, "diag_corpus": 8,
        }, "omega-change matrices"),
        Suite("coproduct", _coproduct_cases, _coproduct_check, {"indices": 3, "universe": 4}, "coproducts over well-order codes"),
        Suite("negative", _negative_cases, _weihrauch_check, {}, "corrupted reductions, expected to fail"),
    )
}

DEFAULT_SUITES = tuple(n for n in SUITES if n != "negative")


def default_bounds(name: str, overrides: dict | None = None, universe: int | None = None) -> dict:
    b = dict(SUITES[name].bounds)
    if universe is not None and "universe" in b:
        b["universe"] = universe
    if overrides:
        b.update(overrides.get(name, {}))
    return b


def suite_cases(name: str, cfg: dict, bounds: dict) -> list:
    return list(SUITES[name].cases(cfg, bounds))


def run_case(name: str, payload: dict):
    try:
        return SUITES[name].check(payload)
    except Exception as exc:  # a crash is a failure with its message as witness
        return False, {"error": f"{type(exc).__name__}: {exc}"}
