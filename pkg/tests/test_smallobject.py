import pytest
from hypothesis import given
import hypothesis.strategies as st

import oracles
from strategies import set_maps
from wfsw.factorization import coalgebra_structures, validate_ff
from wfsw.fincat import CategoryError, FinSet
from wfsw.probes import full_probes
from wfsw.smallobject import (
    iterate_soa,
    one_step,
    soa_build_factorization,
    soa_report,
)

_S = FinSet()
_POINT = _S.mor(_S.size(0), _S.size(1), [])


def _size(A):
    return len(A.data)


# -- one stage ---------------------------------------------------------------------------

def test_one_step_adds_a_point_per_square(S):
    f = S.mor(S.size(2), S.size(1), [0, 0])
    tr, right = one_step(S, [_POINT], f)
    assert len(tr.squares) == 1
    assert _size(tr.step.cod) == 3
    assert set(right.data) == {0}
    assert S.compose(right, tr.step) == f


def test_one_step_without_generators_changes_nothing(S):
    f = S.mor(S.size(2), S.size(3), [0, 2])
    tr, right = one_step(S, [], f)
    assert tr.squares == []
    assert tr.step.cod == f.dom and right == f
    assert tr.step == S.identity(f.dom)


def test_one_step_in_groups_is_a_coproduct(Ab):
    Z2, Z4 = Ab.obj([2]), Ab.obj([4])
    gen = Ab.mor(Ab.zero(), Z2, [[]])
    f = Ab.mor(Ab.zero(), Z4, [[]])
    tr, right = one_step(Ab, [gen], f)
    assert len(tr.squares) == 2
    assert tr.step.cod.data == (2, 2)
    assert Ab.compose(right, tr.step) == f
    bottoms = sorted(oracles.hom_as_table(sq.bottom).items() for _, sq in tr.squares)
    assert bottoms == sorted(oracles.hom_as_table(h).items() for h in Ab.hom(Z2, Z4))
    for (i, sq), leg in zip(tr.squares, tr.legs):
        assert Ab.compose(right, leg) == sq.bottom


def test_one_step_needs_colimits(terminal):
    i = terminal.mor("id*")
    with pytest.raises(CategoryError):
        one_step(terminal, [i], i)


def test_larger_generator_set_receives_a_comparison(S):
    f = S.mor(S.size(1), S.size(2), [0])
    G = [_POINT]
    G2 = G + [S.mor(S.size(1), S.size(1), [0])]
    tr, right = one_step(S, G, f)
    tr2, right2 = one_step(S, G2, f)
    index2 = tr2.square_index
    legs = [tr2.step]
    for i, sq in tr.squares:
        legs += [S.compose(tr2.step, sq.top), tr2.legs[index2[i, sq]]]
    comparison = tr.colimit.induce(legs, tr2.step.cod)
    assert S.compose(comparison, tr.step) == tr2.step
    assert S.compose(right2, comparison) == right


# -- iteration ------------------------------------------------------------------------------

def test_surjection_converges_before_any_step(S):
    f = S.mor(S.size(2), S.size(1), [0, 0])
    t = iterate_soa(S, [_POINT], f, max_steps=4)
    assert t.converged and t.steps == 0
    assert t.final.left == S.identity(f.dom) and t.final.right == f


def test_non_surjection_converges_after_one_step(S):
    f = S.mor(S.size(1), S.size(2), [0])
    t = iterate_soa(S, [_POINT], f, max_steps=4)
    assert t.converged and t.steps == 1
    assert _size(t.final.obj) == 3
    assert set(t.final.right.data) == {0, 1}


def test_empty_into_point(S):
    f = S.mor(S.size(0), S.size(1), [])
    t = iterate_soa(S, [_POINT], f, max_steps=4)
    assert t.converged and t.steps == 1
    assert _size(t.final.obj) == 1
    assert S.is_iso(t.final.right)


def test_step_cap_leaves_arrow_unconverged(S):
    f = S.mor(S.size(1), S.size(2), [0])
    t = iterate_soa(S, [_POINT], f, max_steps=0)
    assert not t.converged and t.steps == 0
    with pytest.raises(ValueError):
        iterate_soa(S, [_POINT], f, max_steps=-1)


@given(set_maps(_S), st.booleans(), st.integers(0, 3))
def test_every_stage_factors_the_arrow(f, garner, steps):
    t = iterate_soa(_S, [_POINT], f, steps, garner, stop_when_converged=False)
    assert t.steps == steps
    for stage in t.stages:
        assert _S.compose(stage.right, stage.left) == f


@given(set_maps(_S))
def test_convergence_is_sound(f):
    t = iterate_soa(_S, [_POINT], f, max_steps=3)
    r = t.final.right
    lifts = oracles.set_lifts((), 0, 1, r.data, _size(r.dom), _size(r.cod))
    assert t.converged == lifts == (set(r.data) == set(range(_size(r.cod))))


@given(set_maps(_S), st.integers(1, 3))
def test_stage_sizes(f, steps):
    plain = iterate_soa(_S, [_POINT], f, steps, stop_when_converged=False)
    sizes = [_size(s.obj) for s in plain.stages]
    assert sizes == sorted(sizes)
    glued = iterate_soa(_S, [_POINT], f, steps, garner=True, stop_when_converged=False)
    for tr in glued.transitions:
        assert _size(tr.step.cod) <= _size(tr.raw_step.cod)


# -- the Garner modification -------------------------------------------------------------------

def test_garner_collapses_duplicate_points(S):
    f = S.identity(S.size(1))
    plain = iterate_soa(S, [_POINT], f, 2, stop_when_converged=False)
    glued = iterate_soa(S, [_POINT], f, 2, garner=True, stop_when_converged=False)
    assert [_size(s.obj) for s in plain.stages] == [1, 2, 3]
    assert [_size(s.obj) for s in glued.stages] == [1, 2, 2]
    tr = glued.transitions[1]
    q = tr.quotient
    assert len(tr.garner_pairs) == 1
    for new, old in tr.garner_pairs:
        assert new != old
        assert [q.data[x] for x in new.data] == [q.data[x] for x in old.data]


def test_garner_without_old_squares_is_the_identity_quotient(S):
    f = S.identity(S.size(0))
    t = iterate_soa(S, [_POINT], f, 2, garner=True, stop_when_converged=False)
    tr = t.transitions[1]
    assert tr.garner_pairs == []
    assert _size(tr.step.cod) == _size(tr.raw_step.cod)
    assert S.is_iso(tr.quotient)


def test_garner_in_groups_still_factors(Ab):
    Z2 = Ab.obj([2])
    gen = Ab.mor(Ab.zero(), Z2, [[]])
    f = Ab.mor(Ab.zero(), Z2, [[]])
    plain = iterate_soa(Ab, [gen], f, 2, stop_when_converged=False)
    glued = iterate_soa(Ab, [gen], f, 2, garner=True, stop_when_converged=False)
    for t in (plain, glued):
        for stage in t.stages:
            assert Ab.compose(stage.right, stage.left) == f
    sizes = [len(oracles.elements(s.obj.data)) for s in (plain.final, glued.final)]
    assert sizes[1] < sizes[0]
    q = glued.transitions[1].quotient
    for new, old in glued.transitions[1].garner_pairs:
        assert Ab.compose(q, new) == Ab.compose(q, old)


# -- whole factorizations -----------------------------------------------------------------------

def test_no_generators_gives_the_trivial_factorization(finset2):
    C, P = finset2
    F = soa_build_factorization(C, [], P)
    assert F.stages == 0
    for f in P.arrows[:10]:
        assert F.factor(f) == (C.identity(f.dom), f.dom, f)
    assert validate_ff(F, P).verdict == "pass"


def test_point_generator_factorization(finset2):
    C, P = finset2
    F = soa_build_factorization(C, [C.mor(C.size(0), C.size(1), [])], P)
    assert F.stages == 1 and not F.partial
    report = soa_report(F, P)
    assert report.verdict == "pass"
    for f in P.arrows:
        Lf, E, Rf = F.factor(f)
        assert set(Rf.data) == set(range(len(f.cod.data)))
        assert len(set(Lf.data)) == len(Lf.data)


def test_generators_carry_coalgebras(finset2):
    C, P = finset2
    G = [C.mor(C.size(0), C.size(1), []), C.mor(C.size(2), C.size(1), [0, 0])]
    F = soa_build_factorization(C, G, P)
    for h in G:
        assert coalgebra_structures(F, h)


def test_unconverged_arrows_are_inconclusive(finset2):
    C, P = finset2
    F = soa_build_factorization(C, [C.mor(C.size(0), C.size(1), [])], P, max_steps=0)
    assert F.partial
    report = soa_report(F, P)
    assert report.verdict == "inconclusive"
    missing = [f for f in P.arrows if set(f.data) != set(range(len(f.cod.data)))]
    assert report.check("converged").detail["guard_hits"] == len(missing)


def test_group_factorization_is_functorial():
    from wfsw.probes import finab_upto
    C = finab_upto(4)
    window = [C.zero(), C.obj([2]), C.obj([4])]
    P = full_probes(C, objects=window, square_objects=window)
    F = soa_build_factorization(C, [C.mor(C.zero(), C.obj([2]), [[]])], P)
    assert validate_ff(F, P).verdict == "pass"
    garnered = soa_build_factorization(C, [C.mor(C.zero(), C.obj([2]), [[]])], P, garner=True)
    assert validate_ff(garnered, P).verdict == "pass"


def test_trace_records_and_dot(S):
    f = S.identity(S.size(1))
    t = iterate_soa(S, [_POINT], f, 2, garner=True, stop_when_converged=False)
    recs = t.records(S)
    assert [r["object"] for r in recs] == [1, 2, 2]
    assert recs[1]["garner"] == {"raw": 3, "quotient": 2, "pairs": 1}
    assert "converged" in recs[0]
    assert t.dot(S, 0).startswith("digraph stage0 {")
