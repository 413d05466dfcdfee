import pytest
from hypothesis import given

import oracles
from strategies import group_homs
from wfsw.factorization import algebra_structures, coalgebra_structures
from wfsw.fincat import CategoryError, FinAb
from wfsw.lifting import LiftCache, retractions, sections
from wfsw.probes import ProbeSet
from wfsw.splitab import (
    SplitFactorization,
    is_split_epi,
    is_split_mono,
    split_factorization,
    split_witnesses,
    structure_count_check,
    verify_split_accuracy,
    verify_split_wfs,
)

_Ab = FinAb()
_F = SplitFactorization(_Ab)


def test_factoring_an_identity(Ab):
    Z2 = Ab.obj([2])
    L, E, R = split_factorization(Ab.identity(Z2))
    assert E.data == (2, 2)
    assert L.data == ((1,), (1,))
    assert R == Ab.proj2(Z2, Z2)


def test_factoring_the_doubling_map(Ab):
    f = Ab.mor(Ab.obj([2]), Ab.obj([4]), [[2]])
    L, E, R = split_factorization(f)
    assert E.data == (2, 4)
    assert L.data == ((1,), (2,))
    assert oracles.hom_as_table(R) == {(a, b): (b,) for a in range(2) for b in range(4)}


def test_factoring_from_zero(Ab):
    f = Ab.mor(Ab.zero(), Ab.obj([2]), [[]])
    L, E, R = split_factorization(f)
    assert L.dom == Ab.zero() and E.data == (2,)
    assert Ab.is_iso(R)


def test_only_groups_are_accepted(S):
    with pytest.raises(CategoryError):
        SplitFactorization(S)
    with pytest.raises(CategoryError):
        split_factorization(S.identity(S.size(1)))


@given(group_homs(_Ab))
def test_legs_carry_split_witnesses(f):
    L, E, R = _F.factor(f)
    r, s = split_witnesses(_F, f)
    assert _Ab.compose(R, L) == f
    assert _Ab.compose(r, L) == _Ab.identity(f.dom)
    assert _Ab.compose(R, s) == _Ab.identity(f.cod)


def test_split_predicates_match_enumeration(finab4):
    C, P = finab4
    for f in P.arrows:
        table = oracles.hom_as_table(f)
        backwards = oracles.group_homs(f.cod.data, f.dom.data)
        mono = any(all(r[table[x]] == x for x in table) for r in backwards)
        epi = any(all(table[s[y]] == y for y in s) for s in backwards)
        assert is_split_mono(C, f) == mono
        assert is_split_epi(C, f) == epi


def test_doubling_splits_neither_way(Ab):
    f = Ab.mor(Ab.obj([2]), Ab.obj([4]), [[2]])
    red = Ab.mor(Ab.obj([4]), Ab.obj([2]), [[1]])
    assert not is_split_mono(Ab, f) and not is_split_epi(Ab, red)
    # both homs [4] -> [2] send 2 to 0
    assert [Ab.compose(r, f) for r in Ab.hom(f.cod, f.dom)] == [Ab.zero_map(f.dom, f.dom)] * 2


def test_split_wfs_on_small_groups(finab4):
    C, P = finab4
    report = verify_split_wfs(P, SplitFactorization(C))
    assert report.verdict == "pass"
    assert report.check("factor witnesses").verdict == "pass"


def test_split_wfs_on_a_single_identity(Ab):
    i = Ab.identity(Ab.obj([2]))
    P = ProbeSet([i], [Ab.identity_square(i)], [(i, i)])
    assert verify_split_wfs(P, SplitFactorization(Ab)).verdict == "pass"


def test_split_wfs_with_doubling_in_probes(Ab):
    f = Ab.mor(Ab.obj([2]), Ab.obj([4]), [[2]])
    report = verify_split_wfs(ProbeSet([f]), SplitFactorization(Ab))
    assert report.check("factor witnesses").verdict == "pass"
    assert report.check("factorization").verdict == "pass"


def test_split_epis_are_box_of_split_monos(finab4):
    C, P = finab4
    monos = [f for f in P.arrows if is_split_mono(C, f)]
    cache = LiftCache(C)
    for g in P.arrows:
        assert is_split_epi(C, g) == all(cache.lifts(f, g) for f in monos)


def test_accuracy_on_zero_and_identity(Ab):
    zero = Ab.identity(Ab.zero())
    report = verify_split_accuracy(ProbeSet([zero]), SplitFactorization(Ab))
    assert report.verdict == "pass"
    i = Ab.identity(Ab.obj([2]))
    report = verify_split_accuracy(ProbeSet([i]), SplitFactorization(Ab))
    for c in report.checks:
        assert c.verdict == "fail" and c.detail["failing_arrows"] == 1


def test_accuracy_failure_counts(finab4):
    C, P = finab4
    report = verify_split_accuracy(P, SplitFactorization(C))
    left, right = report.check("left accuracy"), report.check("right accuracy")
    assert left.detail["failing_arrows"] == sum(1 for f in P.arrows if f.dom.data)
    assert right.detail["failing_arrows"] == sum(1 for f in P.arrows if f.cod.data)


def test_structure_counts(finab4):
    C, P = finab4
    assert structure_count_check(P, SplitFactorization(C)).verdict == "pass"


@given(group_homs(_Ab))
def test_coalgebras_are_retractions_paired_with_identity(f):
    got = sorted(c.s.data for c in coalgebra_structures(_F, f))
    want = sorted(_Ab.pair(r, _Ab.identity(f.cod)).data for r in retractions(_Ab, f))
    assert got == want


@given(group_homs(_Ab))
def test_algebras_correspond_to_sections(f):
    assert len(algebra_structures(_F, f)) == len(sections(_Ab, f))
