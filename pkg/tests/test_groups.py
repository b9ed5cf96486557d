import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomolab.groups import (
    GroupError,
    build_group,
    centralizer,
    conjugacy_classes,
    conjugation_action,
    coset_action,
    direct_product,
    disjoint_union,
    group_from_permutations,
    is_commutative_transitive,
    make_action,
    orbit_decompose,
    regular_action,
    transversal,
    check_transversal,
    trivial_action,
    Subgroup,
)

from conftest import cyclic


def brute_axioms(mul):
    n = len(mul)
    e = [x for x in range(n) if all(mul[x][y] == y == mul[y][x] for y in range(n))]
    assoc = all(mul[mul[a][b]][c] == mul[a][mul[b][c]] for a in range(n) for b in range(n) for c in range(n))
    return len(e) == 1 and assoc and all(any(mul[a][b] == e[0] for b in range(n)) for a in range(n))


def ct_oracle(g):
    for x in g.elements():
        if x == g.identity:
            continue
        cx = [h for h in g.elements() if g.mul[h][x] == g.mul[x][h]]
        if any(g.mul[a][b] != g.mul[b][a] for a in cx for b in cx):
            return False
    return True


def test_trivial_and_c2():
    t = build_group([[0]])
    assert t.order == 1 and t.identity == 0
    c2 = build_group([[0, 1], [1, 0]])
    assert c2.order == 2 and c2.identity == 0 and c2.inv == (0, 1)


def test_identity_detected_anywhere():
    # C3 with the identity stored at index 2
    g = build_group([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
    assert g.identity == 2
    assert g.inv[0] == 1


def test_corpus_tables_satisfy_axioms(groups):
    for name, g in groups.items():
        if g.order <= 12:
            assert brute_axioms(g.mul), name
    assert groups["S3"].order == 6 and groups["S3"].identity == 0


def test_rejects_non_associative():
    # a Latin square with identity 0 that is not a group table
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError) as err:
        build_group(t)
    a, b, c = err.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_rejects_missing_identity():
    with pytest.raises(GroupError) as err:
        build_group([[1, 1], [1, 1]])
    assert err.value.witness is not None and len(err.value.witness) == 3


def test_rejects_non_invertible():
    with pytest.raises(GroupError) as err:
        build_group([[0, 1], [1, 1]])
    assert err.value.witness[0] == 1


def test_rejects_bad_shape():
    with pytest.raises(GroupError):
        build_group([[0, 1]])
    with pytest.raises(GroupError):
        build_group([[0, 5], [1, 0]])


def test_conjugacy_classes(groups, S3, D4):
    assert conjugacy_classes(build_group([[0]])) == [[0]]
    assert [len(c) for c in conjugacy_classes(cyclic(3))] == [1, 1, 1]
    assert sorted(len(c) for c in conjugacy_classes(S3)) == [1, 2, 3]
    assert len(conjugacy_classes(cyclic(5))) == 5
    assert len(conjugacy_classes(D4)) == 5
    for g in groups.values():
        cls = conjugacy_classes(g)
        assert sorted(x for c in cls for x in c) == list(g.elements())
        assert all(g.order % len(c) == 0 for c in cls)
        assert [g.identity] in cls


def test_centralizers(S3, D4):
    assert centralizer(S3, S3.identity).order == 6
    transpositions = [x for x in S3.elements() if x != S3.identity and S3.mul[x][x] == S3.identity]
    assert all(centralizer(S3, t).order == 2 for t in transpositions)
    r2 = [x for x in D4.elements() if x != D4.identity and len(centralizer(D4, x).elements) == 8]
    assert len(r2) == 1
    with pytest.raises(IndexError):
        centralizer(S3, 6)


def test_commutative_transitive(groups, S3, D4):
    assert is_commutative_transitive(groups["C6"])
    assert is_commutative_transitive(S3)
    v = is_commutative_transitive(D4)
    assert not v
    x, a, b = v.witness
    assert centralizer(D4, x).order == 8
    assert D4.mul[a][b] != D4.mul[b][a]
    for name, g in groups.items():
        assert bool(is_commutative_transitive(g)) == ct_oracle(g), name


def test_products_with_nonabelian_factor_are_not_ct(groups):
    for name in ("C2xS3", "S3xS3"):
        v = is_commutative_transitive(groups[name])
        assert not v and v.witness is not None
    assert not is_commutative_transitive(direct_product(cyclic(3), groups["S3"]))


def test_orbits_trivial_action(S3):
    d = orbit_decompose(trivial_action(S3, 4))
    assert len(d.orbits) == 4 and all(s.order == 6 for s in d.stabilizers)


def test_orbits_conjugation_s3(S3):
    d = orbit_decompose(conjugation_action(S3))
    assert sorted(len(o) for o in d.orbits) == [2, 3]
    assert sorted(s.order for s in d.stabilizers) == [2, 3]


def test_orbits_regular(C2):
    d = orbit_decompose(regular_action(C2))
    assert len(d.orbits) == 1 and d.stabilizers[0].order == 1


def test_conjugation_action_examples(C2, groups):
    a = conjugation_action(C2)
    assert a.set_size == 1 and orbit_decompose(a).stabilizers[0].order == 2
    q8 = orbit_decompose(conjugation_action(groups["Q8"]))
    # 7 points: -1 is fixed, the classes of i, j, k have two elements each
    assert sorted(len(o) for o in q8.orbits) == [1, 2, 2, 2]
    with pytest.raises(GroupError):
        conjugation_action(build_group([[0]]))


def test_conjugation_stabilizers_are_centralizers(groups):
    for g in groups.values():
        if g.order < 2:
            continue
        a = conjugation_action(g)
        pts = [x for x in g.elements() if x != g.identity]
        d = orbit_decompose(a)
        for rep, stab in zip(d.representatives, d.stabilizers):
            assert stab.elements == centralizer(g, pts[rep]).elements


def test_orbit_counts(groups, corpus):
    for name, entry in corpus.items():
        g = groups[name]
        for a in entry.load_actions(g):
            d = orbit_decompose(a)
            assert sum(len(o) for o in d.orbits) == a.set_size
            assert all(len(o) * s.order == g.order for o, s in zip(d.orbits, d.stabilizers))
            assert all(a(x, r) == r for r, s in zip(d.representatives, d.stabilizers) for x in s.elements)


def test_action_validation(C2):
    with pytest.raises(GroupError):
        make_action(C2, [[0, 1], [0, 1], [0, 1]])
    with pytest.raises(GroupError):
        make_action(C2, [[1, 0], [1, 0]])  # identity must fix every point
    with pytest.raises(GroupError):
        make_action(C2, [[0, 1], [0, 0]])


def test_transversal_examples(S3):
    whole = transversal(S3, Subgroup(S3, tuple(S3.elements())))
    assert whole.index == 1 and whole.tau == (S3.identity,)
    assert whole.eta == tuple(S3.elements())
    triv = transversal(S3, Subgroup(S3, (S3.identity,)))
    assert triv.index == 6 and set(triv.eta) == {S3.identity}
    t = next(x for x in S3.elements() if x != S3.identity and S3.mul[x][x] == S3.identity)
    tr = transversal(S3, Subgroup(S3, (S3.identity, t)))
    assert tr.index == 3
    assert check_transversal(S3, tr) is None


def test_transversal_laws_all_subgroups(groups):
    rng = random.Random(3)
    for g in groups.values():
        if g.order > 12:
            continue
        for x in g.elements():
            for h in (centralizer(g, x), g.subgroup_generated([x])):
                assert check_transversal(g, transversal(g, h)) is None
                assert check_transversal(g, transversal(g, h, rng)) is None


def test_coset_action_and_union(S3):
    h = centralizer(S3, 1)
    a = coset_action(S3, h)
    assert a.set_size == 6 // h.order
    u = disjoint_union(a, trivial_action(S3, 2))
    assert u.set_size == a.set_size + 2
    assert len(orbit_decompose(u).orbits) == 3


@st.composite
def perm_gens(draw):
    d = draw(st.integers(2, 5))
    k = draw(st.integers(1, 2))
    return [draw(st.permutations(range(d))) for _ in range(k)]


@settings(max_examples=40, deadline=None)
@given(perm_gens())
def test_random_permutation_groups(gens):
    g, idx = group_from_permutations(gens)
    if g.order <= 24:
        assert brute_axioms(g.mul)
    assert bool(is_commutative_transitive(g)) == ct_oracle(g)
    for i, p in zip(idx, gens):
        assert g.labels[i] == "".join(map(str, p))
