import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import wellbalanced.balance as balance
from oracles import dp_balanced, naive_signing, so_pair
from wellbalanced.balance import (
    SignedCombination,
    SolverBudget,
    SubsetSelection,
    augment_balanced,
    augment_to_well_balanced,
    complement,
    enumerate_strongly_orthogonal,
    find_zero_signing,
    is_balanced,
    is_well_balanced,
    lattice_membership_obstruction,
    max_strongly_orthogonal,
    strongly_orthogonal_pair,
    strongly_orthogonal_set,
)
from wellbalanced.errors import AlreadyWellBalanced, BudgetExceeded, IdenticalRoots
from wellbalanced.lattice import check_obstruction
from wellbalanced.rootsys import build_root_system, e, g2_root


def vec(*pairs, dim):
    """Stored vector from (coordinate, true coefficient) pairs."""
    out = [0] * dim
    for c, k in pairs:
        out[c - 1] += 2 * k
    return tuple(out)


def idx(rs, *vectors):
    return tuple(sorted(rs.index(v) for v in vectors))


def all_roots(rs):
    return set(rs.positive_roots) | {tuple(-x for x in r) for r in rs.positive_roots}


# --- strong orthogonality ------------------------------------------------------


def test_so_pair_examples():
    b2 = build_root_system("B2")
    assert not strongly_orthogonal_pair(b2, *idx(b2, e(1, 2), e(2, 2)))
    a3 = build_root_system("A3")
    assert strongly_orthogonal_pair(a3, *idx(a3, vec((1, 1), (2, -1), dim=4), vec((3, 1), (4, -1), dim=4)))
    d4 = build_root_system("D4")
    assert strongly_orthogonal_pair(d4, *idx(d4, vec((1, 1), (2, 1), dim=4), vec((1, 1), (2, -1), dim=4)))
    with pytest.raises(IdenticalRoots):
        strongly_orthogonal_pair(d4, 3, 3)


def test_so_set_examples():
    d4 = build_root_system("D4")
    p = idx(d4, *(vec((a, 1), (b, s), dim=4) for a, b in ((1, 2), (3, 4)) for s in (1, -1)))
    assert strongly_orthogonal_set(d4, p)
    assert strongly_orthogonal_set(d4, ())
    b2 = build_root_system("B2")
    assert not strongly_orthogonal_set(b2, idx(b2, e(1, 2), e(2, 2)))


@pytest.mark.parametrize("label", ["A4", "B3", "C3", "D4", "G2", "F4"])
def test_so_pair_matches_oracle(label):
    rs = build_root_system(label)
    roots = all_roots(rs)
    for a, b in combinations(range(len(rs)), 2):
        assert strongly_orthogonal_pair(rs, a, b) == so_pair(roots, rs[a], rs[b])


@pytest.mark.parametrize("label", ["A4", "B3", "C3", "D4", "G2"])
def test_enumeration_matches_brute_force(label):
    rs = build_root_system(label)
    roots = all_roots(rs)
    n = len(rs)
    expected = []
    for k in range(n + 1):
        for c in combinations(range(n), k):
            if all(so_pair(roots, rs[a], rs[b]) for a, b in combinations(c, 2)):
                expected.append(c)
    got = list(enumerate_strongly_orthogonal(rs))
    assert sorted(got) == sorted(expected) and len(got) == len(set(got))
    for k in range(n + 1):
        assert list(enumerate_strongly_orthogonal(rs, k, k)) == [c for c in expected if len(c) == k]
    assert max_strongly_orthogonal(rs)[0] == max(len(c) for c in expected)


def test_a3_size_two():
    rs = build_root_system("A3")
    got = {frozenset(c) for c in enumerate_strongly_orthogonal(rs, 2, 2)}
    d = lambda i, j: vec((i, 1), (j, -1), dim=4)  # noqa: E731
    want = {frozenset(idx(rs, d(1, 2), d(3, 4))), frozenset(idx(rs, d(1, 3), d(2, 4))), frozenset(idx(rs, d(1, 4), d(2, 3)))}
    assert got == want


@pytest.mark.parametrize("label,size", [("G2", 2), ("E6", 4), ("F4", 4), ("D5", 4), ("C4", 4), ("B4", 4), ("A5", 3)])
def test_max_so(label, size):
    rs = build_root_system(label)
    n, att = max_strongly_orthogonal(rs)
    assert n == size == len(att)
    assert strongly_orthogonal_set(rs, att)


# --- signings -----------------------------------------------------------------


def test_g2_full_signing():
    rs = build_root_system("G2")
    coeffs = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    order = [rs.index(g2_root(*c)) for c in coeffs]
    combo = find_zero_signing(rs, range(len(rs)))
    by_root = dict(combo.terms)
    signs = [by_root[i] for i in order]
    assert signs in ([1, 1, 1, -1, 1, -1], [-1, -1, -1, 1, -1, 1])
    assert combo.is_witness(rs)


def test_small_examples():
    b2 = build_root_system("B2")
    s = [b2.index(e(1, 2)), b2.index(e(2, 2)), b2.index(vec((1, 1), (2, 1), dim=2))]
    combo = find_zero_signing(b2, s)
    assert [combo.sign_of(i) * combo.sign_of(s[0]) for i in s] == [1, 1, -1]
    for i in range(len(b2)):
        assert find_zero_signing(b2, [i]) is None
    assert find_zero_signing(b2, []).terms == ()
    assert is_balanced(b2, [])
    assert is_well_balanced(b2, s)
    a2 = build_root_system("A2")
    assert is_balanced(a2, range(3))
    assert not is_well_balanced(a2, [])
    assert is_well_balanced(a2, range(3))
    assert not is_balanced(build_root_system("A3"), range(6))


SYSTEMS = ["A4", "B3", "C3", "D4", "G2", "F4", "B4"]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SYSTEMS), st.data())
def test_solver_is_lexicographically_least(label, data):
    rs = build_root_system(label)
    size = data.draw(st.integers(0, min(12, len(rs))))
    subset = sorted(data.draw(st.lists(st.integers(0, len(rs) - 1), min_size=size, max_size=size, unique=True)))
    combo = find_zero_signing(rs, subset)
    expected = naive_signing([rs[i] for i in subset])
    if expected is None:
        assert combo is None
    else:
        assert combo is not None
        assert tuple(s for _, s in combo.terms) == expected
    assert (combo is not None) == dp_balanced([rs[i] for i in subset])


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SYSTEMS), st.data())
def test_lattice_obstruction_is_sound(label, data):
    rs = build_root_system(label)
    subset = sorted(data.draw(st.lists(st.integers(0, len(rs) - 1), max_size=12, unique=True)))
    cert = lattice_membership_obstruction(rs, subset)
    if cert is not None:
        p = cert.payload
        assert check_obstruction([rs[i] for i in subset], p["test_vector"], p["modulus"])
        assert not dp_balanced([rs[i] for i in subset])


def test_dict_fallback_agrees(monkeypatch):
    rs = build_root_system("F4")
    rng = random.Random(7)
    subsets = [sorted(rng.sample(range(len(rs)), rng.randint(2, 14))) for _ in range(40)]
    fast = [find_zero_signing(rs, s) for s in subsets]
    monkeypatch.setattr(balance, "_encoder", lambda vecs: None)
    slow = [find_zero_signing(rs, s) for s in subsets]
    assert fast == slow


def test_full_sets_up_to_budget():
    for label, expected in (("E6", True), ("C6", False), ("B6", False), ("A8", True), ("D6", False)):
        rs = build_root_system(label)
        assert is_balanced(rs, range(len(rs))) is expected


def test_budget():
    rs = build_root_system("E7")
    with pytest.raises(BudgetExceeded):
        find_zero_signing(rs, range(40))
    with pytest.raises(BudgetExceeded):
        find_zero_signing(rs, range(30), SolverBudget(max_table=2**10))
    with pytest.raises(ValueError):
        SolverBudget(max_subset_size=0)


# --- lattice obstruction examples -----------------------------------------------


def test_obstruction_examples():
    a3 = build_root_system("A3")
    assert lattice_membership_obstruction(a3, [2]) is not None
    cert = lattice_membership_obstruction(a3, range(6))
    assert cert is not None and cert.kind == "LatticeObstruction"
    assert lattice_membership_obstruction(build_root_system("G2"), range(6)) is None


# --- augmentation ---------------------------------------------------------------


def test_augment_a2_from_empty():
    rs = build_root_system("A2")
    new, combo = augment_balanced(rs, (), SignedCombination(rs.label, ()))
    assert new == (0, 1, 2)
    d = lambda i, j: vec((i, 1), (j, -1), dim=3)  # noqa: E731
    signs = [combo.sign_of(rs.index(d(*p))) for p in ((1, 2), (1, 3), (2, 3))]
    assert signs == [1, -1, 1]
    with pytest.raises(AlreadyWellBalanced):
        augment_balanced(rs, new, combo)


def _balanced_subsets(rs):
    n = len(rs)
    for k in range(n + 1):
        for c in combinations(range(n), k):
            signs = naive_signing([rs[i] for i in c])
            if signs is not None:
                yield c, SignedCombination(rs.label, tuple(zip(c, signs)))


def test_augment_b3_with_gamma_inside():
    rs = build_root_system("B3")
    found = 0
    for c, combo in _balanced_subsets(rs):
        comp = complement(rs, c)
        pair = next(((a, b) for a, b in combinations(comp, 2) if not strongly_orthogonal_pair(rs, a, b)), None)
        if pair is None:
            continue
        x1, x2 = rs[pair[0]], rs[pair[1]]
        ref = rs.lookup(tuple(p + q for p, q in zip(x1, x2))) or rs.lookup(tuple(p - q for p, q in zip(x1, x2)))
        if ref.index not in c:
            continue
        new, out = augment_balanced(rs, c, combo)
        assert len(new) == len(c) + 1
        assert ref.index not in new and set(pair) <= set(new)
        assert out.is_witness(rs)
        found += 1
        if found > 20:
            break
    assert found


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "C2", "G2"])
def test_augmentation_ends_well_balanced(label):
    rs = build_root_system(label)
    for c, combo in _balanced_subsets(rs):
        final, witness, steps = augment_to_well_balanced(rs, c, combo)
        assert witness.is_witness(rs)
        assert strongly_orthogonal_set(rs, complement(rs, final))
        assert set(c) <= set(final) or steps > 0
        assert len(final) >= len(c)


def test_augment_rejects_bad_witness():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        augment_balanced(rs, (0,), SignedCombination(rs.label, ((0, 1),)))


# --- serialisation ---------------------------------------------------------------


def test_json_round_trips():
    rs = build_root_system("C3")
    sel = SubsetSelection.of(rs, [4, 1, 2])
    assert SubsetSelection.from_json(sel.to_json()) == sel
    combo = find_zero_signing(rs, range(len(rs)))
    assert SignedCombination.from_json(combo.to_json()) == combo
    with pytest.raises(IndexError):
        SubsetSelection.of(rs, [99])
