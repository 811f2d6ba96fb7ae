import pytest
from hypothesis import given, settings, strategies as st

from orbichar.errors import InputError
from orbichar.groups import (
    FiniteGroup,
    build_group,
    build_group_from_permutations,
    centralizer,
    conjugacy_classes,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_json,
    is_central,
    perm_compose,
    perm_cycle_label,
    perm_inverse,
    subgroup,
    symmetric_group,
    trivial_group,
)


def test_cyclic_group_basics():
    g = cyclic_group(6)
    assert g.order == 6
    assert g.identity == 0
    assert g.inv(2) == 4
    assert g.element_order(2) == 3
    assert g.is_abelian()


def test_symmetric_group_orders():
    assert symmetric_group(1).order == 1
    assert symmetric_group(2).order == 2
    assert symmetric_group(3).order == 6
    assert symmetric_group(4).order == 24
    assert not symmetric_group(3).is_abelian()


def test_dihedral_group_structure():
    d4 = dihedral_group(4)
    assert d4.order == 8
    # five conjugacy classes: e, r^2, {r, r^3}, two reflection classes
    assert len(conjugacy_classes(d4)) == 5


def test_class_equation():
    for g in (symmetric_group(3), symmetric_group(4), dihedral_group(4)):
        classes = conjugacy_classes(g)
        assert sum(len(c.members) for c in classes) == g.order
        for c in classes:
            # orbit-stabilizer: |class| * |centralizer| = |G|
            assert len(c.members) * len(centralizer(g, [c.representative])) == g.order


def test_s3_class_sizes():
    sizes = sorted(len(c.members) for c in conjugacy_classes(symmetric_group(3)))
    assert sizes == [1, 2, 3]


def test_s4_class_sizes():
    sizes = sorted(len(c.members) for c in conjugacy_classes(symmetric_group(4)))
    assert sizes == [1, 3, 6, 6, 8]


def test_centralizer_of_identity_is_group():
    g = symmetric_group(3)
    assert len(centralizer(g, [g.identity])) == 6


def test_center_of_d4():
    d4 = dihedral_group(4)
    central = [z for z in d4.elements() if is_central(d4, z)]
    assert len(central) == 2


def test_subgroup_reindexing():
    g = symmetric_group(3)
    cls = conjugacy_classes(g)
    rep = next(c.representative for c in cls if g.element_order(c.representative) == 3)
    sub, carrier = subgroup(g, [g.identity, rep, g.inv(rep)])
    assert sub.order == 3
    for i in range(sub.order):
        for j in range(sub.order):
            assert carrier[sub.table[i][j]] == g.mul(carrier[i], carrier[j])


def test_subgroup_rejects_nonclosed():
    g = symmetric_group(3)
    transpositions = [x for x in g.elements() if g.element_order(x) == 2]
    with pytest.raises(InputError):
        subgroup(g, [g.identity, transpositions[0], transpositions[1]])


def test_direct_product():
    p, pairs = direct_product(cyclic_group(2), cyclic_group(3))
    assert p.order == 6
    assert p.is_abelian()
    assert p.element_order(pairs.index((1, 1))) == 6


def test_bad_table_rejected():
    with pytest.raises(InputError):
        build_group([[0, 1], [1, 1]])  # not a latin square
    with pytest.raises(InputError):
        # latin square with a left identity (row 0) but no two-sided one
        build_group([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_nonassociative_rejected():
    # a latin square with identity that fails associativity
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InputError):
        build_group(table)


def test_permutation_helpers():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2)
    assert perm_compose(p, q) == tuple(p[q[i]] for i in range(3))
    assert perm_cycle_label((1, 0, 2)) == "(1 2)"
    assert perm_cycle_label((0, 1, 2)) == "()"


def test_group_from_json_table_and_perms():
    g = group_from_json({"permutations": [[1, 0, 2], [1, 2, 0]], "degree": 3})
    assert g.order == 6
    h = group_from_json({"order": 2, "table": [[0, 1], [1, 0]]})
    assert h.order == 2


def test_trivial_group():
    t = trivial_group()
    assert t.order == 1 and t.identity == 0


@given(st.integers(min_value=1, max_value=12))
def test_cyclic_inverse_law(n):
    g = cyclic_group(n)
    for x in g.elements():
        assert g.mul(x, g.inv(x)) == g.identity


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=4), st.data())
def test_conjugation_preserves_order(n, data):
    g = symmetric_group(n)
    x = data.draw(st.integers(min_value=0, max_value=g.order - 1))
    h = data.draw(st.integers(min_value=0, max_value=g.order - 1))
    assert g.element_order(g.conj(h, x)) == g.element_order(x)


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=4), st.data())
def test_power_matches_repeated_mul(n, data):
    g = dihedral_group(n)
    x = data.draw(st.integers(min_value=0, max_value=g.order - 1))
    k = data.draw(st.integers(min_value=-6, max_value=6))
    acc = g.identity
    for _ in range(abs(k)):
        acc = g.mul(acc, x if k >= 0 else g.inv(x))
    assert g.power(x, k) == acc
