from fractions import Fraction

import pytest

from orbichar.complexes import betti_numbers, euler_characteristic
from orbichar.equivariant import (
    EquivariantComplex,
    action_from_generator_maps,
    equivariant_product,
    euler_satake,
    euler_satake_subcomplex,
    fixed_subcomplex,
    homology_traces,
    orbit_complex,
    power_with_product_action,
    power_with_wreath_action,
    regularity_failure,
    regularize,
    restrict_to_subgroup,
    trivial_action,
)
from orbichar.errors import InputError, NotRegular, RegularizationFailed
from orbichar.groups import cyclic_group, symmetric_group, trivial_group
from orbichar.library import (
    circle,
    circle4_rotation,
    edge,
    edge_swap,
    octahedron,
    octahedron_antipodal,
    octahedron_reflection,
    point,
    s0_swap,
    suite,
    two_points,
)


def test_action_validation():
    cx = two_points()
    g = cyclic_group(2)
    with pytest.raises(InputError):
        EquivariantComplex(cx, g, ((0, 1), (0, 0)))  # not a bijection
    with pytest.raises(InputError):
        EquivariantComplex(cx, g, ((0, 1),))  # wrong number of rows


def test_action_must_respect_group_law():
    cx = circle(3)
    g = cyclic_group(3)
    rot = {0: 1, 1: 2, 2: 0}
    ec = action_from_generator_maps(cx, g, {1: rot})
    assert ec.apply(2, 0) == 2  # g^2 rotates twice
    broken = {0: 1, 1: 0, 2: 2}  # an involution cannot generate Z/3
    with pytest.raises(InputError):
        action_from_generator_maps(cx, g, {1: broken})


def test_regularity_certificate_failures():
    # an edge flipped end-for-end: both endpoints land in one vertex orbit
    ec = EquivariantComplex(edge(), cyclic_group(2), ((0, 1), (1, 0)))
    reason = regularity_failure(ec)
    assert reason is not None and "vertex orbit twice" in reason
    # a free rotation of the square: antipodal edges map to the same orbit
    # image without being in the same orbit
    rot = EquivariantComplex(
        circle(4), cyclic_group(2), ((0, 1, 2, 3), (2, 3, 0, 1))
    )
    reason = regularity_failure(rot)
    assert reason is not None and "several orbits" in reason


def test_subdivision_rounds():
    assert s0_swap().subdivision_rounds == 0
    assert edge_swap().subdivision_rounds == 1
    assert circle4_rotation().subdivision_rounds == 1
    assert octahedron_antipodal().subdivision_rounds == 1
    assert octahedron_reflection().subdivision_rounds == 0


def test_regularize_round_budget():
    flipped = EquivariantComplex(edge(), cyclic_group(2), ((0, 1), (1, 0)))
    with pytest.raises(RegularizationFailed):
        regularize(flipped, max_rounds=0)
    assert regularize(flipped, max_rounds=2).subdivision_rounds == 1
    # an already-regular action succeeds with a zero budget
    swap = EquivariantComplex(two_points(), cyclic_group(2), ((0, 1), (1, 0)))
    assert regularize(swap, max_rounds=0).subdivision_rounds == 0


def test_euler_satake_requires_regular():
    ec = trivial_action(point(), trivial_group())
    with pytest.raises(NotRegular):
        euler_satake(ec)


def test_euler_satake_is_chi_over_group_order():
    for name, rec in suite():
        chi = euler_characteristic(rec.cx)
        assert euler_satake(rec) == Fraction(chi, rec.group.order), name


def test_euler_satake_values():
    assert euler_satake(s0_swap()) == 1
    assert euler_satake(edge_swap()) == Fraction(1, 2)
    assert euler_satake(circle4_rotation()) == 0
    assert euler_satake(octahedron_antipodal()) == 1


def test_subcomplex_additivity():
    rec = octahedron_reflection()
    ec = rec.ec
    elements = range(ec.group.order)
    orbits = []
    seen = set()
    for s in ec.cx.simplices:
        if s in seen:
            continue
        orbit = {ec.map_simplex(g, s) for g in elements}
        seen |= orbit
        orbits.append(orbit)
    # close alternating orbit halves downward into two invariant subcomplexes
    def close_down(sel):
        out = set()
        for orbit in sel:
            for s in orbit:
                for mask in range(1, 1 << len(s)):
                    out.add(
                        tuple(s[i] for i in range(len(s)) if mask >> i & 1)
                    )
        return out

    a = close_down(orbits[::2])
    b = close_down(orbits[1::2])
    chi_union = euler_satake(rec)
    assert (
        euler_satake_subcomplex(rec, a)
        + euler_satake_subcomplex(rec, b)
        - euler_satake_subcomplex(rec, a & b)
        == chi_union
    )


def test_subcomplex_must_be_invariant():
    rec = s0_swap()
    with pytest.raises(InputError):
        euler_satake_subcomplex(rec, {(0,)})


def test_fixed_subcomplexes():
    rec = octahedron_reflection()
    g = 1  # the reflection
    fixed = fixed_subcomplex(rec, [g])
    assert euler_characteristic(fixed) == 0  # the equatorial circle
    assert betti_numbers(fixed) == [1, 1]
    free = octahedron_antipodal()
    assert fixed_subcomplex(free, [1]).f_vector() == []


def test_orbit_complex_antipodal_is_projective_plane():
    oc = orbit_complex(octahedron_antipodal())
    assert euler_characteristic(oc) == 1
    assert betti_numbers(oc) == [1, 0, 0]


def test_orbit_complex_reflection():
    oc = orbit_complex(octahedron_reflection())
    # collapsing the two hemispheres onto one: a disk over the square
    assert euler_characteristic(oc) == 1


def test_restrict_to_subgroup():
    rec = octahedron_reflection()
    sub_ec, sub, carrier = restrict_to_subgroup(rec, [0])
    assert sub.order == 1
    assert euler_satake(regularize(sub_ec)) == 2


def test_homology_traces_average_to_orbit_betti():
    # Bredon: dim H_k(X/G; Q) = (1/|G|) sum of traces of g on H_k(X; Q)
    for rec in (octahedron_antipodal(), octahedron_reflection(), s0_swap()):
        oc = orbit_complex(rec)
        target = betti_numbers(oc)
        dim = len(rec.cx.f_vector()) - 1
        for k in range(dim + 1):
            traces = homology_traces(rec, k)
            avg = sum(traces, Fraction(0)) / rec.group.order
            expected = target[k] if k < len(target) else 0
            assert avg == expected, (k, traces)


def test_homology_traces_identity_is_betti():
    rec = octahedron_antipodal()
    for k in (0, 1, 2):
        assert homology_traces(rec, k)[0] == betti_numbers(rec.cx)[k]


def test_equivariant_product_es_multiplies():
    a, b = s0_swap(), edge_swap()
    prod, group, pairs = equivariant_product(a.ec, b.ec)
    rec = regularize(prod)
    assert group.order == 4
    assert euler_satake(rec) == euler_satake(a) * euler_satake(b)


def test_power_with_wreath_action_point():
    rec = regularize(trivial_action(point(), cyclic_group(2)))
    power, ew = power_with_wreath_action(rec, 3)
    assert ew.group.order == 2**3 * 6
    assert euler_satake(regularize(power)) == Fraction(1, 48)


def test_power_with_wreath_action_s0():
    rec = s0_swap()
    power, ew = power_with_wreath_action(rec, 2)
    assert ew.group.order == 8
    # chi(S0 x S0) / |Z2 wr S2| = 4/8
    assert euler_satake(regularize(power)) == Fraction(1, 2)


def test_power_with_product_action():
    rec = s0_swap()
    power = power_with_product_action(rec, 2)
    assert power.group.order == 4
    assert euler_satake(regularize(power)) == 1


def test_wreath_power_n1_keeps_complex():
    rec = s0_swap()
    power, ew = power_with_wreath_action(rec, 1)
    assert power.cx.f_vector() == rec.cx.f_vector()
    assert ew.group.order == 2
