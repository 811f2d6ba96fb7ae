from fractions import Fraction

import pytest

from orbichar.complexes import euler_characteristic
from orbichar.equivariant import (
    orbit_complex,
    regularize,
    trivial_action,
)
from orbichar.errors import InputError
from orbichar.groups import cyclic_group, dihedral_group, symmetric_group
from orbichar.homs import free_abelian, trivial_presentation
from orbichar.library import (
    circle4_rotation,
    edge_swap,
    octahedron_antipodal,
    octahedron_reflection,
    point,
    point_s3,
    point_z2,
    s0_swap,
    suite,
    torus_trivial,
)
from orbichar.sectors import (
    central_cyclic_extension,
    chi_gamma_es,
    chi_gamma_top,
    chi_m_top,
    gamma_sectors,
    iterate_sectors,
    product_sectors_check,
    trivial_extension_scaling_check,
)

Z = free_abelian(1)
Z2 = free_abelian(2)


def test_trivial_gamma_gives_base_orbifold():
    rec = point_s3()
    assert chi_gamma_es(rec, trivial_presentation()) == Fraction(1, 6)
    assert chi_gamma_es(point_z2(), trivial_presentation()) == Fraction(1, 2)


def test_z_sectors_of_point_count_classes():
    # each conjugacy class contributes a point sector pt / C(g); the
    # Euler-Satake weights sum to the class equation divided by |G|
    rec = point_s3()
    decomp = gamma_sectors(rec, Z)
    assert len(decomp.sectors) == 3
    assert decomp.chi_es() == 1
    assert decomp.chi_top() == 3


def test_z_sectors_free_action_drop():
    # the free involution has no fixed points: only the identity sector
    rec = octahedron_antipodal()
    decomp = gamma_sectors(rec, Z)
    assert len(decomp.sectors) == 1
    assert decomp.dropped_classes == 1
    assert decomp.chi_es() == 1


def test_z_sectors_reflection():
    rec = octahedron_reflection()
    decomp = gamma_sectors(rec, Z)
    # identity sector: the sphere mod the reflection is a disk (chi 1);
    # twisted sector: the equatorial circle, fixed pointwise (chi 0)
    assert len(decomp.sectors) == 2
    assert decomp.chi_es() == 1
    assert [s.chi_top() for s in decomp.sectors] == [1, 0]
    assert decomp.chi_top() == 1


def test_chi_gamma_top_equals_orbit_euler_of_inertia():
    # chi_Z^top sums chi of the sector orbit spaces
    for name, rec in suite():
        total = 0
        for sector in gamma_sectors(rec, Z).sectors:
            total += euler_characteristic(orbit_complex(sector.fixed))
        assert chi_gamma_top(rec, Z) == total, name


def test_chi_m_top_point():
    # over a point, chi_(m) counts classes of commuting m-tuples
    rec = point_s3()
    assert chi_m_top(rec, 0) == 1
    assert chi_m_top(rec, 1) == 3
    assert chi_m_top(rec, 2) == 8
    d4 = regularize(trivial_action(point(), dihedral_group(4)))
    assert chi_m_top(d4, 2) == 22


def test_chi_m_top_s0_swap():
    rec = s0_swap()
    assert chi_m_top(rec, 0) == 1
    # identity sector only (the swap acts freely): S0/Z2 is a point
    assert chi_m_top(rec, 1) == 1
    assert chi_m_top(rec, 2) == 1


def test_chi_m_top_torus():
    rec = torus_trivial()
    for m in (0, 1, 2):
        assert chi_m_top(rec, m) == 0


def test_es_of_m_sectors_is_top_of_previous_level():
    # chi_{Gamma x Z}^ES = chi_Gamma^top specializes to
    # chi_{Z^m}^ES = chi_(m-1): the extra Z direction converts the
    # Euler-Satake weights into honest orbit-space counts
    for name, rec in suite():
        for m in (1, 2):
            assert chi_gamma_es(rec, free_abelian(m)) == chi_m_top(rec, m - 1), (
                name,
                m,
            )


def test_sector_of_rotation_action():
    rec = circle4_rotation()
    decomp = gamma_sectors(rec, Z)
    assert len(decomp.sectors) == 1  # free rotation: only identity survives
    assert decomp.chi_es() == 0


def test_iterated_sectors_match_direct_product():
    for rec in (point_z2(), point_s3(), s0_swap()):
        for first, second in [(Z, Z), (Z, Z2), (Z2, Z)]:
            report = iterate_sectors(rec, first, second)
            assert report["equal"], report


def test_iterated_sector_counts_point():
    # Z then Z over pt x S3 = commuting pairs up to conjugacy
    report = iterate_sectors(point_s3(), Z, Z)
    assert report["iterated_sector_count"] == 8
    assert report["direct_sector_count"] == 8


def test_product_sectors_multiplicative():
    report = product_sectors_check(point_z2(), point_s3(), Z)
    assert report["equal"], report
    report = product_sectors_check(s0_swap(), edge_swap(), Z)
    assert report["equal"], report


def test_central_extension_structure():
    g = cyclic_group(2)
    ext, carrier = central_cyclic_extension(g, 1, 2)
    assert ext.order == 4
    # x with x^2 = the nontrivial element of Z/2 gives Z/4
    orders = sorted(ext.element_order(x) for x in ext.elements())
    assert orders == [1, 2, 4, 4]


def test_central_extension_requires_central():
    g = symmetric_group(3)
    transposition = next(
        x for x in g.elements() if g.element_order(x) == 2
    )
    with pytest.raises(InputError):
        central_cyclic_extension(g, transposition, 2)


def test_trivial_extension_scaling():
    # when the extra central generator acts trivially, chi_(m) scales by r^m
    ec = trivial_action(point(), cyclic_group(2))
    for m in (0, 1, 2):
        for r in (2, 3):
            report = trivial_extension_scaling_check(ec, 1, r, m)
            assert report["equal"], report
