import pytest

from orbichar.errors import InputError, SizeCapExceeded
from orbichar.complexes import (
    SimplicialComplex,
    barycentric_subdivision,
    betti_numbers,
    boundary_matrix,
    complex_from_json,
    euler_characteristic,
    from_maximal,
    homology_basis,
    signed_total_dimension,
    staircase_product,
)
from orbichar.library import circle, edge, octahedron, point, torus, two_points


def test_from_maximal_closes_faces():
    cx = from_maximal([(0, 1, 2)])
    assert cx.f_vector() == [3, 3, 1]
    assert (0, 2) in cx.simplex_set


def test_vertex_validation():
    with pytest.raises(InputError):
        SimplicialComplex([(0, 0)])
    with pytest.raises(InputError):
        from_maximal([()])


def test_complex_from_json():
    cx = complex_from_json({"vertices": 3, "maximal_simplices": [[0, 1], [1, 2]]})
    assert cx.f_vector() == [3, 2]
    iso = complex_from_json({"vertices": 4, "maximal_simplices": []})
    assert iso.f_vector() == [4]
    with pytest.raises(InputError):
        complex_from_json({"vertices": 3})


def test_euler_characteristics_of_library():
    assert euler_characteristic(point()) == 1
    assert euler_characteristic(two_points()) == 2
    assert euler_characteristic(edge()) == 1
    assert euler_characteristic(circle(5)) == 0
    assert euler_characteristic(octahedron()) == 2
    assert euler_characteristic(torus()) == 0


def test_octahedron_f_vector():
    assert octahedron().f_vector() == [6, 12, 8]


def test_torus_staircase_f_vector():
    # (3-gon) x (3-gon): 9 vertices, 27 edges, 18 triangles
    assert torus().f_vector() == [9, 27, 18]


def test_betti_numbers():
    assert betti_numbers(point()) == [1]
    assert betti_numbers(circle(4)) == [1, 1]
    assert betti_numbers(octahedron()) == [1, 0, 1]  # a 2-sphere
    assert betti_numbers(torus()) == [1, 2, 1]


def test_betti_two_holes():
    # wedge-like figure eight: two circles sharing vertex 0
    cx = from_maximal(
        [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]
    )
    assert betti_numbers(cx) == [1, 2]


def test_signed_total_dimension():
    assert signed_total_dimension([1, 0, 1]) == 2
    assert signed_total_dimension([1, 2, 1]) == 0
    assert signed_total_dimension([1, 3]) == -2


def test_boundary_matrix_degree_zero():
    cx = circle(3)
    cols, nrows, ncols = boundary_matrix(cx, 0)
    assert nrows == 0 and ncols == 3
    assert all(col == {} for col in cols.values())


def test_boundary_squared_is_zero():
    cx = octahedron()
    d2, _, _ = boundary_matrix(cx, 2)
    d1, _, _ = boundary_matrix(cx, 1)
    for j, col in d2.items():
        acc = {}
        for i, a in col.items():
            for ii, b in d1[i].items():
                acc[ii] = acc.get(ii, 0) + a * b
        assert all(v == 0 for v in acc.values())


def test_homology_basis_dimensions():
    cx = torus()
    for k, b in enumerate(betti_numbers(cx)):
        assert len(homology_basis(cx, k)[0]) == b


def test_subdivision_preserves_invariants():
    for cx in (edge(), circle(4), octahedron()):
        sd, vertex_of = barycentric_subdivision(cx)
        assert euler_characteristic(sd) == euler_characteristic(cx)
        assert betti_numbers(sd) == betti_numbers(cx)
        assert len(vertex_of) == len(cx.simplices)
    assert barycentric_subdivision(octahedron())[0].f_vector() == [26, 72, 48]


def test_staircase_product_is_multiplicative():
    for a, b in [(edge(), edge()), (circle(3), edge()), (circle(3), circle(4))]:
        prod = staircase_product(a, b)
        assert euler_characteristic(prod) == euler_characteristic(
            a
        ) * euler_characteristic(b)


def test_staircase_square_betti():
    square = staircase_product(edge(), edge())
    assert betti_numbers(square) == [1, 0, 0]


def test_circle_needs_three_vertices():
    with pytest.raises(InputError):
        circle(2)


def test_chain_cap():
    from orbichar.equivariant import product_complex

    with pytest.raises(SizeCapExceeded):
        product_complex([circle(3)] * 3, cap=10)
