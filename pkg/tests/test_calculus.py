import math
import numpy as np
import pytest

from clifford_kernels.calculus import (
    Functional,
    clifford_at,
    clifford_at_legendre,
    double_well,
    fstar_power,
    gradient,
    hessian,
    hyperplane_residual,
    legendre_grid,
    legendre_hessian_pair,
    legendre_invert,
    legendre_point,
    make_functional,
    minkowski,
    power,
    tangent_hyperplane,
    zstar_of,
)
from clifford_kernels.exceptions import DegenerateFormError, DomainError, UnsupportedTag


def test_builtin_values():
    assert power(2)([3.0]) == 4.5
    assert double_well()([0.0]) == 1.0
    assert minkowski(1, 2)([1.0, 1.0]) == 0.0


def test_builtins_reject_bad_parameters():
    with pytest.raises(DomainError):
        power(1)
    with pytest.raises(DomainError):
        minkowski(3, 2)
    with pytest.raises(UnsupportedTag):
        make_functional("cosh")


def test_analytic_derivatives_are_checked():
    with pytest.raises(DomainError):
        Functional("wrong", 1, lambda x: float(x[0] ** 2), grad=lambda x: np.array([3 * x[0]]))


def test_gradient():
    assert gradient(power(2), [3.0]).tolist() == [3.0]
    assert gradient(double_well(), [0.0]).tolist() == [0.0]
    assert gradient(double_well(), [2.0]).tolist() == [24.0]


def test_finite_difference_gradient_without_analytic_derivative():
    f = Functional("cubic", 1, lambda x: float(x[0] ** 3))
    assert math.isclose(gradient(f, [2.0])[0], 12.0, rel_tol=1e-7)
    assert math.isclose(hessian(f, [2.0]).coeffs[0, 0], 12.0, rel_tol=1e-4)


def test_hessian():
    assert np.array_equal(hessian(minkowski(1, 2), [0.3, -1.2]).coeffs, np.diag([2.0, -2.0]))
    assert hessian(power(2), [5.0]).coeffs.tolist() == [[1.0]]
    assert hessian(double_well(), [1.0]).coeffs.tolist() == [[8.0]]


def test_power_excludes_origin_below_two():
    with pytest.raises(DomainError):
        gradient(power(1.5), [0.0])


def test_tangent_hyperplane():
    normal, offset = tangent_hyperplane(power(2), [0.0])
    assert normal.tolist() == [0.0, -1.0]
    assert offset == 0.0

    # z = x − ½
    normal, offset = tangent_hyperplane(power(2), [1.0])
    assert normal.tolist() == [1.0, -1.0]
    assert offset == -0.5


def test_tangent_hyperplane_contains_graph_point(rng):
    f = double_well()
    for y in rng.uniform(-2, 2, 5):
        normal, offset = tangent_hyperplane(f, [y])
        assert abs(hyperplane_residual(normal, offset, [y], f([y]))) < 1e-12


def test_legendre_point():
    p = legendre_point(double_well(), [0.0])
    assert p.x_star.tolist() == [0.0]
    assert p.z_star == 1.0

    p = legendre_point(power(3), [2.0])
    assert p.x_star.tolist() == [4.0]
    assert math.isclose(p.z_star, -16 / 3)


def test_legendre_point_at_critical_point():
    f = double_well()
    p = legendre_point(f, [1.0])
    assert p.x_star.tolist() == [0.0]
    assert p.z_star == f([1.0])


@pytest.mark.parametrize("p", [2, 3, 4])
def test_power_legendre_closed_form(p):
    f = power(p)
    for point in legendre_grid(f, [[y] for y in np.linspace(-2, 2, 50)]):
        assert math.isclose(point.z_star, fstar_power(point.x_star, p), rel_tol=1e-8, abs_tol=1e-8)


def test_legendre_invert():
    assert legendre_invert(power(2), [5.0], [1.0]).tolist() == pytest.approx([5.0])
    assert legendre_invert(power(3), [4.0], [1.0]).tolist() == pytest.approx([2.0], abs=1e-9)


def test_legendre_invert_follows_the_seed_branch():
    f = double_well()
    assert legendre_invert(f, [0.0], [0.1])[0] == pytest.approx(0.0, abs=1e-9)
    assert legendre_invert(f, [0.0], [0.9])[0] == pytest.approx(1.0, abs=1e-9)
    assert legendre_invert(f, [0.0], [-0.9])[0] == pytest.approx(-1.0, abs=1e-9)


def test_legendre_invert_singular_hessian():
    with pytest.raises(DegenerateFormError):
        legendre_invert(double_well(), [1.0], [1 / math.sqrt(3)])


def _branch_points(rng, count: int = 20) -> list[tuple[Functional, np.ndarray]]:
    # Sources away from the inflection points of the double well, where the Hessian is invertible
    out = []
    for _ in range(count):
        sign = rng.choice([-1.0, 1.0])
        out.append((power(3), np.array([sign * rng.uniform(0.5, 2.0)])))
        out.append((double_well(), np.array([sign * rng.uniform(1.2, 2.0)])))
        out.append((minkowski(1, 2), rng.uniform(-2.0, 2.0, size=2)))
    return out


def test_legendre_round_trip(rng):
    for f, y in _branch_points(rng):
        x_star = legendre_point(f, y).x_star
        assert np.allclose(legendre_invert(f, x_star, y), y, atol=1e-8)
        assert np.allclose(legendre_invert(f, x_star, y * 1.05), y, atol=1e-8)


@pytest.mark.parametrize("f", [power(3), power(4), double_well()])
def test_zstar_slope_is_minus_the_source(rng, f):
    h = 1e-5
    for _ in range(10):
        y = rng.choice([-1.0, 1.0]) * rng.uniform(1.2, 2.0)
        x_star = float(gradient(f, [y])[0])
        slope = (zstar_of(f, [x_star + h], [y]) - zstar_of(f, [x_star - h], [y])) / (2 * h)
        assert math.isclose(slope, -y, rel_tol=1e-6)


def test_zstar_of_matches_legendre_point():
    f = power(3)
    assert math.isclose(zstar_of(f, [4.0], [1.5]), legendre_point(f, [2.0]).z_star, rel_tol=1e-9)


@pytest.mark.parametrize("f, y, expected", [
    (power(2), [1.5], [[-1.0]]),
    (power(3), [2.0], [[-0.25]]),
    (minkowski(1, 2), [0.5, 0.3], [[-0.5, 0.0], [0.0, 0.5]]),
])
def test_legendre_hessian_pair(f, y, expected):
    fstar, inverse = legendre_hessian_pair(f, y)
    assert np.allclose(fstar.coeffs, expected, atol=1e-4)
    assert np.allclose(fstar.coeffs, -inverse.coeffs, atol=1e-4)


def test_legendre_hessian_reciprocity_on_random_points(rng):
    for f, y in _branch_points(rng):
        fstar, inverse = legendre_hessian_pair(f, y)
        assert np.allclose(fstar.coeffs, -inverse.coeffs, rtol=1e-4, atol=1e-4), (f.name, y.tolist())


def test_clifford_at():
    space, frame = clifford_at(minkowski(1, 2), [0.2, 0.7])
    assert space.diag == (2.0, -2.0)
    assert space.signature().as_tuple() == (1, 1, 0)
    assert np.allclose(frame, np.eye(2))

    space, _ = clifford_at(double_well(), [0.0])
    assert space.diag == (-4.0,)


def test_clifford_at_degenerate_hessian():
    with pytest.raises(DegenerateFormError) as e:
        clifford_at(double_well(), [1 / math.sqrt(3)])
    assert e.value.signature.n_zero == 1


def test_clifford_at_legendre():
    space, _ = clifford_at_legendre(minkowski(1, 2), [0.5, 0.3])
    assert np.allclose(sorted(space.diag), [-0.5, 0.5], atol=1e-4)
