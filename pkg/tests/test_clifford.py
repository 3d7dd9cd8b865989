import itertools
import math
import numpy as np
import pytest

from hypothesis import given, settings, strategies as st

from clifford_kernels.clifford import (
    CliffordSpace,
    Multivector,
    basis_blade,
    basis_blades,
    blade_indices,
    blade_mask,
    blade_product,
    embed,
    from_vector,
    geometric_product,
    grade_project,
    norm_gamma,
    normalize,
    parse_multivector,
    rescale,
    reverse,
    scalar,
    scalar_part,
    to_antisymmetric_tensor,
    wedge,
)
from clifford_kernels.exceptions import DegenerateFormError, DimensionMismatch, DomainError, SpaceMismatch
from clifford_kernels.quadratic import QuadraticForm, eval_q, polarize
from clifford_kernels.tensor import wedge2

from .oracles import all_blades, reduce_word, word_product


def _random_multivector(rng, space: CliffordSpace) -> Multivector:
    return Multivector(space, {m: float(rng.standard_normal()) for m in range(space.blade_count)})


def _random_space(rng, n: int) -> CliffordSpace:
    return CliffordSpace.of(rng.choice([-2.0, -1.0, -0.5, 0.5, 1.0, 3.0], size=n).tolist())


def test_blade_masks():
    assert blade_indices(0b101) == [1, 3]
    assert blade_mask([3, 1]) == 0b101
    assert blade_indices(0) == []


def test_blade_product():
    euclid = (1.0, 1.0, 1.0)
    assert blade_product(0b1, 0b1, euclid) == (1.0, 0)
    assert blade_product(0b01, 0b10, euclid) == (1.0, 0b11)
    assert blade_product(0b10, 0b01, euclid) == (-1.0, 0b11)
    assert blade_product(0b11, 0b11, euclid) == (-1.0, 0)
    assert blade_product(0b1, 0b1, (-2.0, 1.0)) == (-2.0, 0)


def test_blade_product_out_of_range():
    with pytest.raises(DimensionMismatch):
        blade_product(0b100, 0b1, (1.0, 1.0))


@pytest.mark.parametrize("diag", [(1.0, 1.0), (1.0, -1.0, 1.0), (2.0, -0.5, 3.0)])
def test_blade_product_matches_word_reduction(diag):
    n = len(diag)
    for a, b in itertools.product(all_blades(n), repeat=2):
        sign, word = reduce_word([*a, *b], diag)
        factor, mask = blade_product(blade_mask(a), blade_mask(b), diag)
        assert mask == blade_mask(word)
        assert math.isclose(factor, sign)


def test_basis_count():
    for n in range(1, 6):
        blades = basis_blades(CliffordSpace.euclidean(n))
        assert len(blades) == 2 ** n
        assert len({next(iter(b.terms)) for b in blades}) == 2 ** n


def test_space_validation():
    with pytest.raises(DimensionMismatch):
        CliffordSpace.of([])
    with pytest.raises(DomainError):
        CliffordSpace.of([1.0, float("inf")])
    with pytest.raises(DomainError):
        CliffordSpace.from_form(QuadraticForm([[0.0, 1.0], [1.0, 0.0]]))
    assert CliffordSpace.from_form(QuadraticForm.diagonal([1, -1])).diag == (1.0, -1.0)


def test_from_vector():
    space = CliffordSpace.euclidean(2)
    assert from_vector(space, [1, 0]).terms == {0b1: 1.0}
    assert from_vector(space, [0, 0]).is_zero


def test_vector_squares_to_quadratic_form(rng):
    for diag in ((1.0, 1.0, 1.0), (1.0, -1.0, 2.0)):
        space = CliffordSpace.of(diag)
        form = QuadraticForm.diagonal(diag)
        for _ in range(5):
            x = rng.standard_normal(3)
            v = from_vector(space, x)
            assert (v * v).allclose(scalar(space, eval_q(form, x)))


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", range(1, 7))
def test_anticommutator_is_twice_polarization(n, seed):
    rng = np.random.default_rng(seed)
    space = _random_space(rng, n)
    form = QuadraticForm.diagonal(space.diag)
    for _ in range(5):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        vx, vy = from_vector(space, x), from_vector(space, y)
        assert (vx * vy + vy * vx).allclose(scalar(space, 2 * polarize(form, x, y)))
        assert math.isclose(scalar_part(grade_project(vx * vy, 0)), polarize(form, x, y), abs_tol=1e-12)


def test_geometric_product_examples():
    space = CliffordSpace.euclidean(2)
    e12 = basis_blade(space, [1, 2])
    assert (e12 * e12).allclose(scalar(space, -1.0))
    a = parse_multivector(space, "1 + 2*e1 - e1e2")
    assert (scalar(space, 1.0) * a).allclose(a)


def test_geometric_product_matches_word_reduction(rng):
    diag = (1.0, -1.0, 2.0)
    space = CliffordSpace.of(diag)
    a, b = _random_multivector(rng, space), _random_multivector(rng, space)
    expected = word_product({tuple(blade_indices(m)): c for m, c in a.terms.items()},
                            {tuple(blade_indices(m)): c for m, c in b.terms.items()}, diag)
    assert geometric_product(a, b).allclose(Multivector(space, {blade_mask(w): c for w, c in expected.items()}))


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("n", range(1, 7))
def test_geometric_product_is_associative(n, seed):
    rng = np.random.default_rng(seed)
    space = _random_space(rng, n)
    a, b, c = (_random_multivector(rng, space) for _ in range(3))
    left = (a * b) * c
    peak = max((abs(v) for v in left.terms.values()), default=1.0)
    assert left.allclose(a * (b * c), atol=1e-11 * max(1.0, peak))


@pytest.mark.parametrize("n", range(1, 7))
def test_grade_parts_sum_to_the_whole(rng, n):
    space = _random_space(rng, n)
    a = _random_multivector(rng, space)
    total = Multivector(space)
    for k in range(n + 1):
        part = grade_project(a, k)
        assert all(m.bit_count() == k for m in part.terms)
        total = total + part
    assert total.allclose(a, atol=0.0)


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        geometric_product(scalar(CliffordSpace.euclidean(2), 1.0), scalar(CliffordSpace.euclidean(3), 1.0))


def test_wedge():
    space = CliffordSpace.euclidean(2)
    e1, e2 = basis_blade(space, [1]), basis_blade(space, [2])
    assert wedge(e1, e2).terms == {0b11: 1.0}
    assert wedge(e1 + e2, e2).allclose(basis_blade(space, [1, 2]))
    assert wedge(e2, e1).allclose(basis_blade(space, [1, 2], -1.0))


def test_wedge_of_vector_with_itself_is_zero(rng):
    space = CliffordSpace.of([1.0, -1.0, 2.0])
    for _ in range(5):
        v = from_vector(space, rng.standard_normal(3))
        assert (v ^ v).is_zero


def test_wedge_is_metric_free(rng):
    x, y = rng.standard_normal(3), rng.standard_normal(3)
    a = wedge(from_vector(CliffordSpace.euclidean(3), x), from_vector(CliffordSpace.euclidean(3), y))
    b = wedge(from_vector(CliffordSpace.of([2.0, -1.0, 5.0]), x), from_vector(CliffordSpace.of([2.0, -1.0, 5.0]), y))
    assert a.terms.keys() == b.terms.keys()
    assert all(math.isclose(a[m], b[m]) for m in a.terms)


def test_grade_project():
    space = CliffordSpace.euclidean(2)
    a = parse_multivector(space, "1 + e1 + e1e2")
    assert grade_project(a, 1).allclose(basis_blade(space, [1]))
    assert scalar_part(a) == 1.0
    with pytest.raises(DomainError):
        grade_project(a, 3)


def test_reverse():
    space = CliffordSpace.euclidean(3)
    a = parse_multivector(space, "1 + e1 + e1e2 + e1e2e3")
    assert reverse(a).allclose(parse_multivector(space, "1 + e1 - e1e2 - e1e2e3"))


def test_parse_multivector():
    space = CliffordSpace.of([1.0, -1.0])
    assert parse_multivector(space, "e2e1").allclose(basis_blade(space, [1, 2], -1.0))
    assert parse_multivector(space, "e2e2").allclose(scalar(space, -1.0))
    assert parse_multivector(space, "0.5*e1 - 2").allclose(Multivector(space, {0b1: 0.5, 0: -2.0}))
    with pytest.raises(DomainError):
        parse_multivector(space, "")
    with pytest.raises(DomainError):
        parse_multivector(space, "e1 e2")
    with pytest.raises(DimensionMismatch):
        parse_multivector(space, "e3")


def test_multivector_model_round_trip(rng):
    space = CliffordSpace.of([1.0, -1.0, 2.0])
    a = _random_multivector(rng, space)
    b = Multivector.from_model(a.to_model())
    assert b.space == space
    assert b.allclose(a, atol=0.0)


def test_to_antisymmetric_tensor():
    space = CliffordSpace.euclidean(2)
    t = to_antisymmetric_tensor(basis_blade(space, [1, 2]), 2)
    assert np.allclose(t.entries, wedge2([1, 0], [0, 1]).entries)
    assert t.symmetry == "antisym"


def test_to_antisymmetric_tensor_is_built_without_a_symmetry_pass(monkeypatch):
    def fail(a, alternating):
        raise AssertionError("symmetry re-checked")

    monkeypatch.setattr("clifford_kernels.tensor._project", fail)
    space = CliffordSpace.euclidean(4)
    t = to_antisymmetric_tensor(basis_blade(space, [1, 2, 4], 6.0), 3)
    assert t.symmetry == "antisym"
    assert t.entries[0, 1, 3] == 1.0
    assert t.entries[1, 0, 3] == -1.0
    assert t.entries[3, 1, 0] == -1.0
    assert np.count_nonzero(t.entries) == 6


def test_norm_gamma():
    space = CliffordSpace.euclidean(3)
    assert norm_gamma(Multivector(space)) == 0.0
    e1 = basis_blade(space, [1])
    for gamma in ("hs", "injective", "projective"):
        assert math.isclose(norm_gamma(e1, gamma=gamma), 1.0)
    # e1e2 ↦ ½(e1⊗e2 − e2⊗e1): singular values (½, ½)
    e12 = basis_blade(space, [1, 2])
    assert math.isclose(norm_gamma(e12, gamma="injective"), 0.5)
    assert math.isclose(norm_gamma(e12, gamma="hs"), math.sqrt(0.5))
    assert math.isclose(norm_gamma(e12, gamma="projective"), 1.0)


@pytest.mark.parametrize("n", range(2, 7))
def test_norm_gamma_ordering_on_bivectors(rng, n):
    space = CliffordSpace.euclidean(n)
    bivectors = [m for m in range(space.blade_count) if m.bit_count() == 2]
    for _ in range(20):
        a = Multivector(space, {m: float(rng.standard_normal()) for m in bivectors})
        eps, hs, pi = (norm_gamma(a, gamma=g) for g in ("injective", "hs", "projective"))
        assert eps <= hs * (1 + 1e-12)
        assert hs <= pi * (1 + 1e-12)


def test_norm_gamma_metric_weights():
    space = CliffordSpace.of([4.0, 1.0])
    assert math.isclose(norm_gamma(basis_blade(space, [1]), nu="metric"), 2.0)


def test_normalize_and_rescale():
    space = CliffordSpace.of([4.0, -9.0])
    assert normalize(space).diag == (1.0, -1.0)
    a = basis_blade(space, [1, 2], 1.0)
    r = rescale(a)
    assert r.space.diag == (1.0, -1.0)
    assert math.isclose(r[0b11], 6.0)
    # Products commute with the rescaling
    x = parse_multivector(space, "1 + e1 - 2*e2")
    assert rescale(x * x).allclose(rescale(x) * rescale(x))
    with pytest.raises(DegenerateFormError):
        normalize(CliffordSpace.of([1.0, 0.0]))


def test_embed_is_a_subalgebra(rng):
    small = CliffordSpace.of([1.0, -1.0])
    large = CliffordSpace.of([1.0, -1.0, 2.0])
    a, b = _random_multivector(rng, small), _random_multivector(rng, small)
    assert embed(a * b, large).allclose(embed(a, large) * embed(b, large))
    with pytest.raises(SpaceMismatch):
        embed(a, CliffordSpace.of([1.0, 1.0, 1.0]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([1.0, -1.0, 2.0]), min_size=1, max_size=4), st.data())
def test_blade_products_are_closed(diag, data):
    n = len(diag)
    a = data.draw(st.integers(0, 2 ** n - 1))
    b = data.draw(st.integers(0, 2 ** n - 1))
    factor, mask = blade_product(a, b, diag)
    assert mask == a ^ b
    assert abs(factor) == math.prod(abs(diag[i - 1]) for i in blade_indices(a & b))
