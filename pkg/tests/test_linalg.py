import random
from fractions import Fraction as F

import pytest

from qonsager.linalg import (
    Decomposition,
    Matrix,
    ShapeError,
    SingularMatrixError,
    Subspace,
    column_space,
    commutator,
    flag,
    kernel,
    q_commutator,
    rref,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from qonsager.scalars import q_int


def rand_matrix(n, rng, span=6):
    return Matrix(
        [[F(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    )


def test_add_sub_scale():
    x = Matrix([[1, 2], [3, 4]])
    y = Matrix([[5, 6], [7, 8]])
    assert x + y == Matrix([[6, 8], [10, 12]])
    assert y - x == Matrix([[4, 4], [4, 4]])
    assert x.scale(F(1, 2)) == Matrix([[F(1, 2), 1], [F(3, 2), 2]])


def test_mul_identity_law():
    rng = random.Random(7)
    x = rand_matrix(3, rng)
    assert x * Matrix.identity(3) == x
    assert Matrix.identity(3) * x == x


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        Matrix([[1, 2]]) + Matrix([[1], [2]])
    with pytest.raises(ShapeError):
        Matrix([[1, 2]]) * Matrix([[1, 2]])


def test_inverse_diagonal():
    assert Matrix([[2, 0], [0, F(1, 2)]]).inverse() == Matrix([[F(1, 2), 0], [0, 2]])


def test_inverse_golden_h():
    h = Matrix([[1, 0], [-2, 9]])
    assert h.inverse() == Matrix([[1, 0], [F(2, 9), F(1, 9)]])
    assert h * h.inverse() == Matrix.identity(2)


def test_inverse_random_round_trip():
    rng = random.Random(11)
    for _ in range(5):
        x = rand_matrix(4, rng)
        try:
            inv = x.inverse()
        except SingularMatrixError:
            continue
        assert x * inv == Matrix.identity(4)
        assert inv * x == Matrix.identity(4)


def test_singular_inverse_reports_rank():
    with pytest.raises(SingularMatrixError) as err:
        Matrix([[1, 2], [2, 4]]).inverse()
    assert err.value.rank == 1
    assert err.value.size == 2


def test_commutator_with_self_vanishes():
    rng = random.Random(3)
    x = rand_matrix(3, rng)
    assert commutator(x, x).is_zero()


def test_q_commutator_of_identity():
    rng = random.Random(5)
    y = rand_matrix(3, rng)
    q = F(2)
    assert q_commutator(Matrix.identity(3), y, q) == y.scale(q - 1 / q)


def test_nested_q_commutator_matches_cubic_expansion():
    rng = random.Random(9)
    q = F(2)
    three = q_int(3, q)
    for _ in range(3):
        x, y = rand_matrix(3, rng), rand_matrix(3, rng)
        nested = commutator(x, q_commutator(x, q_commutator(x, y, q), 1 / q))
        expanded = (
            x * x * x * y
            - (x * x * y * x).scale(three)
            + (x * y * x * x).scale(three)
            - y * x * x * x
        )
        assert nested == expanded


def test_kernel_of_zero_matrix_is_full():
    space = kernel(Matrix.zero(2))
    assert space.rank == 2
    assert space == Subspace.full(2)


def test_kernel_golden_star_eigenspace():
    # A* - theta*_0 I at the golden parameters (phi = 1, theta* gap = -36/5).
    m = Matrix([[0, 1], [0, F(29, 10) - F(101, 10)]])
    assert kernel(m) == Subspace.from_vectors(2, [[1, 0]])


def test_kernel_golden_a_eigenspace():
    m = Matrix([[0, 0], [1, -4]])
    assert kernel(m) == Subspace.from_vectors(2, [[4, 1]])


def test_rank_nullity():
    rng = random.Random(13)
    for _ in range(5):
        m = rand_matrix(4, rng)
        assert kernel(m).rank + column_space(m).rank == 4


def test_rref_idempotent():
    rng = random.Random(17)
    m = rand_matrix(4, rng)
    assert rref(rref(m)) == rref(m)


def test_subspace_canonical_equality():
    s = Subspace.from_vectors(3, [[1, 2, 3], [0, 1, 1]])
    t = Subspace.from_vectors(3, [[1, 3, 4], [0, 2, 2]])
    assert subspace_equal(s, t)
    assert s.basis == t.basis


def test_subspace_intersection_of_coordinate_planes():
    s = Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 0]])
    t = Subspace.from_vectors(3, [[0, 1, 0], [0, 0, 1]])
    assert subspace_intersect(s, t) == Subspace.from_vectors(3, [[0, 1, 0]])


def test_subspace_sum_idempotent():
    s = Subspace.from_vectors(3, [[1, 2, 3]])
    assert subspace_sum(s, s) == s


def test_golden_eigenspaces_sum_to_everything():
    v_star0 = Subspace.from_vectors(2, [[1, 0]])
    v0 = Subspace.from_vectors(2, [[4, 1]])
    assert subspace_sum(v_star0, v0) == Subspace.full(2)


def test_dimension_formula():
    rng = random.Random(19)
    for _ in range(10):
        vecs_s = [[F(rng.randint(-3, 3)) for _ in range(4)] for _ in range(rng.randint(1, 3))]
        vecs_t = [[F(rng.randint(-3, 3)) for _ in range(4)] for _ in range(rng.randint(1, 3))]
        s = Subspace.from_vectors(4, vecs_s)
        t = Subspace.from_vectors(4, vecs_t)
        total = subspace_sum(s, t).rank + subspace_intersect(s, t).rank
        assert total == s.rank + t.rank


def test_modular_law_dimensions():
    # dim(x n (y + (x n z))) = dim((x n y) + (x n z)) for random triples
    rng = random.Random(23)
    for _ in range(8):
        spaces = []
        for _ in range(3):
            vecs = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(rng.randint(1, 3))]
            spaces.append(Subspace.from_vectors(4, vecs))
        x, y, z = spaces
        xz = subspace_intersect(x, z)
        left = subspace_intersect(x, subspace_sum(y, xz))
        right = subspace_sum(subspace_intersect(x, y), xz)
        assert left.contains(right)
        if y.contains(x) or x.contains(y):
            assert left == right


def test_ambient_mismatch_raises():
    with pytest.raises(ShapeError):
        subspace_sum(Subspace.full(2), Subspace.full(3))


def standard_line(n, i):
    vec = [0] * n
    vec[i] = 1
    return Subspace.from_vectors(n, [vec])


def test_flag_endpoints():
    dec = Decomposition([standard_line(3, i) for i in range(3)])
    assert flag(dec, 2, "ascending") == Subspace.full(3)
    assert flag(dec, 0, "ascending") == standard_line(3, 0)
    assert flag(dec, 0, "descending") == standard_line(3, 2)
    assert flag(dec, 1, "descending") == Subspace.from_vectors(3, [[0, 1, 0], [0, 0, 1]])


def test_flag_golden_eigen_decomposition():
    v0 = Subspace.from_vectors(2, [[4, 1]])
    v1 = Subspace.from_vectors(2, [[0, 1]])
    dec = Decomposition([v0, v1])
    assert flag(dec, 0, "ascending") == v0


def test_complementary_flags_intersect_trivially():
    dec = Decomposition([standard_line(4, i) for i in range(4)])
    d = 3
    for i in range(d):
        asc = flag(dec, i, "ascending")
        desc = flag(dec, d - i - 1, "descending")
        assert subspace_intersect(asc, desc).is_zero()


def test_decomposition_rejects_overlapping_parts():
    s = Subspace.from_vectors(2, [[1, 0]])
    with pytest.raises(ValueError):
        Decomposition([s, s])


def test_decomposition_rejects_zero_part():
    with pytest.raises(ValueError):
        Decomposition([Subspace.zero(2), Subspace.full(2)])


def test_flag_index_out_of_range():
    dec = Decomposition([standard_line(2, 0), standard_line(2, 1)])
    with pytest.raises(IndexError):
        flag(dec, 2, "ascending")
