from fractions import Fraction as F

import pytest

from qonsager.scalars import (
    ParameterError,
    ParamSet,
    check_chu_vandermonde,
    chu_vandermonde_sums,
    format_scalar,
    p_poly,
    parse_scalar,
    q_int,
    q_poch,
    t_coeff,
    t_seq,
    theta,
    theta_star,
)

GOLDEN = ParamSet(1, F(2), F(3), F(5), (F(1),))


def test_parse_and_format_round_trip():
    assert parse_scalar("37/6") == F(37, 6)
    assert parse_scalar("-2") == F(-2)
    assert format_scalar(F(37, 6)) == "37/6"
    assert format_scalar(F(-2)) == "-2"
    assert format_scalar(F(4, 2)) == "2"


def test_parse_rejects_zero_denominator():
    with pytest.raises(ParameterError):
        parse_scalar("1/0")
    with pytest.raises(ParameterError):
        parse_scalar("abc")


def test_q_int_values():
    assert q_int(0, F(2)) == 0
    assert q_int(1, F(2)) == 1
    assert q_int(3, F(2)) == F(21, 4)
    assert q_int(-3, F(2)) == -F(21, 4)


def test_q_int_rejects_forbidden_q():
    for bad in (F(0), F(1), F(-1)):
        with pytest.raises(ParameterError):
            q_int(2, bad)


def test_q_poch_values():
    assert q_poch(F(5), F(7), 0) == 1
    assert q_poch(F(1), F(3), 2) == 0
    assert q_poch(F(2), F(3), 2) == 5


def test_theta_golden():
    assert theta(0, GOLDEN) == F(37, 6)
    assert theta(1, GOLDEN) == F(13, 6)
    assert theta_star(0, GOLDEN) == F(101, 10)
    assert theta_star(1, GOLDEN) == F(29, 10)


def test_theta_index_range():
    with pytest.raises(ParameterError):
        theta(2, GOLDEN)
    with pytest.raises(ParameterError):
        theta_star(-1, GOLDEN)


def test_theta_sequences_distinct():
    p = ParamSet(3, F(3, 2), F(5), F(3))
    thetas = [theta(i, p) for i in range(4)]
    stars = [theta_star(i, p) for i in range(4)]
    assert len(set(thetas)) == 4
    assert len(set(stars)) == 4


def test_p_poly_vanishes_on_adjacent_eigenvalues():
    assert p_poly(theta(0, GOLDEN), theta(1, GOLDEN), F(2)) == 0


def test_p_poly_at_origin():
    assert p_poly(F(0), F(0), F(2)) == F(225, 16)


def test_p_poly_symmetry():
    assert p_poly(F(1), F(2), F(2)) == p_poly(F(2), F(1), F(2))


def test_three_term_recurrence():
    p = ParamSet(3, F(2), F(3), F(5))
    q2 = p.q**2 + p.q**-2
    for i in range(1, 3):
        assert theta(i - 1, p) - q2 * theta(i, p) + theta(i + 1, p) == 0


def test_t_coeff_diagonal_is_one():
    for p in (GOLDEN, ParamSet(3, F(3, 2), F(1, 7), F(2, 9))):
        for i in range(p.d + 1):
            assert t_coeff(i, i, p) == 1


def test_t_coeff_golden_off_diagonal():
    assert t_coeff(0, 1, GOLDEN) == 9
    assert t_coeff(1, 0, GOLDEN) == F(1, 9)


def test_t_coeff_adjacent_product_is_one():
    p = ParamSet(3, F(2), F(5), F(3))
    for i in range(1, 4):
        assert t_coeff(i - 1, i, p) * t_coeff(i, i - 1, p) == 1


def test_t_coeff_adjacent_closed_form():
    p = ParamSet(3, F(2), F(5), F(3))
    for i in range(1, 4):
        assert t_coeff(i - 1, i, p) == p.a**2 * p.q ** (2 * (p.d - 2 * i + 1))


def test_t_seq_values():
    assert t_seq(0, GOLDEN) == 1
    assert t_seq(1, GOLDEN) == 9
    assert t_seq(1, ParamSet(2, F(2), F(3), F(5))) == 36


def test_chu_vandermonde_single_term():
    assert chu_vandermonde_sums(1, 1, GOLDEN)["ascending"] == (F(1), F(1))


def test_chu_vandermonde_golden_two_term():
    got, want = chu_vandermonde_sums(0, 1, GOLDEN)["ascending"]
    assert got == want == 9


def test_chu_vandermonde_full_grid():
    ok, failures = check_chu_vandermonde(ParamSet(3, F(3, 2), F(5), F(3)))
    assert ok, failures


def test_paramset_rejects_bad_q():
    for bad in (F(0), F(1), F(-1)):
        with pytest.raises(ParameterError):
            ParamSet(1, bad, F(3), F(5))


def test_paramset_rejects_zero_scalars():
    with pytest.raises(ParameterError):
        ParamSet(1, F(2), F(0), F(5))
    with pytest.raises(ParameterError):
        ParamSet(1, F(2), F(3), F(0))
    with pytest.raises(ParameterError):
        ParamSet(1, F(2), F(3), F(5), (F(0),))


def test_paramset_rejects_colliding_eigenvalues():
    # a^2 = q^0 = 1 is always forbidden, so a = 1 never validates.
    with pytest.raises(ParameterError):
        ParamSet(2, F(2), F(1), F(5))
    # a^2 = q^2 at d = 2.
    with pytest.raises(ParameterError):
        ParamSet(2, F(2), F(2), F(5))
    # the same constraint applies to b.
    with pytest.raises(ParameterError):
        ParamSet(2, F(2), F(3), F(2))


def test_paramset_rejects_bad_phi_length():
    with pytest.raises(ParameterError):
        ParamSet(2, F(2), F(3), F(5), (F(1),))


def test_paramset_rejects_small_d():
    with pytest.raises(ParameterError):
        ParamSet(0, F(2), F(3), F(5))


def test_exact_arithmetic_round_trip():
    values = [F(3, 7), F(-11, 5), F(1000000007, 3), F(2) ** 40]
    for x in values:
        for y in values:
            assert (x + y) - y == x
            assert (x * y) / y == x
