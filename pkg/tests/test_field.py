"""Tests for finite field arithmetic and the quadratic character."""

import numpy as np
import pytest
from sympy import factorint

from src.errors import ValidationError
from src.field import character_array, field_arith, field_for_order, make_field, quadratic_character
from src.field.character import euler_character
from src.field.spec import LOG_TABLE, PRIME

# every odd prime power in range
SMALL_ORDERS = [q for q in range(3, 82, 2) if len(factorint(q)) == 1]
CHARACTER_ORDERS = [q for q in range(3, 10_001, 2) if len(factorint(q)) == 1]


class TestMakeField:
    def test_prime_field(self, f5):
        assert f5.q == 5
        assert f5.representation == PRIME
        assert f5.is_prime_field

    def test_log_table_field(self, f9):
        assert (f9.p, f9.m, f9.q) == (3, 2, 9)
        assert f9.representation == LOG_TABLE
        assert f9.generator_index == 3
        assert f9.exp_table[1] == 3
        assert len(f9.modulus) == 3 and f9.modulus[-1] == 1

    def test_generator_is_primitive(self, f9):
        powers = {int(f9.exp_table[e]) for e in range(f9.order)}
        assert powers == set(range(1, 9))

    @pytest.mark.parametrize("p,m", [(4, 1), (2, 1), (9, 1), (3, 0)])
    def test_rejects_bad_parameters(self, p, m):
        with pytest.raises(ValidationError):
            make_field(p, m)

    def test_log_table_limit(self):
        with pytest.raises(ValidationError, match="log-table"):
            make_field(3, 13)


class TestFieldForOrder:
    def test_prime_power(self):
        spec = field_for_order(25)
        assert (spec.p, spec.m) == (5, 2)

    def test_prime(self):
        assert field_for_order(101).representation == PRIME

    @pytest.mark.parametrize("q", [4, 15, 1, 1024])
    def test_rejects(self, q):
        with pytest.raises(ValidationError):
            field_for_order(q)


class TestArithmetic:
    def test_inverse_of_zero(self, f5, f9):
        with pytest.raises(ZeroDivisionError):
            f5.inv(0)
        with pytest.raises(ZeroDivisionError):
            field_arith(f9, "inv", 0)

    def test_unknown_op(self, f5):
        with pytest.raises(ValidationError):
            field_arith(f5, "div", 1, 2)

    def test_out_of_range(self, f5):
        with pytest.raises(ValidationError):
            field_arith(f5, "add", 5, 1)

    @pytest.mark.parametrize("q", SMALL_ORDERS)
    def test_axioms_exhaustive(self, q):
        spec = field_for_order(q)
        x = spec.elements
        a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
        add, mul = spec.add_array, spec.mul_array
        assert np.array_equal(add(a, add(b, c)), add(add(a, b), c))
        assert np.array_equal(mul(a, mul(b, c)), mul(mul(a, b), c))
        assert np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
        assert np.array_equal(add(x[:, None], x[None, :]), add(x[None, :], x[:, None]))
        assert np.array_equal(mul(x[:, None], x[None, :]), mul(x[None, :], x[:, None]))
        assert add(x, np.zeros_like(x)).tolist() == x.tolist()
        assert mul(x, np.ones_like(x)).tolist() == x.tolist()
        for v in range(q):
            assert spec.add(v, spec.neg(v)) == 0
            assert spec.sub(spec.add(v, 1), 1) == v
            if v:
                assert spec.mul(v, spec.inv(v)) == 1

    def test_characteristic(self, f9):
        # p * a = 0 for every a
        for a in range(9):
            assert f9.add(f9.add(a, a), a) == 0

    @pytest.mark.parametrize("q", SMALL_ORDERS)
    def test_array_ops_match_scalar(self, q):
        spec = field_for_order(q)
        a, b = np.meshgrid(spec.elements, spec.elements)
        added = spec.add_array(a, b)
        multiplied = spec.mul_array(a, b)
        for x in range(q):
            for y in range(q):
                assert added[y, x] == spec.add(x, y)
                assert multiplied[y, x] == spec.mul(x, y)

    def test_pow(self, f7):
        assert f7.pow(3, 6) == 1
        assert f7.pow(0, 0) == 1
        with pytest.raises(ValidationError):
            f7.pow(3, -1)


class TestCharacter:
    def test_f5(self, f5):
        assert [quadratic_character(f5, a) for a in range(5)] == [0, 1, -1, -1, 1]

    @pytest.mark.parametrize("q", [3, 9, 25, 27, 81, 101, 243, 1009, 2187, 6561, 9409, 9973])
    def test_matches_euler(self, q):
        spec = field_for_order(q)
        for a in range(q):
            assert quadratic_character(spec, a) == euler_character(spec, a)

    def test_matches_squares_up_to_10000(self):
        for q in CHARACTER_ORDERS:
            spec = field_for_order(q)
            squares = np.zeros(q, dtype=bool)
            squares[spec.mul_array(spec.elements, spec.elements)] = True
            expected = np.where(squares, 1, -1)
            expected[0] = 0
            assert np.array_equal(character_array(spec, spec.elements), expected), q
            for a in range(1, q, max(1, q // 40)):
                assert euler_character(spec, a) == expected[a], (q, a)

    def test_prime_subfield_is_square_in_f9(self, f9):
        assert quadratic_character(f9, 2) == 1

    def test_half_are_residues(self, f9):
        values = [quadratic_character(f9, a) for a in range(1, 9)]
        assert values.count(1) == values.count(-1) == 4

    @pytest.mark.parametrize("q", SMALL_ORDERS + [101, 243, 1009])
    def test_multiplicative(self, q):
        spec = field_for_order(q)
        x = spec.elements
        chi = character_array(spec, x)
        products = spec.mul_array(x[:, None], x[None, :])
        assert np.array_equal(character_array(spec, products), chi[:, None] * chi[None, :])

    @pytest.mark.parametrize("q", [9, 25, 101, 1009])
    def test_array_matches_scalar(self, q):
        spec = field_for_order(q)
        expected = [quadratic_character(spec, a) for a in range(q)]
        assert character_array(spec, spec.elements).tolist() == expected

    def test_large_prime_uses_euler(self):
        spec = make_field(2**31 - 1)
        # p = 3 mod 4, so -1 is a non-residue
        assert quadratic_character(spec, spec.q - 1) == -1
        assert quadratic_character(spec, 4) == 1
        values = np.array([0, 1, 4, spec.q - 1], dtype=np.int64)
        assert character_array(spec, values).tolist() == [0, 1, 1, -1]

    def test_out_of_range(self, f5):
        with pytest.raises(ValidationError):
            quadratic_character(f5, 7)
