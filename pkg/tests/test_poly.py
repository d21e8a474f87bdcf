"""Ring arithmetic in F2[x]/(x^n - 1)."""

import random

import pytest

from gbcodes.errors import NotADivisorError, NotInvertibleError
from gbcodes.poly import (
    CyclicPoly,
    f2_mul,
    f2_to_string,
    gcd_with_modulus,
    gcd_with_modulus_ext,
    modulus_quotient,
)


def ref_mul(p: CyclicPoly, q: CyclicPoly) -> CyclicPoly:
    """Schoolbook convolution followed by exponent folding; independent of
    the rotation-based product under test."""
    n = p.n
    out = [0] * n
    for i, ci in enumerate(p.coeffs):
        for j, cj in enumerate(q.coeffs):
            out[(i + j) % n] ^= ci & cj
    return CyclicPoly.from_coeffs(n, out)


def rand_poly(n: int, rng: random.Random) -> CyclicPoly:
    return CyclicPoly(n, rng.getrandbits(n))


class TestAdd:
    def test_self_cancel(self):
        p = CyclicPoly.parse(5, "1+x")
        assert (p + p).is_zero

    def test_xor(self):
        p = CyclicPoly.parse(5, "1+x")
        q = CyclicPoly.parse(5, "x+x^2")
        assert (p + q) == CyclicPoly.parse(5, "1+x^2")

    def test_all_ones_plus_one(self):
        out = CyclicPoly.all_ones(5) + CyclicPoly.one(5)
        assert out == CyclicPoly.parse(5, "x+x^2+x^3+x^4")

    def test_mismatched_rings(self):
        with pytest.raises(ValueError):
            CyclicPoly.one(5) + CyclicPoly.one(6)


class TestMul:
    def test_identity(self):
        rng = random.Random(1)
        for n in (2, 5, 9, 17):
            q = rand_poly(n, rng)
            assert CyclicPoly.one(n) * q == q

    def test_inverse_pair_n5(self):
        # 1/(1+x+x^2) at n=5 is x(1+x^3+x^6) = x+x^2+x^4; checked by the
        # independent schoolbook product.
        p = CyclicPoly.parse(5, "1+x+x^2")
        q = CyclicPoly.parse(5, "x+x^2+x^4")
        assert ref_mul(p, q) == CyclicPoly.one(5)
        assert p * q == CyclicPoly.one(5)

    def test_inverse_pair_n27(self):
        p = CyclicPoly.from_monomials(27, range(0, 21, 3))
        q = CyclicPoly.parse(27, "x^3+x^6+x^12+x^18+x^24")
        assert p * q == CyclicPoly.one(27)

    def test_matches_schoolbook(self):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(2, 40)
            p, q = rand_poly(n, rng), rand_poly(n, rng)
            assert p * q == ref_mul(p, q)


class TestRingAxioms:
    def test_axioms_on_random_triples(self):
        rng = random.Random(3)
        for _ in range(1000):
            n = rng.randint(2, 64)
            p, q, r = (rand_poly(n, rng) for _ in range(3))
            assert (p + q) + r == p + (q + r)
            assert p + q == q + p
            assert (p * q) * r == p * (q * r)
            assert p * q == q * p
            assert p * (q + r) == p * q + p * r

    def test_weight_submultiplicative(self):
        rng = random.Random(4)
        for _ in range(300):
            n = rng.randint(2, 48)
            p, q = rand_poly(n, rng), rand_poly(n, rng)
            assert (p * q).weight <= p.weight * q.weight


class TestGcd:
    def test_divisor_of_modulus(self):
        assert gcd_with_modulus(CyclicPoly.parse(5, "1+x")) == 0b11

    def test_non_divisor(self):
        # x^5 - 1 = (1+x)(1+x+x^2+x^3+x^4) over F2, so gcd(1+x^3, x^5-1)
        # can only pick up the 1+x factor; 1+x^3 = (1+x)(1+x+x^2) confirms.
        assert gcd_with_modulus(CyclicPoly.parse(5, "1+x^3")) == 0b11

    def test_unit(self):
        for n in (2, 7, 12):
            assert gcd_with_modulus(CyclicPoly.one(n)) == 1

    def test_zero(self):
        assert gcd_with_modulus(CyclicPoly.zero(4)) == (1 << 4) | 1

    def test_extended_bezout(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(2, 32)
            p = rand_poly(n, rng)
            g, u, v = gcd_with_modulus_ext(p)
            assert f2_mul(u, p.mask) ^ f2_mul(v, (1 << n) | 1) == g


class TestInvert:
    def test_one(self):
        assert CyclicPoly.one(9).invert() == CyclicPoly.one(9)

    def test_n48_inverse(self):
        p = CyclicPoly.from_monomials(48, range(0, 21, 3))
        expected = CyclicPoly.parse(
            48, "x^3+x^6+x^12+x^18+x^24+x^27+x^33+x^39+x^45")
        assert p.invert() == expected

    def test_not_invertible(self):
        with pytest.raises(NotInvertibleError):
            CyclicPoly.parse(5, "1+x").invert()

    def test_product_is_one_whenever_invert_succeeds(self):
        rng = random.Random(6)
        checked = 0
        while checked < 100:
            n = rng.randint(2, 40)
            p = rand_poly(n, rng)
            try:
                q = p.invert()
            except NotInvertibleError:
                continue
            assert p * q == CyclicPoly.one(n)
            checked += 1


class TestReciprocal:
    def test_fixed_point(self):
        assert CyclicPoly.one(7).reciprocal() == CyclicPoly.one(7)

    def test_x_inverse(self):
        assert CyclicPoly.parse(5, "x").reciprocal() == CyclicPoly.parse(5, "x^4")

    def test_involution(self):
        rng = random.Random(7)
        for _ in range(100):
            p = rand_poly(rng.randint(1, 30), rng)
            assert p.reciprocal().reciprocal() == p

    def test_ring_homomorphism(self):
        rng = random.Random(8)
        for _ in range(200):
            n = rng.randint(2, 30)
            p, q = rand_poly(n, rng), rand_poly(n, rng)
            assert (p * q).reciprocal() == p.reciprocal() * q.reciprocal()


class TestSubstitutePower:
    def test_identity(self):
        rng = random.Random(9)
        for _ in range(50):
            p = rand_poly(rng.randint(1, 20), rng)
            assert p.substitute_power(1) == p

    def test_hand_reduced_example(self):
        # (1 + x + x^2) at x -> x^3 over n=5: 1 + x^3 + x^6 = 1 + x + x^3.
        p = CyclicPoly.parse(5, "1+x+x^2")
        assert p.substitute_power(3) == CyclicPoly.parse(5, "1+x+x^3")

    def test_non_coprime_collapse(self):
        p = CyclicPoly.parse(4, "1+x")
        assert p.substitute_power(2) == CyclicPoly.parse(4, "1+x^2")

    def test_coprime_automorphism(self):
        import math

        rng = random.Random(10)
        count = 0
        while count < 200:
            n = rng.randint(2, 30)
            s = rng.randint(1, n - 1)
            if math.gcd(s, n) != 1:
                continue
            p, q = rand_poly(n, rng), rand_poly(n, rng)
            assert p.substitute_power(s).weight == p.weight
            assert (p * q).substitute_power(s) == \
                p.substitute_power(s) * q.substitute_power(s)
            count += 1


class TestModulusQuotient:
    def test_quotient_by_one_plus_x(self):
        assert modulus_quotient(CyclicPoly.parse(5, "1+x")) == \
            CyclicPoly.all_ones(5).mask

    def test_quotient_by_one(self):
        assert modulus_quotient(CyclicPoly.one(6)) == (1 << 6) | 1

    def test_remultiplies_exactly(self):
        f = CyclicPoly.parse(27, "1+x+x^2")
        h = modulus_quotient(f)
        assert f2_mul(f.mask, h) == (1 << 27) | 1

    def test_not_a_divisor(self):
        with pytest.raises(NotADivisorError):
            modulus_quotient(CyclicPoly.parse(5, "1+x+x^2+x^3"))
        with pytest.raises(NotADivisorError):
            modulus_quotient(CyclicPoly.zero(5))


class TestTextForms:
    def test_parse_monomials(self):
        p = CyclicPoly.parse(20, "1 + x^3 + x^17")
        assert p.support() == (0, 3, 17)
        assert p.to_string() == "1+x^3+x^17"

    def test_parse_bitstring(self):
        p = CyclicPoly.parse(5, "10010")
        assert p == CyclicPoly.parse(5, "1+x^3")
        assert p.to_bitstring() == "10010"

    def test_roundtrip(self):
        rng = random.Random(11)
        for _ in range(100):
            p = rand_poly(rng.randint(1, 40), rng)
            assert CyclicPoly.parse(p.n, p.to_string()) == p
            assert CyclicPoly.parse(p.n, p.to_bitstring()) == p

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            CyclicPoly.parse(5, "1+y^2")

    def test_zero_and_degree(self):
        z = CyclicPoly.zero(6)
        assert z.weight == 0 and z.degree is None
        assert CyclicPoly.parse(6, "x^4").degree == 4
        assert f2_to_string(0) == "0"

    def test_progression(self):
        p = CyclicPoly.progression(13, 2, 5, 3)
        assert p.support() == (2, 7, 12)
