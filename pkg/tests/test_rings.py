import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digsys import Fp, FpPoly, GaussianInt, ParseError, Z, ZI

F2 = Fp(2)
F3 = Fp(3)
NEG_INF = float("-inf")


def fp(ring, *coeffs):
    return FpPoly.make(ring.p, coeffs)


class TestArithmetic:
    def test_integers(self):
        assert Z.add(2, 3) == 5
        assert Z.sub(2, 3) == -1
        assert Z.mul(-4, 3) == -12
        assert Z.neg(7) == -7

    def test_gaussian_norm_identity(self):
        assert ZI.mul(GaussianInt(1, 1), GaussianInt(1, -1)) == GaussianInt(2, 0)

    def test_characteristic_two(self):
        a = fp(F2, 1, 1)  # y + 1
        assert F2.add(a, a) == F2.zero

    def test_coerce(self):
        assert ZI.coerce(3) == GaussianInt(3, 0)
        assert F3.coerce(5) == fp(F3, 2)
        with pytest.raises(TypeError):
            Z.coerce("nope")


class TestExactDiv:
    def test_integer(self):
        assert Z.exact_div(-5, 5) == -1
        assert Z.exact_div(7, 2) is None
        with pytest.raises(ZeroDivisionError):
            Z.exact_div(1, 0)

    def test_gaussian(self):
        assert ZI.exact_div(GaussianInt(2, 0), GaussianInt(1, 1)) == GaussianInt(1, -1)
        assert ZI.exact_div(GaussianInt(1, 0), GaussianInt(1, 1)) is None

    def test_fp(self):
        assert F2.exact_div(fp(F2, 0, 1, 1), fp(F2, 0, 1)) == fp(F2, 1, 1)


class TestEuclidValue:
    def test_zero_is_minus_infinity(self):
        assert Z.euclid_value(0) == NEG_INF
        assert ZI.euclid_value(GaussianInt(0, 0)) == NEG_INF
        assert F2.euclid_value(F2.zero) == NEG_INF

    def test_values(self):
        assert Z.euclid_value(-5) == 5
        assert ZI.euclid_value(GaussianInt(1, 2)) == 5
        assert F2.euclid_value(fp(F2, 0, 1, 0, 1)) == 3  # y^3 + y


class TestResidues:
    def test_integers(self):
        assert Z.residues(5) == [0, 1, 2, 3, 4]
        assert Z.residues(-3) == [0, 1, 2]

    def test_gaussian_1_plus_2i(self):
        m = GaussianInt(1, 2)
        res = ZI.residues(m)
        assert len(res) == 5
        # every integer 0..4 is congruent to exactly one member
        for a in range(5):
            hits = [
                r for r in res if ZI.exact_div(GaussianInt(a, 0) - r, m) is not None
            ]
            assert len(hits) == 1

    def test_gaussian_two(self):
        # 2 = (1+i)(1-i) has non-coprime coordinates; the residue system
        # must still have norm(2) = 4 members
        res = ZI.residues(GaussianInt(2, 0))
        assert len(res) == 4

    def test_fp(self):
        res = F2.residues(fp(F2, 1, 0, 1))  # y^2 + 1
        assert res == [fp(F2), fp(F2, 1), fp(F2, 0, 1), fp(F2, 1, 1)]

    def test_pairwise_incongruent(self):
        for ring, m in [(Z, 6), (ZI, GaussianInt(1, 1)), (F3, fp(F3, 1, 1))]:
            res = ring.residues(m)
            assert len(res) == ring.quotient_size(m)
            for i, a in enumerate(res):
                for b in res[i + 1 :]:
                    assert ring.exact_div(ring.sub(a, b), m) is None

    def test_rejects_degenerate_moduli(self):
        with pytest.raises(ValueError):
            Z.residues(0)
        with pytest.raises(ValueError):
            Z.residues(-1)
        with pytest.raises(ValueError):
            ZI.residues(GaussianInt(0, 1))
        with pytest.raises(ValueError):
            F3.residues(fp(F3, 2))


class TestCanonicalResidue:
    def test_examples(self):
        assert Z.canonical_residue(-1, 5) == (4, -1)
        assert Z.canonical_residue(7, 2) == (1, 3)

    def test_fp_example(self):
        # y * (y^2+1) = y^3+y, so the remainder is 0 and the quotient y
        a = fp(F2, 0, 1, 0, 1)
        m = fp(F2, 1, 0, 1)
        r, q = F2.canonical_residue(a, m)
        assert r == F2.zero and q == fp(F2, 0, 1)
        assert q * m + r == a

    def test_gaussian_tie_rounds_down(self):
        # 1+i over 2 sits exactly on a half-integer point in both
        # coordinates; ties go toward -infinity, so the quotient is 0
        r, q = ZI.canonical_residue(GaussianInt(1, 1), GaussianInt(2, 0))
        assert q == GaussianInt(0, 0) and r == GaussianInt(1, 1)


class TestParseFormat:
    def test_examples(self):
        assert ZI.parse("3+2i") == GaussianInt(3, 2)
        assert F2.parse("y^3+y") == fp(F2, 0, 1, 0, 1)
        assert Z.parse("-1") == -1

    def test_gaussian_forms(self):
        assert ZI.parse("i") == GaussianInt(0, 1)
        assert ZI.parse("-i") == GaussianInt(0, -1)
        assert ZI.parse("2i") == GaussianInt(0, 2)
        assert ZI.parse("3-i") == GaussianInt(3, -1)
        assert ZI.parse(" -4 + 2i ") == GaussianInt(-4, 2)

    def test_fp_forms(self):
        assert F3.parse("2*y^2+1") == fp(F3, 1, 0, 2)
        assert F3.parse("2y^2+1") == fp(F3, 1, 0, 2)
        assert F2.parse("y - 1") == fp(F2, 1, 1)

    def test_errors_carry_position(self):
        with pytest.raises(ParseError) as exc:
            Z.parse("12a")
        assert exc.value.pos == 2
        with pytest.raises(ParseError):
            ZI.parse("3+")
        with pytest.raises(ParseError) as exc:
            F3.parse("4y")
        assert "out of range" in str(exc.value)

    def test_roundtrip(self):
        rng = random.Random(7)
        for _ in range(200):
            a = rng.randint(-10**6, 10**6)
            assert Z.parse(Z.format(a)) == a
            g = GaussianInt(rng.randint(-99, 99), rng.randint(-99, 99))
            assert ZI.parse(ZI.format(g)) == g
            f = FpPoly.make(3, [rng.randrange(3) for _ in range(rng.randint(0, 6))])
            assert F3.parse(F3.format(f)) == f


gaussians = st.builds(GaussianInt, st.integers(-50, 50), st.integers(-50, 50))
f3_polys = st.builds(
    lambda cs: FpPoly.make(3, cs), st.lists(st.integers(0, 2), max_size=5)
)


class TestProperties:
    @given(st.integers(-100, 100), st.integers(-20, 20).filter(bool))
    def test_int_division_with_remainder(self, a, m):
        r, q = Z.canonical_residue(a, m) if abs(m) > 1 else (None, None)
        if r is None:
            return
        assert a == r + q * m
        assert r in Z.residues(m)

    @given(gaussians, gaussians.filter(lambda g: g.norm() > 1))
    def test_gaussian_division_with_remainder(self, a, m):
        r, q = ZI.canonical_residue(a, m)
        assert a == r + q * m
        # idempotent: r is its own canonical residue
        assert ZI.canonical_residue(r, m)[0] == r

    @given(f3_polys, f3_polys.filter(lambda f: f.degree >= 1))
    def test_fp_division_with_remainder(self, a, m):
        r, q = F3.canonical_residue(a, m)
        assert q * m + r == a
        assert r.degree < m.degree

    @given(st.integers(-100, 100), st.integers(-100, 100).filter(bool))
    def test_exact_div_recovers_factor_int(self, a, b):
        assert Z.exact_div(a * b, b) == a

    @given(gaussians, gaussians.filter(bool))
    def test_exact_div_recovers_factor_gaussian(self, a, b):
        assert ZI.exact_div(a * b, b) == a

    @given(f3_polys, f3_polys.filter(bool))
    def test_exact_div_recovers_factor_fp(self, a, b):
        assert F3.exact_div(a * b, b) == a

    @given(gaussians.filter(bool), gaussians.filter(bool))
    def test_value_grows_under_multiplication(self, a, b):
        assert ZI.euclid_value(a * b) >= ZI.euclid_value(b)

    @given(f3_polys.filter(bool), f3_polys.filter(bool))
    def test_value_grows_under_multiplication_fp(self, a, b):
        assert F3.euclid_value(a * b) >= F3.euclid_value(b)
