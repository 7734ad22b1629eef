import random
from fractions import Fraction

import pytest

from egsplines import rings
from egsplines.rings import (
    QQ,
    ZZ,
    Congruence,
    DescriptorMismatchError,
    IncompatibleCongruencesError,
    NotDivisibleError,
    ParseError,
    RingDescriptor,
    UnsupportedRingError,
    canonical_associate,
    content_and_primitive,
    crt,
    euclidean_divmod,
    euclidean_xgcd,
    exact_div,
    format_element,
    gcd,
    gcd_many,
    is_associate,
    is_unit,
    lcm,
    lcm_many,
    parse_element,
    polynomial_ring,
    try_exact_div,
)

from conftest import QX, QXY, ZX, ZXY, qx, qxy, zxy, zz


class TestDescriptor:
    def test_kinds(self):
        assert ZZ.kind == "integers" and not ZZ.is_polynomial
        assert QQ.kind == "rationals"
        assert ZXY.is_polynomial and ZXY.variables == ("x", "y")

    def test_invalid(self):
        with pytest.raises(ValueError):
            RingDescriptor("polynomial", (), "integers")
        with pytest.raises(ValueError):
            polynomial_ring("x", "x")
        with pytest.raises(ValueError):
            polynomial_ring("2bad")
        with pytest.raises(ValueError):
            RingDescriptor("gaussian")

    def test_pid_flags(self):
        assert ZZ.is_pid and QQ.is_pid and QX.is_pid
        assert not ZX.is_pid
        assert not QXY.is_pid
        assert not ZXY.is_pid

    def test_coefficient_ring(self):
        assert ZXY.coefficient_ring() == polynomial_ring("x")
        assert ZX.coefficient_ring() == ZZ
        assert QX.coefficient_ring() == QQ
        with pytest.raises(UnsupportedRingError):
            ZZ.coefficient_ring()


class TestParseFormat:
    def test_literal_polynomial(self):
        assert zxy("x^2+y") == ZXY.variable("x") ** 2 + ZXY.variable("y")

    def test_zero(self):
        assert parse_element("0", ZZ).is_zero
        assert format_element(ZZ.zero) == "0"
        assert format_element(ZXY.zero) == "0"

    def test_negative_exponent(self):
        with pytest.raises(ParseError, match="negative exponent"):
            parse_element("x^(-1)", QX)
        with pytest.raises(ParseError, match="negative exponent"):
            parse_element("x^-1", QX)

    def test_rational_literal_rules(self):
        assert qx("3/2").value == (Fraction(3, 2),)
        with pytest.raises(ParseError, match="integer-based"):
            parse_element("3/2", ZX)
        with pytest.raises(ParseError, match="integer-based"):
            parse_element("1/2", ZZ)
        with pytest.raises(ParseError):
            parse_element("x/2", QX)  # '/' only in a rational literal

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable"):
            parse_element("z+1", ZXY)
        with pytest.raises(ParseError, match="unknown variable"):
            parse_element("x", ZZ)

    def test_no_implicit_multiplication(self):
        with pytest.raises(ParseError):
            parse_element("2x", ZX)
        with pytest.raises(ParseError):
            parse_element("x y", ZXY)

    def test_syntax_errors_carry_position(self):
        with pytest.raises(ParseError) as info:
            parse_element("x++", ZX)
        assert info.value.position >= 0
        with pytest.raises(ParseError):
            parse_element("(x+1", ZX)
        with pytest.raises(ParseError):
            parse_element("", ZX)

    def test_precedence_and_unary_minus(self):
        assert parse_element("2+3*4", ZZ) == zz(14)
        assert parse_element("-2^2", ZZ) == zz(-4)  # '-' factor, factor = 2^2
        assert parse_element("(2+3)*4", ZZ) == zz(20)
        assert zxy("-x*y") == -(ZXY.variable("x") * ZXY.variable("y"))

    def test_format_examples(self):
        assert format_element(zz(-24)) == "-24"
        assert format_element(zxy("x^2+y")) == "x^2+y"
        assert str(qx("3/2*x-1/2")) == "3/2*x-1/2"

    def test_graded_lex_term_order(self):
        assert format_element(zxy("y^2 + x*y + x^2 + y + x + 1")) == "x^2+x*y+y^2+x+y+1"

    def test_round_trip_corpus(self):
        rng = random.Random(7)
        for ring in (ZZ, QQ, ZX, QX, ZXY, QXY):
            for _ in range(60):
                element = _random_element(rng, ring)
                text = format_element(element)
                assert parse_element(text, ring) == element, (ring, text)


def _random_element(rng, ring):
    if ring.kind == "integers":
        return ring.from_int(rng.randint(-40, 40))
    if ring.kind == "rationals":
        return rings.RingElement(ring, Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
    out = ring.zero
    for _ in range(rng.randint(0, 5)):
        term = ring.from_int(rng.randint(-9, 9))
        for name in ring.variables:
            term = term * ring.variable(name) ** rng.randint(0, 3)
        out = out + term
    return out


class TestArithmetic:
    def test_add_mul(self):
        x, y = ZXY.variable("x"), ZXY.variable("y")
        assert x + y == zxy("x+y")
        assert zxy("x^3+x*y") * ZXY.one == zxy("x^3+x*y")

    def test_pow_zero(self):
        assert zxy("(x+y)^0") == ZXY.one
        assert (zxy("x+y")) ** 0 == ZXY.one
        with pytest.raises(ValueError):
            zxy("x") ** -1

    def test_descriptor_mismatch(self):
        with pytest.raises(DescriptorMismatchError):
            zz(1) + QQ.one
        with pytest.raises(DescriptorMismatchError):
            zxy("x") * qxy("x")

    def test_immutability_and_hash(self):
        a = zxy("x+y")
        with pytest.raises(AttributeError):
            a.value = ()
        assert hash(zxy("x+y")) == hash(a)
        assert len({zz(3), zz(3), zz(4)}) == 2


class TestExactDiv:
    def test_examples(self):
        assert exact_div(zxy("x^3+x*y"), zxy("x")) == zxy("x^2+y")
        with pytest.raises(NotDivisibleError):
            exact_div(zz(6), zz(4))
        a = zxy("x^2*y - 3")
        assert exact_div(a, ZXY.one) == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            exact_div(zz(1), ZZ.zero)

    def test_multiply_back_random(self):
        rng = random.Random(11)
        for ring in (ZZ, ZX, QX, ZXY, QXY):
            for _ in range(50):
                b = _random_element(rng, ring)
                if b.is_zero:
                    continue
                q = _random_element(rng, ring)
                assert exact_div(q * b, b) == q

    def test_nondivisible_polynomials(self):
        assert try_exact_div(zxy("x+y"), zxy("x")) is None
        assert try_exact_div(zxy("x^2+y^2"), zxy("x+y")) is None
        # same quotient exists over QQ coefficients but not over ZZ
        assert try_exact_div(parse_element("2*x+2", ZX), parse_element("4", ZX)) is None
        assert try_exact_div(qx("2*x+2"), qx("4")) == qx("1/2*x+1/2")


class TestGcdLcm:
    def test_integer_examples(self):
        assert gcd(zz(12), zz(18)) == zz(6)
        assert gcd(zz(-12), zz(18)) == zz(6)
        assert lcm(zz(4), zz(6)) == zz(12)
        assert gcd(zz(7), ZZ.zero) == zz(7)
        assert gcd(zz(-7), ZZ.zero) == zz(7)

    def test_polynomial_examples(self):
        assert gcd(qxy("x^2*y+x*y^2"), qxy("x*y")) == qxy("x*y")
        assert lcm(qxy("x"), qxy("x+y")) == qxy("x^2+x*y")
        assert gcd(zxy("2*x+2"), zxy("4*x+4")) == zxy("2*x+2")

    def test_normalization(self):
        # positive graded-lex lead over ZZ bases, monic over QQ bases
        assert gcd(zxy("-2*x"), zxy("-4*x")) == zxy("2*x")
        assert gcd(qx("2*x+2"), qx("4*x+4")) == qx("x+1")
        assert lcm(zz(-4), zz(6)) == zz(12)
        assert canonical_associate(qxy("2*x*y+4")) == qxy("x*y+2")

    def test_aggregates(self):
        assert gcd_many([], ZZ) == ZZ.zero
        assert lcm_many([], ZZ) == ZZ.one
        assert gcd_many([zz(12), zz(18), zz(8)]) == zz(2)
        assert lcm_many([zz(2), zz(3), zz(4)]) == zz(12)
        assert lcm(zz(0), zz(5)) == ZZ.zero
        assert lcm_many([zz(-7)], ZZ) == zz(7)

    def test_gcd_divides_both_and_is_greatest(self):
        rng = random.Random(3)
        for ring in (ZZ, ZX, QX, ZXY):
            for _ in range(40):
                d = _random_element(rng, ring)
                a = d * _random_element(rng, ring)
                b = d * _random_element(rng, ring)
                g = gcd(a, b)
                if not a.is_zero or not b.is_zero:
                    assert rings.divides(g, a) and rings.divides(g, b)
                if not d.is_zero:
                    assert rings.divides(d, g)

    def test_gcd_lcm_product_identity(self):
        rng = random.Random(5)
        for ring in (ZZ, ZX, QXY):
            for _ in range(30):
                a, b = _random_element(rng, ring), _random_element(rng, ring)
                if a.is_zero or b.is_zero:
                    continue
                assert is_associate(gcd(a, b) * lcm(a, b), a * b)


class TestUnitsAssociates:
    def test_units(self):
        assert is_unit(zz(-1)) and is_unit(zz(1)) and not is_unit(zz(2))
        assert not is_unit(ZZ.zero)
        assert is_unit(qx("3/2")) and not is_unit(qx("x"))
        assert is_unit(zxy("-1")) and not is_unit(zxy("2"))

    def test_associates(self):
        ok = rings.associate_unit(qx("2*x+2"), qx("x+1"))
        assert ok == qx("2")
        assert not is_associate(parse_element("2*x+2", ZX), parse_element("x+1", ZX))
        a = zxy("x*y-3")
        assert rings.associate_unit(a, a) == ZXY.one
        assert is_associate(ZZ.zero, ZZ.zero)
        assert not is_associate(ZZ.zero, zz(2))


class TestContent:
    def test_examples(self):
        c, p = content_and_primitive(parse_element("2*x+4", ZX))
        assert (c, p) == (zz(2), parse_element("x+2", ZX))
        # already primitive in univariate rings
        c, p = content_and_primitive(parse_element("x", ZX))
        assert c == zz(1) and p == parse_element("x", ZX)
        c, p = content_and_primitive(qx("x"))
        assert c.value == 1 and p == qx("x")
        # recursive view: (ZZ[x])[y], so the y-free part is all content
        zx_ring = ZXY.coefficient_ring()
        c, p = content_and_primitive(zxy("x^2*y^2+x^2*y"))
        assert c == parse_element("x^2", zx_ring)
        assert p == zxy("y^2+y")
        c, p = content_and_primitive(zxy("x"))
        assert c == parse_element("x", zx_ring) and p == ZXY.one

    def test_zero_and_reconstruction(self):
        c, p = content_and_primitive(ZXY.zero)
        assert c.is_zero and p.is_zero
        rng = random.Random(13)
        for ring in (ZX, QX, ZXY, QXY):
            for _ in range(40):
                element = _random_element(rng, ring)
                c, p = content_and_primitive(element)
                embedded = _embed_coefficient(c, ring)
                assert embedded * p == element

    def test_scalar_ring_rejected(self):
        with pytest.raises(UnsupportedRingError):
            content_and_primitive(zz(6))


def _embed_coefficient(c, ring):
    """View a coefficient-ring element inside the full polynomial ring."""
    raw = c.value
    return rings.RingElement(ring, (raw,) if raw else ())


class TestEuclidean:
    def test_divmod_integers(self):
        q, r = euclidean_divmod(zz(-7), zz(3))
        assert (q.value, r.value) == (-3, 2)
        q, r = euclidean_divmod(zz(7), zz(-3))
        assert q * zz(-3) + r == zz(7) and 0 <= r.value < 3

    def test_divmod_polynomials(self):
        q, r = euclidean_divmod(qx("x^3+1"), qx("x^2"))
        assert q == qx("x") and r == qx("1")

    def test_xgcd(self):
        g, s, t = euclidean_xgcd(zz(30), zz(18))
        assert g == zz(6) and s * zz(30) + t * zz(18) == g
        g, s, t = euclidean_xgcd(qx("x^2-1"), qx("x+1"))
        assert g == qx("x+1") and s * qx("x^2-1") + t * qx("x+1") == g

    def test_unsupported(self):
        with pytest.raises(UnsupportedRingError):
            euclidean_divmod(zxy("x"), zxy("y"))
        with pytest.raises(UnsupportedRingError):
            euclidean_xgcd(parse_element("x", ZX), parse_element("2", ZX))


class TestCrt:
    def test_example(self):
        x, modulus = crt([
            Congruence(zz(1), zz(4)),
            Congruence(zz(3), zz(6)),
        ])
        assert (x.value, modulus.value) == (9, 12)

    def test_single(self):
        x, modulus = crt([Congruence(ZZ.zero, zz(7))])
        assert x.is_zero and modulus == zz(7)

    def test_incompatible_names_pair(self):
        with pytest.raises(IncompatibleCongruencesError) as info:
            crt([Congruence(zz(1), zz(4)), Congruence(zz(2), zz(6))])
        assert (info.value.i, info.value.j) == (0, 1)

    def test_polynomial_system(self):
        x, modulus = crt([
            Congruence(qx("1"), qx("x")),
            Congruence(qx("2"), qx("x-1")),
        ])
        assert euclidean_divmod(x - qx("1"), qx("x"))[1].is_zero
        assert euclidean_divmod(x - qx("2"), qx("x-1"))[1].is_zero
        assert modulus == qx("x^2-x")

    def test_unsupported_rings(self):
        with pytest.raises(UnsupportedRingError):
            crt([Congruence(zxy("x"), zxy("y"))])
        zx1 = parse_element("1", ZX)
        with pytest.raises(UnsupportedRingError):
            crt([Congruence(zx1, parse_element("x", ZX))])

    def test_matches_exhaustive_search(self):
        rng = random.Random(17)
        for _ in range(200):
            count = rng.randint(1, 3)
            moduli = [rng.randint(2, 12) for _ in range(count)]
            residues = [rng.randint(0, 20) for _ in range(count)]
            product = 1
            for m in moduli:
                product *= m
            solutions = [
                x for x in range(product)
                if all((x - a) % b == 0 for a, b in zip(residues, moduli))
            ]
            congruences = [
                Congruence(zz(a), zz(b)) for a, b in zip(residues, moduli)
            ]
            if solutions:
                x, modulus = crt(congruences)
                assert x.value in solutions
                assert all((s - x.value) % modulus.value == 0 for s in solutions)
            else:
                with pytest.raises(IncompatibleCongruencesError):
                    crt(congruences)


class TestLcmGcdIdentities:
    """The four lcm/gcd identities used throughout the aggregate formulas."""

    @staticmethod
    def _tuples_zz(rng, count):
        return [zz(rng.randint(1, 60) * rng.choice((1, -1))) for _ in range(count)]

    def test_identities_integer_smoke(self):
        rng = random.Random(23)
        for _ in range(200):
            a = self._tuples_zz(rng, 3)
            b = self._tuples_zz(rng, 1)[0]
            _check_identities(a, b)

    def test_identities_rational_poly_smoke(self):
        rng = random.Random(29)
        for _ in range(25):
            a = [_nonzero(rng, QX) for _ in range(3)]
            b = _nonzero(rng, QX)
            _check_identities(a, b)


def _nonzero(rng, ring):
    while True:
        e = _random_element(rng, ring)
        if not e.is_zero:
            return e


def _check_identities(a, b):
    ring = b.descriptor
    # ([a1..an], b) = [(a1,b), .., (an,b)]
    left = gcd(lcm_many(a, ring), b)
    right = lcm_many([gcd(ai, b) for ai in a], ring)
    assert is_associate(left, right)
    # [(a1..an), b] = ([a1,b], .., [an,b])
    left = lcm(gcd_many(a, ring), b)
    right = gcd_many([lcm(ai, b) for ai in a], ring)
    assert is_associate(left, right)
    # [a1,a2,a3] = a1 a2 a3 (a1,a2,a3) / ((a1,a2)(a1,a3)(a2,a3))
    a1, a2, a3 = a[0], a[1], a[2]
    numerator = a1 * a2 * a3 * gcd_many([a1, a2, a3], ring)
    denominator = gcd(a1, a2) * gcd(a1, a3) * gcd(a2, a3)
    assert is_associate(lcm_many([a1, a2, a3], ring), exact_div(numerator, denominator))
    # (ahat_1..ahat_n) = a1..an / [a1..an]
    hats = []
    for skip in range(3):
        product = ring.one
        for idx, ai in enumerate(a):
            if idx != skip:
                product = product * ai
        hats.append(product)
    total = a1 * a2 * a3
    assert is_associate(
        gcd_many(hats, ring), exact_div(total, lcm_many(a, ring))
    )
