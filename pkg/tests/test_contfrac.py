"""Test continued fraction expansion, evaluation and the Riemenschneider dual."""
from math import gcd
import pytest
from pydantic import ValidationError
from plumb_lattice.contfrac import block_form, cf_eval, cf_expand, from_adjusted, parse_cf, riemenschneider_dual
from plumb_lattice.errors import FractionParseError
from plumb_lattice.schema import Fraction, NegCF


def cf(*coeffs):
    return NegCF(coeffs=coeffs)


@pytest.mark.parametrize("p,q,expected", [
    (9, 7, (2, 2, 2, 3)),
    (16, 3, (6, 2, 2)),
    (64, 23, (3, 5, 3, 2)),
    (5, 1, (5,)),
    (2, 1, (2,)),
    (4, 3, (2, 2, 2)),
])
def test_cf_expand_examples(p, q, expected):
    """Test known expansions."""
    assert cf_expand(Fraction(p=p, q=q)).coeffs == expected


@pytest.mark.parametrize("coeffs,expected", [
    ((4,), (2, 2, 2)),
    ((9,), (2,) * 8),
    ((2,) * 8, (9,)),
    ((6, 2, 2), (2, 2, 2, 2, 4)),
    ((5, 2), (2, 2, 2, 3)),
    ((2,), (2,)),
    ((2, 2), (3,)),
])
def test_riemenschneider_dual_examples(coeffs, expected):
    """Test the point rule on small continued fractions."""
    assert riemenschneider_dual(cf(*coeffs)).coeffs == expected


def test_cf_eval_examples():
    """Test evaluation of a few continued fractions."""
    assert cf_eval(cf(3, 5, 3, 2)) == Fraction(p=64, q=23)
    assert cf_eval(cf(2, 2, 2, 3)) == Fraction(p=9, q=7)
    assert cf_eval(cf(7)) == Fraction(p=7, q=1)


def test_duality_sweep():
    """Round trip, duality and the length identity for every reduced p/q with p <= 500."""
    for p in range(2, 501):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            f = Fraction(p=p, q=q)
            expansion = cf_expand(f)
            assert cf_eval(expansion) == f, f"round trip failed for {f}"
            d = riemenschneider_dual(expansion)
            assert d == cf_expand(f.orientation_reversed()), f"dual mismatch for {f}"
            assert riemenschneider_dual(d) == expansion, f"dual is not an involution at {f}"
            assert len(d) == sum(expansion.coeffs) - 2 * len(expansion) + 1, f"length identity fails for {f}"


def test_block_form_roundtrip():
    """Test splitting into runs of twos."""
    bf = block_form(cf(2, 2, 3, 2, 5))
    assert bf.twos == (2, 1, 0)
    assert bf.bigs == (3, 5)


def test_from_adjusted():
    """Test that degrees are added back, and a lone vertex is unchanged."""
    assert from_adjusted([1, 0, 0, 2]).coeffs == (2, 2, 2, 3)
    assert from_adjusted([3]).coeffs == (3,)


def test_parse_cf():
    """Test parsing of comma separated coefficients."""
    assert parse_cf("3,5,3,2").coeffs == (3, 5, 3, 2)
    assert parse_cf("[2, 2, 4]").coeffs == (2, 2, 4)
    with pytest.raises(ValidationError):
        parse_cf("3,1")


@pytest.mark.parametrize("token", ["4/2", "2/3", "abc", "5", "5/0", "-5/2"])
def test_fraction_parse_rejects(token):
    """Test that malformed or unreduced fractions are rejected."""
    with pytest.raises(FractionParseError):
        Fraction.parse(token)


def test_fraction_model_validation():
    """Test that the model validator enforces p > q > 0 and gcd 1."""
    with pytest.raises(ValidationError):
        Fraction(p=6, q=4)
    with pytest.raises(ValidationError):
        Fraction(p=3, q=3)
    assert str(Fraction.parse(" 64/23 ")) == "64/23"
