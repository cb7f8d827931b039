import pytest

from gfcanon import FieldElem, PrimeField
from gfcanon.errors import FieldMismatchError, NotPrimeError, ZeroInverseError


def test_rejects_composite_and_small():
    for bad in (-1, 0, 1, 4, 6, 9, 91, 2**10):
        with pytest.raises(NotPrimeError):
            PrimeField(bad)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 31, 97])
def test_inverse_exhaustive(p):
    fld = PrimeField(p)
    for a in range(1, p):
        assert fld.mul(a, fld.inv(a)) == 1
    with pytest.raises(ZeroInverseError):
        fld.inv(0)


def test_arithmetic_wraps():
    f7 = PrimeField(7)
    assert f7.add(5, 4) == 2
    assert f7.sub(2, 5) == 4
    assert f7.mul(3, 5) == 1
    assert f7.neg(0) == 0
    assert f7.pow(3, 6) == 1
    assert f7.div(1, 3) == 5


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 101])
def test_generator_has_full_order(p):
    fld = PrimeField(p)
    g = fld.generator()
    seen = set()
    x = 1
    for _ in range(p - 1):
        x = fld.mul(x, g)
        seen.add(x)
    assert len(seen) == p - 1


def test_element_operators():
    f5 = PrimeField(5)
    a, b = f5(3), f5(4)
    assert int(a + b) == 2
    assert int(a - b) == 4
    assert int(a * b) == 2
    assert int(-a) == 2
    assert int(a / b) == int(a * b.inverse())
    assert a == 3 and a != 4
    assert isinstance(a, FieldElem)
    assert f5(8) == f5(3)  # canonicalized mod p


def test_fields_do_not_mix():
    f5, f7 = PrimeField(5), PrimeField(7)
    assert f5 == PrimeField(5)
    assert f5 != f7
    with pytest.raises(FieldMismatchError):
        f5.require_same(f7)
    with pytest.raises(FieldMismatchError):
        f5(1) + f7(1)
