import itertools

import pytest

from srcpolar import DomainError, FieldSpec


def test_xor_self_inverse():
    f = FieldSpec.binary()
    assert f.add(1, 1) == 0


def test_mod3_addition():
    f = FieldSpec.prime(3)
    assert f.add(2, 2) == 1


def test_gf4_addition_is_xor():
    f = FieldSpec.gf4()
    assert f.add(2, 2) == 0
    assert f.add(1, 2) == 3


def test_neg_examples():
    assert FieldSpec.prime(3).neg(1) == 2
    assert FieldSpec.binary().neg(1) == 1
    assert FieldSpec.gf4().neg(3) == 3  # characteristic 2


def test_out_of_range_symbols_rejected():
    f = FieldSpec.prime(3)
    with pytest.raises(DomainError):
        f.add(3, 0)
    with pytest.raises(DomainError):
        f.add(0, -1)
    with pytest.raises(DomainError):
        f.neg(5)


def test_non_prime_rejected():
    for q in [0, 1, 4, 6, 9]:
        with pytest.raises(DomainError):
            FieldSpec.prime(q)
    FieldSpec.prime(2)
    FieldSpec.prime(7)


@pytest.mark.parametrize(
    "field",
    [FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5), FieldSpec.prime(7), FieldSpec.gf4()],
    ids=lambda f: f"{f.kind}{f.q}",
)
def test_group_axioms_exhaustive(field):
    q = field.q
    for a in range(q):
        assert field.add(a, field.neg(a)) == 0
        for b in range(q):
            assert field.add(a, b) == field.add(b, a)
            for c in range(q):
                assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))


def test_gf4_subfield_02_closed():
    f = FieldSpec.gf4()
    for a, b in itertools.product([0, 2], repeat=2):
        assert f.add(a, b) in (0, 2)


def test_alphabet_dispatch():
    assert FieldSpec.for_alphabet(4).kind == "gf4"
    assert FieldSpec.for_alphabet(5).kind == "prime"
    with pytest.raises(DomainError):
        FieldSpec.for_alphabet(6)
