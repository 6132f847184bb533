import random

import pytest

from crcodes.galois import FieldError, make_field, prime_factors


def brute_force_order(field, idx):
    """Multiplicative order by repeated multiplication, no pow shortcuts."""
    v = idx
    order = 1
    while v != 1:
        v = field.mul_i(v, idx)
        order += 1
        assert order <= field.order
    return order


def test_prime_field_gf2():
    f = make_field(2, 1)
    assert f.order == 2
    assert f.add_i(1, 1) == 0
    assert f.mul_i(1, 1) == 1


def test_default_gf64_modulus_is_primitive():
    f = make_field(2, 6)
    assert f.order == 64
    assert f.modulus == (1, 1, 0, 0, 0, 0, 1)  # x^6 + x + 1
    # independent check: order of x by brute-force exponentiation
    assert brute_force_order(f, f.generator.index) == 63


def test_nonprime_characteristic_rejected():
    with pytest.raises(FieldError):
        make_field(4, 1)


def test_reducible_modulus_rejected():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2)
    with pytest.raises(FieldError):
        make_field(2, 4, [1, 0, 1, 0, 1])


def test_irreducible_but_imprimitive_modulus_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
    with pytest.raises(FieldError):
        make_field(2, 4, [1, 1, 1, 1, 1])


def test_generator_order_exhaustive():
    for (p, m) in [(2, 4), (2, 6), (2, 8), (2, 10), (3, 2), (5, 1), (7, 1),
                   (3, 4)]:
        f = make_field(p, m)
        a = f.generator
        assert (a ** (f.order - 1)).index == 1
        seen = set()
        v = f.one
        for _ in range(f.order - 1):
            v = v * a
            seen.add(v.index)
        assert len(seen) == f.order - 1  # a really generates


def test_gf4_square_of_generator():
    f = make_field(2, 2)  # modulus x^2 + x + 1
    a = f.generator
    assert (a * a).index == 3  # a^2 = a + 1


def test_char2_self_addition():
    f = make_field(2, 6)
    for idx in range(0, 64, 7):
        assert f.add_i(idx, idx) == 0


@pytest.mark.parametrize("p,m", [(2, 3), (2, 6), (2, 8), (3, 2), (3, 4)])
def test_field_axioms_random(p, m):
    f = make_field(p, m)
    rng = random.Random(0xC0FFEE + p * 100 + m)
    for _ in range(200):
        a, b, c = (rng.randrange(f.order) for _ in range(3))
        assert f.mul_i(a, f.mul_i(b, c)) == f.mul_i(f.mul_i(a, b), c)
        assert f.mul_i(a, f.add_i(b, c)) == f.add_i(f.mul_i(a, b), f.mul_i(a, c))
        assert f.add_i(a, f.neg_i(a)) == 0


@pytest.mark.parametrize("p,m", [(2, 6), (2, 8), (3, 2)])
def test_inverses_exhaustive(p, m):
    f = make_field(p, m)
    for a in range(1, f.order):
        assert f.mul_i(a, f.inv_i(a)) == 1
    with pytest.raises(FieldError):
        f.inv_i(0)


def test_subfield_of_gf64():
    f = make_field(2, 6)
    a = f.generator
    sub1 = f.subfield(1)
    assert [e.index for e in sub1] == [0, 1]
    sub2 = f.subfield(2)
    expected = sorted([0, 1, (a ** 21).index, (a ** 42).index])
    assert [e.index for e in sub2] == expected
    assert len(f.subfield(6)) == 64
    with pytest.raises(FieldError):
        f.subfield(4)  # 4 does not divide 6


def test_subfield_closure_under_field_ops():
    f = make_field(2, 6)
    for d in (1, 2, 3):
        sub = {e.index for e in f.subfield(d)}
        for x in sub:
            for y in sub:
                assert f.add_i(x, y) in sub
                assert f.mul_i(x, y) in sub
            if x:
                assert f.inv_i(x) in sub


def test_as_vector_basics():
    f = make_field(2, 6)
    a = f.generator
    assert f.as_vector(f.zero) == (0,) * 6
    assert f.as_vector(f.one) == (1, 0, 0, 0, 0, 0)
    # x^6 = x + 1 under the default modulus
    assert f.as_vector(a ** 6) == (1, 1, 0, 0, 0, 0)


def test_as_vector_linear_and_bijective():
    f = make_field(2, 6)
    seen = set()
    for idx in range(64):
        vec = f.as_vector(f.element(idx))
        seen.add(vec)
        assert f.from_vector(vec).index == idx
        other = (idx * 37 + 5) % 64
        sum_vec = f.as_vector(f.element(f.add_i(idx, other)))
        direct = tuple((x + y) % 2 for x, y in
                       zip(vec, f.as_vector(f.element(other))))
        assert sum_vec == direct
    assert len(seen) == 64


@pytest.mark.parametrize("d", [1, 2, 3])
def test_subfield_coords_reconstruct(d):
    f = make_field(2, 6)
    x = f.generator
    n = 6 // d
    for idx in range(64):
        elem = f.element(idx)
        coords = f.subfield_coords(elem, d)
        assert len(coords) == n
        sub = {e.index for e in f.subfield(d)}
        assert all(c.index in sub for c in coords)
        acc = f.zero
        for i, c in enumerate(coords):
            acc = acc + c * (x ** i if i else f.one)
        assert acc == elem


def test_subfield_coords_linear_over_subfield():
    f = make_field(2, 6)
    rng = random.Random(7)
    sub = f.subfield(2)
    for _ in range(100):
        u = f.element(rng.randrange(64))
        v = f.element(rng.randrange(64))
        alpha = sub[rng.randrange(len(sub))]
        left = f.subfield_coords(alpha * u + v, 2)
        right = tuple(alpha * cu + cv for cu, cv in
                      zip(f.subfield_coords(u, 2), f.subfield_coords(v, 2)))
        assert left == right


def test_element_operators_and_field_mismatch():
    f = make_field(2, 3)
    g = make_field(2, 2)
    a, b = f.element(3), f.element(5)
    assert (a + b - b) == a
    assert (a / a).index == 1
    assert (a ** -1) * a == f.one
    with pytest.raises(FieldError):
        _ = a + g.element(1)


def test_prime_factors():
    assert prime_factors(63) == [3, 7]
    assert prime_factors(64) == [2]
    assert prime_factors(255) == [3, 5, 17]
