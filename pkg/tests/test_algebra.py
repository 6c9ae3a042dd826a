import random
from fractions import Fraction

import pytest

from looptrans.algebra import (
    RatMatrix,
    SignedPerm,
    SizeMismatchError,
    compose,
    conjugate_by_diagonal,
    int_det,
    inverse,
    kronecker,
    shuffle_perm,
    trace,
)

from conftest import random_signed_perm

SQUARE_STRAIGHT = SignedPerm((1, 2), (-1, 1))
SQUARE_ZIGZAG = SignedPerm((2, 1), (1, 1))


def test_signed_perm_rejects_non_permutation():
    with pytest.raises(ValueError):
        SignedPerm((1, 1), (1, 1))
    with pytest.raises(ValueError):
        SignedPerm((1, 2), (1, 0))


def test_compose_identity():
    rng = random.Random(1)
    for n in (1, 2, 5, 9):
        p = random_signed_perm(rng, n)
        ident = SignedPerm.identity(n)
        assert compose(ident, p) == p
        assert compose(p, ident) == p


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatchError):
        compose(SignedPerm.identity(2), SignedPerm.identity(3))


def test_adjacency_matrices_are_self_inverse(gww):
    for g in gww.graphs:
        for c in (1, 2, 3):
            assert compose(g.color(c), g.color(c)).is_identity()


def test_compose_two_vertex_example():
    # zigzag composed with straight maps 1 -> 2 with +, 2 -> 1 with -
    out = compose(SQUARE_ZIGZAG, SQUARE_STRAIGHT)
    assert out.image(1) == (2, 1)
    assert out.image(2) == (1, -1)


def test_compose_matches_matrix_product():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 6)
        p = random_signed_perm(rng, n)
        q = random_signed_perm(rng, n)
        assert compose(p, q).to_matrix() == p.to_matrix() @ q.to_matrix()


def test_inverse_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        p = random_signed_perm(rng, rng.randint(1, 8))
        assert compose(p, inverse(p)).is_identity()
        assert compose(inverse(p), p).is_identity()


def test_trace_examples(gww):
    assert trace(SignedPerm.identity(7)) == 7
    g = gww.graphs[0]
    assert trace(g.color(1)) == -1  # loops 3D 6N 7D
    assert trace(g.color(3)) == 1  # loops 1N 4D 7N


def test_trace_cyclic_invariance():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(1, 7)
        p = random_signed_perm(rng, n)
        q = random_signed_perm(rng, n)
        assert trace(compose(p, q)) == trace(compose(q, p))


def test_kronecker_block_double():
    rng = random.Random(5)
    p = random_signed_perm(rng, 4)
    doubled = kronecker(SignedPerm.identity(2), p)
    assert doubled.size == 8
    for i in range(1, 5):
        t, s = p.image(i)
        assert doubled.image(i) == (t, s)
        assert doubled.image(4 + i) == (4 + t, s)


def test_kronecker_size_and_trace():
    rng = random.Random(6)
    for _ in range(40):
        p = random_signed_perm(rng, rng.randint(1, 5))
        q = random_signed_perm(rng, rng.randint(1, 5))
        k = kronecker(p, q)
        assert k.size == p.size * q.size
        assert trace(k) == trace(p) * trace(q)


def test_kronecker_matches_matrix_kron():
    rng = random.Random(7)
    p = random_signed_perm(rng, 3)
    q = random_signed_perm(rng, 2)
    assert kronecker(p, q).to_matrix() == p.to_matrix().kronecker(q.to_matrix())


def test_shuffle_conjugates_kronecker():
    rng = random.Random(8)
    for _ in range(20):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        p = random_signed_perm(rng, m)
        q = random_signed_perm(rng, n)
        s = shuffle_perm(m, n)
        assert compose(kronecker(p, q), s) == compose(s, kronecker(q, p))


def test_kronecker_associative():
    rng = random.Random(9)
    p = random_signed_perm(rng, 2)
    q = random_signed_perm(rng, 3)
    r = random_signed_perm(rng, 2)
    assert kronecker(kronecker(p, q), r) == kronecker(p, kronecker(q, r))


def test_conjugate_by_diagonal():
    rng = random.Random(10)
    p = random_signed_perm(rng, 5)
    assert conjugate_by_diagonal(p, (1,) * 5) == p
    diag = SignedPerm((1, 2), (-1, 1))
    assert conjugate_by_diagonal(diag, (-1, 1)) == diag  # diagonal entries invariant
    edge = SignedPerm((2, 1), (1, 1))
    flipped = conjugate_by_diagonal(edge, (-1, 1))
    assert flipped.image(1) == (2, -1)
    assert flipped.image(2) == (1, -1)
    with pytest.raises(SizeMismatchError):
        conjugate_by_diagonal(edge, (1,))


def test_conjugate_by_diagonal_preserves_trace():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 7)
        p = random_signed_perm(rng, n)
        signs = tuple(rng.choice((1, -1)) for _ in range(n))
        assert trace(conjugate_by_diagonal(p, signs)) == trace(p)


def test_as_action_is_faithful():
    rng = random.Random(12)
    seen = {}
    for _ in range(200):
        p = random_signed_perm(rng, 4)
        key = p.as_action()
        if key in seen:
            assert seen[key] == p
        seen[key] = p


def test_rat_matrix_basics():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert m.det() == -2
    assert m.inverse() @ m == RatMatrix.identity(2)
    assert (m @ m).entries[0][0] == 7
    half = RatMatrix.from_rows([[Fraction(1, 2)]])
    assert half.inverse().entries[0][0] == 2


def test_rat_matrix_singular():
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    assert m.det() == 0
    assert not m.is_invertible()
    with pytest.raises(ZeroDivisionError):
        m.inverse()


def test_int_det_matches_fraction_det():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert int_det(rows) == RatMatrix.from_rows(rows).det()


def test_rat_matrix_kronecker_identity():
    tee = RatMatrix.from_rows([[-1, 1], [1, 1]])
    expected = RatMatrix.from_rows(
        [[-1, 1, 0, 0], [1, 1, 0, 0], [0, 0, -1, 1], [0, 0, 1, 1]]
    )
    assert RatMatrix.identity(2).kronecker(tee) == expected
