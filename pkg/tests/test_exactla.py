import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subadd.exactla import (
    Field, FieldError, Matrix, direct_sum, embedding, field_arith, field_embed, field_make,
    kernel_basis, kron, nilpotency_index, rref, solve,
)

from oracles import PolyField, brute_rank, is_irreducible_brute, rank_mod_p

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (3, 4)]


def test_field_make_prime_and_gf4():
    assert field_make(2, 1).q == 2
    F4 = field_make(2, 2)
    assert F4.modulus == (1, 1, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(2, 2, [1, 0, 1])


def test_non_prime_characteristic_rejected():
    with pytest.raises(FieldError):
        field_make(4, 1)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_default_modulus_is_least_irreducible(p, n):
    F = Field(p, n)
    assert is_irreducible_brute(p, F.modulus)
    code = sum(c * p ** i for i, c in enumerate(F.modulus[:-1]))
    for smaller in range(code):
        cand = [(smaller // p ** i) % p for i in range(n)] + [1]
        assert not is_irreducible_brute(p, cand)


def test_small_arithmetic_examples(F2, F4):
    one = F2.elem(1)
    assert field_arith("add", one, one) == F2.elem(0)
    t = F4.gen
    assert field_arith("mul", t, t) == F4.elem([1, 1])
    assert field_arith("inv", t) == F4.elem([1, 1])
    assert field_arith("pow", t, 3) == F4.elem(1)


def test_embedding_examples(F2, F4):
    assert field_embed(F2.elem(1), F4) == F4.elem(1)
    F3, F9 = Field(3), Field(3, 2)
    assert field_embed(F3.elem(0), F9) == F9.elem(0)
    for a, b in itertools.product(F2.elements(), repeat=2):
        assert field_embed(a + b, F4) == field_embed(a, F4) + field_embed(b, F4)


@pytest.mark.parametrize("src,dst", [((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3))])
def test_embedding_is_ring_homomorphism(src, dst):
    k, K = Field(*src), Field(*dst)
    e = embedding(k, K)
    a, b = np.meshgrid(np.arange(k.q), np.arange(k.q))
    assert np.array_equal(e[k.mul(a, b)], K.mul(e[a], e[b]))
    assert np.array_equal(e[k.add(a, b)], K.add(e[a], e[b]))


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_arithmetic_matches_polynomial_oracle(p, n):
    F = Field(p, n)
    O = PolyField(p, F.modulus)
    rng = np.random.default_rng(p * 100 + n)
    pairs = rng.integers(0, F.q, size=(200, 2))
    for a, b in pairs:
        assert int(F.mul(a, b)) == O.mul(int(a), int(b))
        assert int(F.add(a, b)) == O.add(int(a), int(b))
    for a in range(1, min(F.q, 60)):
        assert int(F.inv(a)) == O.inv(a)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, n):
    F = Field(p, n)
    q = F.q
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    nz = np.arange(1, q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(np.arange(q), F.neg(np.arange(q))) == 0)


def test_inverse_of_zero_raises(F4):
    with pytest.raises(ZeroDivisionError):
        F4.inv(0)


def test_rref_examples(F2, F4):
    _, r, piv = rref(Matrix(F2, np.eye(3, dtype=np.int64)))
    assert r == 3
    _, r, piv = rref(Matrix(F2, np.zeros((2, 5), dtype=np.int64)))
    assert r == 0 and piv == []
    t = F4.gen
    A = Matrix(F4, [[t, F4.elem(1)], [t * t, t]])
    assert rref(A)[1] == 1


def test_kernel_examples(F2):
    assert kernel_basis(Matrix(F2, np.eye(3, dtype=np.int64))).rows == 0
    assert kernel_basis(Matrix(F2, np.zeros((3, 3), dtype=np.int64))).rows == 3
    K = kernel_basis(Matrix(F2, [[1, 1]]))
    assert K.a.tolist() == [[1, 1]]


def test_solve_examples(F2):
    I = Matrix(F2, np.eye(3, dtype=np.int64))
    assert [x.code for x in solve(I, [1, 0, 1])] == [1, 0, 1]
    assert solve(Matrix(F2, np.zeros((2, 2), dtype=np.int64)), [1, 0]) is None
    assert [x.code for x in solve(Matrix(F2, [[1, 1]]), [1])] == [1, 0]


def test_kron_and_direct_sum(F2, F3):
    I2, I3 = Matrix.identity(F2, 2), Matrix.identity(F2, 3)
    assert kron(I2, I3) == Matrix.identity(F2, 6)
    A = Matrix(F2, [[1, 1], [0, 1]])
    assert direct_sum(A, Matrix(F2, np.zeros((0, 0), dtype=np.int64))) == A
    rng = np.random.default_rng(5)
    for _ in range(10):
        A = Matrix(F3, rng.integers(0, 3, size=(3, 3)))
        B = Matrix(F3, rng.integers(0, 3, size=(3, 3)))
        assert kron(A, B).rank() == A.rank() * B.rank()
        assert kron(A, B).rank() == rank_mod_p(np.kron(A.a, B.a), 3)


def test_nilpotency_index(F2):
    assert nilpotency_index(Matrix(F2, np.zeros((2, 2), dtype=np.int64))) == 1
    J = Matrix(F2, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert nilpotency_index(J) == 3
    with pytest.raises(ValueError):
        nilpotency_index(Matrix.identity(F2, 2))


def test_matrix_json_round_trip(F4):
    A = Matrix(F4, [[0, 1, 2], [3, 2, 1]])
    assert Matrix.from_json(F4, A.to_json()) == A
    assert Field.from_json(F4.to_json()) == F4


def test_large_field_uses_generic_arithmetic():
    F = Field(2, 11)
    O = PolyField(2, F.modulus)
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, F.q, size=(50, 2)):
        assert int(F.mul(a, b)) == O.mul(int(a), int(b))
    a = np.arange(1, 200)
    assert np.all(F.mul(a, F.inv(a)) == 1)


# --- properties ---------------------------------------------------------------------------

field_params = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)])


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    p, n = draw(field_params)
    F = Field(p, n)
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, F.q - 1), min_size=rows * cols, max_size=rows * cols))
    return F, np.array(entries, dtype=np.int64).reshape(rows, cols)


@given(matrices())
def test_rank_nullity(data):
    F, A = data
    assert F.rank(A) + F.kernel(A).shape[0] == A.shape[1]
    assert not F.matmul(A, F.kernel(A).T).any()


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_span_enumeration(data):
    F, A = data
    if F.q ** A.shape[1] > 3000:
        return
    assert F.rank(A) == brute_rank(F, A)


@given(matrices())
def test_rref_idempotent(data):
    F, A = data
    R, piv = F.rref(A)
    R2, piv2 = F.rref(R)
    assert np.array_equal(R, R2) and piv == piv2


@given(matrices(), st.data())
def test_solve_correct_or_inconsistent(data, extra):
    F, A = data
    b = np.array(extra.draw(st.lists(st.integers(0, F.q - 1), min_size=A.shape[0], max_size=A.shape[0])),
                 dtype=np.int64)
    x = F.solve(A, b)
    if x is None:
        assert F.rank(np.hstack([A, b[:, None]])) > F.rank(A)
    else:
        assert np.array_equal(F.matmul(A, x[:, None])[:, 0], b)


@given(matrices(max_rows=5, max_cols=5))
def test_inverse_of_square_matrices(data):
    F, A = data
    n = min(A.shape)
    S = A[:n, :n]
    if F.rank(S) < n:
        with pytest.raises(ZeroDivisionError):
            F.inverse(S)
    else:
        assert np.array_equal(F.matmul(S, F.inverse(S)), F.eye(n))
