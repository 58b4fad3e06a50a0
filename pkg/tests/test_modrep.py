import numpy as np
import pytest
from hypothesis import given, strategies as st

from subadd.exactla import Field
from subadd.homalg import hom_dim
from subadd.modrep import (
    GroupDesc, Module, ModuleError, base_change, decompose, dual, free_module, intertwiners,
    is_isomorphic, is_projective, module_make, omega, oplus, projective_cover, radical,
    random_module, random_modules, restrict_scalars, same_decomposition, socle, tensor, top,
    trivial_module,
)

from oracles import brute_intertwiners, rank_mod_p, regular_representation


@pytest.fixture(scope="module")
def k(G22, F2):
    return trivial_module(G22, F2)


@pytest.fixture(scope="module")
def kE(G22, F2):
    return free_module(G22, F2)


@pytest.fixture(scope="module")
def Om(k):
    return omega(k, 1)


def test_module_make_trivial_and_regular(G22, F2, kE):
    k = module_make(G22, F2, 1, [np.zeros((1, 1)), np.zeros((1, 1))])
    assert k.dim == 1
    _, acts = regular_representation(2, 2)
    R = module_make(G22, F2, 4, acts)
    assert is_isomorphic(R, kE)
    for A, B in zip(kE.actions, acts):
        assert np.array_equal(A, B)


def test_module_validation(G22, F2):
    J = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(ModuleError):
        module_make(G22, F2, 3, [J, np.zeros((3, 3))])
    A = np.array([[0, 1], [0, 0]])
    B = np.array([[0, 0], [1, 0]])
    with pytest.raises(ModuleError):
        module_make(G22, F2, 2, [A, B])


def test_free_module_dims(G22, F2):
    assert free_module(G22, F2, 0).dim == 0
    assert free_module(G22, F2, 1).dim == 4
    assert free_module(GroupDesc(3, 2), Field(3), 2).dim == 18


def test_tensor_unit_and_free(G22, F2, k, Om, kE):
    assert is_isomorphic(tensor(k, Om), Om)
    T = tensor(kE, Om)
    assert T.dim == 12 and is_projective(T)


def test_tensor_of_syzygies(Om, G22, F2):
    T = tensor(Om, Om)
    assert T.dim == 9
    parts = decompose(T).summands
    assert [(N.dim, m) for N, m in parts] == [(4, 1), (5, 1)]
    assert is_projective(parts[0][0])
    assert is_isomorphic(parts[1][0], omega(trivial_module(G22, F2), 2))


def test_dual(k, kE, Om):
    assert is_isomorphic(dual(k), k)
    assert is_isomorphic(dual(kE), kE)
    assert dual(Om).dim == Om.dim


def test_syzygy_not_self_dual_by_exhaustion(Om):
    D = dual(Om)
    isos = [f for f in brute_intertwiners(Om.actions, D.actions, 2) if rank_mod_p(f, 2) == 3]
    assert isos == []
    assert not is_isomorphic(Om, D)


def test_base_change(k, G22, F2, F4):
    assert base_change(k, F2) is k
    kK = base_change(k, F4)
    assert kK.field == F4 and not any(X.any() for X in kK.actions)


def test_base_change_keeps_projectivity(G22, F2, F4):
    for M in random_modules(3, G22, F2, 20, 1, 8):
        assert is_projective(M) == is_projective(base_change(M, F4))


def test_restrict_scalars(G22, F2, F4):
    M = trivial_module(G22, F2)
    assert restrict_scalars(M) is M
    R = restrict_scalars(trivial_module(G22, F4))
    assert R.dim == 2 and R.field == F2 and not any(X.any() for X in R.actions)
    assert is_isomorphic(R, trivial_module(G22, F2, 2))
    W = random_module(1, G22, F4, 2, 5)
    assert restrict_scalars(W).dim == 2 * W.dim


def test_radical_socle_top(k, kE, G22, F2):
    assert radical(k).cols == 0 and socle(k).cols == 1
    assert radical(kE).cols == 3 and socle(kE).cols == 1
    for m in (1, 2, 3):
        P = free_module(G22, F2, m)
        assert top(P) == m
        stacked = np.hstack(P.actions)
        assert top(P) == P.dim - rank_mod_p(stacked, 2)


def test_projective_cover(k, kE, G22, F2):
    P, C = projective_cover(kE)
    assert P.dim == 4 and C.rank() == 4
    P, C = projective_cover(k)
    assert P.dim == 4 and omega(k, 1).dim == 3
    Z = trivial_module(G22, F2, 0)
    P, C = projective_cover(Z)
    assert P.dim == 0


def test_omega_dims(k, kE):
    assert omega(kE, 1).dim == 0
    for n in range(1, 5):
        assert omega(k, n).dim == 2 * n + 1
        assert omega(k, -n).dim == 2 * n + 1
    assert is_isomorphic(omega(omega(k, 1), -1), k)


def test_is_projective(k, kE, Om, G22, F2):
    assert is_projective(free_module(G22, F2, 3))
    assert not is_projective(k)
    assert not is_projective(oplus(Om, kE))


def test_decompose_examples(k, kE, Om):
    D = decompose(oplus(k, k))
    assert len(D.summands) == 1 and D.summands[0][1] == 2 and is_isomorphic(D.summands[0][0], k)
    D = decompose(oplus(kE, Om))
    assert [(N.dim, m) for N, m in D.summands] == [(3, 1), (4, 1)]
    assert is_isomorphic(D.summands[0][0], Om) and is_isomorphic(D.summands[1][0], kE)


def test_decompose_independent_of_seed(corpus22):
    for M in corpus22.modules[:15]:
        assert same_decomposition(decompose(M, 0), decompose(M, 7))


def test_is_isomorphic_basic(k, kE, Om):
    assert is_isomorphic(Om, Om)
    assert not is_isomorphic(k, kE)


def test_random_module_contract(G22, F2):
    a = random_module(11, G22, F2, 2, 7)
    b = random_module(11, G22, F2, 2, 7)
    assert a.to_json() == b.to_json()
    for s in range(100):
        M = random_module(s, G22, F2, 2, 7)
        assert 2 <= M.dim <= 7
    mods = random_modules(0, G22, F2, 50)
    flags = [is_projective(M) for M in mods]
    assert any(flags) and not all(flags)


def test_module_json_round_trip(Om):
    back = Module.from_json(Om.to_json())
    assert back.to_json() == Om.to_json()


def test_intertwiners_match_enumeration(Om, k, G22, F2):
    End = intertwiners(Om, Om)
    brute = brute_intertwiners(Om.actions, Om.actions, 2)
    assert 2 ** len(End) == len(brute) == 8
    assert len(intertwiners(k, free_module(G22, F2))) == 1


@pytest.mark.parametrize("method", ["stacked", "presented"])
def test_hom_methods_agree(corpus22, method):
    mods = corpus22.modules[:12]
    for X in mods:
        for M in mods:
            assert len(intertwiners(X, M, method)) == hom_dim(X, M)


# --- invariants on corpus modules -------------------------------------------------

def test_syzygy_tensor_identity(corpus22, G22, F2):
    Om = omega(trivial_module(G22, F2), 1)
    for X in corpus22.modules:
        assert is_isomorphic(omega(tensor(X, Om), 0), omega(X, 1))


def test_tensor_commutative_associative(corpus22):
    mods = [M for M in corpus22.modules if M.dim <= 3][:5]
    for A in mods:
        for B in mods:
            assert is_isomorphic(tensor(A, B), tensor(B, A))
            for C in mods[:2]:
                assert is_isomorphic(tensor(tensor(A, B), C), tensor(A, tensor(B, C)))


def test_dual_involution_and_tensor(corpus22):
    mods = corpus22.modules[:10]
    for M in mods:
        assert is_isomorphic(dual(dual(M)), M)
    small = [M for M in mods if M.dim <= 4]
    for M in small:
        for N in small[:3]:
            assert is_isomorphic(dual(tensor(M, N)), tensor(dual(M), dual(N)))


def test_omega_composition(corpus22):
    mods = [M for M in corpus22.modules if not is_projective(M) and M.dim <= 6][:6]
    for M in mods:
        Mf = omega(M, 0)
        for m in range(-2, 3):
            for n in range(-2, 3):
                assert is_isomorphic(omega(Mf, m + n), omega(omega(Mf, m), n))


@given(st.integers(0, 10 ** 6))
def test_random_modules_satisfy_relations(seed):
    G, F = GroupDesc(2, 2), Field(2)
    M = random_module(seed, G, F, 1, 8)
    for X in M.actions:
        assert not F.mat_pow(X, 2).any()
    X, Y = M.actions
    assert np.array_equal(F.matmul(X, Y), F.matmul(Y, X))
    assert is_isomorphic(dual(dual(M)), M)


@given(st.integers(0, 10 ** 6))
def test_hom_additive_in_source(seed):
    G, F = GroupDesc(2, 2), Field(2)
    A = random_module([seed, 0], G, F, 1, 5)
    B = random_module([seed, 1], G, F, 1, 5)
    M = random_module([seed, 2], G, F, 1, 5)
    assert hom_dim(oplus(A, B), M) == hom_dim(A, M) + hom_dim(B, M)


@given(st.integers(0, 10 ** 6))
def test_p3_modules_decompose_consistently(seed):
    G, F = GroupDesc(3, 1), Field(3)
    M = random_module(seed, G, F, 1, 9)
    D = decompose(M)
    assert sum(N.dim * m for N, m in D.summands) == M.dim
    # over k[t]/t^3 indecomposables are Jordan blocks
    assert all(N.dim <= 3 for N, _ in D.summands)
