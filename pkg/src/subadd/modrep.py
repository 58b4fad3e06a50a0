"""Representations of kE, E = (Z/p)^r, as commuting nilpotent matrices.

A module stores the action of x_i = g_i - 1 for each generator g_i of E.  The
regular module kE has the monomial basis x^a, a in [0, p)^r, in
``itertools.product`` order; a free module of rank t is t copies of it, with
basis index ``j * p^r + index(a)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import MatrixAlgebra, span_basis
from .exactla import Field, FieldError, Matrix, block_diag, embedding, is_prime
from .serialize import canonical_dumps, digest

__all__ = [
    "GroupDesc", "Module", "Decomposition", "ModuleError",
    "module_make", "trivial_module", "free_module", "oplus", "tensor", "dual",
    "base_change", "restrict_scalars", "radical", "socle", "top",
    "projective_cover", "omega", "is_projective", "decompose", "is_isomorphic",
    "is_indecomposable", "submodule", "quotient", "random_module", "random_modules",
    "intertwiners",
]


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class GroupDesc:
    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ModuleError(f"{self.p} is not prime")
        if self.r < 1:
            raise ModuleError("rank r must be >= 1")

    @property
    def order(self):
        return self.p ** self.r

    @cached_property
    def monomials(self):
        return tuple(itertools.product(range(self.p), repeat=self.r))

    def to_json(self):
        return {"p": self.p, "r": self.r}


class Module:
    """A finite-dimensional kE-module given by the actions of x_1..x_r."""

    def __init__(self, group: GroupDesc, field: Field, dim: int, actions, provenance: str = "",
                 check: bool = True):
        if field.p != group.p:
            raise ModuleError(f"field characteristic {field.p} differs from p = {group.p}")
        mats = []
        for X in actions:
            a = X.a if isinstance(X, Matrix) else np.asarray(X, dtype=np.int64)
            if isinstance(X, Matrix) and X.field != field:
                raise FieldError("action matrix over the wrong field")
            a = np.array(a, dtype=np.int64).reshape(dim, dim)
            a.setflags(write=False)
            mats.append(a)
        if len(mats) != group.r:
            raise ModuleError(f"expected {group.r} action matrices, got {len(mats)}")
        self.group = group
        self.field = field
        self.dim = int(dim)
        self.actions = tuple(mats)
        self.provenance = provenance
        if check:
            self._validate()

    def _validate(self):
        F = self.field
        for i, X in enumerate(self.actions):
            if F.mat_pow(X, self.group.p).any():
                raise ModuleError(f"x_{i + 1} does not satisfy x^p = 0")
        for i, j in itertools.combinations(range(self.group.r), 2):
            A, B = self.actions[i], self.actions[j]
            if not np.array_equal(F.matmul(A, B), F.matmul(B, A)):
                raise ModuleError(f"x_{i + 1} and x_{j + 1} do not commute")

    def __repr__(self):
        tag = f" {self.provenance}" if self.provenance else ""
        return f"<Module dim={self.dim} over {self.field!r} p={self.group.p} r={self.group.r}{tag}>"

    # serialisation --------------------------------------------------------
    def to_json(self, provenance=True):
        d = {
            "group": self.group.to_json(),
            "field": self.field.to_json(),
            "dim": self.dim,
            "actions": [Matrix(self.field, X).to_json() for X in self.actions],
        }
        if provenance:
            d["provenance"] = self.provenance
        return d

    @classmethod
    def from_json(cls, d):
        field = Field.from_json(d["field"])
        group = GroupDesc(d["group"]["p"], d["group"]["r"])
        acts = [Matrix.from_json(field, m) for m in d["actions"]]
        return cls(group, field, d["dim"], acts, d.get("provenance", ""))

    @cached_property
    def fingerprint(self) -> str:
        return digest(self.to_json(provenance=False))

    @cached_property
    def canonical_bytes(self) -> bytes:
        return canonical_dumps(self.to_json(provenance=False)).encode()

    def with_provenance(self, provenance):
        return Module(self.group, self.field, self.dim, self.actions, provenance, check=False)

    # cached structure -------------------------------------------------------
    @cached_property
    def monomial_mats(self):
        """x^a acting on the module, stacked in monomial order: shape (p^r, dim, dim)."""
        F = self.field
        powers = []
        for X in self.actions:
            pw = [F.eye(self.dim)]
            for _ in range(self.group.p - 1):
                pw.append(F.matmul(pw[-1], X))
            powers.append(pw)
        out = np.zeros((self.group.order, self.dim, self.dim), dtype=np.int64)
        for idx, a in enumerate(self.group.monomials):
            m = F.eye(self.dim)
            for i, ai in enumerate(a):
                if ai:
                    m = F.matmul(m, powers[i][ai])
            out[idx] = m
        return out

    def _group_mats(self, inverse=False):
        F, p = self.field, self.group.p
        units = []
        for X in self.actions:
            g = F.add(F.eye(self.dim), X)
            pw = [F.eye(self.dim)]
            for _ in range(p - 1):
                pw.append(F.matmul(pw[-1], g))
            units.append(pw)
        out = np.zeros((self.group.order, self.dim, self.dim), dtype=np.int64)
        for idx, b in enumerate(self.group.monomials):
            m = F.eye(self.dim)
            for i, bi in enumerate(b):
                e = (-bi) % p if inverse else bi
                if e:
                    m = F.matmul(m, units[i][e])
            out[idx] = m
        return out

    @cached_property
    def group_mats(self):
        """rho(g) for g = prod g_i^{b_i}, b in monomial order."""
        return self._group_mats()

    @cached_property
    def group_mats_inv(self):
        return self._group_mats(inverse=True)

    @cached_property
    def radical_basis(self):
        """Columns spanning rad M = sum of the images of the x_i."""
        F = self.field
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        stacked = np.hstack(self.actions)
        return span_basis(F, stacked.T).T

    @cached_property
    def socle_basis(self):
        F = self.field
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return F.kernel(np.vstack(self.actions)).T

    @cached_property
    def top_dim(self):
        return self.dim - self.radical_basis.shape[1]

    @cached_property
    def _cover(self):
        """(generators G: dim x t, cover matrix C: dim x t*p^r)."""
        F = self.field
        R = self.radical_basis
        if R.shape[1]:
            _, piv = F.rref(R.T)
        else:
            piv = []
        gens = [j for j in range(self.dim) if j not in set(piv)]
        G = F.eye(self.dim)[:, gens]
        t = len(gens)
        pr = self.group.order
        # column j*p^r + a is x^a v_j
        C = F.matmul(self.monomial_mats.reshape(pr * self.dim, self.dim), G)
        C = C.reshape(pr, self.dim, t).transpose(1, 2, 0).reshape(self.dim, t * pr)
        return G, C

    @cached_property
    def _section(self):
        """S with C @ S = identity, supported on the pivot columns of C."""
        F = self.field
        _, C = self._cover
        if self.dim == 0:
            return np.zeros((C.shape[1], 0), dtype=np.int64)
        _, piv = F.rref(C)
        S = np.zeros((C.shape[1], self.dim), dtype=np.int64)
        S[piv, :] = F.inverse(C[:, piv])
        return S

    @cached_property
    def _syzygy(self):
        """(Omega M, inclusion into the cover's free module as a dP x dOmega matrix)."""
        F = self.field
        G, C = self._cover
        t = G.shape[1]
        P = free_module(self.group, self.field, t)
        if C.shape[1] == 0:
            K, free = np.zeros((0, 0), dtype=np.int64), []
        else:
            K, free = F.kernel_free(C)
        if K.shape[0] == 0:
            om = Module(self.group, self.field, 0, [np.zeros((0, 0))] * self.group.r, "Omega", check=False)
            return om, np.zeros((C.shape[1], 0), dtype=np.int64)
        # kernel rows are the identity on their free columns, so coordinates are read off there
        acts = [F.matmul(X, K.T)[free, :] for X in P.actions]
        om = Module(self.group, self.field, K.shape[0], acts, _tag("Omega", self.provenance), check=False)
        return om, K.T

    @cached_property
    def _relations(self):
        """Generators of Omega M as elements of the free cover module (columns)."""
        F = self.field
        om, incl = self._syzygy
        if om.dim == 0:
            return np.zeros((incl.shape[0], 0), dtype=np.int64)
        Gom, _ = om._cover
        return F.matmul(incl, Gom)

    @cached_property
    def norm_rank(self):
        """Rank of the norm element prod x_i^(p-1); equals the number of free summands."""
        return self.field.rank(self.monomial_mats[-1]) if self.dim else 0

    @cached_property
    def _end_algebra(self):
        return MatrixAlgebra(self.field, intertwiners(self, self))

    @cached_property
    def _end_info(self):
        return self._end_algebra.analyze()

    @cached_property
    def signature(self):
        """Cheap isomorphism invariant: Loewy layer dims and Jordan types at probe points."""
        F = self.field
        layers = []
        W = F.eye(self.dim)
        while W.shape[1]:
            layers.append(W.shape[1])
            imgs = np.hstack([F.matmul(X, W) for X in self.actions])
            W = span_basis(F, imgs.T).T if imgs.size else imgs[:, :0]
        probes = [tuple(int(i == j) for j in range(self.group.r)) for i in range(self.group.r)]
        probes.append(tuple([1] * self.group.r))
        jt = []
        for lam in probes:
            U = np.zeros((self.dim, self.dim), dtype=np.int64)
            for c, X in zip(lam, self.actions):
                if c:
                    U = F.add(U, X)
            ranks = [self.dim]
            P = F.eye(self.dim)
            for _ in range(self.group.p):
                P = F.matmul(P, U)
                ranks.append(F.rank(P))
            jt.append(tuple(ranks))
        return (self.dim, tuple(layers), self.socle_basis.shape[1], tuple(jt))


def _tag(op, prov):
    return f"{op}({prov})" if prov else op


def module_make(group, field, dim, actions, provenance=""):
    return Module(group, field, dim, actions, provenance)


def _zero_actions(group, dim):
    return [np.zeros((dim, dim), dtype=np.int64) for _ in range(group.r)]


def trivial_module(group, field, dim=1):
    return Module(group, field, dim, _zero_actions(group, dim), "k" if dim == 1 else f"k^{dim}", check=False)


def _regular_actions(group):
    p, pr = group.p, group.order
    index = {a: i for i, a in enumerate(group.monomials)}
    acts = []
    for i in range(group.r):
        X = np.zeros((pr, pr), dtype=np.int64)
        for a, col in index.items():
            if a[i] + 1 < p:
                b = list(a)
                b[i] += 1
                X[index[tuple(b)], col] = 1
        acts.append(X)
    return acts


def free_module(group, field, rank=1):
    reg = _regular_actions(group)
    acts = [block_diag(*([X] * rank)) if rank else np.zeros((0, 0), dtype=np.int64) for X in reg]
    name = "kE" if rank == 1 else f"kE^{rank}"
    return Module(group, field, rank * group.order, acts, name, check=False)


def _compatible(M, N):
    if M.group != N.group:
        raise ModuleError("modules over different groups")
    if M.field != N.field:
        raise FieldError("modules over different fields")


def oplus(*mods):
    M0 = mods[0]
    for N in mods[1:]:
        _compatible(M0, N)
    acts = [block_diag(*(M.actions[i] for M in mods)) for i in range(M0.group.r)]
    prov = "(" + " + ".join(M.provenance or "?" for M in mods) + ")"
    return Module(M0.group, M0.field, sum(M.dim for M in mods), acts, prov, check=False)


def tensor(M, N):
    """Diagonal action: x_i acts as X(x)I + I(x)Y + X(x)Y."""
    _compatible(M, N)
    F = M.field
    Im, In = F.eye(M.dim), F.eye(N.dim)
    acts = []
    for X, Y in zip(M.actions, N.actions):
        a = F.add(F.kron(X, In), F.kron(Im, Y))
        acts.append(F.add(a, F.kron(X, Y)))
    return Module(M.group, F, M.dim * N.dim, acts, f"({M.provenance or '?'} x {N.provenance or '?'})",
                  check=False)


def dual(M):
    """Contragredient dual: g acts by the transpose of g^-1."""
    F = M.field
    acts = []
    for X in M.actions:
        negX = F.neg(X)
        inv = F.eye(M.dim)
        term = F.eye(M.dim)
        for _ in range(M.group.p - 1):
            term = F.matmul(term, negX)
            inv = F.add(inv, term)
        acts.append(F.sub(inv, F.eye(M.dim)).T)
    return Module(M.group, F, M.dim, acts, _tag("D", M.provenance), check=False)


def base_change(M, K: Field):
    if K == M.field:
        return M
    table = embedding(M.field, K)
    acts = [table[X] for X in M.actions]
    return Module(M.group, K, M.dim, acts, M.provenance, check=False)


def _coordinate_table(K: Field, k: Field):
    """For each code of K, its coordinates over k in the basis 1, t, ..., t^(d-1) of K."""
    d = K.n // k.n
    if k.n == 1:
        return K.digits(np.arange(K.q)), d
    emb = embedding(k, K)
    powers = [1]
    for _ in range(d - 1):
        powers.append(int(K.mul(powers[-1], K.gen.code)))
    table = np.zeros((K.q, d), dtype=np.int64)
    for coords in itertools.product(range(k.q), repeat=d):
        acc = 0
        for c, pw in zip(coords, powers):
            acc = int(K.add(acc, K.mul(emb[c], pw)))
        table[acc] = coords
    return table, d


def restrict_scalars(M, to: Field | None = None):
    """View a module over K as a module over the subfield `to` (default: the prime field)."""
    K = M.field
    k = to if to is not None else Field(K.p)
    if K.n % k.n:
        raise FieldError(f"{k!r} is not a subfield of {K!r}")
    if K == k:
        return M
    table, d = _coordinate_table(K, k)
    gen = K.gen.code
    basis_pows = [1]
    for _ in range(d - 1):
        basis_pows.append(int(K.mul(basis_pows[-1], gen)))
    # mult[code] is the d x d matrix of multiplication by that element over k
    mult = np.zeros((K.q, d, d), dtype=np.int64)
    codes = np.arange(K.q, dtype=np.int64)
    for j, pw in enumerate(basis_pows):
        mult[:, :, j] = table[K.mul(codes, pw)]
    acts = []
    for X in M.actions:
        blocks = mult[X]                       # (dim, dim, d, d)
        acts.append(blocks.transpose(0, 2, 1, 3).reshape(M.dim * d, M.dim * d))
    return Module(M.group, k, M.dim * d, acts, _tag("res", M.provenance), check=False)


def radical(M):
    return Matrix(M.field, M.radical_basis)


def socle(M):
    return Matrix(M.field, M.socle_basis)


def top(M):
    return M.top_dim


def projective_cover(M):
    G, C = M._cover
    P = free_module(M.group, M.field, G.shape[1])
    return P, Matrix(M.field, C)


def syzygy(M):
    return M._syzygy[0]


def omega(M, n: int):
    """Projective-free representative of the n-th (Heller) syzygy; n may be negative."""
    if n > 0:
        out = M
        for _ in range(n):
            out = out._syzygy[0]
        return out
    if n < 0:
        return dual(omega(dual(M), -n))
    if M.norm_rank == 0:
        return M
    return omega(omega(M, 1), -1)


def is_projective(M):
    if M.dim == 0:
        return True
    if M.dim != M.group.order * M.top_dim:
        return False
    return M._syzygy[0].dim == 0


def submodule(M, S):
    """Submodule spanned by the columns of S (must be invariant).  Returns (N, inclusion)."""
    F = M.field
    S = np.asarray(S, dtype=np.int64)
    if S.shape[1] == 0:
        return Module(M.group, F, 0, _zero_actions(M.group, 0), "0", check=False), S
    R, piv = F.rref(S.T)
    R = R[: len(piv)]
    B = R.T
    acts = [F.matmul(X, B)[piv, :] for X in M.actions]
    for X, Y in zip(M.actions, acts):
        if not np.array_equal(F.matmul(X, B), F.matmul(B, Y)):
            raise ModuleError("subspace is not a submodule")
    return Module(M.group, F, B.shape[1], acts, _tag("sub", M.provenance), check=False), B


def quotient(M, S):
    """Quotient by the submodule spanned by the columns of S.  Returns (Q, projection)."""
    F = M.field
    S = np.asarray(S, dtype=np.int64)
    if S.shape[1]:
        R, piv = F.rref(S.T)
        R = R[: len(piv)]
    else:
        R, piv = np.zeros((0, M.dim), dtype=np.int64), []
    comp = [j for j in range(M.dim) if j not in set(piv)]
    # v -> (v - R^T v[piv])[comp]
    proj = F.eye(M.dim)[comp, :]
    if len(piv):
        proj = F.sub(proj, F.matmul(R.T[comp, :], F.eye(M.dim)[piv, :]))
    acts = [F.matmul(proj, X[:, comp]) for X in M.actions]
    return Module(M.group, F, len(comp), acts, _tag("quot", M.provenance), check=False), proj


# --- homomorphisms between modules -------------------------------------------------

def _intertwiners_stacked(X, M):
    F = X.field
    dX, dM = X.dim, M.dim
    if dX == 0 or dM == 0:
        return np.zeros((0, dM, dX), dtype=np.int64)
    blocks = []
    IX, IM = F.eye(dX), F.eye(dM)
    for A, B in zip(X.actions, M.actions):
        blocks.append(F.sub(F.kron(IM, A.T), F.kron(B, IX)))
    K = F.kernel(np.vstack(blocks))
    return K.reshape(-1, dM, dX)


def _relation_matrix(X, M):
    """Linear conditions on generator images (m_1..m_t) for Hom(X, M)."""
    F = X.field
    rel = X._relations
    pr = X.group.order
    t = X.top_dim
    tp = rel.shape[1]
    c = rel.T.reshape(tp * t, pr)
    dM = M.dim
    blk = F.matmul(c, M.monomial_mats.reshape(pr, dM * dM)).reshape(tp, t, dM, dM)
    return blk.transpose(0, 2, 1, 3).reshape(tp * dM, t * dM)


def hom_dim_presented(X, M):
    _compatible(X, M)
    if X.dim == 0 or M.dim == 0:
        return 0
    t = X.top_dim
    if X._relations.shape[1] == 0:
        return t * M.dim
    return t * M.dim - X.field.rank(_relation_matrix(X, M))


def _intertwiners_presented(X, M):
    F = X.field
    dX, dM = X.dim, M.dim
    if dX == 0 or dM == 0:
        return np.zeros((0, dM, dX), dtype=np.int64)
    t = X.top_dim
    pr = X.group.order
    if X._relations.shape[1] == 0:
        Z = F.eye(t * dM)
    else:
        Z = F.kernel(_relation_matrix(X, M))
    k = Z.shape[0]
    if k == 0:
        return np.zeros((0, dM, dX), dtype=np.int64)
    Zt = Z.reshape(k, t, dM).transpose(2, 0, 1).reshape(dM, k * t)
    Phi = F.matmul(M.monomial_mats.reshape(pr * dM, dM), Zt)        # (pr, dM, k, t)
    Phi = Phi.reshape(pr, dM, k, t).transpose(2, 1, 3, 0).reshape(k * dM, t * pr)
    f = F.matmul(Phi, X._section)
    return f.reshape(k, dM, dX)


def intertwiners(X, M, method: str = "auto"):
    """Basis of Hom_kE(X, M) as an array of shape (k, dim M, dim X)."""
    _compatible(X, M)
    if method == "auto":
        method = "stacked" if X.dim * M.dim <= 144 else "presented"
    if method == "stacked":
        return _intertwiners_stacked(X, M)
    return _intertwiners_presented(X, M)


# --- Krull-Schmidt -----------------------------------------------------------------

def is_indecomposable(M):
    return M.dim > 0 and M._end_info.is_local


@dataclass
class Decomposition:
    summands: list   # [(Module, multiplicity)]

    def modules(self):
        return [M for M, _ in self.summands]

    def expanded(self):
        return [M for M, m in self.summands for _ in range(m)]

    def to_json(self):
        return {"summands": [{"module": M.to_json(), "multiplicity": m} for M, m in self.summands]}


def _split(M, rng, max_tries=400):
    if M.dim == 0:
        return []
    if M._end_info.is_local:
        return [M]
    F = M.field
    A = M._end_algebra
    d = M.dim
    for _ in range(max_tries):
        phi = A.element(rng.integers(0, F.q, size=A.m))
        phiN = F.mat_pow(phi, d)
        rk = F.rank(phiN)
        if 0 < rk < d:
            ker = F.kernel(phiN).T
            img = span_basis(F, phiN.T).T
            N1, _ = submodule(M, ker)
            N2, _ = submodule(M, img)
            return _split(N1, rng) + _split(N2, rng)
    raise ModuleError("Fitting splitting did not find a decomposition")  # pragma: no cover


def _iso_indecomposable(M, N):
    """Exact test for indecomposable M: M = N iff some g o f is a unit of End(M)."""
    if M.dim != N.dim or M.signature != N.signature:
        return False
    F = M.field
    fs = intertwiners(M, N)
    gs = intertwiners(N, M)
    if len(fs) == 0 or len(gs) == 0:
        return False
    d = M.dim
    # all g @ f
    prods = F.matmul(np.concatenate(list(gs), axis=0), np.concatenate(list(fs), axis=1))
    prods = prods.reshape(len(gs), d, len(fs), d).transpose(0, 2, 1, 3).reshape(-1, d, d)
    A = M._end_algebra
    info = M._end_info
    coords = A.coords(prods)
    R = info.radical
    base = F.rank(R) if R.shape[0] else 0
    return F.rank(np.vstack([R, coords])) > base


def _summand_key(M):
    return (M.dim, M.signature, M.canonical_bytes)


def decompose(M, seed: int = 0) -> Decomposition:
    rng = np.random.default_rng(seed)
    parts = _split(M, rng)
    classes = []   # [members]
    for part in parts:
        for members in classes:
            if _iso_indecomposable(members[0], part):
                members.append(part)
                break
        else:
            classes.append([part])
    summands = []
    for members in classes:
        rep = min(members, key=_summand_key)
        summands.append((rep, len(members)))
    summands.sort(key=lambda sm: _summand_key(sm[0]))
    return Decomposition(summands)


def same_decomposition(D1: Decomposition, D2: Decomposition) -> bool:
    if len(D1.summands) != len(D2.summands):
        return False
    used = set()
    for M, m in D1.summands:
        for j, (N, n) in enumerate(D2.summands):
            if j not in used and m == n and _iso_indecomposable(M, N):
                used.add(j)
                break
        else:
            return False
    return True


def is_isomorphic(M, N, seed: int = 0, samples: int = 32, enum_limit: int = 4096) -> bool:
    _compatible(M, N)
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    if M.signature != N.signature:
        return False
    F = M.field
    H = intertwiners(M, N)
    k = len(H)
    if k == 0:
        return False
    d = M.dim
    flat = H.reshape(k, d * d)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f = F.matmul(rng.integers(0, F.q, size=(1, k)), flat).reshape(d, d)
        if F.rank(f) == d:
            return True
    if F.q ** k <= enum_limit:
        for coeffs in itertools.product(range(F.q), repeat=k):
            f = F.matmul(np.array([coeffs], dtype=np.int64), flat).reshape(d, d)
            if F.rank(f) == d:
                return True
        return False
    return same_decomposition(decompose(M, seed), decompose(N, seed))


# --- random generation ---------------------------------------------------------------

def _cyclic_span(M, vecs):
    F = M.field
    imgs = F.matmul(M.monomial_mats.reshape(-1, M.dim), vecs)
    imgs = imgs.reshape(M.group.order, M.dim, -1).transpose(1, 0, 2).reshape(M.dim, -1)
    return span_basis(F, imgs.T).T


def _random_quotient(rng, group, field, max_dim):
    t = int(rng.integers(1, 3))
    P = free_module(group, field, t)
    rad = P.radical_basis
    for _ in range(50):
        s = int(rng.integers(1, 2 * t + 2))
        vecs = field.matmul(rad, rng.integers(0, field.q, size=(rad.shape[1], s)))
        S = _cyclic_span(P, vecs)
        Q, _ = quotient(P, S)
        if 1 <= Q.dim <= max_dim:
            return Q.with_provenance(f"quot(kE^{t},{S.shape[1]})")
    return trivial_module(group, field)


def random_module(seed, group, field, min_dim: int = 1, max_dim: int = 10):
    if min_dim < 1 or max_dim < min_dim:
        raise ModuleError("bounds must satisfy 1 <= min_dim <= max_dim")
    rng = np.random.default_rng(seed)
    recipes = ["quotient", "omega", "dual", "tensor", "sum", "omega_inv"]
    for _ in range(200):
        recipe = recipes[int(rng.integers(len(recipes)))]
        base = _random_quotient(rng, group, field, max_dim)
        if recipe == "quotient":
            M = base
        elif recipe == "omega":
            M = omega(base, 1).with_provenance(f"Omega({base.provenance})")
        elif recipe == "omega_inv":
            M = omega(base, -1).with_provenance(f"Omega^-1({base.provenance})")
        elif recipe == "dual":
            M = dual(base)
        elif recipe == "tensor":
            other = _random_quotient(rng, group, field, max(1, max_dim // max(base.dim, 1)))
            M = tensor(base, other)
        else:
            other = _random_quotient(rng, group, field, max_dim)
            M = oplus(base, other)
        if min_dim <= M.dim <= max_dim:
            return M.with_provenance(f"{recipe}:{M.provenance}")
    return trivial_module(group, field, min_dim)


def random_modules(seed, group, field, count, min_dim=1, max_dim=10):
    """Seeded family of modules; starts with kE when it fits the bounds."""
    out = []
    if min_dim <= group.order <= max_dim and count:
        out.append(free_module(group, field, 1))
    i = 0
    while len(out) < count:
        out.append(random_module([seed, i], group, field, min_dim, max_dim))
        i += 1
    return out
