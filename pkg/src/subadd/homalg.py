"""Hom spaces, endomorphism rings, Ext and Tate Ext over kE, and chi_M."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exactla import Matrix
from .modrep import (
    Module, ModuleError, decompose, free_module, hom_dim_presented, intertwiners,
    omega, quotient,
)

__all__ = [
    "HomSpace", "EndRing", "ShortExactSeq", "SequenceError",
    "hom_basis", "hom_dim", "phom_dim", "phom_dim_via_cover", "stable_hom_dim", "ext_dim", "tate_ext_dim",
    "end_simple_dim", "chi_module", "ModuleChi", "realize_extension", "bcr_gap_check",
    "split_sequence", "cover_sequence",
]


class SequenceError(ValueError):
    pass


@dataclass
class HomSpace:
    source: Module
    target: Module
    basis: np.ndarray          # (k, dim target, dim source)

    @property
    def dim(self):
        return len(self.basis)

    def matrices(self):
        return [Matrix(self.source.field, f) for f in self.basis]

    def element(self, coeffs):
        F = self.source.field
        k = self.dim
        flat = self.basis.reshape(k, -1)
        return F.matmul(np.asarray(coeffs, dtype=np.int64).reshape(1, k), flat).reshape(
            self.target.dim, self.source.dim)


def hom_basis(X: Module, M: Module, method: str = "auto") -> HomSpace:
    return HomSpace(X, M, intertwiners(X, M, method))


def hom_dim(X: Module, M: Module) -> int:
    return hom_dim_presented(X, M)


@dataclass
class EndRing:
    module: Module

    @cached_property
    def basis(self):
        return self.module._end_algebra.basis

    @cached_property
    def structure_constants(self):
        """c[i, j] = coordinates of basis[i] @ basis[j]."""
        A = self.module._end_algebra
        m = A.m
        prods = A._products(A.basis, A.basis)
        return A.coords(prods).reshape(m, m, m)

    @property
    def info(self):
        return self.module._end_info


def end_simple_dim(M: Module) -> int:
    """dim_k End(M)/rad End(M) for M with local endomorphism ring."""
    info = M._end_info
    if M.dim == 0 or not info.is_local:
        raise ModuleError("End(M) is not local; decompose M first")
    return info.simple_dim


# --- stable category --------------------------------------------------------------

def phom_dim(X: Module, M: Module) -> int:
    """Dimension of the maps X -> M factoring through a projective.

    These are the composites of Hom(X, P(M)) with the projective cover of M.
    Hom(X, kE) is parametrised by X^* (phi -> sum_g phi(g^-1 x) g), so the
    image is spanned by the relative traces of m_j phi_l over generators m_j
    of M and a basis phi_l of X^*.
    """
    F = X.field
    if X.dim == 0 or M.dim == 0:
        return 0
    G, _ = M._cover
    t = G.shape[1]
    pr = X.group.order
    U = F.matmul(M.group_mats.reshape(pr * M.dim, M.dim), G).reshape(pr, M.dim, t)
    W = X.group_mats_inv
    T = np.zeros((t * X.dim, M.dim * X.dim), dtype=np.int64)
    for g in range(pr):
        T = F.add(T, F.kron(U[g].T, W[g]))
    return F.rank(T)


def phom_dim_via_cover(X: Module, M: Module) -> int:
    """Same quantity computed by composing an explicit Hom(X, P(M)) basis with the cover."""
    F = X.field
    if X.dim == 0 or M.dim == 0:
        return 0
    G, C = M._cover
    P = free_module(M.group, M.field, G.shape[1])
    H = intertwiners(X, P)
    if len(H) == 0:
        return 0
    comp = np.stack([F.matmul(C, h) for h in H]).reshape(len(H), -1)
    return F.rank(comp)


def stable_hom_dim(X: Module, M: Module) -> int:
    return hom_dim(X, M) - phom_dim(X, M)


def ext_dim(n: int, X: Module, M: Module, method: str = "les") -> int:
    """dim Ext^n(X, M), n >= 1.

    "syzygy": stable Hom out of Omega^n X.  "les": from the exact sequence
    0 -> Hom(Omega^(n-1) X, M) -> Hom(P_(n-1), M) -> Hom(Omega^n X, M) -> Ext^n -> 0,
    which avoids the projective-factor computation.
    """
    if n < 1:
        raise ValueError("ext_dim needs n >= 1")
    if method == "syzygy":
        return stable_hom_dim(omega(X, n), M)
    prev = omega(X, n - 1) if n > 1 else X
    cur = omega(X, n)
    return hom_dim(cur, M) - prev.top_dim * M.dim + hom_dim(prev, M)


def tate_ext_dim(n: int, X: Module, M: Module, method: str = "fast") -> int:
    """dim of Tate Ext^n(X, M) for any integer n.

    "syzygy" evaluates stable Hom(Omega^n X, M) directly.  "fast" uses Ext for
    n >= 1 and Tate duality dim tExt^n(X, M) = dim tExt^(-n-1)(M, X) below.
    """
    if method == "syzygy":
        return stable_hom_dim(omega(X, n), M)
    if n >= 1:
        return ext_dim(n, X, M)
    if n == 0:
        return stable_hom_dim(X, M)
    if n == -1:
        return stable_hom_dim(M, X)
    return ext_dim(-n - 1, M, X)


# --- subadditive function of a module -------------------------------------------------

class ModuleChi:
    """chi_M(X) = length of Hom(X, M) over End(M)."""

    def __init__(self, M: Module, seed: int = 0):
        self.module = M
        self.decomposition = decompose(M, seed)
        self.parts = [(N, end_simple_dim(N)) for N, _ in self.decomposition.summands]

    def __call__(self, X: Module) -> int:
        total = 0
        for N, e in self.parts:
            h = hom_dim(X, N)
            if h % e:
                raise ArithmeticError(f"dim Hom = {h} not divisible by endolength unit {e}")
            total += h // e
        return total


def chi_module(M: Module, seed: int = 0) -> ModuleChi:
    return ModuleChi(M, seed)


# --- short exact sequences -----------------------------------------------------------

@dataclass
class ShortExactSeq:
    X: Module
    Y: Module
    Z: Module
    inj: np.ndarray
    surj: np.ndarray
    label: str = field(default="")

    def __post_init__(self):
        self.validate()

    def validate(self):
        F = self.Y.field
        X, Y, Z = self.X, self.Y, self.Z
        if self.inj.shape != (Y.dim, X.dim) or self.surj.shape != (Z.dim, Y.dim):
            raise SequenceError("map shapes do not match the modules")
        if Y.dim != X.dim + Z.dim:
            raise SequenceError("dimensions are not additive")
        if X.dim and F.rank(self.inj) != X.dim:
            raise SequenceError("inj is not injective")
        if Z.dim and F.rank(self.surj) != Z.dim:
            raise SequenceError("surj is not surjective")
        if X.dim and Z.dim and F.matmul(self.surj, self.inj).any():
            raise SequenceError("surj o inj != 0")
        for A, B, C in zip(X.actions, Y.actions, Z.actions):
            if not np.array_equal(F.matmul(self.inj, A), F.matmul(B, self.inj)):
                raise SequenceError("inj is not a module map")
            if not np.array_equal(F.matmul(self.surj, B), F.matmul(C, self.surj)):
                raise SequenceError("surj is not a module map")

    def to_json(self):
        F = self.Y.field
        return {
            "X": self.X.to_json(), "Y": self.Y.to_json(), "Z": self.Z.to_json(),
            "inj": Matrix(F, self.inj).to_json(), "surj": Matrix(F, self.surj).to_json(),
            "label": self.label,
        }

    @classmethod
    def from_json(cls, d):
        X, Y, Z = (Module.from_json(d[k]) for k in ("X", "Y", "Z"))
        inj = Matrix.from_json(Y.field, d["inj"]).a
        surj = Matrix.from_json(Y.field, d["surj"]).a
        return cls(X, Y, Z, np.array(inj), np.array(surj), d.get("label", ""))


def cover_sequence(Z: Module) -> ShortExactSeq:
    """0 -> Omega Z -> P(Z) -> Z -> 0."""
    om, incl = Z._syzygy
    _, C = Z._cover
    P = free_module(Z.group, Z.field, Z.top_dim)
    return ShortExactSeq(om, P, Z, incl, C, "cover")


def split_sequence(X: Module, Z: Module) -> ShortExactSeq:
    from .modrep import oplus
    F = X.field
    Y = oplus(X, Z)
    inj = np.vstack([F.eye(X.dim), F.zeros(Z.dim, X.dim)])
    surj = np.hstack([F.zeros(Z.dim, X.dim), F.eye(Z.dim)])
    return ShortExactSeq(X, Y, Z, inj, surj, "split")


def realize_extension(cls, Z: Module, M: Module) -> ShortExactSeq:
    """Pushout of 0 -> Omega Z -> P(Z) -> Z -> 0 along cls: Omega Z -> M."""
    from .modrep import oplus
    F = Z.field
    om, incl = Z._syzygy
    _, C = Z._cover
    cls = np.asarray(cls.a if isinstance(cls, Matrix) else cls, dtype=np.int64).reshape(M.dim, om.dim)
    for A, B in zip(om.actions, M.actions):
        if not np.array_equal(F.matmul(cls, A), F.matmul(B, cls)):
            raise SequenceError("class is not a module map Omega Z -> M")
    P = free_module(Z.group, Z.field, Z.top_dim)
    MP = oplus(M, P)
    S = np.vstack([cls, F.neg(incl)])
    Y, proj = quotient(MP, S)
    inj = proj[:, : M.dim]
    # surj is induced by (0 | C) on M + P
    surj = F.solve_many(proj.T, np.hstack([F.zeros(Z.dim, M.dim), C]).T).T
    Y = Y.with_provenance(f"ext({M.provenance}<-{Z.provenance})")
    return ShortExactSeq(M, Y, Z, inj, surj, "pushout")


# --- periodicity gap checker ---------------------------------------------------------

def bcr_gap_check(X: Module, M: Module, r_gap: int, window=(-6, 8), method: str = "fast"):
    """If Tate Ext vanishes in r_gap consecutive degrees of the window, it must vanish on all of it."""
    if r_gap < 1:
        raise ValueError("r_gap must be >= 1")
    lo, hi = window
    dims = [(n, tate_ext_dim(n, X, M, method)) for n in range(lo, hi + 1)]
    run = best = 0
    for _, d in dims:
        run = run + 1 if d == 0 else 0
        best = max(best, run)
    triggered = best >= r_gap
    violations = [n for n, d in dims if d] if triggered else []
    return {
        "triggered": triggered,
        "violations": violations,
        "dims": [{"n": n, "dim": d} for n, d in dims],
        "r_gap": r_gap,
        "window": [lo, hi],
    }
