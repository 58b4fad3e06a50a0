"""Linear pi-points t -> sum lambda_i x_i of an elementary abelian p-group.

A pi-point is given by a nonzero vector lambda over an extension K of the base
field k.  Restricting a kE-module along it (after extending scalars to K) gives a
nilpotent operator U; its Jordan type decides projectivity and the value of the
block-counting function chi_alpha.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exactla import Field, FieldElem, embedding
from .modrep import GroupDesc, Module, base_change, free_module, quotient, restrict_scalars

__all__ = [
    "PiPointError", "ProjPoint", "PiPoint", "JordanType", "pipoint_make", "restrict",
    "thick_member", "chi_pipoint", "PiPointChi", "witness_module", "supp_pi",
    "point_module", "projective_points", "count_projective_points", "galois_orbit",
]


class PiPointError(ValueError):
    pass


def _normalize(K: Field, coords):
    coords = np.asarray(coords, dtype=np.int64)
    nz = np.flatnonzero(coords)
    if len(nz) == 0:
        raise PiPointError("lambda must be nonzero")
    c = int(K.inv(int(coords[nz[0]])))
    return tuple(int(v) for v in K.mul(coords, c))


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^(r-1)(K), stored with first nonzero coordinate equal to 1."""
    K: Field
    coords: tuple

    @classmethod
    def of(cls, K: Field, coords):
        return cls(K, _normalize(K, coords))

    def to_json(self):
        return [FieldElem(self.K, c).to_json() if self.K.n > 1 else c for c in self.coords]

    def __repr__(self):
        return "[" + ":".join(str(FieldElem(self.K, c)) for c in self.coords) + "]"


@dataclass(frozen=True)
class JordanType:
    """blocks[i] = number of Jordan blocks of size i + 1."""
    blocks: tuple

    @property
    def dim(self):
        return sum((i + 1) * a for i, a in enumerate(self.blocks))

    @property
    def count(self):
        return sum(self.blocks)

    @property
    def is_free(self):
        return not any(self.blocks[:-1])

    def to_json(self):
        return {"blocks": list(self.blocks)}


def _coerce(K: Field, v):
    if isinstance(v, FieldElem):
        if v.field == K:
            return v.code
        return int(embedding(v.field, K)[v.code])
    return K.elem(v).code


class PiPoint:
    def __init__(self, group: GroupDesc, K: Field, lam, base: Field | None = None):
        if K.p != group.p:
            raise PiPointError("K has the wrong characteristic")
        base = base if base is not None else Field(K.p)
        if K.n % base.n:
            raise PiPointError(f"{K!r} is not an extension of {base!r}")
        lam = tuple(_coerce(K, v) for v in lam)
        if len(lam) != group.r:
            raise PiPointError(f"lambda needs {group.r} coordinates")
        if not any(lam):
            raise PiPointError("lambda = 0 does not give a flat map")
        self.group = group
        self.K = K
        self.base = base
        self.lam = lam

    @cached_property
    def point(self) -> ProjPoint:
        return ProjPoint.of(self.K, self.lam)

    def operator(self, M: Module):
        """U = sum lambda_i X_i on M extended to K."""
        K = self.K
        MK = base_change(M, K)
        U = np.zeros((M.dim, M.dim), dtype=np.int64)
        for c, X in zip(self.lam, MK.actions):
            if c:
                U = K.add(U, K.mul(X, c))
        return U

    def to_json(self):
        return {
            "p": self.group.p, "r": self.group.r, "K": self.K.to_json(),
            "base": self.base.to_json(),
            "lambda": [FieldElem(self.K, c).to_json() for c in self.lam],
        }

    @classmethod
    def from_json(cls, d):
        K = Field.from_json(d["K"])
        base = Field.from_json(d["base"]) if "base" in d else None
        return cls(GroupDesc(d["p"], d["r"]), K, [K.elem(c) for c in d["lambda"]], base)

    def __repr__(self):
        return f"PiPoint{self.point!r}"


def pipoint_make(group, K, lam, base=None) -> PiPoint:
    return PiPoint(group, K, lam, base)


def _jordan_from_ranks(ranks, p):
    """ranks[i] = rank U^i for i = 0..p+1."""
    return JordanType(tuple(ranks[i - 1] - 2 * ranks[i] + ranks[i + 1] for i in range(1, p + 1)))


def restrict(alpha: PiPoint, M: Module):
    """(U, Jordan type of U) for M restricted along alpha."""
    K = alpha.K
    U = alpha.operator(M)
    p = alpha.group.p
    ranks = [M.dim]
    P = K.eye(M.dim)
    for _ in range(p + 1):
        P = K.matmul(P, U)
        ranks.append(K.rank(P) if M.dim else 0)
    if ranks[p]:
        raise PiPointError("U^p != 0")  # pragma: no cover
    return U, _jordan_from_ranks(ranks, p)


def thick_member(alpha: PiPoint, M: Module) -> bool:
    return restrict(alpha, M)[1].is_free


class PiPointChi:
    """chi_alpha(M) = number of Jordan blocks of alpha^*(M_K)."""

    def __init__(self, alpha: PiPoint):
        self.alpha = alpha

    def __call__(self, M: Module) -> int:
        U, jt = restrict(self.alpha, M)
        direct = M.dim - (self.alpha.K.rank(U) if M.dim else 0)
        if direct != jt.count:
            raise ArithmeticError("block count disagrees with dim - rank U")  # pragma: no cover
        return direct


def chi_pipoint(alpha: PiPoint) -> PiPointChi:
    return PiPointChi(alpha)


def witness_module(alpha: PiPoint) -> Module:
    """KE / u KE with u = sum lambda_i x_i; a K-module of dimension p^(r-1) supported at [lambda]."""
    R = free_module(alpha.group, alpha.K)
    U = alpha.operator(R)
    W, _ = quotient(R, U)
    return W.with_provenance(f"W{alpha.point!r}")


def point_module(alpha: PiPoint) -> Module:
    """Hom_{K[t]/t^p}(KE, K) with (g.f)(x) = f(xg), viewed over the base field."""
    W = witness_module(alpha)
    acts = [X.T.copy() for X in W.actions]
    D = Module(alpha.group, alpha.K, W.dim, acts, f"Delta{alpha.point!r}")
    return restrict_scalars(D, alpha.base).with_provenance(f"Delta{alpha.point!r}")


def projective_points(r: int, K: Field):
    """Normalised representatives of P^(r-1)(K), ordered by position of the leading 1 then codes."""
    pts = []
    for lead in range(r):
        for tail in itertools.product(range(K.q), repeat=r - lead - 1):
            pts.append(ProjPoint(K, (0,) * lead + (1,) + tuple(tail)))
    return pts


def count_projective_points(r: int, q: int) -> int:
    return (q ** r - 1) // (q - 1)


def supp_pi(M: Module, K: Field, base: Field | None = None):
    """Points [lambda] of P^(r-1)(K) at which M restricts to a non-projective module."""
    out = []
    for pt in projective_points(M.group.r, K):
        if not thick_member(PiPoint(M.group, K, pt.coords, base), M):
            out.append(pt)
    return out


def galois_orbit(pt: ProjPoint, base: Field):
    """Orbit of a point under Gal(K/base), as a sorted tuple of normalised coordinate tuples."""
    K = pt.K
    orbit = set()
    cur = pt.coords
    for _ in range(K.n // base.n):
        orbit.add(cur)
        cur = _normalize(K, K.power(np.array(cur, dtype=np.int64), base.q))
    return tuple(sorted(orbit))
