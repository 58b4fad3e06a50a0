"""Finite-dimensional matrix algebras over GF(q): radical and locality.

The radical is found as the two-sided ideal generated by all commutators of
basis elements together with ``f(b)`` for each basis element ``b``, where
``f`` is the squarefree part of the minimal polynomial of ``b``.  The quotient
by that ideal is always commutative and reduced; the ideal equals the Jacobson
radical exactly when it is nilpotent, and this happens whenever the semisimple
quotient is commutative (in particular whenever the algebra is local, by
Wedderburn's little theorem).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactla import Field

# polynomials are lists of field codes, lowest degree first, no trailing zeros


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_monic(F: Field, f):
    f = _trim(f)
    if not f:
        return f
    c = int(F.inv(f[-1]))
    return [int(F.mul(x, c)) for x in f]


def poly_mul(F: Field, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = int(F.add(out[i + j], F.mul(x, y)))
    return _trim(out)


def poly_divmod(F: Field, a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = int(F.inv(b[-1]))
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = int(F.mul(a[-1], inv_lead))
        shift = len(a) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = int(F.sub(a[shift + i], F.mul(c, y)))
        a = _trim(a[:-1])
    return _trim(quot), a


def poly_gcd(F: Field, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_deriv(F: Field, f):
    return _trim([int(F.mul(f[i], i % F.p)) for i in range(1, len(f))])


def poly_pth_root(F: Field, f):
    """g with g(x)^p = f(x), assuming f' = 0."""
    e = F.q // F.p
    return _trim([int(F.power(f[i], e)) for i in range(0, len(f), F.p)])


def poly_radical(F: Field, f):
    """Product of the distinct monic irreducible factors of f."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return [1]
    d = poly_deriv(F, f)
    if not d:
        return poly_radical(F, poly_pth_root(F, f))
    g = poly_gcd(F, f, d)
    w = poly_divmod(F, f, g)[0]
    r = poly_radical(F, g)
    common = poly_gcd(F, w, r)
    return poly_monic(F, poly_divmod(F, poly_mul(F, w, r), common)[0])


def min_poly(F: Field, B):
    """Minimal polynomial of a square matrix (monic code list)."""
    d = B.shape[0]
    vecs = [F.eye(d).reshape(-1)]
    P = F.eye(d)
    while True:
        P = F.matmul(P, B)
        V = np.stack(vecs, axis=1)
        x = F.solve(V, P.reshape(-1))
        if x is not None:
            return [int(c) for c in F.neg(x)] + [1]
        vecs.append(P.reshape(-1))


def poly_eval_matrix(F: Field, f, B):
    d = B.shape[0]
    acc = np.zeros((d, d), dtype=np.int64)
    for c in reversed(f):
        acc = F.matmul(acc, B)
        if c:
            acc = F.add(acc, F.mul(F.eye(d), c))
    return acc


def span_basis(F: Field, rows):
    """Row-echelon basis of the row span."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return rows
    R, piv = F.rref(rows)
    return R[: len(piv)]


@dataclass
class AlgebraInfo:
    dim: int
    radical: np.ndarray | None      # rows: coordinates (in the algebra basis) of a radical basis
    nilpotent: bool                 # whether the candidate radical ideal is nilpotent
    components: int | None          # simple components of A/rad when it is commutative
    simple_dim: int | None          # dim_k(A / rad)

    @property
    def is_local(self):
        return self.nilpotent and self.components == 1


class MatrixAlgebra:
    """Subalgebra of d x d matrices given by a basis (array of shape (m, d, d))."""

    def __init__(self, field: Field, basis):
        self.field = field
        self.basis = np.asarray(basis, dtype=np.int64)
        self.m = self.basis.shape[0]
        self.d = self.basis.shape[1] if self.m else 0
        self._flat = self.basis.reshape(self.m, -1)

    def coords(self, x):
        """Coordinates of matrices x (shape (k, d, d)) in the basis."""
        F = self.field
        x = np.asarray(x, dtype=np.int64).reshape(-1, self.d * self.d)
        sol = F.solve_many(self._flat.T, x.T)
        if sol is None:
            raise ValueError("element not in the algebra")
        return sol.T

    def element(self, c):
        F = self.field
        return F.matmul(np.asarray(c, dtype=np.int64)[None, :], self._flat).reshape(self.d, self.d)

    def _products(self, X, Y):
        """All products x @ y for x in X, y in Y (stacks of d x d matrices)."""
        F = self.field
        d = self.d
        big = F.matmul(X.reshape(-1, d), np.concatenate(list(Y), axis=1))
        big = big.reshape(len(X), d, len(Y), d).transpose(0, 2, 1, 3)
        return big.reshape(-1, d, d)

    def _ideal_closure(self, gens):
        """Two-sided ideal generated by gens (matrices), as coordinate rows."""
        F = self.field
        if len(gens) == 0:
            return np.zeros((0, self.m), dtype=np.int64)
        cur = span_basis(F, self.coords(np.stack(gens)))
        todo = cur
        while len(todo):
            elems = np.stack([self.element(c) for c in todo])
            prods = np.concatenate([self._products(self.basis, elems), self._products(elems, self.basis)])
            new = span_basis(F, np.vstack([cur, self.coords(prods)]))
            if new.shape[0] == cur.shape[0]:
                break
            todo = new
            cur = new
        return cur

    def _acts_nilpotently(self, ideal_elems):
        F = self.field
        W = F.eye(self.d)
        for _ in range(self.d + 1):
            if W.shape[1] == 0:
                return True
            imgs = np.hstack([F.matmul(x, W) for x in ideal_elems]) if len(ideal_elems) else np.zeros((self.d, 0), dtype=np.int64)
            if imgs.shape[1] == 0:
                return True
            W = span_basis(F, imgs.T).T
        return W.shape[1] == 0

    def analyze(self) -> AlgebraInfo:
        F = self.field
        if self.m == 0:
            return AlgebraInfo(0, np.zeros((0, 0), dtype=np.int64), True, 0, 0)
        prods = self._products(self.basis, self.basis).reshape(self.m, self.m, self.d, self.d)
        comm = F.sub(prods, prods.transpose(1, 0, 2, 3)).reshape(-1, self.d, self.d)
        gens = [c for c in comm if c.any()]
        for bi in self.basis:
            f = poly_radical(F, min_poly(F, bi))
            v = poly_eval_matrix(F, f, bi)
            if v.any():
                gens.append(v)
        J = self._ideal_closure(gens)
        J_elems = [self.element(c) for c in J]
        if not self._acts_nilpotently(J_elems):
            return AlgebraInfo(self.m, None, False, None, None)
        e = self.m - J.shape[0]
        if e == 0:
            return AlgebraInfo(self.m, J, True, 0, 0)
        comps = self._count_components(J)
        return AlgebraInfo(self.m, J, True, comps, e)

    def _count_components(self, J):
        """Simple components of the commutative semisimple quotient A/J.

        Equals the dimension of the fixed space of x -> x^q on A/J.
        """
        F = self.field
        if J.shape[0]:
            R, piv = F.rref(J)
        else:
            R, piv = J, []
        comp = [i for i in range(self.m) if i not in set(piv)]

        def to_quotient(c):
            c = np.array(c, dtype=np.int64)
            for row, pc in zip(R, piv):
                if c[pc]:
                    c = F.sub(c, F.mul(row, int(c[pc])))
            return c[comp]

        frob = []
        for i in comp:
            img = F.mat_pow(self.basis[i], F.q)
            frob.append(to_quotient(self.coords(img[None])[0]))
        Fr = np.stack(frob, axis=1)
        e = len(comp)
        return e - F.rank(F.sub(Fr, F.eye(e)))

    def radical_elements(self, info: AlgebraInfo):
        return [self.element(c) for c in info.radical]

    def in_radical(self, info: AlgebraInfo, x):
        F = self.field
        c = self.coords(x[None])[0]
        R = info.radical
        if R.shape[0] == 0:
            return not c.any()
        return F.rank(np.vstack([R, c])) == F.rank(R)
