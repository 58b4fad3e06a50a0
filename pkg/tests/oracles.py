"""Independent brute-force reference implementations used as test oracles.

Nothing here imports the package's linear algebra: field arithmetic is done on
coefficient lists, ranks by enumerating spans, Hom spaces by exhaustive search.
"""
import itertools

import numpy as np


class PolyField:
    """GF(p^n) as coefficient lists modulo a given monic polynomial (lowest degree first)."""

    def __init__(self, p, modulus):
        self.p = p
        self.modulus = list(modulus)
        self.n = len(modulus) - 1
        self.q = p ** self.n

    def to_coeffs(self, code):
        return [(code // self.p ** i) % self.p for i in range(self.n)]

    def to_code(self, coeffs):
        return sum(int(c) % self.p * self.p ** i for i, c in enumerate(coeffs))

    def add(self, a, b):
        x, y = self.to_coeffs(a), self.to_coeffs(b)
        return self.to_code([u + v for u, v in zip(x, y)])

    def mul(self, a, b):
        x, y = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.n)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] += u * v
        for d in range(2 * self.n - 1, self.n - 1, -1):
            c = prod[d] % self.p
            if c:
                for i, m in enumerate(self.modulus):
                    prod[d - self.n + i] -= c * m
        return self.to_code(prod[: self.n])

    def inv(self, a):
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


def is_irreducible_brute(p, modulus):
    """No root-free factorisation check: try every monic factor of degree <= n/2."""
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(modulus)
            while len(r) >= len(g):
                c = r[-1] % p
                shift = len(r) - len(g)
                for i, gi in enumerate(g):
                    r[shift + i] = (r[shift + i] - c * gi) % p
                r.pop()
            if not any(x % p for x in r):
                return False
    return True


def span_size(F, A):
    """Number of vectors A x over GF(q), by enumeration (small matrices only)."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    seen = set()
    for x in itertools.product(range(F.q), repeat=cols):
        v = [0] * rows
        for j, c in enumerate(x):
            if c:
                for i in range(rows):
                    v[i] = F.add(v[i], F.mul(int(A[i, j]), c))
        seen.add(tuple(v))
    return len(seen)


def brute_rank(F, A):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    size = span_size(F, A)
    r = 0
    while F.q ** r < size:
        r += 1
    return r


def rank_mod_p(A, p):
    """Plain Gaussian elimination over a prime field on Python ints."""
    M = [[int(x) % p for x in row] for row in np.asarray(A)]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def matmul_mod_p(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def brute_intertwiners(X_acts, M_acts, p):
    """All f (dM x dX over GF(p)) with f X_i = M_i f, by exhaustive enumeration."""
    dX = X_acts[0].shape[0]
    dM = M_acts[0].shape[0]
    out = []
    for entries in itertools.product(range(p), repeat=dX * dM):
        f = np.array(entries, dtype=np.int64).reshape(dM, dX)
        if all(np.array_equal(matmul_mod_p(f, A, p), matmul_mod_p(B, f, p)) for A, B in zip(X_acts, M_acts)):
            out.append(f)
    return out


def regular_representation(p, r):
    """Actions of x_i on k[x_1..x_r]/(x_i^p) in the monomial basis, built from exponent arithmetic."""
    monos = sorted(itertools.product(range(p), repeat=r))
    index = {m: i for i, m in enumerate(monos)}
    acts = []
    for i in range(r):
        X = np.zeros((len(monos), len(monos)), dtype=np.int64)
        for m in monos:
            e = list(m)
            e[i] += 1
            if e[i] < p:
                X[index[tuple(e)], index[m]] = 1
        acts.append(X)
    return monos, acts


def jordan_blocks(U, p, prime):
    """Jordan type of a nilpotent matrix over a prime field from kernel dimensions of powers."""
    d = U.shape[0]
    ranks = [d]
    P = np.eye(d, dtype=np.int64)
    for _ in range(p + 1):
        P = matmul_mod_p(P, U, prime)
        ranks.append(rank_mod_p(P, prime) if d else 0)
    return tuple(ranks[i - 1] - 2 * ranks[i] + ranks[i + 1] for i in range(1, p + 1))
