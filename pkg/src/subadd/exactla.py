"""Exact arithmetic in GF(p^n) and dense linear algebra over it.

Elements are stored as integer codes ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients in the polynomial basis ``1, t, ..., t^(n-1)`` (lowest degree
first).  Matrices are numpy ``int64`` arrays of codes.  For small fields the
elementwise operations go through precomputed tables; larger fields fall back
to vectorised polynomial arithmetic, so the field size is not bounded by
table memory.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

__all__ = [
    "Field", "FieldElem", "Matrix", "FieldError",
    "field_make", "field_arith", "field_embed", "embedding",
    "rref", "kernel_basis", "solve", "kron", "direct_sum", "nilpotency_index",
]

TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_mod_p(a, b, p):
    """Remainder of a by monic b, coefficient lists lowest degree first, mod p."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        c = a[-1] % p
        shift = len(a) - 1 - db
        if c:
            for i in range(db + 1):
                a[shift + i] = (a[shift + i] - c * b[i]) % p
        a.pop()
    return [x % p for x in a]


def _is_irreducible(p: int, modulus) -> bool:
    n = len(modulus) - 1
    if n <= 1:
        return True
    # trial division by every monic polynomial of degree 1..n//2
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            if not any(_poly_mod_p(modulus, div, p)):
                return False
    return True


def _default_modulus(p: int, n: int):
    if n == 1:
        return (0, 1)
    for code in range(p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        cand = tuple(low) + (1,)
        if _is_irreducible(p, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")  # pragma: no cover


class Field:
    """The finite field GF(p^n) = GF(p)[t]/(modulus)."""

    __slots__ = ("p", "n", "modulus", "q", "__dict__")

    def __init__(self, p: int, n: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        if n == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = _default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {n}")
        if not _is_irreducible(p, modulus):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.n, self.modulus, self.q = p, n, modulus, p ** n

    # identity -------------------------------------------------------------
    def _key(self):
        return (self.p, self.n, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}, modulus={list(self.modulus)})"

    def to_json(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d):
        return cls(d["p"], d["n"], d.get("modulus"))

    @property
    def is_prime_field(self):
        return self.n == 1

    # codes ----------------------------------------------------------------
    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p ** i) % self.p for i in range(self.n)], axis=-1)

    def encode(self, digits):
        digits = np.asarray(digits, dtype=np.int64) % self.p
        w = self.p ** np.arange(self.n, dtype=np.int64)
        return (digits * w).sum(axis=-1)

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError("field mismatch")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.n:
                raise FieldError(f"expected {self.n} coefficients")
            return FieldElem(self, int(self.encode(value)))
        return FieldElem(self, int(value) % self.q if self.n > 1 else int(value) % self.p)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    @property
    def gen(self) -> "FieldElem":
        """The class of t (equals 1 in a prime field)."""
        return FieldElem(self, self.p if self.n > 1 else 1)

    # generic vectorised arithmetic ----------------------------------------
    def _mul_generic(self, a, b):
        p, n = self.p, self.n
        da, db = self.digits(a), self.digits(b)
        shape = np.broadcast_shapes(da.shape[:-1], db.shape[:-1])
        prod = np.zeros(shape + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                prod[..., i + j] += da[..., i] * db[..., j]
        prod %= p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[..., k].copy()
            for i in range(n):
                prod[..., k - n + i] = (prod[..., k - n + i] - c * self.modulus[i]) % p
        return self.encode(prod[..., :n])

    def _add_generic(self, a, b):
        return self.encode(self.digits(a) + self.digits(b))

    def _neg_generic(self, a):
        return self.encode(-self.digits(a))

    def _pow_generic(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        result = np.ones_like(a)
        base = a.copy()
        while e:
            if e & 1:
                result = self._mul_generic(result, base)
            base = self._mul_generic(base, base)
            e >>= 1
        return result

    @cached_property
    def _tables(self):
        if self.n == 1 or self.q > TABLE_LIMIT:
            return None
        x = np.arange(self.q, dtype=np.int64)
        add = self._add_generic(x[:, None], x[None, :])
        mul = self._mul_generic(x[:, None], x[None, :])
        neg = self._neg_generic(x)
        inv = self._pow_generic(x, self.q - 2)
        inv[0] = 0
        return add, mul, neg, inv

    # elementwise ops on code arrays ---------------------------------------
    def add(self, a, b):
        if self.n == 1:
            return (np.asarray(a) + b) % self.p
        t = self._tables
        if t is not None:
            return t[0][a, b]
        return self._add_generic(a, b)

    def neg(self, a):
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        t = self._tables
        if t is not None:
            return t[2][a]
        return self._neg_generic(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a) * b) % self.p
        t = self._tables
        if t is not None:
            return t[1][a, b]
        return self._mul_generic(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.n == 1:
            return np.asarray(pow_mod_array(a, self.p - 2, self.p))
        t = self._tables
        if t is not None:
            return t[3][a]
        return self._pow_generic(a, self.q - 2)

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.n == 1:
            return pow_mod_array(a, e, self.p)
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # matrices ---------------------------------------------------------------
    def zeros(self, r, c):
        return np.zeros((r, c), dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[-1] == 0:
            return np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        if self.n == 1:
            return (A @ B) % self.p
        p, n = self.p, self.n
        Ad = [(A // p ** d) % p for d in range(n)]
        Bd = [(B // p ** d) % p for d in range(n)]
        C = [None] * (2 * n - 1)
        for i in range(n):
            for j in range(n):
                term = Ad[i] @ Bd[j]
                C[i + j] = term if C[i + j] is None else C[i + j] + term
        C = [c % p for c in C]
        for k in range(2 * n - 2, n - 1, -1):
            for i in range(n):
                if self.modulus[i]:
                    C[k - n + i] = (C[k - n + i] - self.modulus[i] * C[k]) % p
        out = C[0].copy()
        for d in range(1, n):
            out += C[d] * p ** d
        return out

    def kron(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        ra, ca = A.shape
        rb, cb = B.shape
        prod = self.mul(A[:, None, :, None], B[None, :, None, :])
        return np.asarray(prod, dtype=np.int64).reshape(ra * rb, ca * cb)

    def mat_pow(self, A, e):
        result = self.eye(A.shape[0])
        base = np.asarray(A, dtype=np.int64)
        while e:
            if e & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            e >>= 1
        return result

    def rref(self, A):
        """Gauss-Jordan; returns (R, pivots).  First nonzero entry in a column is the pivot."""
        R = np.array(A, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise ValueError("rref needs a 2-d array")
        m, ncols = R.shape
        pivots = []
        r = 0
        prime = self.n == 1
        p = self.p
        for c in range(ncols):
            if r == m:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            i = r + nz[0]
            if i != r:
                R[[r, i]] = R[[i, r]]
            piv = int(R[r, c])
            if piv != 1:
                R[r, c:] = self.mul(R[r, c:], int(self.inv(piv)))
            col = R[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                if prime:
                    R[rows, c:] = (R[rows, c:] - col[rows, None] * R[r, c:]) % p
                else:
                    R[rows, c:] = self.sub(R[rows, c:], self.mul(col[rows, None], R[r, c:][None, :]))
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, A):
        A = np.asarray(A, dtype=np.int64)
        if A.size == 0:
            return 0
        # eliminate on the shorter side
        if A.shape[0] > A.shape[1]:
            A = A.T
        R = np.array(A, copy=True)
        m, ncols = R.shape
        r = 0
        prime = self.n == 1
        p = self.p
        for c in range(ncols):
            if r == m:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            i = r + nz[0]
            if i != r:
                R[[r, i]] = R[[i, r]]
            piv = int(R[r, c])
            if piv != 1:
                R[r, c:] = self.mul(R[r, c:], int(self.inv(piv)))
            below = r + 1 + np.flatnonzero(R[r + 1:, c])
            if below.size:
                if prime:
                    R[below, c:] = (R[below, c:] - R[below, c][:, None] * R[r, c:]) % p
                else:
                    R[below, c:] = self.sub(R[below, c:], self.mul(R[below, c][:, None], R[r, c:][None, :]))
            r += 1
        return r

    def kernel(self, A):
        """Rows spanning {x : A x = 0}, in the canonical echelon form from rref."""
        return self.kernel_free(A)[0]

    def kernel_free(self, A):
        """Kernel rows plus their free columns; row k is 1 at free[k] and 0 at the other free columns."""
        A = np.asarray(A, dtype=np.int64)
        ncols = A.shape[1]
        if A.shape[0] == 0:
            return self.eye(ncols), list(range(ncols))
        R, pivots = self.rref(A)
        pset = set(pivots)
        free = [c for c in range(ncols) if c not in pset]
        K = np.zeros((len(free), ncols), dtype=np.int64)
        if free:
            K[np.arange(len(free)), free] = 1
            if pivots:
                K[:, pivots] = self.neg(R[: len(pivots), free].T)
        return K, free

    def solve(self, A, b):
        """One solution of A x = b with free variables zero, or None."""
        A = np.asarray(A, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
        aug = np.hstack([A, b])
        R, pivots = self.rref(aug)
        ncols = A.shape[1]
        if pivots and pivots[-1] == ncols:
            return None
        x = np.zeros(ncols, dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = R[i, ncols]
        return x

    def solve_many(self, A, B):
        """X with A X = B (columns of B solved independently), or None."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        aug = np.hstack([A, B])
        R, pivots = self.rref(aug)
        ncols = A.shape[1]
        if pivots and pivots[-1] >= ncols:
            return None
        X = np.zeros((ncols, B.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            X[pc] = R[i, ncols:]
        return X

    def inverse(self, A):
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[0]
        X = self.solve_many(A, self.eye(n))
        if X is None or self.rank(A) < n:
            raise ZeroDivisionError("singular matrix")
        return X


def pow_mod_array(a, e, p):
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    while e:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


class FieldElem:
    """An element of a finite field, held as its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self):
        F = self.field
        return tuple((self.code // F.p ** i) % F.p for i in range(F.n))

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("field mismatch")
            return other.code
        if isinstance(other, int):
            return int(self.field.elem(other).code)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElem(self.field, int(self.field.add(self.code, b)))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElem(self.field, int(self.field.sub(self.code, b)))

    def __neg__(self):
        return FieldElem(self.field, int(self.field.neg(self.code)))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElem(self.field, int(self.field.mul(self.code, b)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        return FieldElem(self.field, int(self.field.inv(self.code)))

    def __pow__(self, e: int):
        return FieldElem(self.field, int(self.field.power(self.code, e)))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.elem(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.n == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return list(self.coeffs)


def field_make(p: int, n: int = 1, modulus=None) -> Field:
    return Field(p, n, modulus)


def field_arith(op: str, a: FieldElem, b=None) -> FieldElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


def embedding(src: Field, dst: Field) -> np.ndarray:
    """Lookup table sending codes of src to codes of dst under a fixed embedding.

    src must be a subfield of dst (same p, degree dividing).  For a non-prime
    source the image of its generator is the least-code root of its modulus.
    """
    if src.p != dst.p:
        raise FieldError("incompatible characteristic")
    if dst.n % src.n:
        raise FieldError(f"{src!r} does not embed in {dst!r}")
    if src == dst:
        return np.arange(src.q, dtype=np.int64)
    if src.n == 1:
        return np.arange(src.p, dtype=np.int64)
    root = None
    for c in range(dst.q):
        acc = 0
        for coef in reversed(src.modulus):
            acc = int(dst.add(dst.mul(acc, c), coef))
        if acc == 0:
            root = c
            break
    powers = [1]
    for _ in range(src.n - 1):
        powers.append(int(dst.mul(powers[-1], root)))
    table = np.zeros(src.q, dtype=np.int64)
    for code in range(src.q):
        acc = 0
        for i, d in enumerate((code // src.p ** i) % src.p for i in range(src.n)):
            acc = int(dst.add(acc, dst.mul(d, powers[i])))
        table[code] = acc
    return table


def field_embed(a: FieldElem, target: Field) -> FieldElem:
    return FieldElem(target, int(embedding(a.field, target)[a.code]))


class Matrix:
    """Immutable dense matrix over a finite field."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, entries):
        arr = np.array(entries, dtype=object if _has_elems(entries) else np.int64)
        if arr.dtype == object:
            arr = np.vectorize(lambda e: field.elem(e).code, otypes=[np.int64])(arr)
        arr = np.asarray(arr, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix entries must be 2-dimensional")
        arr.setflags(write=False)
        self.field = field
        self.a = arr

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.eye(n))

    @classmethod
    def zeros(cls, field, r, c):
        return cls(field, field.zeros(r, c))

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, ij):
        return FieldElem(self.field, int(self.a[ij]))

    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("field mismatch")
        return other

    def __matmul__(self, other):
        other = self._check(other)
        return Matrix(self.field, self.field.matmul(self.a, other.a))

    def __add__(self, other):
        other = self._check(other)
        return Matrix(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other):
        other = self._check(other)
        return Matrix(self.field, self.field.sub(self.a, other.a))

    def __neg__(self):
        return Matrix(self.field, self.field.neg(self.a))

    def scale(self, c):
        return Matrix(self.field, self.field.mul(self.a, self.field.elem(c).code))

    @property
    def T(self):
        return Matrix(self.field, self.a.T)

    def __pow__(self, e: int):
        return Matrix(self.field, self.field.mat_pow(self.a, e))

    def rank(self):
        return self.field.rank(self.a)

    def is_zero(self):
        return not self.a.any()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.a.tolist()})"

    def to_json(self):
        F = self.field
        flat = self.a.reshape(-1)
        entries = [int(c) for c in flat] if F.n == 1 else [list(FieldElem(F, c).coeffs) for c in flat]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, field, d):
        rows, cols = d["rows"], d["cols"]
        codes = [int(field.encode(e)) if isinstance(e, list) else int(e) for e in d["entries"]]
        if len(codes) != rows * cols:
            raise ValueError("entry count does not match shape")
        return cls(field, np.array(codes, dtype=np.int64).reshape(rows, cols))


def _has_elems(entries):
    if isinstance(entries, np.ndarray):
        return entries.dtype == object
    for row in entries:
        for e in row:
            return isinstance(e, FieldElem)
    return False


def rref(A: Matrix):
    R, pivots = A.field.rref(A.a)
    return Matrix(A.field, R), len(pivots), pivots


def kernel_basis(A: Matrix) -> Matrix:
    return Matrix(A.field, A.field.kernel(A.a))


def solve(A: Matrix, b):
    F = A.field
    vec = np.array([F.elem(x).code if not isinstance(x, (int, np.integer)) else x for x in b],
                   dtype=np.int64) if not isinstance(b, np.ndarray) else b
    x = F.solve(A.a, vec)
    return None if x is None else [FieldElem(F, c) for c in x]


def kron(A: Matrix, B: Matrix) -> Matrix:
    A._check(B)
    return Matrix(A.field, A.field.kron(A.a, B.a))


def direct_sum(A: Matrix, B: Matrix) -> Matrix:
    A._check(B)
    return Matrix(A.field, block_diag(A.a, B.a))


def block_diag(*blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def nilpotency_index(A: Matrix) -> int:
    if A.rows != A.cols:
        raise ValueError("nilpotency index needs a square matrix")
    F = A.field
    n = A.rows
    P = np.array(A.a)
    e = 1
    while P.any():
        if e > n:
            raise ValueError("matrix is not nilpotent")
        P = F.matmul(P, A.a)
        e += 1
    return e
