"""Exact linear algebra over the local rings Z/p^r.

Submodules of (Z/p^r)^m are kept in Howell normal form: an echelon basis
whose pivots are normalised to powers of p, whose entries above each pivot
are reduced modulo that pivot, and which has the Howell property (every
element of the span with leading zeros in the first j coordinates is a
combination of the basis rows whose pivot lies beyond j).  That form is
unique per submodule, so equality of submodules is equality of bases.

Vectors are tuples of canonical residues; matrices act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from sympy import isprime

from .errors import DimensionMismatch, InputError, NonFreeModule, NotInvertible

WORD_BUDGET = 2**63

Vector = tuple[int, ...]


@dataclass(frozen=True)
class RingParams:
    p: int
    r: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise InputError(f"p must be a prime, got {self.p!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise InputError(f"r must be a positive integer, got {self.r!r}")
        if self.p**self.r >= WORD_BUDGET:
            raise InputError(f"{self.p}^{self.r} exceeds the 2^63 word budget")

    @property
    def modulus(self) -> int:
        return self.p**self.r

    def valuation(self, x: int) -> int:
        """p-adic valuation of a residue, with ``valuation(0) == r``."""
        x %= self.modulus
        if x == 0:
            return self.r
        e = 0
        while x % self.p == 0:
            x //= self.p
            e += 1
        return e

    def unit_inverse(self, u: int) -> int:
        if u % self.p == 0:
            raise NotInvertible(f"{u} is not a unit mod {self.modulus}")
        return pow(u, -1, self.modulus)

    def lower(self, r: int) -> "RingParams":
        return RingParams(self.p, r)

    def __str__(self):
        return f"Z/{self.p}^{self.r}"


@dataclass(frozen=True)
class MatrixZpr:
    ring: RingParams
    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(e) != self.cols for e in self.entries):
            raise DimensionMismatch("matrix entries do not match its shape")
        q = self.ring.modulus
        if any(not 0 <= x < q for row in self.entries for x in row):
            raise InputError("matrix entries must be canonical residues")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ring: RingParams, cols: int | None = None):
        q = ring.modulus
        entries = tuple(tuple(int(x) % q for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatch("column count required for an empty matrix")
            cols = len(entries[0])
        return cls(ring, len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int, ring: RingParams):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], ring, n)

    @classmethod
    def zero(cls, rows: int, cols: int, ring: RingParams):
        return cls.from_rows([[0] * cols for _ in range(rows)], ring, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "MatrixZpr":
        return MatrixZpr.from_rows([self.column(j) for j in range(self.cols)], self.ring, self.rows)

    def __matmul__(self, other):
        q = self.ring.modulus
        if isinstance(other, MatrixZpr):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            cols = [other.column(j) for j in range(other.cols)]
            out = [[sum(a * b for a, b in zip(row, c)) % q for c in cols] for row in self.entries]
            return MatrixZpr.from_rows(out, self.ring, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) % q for row in self.entries)

    def __add__(self, other: "MatrixZpr") -> "MatrixZpr":
        self._same_shape(other)
        return MatrixZpr.from_rows(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.ring, self.cols
        )

    def __sub__(self, other: "MatrixZpr") -> "MatrixZpr":
        self._same_shape(other)
        return MatrixZpr.from_rows(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.ring, self.cols
        )

    def scale(self, c: int) -> "MatrixZpr":
        return MatrixZpr.from_rows([[c * a for a in row] for row in self.entries], self.ring, self.cols)

    def __pow__(self, k: int) -> "MatrixZpr":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices have powers")
        if k < 0:
            return inverse(self) ** (-k)
        result = MatrixZpr.identity(self.rows, self.ring)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def reduce(self, ring: RingParams) -> "MatrixZpr":
        """Reduce entries into a ring of lower exponent over the same prime."""
        return MatrixZpr.from_rows(self.entries, ring, self.cols)

    def is_identity(self) -> bool:
        return all(x == int(i == j) for i, row in enumerate(self.entries) for j, x in enumerate(row))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols) or self.ring != other.ring:
            raise DimensionMismatch("matrices differ in shape or ring")


def inverse(M: MatrixZpr) -> MatrixZpr:
    """Gauss-Jordan inverse; the matrix must be invertible mod p."""
    if M.rows != M.cols:
        raise DimensionMismatch("only square matrices are invertible")
    ring, n, q = M.ring, M.rows, M.ring.modulus
    work = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c] % ring.p), None)
        if piv is None:
            raise NotInvertible("matrix is singular mod p")
        work[c], work[piv] = work[piv], work[c]
        inv = ring.unit_inverse(work[c][c])
        work[c] = [x * inv % q for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % q for a, b in zip(work[i], work[c])]
    return MatrixZpr.from_rows([row[n:] for row in work], ring, n)


@dataclass(frozen=True)
class Submodule:
    ring: RingParams
    dim: int
    basis: tuple[Vector, ...]
    pivot_valuations: tuple[int, ...]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_leading(row) for row in self.basis)

    @property
    def order_exponent(self) -> int:
        return sum(self.ring.r - e for e in self.pivot_valuations)

    @property
    def cardinality(self) -> int:
        return self.ring.p**self.order_exponent

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.order_exponent == self.ring.r * self.dim

    def __contains__(self, v) -> bool:
        return membership(self, v)

    def __le__(self, other: "Submodule") -> bool:
        _check_compatible(self, other)
        return all(membership(other, b) for b in self.basis)

    def elements(self) -> Iterator[Vector]:
        """Every element exactly once (Howell bases give unique coordinates)."""
        q, p, r = self.ring.modulus, self.ring.p, self.ring.r
        ranges = [range(p ** (r - e)) for e in self.pivot_valuations]
        for coeffs in product(*ranges):
            v = [0] * self.dim
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        v[j] += c * x
            yield tuple(x % q for x in v)


def _leading(v: Sequence[int]) -> int:
    for j, x in enumerate(v):
        if x:
            return j
    return len(v)


def _check_compatible(S1: Submodule, S2: Submodule):
    if S1.ring != S2.ring or S1.dim != S2.dim:
        raise DimensionMismatch(f"submodules of {S1.ring}^{S1.dim} and {S2.ring}^{S2.dim} are incompatible")


def howell_form(rows: Iterable[Sequence[int]], ring: RingParams, dim: int) -> Submodule:
    p, r, q = ring.p, ring.r, ring.modulus
    work = []
    for v in rows:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a rank-{dim} ambient module")
        v = [int(x) % q for x in v]
        if any(v):
            work.append(v)

    echelon: list[tuple[int, list[int], int]] = []
    for col in range(dim):
        live = [w for w in work if w[col]]
        if not live:
            continue
        piv = min(live, key=lambda w: ring.valuation(w[col]))
        work = [w for w in work if w is not piv]
        e = ring.valuation(piv[col])
        pe = p**e
        inv = ring.unit_inverse(piv[col] // pe)
        piv = [x * inv % q for x in piv]
        rest = []
        for w in work:
            if w[col]:
                f = w[col] // pe
                w = [(a - f * b) % q for a, b in zip(w, piv)]
            if any(w):
                rest.append(w)
        if e:
            # p^(r-e) * piv kills the pivot; its tail must stay in the span
            tail = [x * p ** (r - e) % q for x in piv]
            if any(tail):
                rest.append(tail)
        work = rest
        echelon.append((col, piv, e))

    for i, (col, row, e) in enumerate(echelon):
        pe = p**e
        for k in range(i):
            upper = echelon[k][1]
            f = upper[col] // pe
            if f:
                echelon[k][1][:] = [(a - f * b) % q for a, b in zip(upper, row)]

    return Submodule(
        ring,
        dim,
        tuple(tuple(row) for _, row, _ in echelon),
        tuple(e for _, _, e in echelon),
    )


def zero_module(ring: RingParams, dim: int) -> Submodule:
    return Submodule(ring, dim, (), ())


def full_module(ring: RingParams, dim: int) -> Submodule:
    return howell_form([[int(i == j) for j in range(dim)] for i in range(dim)], ring, dim)


def membership(S: Submodule, v: Sequence[int]) -> bool:
    if len(v) != S.dim:
        raise DimensionMismatch(f"vector of length {len(v)} in a rank-{S.dim} ambient module")
    q, p = S.ring.modulus, S.ring.p
    w = [int(x) % q for x in v]
    for row, e in zip(S.basis, S.pivot_valuations):
        col = _leading(row)
        pe = p**e
        if w[col] % pe:
            return False
        f = w[col] // pe
        if f:
            w = [(a - f * b) % q for a, b in zip(w, row)]
    return not any(w)


def _stacked_kernel(pairs: list[tuple[Sequence[int], Sequence[int]]], ring, left: int, right: int) -> Submodule:
    """Given generators (a, b) of a submodule of R^left + R^right, return the
    projection onto R^right of the elements whose first part vanishes."""
    H = howell_form([tuple(a) + tuple(b) for a, b in pairs], ring, left + right)
    return howell_form([row[left:] for row in H.basis if _leading(row) >= left], ring, right)


def apply(M: MatrixZpr, S: Submodule) -> Submodule:
    if M.cols != S.dim or M.ring != S.ring:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix cannot act on {S.ring}^{S.dim}")
    return howell_form([M @ b for b in S.basis], S.ring, M.rows)


def preimage(M: MatrixZpr, S: Submodule) -> Submodule:
    if M.rows != S.dim or M.ring != S.ring:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix cannot pull back from {S.ring}^{S.dim}")
    n = M.cols
    gens = [(M.column(j), tuple(int(i == j) for i in range(n))) for j in range(n)]
    gens += [(s, (0,) * n) for s in S.basis]
    return _stacked_kernel(gens, M.ring, M.rows, n)


def kernel(M: MatrixZpr) -> Submodule:
    return preimage(M, zero_module(M.ring, M.rows))


def intersect(S1: Submodule, S2: Submodule) -> Submodule:
    _check_compatible(S1, S2)
    zero = (0,) * S1.dim
    gens = [(a, a) for a in S1.basis] + [(b, zero) for b in S2.basis]
    return _stacked_kernel(gens, S1.ring, S1.dim, S1.dim)


def sum_modules(S1: Submodule, S2: Submodule) -> Submodule:
    _check_compatible(S1, S2)
    return howell_form(S1.basis + S2.basis, S1.ring, S1.dim)


def scalar_multiple(S: Submodule, c: int) -> Submodule:
    q = S.ring.modulus
    return howell_form([[c * x % q for x in row] for row in S.basis], S.ring, S.dim)


def p_torsion(S: Submodule) -> Submodule:
    """Elements killed by p, i.e. S intersected with p^(r-1) times the ambient module."""
    ring = S.ring
    return intersect(S, scalar_multiple(full_module(ring, S.dim), ring.p ** (ring.r - 1)))


def cardinality_and_rank(S: Submodule) -> tuple[int, int | None]:
    """Return (k, free_rank) with |S| = p^k; free_rank is None unless S is free."""
    k = S.order_exponent
    summands = p_torsion(S).order_exponent
    return k, summands if k == S.ring.r * summands else None


def free_basis(S: Submodule) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """A basis of a free submodule, reduced so that it is the identity on the
    returned coordinate columns.  Reading those columns off an element of S
    gives its coordinates.
    """
    k, rank = cardinality_and_rank(S)
    if rank is None:
        raise NonFreeModule(f"submodule of order {S.ring.p}^{k} in {S.ring}^{S.dim} is not free")
    ring, q = S.ring, S.ring.modulus
    rows = [list(b) for b in S.basis]
    basis, cols = [], []
    while True:
        hit = next(((i, j) for i, row in enumerate(rows) for j, x in enumerate(row) if x % ring.p), None)
        if hit is None:
            break
        i, j = hit
        row = rows.pop(i)
        inv = ring.unit_inverse(row[j])
        row = [x * inv % q for x in row]
        rows = [[(a - w[j] * b) % q for a, b in zip(w, row)] for w in rows]
        basis = [[(a - w[j] * b) % q for a, b in zip(w, row)] for w in basis]
        basis.append(row)
        cols.append(j)
    if len(basis) != rank:
        raise NonFreeModule("free submodule without a unit-pivot basis")
    order = sorted(range(len(cols)), key=cols.__getitem__)
    return tuple(tuple(basis[i]) for i in order), tuple(cols[i] for i in order)
