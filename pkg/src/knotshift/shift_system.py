"""The dynamical system of solutions to ``B y_j = A y_{j+1}`` over Z/p^r.

``V`` is the submodule of states admitting a bi-infinite continuation, and
the shift acts on it through the transfer map ``T = (A|V)^-1 (B|V)``.  The
forward/backward null modules collect states whose continuation dies out to
the left/right; together with ``V`` they split the ambient module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .alexander import (
    AlexanderPair,
    KnotPresentation,
    LaurentPolyZ,
    alexander_polynomial,
    builtin_knot,
    canonical_name,
    core_split,
    fox_pair,
    parse_wirtinger,
    poly_det,
    reduce_pair,
)
from .errors import HypothesisViolated, InputError, SingularRestriction, TheoremViolation
from .zpr import (
    MatrixZpr,
    RingParams,
    Submodule,
    Vector,
    apply,
    free_basis,
    full_module,
    intersect,
    inverse,
    kernel,
    preimage,
    sum_modules,
    zero_module,
)


def pair_matrices(pair: AlexanderPair, ring: RingParams) -> tuple[MatrixZpr, MatrixZpr]:
    n = pair.size
    return MatrixZpr.from_rows(pair.A, ring, n), MatrixZpr.from_rows(pair.B, ring, n)


def _stationary(step: Callable[[Submodule], Submodule], start: Submodule, cap: int) -> Submodule:
    current = start
    for _ in range(cap):
        nxt = step(current)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError(f"submodule refinement did not stabilise within {cap} steps")


def _cap(ring: RingParams, size: int) -> int:
    return 4 * ring.r * size + 2


def compute_V(pair: AlexanderPair, ring: RingParams) -> Submodule:
    A, B = pair_matrices(pair, ring)

    def refine(W):
        return intersect(preimage(A, apply(B, W)), preimage(B, apply(A, W)))

    return _stationary(refine, full_module(ring, pair.size), _cap(ring, pair.size))


def compute_forward_null(pair: AlexanderPair, ring: RingParams) -> Submodule:
    A, B = pair_matrices(pair, ring)
    return _stationary(lambda S: preimage(A, apply(B, S)), zero_module(ring, pair.size), _cap(ring, pair.size))


def compute_backward_null(pair: AlexanderPair, ring: RingParams) -> Submodule:
    A, B = pair_matrices(pair, ring)
    return _stationary(lambda S: preimage(B, apply(A, S)), zero_module(ring, pair.size), _cap(ring, pair.size))


@dataclass(frozen=True)
class Decomposition:
    V: Submodule
    Afwd: Submodule
    Bbwd: Submodule


def check_hypothesis(pair: AlexanderPair, ring: RingParams):
    A, B = pair_matrices(pair, ring)
    common = intersect(kernel(A), kernel(B))
    if not common.is_zero():
        raise HypothesisViolated(
            f"ker A and ker B share {common.cardinality - 1} nonzero vectors over {ring}, e.g. {common.basis[0]}"
        )


def verify_decomposition(pair: AlexanderPair, ring: RingParams) -> Decomposition:
    check_hypothesis(pair, ring)
    V = compute_V(pair, ring)
    Af = compute_forward_null(pair, ring)
    Bb = compute_backward_null(pair, ring)
    for name, (X, Y) in {"V/A": (V, Af), "V/B": (V, Bb), "A/B": (Af, Bb)}.items():
        if not intersect(X, Y).is_zero():
            raise TheoremViolation(f"{name} intersection is nonzero over {ring}")
    if not sum_modules(sum_modules(V, Af), Bb).is_full():
        raise TheoremViolation(f"V + A + B does not span the ambient module over {ring}")
    total = V.order_exponent + Af.order_exponent + Bb.order_exponent
    if total != ring.r * pair.size:
        raise TheoremViolation(f"|V||A||B| = {ring.p}^{total}, expected {ring.p}^{ring.r * pair.size}")
    return Decomposition(V, Af, Bb)


@dataclass(frozen=True)
class TransferMap:
    """``T`` acts on V-coordinates; ``basis`` rows are the states of the unit
    coordinate vectors and ``coord_cols`` the ambient columns carrying them."""

    ring: RingParams
    T: MatrixZpr
    basis: tuple[Vector, ...]
    coord_cols: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def state(self, coords) -> Vector:
        q, dim = self.ring.modulus, len(self.basis[0]) if self.basis else 0
        out = [0] * dim
        for c, row in zip(coords, self.basis):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(x % q for x in out)

    def coords(self, state) -> Vector:
        return tuple(state[j] % self.ring.modulus for j in self.coord_cols)


def _unit_minor_rows(M: MatrixZpr) -> list[int] | None:
    """Indices of rows forming a square submatrix invertible mod p, or None
    when the columns are dependent mod p."""
    p = M.ring.p
    rows = [[x % p for x in row] for row in M.entries]
    chosen = []
    reduced = []  # (pivot column, reduced row)
    for i, row in enumerate(rows):
        v = list(row)
        for col, piv in reduced:
            if v[col]:
                f = v[col] * pow(piv[col], -1, p)
                v = [(a - f * b) % p for a, b in zip(v, piv)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is not None:
            reduced.append((lead, v))
            chosen.append(i)
        if len(chosen) == M.cols:
            return chosen
    return chosen if len(chosen) == M.cols else None


def transfer_map(pair: AlexanderPair, ring: RingParams, V: Submodule) -> TransferMap:
    A, B = pair_matrices(pair, ring)
    basis, cols = free_basis(V)
    k = len(basis)
    if k == 0:
        return TransferMap(ring, MatrixZpr.zero(0, 0, ring), (), ())
    U = MatrixZpr.from_rows(basis, ring).transpose()
    AU, BU = A @ U, B @ U
    rows = _unit_minor_rows(AU)
    if rows is None:
        raise SingularRestriction(f"A restricted to V is not injective over {ring}")
    sub = MatrixZpr.from_rows([AU.entries[i] for i in rows], ring, k)
    rhs = MatrixZpr.from_rows([BU.entries[i] for i in rows], ring, k)
    T = inverse(sub) @ rhs
    if AU @ T != BU:
        raise TheoremViolation(f"B(V) is not contained in A(V) over {ring}")
    return TransferMap(ring, T, basis, cols)


def two_bridge_window_pair(delta: LaurentPolyZ, p: int) -> AlexanderPair:
    """Pair encoding the scalar recurrence with coefficients of Delta on a
    sliding window of ``n + 2k`` consecutive terms."""
    c = delta.coefficients
    k, n = core_split(delta, p)
    L = n + 2 * k
    A = [[0] * L for _ in range(L)]
    B = [[0] * L for _ in range(L)]
    for i in range(L - 1):
        B[i][i + 1] = 1
        A[i][i] = 1
    if L:
        B[L - 1] = list(c[:L])
        A[L - 1][L - 1] = -c[L]
    return AlexanderPair(tuple(map(tuple, A)), tuple(map(tuple, B)), "windowed")


@dataclass(frozen=True)
class Knot:
    name: str
    delta: LaurentPolyZ
    presentation: KnotPresentation | None = None


def load_knot(source: str) -> Knot:
    """A built-in name, or a path to a ``.wirt`` file."""
    if source.endswith(".wirt"):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
        kp = parse_wirtinger(text, name=source)
        return Knot(source, alexander_polynomial(reduce_pair(fox_pair(kp))), kp)
    name = canonical_name(source)
    kp, delta = builtin_knot(name)
    return Knot(name, delta, kp)


def knot_pair(knot: Knot, p: int, path: str = "auto") -> AlexanderPair:
    """``path`` is ``wirtinger``, ``window`` or ``auto`` (Wirtinger when a
    presentation is available)."""
    if path == "auto":
        path = "wirtinger" if knot.presentation is not None else "window"
    if path == "wirtinger":
        if knot.presentation is None:
            raise InputError(f"{knot.name} has no stored Wirtinger presentation")
        return reduce_pair(fox_pair(knot.presentation))
    if path == "window":
        return two_bridge_window_pair(knot.delta, p)
    raise InputError(f"unknown pair path {path!r}")


@dataclass(frozen=True)
class ShiftSystem:
    pair: AlexanderPair
    ring: RingParams
    V: Submodule
    transfer: TransferMap

    @property
    def T(self) -> MatrixZpr:
        return self.transfer.T

    @property
    def n(self) -> int:
        return self.transfer.rank


def build_system(pair: AlexanderPair, ring: RingParams) -> ShiftSystem:
    V = compute_V(pair, ring)
    return ShiftSystem(pair, ring, V, transfer_map(pair, ring, V))


def knot_system(knot: Knot, p: int, r: int, path: str = "auto") -> ShiftSystem:
    return build_system(knot_pair(knot, p, path), RingParams(p, r))


def charpoly_mod_p(T: MatrixZpr) -> tuple[int, ...]:
    """Coefficients of det(tI - T) mod p, lowest degree first."""
    n, p = T.rows, T.ring.p
    M = [[[-T[i, j], 1] if i == j else [-T[i, j]] for j in range(n)] for i in range(n)]
    return tuple(c % p for c in poly_det(M)) if n else (1,)
