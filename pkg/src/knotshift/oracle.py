"""Brute-force ground truth on explicit state sets.

Nothing here touches the submodule calculus: states are enumerated outright
and every object is computed as a plain Python set, so agreement with the
production path is meaningful.  All routines are exponential in the state
dimension and guarded by hard caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .alexander import AlexanderPair, LaurentPolyZ
from .errors import SizeCapExceeded
from .zpr import RingParams

STATE_CAP = 10**6
ORBIT_CAP = 10**5

State = tuple[int, ...]


@dataclass(frozen=True)
class ExplicitStateSet:
    ring: RingParams
    dim: int
    states: frozenset

    def __len__(self):
        return len(self.states)

    def __contains__(self, v):
        return tuple(v) in self.states

    def is_submodule(self) -> bool:
        # grow the span of greedily chosen generators; linear in |states|
        q = self.ring.modulus
        span = {(0,) * self.dim}
        for s in self.states:
            if s in span:
                continue
            span = {tuple((x + k * y) % q for x, y in zip(v, s)) for v in span for k in range(q)}
            if not span <= self.states:
                return False
        return span == self.states


def _matvec(M, v, q):
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in M)


def all_states(ring: RingParams, dim: int, cap: int = STATE_CAP) -> list[State]:
    if ring.modulus**dim > cap:
        raise SizeCapExceeded(f"{ring.modulus}^{dim} states exceed the cap of {cap}")
    return list(product(range(ring.modulus), repeat=dim))


def brute_force_states(pair: AlexanderPair, ring: RingParams, cap: int = STATE_CAP):
    """(V, forward-null, backward-null) as explicit sets."""
    q, n = ring.modulus, pair.size
    states = all_states(ring, n, cap)
    Av = {v: _matvec(pair.A, v, q) for v in states}
    Bv = {v: _matvec(pair.B, v, q) for v in states}

    W = set(states)
    while True:
        a_img = {Av[w] for w in W}
        b_img = {Bv[w] for w in W}
        nxt = {v for v in W if Bv[v] in a_img and Av[v] in b_img}
        if nxt == W:
            break
        W = nxt

    def reach(first, second):
        # grow S by states s with first(s) in second(S)
        S = {(0,) * n}
        while True:
            img = {second[s] for s in S}
            nxt = S | {v for v in states if first[v] in img}
            if nxt == S:
                return S
            S = nxt

    wrap = lambda s: ExplicitStateSet(ring, n, frozenset(s))
    return wrap(W), wrap(reach(Av, Bv)), wrap(reach(Bv, Av))


def successor_map(pair: AlexanderPair, ring: RingParams, V: ExplicitStateSet) -> dict[State, State]:
    """The unique w in V with B v = A w, for each v in V."""
    q = ring.modulus
    by_a: dict[State, list[State]] = {}
    for w in V.states:
        by_a.setdefault(_matvec(pair.A, w, q), []).append(w)
    succ = {}
    for v in V.states:
        hits = by_a.get(_matvec(pair.B, v, q), [])
        if len(hits) != 1:
            raise AssertionError(f"state {v} has {len(hits)} successors in V")
        succ[v] = hits[0]
    return succ


def successor_from_matrix(T, ring: RingParams) -> dict[State, State]:
    """Successor relation of a coordinate matrix on the full (Z/p^r)^n."""
    q = ring.modulus
    rows = [list(row) for row in T]
    n = len(rows)
    return {v: _matvec(rows, v, q) for v in all_states(ring, n, ORBIT_CAP)}


def brute_force_orbits(succ: Mapping[State, State], cap: int = ORBIT_CAP) -> dict[int, int]:
    """Exact period -> number of states, by walking every cycle."""
    if len(succ) > cap:
        raise SizeCapExceeded(f"{len(succ)} states exceed the orbit cap of {cap}")
    seen = set()
    counts: dict[int, int] = {}
    for start in succ:
        if start in seen:
            continue
        cycle = [start]
        v = succ[start]
        while v != start:
            cycle.append(v)
            v = succ[v]
            if len(cycle) > len(succ):
                raise AssertionError("successor relation is not a permutation")
        seen.update(cycle)
        counts[len(cycle)] = counts.get(len(cycle), 0) + len(cycle)
    return dict(sorted(counts.items()))


def image_is_onto(orbit: Sequence[State], ring: RingParams) -> bool:
    """Whether the values along an orbit generate Z/p^r."""
    g = ring.modulus
    for state in orbit:
        for x in state:
            g = math.gcd(g, x)
    return g == 1


def brute_force_coverings(pair: AlexanderPair, ring: RingParams, d: int, cap: int = ORBIT_CAP) -> tuple[int, int]:
    """(number of states fixed by the d-th shift, number of those whose
    representation is onto)."""
    V, _, _ = brute_force_states(pair, ring, cap)
    succ = successor_map(pair, ring, V)
    total = onto = 0
    for v in V.states:
        orbit = [v]
        w = succ[v]
        while w != v:
            orbit.append(w)
            w = succ[w]
        if d % len(orbit) == 0:
            total += 1
            onto += image_is_onto(orbit, ring)
    return total, onto


# --- companion order at r = 1 -----------------------------------------------

def _polymulmod(a, b, f, p):
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod_[i + j] = (prod_[i + j] + x * y) % p
    n = len(f) - 1
    for k in range(len(prod_) - 1, n - 1, -1):
        c = prod_[k]
        if c:
            for i in range(n + 1):
                prod_[k - n + i] = (prod_[k - n + i] - c * f[i]) % p
    return prod_[:n] + [0] * (n - len(prod_[:n]))


def companion_order_r1(delta: LaurentPolyZ, p: int, cap: int = 10**7) -> int:
    """Order of t in F_p[t]/(core of Delta mod p), i.e. the multiplicative
    order of the companion matrix.  A constant core gives 1."""
    c = [x % p for x in delta.coefficients]
    lo = next(i for i, x in enumerate(c) if x)
    hi = max(i for i, x in enumerate(c) if x)
    core = c[lo:hi + 1]
    n = len(core) - 1
    if n == 0:
        return 1
    inv = pow(core[-1], -1, p)
    f = [x * inv % p for x in core]
    one = [1] + [0] * (n - 1)
    t = [0, 1] + [0] * (n - 2) if n > 1 else [(-f[0]) % p]
    power, d = t, 1
    while power != one:
        if d >= cap:
            raise SizeCapExceeded(f"companion order exceeds {cap}")
        power = _polymulmod(power, t, f, p)
        d += 1
    return d
