"""Orbit periods of the transfer map, the lcm tower over Z/p^r, and their
combination over a general finite abelian target."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from sympy import divisors, factorint

from .errors import InputError, NotInvertible, OrderCapExceeded, PatternViolation
from .shift_system import ShiftSystem
from .zpr import MatrixZpr, RingParams, inverse, kernel

DEFAULT_ORDER_CAP = 10**7


def default_order_cap() -> int:
    raw = os.environ.get("KNOTSHIFT_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"KNOTSHIFT_ORDER_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError("KNOTSHIFT_ORDER_CAP must be positive")
    return cap


def order_of_transfer(T: MatrixZpr, cap: int | None = None) -> int:
    """Least d >= 1 with T^d = E: the order mod p by repeated multiplication,
    then the p-power needed to lift it to Z/p^r."""
    if T.rows == 0:
        return 1
    cap = default_order_cap() if cap is None else cap
    ring = T.ring
    T1 = T.reduce(RingParams(ring.p, 1))
    try:
        inverse(T1)
    except NotInvertible:
        raise NotInvertible("transfer map is singular mod p") from None
    P, d1 = T1, 1
    while not P.is_identity():
        if d1 >= cap:
            raise OrderCapExceeded(f"order mod {ring.p} exceeds the cap of {cap}")
        P = P @ T1
        d1 += 1
    S, e = T**d1, 0
    while not S.is_identity():
        S = S**ring.p
        e += 1
    return d1 * ring.p**e


def fixed_exponent(T: MatrixZpr, q: int) -> int:
    """k with |Fix(T^q)| = p^k."""
    n = T.rows
    return kernel(T**q - MatrixZpr.identity(n, T.ring)).order_exponent


@dataclass(frozen=True)
class PeriodSpectrum:
    ring: RingParams
    counts: tuple[tuple[int, int], ...]  # (exact period, number of states), ascending
    d: int

    @property
    def Q(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.counts)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def count(self, q: int) -> int:
        return dict(self.counts).get(q, 0)


def period_set(T: MatrixZpr, cap: int | None = None) -> PeriodSpectrum:
    d = order_of_transfer(T, cap)
    exact = {}
    for q in divisors(d):
        fixed = T.ring.p ** fixed_exponent(T, q)
        exact[q] = fixed - sum(c for q2, c in exact.items() if q % q2 == 0)
    return PeriodSpectrum(T.ring, tuple((q, c) for q, c in sorted(exact.items()) if c), d)


CONSTANT = "Constant"
GROWTH = "GrowthFrom"
STABILIZED = "StabilizedAfterGrowth"
OTHER = "Other"


@dataclass(frozen=True)
class PeriodTower:
    p: int
    d_list: tuple[int, ...]
    pattern: str
    s: int | None = None
    spectra: tuple[PeriodSpectrum, ...] = ()

    def describe(self) -> str:
        return describe_pattern(self.pattern, self.s)


def describe_pattern(pattern: str, s: int | None) -> str:
    if pattern == GROWTH:
        return f"growth from s={s}"
    if pattern == STABILIZED:
        return f"growth from s={s}, then stabilized"
    return pattern.lower()


def classify_tower(d_list: Sequence[int], p: int) -> tuple[str, int | None]:
    """Return (pattern, s) where d_1 = ... = d_s is the initial plateau."""
    steps = []
    for a, b in zip(d_list, d_list[1:]):
        if b == a:
            steps.append(False)
        elif b == p * a:
            steps.append(True)
        else:
            return OTHER, None
    if not any(steps):
        return CONSTANT, None
    s = steps.index(True) + 1
    rest = steps[s - 1:]
    if all(rest):
        return GROWTH, s
    stop = rest.index(False)
    if not any(rest[stop:]):
        return STABILIZED, s
    return OTHER, s


def period_tower(builder: Callable[[int], ShiftSystem], p: int, R: int, cap: int | None = None) -> PeriodTower:
    """``builder(r)`` returns the system over Z/p^r.  An ``Other`` pattern is
    impossible while the divisibility chain holds and raises."""
    if R < 1:
        raise InputError("tower needs at least one level")
    spectra = tuple(period_set(builder(r).T, cap) for r in range(1, R + 1))
    d_list = tuple(s.d for s in spectra)
    pattern, s = classify_tower(d_list, p)
    if pattern == OTHER:
        raise PatternViolation(f"period tower {d_list} at p={p} fits no admissible pattern")
    return PeriodTower(p, d_list, pattern, s, spectra)


@dataclass(frozen=True)
class AbelianGroupSpec:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise InputError("a finite abelian group needs at least one cyclic factor")
        if tuple(sorted(self.factors)) != self.factors:
            object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        for p, r in self.factors:
            RingParams(p, r)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupSpec":
        """``"4,3"`` is Z/4 + Z/3; each entry is split into prime powers."""
        factors = []
        for tok in text.split(","):
            tok = tok.strip()
            try:
                N = int(tok)
            except ValueError:
                raise InputError(f"bad group order {tok!r} in sigma spec {text!r}") from None
            if N < 2:
                raise InputError(f"cyclic factor order must be at least 2, got {N}")
            factors += factorint(N).items()
        return cls(tuple(sorted((int(p), int(r)) for p, r in factors)))

    @property
    def order(self) -> int:
        return math.prod(p**r for p, r in self.factors)

    def has_repeated_prime(self) -> bool:
        primes = [p for p, _ in self.factors]
        return len(primes) != len(set(primes))

    def __str__(self):
        return " + ".join(f"Z/{p**r}" for p, r in self.factors)


def combine_abelian(spec: AbelianGroupSpec, spectra: Sequence[PeriodSpectrum]) -> "CombinedSpectrum":
    """Periods of the product system: d = lcm of the d_i, each period the lcm
    of one period per factor, counts multiplied across factors."""
    if len(spectra) != len(spec.factors):
        raise InputError(f"{len(spectra)} spectra for {len(spec.factors)} factors")
    for (p, r), sp in zip(spec.factors, spectra):
        if (sp.ring.p, sp.ring.r) != (p, r):
            raise InputError(f"spectrum over {sp.ring} supplied for factor Z/{p}^{r}")
    d = math.lcm(*(sp.d for sp in spectra))
    counts: dict[int, int] = {}
    for choice in product(*(sp.counts for sp in spectra)):
        q = math.lcm(*(qi for qi, _ in choice))
        counts[q] = counts.get(q, 0) + math.prod(c for _, c in choice)
    return CombinedSpectrum(spec, tuple(sorted(counts.items())), d)


@dataclass(frozen=True)
class CombinedSpectrum:
    sigma: AbelianGroupSpec
    counts: tuple[tuple[int, int], ...]
    d: int

    @property
    def Q(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.counts)
