"""Counting surjective shift-periodic representations onto a finite abelian
group; each one corresponds to a regular covering of the d-fold cyclic cover
with that deck group."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .errors import InputError, RepeatedPrime
from .shift_system import Knot, knot_system
from .spectra import AbelianGroupSpec
from .zpr import MatrixZpr, Submodule, Vector, full_module, intersect, kernel, scalar_multiple

LISTING_CAP = 10**4


def fixed_subgroup(T: MatrixZpr, d: int) -> Submodule:
    if d < 1:
        raise InputError(f"covering degree must be at least 1, got {d}")
    return kernel(T**d - MatrixZpr.identity(T.rows, T.ring))


def _non_surjective(F: Submodule) -> Submodule:
    ring = F.ring
    return intersect(F, scalar_multiple(full_module(ring, F.dim), ring.p))


def count_surjective(F: Submodule) -> int:
    """States whose representation is onto Z/p^r: those nonzero mod p."""
    return F.cardinality - _non_surjective(F).cardinality


@dataclass(frozen=True)
class FactorCount:
    p: int
    r: int
    n: int
    fixed_exponent: int
    surjective: int


@dataclass(frozen=True)
class CoveringReport:
    knot: str
    sigma: AbelianGroupSpec
    d: int
    total_fixed: int
    surjective_count: int
    factors: tuple[FactorCount, ...]
    representatives: tuple[tuple[Vector, ...], ...] | None = field(default=None)


def classify_coverings(
    knot: Knot, sigma: AbelianGroupSpec, d: int, path: str = "auto", listing_cap: int = LISTING_CAP
) -> CoveringReport:
    if sigma.has_repeated_prime():
        raise RepeatedPrime(f"{sigma} repeats a prime; joint surjectivity across such factors is unsupported")
    if d < 1:
        raise InputError(f"covering degree must be at least 1, got {d}")
    counts, fixed = [], []
    for p, r in sigma.factors:
        system = knot_system(knot, p, r, path)
        F = fixed_subgroup(system.T, d)
        counts.append(FactorCount(p, r, system.n, F.order_exponent, count_surjective(F)))
        fixed.append(F)
    total = math.prod(f.cardinality for f in fixed)
    reps = None
    if total <= listing_cap:
        per_factor = []
        for F in fixed:
            bad = _non_surjective(F)
            per_factor.append([v for v in F.elements() if v not in bad])
        reps = tuple(product(*per_factor))
    return CoveringReport(
        knot.name,
        sigma,
        d,
        total,
        math.prod(c.surjective for c in counts),
        tuple(counts),
        reps,
    )
