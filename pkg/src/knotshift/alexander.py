"""Knot input: Wirtinger presentations, Fox-calculus matrix pairs and the
Alexander polynomial.

A presentation has one generator per arc and one crossing relation per arc.
Crossing ``(out, over, inc, +1)`` encodes ``x_out = x_over x_inc x_over^-1``
and sign ``-1`` encodes ``x_out = x_over^-1 x_inc x_over``.  Abelianising the
Fox derivatives of each relation yields a row of ``B - tA`` with ``A`` and
``B`` integer matrices with entries in {-1, 0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError, NotAKnot, ParseError, UnknownKnot

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Crossing:
    out: int
    over: int
    inc: int
    sign: int

    def to_line(self) -> str:
        return f"xing {self.out} {self.over} {self.inc} {'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class KnotPresentation:
    m: int
    crossings: tuple[Crossing, ...]
    name: str | None = None

    def __post_init__(self):
        validate_presentation(self.m, self.crossings)

    def to_text(self) -> str:
        lines = [] if self.name is None else [f"# {self.name}"]
        lines.append(f"generators {self.m}")
        lines += [c.to_line() for c in self.crossings]
        return "\n".join(lines) + "\n"


def validate_presentation(m: int, crossings: Sequence[Crossing], lines: Sequence[int] | None = None):
    if m < 1:
        raise ParseError("need at least 1 generator", lines and 1)
    if len(crossings) != m:
        raise ParseError(f"expected {m} crossing{'s' if m != 1 else ''}, found {len(crossings)}")
    seen = {}
    for n, c in enumerate(crossings):
        line = lines[n] if lines else None
        for idx in (c.out, c.over, c.inc):
            if not 1 <= idx <= m:
                raise ParseError(f"index {idx} out of range 1..{m}", line)
        if c.sign not in (1, -1):
            raise ParseError(f"sign must be + or -, got {c.sign}", line)
        if c.out in seen:
            raise ParseError(f"generator {c.out} is the out-arc of two crossings", line)
        seen[c.out] = n


def parse_wirtinger(text: str, name: str | None = None) -> KnotPresentation:
    """Parse the ``.wirt`` format: ``generators <m>`` followed by m lines
    ``xing <out> <over> <inc> <+|->``; ``#`` starts a comment."""
    m = None
    crossings, lines = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if m is None:
            if tok[0] != "generators" or len(tok) != 2:
                raise ParseError("expected 'generators <m>'", lineno)
            m = _parse_int(tok[1], lineno)
            if m < 1:
                raise ParseError("need at least 1 generator", lineno)
            continue
        if tok[0] != "xing" or len(tok) != 5:
            raise ParseError("expected 'xing <out> <over> <inc> <+|->'", lineno)
        if tok[4] not in ("+", "-"):
            raise ParseError(f"sign must be + or -, got {tok[4]!r}", lineno)
        out, over, inc = (_parse_int(t, lineno) for t in tok[1:4])
        crossings.append(Crossing(out, over, inc, 1 if tok[4] == "+" else -1))
        lines.append(lineno)
    if m is None:
        raise ParseError("empty presentation")
    validate_presentation(m, crossings, lines)
    return KnotPresentation(m, tuple(crossings), name)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


@dataclass(frozen=True)
class AlexanderPair:
    """Integer matrices with ``B - tA`` the (possibly reduced) Alexander matrix.

    ``kind`` is ``"full"``, ``"reduced"`` or ``"windowed"``; windowed pairs come
    from scalar recurrences and may carry arbitrary integer entries.
    """

    A: IntMatrix
    B: IntMatrix
    kind: str = "full"

    def __post_init__(self):
        n = len(self.A)
        if len(self.B) != n or any(len(row) != n for row in self.A + self.B):
            raise InputError("A and B must be square of equal size")
        if self.kind != "windowed" and any(abs(x) > 1 for row in self.A + self.B for x in row):
            raise InputError("Wirtinger pairs have entries in {-1, 0, 1}")

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def reduced(self) -> bool:
        return self.kind != "full"


def fox_pair(kp: KnotPresentation) -> AlexanderPair:
    m = kp.m
    A = [[0] * m for _ in range(m)]
    B = [[0] * m for _ in range(m)]
    for c in kp.crossings:
        row = c.out - 1
        k, i, j = c.out - 1, c.over - 1, c.inc - 1
        if c.sign > 0:
            B[row][k] += 1
            B[row][i] -= 1
            A[row][j] += 1
            A[row][i] -= 1
        else:
            B[row][i] += 1
            B[row][j] -= 1
            A[row][i] += 1
            A[row][k] -= 1
    return AlexanderPair(_freeze(A), _freeze(B), "full")


def reduce_pair(pair: AlexanderPair, base: int = 1) -> AlexanderPair:
    """Drop column ``base`` and the row of the crossing whose out-arc is ``base``."""
    if pair.kind != "full":
        raise InputError("only a full pair can be reduced")
    if not 1 <= base <= pair.size:
        raise InputError(f"base generator {base} out of range 1..{pair.size}")
    b = base - 1

    def drop(M):
        return tuple(tuple(x for j, x in enumerate(row) if j != b) for i, row in enumerate(M) if i != b)

    return AlexanderPair(drop(pair.A), drop(pair.B), "reduced")


def _freeze(M) -> IntMatrix:
    return tuple(tuple(row) for row in M)


# --- integer polynomials, coefficient lists lowest degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _pdiv_exact(a, b):
    a, q = list(a), [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, rem = divmod(a[k + len(b) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def poly_det(M: Sequence[Sequence[Sequence[int]]]) -> list[int]:
    """Fraction-free (Bareiss) determinant of a matrix over Z[t]."""
    n = len(M)
    if n == 0:
        return [1]
    W = [[_trim(list(e)) for e in row] for row in M]
    sign, prev = 1, [1]
    for k in range(n - 1):
        if not W[k][k]:
            swap = next((i for i in range(k + 1, n) if W[i][k]), None)
            if swap is None:
                return []
            W[k], W[swap] = W[swap], W[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                W[i][j] = _pdiv_exact(_psub(_pmul(W[i][j], W[k][k]), _pmul(W[i][k], W[k][j])), prev)
            W[i][k] = []
        prev = W[k][k]
    det = W[n - 1][n - 1]
    return [sign * c for c in det]


@dataclass(frozen=True)
class LaurentPolyZ:
    """An integer polynomial normalised up to the units +-t^k: lowest
    exponent shifted to 0, lowest coefficient positive."""

    coefficients: tuple[int, ...] = field(default=(1,))

    @classmethod
    def normalized(cls, coeffs: Sequence[int]) -> "LaurentPolyZ":
        c = list(coeffs)
        while c and c[0] == 0:
            c.pop(0)
        _trim(c)
        if not c:
            raise NotAKnot("Alexander polynomial vanishes")
        if c[0] < 0:
            c = [-x for x in c]
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t: int) -> int:
        return sum(c * t**i for i, c in enumerate(self.coefficients))

    def is_knot_polynomial(self) -> bool:
        c = self.coefficients
        if self(1) not in (1, -1):
            return False
        signs = {1 if c[i] == c[-1 - i] else -1 if c[i] == -c[-1 - i] else 0 for i in range(len(c))}
        return signs in ({1}, {-1})

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}{mono}")
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sg} {b}" for sg, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def alexander_polynomial(pair: AlexanderPair) -> LaurentPolyZ:
    if pair.kind != "reduced":
        raise InputError("the Alexander polynomial is the determinant of a reduced pair")
    M = [[[b, -a] for a, b in zip(ra, rb)] for ra, rb in zip(pair.A, pair.B)]
    det = poly_det(M)
    if not det:
        raise NotAKnot("not a knot presentation: det(B - tA) = 0")
    delta = LaurentPolyZ.normalized(det)
    if not delta.is_knot_polynomial():
        raise NotAKnot(f"not a knot presentation: Delta = {delta} fails Delta(1) = +-1 or symmetry")
    return delta


def core_split(delta: LaurentPolyZ, p: int) -> tuple[int, int]:
    """(k, n): number of p-divisible extreme coefficients on each side, and the
    degree of the unit core between them."""
    c = delta.coefficients
    lo = next((i for i, x in enumerate(c) if x % p), None)
    if lo is None:
        raise NotAKnot(f"Delta vanishes mod {p}")
    hi = max(i for i, x in enumerate(c) if x % p)
    return lo, hi - lo


def degree_mod_p(delta: LaurentPolyZ, p: int) -> int:
    return core_split(delta, p)[1]


# --- built-in corpus ---------------------------------------------------------

_PRESENTATIONS = {
    "trefoil": (3, [(3, 1, 2, 1), (1, 2, 3, 1), (2, 3, 1, 1)]),
    # closure of the 3-braid s1 s2^-1 s1 s2^-1
    "figure8": (4, [(1, 4, 3, 1), (2, 3, 1, -1), (3, 2, 4, -1), (4, 1, 2, 1)]),
}

_POLYNOMIALS = {
    "trefoil": (1, -1, 1),
    "figure8": (1, -3, 1),
    "5_1": (1, -1, 1, -1, 1),
    "5_2": (2, -3, 2),
    "6_1": (2, -5, 2),
    "7_4": (4, -7, 4),
}

_ALIASES = {"3_1": "trefoil", "4_1": "figure8", "figure-eight": "figure8", "figure_eight": "figure8"}

BUILTIN_NAMES = tuple(_POLYNOMIALS)


def canonical_name(name: str) -> str:
    key = _ALIASES.get(name, name)
    if key not in _POLYNOMIALS:
        raise UnknownKnot(f"unknown knot {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}")
    return key


def builtin_knot(name: str) -> tuple[KnotPresentation | None, LaurentPolyZ]:
    key = canonical_name(name)
    pres = None
    if key in _PRESENTATIONS:
        m, rows = _PRESENTATIONS[key]
        pres = KnotPresentation(m, tuple(Crossing(*row) for row in rows), key)
    return pres, LaurentPolyZ(_POLYNOMIALS[key])
