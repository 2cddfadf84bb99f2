"""Monomials as exponent tuples, and monomial ideals.

A monomial in ``n`` variables is a plain ``tuple`` of ``n`` non-negative
ints; position ``i`` holds the exponent of ``x{i+1}``.  Keeping them as bare
tuples makes them hashable, cheap to compare and usable as dict keys for
multidegrees.

Ideals are stored by their minimal generators, sorted in descending
lexicographic order of exponent vectors (so ``x1^2*x2`` comes before
``x1*x2*x3``), which makes every printed result deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exceptions import DimensionError, ParseError

Monomial = tuple  # tuple[int, ...]


def unit(n: int) -> Monomial:
    return (0,) * n


def variable(i: int, n: int) -> Monomial:
    """The monomial ``x{i}`` (1-based) in ``n`` variables."""
    if not 1 <= i <= n:
        raise DimensionError(f"x{i} is not a variable of a ring in {n} variables")
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def _check(a, b):
    if len(a) != len(b):
        raise DimensionError(f"monomials in {len(a)} and {len(b)} variables")


def lcm(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x if x >= y else y for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x if x <= y else y for x, y in zip(a, b))


def lcm_gcd(a: Monomial, b: Monomial) -> tuple[Monomial, Monomial]:
    return lcm(a, b), gcd(a, b)


def mul(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """Exact quotient ``a / b``; raises ``ValueError`` when ``b`` does not divide ``a``."""
    _check(a, b)
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError(f"{format_monomial(b)} does not divide {format_monomial(a)}")
    return q


def degree(a: Monomial) -> int:
    return sum(a)


def is_unit(a: Monomial) -> bool:
    return not any(a)


def lcm_all(ms: Iterable[Monomial], n: int) -> Monomial:
    out = unit(n)
    for m in ms:
        out = lcm(out, m)
    return out


def _sort_key(m):
    # descending lex on exponent vectors
    return tuple(-e for e in m)


def sort_monomials(ms: Iterable[Monomial]) -> list[Monomial]:
    return sorted(set(ms), key=_sort_key)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generating set.

    Use :func:`minimal_generators` (or :func:`parse_ideal`) to build one
    from an arbitrary generating set; the constructor only checks.
    """

    n: int
    gens: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(e) for e in g) for g in self.gens)
        for g in gens:
            if len(g) != self.n:
                raise DimensionError(f"generator {g} is not in {self.n} variables")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
        if list(gens) != sort_monomials(gens):
            raise ValueError("generators must be distinct and sorted (descending lex)")
        for a in gens:
            for b in gens:
                if a != b and divides(a, b):
                    raise ValueError(
                        f"{format_monomial(a)} divides {format_monomial(b)}: not minimal")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @classmethod
    def unit_ideal(cls, n: int) -> "MonomialIdeal":
        return cls(n, (unit(n),))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and is_unit(self.gens[0])

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m):
        return contains(self, m)

    def __str__(self):
        return format_ideal(self)


def minimal_generators(ms: Iterable[Monomial], n: int | None = None) -> MonomialIdeal:
    """Inclusion-minimal subset of ``ms`` under divisibility."""
    ms = [tuple(m) for m in ms]
    if n is None:
        if not ms:
            raise DimensionError("cannot infer the variable count of an empty generating set")
        n = len(ms[0])
    for m in ms:
        if len(m) != n:
            raise DimensionError(f"monomial {m} is not in {n} variables")
    keep: list[Monomial] = []
    # a divisor always has total degree <= its multiple
    for m in sorted(set(ms), key=lambda m: (degree(m), _sort_key(m))):
        if not any(divides(k, m) for k in keep):
            keep.append(m)
    return MonomialIdeal(n, tuple(sort_monomials(keep)))


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.n != J.n:
        raise DimensionError(f"ideals in {I.n} and {J.n} variables")


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimal_generators(I.gens + J.gens, I.n)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimal_generators((mul(a, b) for a in I.gens for b in J.gens), I.n)


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcms (valid for monomial ideals only)."""
    _same_ring(I, J)
    return minimal_generators((lcm(a, b) for a in I.gens for b in J.gens), I.n)


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    if len(m) != I.n:
        raise DimensionError(f"monomial {m} is not in {I.n} variables")
    return any(divides(g, m) for g in I.gens)


def gens_set(shifts: Iterable[Monomial]) -> frozenset:
    """Indices (1-based) of the variables dividing at least one of ``shifts``."""
    out = set()
    for m in shifts:
        out.update(i + 1 for i, e in enumerate(m) if e > 0)
    return frozenset(out)


@dataclass(frozen=True)
class Polarization:
    """Variable map of a polarization.

    ``variables[k] == (i, j)`` means new variable ``k`` (0-based) is the
    ``j``-th copy (1-based) of old variable ``x{i+1}``.
    """

    n: int
    variables: tuple

    @property
    def new_n(self) -> int:
        return len(self.variables)

    def depolarize_monomial(self, m: Monomial) -> Monomial:
        out = [0] * self.n
        for e, (i, _) in zip(m, self.variables):
            out[i] += e
        return tuple(out)

    def depolarize(self, I: MonomialIdeal) -> MonomialIdeal:
        return minimal_generators((self.depolarize_monomial(g) for g in I.gens), self.n)


def polarize(I: MonomialIdeal) -> tuple[MonomialIdeal, Polarization]:
    # every variable keeps at least one copy so squarefree ideals map to themselves
    copies = [max([1] + [g[i] for g in I.gens]) for i in range(I.n)]
    variables = tuple((i, j) for i in range(I.n) for j in range(1, copies[i] + 1))
    offset = [sum(copies[:i]) for i in range(I.n)]
    new_n = len(variables)
    gens = []
    for g in I.gens:
        m = [0] * new_n
        for i, e in enumerate(g):
            for j in range(e):
                m[offset[i] + j] = 1
        gens.append(tuple(m))
    return minimal_generators(gens, new_n), Polarization(I.n, variables)


def restriction_ideal(I: MonomialIdeal, shift: Monomial) -> MonomialIdeal:
    """Ideal generated by ``lcm(u, shift) / shift`` over the generators ``u`` of ``I``."""
    if len(shift) != I.n:
        raise DimensionError(f"shift {shift} is not in {I.n} variables")
    return minimal_generators((quotient(lcm(u, shift), shift) for u in I.gens), I.n)


# -- text grammar -----------------------------------------------------------

_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def _parse_factors(text: str) -> list[tuple[int, int]]:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty monomial")
    if s == "1":
        return []
    out = []
    for factor in s.split("*"):
        match = _FACTOR.fullmatch(factor)
        if match is None:
            raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
        i = int(match.group(1))
        e = int(match.group(2)) if match.group(2) is not None else 1
        if i < 1:
            raise ParseError(f"variables are numbered from x1, got x{i}")
        out.append((i, e))
    return out


def _split_ideal(text: str) -> list[list[tuple[int, int]]]:
    s = re.sub(r"\s+", "", text)
    if s in ("", "0", "()"):
        return []
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return [_parse_factors(part) for part in s.split(",")]


def _build(factors, n):
    m = [0] * n
    for i, e in factors:
        if i > n:
            raise DimensionError(f"x{i} is not a variable of a ring in {n} variables")
        m[i - 1] += e
    return tuple(m)


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    factors = _parse_factors(text)
    if n is None:
        n = max((i for i, _ in factors), default=0)
    return _build(factors, n)


def parse_ideals(texts: Sequence[str], n: int | None = None) -> list[MonomialIdeal]:
    """Parse several ideals into one common ring.

    Without ``n`` the ring has as many variables as the largest index used.
    """
    parsed = [_split_ideal(t) for t in texts]
    if n is None:
        n = max((i for p in parsed for fs in p for i, _ in fs), default=1)
    return [minimal_generators([_build(fs, n) for fs in p], n) for p in parsed]


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    return parse_ideals([text], n)[0]


def format_monomial(m: Monomial) -> str:
    parts = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "0"
    return ", ".join(format_monomial(g) for g in I.gens)
