"""Multigraded free complexes with monomial-matrix differentials.

A :class:`ChainComplex` is a list of free modules ``terms[0..p]`` whose basis
elements carry monomial shifts, plus the differentials
``d_i: terms[i] -> terms[i-1]`` for ``i = 1..p`` stored in
``differentials[i - 1]``.  Every matrix entry is a field coefficient times the
monomial ``shift(source) / shift(target)``.

Degreewise questions reduce to linear algebra: in multidegree ``b`` the
strand of the complex is spanned by the basis elements whose shift divides
``b``, and every entry becomes its bare coefficient.  Two degrees that are
divided by the same set of shifts have identical strands, so it is enough to
look at the joins (lcms) of sets of shifts; see :func:`scan_degrees`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from . import monomial as mono
from .exceptions import InvalidComplexError, NotAcyclicError
from .field import DenseMatrix, FieldConfig, _rank_sparse, homology_dim


@dataclass(frozen=True)
class FreeModule:
    basis: tuple  # ((label, shift), ...)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = tuple((label, tuple(shift)) for label, shift in self.basis)
        object.__setattr__(self, "basis", basis)
        index = {label: k for k, (label, _) in enumerate(basis)}
        if len(index) != len(basis):
            raise ValueError("basis labels must be unique")
        object.__setattr__(self, "_index", index)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> list:
        return [label for label, _ in self.basis]

    @property
    def shifts(self) -> list:
        return [shift for _, shift in self.basis]

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def shift(self, k: int):
        return self.basis[k][1]


@dataclass(frozen=True)
class MonomialMatrix:
    """Homogeneous map ``source -> target``.

    ``entries[(t, s)] = (coeff, mono)`` is the entry in target row ``t`` and
    source column ``s``.
    """

    source: FreeModule
    target: FreeModule
    entries: dict

    @classmethod
    def from_coefficients(cls, source: FreeModule, target: FreeModule, coeffs: dict):
        """Build from ``{(t, s): coeff}``, filling in the monomial part from the shifts."""
        entries = {}
        for (t, s), c in coeffs.items():
            if c:
                entries[(t, s)] = (c, mono.quotient(source.shift(s), target.shift(t)))
        return cls(source, target, entries)

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule):
        return cls(source, target, {})

    def columns(self) -> dict:
        """``{s: [(t, coeff), ...]}`` with targets in increasing order."""
        cols: dict = {}
        for (t, s), (c, _) in sorted(self.entries.items()):
            cols.setdefault(s, []).append((t, c))
        return cols


@dataclass(frozen=True)
class ChainComplex:
    terms: tuple
    differentials: tuple
    # field the coefficients already live in; None means exact ints / Fractions
    field: FieldConfig | None = None

    def __post_init__(self):
        terms = tuple(self.terms) or (FreeModule(()),)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != len(terms) - 1:
            raise ValueError(
                f"{len(terms)} terms need {len(terms) - 1} differentials, "
                f"got {len(self.differentials)}")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def n(self) -> int | None:
        for T in self.terms:
            if T.basis:
                return len(T.basis[0][1])
        return None

    def d(self, i: int) -> MonomialMatrix:
        return self.differentials[i - 1]

    def ranks(self) -> list:
        return [T.rank for T in self.terms]

    def all_shifts(self) -> list:
        return [s for T in self.terms for s in T.shifts]


@dataclass
class ValidationReport:
    ok: bool
    kind: str | None = None  # "shape" | "homogeneity" | "zero-coefficient" | "composition"
    index: int | None = None
    pair: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "kind": self.kind, "index": self.index,
                "pair": list(self.pair) if self.pair is not None else None,
                "message": self.message}


def _is_zero(c, f: FieldConfig | None) -> bool:
    return not (f.coerce(c) if f is not None else c)


def validate(C: ChainComplex, f: FieldConfig | None = None) -> ValidationReport:
    """Check homogeneity of every entry and ``d_{i-1} d_i = 0``.

    Coefficients are compared in ``f``, else in ``C.field``, else exactly.
    Returns a report describing the first violation instead of raising.
    """
    f = f or C.field
    for i in range(1, C.length + 1):
        d = C.d(i)
        if d.source != C.terms[i] or d.target != C.terms[i - 1]:
            return ValidationReport(False, "shape", i, None,
                                    f"d_{i} does not map term {i} to term {i - 1}")
        for (t, s), (c, m) in sorted(d.entries.items()):
            if not (0 <= t < d.target.rank and 0 <= s < d.source.rank):
                return ValidationReport(False, "shape", i, (t, s), "entry out of range")
            if _is_zero(c, f):
                return ValidationReport(False, "zero-coefficient", i, (t, s),
                                        "stored zero coefficient")
            if mono.mul(d.target.shift(t), m) != d.source.shift(s):
                return ValidationReport(
                    False, "homogeneity", i, (t, s),
                    f"shift {d.source.shift(s)} != {d.target.shift(t)} * {m}")
    for i in range(2, C.length + 1):
        upper = C.d(i).columns()
        lower = C.d(i - 1).columns()
        for s in sorted(upper):
            acc: dict = {}
            for t, c1 in upper[s]:
                m1 = C.d(i).entries[(t, s)][1]
                for u, c2 in lower.get(t, ()):
                    m2 = C.d(i - 1).entries[(u, t)][1]
                    key = (u, mono.mul(m1, m2))
                    acc[key] = acc.get(key, 0) + c2 * c1
            for (u, m), c in sorted(acc.items()):
                if not _is_zero(c, f):
                    return ValidationReport(
                        False, "composition", i, (u, s),
                        f"d_{i - 1} d_{i} has coefficient {c} * {mono.format_monomial(m)} "
                        f"from element {s} of term {i} to element {u} of term {i - 2}")
    return ValidationReport(True)


# -- degreewise strands -----------------------------------------------------

def _strand_sparse(C: ChainComplex, b) -> tuple[list, list]:
    """Dimensions of the degree-``b`` strand and its maps as sparse row lists."""
    pos = []
    for T in C.terms:
        pos.append({k: r for r, k in enumerate(
            k for k, (_, s) in enumerate(T.basis) if mono.divides(s, b))})
    maps = []
    for i in range(1, C.length + 1):
        src, tgt = pos[i], pos[i - 1]
        rows: dict = {}
        for (t, s), (c, _) in C.d(i).entries.items():
            if s in src:
                # t's shift divides s's shift, so t is in the strand too
                rows.setdefault(tgt[t], {})[src[s]] = c
        maps.append(rows)
    return [len(p) for p in pos], maps


def _to_dense(rows: dict, nrows: int, ncols: int) -> DenseMatrix:
    A = DenseMatrix.zeros(nrows, ncols)
    for r, row in rows.items():
        for c, x in row.items():
            A.entries[r][c] = x
    return A


def evaluate_at_degree(C: ChainComplex, b) -> list:
    """Field matrices of the degree-``b`` strand: element ``i - 1`` is ``d_i``."""
    dims, maps = _strand_sparse(C, b)
    return [_to_dense(maps[i - 1], dims[i - 1], dims[i]) for i in range(1, C.length + 1)]


def _strand_maps(C, b):
    dims = [sum(1 for s in T.shifts if mono.divides(s, b)) for T in C.terms]
    mats = evaluate_at_degree(C, b)
    return dims, mats


def homology_at(C: ChainComplex, i: int, b, f: FieldConfig) -> int:
    if i < 0 or i > C.length:
        return 0
    dims, mats = _strand_maps(C, b)
    d_out = mats[i - 1] if i >= 1 else DenseMatrix.zeros(0, dims[0])
    d_in = mats[i] if i < C.length else DenseMatrix.zeros(dims[i], 0)
    return homology_dim(d_in, d_out, f)


def h0_hilbert_at(C: ChainComplex, b, f: FieldConfig) -> int:
    """Dimension of the degree-``b`` part of ``coker(d_1)``."""
    dims, maps = _strand_sparse(C, b)
    if C.length == 0:
        return dims[0]
    return dims[0] - _sparse_rank(maps[0], f)


def _sparse_rank(rows: dict, f: FieldConfig) -> int:
    coerced = []
    for row in rows.values():
        r = {c: f.coerce(x) for c, x in row.items()}
        r = {c: x for c, x in r.items() if x}
        if r:
            coerced.append(r)
    return _rank_sparse(coerced, f)


def scan_degrees(shifts: Iterable, extra: Iterable = (), n: int | None = None) -> list:
    """Closure of ``shifts + extra + {1}`` under pairwise lcm, in sorted order."""
    ms = [tuple(m) for m in itertools.chain(shifts, extra)]
    if n is None:
        if not ms:
            raise ValueError("cannot infer the variable count from an empty set")
        n = len(ms[0])
    lattice = {mono.unit(n)}
    for m in set(ms):
        if m not in lattice:
            lattice |= {mono.lcm(m, x) for x in lattice}
    return sorted(lattice)


def box_degrees(top) -> list:
    """Every multidegree dividing ``top``."""
    return list(itertools.product(*(range(e + 1) for e in top)))


@dataclass
class AcyclicityResult:
    acyclic: bool
    witness: tuple | None = None  # (i, b, dim)
    degrees_checked: int = 0

    def __bool__(self):
        return self.acyclic


def is_acyclic(C: ChainComplex, f: FieldConfig, mode: str = "lattice") -> AcyclicityResult:
    """Check ``H_i(C) = 0`` for ``i >= 1`` in every multidegree.

    ``mode="lattice"`` visits the lcm-closure of the shifts, which suffices
    because every strand equals the strand at the join of the shifts dividing
    its degree.  ``mode="box"`` visits every degree dividing the join of all
    shifts and exists as a brute-force cross-check.
    """
    shifts = C.all_shifts()
    if not shifts or C.length == 0:
        return AcyclicityResult(True)
    if mode == "lattice":
        degrees = scan_degrees(shifts)
    elif mode == "box":
        degrees = box_degrees(mono.lcm_all(shifts, len(shifts[0])))
    else:
        raise ValueError(f"unknown scan mode {mode!r}")
    for b in degrees:
        dims, maps = _strand_sparse(C, b)
        ranks = [0] + [_sparse_rank(m, f) for m in maps] + [0]
        for i in range(1, C.length + 1):
            h = dims[i] - ranks[i] - ranks[i + 1]
            if h:
                return AcyclicityResult(False, (i, b, h), len(degrees))
    return AcyclicityResult(True, None, len(degrees))


# -- Betti tables -----------------------------------------------------------

@dataclass
class BettiTable:
    """Multigraded Betti numbers ``{(i, multidegree): dim}``; zeros are omitted."""

    entries: dict
    field: FieldConfig

    def __post_init__(self):
        self.entries = {(i, tuple(b)): d for (i, b), d in self.entries.items() if d}

    def __eq__(self, other):
        return (isinstance(other, BettiTable) and self.entries == other.entries
                and self.field == other.field)

    def __bool__(self):
        return bool(self.entries)

    def graded(self) -> dict:
        """Collapse multidegrees to total degree: ``{(i, deg): count}``."""
        out: dict = {}
        for (i, b), d in self.entries.items():
            key = (i, mono.degree(b))
            out[key] = out.get(key, 0) + d
        return dict(sorted(out.items()))

    def totals(self) -> list:
        """Total Betti number per homological index."""
        top = max((i for i, _ in self.entries), default=-1)
        out = [0] * (top + 1)
        for (i, _), d in self.entries.items():
            out[i] += d
        return out

    def shifted(self, k: int) -> "BettiTable":
        """Move every entry from index ``i`` to ``i + k``, dropping negative indices."""
        return BettiTable({(i + k, b): d for (i, b), d in self.entries.items() if i + k >= 0},
                          self.field)

    def sorted_entries(self) -> list:
        return sorted(self.entries.items(),
                      key=lambda kv: (kv[0][0], mono.degree(kv[0][1]), kv[0][1]))

    def to_dict(self) -> dict:
        return {
            "field": self.field.name,
            "entries": [{"i": i, "multidegree": list(b), "total": mono.degree(b), "dim": d}
                        for (i, b), d in self.sorted_entries()],
        }

    def format(self) -> str:
        """Betti diagram: column ``i``, row ``deg - i``."""
        g = self.graded()
        if not g:
            return f"zero module (field {self.field.name})"
        cols = range(max(i for i, _ in g) + 1)
        rows = sorted({deg - i for i, deg in g})
        width = max(4, max(len(str(v)) for v in g.values()) + 1)
        lines = [f"field {self.field.name}",
                 "      " + "".join(f"{i:>{width}}" for i in cols),
                 "total:" + "".join(f"{t:>{width}}" for t in self.totals())]
        for r in rows:
            cells = "".join(f"{(g.get((i, r + i)) or '.'):>{width}}" for i in cols)
            lines.append(f"{r:>5}:" + cells)
        return "\n".join(lines)


def betti_numbers(C: ChainComplex, f: FieldConfig, check: bool = True) -> BettiTable:
    """Betti table of the module resolved by the acyclic complex ``C``.

    Computed as the multigraded homology of ``C`` tensored with the field: only
    entries with unit monomial survive, and each exact multidegree is
    treated separately.
    """
    if check:
        res = is_acyclic(C, f)
        if not res:
            i, b, h = res.witness
            raise NotAcyclicError(f"H_{i} is nonzero in degree {b} (dim {h})")
    by_shift: dict = {}
    for i, T in enumerate(C.terms):
        for k, s in enumerate(T.shifts):
            by_shift.setdefault(s, {}).setdefault(i, []).append(k)
    entries = {}
    for b, groups in by_shift.items():
        pos = {i: {k: r for r, k in enumerate(ks)} for i, ks in groups.items()}
        ranks = [0] * (C.length + 2)
        for i in range(1, C.length + 1):
            src, tgt = pos.get(i), pos.get(i - 1)
            if not src or not tgt:
                continue
            rows: dict = {}
            for (t, s), (c, m) in C.d(i).entries.items():
                if s in src and t in tgt:
                    rows.setdefault(tgt[t], {})[src[s]] = c
            ranks[i] = _sparse_rank(rows, f)
        for i, ks in groups.items():
            h = len(ks) - ranks[i] - ranks[i + 1]
            if h:
                entries[(i, b)] = h
    return BettiTable(entries, f)


def reg_pd(B: BettiTable, shift_for_module: int = 0) -> tuple[int, int]:
    """Regularity ``max(deg b - i)`` and projective dimension ``max i``.

    ``shift_for_module`` relabels index ``i`` as ``i + shift_for_module``
    first; ``-1`` turns the table of ``S/I`` into the table of ``I``.
    """
    B = B.shifted(shift_for_module) if shift_for_module else B
    if not B.entries:
        raise ValueError("regularity of the zero module is undefined")
    reg = max(mono.degree(b) - i for i, b in B.entries)
    pd = max(i for i, _ in B.entries)
    return reg, pd


# -- minimalization ---------------------------------------------------------

def minimalize(C: ChainComplex, f: FieldConfig) -> ChainComplex:
    """Cancel unit entries until none remain.

    Each cancellation of an invertible entry ``c`` at ``(t, s)`` of ``d_i``
    deletes ``s`` and ``t`` and replaces ``d_i`` by ``d_i - d_i[:, s] c^-1
    d_i[t, :]``; this is a homotopy equivalence.  Indices are processed from
    the bottom up and sources in basis order; cancelling never creates a unit
    entry in a column already passed, so one sweep per index suffices.
    """
    p = C.length
    shifts = [T.shifts for T in C.terms]
    alive = [set(range(T.rank)) for T in C.terms]
    # col[i][s] = {t: c}, row[i][t] = {s: c} for d_i; index 0 and p+1 stay empty
    col = [dict() for _ in range(p + 2)]
    row = [dict() for _ in range(p + 2)]
    for i in range(1, p + 1):
        for (t, s), (c, _) in C.d(i).entries.items():
            c = f.coerce(c)
            if c:
                col[i].setdefault(s, {})[t] = c
                row[i].setdefault(t, {})[s] = c
    prime = f.kind == "prime"
    P = f.p

    for i in range(1, p + 1):
        for s in range(C.terms[i].rank):
            column = col[i].get(s)
            if not column:
                continue
            units = [t for t in column if shifts[i - 1][t] == shifts[i][s]]
            if not units:
                continue
            t = min(units)
            cinv = f.inv(column[t])
            column = col[i].pop(s)
            row_t = row[i].pop(t)
            for t2 in column:
                if t2 != t:
                    del row[i][t2][s]
            for s2 in row_t:
                if s2 != s:
                    del col[i][s2][t]
            for t2, a in column.items():
                if t2 == t:
                    continue
                factor = a * cinv
                r2 = row[i].setdefault(t2, {})
                for s2, bb in row_t.items():
                    if s2 == s:
                        continue
                    c2 = col[i][s2]
                    x = c2.get(t2, 0) - factor * bb
                    if prime:
                        x %= P
                    if x:
                        c2[t2] = x
                        r2[s2] = x
                    else:
                        c2.pop(t2, None)
                        r2.pop(s2, None)
            for s3 in row[i + 1].pop(s, {}):
                del col[i + 1][s3][s]
            for t3 in col[i - 1].pop(t, {}):
                del row[i - 1][t3][t]
            alive[i].discard(s)
            alive[i - 1].discard(t)

    keep = [sorted(a) for a in alive]
    while len(keep) > 1 and not keep[-1]:
        keep.pop()
    terms = []
    newpos = []
    for i, ks in enumerate(keep):
        T = C.terms[i]
        terms.append(FreeModule(tuple(T.basis[k] for k in ks)))
        newpos.append({k: r for r, k in enumerate(ks)})
    diffs = []
    for i in range(1, len(terms)):
        coeffs = {}
        for s, column in col[i].items():
            for t, c in column.items():
                coeffs[(newpos[i - 1][t], newpos[i][s])] = c
        diffs.append(MonomialMatrix.from_coefficients(terms[i], terms[i - 1], coeffs))
    return ChainComplex(tuple(terms), tuple(diffs), f)


__all__ = [
    "FreeModule", "MonomialMatrix", "ChainComplex", "ValidationReport", "validate",
    "evaluate_at_degree", "homology_at", "h0_hilbert_at", "scan_degrees", "box_degrees",
    "AcyclicityResult", "is_acyclic", "BettiTable", "betti_numbers", "reg_pd", "minimalize",
]
