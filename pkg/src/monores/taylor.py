"""Taylor resolutions and the Koszul-homology Betti oracle.

The Taylor complex of ``I = (m_1, ..., m_r)`` has one basis element per
subset ``T`` of generators, shifted by ``lcm(T)``.  It is always a resolution
of ``S/I`` but is far from minimal; :func:`resolve` minimalizes it.

:func:`koszul_betti` computes Betti numbers of a monomial quotient module
``L1/L2`` without building any resolution: in multidegree ``b`` the Koszul
complex of ``L1/L2`` is spanned by the squarefree ``tau <= b`` with
``x^(b - tau)`` in ``L1`` but not in ``L2``.  It serves as an oracle for the
Taylor path and as the cheap route for large products.
"""

from __future__ import annotations

import itertools

from . import monomial as mono
from .complexes import BettiTable, ChainComplex, FreeModule, MonomialMatrix, minimalize
from .exceptions import TaylorSizeError
from .field import FieldConfig, _rank_sparse
from .monomial import MonomialIdeal

DEFAULT_MAX_GENS = 16


def _colex(m: int, k: int) -> list:
    return sorted(itertools.combinations(range(m), k), key=lambda T: T[::-1])


def taylor_complex(I: MonomialIdeal, of_quotient: bool = True,
                   max_gens: int = DEFAULT_MAX_GENS) -> ChainComplex:
    """Taylor complex of ``S/I`` (or of ``I`` when ``of_quotient`` is false).

    Basis labels are the sorted index tuples of generator subsets, in colex
    order within each size, and
    ``d e_T = sum_j (-1)^pos(j, T) lcm(T)/lcm(T - j) e_(T - j)``.
    """
    gens = I.gens
    m = len(gens)
    if m > max_gens:
        raise TaylorSizeError(
            f"Taylor complex of {m} generators has 2^{m} = {2 ** m} basis elements; "
            f"the limit is {max_gens} generators (raise it with --max-gens)")
    lcms = {(): mono.unit(I.n)}
    subsets = [_colex(m, k) for k in range(m + 1)]
    for k in range(1, m + 1):
        for T in subsets[k]:
            lcms[T] = mono.lcm(lcms[T[:-1]], gens[T[-1]])
    modules = [FreeModule(tuple((T, lcms[T]) for T in subsets[k])) for k in range(m + 1)]
    diffs = []
    for k in range(1, m + 1):
        src, tgt = modules[k], modules[k - 1]
        coeffs = {}
        for s, T in enumerate(subsets[k]):
            for pos in range(k):
                face = T[:pos] + T[pos + 1:]
                coeffs[(tgt.index(face), s)] = -1 if pos % 2 else 1
        diffs.append(MonomialMatrix.from_coefficients(src, tgt, coeffs))
    if of_quotient:
        return ChainComplex(tuple(modules), tuple(diffs))
    if m == 0:
        return ChainComplex((FreeModule(()),), ())
    return ChainComplex(tuple(modules[1:]), tuple(diffs[1:]))


def resolve(I: MonomialIdeal, as_: str = "quotient", f: FieldConfig | None = None,
            max_gens: int = DEFAULT_MAX_GENS) -> ChainComplex:
    """Minimal free resolution of ``S/I`` (``as_="quotient"``) or of ``I`` (``"ideal"``)."""
    if as_ not in ("quotient", "ideal"):
        raise ValueError(f"as_ must be 'quotient' or 'ideal', got {as_!r}")
    f = f or FieldConfig()
    return minimalize(taylor_complex(I, as_ == "quotient", max_gens), f)


def koszul_betti(numerator: MonomialIdeal, denominator: MonomialIdeal,
                 f: FieldConfig) -> BettiTable:
    """Betti table of ``numerator / denominator`` (which must contain the denominator).

    Pass the unit ideal as numerator for ``S/L`` and the zero ideal as
    denominator for ``L`` itself.  Betti degrees of such a module lie in the
    lcm lattice of both generating sets, so only those degrees are visited.
    """
    n = numerator.n
    if denominator.n != n:
        raise mono.DimensionError(f"ideals in {n} and {denominator.n} variables")
    num, den = numerator.gens, denominator.gens

    def in_module(m):
        return (any(mono.divides(g, m) for g in num)
                and not any(mono.divides(g, m) for g in den))

    lattice = {mono.unit(n)}
    for g in set(num) | set(den):
        lattice |= {mono.lcm(g, x) for x in lattice}
    entries = {}
    for b in sorted(lattice):
        support = [k for k in range(n) if b[k]]
        faces: list = [[] for _ in range(len(support) + 1)]
        for k in range(len(support) + 1):
            for tau in itertools.combinations(support, k):
                m = list(b)
                for v in tau:
                    m[v] -= 1
                if in_module(m):
                    faces[k].append(tau)
        index = [{tau: r for r, tau in enumerate(fk)} for fk in faces]
        ranks = [0] * (len(faces) + 1)
        for k in range(1, len(faces)):
            rows = []
            for tau in faces[k]:
                row = {}
                for pos in range(k):
                    r = index[k - 1].get(tau[:pos] + tau[pos + 1:])
                    if r is not None:
                        row[r] = f.coerce(-1 if pos % 2 else 1)
                if row:
                    rows.append(row)
            ranks[k] = _rank_sparse(rows, f)
        for k, fk in enumerate(faces):
            h = len(fk) - ranks[k] - ranks[k + 1]
            if h:
                entries[(k, b)] = h
    return BettiTable(entries, f)


def upper_koszul_betti(I: MonomialIdeal, f: FieldConfig) -> BettiTable:
    """Betti table of the ideal ``I`` (not ``S/I``) from Koszul simplicial complexes."""
    return koszul_betti(I, MonomialIdeal.zero(I.n), f)
