"""Herzog's star product of multigraded free modules, maps and complexes.

The star product ``F*G`` of two free modules has basis ``f*g`` with shift
``lcm(u_f, u_g)``, so it has the rank of ``F (x) G`` but smaller shifts.  For
an ideal ``I`` and a module ``M`` whose generator supports are disjoint, the
star product of the minimal resolutions of ``S/I`` and ``M`` resolves
``M/IM``; :func:`resolve_product` builds it and certifies it degree by
degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import monomial as mono
from .complexes import (ChainComplex, FreeModule, MonomialMatrix, betti_numbers,
                        h0_hilbert_at, is_acyclic, reg_pd, scan_degrees, validate)
from .field import FieldConfig
from .monomial import MonomialIdeal
from .taylor import DEFAULT_MAX_GENS, koszul_betti, resolve
from .exceptions import HypothesisError


def star_module(F: FreeModule, G: FreeModule) -> FreeModule:
    return FreeModule(tuple(((a, b), mono.lcm(u, v)) for a, u in F.basis for b, v in G.basis))


def j_map(F: FreeModule, G: FreeModule) -> MonomialMatrix:
    """The monomorphism ``F (x) G -> F*G``, ``f (x) g |-> gcd(u_f, u_g) f*g``."""
    tensor = FreeModule(tuple(((a, b), mono.mul(u, v)) for a, u in F.basis for b, v in G.basis))
    star = star_module(F, G)
    return MonomialMatrix.from_coefficients(tensor, star, {(k, k): 1 for k in range(star.rank)})


def star_map_left(phi: MonomialMatrix, H: FreeModule, sign=1) -> MonomialMatrix:
    """``phi * Id(H)``: entry ``(g*h, f*h) = a_fg * lcm(u_h, u_f) / lcm(u_h, u_g)``."""
    src = star_module(phi.source, H)
    tgt = star_module(phi.target, H)
    r = H.rank
    entries = {}
    for (t, s), (c, _) in phi.entries.items():
        uf, ug = phi.source.shift(s), phi.target.shift(t)
        for k, (_, uh) in enumerate(H.basis):
            m = mono.quotient(mono.lcm(uh, uf), mono.lcm(uh, ug))
            entries[(t * r + k, s * r + k)] = (c * sign, m)
    return MonomialMatrix(src, tgt, entries)


def star_map_right(H: FreeModule, psi: MonomialMatrix, sign=1) -> MonomialMatrix:
    """``Id(H) * psi``, the mirror image of :func:`star_map_left`."""
    src = star_module(H, psi.source)
    tgt = star_module(H, psi.target)
    rs, rt = psi.source.rank, psi.target.rank
    entries = {}
    for (t, s), (c, _) in psi.entries.items():
        ug, ug2 = psi.source.shift(s), psi.target.shift(t)
        for k, (_, uh) in enumerate(H.basis):
            m = mono.quotient(mono.lcm(uh, ug), mono.lcm(uh, ug2))
            entries[(k * rt + t, k * rs + s)] = (c * sign, m)
    return MonomialMatrix(src, tgt, entries)


def star_complex(Fc: ChainComplex, Gc: ChainComplex) -> ChainComplex:
    """Total complex of ``F_j * G_k`` with ``d = phi_j * Id + (-1)^j Id * psi_k``.

    Term ``i`` lists the blocks ``F_j * G_{i-j}`` by ascending ``j``; labels
    are ``((j, f_label), (k, g_label))``.
    """
    if Fc.field is not None and Gc.field is not None and Fc.field != Gc.field:
        raise ValueError("complexes have coefficients in different fields")
    fld = Fc.field or Gc.field
    p, q = Fc.length, Gc.length
    blocks = []  # blocks[i] = [(j, k, offset)]
    terms = []
    for i in range(p + q + 1):
        basis, blk, off = [], [], 0
        for j in range(max(0, i - q), min(p, i) + 1):
            k = i - j
            blk.append((j, k, off))
            for a, u in Fc.terms[j].basis:
                for b, v in Gc.terms[k].basis:
                    basis.append((((j, a), (k, b)), mono.lcm(u, v)))
            off += Fc.terms[j].rank * Gc.terms[k].rank
        blocks.append({(j, k): o for j, k, o in blk})
        terms.append(FreeModule(tuple(basis)))

    def lift(c):
        return fld.reduce(c) if fld is not None else c

    diffs = []
    for i in range(1, p + q + 1):
        entries = {}
        for (j, k), off in blocks[i].items():
            if j >= 1:
                piece = star_map_left(Fc.d(j), Gc.terms[k])
                toff = blocks[i - 1][(j - 1, k)]
                for (t, s), (c, m) in piece.entries.items():
                    entries[(toff + t, off + s)] = (lift(c), m)
            if k >= 1:
                sign = -1 if j % 2 else 1
                piece = star_map_right(Fc.terms[j], Gc.d(k), sign)
                toff = blocks[i - 1][(j, k - 1)]
                for (t, s), (c, m) in piece.entries.items():
                    entries[(toff + t, off + s)] = (lift(c), m)
        diffs.append(MonomialMatrix(terms[i], terms[i - 1], entries))
    return ChainComplex(tuple(terms), tuple(diffs), fld)


# -- verification pipeline --------------------------------------------------

MODULE_KINDS = ("quotient", "ideal")


def module_gens_set(J: MonomialIdeal, kind: str) -> frozenset:
    """Variables in the generator degrees of ``S/J`` (none) or of ``J``."""
    if kind == "quotient":
        return frozenset()
    if kind == "ideal":
        return mono.gens_set(J.gens)
    raise ValueError(f"module kind must be 'quotient' or 'ideal', got {kind!r}")


def shared_variables(I: MonomialIdeal, J: MonomialIdeal, kind: str) -> list:
    return sorted(mono.gens_set(I.gens) & module_gens_set(J, kind))


def _module_text(J, kind):
    return f"S/({mono.format_ideal(J)})" if kind == "quotient" else f"({mono.format_ideal(J)})"


@dataclass
class VerificationReport:
    I: str
    M: str
    kind: str
    field: str
    ranks: list
    length: int
    valid: bool
    acyclic: bool
    h0_agrees: bool
    degrees_checked: int = 0
    validation: dict = field(default_factory=dict)
    acyclic_witness: list | None = None
    h0_witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.valid and self.acyclic and self.h0_agrees

    def to_dict(self) -> dict:
        return {
            "I": self.I, "M": self.M, "kind": self.kind, "field": self.field,
            "ranks": self.ranks, "length": self.length,
            "verdicts": {"validate": self.valid, "acyclic": self.acyclic,
                         "h0_hilbert": self.h0_agrees},
            "degrees_checked": self.degrees_checked,
            "validation": self.validation,
            "acyclic_witness": self.acyclic_witness,
            "h0_witness": self.h0_witness,
        }


def expected_h0(I: MonomialIdeal, J: MonomialIdeal, kind: str):
    """Hilbert function of ``M/IM`` by ideal membership, as a callable on degrees."""
    if kind == "quotient":
        s = mono.ideal_sum(I, J)
        return lambda b: 0 if mono.contains(s, b) else 1
    p = mono.ideal_product(I, J)
    return lambda b: int(mono.contains(J, b)) - int(mono.contains(p, b))


def resolve_product(I: MonomialIdeal, J: MonomialIdeal, kind: str = "quotient",
                    f: FieldConfig | None = None, max_gens: int = DEFAULT_MAX_GENS):
    """Star product of the minimal resolutions of ``S/I`` and ``M`` (``S/J`` or ``J``).

    Refuses with :class:`HypothesisError` when the generator supports of ``I``
    and ``M`` share a variable.  Returns ``(complex, VerificationReport)``;
    the report checks ``d^2 = 0``, acyclicity, and that the Hilbert function
    of ``H_0`` matches that of ``M/IM`` on the lcm lattice of the shifts
    together with the generators of ``I + J`` and ``IJ``.
    """
    f = f or FieldConfig()
    shared = shared_variables(I, J, kind)
    if shared:
        raise HypothesisError(shared)
    F = resolve(I, "quotient", f, max_gens)
    G = resolve(J, kind, f, max_gens)
    C = star_complex(F, G)
    val = validate(C)
    acyc = is_acyclic(C, f) if val else None
    hilbert = expected_h0(I, J, kind)
    extra = mono.ideal_sum(I, J).gens + mono.ideal_product(I, J).gens
    degrees = scan_degrees(C.all_shifts(), extra, n=I.n)
    h0_witness = None
    if val:
        for b in degrees:
            got, want = h0_hilbert_at(C, b, f), hilbert(b)
            if got != want:
                h0_witness = {"degree": list(b), "expected": want, "got": got}
                break
    report = VerificationReport(
        I=mono.format_ideal(I), M=_module_text(J, kind), kind=kind, field=f.name,
        ranks=C.ranks(), length=C.length, valid=bool(val),
        acyclic=bool(acyc), h0_agrees=bool(val) and h0_witness is None,
        degrees_checked=len(degrees), validation=val.to_dict(),
        acyclic_witness=(None if acyc is None or acyc.witness is None
                         else [acyc.witness[0], list(acyc.witness[1]), acyc.witness[2]]),
        h0_witness=h0_witness)
    return C, report


@dataclass
class BoundsReport:
    I: str
    M: str
    kind: str
    field: str
    pd_quotient: int  # pd(M/IM)
    pd_M: int
    pd_I: int
    reg_IM: int
    reg_I: int
    reg_M: int
    overlap: list
    intersection_is_product: bool

    @property
    def verdict_pd(self) -> bool:
        return self.pd_quotient <= self.pd_M + self.pd_I + 1

    @property
    def verdict_reg(self) -> bool:
        return self.reg_IM <= self.reg_I + self.reg_M

    def to_dict(self) -> dict:
        return {
            "I": self.I, "M": self.M, "kind": self.kind, "field": self.field,
            "pd": {"M/IM": self.pd_quotient, "M": self.pd_M, "I": self.pd_I},
            "reg": {"IM": self.reg_IM, "I": self.reg_I, "M": self.reg_M},
            "overlap": [f"x{i}" for i in self.overlap],
            "verdicts": {"pd_bound": self.verdict_pd, "reg_bound": self.verdict_reg,
                         "intersection_is_product": self.intersection_is_product},
        }


def module_tables(I: MonomialIdeal, J: MonomialIdeal, kind: str, f: FieldConfig) -> dict:
    """Betti tables of ``I``, ``M``, ``IM`` and ``M/IM``, each computed on its own."""
    n = I.n
    one, zero = MonomialIdeal.unit_ideal(n), MonomialIdeal.zero(n)
    if kind == "quotient":
        s = mono.ideal_sum(I, J)
        return {"I": koszul_betti(I, zero, f), "M": koszul_betti(one, J, f),
                "IM": koszul_betti(s, J, f), "M/IM": koszul_betti(one, s, f)}
    if kind == "ideal":
        p = mono.ideal_product(I, J)
        return {"I": koszul_betti(I, zero, f), "M": koszul_betti(J, zero, f),
                "IM": koszul_betti(p, zero, f), "M/IM": koszul_betti(J, p, f)}
    raise ValueError(f"module kind must be 'quotient' or 'ideal', got {kind!r}")


def check_bounds(I: MonomialIdeal, J: MonomialIdeal, kind: str = "ideal",
                 f: FieldConfig | None = None) -> BoundsReport:
    """Compare ``pd(M/IM)`` and ``reg(IM)`` against the bounds from ``I`` and ``M``.

    No star complex is involved: every side comes from the Betti table of
    its own module.  Works for any pair; the overlap of the generator
    supports of ``I`` and ``J`` is reported alongside.
    """
    f = f or FieldConfig()
    tables = module_tables(I, J, kind, f)
    reg_I, pd_I = reg_pd(tables["I"])
    reg_M, pd_M = reg_pd(tables["M"])
    reg_IM, _ = reg_pd(tables["IM"])
    _, pd_q = reg_pd(tables["M/IM"])
    return BoundsReport(
        I=mono.format_ideal(I), M=_module_text(J, kind), kind=kind, field=f.name,
        pd_quotient=pd_q, pd_M=pd_M, pd_I=pd_I, reg_IM=reg_IM, reg_I=reg_I, reg_M=reg_M,
        overlap=sorted(mono.gens_set(I.gens) & mono.gens_set(J.gens)),
        intersection_is_product=(mono.ideal_intersection(I, J) == mono.ideal_product(I, J)))


def star_betti(I: MonomialIdeal, J: MonomialIdeal, kind: str, f: FieldConfig):
    """Betti table of ``M/IM`` read off the star complex (for comparison with :func:`check_bounds`)."""
    C, report = resolve_product(I, J, kind, f)
    return betti_numbers(C, f, check=False), report
