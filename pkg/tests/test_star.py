import json

import pytest

from monores import monomial as mono
from monores.complexes import (ChainComplex, FreeModule, MonomialMatrix, betti_numbers,
                               h0_hilbert_at, is_acyclic, minimalize, reg_pd, validate)
from monores.exceptions import HypothesisError
from monores.experiments import draw_pair, make_rng
from monores.field import FieldConfig
from monores.monomial import parse_ideal, parse_ideals
from monores.star import (check_bounds, j_map, resolve_product, star_complex, star_map_left,
                          star_map_right, star_module)
from monores.taylor import koszul_betti, resolve, taylor_complex

GF = FieldConfig()


def module(*shifts):
    return FreeModule(tuple((k, s) for k, s in enumerate(shifts)))


def test_star_module_shifts_and_rank():
    assert star_module(module((2, 0)), module((0, 1))).shifts == [(2, 1)]
    assert star_module(module((1, 1, 0)), module((0, 1, 1))).shifts == [(1, 1, 1)]
    F = module((1, 0), (0, 1))
    G = module((0, 0), (1, 1), (2, 0))
    P = star_module(F, G)
    assert P.rank == 6
    assert P.labels == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_j_map():
    assert j_map(module((2, 0)), module((0, 1))).entries == {(0, 0): (1, (0, 0))}
    assert j_map(module((1, 1, 0)), module((0, 1, 1))).entries == {(0, 0): (1, (0, 1, 0))}
    G = module((1, 0), (0, 2))
    J = j_map(module((0, 0)), G)
    assert J.entries == {(0, 0): (1, (0, 0)), (1, 1): (1, (0, 0))}
    assert J.source.shifts == J.target.shifts == G.shifts


def test_star_map_left_formula():
    F1, F0 = module((2, 0)), module((0, 0))
    phi = MonomialMatrix.from_coefficients(F1, F0, {(0, 0): 1})
    out = star_map_left(phi, module((0, 1)))
    assert out.entries == {(0, 0): (1, (2, 0))}
    # u_h = 1 gives back phi
    assert star_map_left(phi, module((0, 0))).entries == phi.entries


def test_star_map_left_with_overlap():
    F, Fp = module((1, 1, 0)), module((0, 1, 0))
    phi = MonomialMatrix.from_coefficients(F, Fp, {(0, 0): 1})
    out = star_map_left(phi, module((0, 1, 1)))
    # lcm(x2x3, x1x2) / lcm(x2x3, x2) = x1x2x3 / x2x3 = x1
    assert out.entries == {(0, 0): (1, (1, 0, 0))}


def test_star_map_right_mirrors_left():
    F, Fp = module((1, 1, 0), (0, 2, 1)), module((0, 1, 0))
    phi = MonomialMatrix.from_coefficients(F, Fp, {(0, 0): 3, (0, 1): -2})
    H = module((0, 1, 1), (1, 0, 0))
    left = star_map_left(phi, H)
    right = star_map_right(H, phi)
    r = H.rank
    swapped = {}
    for (t, s), v in left.entries.items():
        # (f, h) position f*r + h  <->  (h, f) position h*rank + f
        swapped[((t % r) * Fp.rank + t // r, (s % r) * F.rank + s // r)] = v
    assert swapped == right.entries


def test_star_of_koszul_pieces_is_koszul():
    I, J = parse_ideals(["x1^2", "x2"])
    C = star_complex(taylor_complex(I), taylor_complex(J))
    K = taylor_complex(mono.ideal_sum(I, J))
    assert [sorted(T.shifts) for T in C.terms] == [sorted(T.shifts) for T in K.terms]
    assert [T.shifts for T in C.terms] == [[(0, 0)], [(0, 1), (2, 0)], [(2, 1)]]

    def by_shift(X, i):
        return {(X.terms[i - 1].shift(t), X.terms[i].shift(s)): v
                for (t, s), v in X.d(i).entries.items()}

    for i in (1, 2):
        assert by_shift(C, i) == by_shift(K, i)


def test_star_with_trivial_factor():
    F = ChainComplex((module((0, 0, 0)),), ())
    G = resolve(parse_ideal("x1*x2, x2*x3^2"), "quotient", GF)
    C = star_complex(F, G)
    assert C.ranks() == G.ranks()
    assert [T.shifts for T in C.terms] == [T.shifts for T in G.terms]
    assert all(C.d(i).entries.keys() == G.d(i).entries.keys() for i in range(1, C.length + 1))


def star_cases():
    out = []
    for t in range(12):
        rng = make_rng(99, t)
        scenario = ("disjoint", "overlap1", "overlap2")[t % 3]
        pair = draw_pair(scenario, rng)
        if pair is not None:
            out.append(pair)
    return out


@pytest.mark.parametrize("pair", star_cases(),
                         ids=lambda p: f"{mono.format_ideal(p[0])}|{mono.format_ideal(p[1])}")
def test_star_complex_always_valid_and_rank_identity(pair):
    I, J = pair
    for kind in ("quotient", "ideal"):
        F, G = resolve(I, "quotient", GF), resolve(J, kind, GF)
        C = star_complex(F, G)
        assert validate(C)
        assert C.length == F.length + G.length
        for i in range(C.length + 1):
            assert C.terms[i].rank == sum(F.terms[j].rank * G.terms[i - j].rank
                                          for j in range(F.length + 1)
                                          if 0 <= i - j <= G.length)
        # unminimized inputs too
        assert validate(star_complex(taylor_complex(I), taylor_complex(J)))


def test_resolve_product_x1sq_and_quotient_x2():
    I, J = parse_ideals(["x1^2", "x2"])
    C, report = resolve_product(I, J, "quotient", GF)
    assert report.ok
    assert report.degrees_checked == 4
    # S/(x1^2, x2): only the degree 1 survives among the four lattice points
    want = {(0, 0): 1, (2, 0): 0, (0, 1): 0, (2, 1): 0}
    assert {b: h0_hilbert_at(C, b, GF) for b in want} == want


def test_resolve_product_against_direct_resolution():
    I, J = parse_ideals(["x2, x3", "x1^2, x4^3"])
    C, report = resolve_product(I, J, "quotient", GF)
    assert report.ok
    star_table = betti_numbers(C, GF)
    direct = betti_numbers(resolve(mono.ideal_sum(I, J), "quotient", GF), GF)
    assert star_table == direct
    bounds = check_bounds(I, J, "quotient", GF)
    assert bounds.verdict_pd and bounds.verdict_reg
    C2, report2 = resolve_product(I, J, "ideal", GF)
    assert report2.ok
    assert betti_numbers(C2, GF) == koszul_betti(J, mono.ideal_product(I, J), GF)


def test_resolve_product_refuses_overlap():
    I, J = parse_ideals(["x2", "x2*x3"])
    with pytest.raises(HypothesisError) as info:
        resolve_product(I, J, "ideal", GF)
    assert info.value.shared == (2,)
    assert "x2" in str(info.value)
    # a quotient S/J is generated in degree zero, so the same pair is accepted
    _, report = resolve_product(I, J, "quotient", GF)
    assert report.ok


def test_star_fails_outside_hypothesis():
    I, J = parse_ideals(["x2, x3", "x1^2*x2, x1*x2*x3, x2*x3*x4, x3*x4^2"])
    C = star_complex(resolve(I, "quotient", GF), resolve(J, "ideal", GF))
    assert validate(C)
    res = is_acyclic(C, GF)
    h0_ok = all(h0_hilbert_at(C, b, GF) == int(mono.contains(J, b))
                - int(mono.contains(mono.ideal_product(I, J), b))
                for b in [(1, 1, 1, 0), (2, 2, 0, 0)])
    assert not (res and h0_ok)


def test_check_bounds_examples():
    I, J = parse_ideals(["x2, x3", "x1^2*x2, x1*x2*x3, x2*x3*x4, x3*x4^2"])
    b = check_bounds(I, J, "ideal", GF)
    assert (b.reg_I, b.reg_M, b.reg_IM) == (1, 3, 5)
    assert not b.verdict_reg
    assert b.overlap == [2, 3]

    b = check_bounds(*parse_ideals(["x1", "x2"]), "ideal", GF)
    assert (b.reg_I, b.reg_M, b.reg_IM) == (1, 1, 2)
    assert b.verdict_reg and b.verdict_pd and b.intersection_is_product

    b = check_bounds(*parse_ideals(["x1*x2", "x2*x3"]), "ideal", GF)
    assert b.reg_IM == 4 and (b.reg_I, b.reg_M) == (2, 2)
    assert b.verdict_reg and b.overlap == [2]


def test_check_bounds_sides_match_minimal_resolutions():
    for t in range(10):
        I, J = draw_pair("disjoint", make_rng(7, t))
        b = check_bounds(I, J, "ideal", GF)
        assert (b.reg_I, b.pd_I) == reg_pd(betti_numbers(resolve(I, "ideal", GF), GF))
        assert (b.reg_M, b.pd_M) == reg_pd(betti_numbers(resolve(J, "ideal", GF), GF))
        IJ = mono.ideal_product(I, J)
        if len(IJ) <= 10:
            assert b.reg_IM == reg_pd(betti_numbers(resolve(IJ, "ideal", GF), GF))[0]
        C, _ = resolve_product(I, J, "ideal", GF)
        assert b.pd_quotient == reg_pd(betti_numbers(minimalize(C, GF), GF))[1]


def test_report_json():
    I, J = parse_ideals(["x1^2", "x2"])
    _, report = resolve_product(I, J, "quotient", GF)
    d = json.loads(json.dumps(report.to_dict()))
    assert d["I"] == "x1^2" and d["M"] == "S/(x2)" and d["field"] == "gf32003"
    assert d["verdicts"] == {"validate": True, "acyclic": True, "h0_hilbert": True}
    b = json.loads(json.dumps(check_bounds(I, J, "quotient", GF).to_dict()))
    assert set(b["verdicts"]) == {"pd_bound", "reg_bound", "intersection_is_product"}
    assert b["reg"] == {"IM": 2, "I": 2, "M": 0}
