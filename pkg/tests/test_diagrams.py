import random
from fractions import Fraction as F

import pytest

from tracelin import diagrams, fincat, harness
from tracelin.diagrams import (
    ChainDiagram, FinSetDiagram, NatEndo, VectDiagram, chain_map_space,
    coinvariants_group, colim_fin_set, colim_vect, hocolim_EI,
    hocolim_groupoid, hocolim_hofin, induced_endo_colim,
    induced_endo_fin_set, invariant_dims, linearize, nat_endo_basis,
    vect_to_chain, weighted_colim_vect, weighted_colim_endo,
)
from tracelin.exactalg import (
    ChainComplex, ChainMap, Mat, cone, cone_endo, homology_dims,
    identity_chain_map, lefschetz, rank, trace,
)
from tracelin.fincat import bg_category, cyclic_group, opposite


def terminal():
    return fincat.FinCat(["x"], [("i", "x", "x")], {"x": "i"},
                         {("i", "i"): "i"}, name="one")


def discrete2():
    return harness.discrete_category(2)


def span():
    return harness.span_category()


def idem_cat():
    return harness.idempotent_category()


# ---------------------------------------------------------------------------
# linearization

def set_endo_diagram(fn, n):
    cat = terminal()
    d = FinSetDiagram(cat, {"x": list(range(n))}, {"i": {i: i for i in range(n)}})
    lin = linearize(d)
    m = Mat.zeros(n, n)
    for i in range(n):
        m.data[fn[i]][i] = F(1)
    return lin, m


def test_linearize_identity_counts_fixed_points():
    lin, m = set_endo_diagram({0: 0, 1: 1, 2: 2}, 3)
    assert trace(m) == 3


def test_linearize_cycle_has_no_fixed_points():
    lin, m = set_endo_diagram({0: 1, 1: 2, 2: 0}, 3)
    assert trace(m) == 0


def test_linearize_constant_fixes_one_point():
    lin, m = set_endo_diagram({0: 0, 1: 0, 2: 0}, 3)
    assert trace(m) == 1


def test_linearize_is_functorial():
    cat = span()
    d = FinSetDiagram(
        cat, {"a": [0], "b": [0, 1], "c": [0, 1, 2]},
        {"a": {0: 0}, "b": {0: 0, 1: 1}, "c": {0: 0, 1: 1, 2: 2},
         "f": {0: 1}, "g": {0: 2}})
    lin = linearize(d)
    assert lin.violations() == []


# ---------------------------------------------------------------------------
# strict colimits

def test_colim_discrete_is_direct_sum():
    cat = discrete2()
    x = VectDiagram(cat, {"o0": 2, "o1": 3},
                    {"o0": Mat.identity(2), "o1": Mat.identity(3)})
    assert colim_vect(x).dim == 5


def test_colim_idempotent_is_rank_of_idempotent():
    cat = idem_cat()
    e = Mat([[0, 0], [1, 1]])
    x = VectDiagram(cat, {"x": 2}, {"x": Mat.identity(2), "e": e})
    assert colim_vect(x).dim == rank(e) == 1


def test_colim_regular_action_has_dimension_one():
    cat = bg_category(cyclic_group(2))
    x = VectDiagram(cat, {"x": 2},
                    {("g", 0): Mat.identity(2), ("g", 1): Mat([[0, 1], [1, 0]])})
    assert colim_vect(x).dim == 1


def test_colim_cocone_commutes_and_covers():
    cat = span()
    x = VectDiagram(cat, {"a": 1, "b": 2, "c": 1},
                    {"a": Mat.identity(1), "b": Mat.identity(2),
                     "c": Mat.identity(1), "f": Mat([[1], [0]]),
                     "g": Mat([[1]])})
    res = colim_vect(x)
    for arr in cat.nonidentity():
        s, t = cat.src[arr], cat.dst[arr]
        assert res.cocone(t) @ x.mat(arr) == res.cocone(s)
    stacked = Mat.zeros(res.dim, 0)
    from tracelin.exactalg import hstack
    assert rank(hstack([res.cocone(o) for o in cat.objects])) == res.dim


def test_idempotent_colim_trace_is_trace_against_idempotent():
    cat = idem_cat()
    e = Mat([[0, 0], [1, 1]])
    x = VectDiagram(cat, {"x": 2}, {"x": Mat.identity(2), "e": e})
    f = Mat([[1, 0], [2, 3]])
    res, ind = induced_endo_colim(x, NatEndo(x, {"x": f}))
    assert trace(ind) == trace(e @ f)


def test_weighted_colim_constant_weight_is_colim():
    cat = span()
    x = VectDiagram(cat, {"a": 1, "b": 2, "c": 1},
                    {"a": Mat.identity(1), "b": Mat.identity(2),
                     "c": Mat.identity(1), "f": Mat([[1], [1]]),
                     "g": Mat([[2]])})
    wcat = opposite(cat)
    w = VectDiagram(wcat, {o: 1 for o in cat.objects},
                    {a: Mat.identity(1) for a in cat.arrows})
    assert weighted_colim_vect(w, x).dim == colim_vect(x).dim


def test_weighted_colim_over_point_is_tensor():
    cat = terminal()
    x = VectDiagram(cat, {"x": 3}, {"i": Mat.identity(3)})
    w = VectDiagram(opposite(cat), {"x": 2}, {"i": Mat.identity(2)})
    assert weighted_colim_vect(w, x).dim == 6


def test_weighted_colim_representable_weight_evaluates():
    cat = span()
    # weight = arrows into b, contravariantly
    wcat = opposite(cat)
    dims = {o: len(cat.hom(o, "b")) for o in cat.objects}
    mats = {}
    for arr in cat.arrows:
        s, t = cat.src[arr], cat.dst[arr]
        basis = cat.hom(t, "b")
        idx = {u: i for i, u in enumerate(cat.hom(s, "b"))}
        m = Mat.zeros(len(idx), len(basis))
        for j, u in enumerate(basis):
            m.data[idx[cat.then(arr, u)]][j] = F(1)
        mats[arr] = m
    w = VectDiagram(wcat, dims, mats)
    x = VectDiagram(cat, {"a": 1, "b": 2, "c": 3},
                    {"a": Mat.identity(1), "b": Mat.identity(2),
                     "c": Mat.identity(3), "f": Mat([[1], [1]]),
                     "g": Mat([[1], [0], [2]])})
    assert weighted_colim_vect(w, x).dim == x.dim("b")


def test_nat_endo_basis_dimensions():
    cat = discrete2()
    x = VectDiagram(cat, {"o0": 2, "o1": 1},
                    {"o0": Mat.identity(2), "o1": Mat.identity(1)})
    assert len(nat_endo_basis(x)) == 5
    two = harness.arrow_category()
    x2 = VectDiagram(two, {"a": 2, "b": 2},
                     {"a": Mat.identity(2), "b": Mat.identity(2),
                      "f": Mat([[1, 1], [0, 1]])})
    assert len(nat_endo_basis(x2)) == 4
    bc2 = bg_category(cyclic_group(2))
    xr = VectDiagram(bc2, {"x": 2},
                     {("g", 0): Mat.identity(2),
                      ("g", 1): Mat([[0, 1], [1, 0]])})
    assert len(nat_endo_basis(xr)) == 2


def test_nat_endo_basis_members_are_natural():
    rng = random.Random(2)
    cat = harness.gen_hofin_category(3)
    dia, endo = harness.gen_chain_diagram(3, cat)
    assert NatEndo(dia, endo.components).violations() == []


# ---------------------------------------------------------------------------
# homotopy colimits, strictly homotopy finite shapes

def test_hocolim_over_point_is_the_value():
    cat = terminal()
    cx = ChainComplex({0: 1, 1: 2}, {1: Mat([[1, 0]])})
    dia = ChainDiagram(cat, {"x": cx}, {"i": identity_chain_map(cx)})
    res = hocolim_hofin(dia)
    assert homology_dims(res.complex) == homology_dims(cx)
    f = NatEndo(dia, {"x": identity_chain_map(cx)})
    assert lefschetz(res.induce(f)) == lefschetz(identity_chain_map(cx))


def _span_chain_case(seed):
    rng = random.Random(seed)
    cx = harness.random_complex(rng, 2, 0, 2)
    cy = harness.random_complex(rng, 2, 0, 2)
    basis = chain_map_space(cx, cy)
    fmap = None
    for b in basis:
        t = b.smul(F(rng.randint(-2, 2)))
        fmap = t if fmap is None else fmap + t
    if fmap is None:
        fmap = ChainMap(cx, cy, {})
    zero = ChainComplex({}, {})
    dia = ChainDiagram(
        span(), {"a": cx, "b": cy, "c": zero},
        {"a": identity_chain_map(cx), "b": identity_chain_map(cy),
         "c": identity_chain_map(zero), "f": fmap,
         "g": ChainMap(cx, zero, {})})
    endo = harness.rand_combo_endo(rng, nat_endo_basis(dia))
    if endo is None:
        endo = NatEndo(dia, {o: identity_chain_map(dia.cx(o))
                             for o in dia.base.objects})
    return dia, fmap, endo


def test_hocolim_pushout_with_zero_leg_matches_cone():
    for seed in range(8):
        dia, fmap, endo = _span_chain_case(seed)
        res = hocolim_hofin(dia)
        lhs = lefschetz(res.induce(endo))
        _cc, ce = cone_endo(fmap, endo.at("a"), endo.at("b"))
        assert lhs == lefschetz(ce)
        # the homotopy pushout and the cone have the same homology
        assert homology_dims(res.complex) == homology_dims(_cc)


def test_hocolim_pushout_additivity():
    rng = random.Random(31)
    cat = span()
    c1 = harness.random_complex(rng, 2, 0, 1)
    dia = ChainDiagram(cat, {"a": c1, "b": c1, "c": c1},
                       {"a": identity_chain_map(c1),
                        "b": identity_chain_map(c1),
                        "c": identity_chain_map(c1),
                        "f": identity_chain_map(c1),
                        "g": identity_chain_map(c1)})
    endo = harness.rand_combo_endo(rng, nat_endo_basis(dia))
    if endo is None:
        endo = NatEndo(dia, {o: identity_chain_map(c1) for o in cat.objects})
    res = hocolim_hofin(dia)
    lhs = lefschetz(res.induce(endo))
    rhs = (lefschetz(endo.at("b")) + lefschetz(endo.at("c"))
           - lefschetz(endo.at("a")))
    assert lhs == rhs


def test_hocolim_total_dimension_counts_strings():
    cat = harness.gen_hofin_category(12)
    dia, _endo = harness.gen_chain_diagram(12, cat)
    res = hocolim_hofin(dia)
    total = 0
    for level in fincat.enumerate_strings(cat):
        for (start, _arrs) in level:
            total += dia.cx(start).total_dim()
    assert res.complex.total_dim() == total


def test_hocolim_rejects_bad_base():
    cat = bg_category(cyclic_group(2))
    cx = ChainComplex({0: 1}, {})
    dia = ChainDiagram(cat, {"x": cx},
                       {("g", 0): identity_chain_map(cx),
                        ("g", 1): identity_chain_map(cx)})
    with pytest.raises(ValueError):
        hocolim_hofin(dia)


# ---------------------------------------------------------------------------
# coinvariants and groupoid homotopy colimits

def test_coinvariants_trivial_action():
    cat = bg_category(cyclic_group(2))
    cx = ChainComplex({0: 2}, {})
    dia = ChainDiagram(cat, {"x": cx},
                       {("g", 0): identity_chain_map(cx),
                        ("g", 1): identity_chain_map(cx)})
    f = NatEndo(dia, {"x": ChainMap(cx, cx, {0: Mat([[1, 2], [0, 3]])})})
    sub, ind, inc, proj = coinvariants_group(dia, f)
    assert sub.dims == cx.dims
    assert lefschetz(ind) == lefschetz(f.at("x"))


def test_coinvariants_regular_action():
    cat = bg_category(cyclic_group(2))
    cx = ChainComplex({0: 2}, {})
    dia = ChainDiagram(cat, {"x": cx},
                       {("g", 0): identity_chain_map(cx),
                        ("g", 1): ChainMap(cx, cx, {0: Mat([[0, 1], [1, 0]])})})
    f = NatEndo(dia, {"x": identity_chain_map(cx)})
    sub, ind, inc, proj = coinvariants_group(dia, f)
    assert sub.dims == {0: 1}
    # split identities and agreement with the invariant subspace
    for n in sub.dims:
        assert (proj.mat(n) @ inc.mat(n)).is_identity()
    assert invariant_dims(dia) == {n: sub.dim(n) for n in sub.dims}


def test_coinvariants_averaged_trace_formula():
    for gname in ["C2", "C3", "C4", "S3"]:
        for seed in range(3):
            dia, endo = harness.group_chain_diagram(seed, gname)
            _sub, ind, _i, _p = coinvariants_group(dia, endo)
            g = harness.GROUPS[gname]
            total = F(0)
            for x in g.elements:
                total += lefschetz(endo.at("x").compose(dia.map(("g", x))))
            assert lefschetz(ind) == total / len(g)


def test_hocolim_groupoid_on_disjoint_union():
    c2 = cyclic_group(2)
    c3 = cyclic_group(3)
    cat = fincat.disjoint_union(bg_category(c2), bg_category(c3))
    cx2 = ChainComplex({0: 2}, {})
    cx3 = ChainComplex({0: 3}, {})
    swap = Mat([[0, 1], [1, 0]])
    rot = Mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    maps = {}
    for x in c2.elements:
        maps[(0, ("g", x))] = ChainMap(cx2, cx2,
                                       {0: Mat.identity(2) if x == 0 else swap})
    for x in c3.elements:
        m = Mat.identity(3)
        for _ in range(x):
            m = rot @ m
        maps[(1, ("g", x))] = ChainMap(cx3, cx3, {0: m})
    dia = ChainDiagram(cat, {(0, "x"): cx2, (1, "x"): cx3}, maps)
    f = NatEndo(dia, {(0, "x"): identity_chain_map(cx2),
                      (1, "x"): identity_chain_map(cx3)})
    total, ind, parts = hocolim_groupoid(dia, f)
    # one invariant line per free summand
    assert total.dims == {0: 2}
    assert lefschetz(ind) == 2


def test_hocolim_ei_agrees_with_hofin_pipeline():
    for seed in [0, 5, 9]:
        cat = harness.gen_hofin_category(seed, max_objects=4, max_edges=5)
        dia, endo = harness.gen_chain_diagram(seed, cat)
        res = hocolim_hofin(dia)
        lhs = lefschetz(res.induce(endo))
        _res2, ind2 = hocolim_EI(dia, endo)
        assert lhs == lefschetz(ind2)


def test_hocolim_ei_agrees_with_coinvariants():
    for gname in ["C2", "C3", "S3"]:
        dia, endo = harness.group_chain_diagram(7, gname)
        _sub, ind, _i, _p = coinvariants_group(dia, endo)
        _res, ind2 = hocolim_EI(dia, endo)
        assert lefschetz(ind) == lefschetz(ind2)


def test_hocolim_ei_on_skeletalizable_groupoid():
    cat = fincat.connected_groupoid(cyclic_group(2), 2)
    cx = ChainComplex({0: 2}, {})
    swap = Mat([[0, 1], [1, 0]])
    maps = {}
    for a in cat.arrows:
        (_, x, i, j) = a
        maps[a] = ChainMap(cx, cx, {0: Mat.identity(2) if x == 0 else swap})
    dia = ChainDiagram(cat, {o: cx for o in cat.objects}, maps)
    f = NatEndo(dia, {o: identity_chain_map(cx) for o in cat.objects})
    _res, ind = hocolim_EI(dia, f)
    _total, ind2, _parts = hocolim_groupoid(dia, f)
    assert lefschetz(ind) == lefschetz(ind2) == 1


# ---------------------------------------------------------------------------
# set-level colimits

def test_set_pushout_of_injections_counts():
    cat = span()
    d = FinSetDiagram(
        cat, {"a": [0, 1], "b": [0, 1, 2], "c": [0, 1, 2, 3]},
        {"a": {0: 0, 1: 1}, "b": {i: i for i in range(3)},
         "c": {i: i for i in range(4)},
         "f": {0: 0, 1: 1}, "g": {0: 0, 1: 1}})
    reps, assign = colim_fin_set(d)
    assert len(reps) == 3 + 4 - 2
    lin = linearize(d)
    assert colim_vect(lin).dim == len(reps)


def test_induced_endo_on_set_colimit():
    cat = span()
    d = FinSetDiagram(
        cat, {"a": [0], "b": [0, 1], "c": [0, 1]},
        {"a": {0: 0}, "b": {0: 0, 1: 1}, "c": {0: 0, 1: 1},
         "f": {0: 0}, "g": {0: 0}})
    _out, fixed = induced_endo_fin_set(
        d, {"a": {0: 0}, "b": {0: 0, 1: 0}, "c": {0: 0, 1: 1}})
    assert fixed == 1 + 2 - 1


def test_orbit_quotient_of_group_action():
    c3 = cyclic_group(3)
    cat = bg_category(c3)
    d = FinSetDiagram(cat, {"x": [0, 1, 2]},
                      {("g", k): {i: (i + k) % 3 for i in range(3)}
                       for k in c3.elements})
    reps, _assign = colim_fin_set(d)
    assert len(reps) == 1


def test_empty_shape_edge_cases():
    cat = harness.discrete_category(0)
    dia = ChainDiagram(cat, {}, {})
    res = hocolim_hofin(dia)
    assert res.complex.total_dim() == 0
    f = NatEndo(dia, {})
    assert lefschetz(res.induce(f)) == 0
