from fractions import Fraction as F

import pytest

from tracelin import coeffs, diagrams, fincat, harness
from tracelin.coeffs import (
    CoeffVector, NoWeighting, Weighting, coeff_EI, coeff_EI_desouza,
    coeff_cofiber, coeff_coproduct, coeff_group, coeff_groupoid,
    coeff_hofin, coeff_idempotent, coeff_initial, coeff_pushout,
    leinster_weighting, realiz_coeff_check, stabilizer_orbit_identity,
    weighting_from_coeffs,
)
from tracelin.exactalg import ChainComplex, Mat, identity_chain_map, lefschetz
from tracelin.fincat import (
    FinCat, bg_category, cyclic_group, disjoint_union, subgroup,
    symmetric_group,
)


def test_coeff_hofin_pushout_shape():
    cv = coeff_hofin(harness.span_category())
    assert dict(cv.items()) == {"a": F(-1), "b": F(1), "c": F(1)}


def test_coeff_hofin_parallel_arrows():
    for n in range(1, 5):
        cv = coeff_hofin(fincat.parallel_arrows(n + 1))
        vals = [v for _, v in cv.items()]
        assert vals == [F(-n), F(1)]


def test_coeff_hofin_walking_arrow_with_hocolim_oracle():
    cat = harness.arrow_category()
    cv = coeff_hofin(cat)
    assert dict(cv.items()) == {"a": F(0), "b": F(1)}
    # hocolim oracle: the colimit over the walking arrow evaluates at the
    # target, so the trace must be the trace at b
    cx = ChainComplex({0: 2}, {})
    dia = diagrams.ChainDiagram(
        cat, {"a": cx, "b": cx},
        {"a": identity_chain_map(cx), "b": identity_chain_map(cx),
         "f": identity_chain_map(cx)})
    from tracelin.exactalg import ChainMap
    f = diagrams.NatEndo(dia, {"a": ChainMap(cx, cx, {0: Mat([[1, 1], [0, 2]])}),
                               "b": ChainMap(cx, cx, {0: Mat([[1, 1], [0, 2]])})})
    res = diagrams.hocolim_hofin(dia)
    assert lefschetz(res.induce(f)) == 3 == harness.linearity_rhs(cv, dia, f)


def test_coeff_group_values_and_total():
    assert [str(v) for _, v in coeff_group(cyclic_group(1)).items()] == ["1"]
    assert [str(v) for _, v in coeff_group(cyclic_group(2)).items()] \
        == ["1/2", "1/2"]
    s3 = coeff_group(symmetric_group(3))
    assert sorted(str(v) for _, v in s3.items()) == ["1/2", "1/3", "1/6"]
    for g in [cyclic_group(2), cyclic_group(4), symmetric_group(3)]:
        assert sum(v for _, v in coeff_group(g).items()) == 1


def test_coeff_groupoid_discrete_is_all_ones():
    cv = coeff_groupoid(harness.discrete_category(3))
    assert all(v == 1 for _, v in cv.items())


def test_coeff_groupoid_disjoint_union_blocks():
    cat = disjoint_union(bg_category(cyclic_group(2)),
                         bg_category(cyclic_group(3)))
    cv = coeff_groupoid(cat)
    assert sorted(str(v) for _, v in cv.items()) \
        == ["1/2", "1/2", "1/3", "1/3", "1/3"]


def test_coeff_groupoid_connected_reduces_to_skeleton():
    cat = fincat.connected_groupoid(cyclic_group(2), 2)
    cv = coeff_groupoid(cat)
    assert sorted(str(v) for _, v in cv.items()) == ["1/2", "1/2"]


def test_coeff_ei_collapses_to_hofin_on_posets():
    for cat in [harness.span_category(), harness.arrow_category(),
                fincat.delta_prime_op(2)]:
        a = coeff_EI(cat)
        b = coeff_hofin(cat)
        assert dict(a.items()) == dict(b.items())


def test_coeff_ei_collapses_to_group_on_one_object_groupoids():
    for g in [cyclic_group(2), cyclic_group(4), symmetric_group(3)]:
        cat = bg_category(g)
        assert dict(coeff_EI(cat).items()) == dict(coeff_group(g, cat).items())


def test_coeff_ei_equals_desouza_on_corpus():
    corp = harness.corpus()
    for name, entry in corp.items():
        cat = entry["cat"]
        if not fincat.is_EI(cat):
            continue
        assert coeff_EI(cat) == coeff_EI_desouza(cat), name


def test_coeff_ei_hom_category_against_hocolim_oracle():
    c2 = cyclic_group(2)
    cat = fincat.category_from_group_hom(c2, c2, {0: 0, 1: 1})
    phi = coeff_EI(cat)
    rng = __import__("random").Random(4)
    for _ in range(5):
        dia, endo = harness._ei_chain_case(rng, cat)
        _res, ind = diagrams.hocolim_EI(dia, endo)
        assert lefschetz(ind) == harness.linearity_rhs(phi, dia, endo)


def test_stabilizer_orbit_full_group_is_orbit_count():
    g = symmetric_group(3)
    subs = harness._subgroups("S3")
    rng = __import__("random").Random(9)
    zset, action = harness._random_gset(rng, g, subs)
    lhs, rhs = stabilizer_orbit_identity(g, zset, action, list(g.elements))
    uf = fincat.UnionFind(zset)
    for x in g.elements:
        for z in zset:
            uf.union(z, action(x, z))
    assert lhs == rhs == len(uf.groups())


def test_stabilizer_orbit_identity_on_cosets():
    g = cyclic_group(4)
    h = subgroup(g, [0, 2])
    helems = set(h.elements)
    cosets = []
    for x in g.elements:
        c = frozenset(g.mul(x, y) for y in helems)
        if c not in cosets:
            cosets.append(c)

    def action(x, c):
        return frozenset(g.mul(x, y) for y in c)

    lhs, rhs = stabilizer_orbit_identity(g, cosets, action, [0])
    assert lhs == rhs == F(1, len(h))


def test_stabilizer_orbit_rejects_unclosed_subset():
    g = symmetric_group(3)
    flip = (1, 0, 2)
    with pytest.raises(ValueError):
        stabilizer_orbit_identity(g, list(g.elements),
                                  lambda x, z: g.mul(x, z), [flip])


def test_leinster_weighting_closed_forms():
    for g in [cyclic_group(2), cyclic_group(3), symmetric_group(3)]:
        w = leinster_weighting(bg_category(g))
        assert w["x"] == F(1, len(g))
    w = leinster_weighting(harness.idempotent_category())
    assert w["x"] == F(1, 2)
    w = leinster_weighting(harness.span_category())
    assert (w["a"], w["b"], w["c"]) == (F(-1), F(1), F(1))


class _HomCountStub:
    """Duck-typed shape with prescribed hom-set sizes.

    Only the weighting solver's interface is provided; the hom-count
    matrix here has dependent rows with an inconsistent right side, which
    no small honest category in the corpus exhibits.
    """

    def __init__(self, counts):
        self.objects = tuple(range(len(counts)))
        self._counts = counts

    def hom(self, a, b):
        return tuple(range(self._counts[a][b]))


def test_leinster_no_weighting_certificate():
    stub = _HomCountStub([[2, 2], [1, 1]])
    res = leinster_weighting(stub)
    assert isinstance(res, NoWeighting)
    # the certificate pairs to zero against every hom-count column but
    # not against the all-ones vector
    for b in stub.objects:
        col = sum(res.certificate[i] * len(stub.hom(a, b))
                  for i, a in enumerate(stub.objects))
        assert col == 0
    assert sum(res.certificate) != 0


def test_weighting_from_coeffs_on_posets_and_groups():
    cat = harness.span_category()
    w = weighting_from_coeffs(cat, coeff_hofin(cat))
    assert w.violations() == []
    g = cyclic_group(3)
    bg = bg_category(g)
    w = weighting_from_coeffs(bg, coeff_group(g, bg))
    assert w["x"] == F(1, 3)


def test_weighting_from_coeffs_refuses_nonfree_action():
    cat = harness.idempotent_category()
    with pytest.raises(ValueError):
        weighting_from_coeffs(cat, coeff_idempotent(cat))


def test_fixed_tables():
    assert [v for _, v in
            coeff_coproduct(harness.discrete_category(2)).items()] \
        == [F(1), F(1)]
    assert list(coeff_initial(harness.discrete_category(0)).items()) == []
    assert dict(coeff_idempotent(harness.idempotent_category()).items()) \
        == {"x": F(0), "e": F(1)}
    assert dict(coeff_cofiber(harness.arrow_category()).items()) \
        == {"a": F(-1), "b": F(1)}
    assert dict(coeff_pushout(harness.span_category()).items()) \
        == {"a": F(-1), "b": F(1), "c": F(1)}


def test_fixed_tables_reject_wrong_shapes():
    with pytest.raises(ValueError):
        coeff_coproduct(harness.arrow_category())
    with pytest.raises(ValueError):
        coeff_cofiber(harness.span_category())
    with pytest.raises(ValueError):
        coeff_idempotent(harness.arrow_category())


def test_realiz_coeff_check():
    for n in range(6):
        total, expected = realiz_coeff_check(n)
        assert total == expected == (-1) ** n


def test_coeff_vector_rejects_bad_keys():
    with pytest.raises(ValueError):
        CoeffVector(harness.arrow_category(), {"f": F(1)})


def test_weighting_formula_differs_from_linearity_off_representables():
    # on a trivial one-point group action the weighting pairing
    # undercounts, while the conjugacy-class formula is exact
    g = cyclic_group(2)
    cat = bg_category(g)
    trivial = diagrams.FinSetDiagram(
        cat, {"x": [0]}, {("g", k): {0: 0} for k in g.elements})
    reps, _assign = diagrams.colim_fin_set(trivial)
    w = leinster_weighting(cat)
    weighted = w["x"] * len(trivial.sets["x"])
    assert weighted == F(1, 2) != F(len(reps)) == F(1)
    lin = diagrams.linearize(trivial)
    phi = coeff_group(g, cat)
    paired = sum((phi[rep] * Mat.identity(1).data[0][0]
                  for rep, _ in phi.items()), F(0))
    assert paired == F(len(reps))


def test_ei_coefficient_sum_rule_on_groupoids():
    # over any one-object groupoid the coefficients total one
    for g in [cyclic_group(2), cyclic_group(4), symmetric_group(3)]:
        cv = coeff_EI(bg_category(g))
        assert sum(v for _, v in cv.items()) == 1
