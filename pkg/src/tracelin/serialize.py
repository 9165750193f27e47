"""JSON file formats for categories, diagrams, and coefficient vectors.

Rationals travel as strings like "3" or "-1/2"; matrices as row-major
arrays; complexes as {"degrees": {n: dim}, "d": {n: matrix}}.  Unknown
fields are rejected so that format drift fails loudly.
"""

import json
from fractions import Fraction

from . import diagrams, fincat
from .exactalg import ChainComplex, ChainMap, Mat


def frac_from(v):
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise ValueError("bad rational %r" % (v,))


def frac_str(x):
    return str(x)


def mat_to_json(m):
    return [[frac_str(x) for x in row] for row in m.data]


def mat_from_json(rows, nrows=None, ncols=None):
    data = [[frac_from(x) for x in row] for row in rows]
    if nrows is None:
        nrows = len(data)
    if ncols is None:
        ncols = len(data[0]) if data else 0
    return Mat(data, nrows, ncols)


def _reject_unknown(obj, allowed, what):
    extra = set(obj) - set(allowed)
    if extra:
        raise ValueError("unknown fields in %s: %s" % (what, sorted(extra)))


def cat_to_json(cat):
    return {
        "objects": [str(o) for o in cat.objects],
        "arrows": [{"id": str(a), "src": str(cat.src[a]),
                    "dst": str(cat.dst[a])} for a in cat.arrows],
        "identities": {str(o): str(cat.idarr(o)) for o in cat.objects},
        "compose": [{"f": str(f), "g": str(g), "gf": str(h)}
                    for (f, g), h in sorted(cat.compose.items(),
                                            key=lambda kv: (str(kv[0])))],
    }


def cat_from_json(obj, name=None):
    _reject_unknown(obj, ["objects", "arrows", "identities", "compose"],
                    "category")
    arrows = []
    for a in obj["arrows"]:
        _reject_unknown(a, ["id", "src", "dst"], "arrow")
        arrows.append((a["id"], a["src"], a["dst"]))
    compose = {}
    for c in obj["compose"]:
        _reject_unknown(c, ["f", "g", "gf"], "compose entry")
        compose[(c["f"], c["g"])] = c["gf"]
    return fincat.FinCat(obj["objects"], arrows, obj["identities"], compose,
                         name=name)


def relabel(cat, name=None):
    """Copy of a category with string object/arrow ids, plus the id maps.

    Generated categories use tuple ids internally; serialization needs
    plain strings.
    """
    omap = {o: "o%d" % i for i, o in enumerate(cat.objects)}
    amap = {a: "a%d" % i for i, a in enumerate(cat.arrows)}
    arrows = [(amap[a], omap[cat.src[a]], omap[cat.dst[a]]) for a in cat.arrows]
    identities = {omap[o]: amap[cat.idarr(o)] for o in cat.objects}
    compose = {(amap[f], amap[g]): amap[h] for (f, g), h in cat.compose.items()}
    out = fincat.FinCat([omap[o] for o in cat.objects], arrows, identities,
                        compose, name=name or cat.name)
    return out, omap, amap


def complex_to_json(c):
    return {"degrees": {str(n): c.dim(n) for n in c.degrees()},
            "d": {str(n): mat_to_json(c.diff(n)) for n in c.d}}


def complex_from_json(obj):
    _reject_unknown(obj, ["degrees", "d"], "complex")
    dims = {int(n): int(d) for n, d in obj["degrees"].items()}
    d = {}
    for n, rows in obj.get("d", {}).items():
        n = int(n)
        d[n] = mat_from_json(rows, dims.get(n - 1, 0), dims.get(n, 0))
    return ChainComplex(dims, d)


def chain_map_to_json(f):
    return {str(n): mat_to_json(f.mat(n)) for n in sorted(f.mats)}


def chain_map_from_json(obj, src, dst):
    mats = {}
    for n, rows in obj.items():
        n = int(n)
        mats[n] = mat_from_json(rows, dst.dim(n), src.dim(n))
    return ChainMap(src, dst, mats)


def diagram_to_json(dia, endo=None, category=None):
    """Chain diagram (and optional endomorphism) in the diagram format.

    ``category`` may be a corpus name to reference instead of inlining.
    """
    cat = dia.base
    out = {"category": category if category is not None else cat_to_json(cat)}
    out["objects"] = {str(o): complex_to_json(dia.cx(o)) for o in cat.objects}
    out["arrows"] = {str(a): chain_map_to_json(dia.map(a))
                     for a in cat.arrows if not cat.is_id(a)}
    if endo is not None:
        out["endo"] = {str(o): chain_map_to_json(endo.at(o))
                       for o in cat.objects}
    return out


def diagram_from_json(obj, resolve_category):
    """Load a chain diagram; ``resolve_category`` maps a name to a FinCat.

    Integer object values mean a space concentrated in degree zero, and
    plain matrix arrays mean degree-zero maps.
    """
    _reject_unknown(obj, ["category", "objects", "arrows", "endo"], "diagram")
    spec = obj["category"]
    cat = resolve_category(spec) if isinstance(spec, str) \
        else cat_from_json(spec)
    complexes = {}
    for o in cat.objects:
        val = obj["objects"][str(o)]
        if isinstance(val, int):
            complexes[o] = ChainComplex({0: val} if val else {}, {})
        else:
            complexes[o] = complex_from_json(val)
    from .exactalg import identity_chain_map
    arrow_maps = {}
    for a in cat.arrows:
        if cat.is_id(a):
            arrow_maps[a] = identity_chain_map(complexes[cat.src[a]])
            continue
        val = obj["arrows"][str(a)]
        src, dst = complexes[cat.src[a]], complexes[cat.dst[a]]
        if isinstance(val, list):
            arrow_maps[a] = ChainMap(src, dst,
                                     {0: mat_from_json(val, dst.dim(0),
                                                       src.dim(0))})
        else:
            arrow_maps[a] = chain_map_from_json(val, src, dst)
    dia = diagrams.ChainDiagram(cat, complexes, arrow_maps)
    endo = None
    if "endo" in obj:
        comps = {}
        for o in cat.objects:
            val = obj["endo"][str(o)]
            c = complexes[o]
            if isinstance(val, list):
                comps[o] = ChainMap(c, c, {0: mat_from_json(val, c.dim(0),
                                                            c.dim(0))})
            else:
                comps[o] = chain_map_from_json(val, c, c)
        endo = diagrams.NatEndo(dia, comps)
    return dia, endo


def coeffs_to_json(cv):
    return {str(rep): frac_str(v) for rep, v in cv.items()}


def report_to_json(report):
    return json.dumps(report.to_json(), indent=2, sort_keys=True)


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def dump_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
