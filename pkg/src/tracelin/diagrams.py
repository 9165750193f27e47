"""Diagrams of rational spaces, finite sets, and chain complexes.

A diagram is a functor out of a composition-table category; natural
endomorphisms are per-object maps commuting with every arrow.  This
module computes strict colimits (as cokernels), homotopy colimits (as
total complexes of a semisimplicial level construction), coinvariants of
group actions (as images of averaging idempotents), and the reduction of
a finite EI shape to a strictly homotopy finite one.
"""

from . import fincat
from .exactalg import (
    F, ZERO, ONE, Mat, ChainComplex, ChainMap, block_diag, cokernel,
    factor_through, idempotent_image, kernel_basis, kron,
)


class VectDiagram:
    """Functor from a finite category to rational vector spaces."""

    def __init__(self, base, dims, mats, check=True):
        self.base = base
        self.dims = dict(dims)
        self.mats = dict(mats)
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("; ".join(bad))

    def dim(self, obj):
        return self.dims[obj]

    def mat(self, arr):
        return self.mats[arr]

    def violations(self):
        out = []
        cat = self.base
        for a in cat.arrows:
            m = self.mats.get(a)
            if m is None:
                out.append("no matrix for arrow %r" % (a,))
                continue
            if m.rows != self.dims[cat.dst[a]] or m.cols != self.dims[cat.src[a]]:
                out.append("matrix for %r has wrong shape" % (a,))
        if out:
            return out
        for o in cat.objects:
            if not self.mats[cat.idarr(o)].is_identity():
                out.append("identity of %r is not the identity matrix" % (o,))
        for (f, g), h in cat.compose.items():
            if self.mats[g] @ self.mats[f] != self.mats[h]:
                out.append("functoriality fails at (%r, %r)" % (f, g))
        return out


class ChainDiagram:
    """Functor from a finite category to bounded chain complexes."""

    def __init__(self, base, complexes, maps, check=True):
        self.base = base
        self.complexes = dict(complexes)
        self.maps = dict(maps)
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("; ".join(bad))

    def cx(self, obj):
        return self.complexes[obj]

    def map(self, arr):
        return self.maps[arr]

    def violations(self):
        out = []
        cat = self.base
        for a in cat.arrows:
            f = self.maps.get(a)
            if f is None:
                out.append("no chain map for arrow %r" % (a,))
                continue
            out.extend("arrow %r: %s" % (a, v) for v in f.violations())
        if out:
            return out
        for o in cat.objects:
            if not all(self.maps[cat.idarr(o)].mat(n).is_identity()
                       for n in self.complexes[o].dims):
                out.append("identity of %r is not the identity" % (o,))
        for (f, g), h in cat.compose.items():
            if self.maps[g].compose(self.maps[f]) != self.maps[h]:
                out.append("functoriality fails at (%r, %r)" % (f, g))
        return out


class FinSetDiagram:
    """Functor from a finite category to finite sets."""

    def __init__(self, base, sets, funcs, check=True):
        self.base = base
        self.sets = {o: list(v) for o, v in sets.items()}
        self.funcs = dict(funcs)
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("; ".join(bad))

    def violations(self):
        out = []
        cat = self.base
        for a in cat.arrows:
            fn = self.funcs.get(a)
            if fn is None:
                out.append("no function for arrow %r" % (a,))
                continue
            s, t = cat.src[a], cat.dst[a]
            if set(fn) != set(self.sets[s]) or any(v not in set(self.sets[t])
                                                   for v in fn.values()):
                out.append("function for %r has wrong domain/codomain" % (a,))
        if out:
            return out
        for o in cat.objects:
            if any(self.funcs[cat.idarr(o)][x] != x for x in self.sets[o]):
                out.append("identity of %r moves elements" % (o,))
        for (f, g), h in cat.compose.items():
            fg = {x: self.funcs[g][self.funcs[f][x]] for x in self.funcs[f]}
            if fg != self.funcs[h]:
                out.append("functoriality fails at (%r, %r)" % (f, g))
        return out


class NatEndo:
    """Natural endomorphism of a diagram: per-object matrix or chain map."""

    def __init__(self, diagram, components, check=True):
        self.diagram = diagram
        self.components = dict(components)
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("; ".join(bad))

    def at(self, obj):
        return self.components[obj]

    def violations(self):
        out = []
        d = self.diagram
        cat = d.base
        if isinstance(d, VectDiagram):
            for a in cat.arrows:
                s, t = cat.src[a], cat.dst[a]
                if d.mat(a) @ self.components[s] != self.components[t] @ d.mat(a):
                    out.append("naturality fails at arrow %r" % (a,))
        else:
            for a in cat.arrows:
                s, t = cat.src[a], cat.dst[a]
                lhs = d.map(a).compose(self.components[s])
                if lhs != self.components[t].compose(d.map(a)):
                    out.append("naturality fails at arrow %r" % (a,))
        return out


def diagram_lefschetz_against(diag, endo, arrow, obj):
    """lefschetz(f_obj after X_arrow) for a chain diagram, exact."""
    comp = endo.at(obj).compose(diag.map(arrow))
    from .exactalg import lefschetz
    return lefschetz(comp)


# ---------------------------------------------------------------------------
# linearization of set diagrams

def linearize(d):
    """Free rational space on each set; functions become 0/1 matrices.

    The trace of a linearized endofunction counts its fixed points.
    """
    cat = d.base
    dims = {o: len(d.sets[o]) for o in cat.objects}
    index = {o: {x: i for i, x in enumerate(d.sets[o])} for o in cat.objects}
    mats = {}
    for a in cat.arrows:
        s, t = cat.src[a], cat.dst[a]
        m = [[ZERO] * dims[s] for _ in range(dims[t])]
        for x in d.sets[s]:
            m[index[t][d.funcs[a][x]]][index[s][x]] = ONE
        mats[a] = Mat(m, dims[t], dims[s], coerce=False)
    return VectDiagram(cat, dims, mats, check=False)


def vect_to_chain(x, degree=0):
    """Degree-concentrated chain diagram from a vector-space diagram."""
    complexes = {o: ChainComplex({degree: x.dim(o)}, {}, check=False)
                 for o in x.base.objects}
    maps = {a: ChainMap(complexes[x.base.src[a]], complexes[x.base.dst[a]],
                        {degree: x.mat(a)}, check=False)
            for a in x.base.arrows}
    return ChainDiagram(x.base, complexes, maps, check=False)


# ---------------------------------------------------------------------------
# strict colimits of vector-space diagrams

class ColimResult:
    def __init__(self, dim, proj, offsets):
        self.dim = dim
        self.proj = proj
        self.offsets = offsets

    def cocone(self, obj):
        off, d = self.offsets[obj]
        cols = [self.proj.col(off + j) for j in range(d)]
        return Mat.from_cols(cols, self.proj.rows) if cols else Mat.zeros(self.proj.rows, 0)


def colim_vect(x):
    """Colimit of a vector-space diagram as an explicit cokernel.

    The relation map sends v at source(arrow) to (image at target) minus
    (v at source), over all nonidentity arrows; the returned projection
    restricted to each object gives the cocone.
    """
    cat = x.base
    offsets = {}
    total = 0
    for o in cat.objects:
        offsets[o] = (total, x.dim(o))
        total += x.dim(o)
    cols = []
    for a in cat.nonidentity():
        s, t = cat.src[a], cat.dst[a]
        m = x.mat(a)
        for j in range(x.dim(s)):
            col = [ZERO] * total
            off_s = offsets[s][0]
            off_t = offsets[t][0]
            for i in range(x.dim(t)):
                col[off_t + i] += m.data[i][j]
            col[off_s + j] -= ONE
            cols.append(col)
    rel = Mat.from_cols(cols, total) if cols else Mat.zeros(total, 0)
    dim, proj = cokernel(rel)
    return ColimResult(dim, proj, offsets)


def induced_endo_colim(x, f):
    """Matrix induced by a natural endomorphism on the colimit cokernel."""
    res = colim_vect(x)
    big = block_diag([f.at(o) for o in x.base.objects])
    return res, factor_through(res.proj, res.proj @ big)


def weighted_colim_vect(weight, x):
    """Coend of a weight over the opposite base against a diagram.

    ``weight`` is a VectDiagram over opposite(x.base); the result is the
    cokernel of the two-sided action difference on the direct sum of
    pointwise tensor products.  Constant weight recovers colim_vect.
    """
    cat = x.base
    wcat = weight.base
    if not _same_objects_opposite(wcat, cat):
        raise ValueError("weight base must be the opposite category")
    offsets = {}
    total = 0
    for o in cat.objects:
        offsets[o] = (total, weight.dim(o) * x.dim(o))
        total += weight.dim(o) * x.dim(o)
    cols = []
    for a in cat.nonidentity():
        s, t = cat.src[a], cat.dst[a]
        # mixed slot: weight(t) (x) x(s); relation =
        #   [weight action at s] - [diagram action at t]
        wa = weight.mat(a)          # weight(t) -> weight(s)
        xa = x.mat(a)               # x(s) -> x(t)
        m1 = kron(wa, Mat.identity(x.dim(s)))
        m2 = kron(Mat.identity(weight.dim(t)), xa)
        for j in range(weight.dim(t) * x.dim(s)):
            col = [ZERO] * total
            off_s = offsets[s][0]
            for i in range(weight.dim(s) * x.dim(s)):
                col[off_s + i] += m1.data[i][j]
            off_t = offsets[t][0]
            for i in range(weight.dim(t) * x.dim(t)):
                col[off_t + i] -= m2.data[i][j]
            cols.append(col)
    rel = Mat.from_cols(cols, total) if cols else Mat.zeros(total, 0)
    dim, proj = cokernel(rel)
    return ColimResult(dim, proj, offsets)


def weighted_colim_endo(weight, x, f):
    res = weighted_colim_vect(weight, x)
    big = block_diag([kron(Mat.identity(weight.dim(o)), f.at(o))
                      for o in x.base.objects])
    return res, factor_through(res.proj, res.proj @ big)


def _same_objects_opposite(wcat, cat):
    if tuple(wcat.objects) != tuple(cat.objects):
        return False
    if set(wcat.arrows) != set(cat.arrows):
        return False
    return all(wcat.src[a] == cat.dst[a] and wcat.dst[a] == cat.src[a]
               for a in cat.arrows)


# ---------------------------------------------------------------------------
# natural endomorphism solution spaces

def nat_endo_basis(x):
    """Basis of all natural endomorphisms, by exact linear solving.

    For vector-space diagrams the unknowns are the entries of the
    per-object matrices; for chain diagrams they are the entries in every
    degree, with chain-map constraints added.  Naturality is imposed on a
    generating set of arrows (composites follow).
    """
    if isinstance(x, VectDiagram):
        return _nat_endo_basis_vect(x)
    return _nat_endo_basis_chain(x)


def _nat_endo_basis_vect(x):
    cat = x.base
    offsets = {}
    total = 0
    for o in cat.objects:
        offsets[o] = total
        total += x.dim(o) ** 2

    def entry(o, i, j):
        return offsets[o] + i * x.dim(o) + j

    rows = []
    for a in cat.generating_arrows():
        s, t = cat.src[a], cat.dst[a]
        m = x.mat(a)
        # X_a f_s - f_t X_a = 0, entrywise
        for i in range(x.dim(t)):
            for j in range(x.dim(s)):
                row = [ZERO] * total
                for k in range(x.dim(s)):
                    row[entry(s, k, j)] += m.data[i][k]
                for k in range(x.dim(t)):
                    row[entry(t, i, k)] -= m.data[k][j]
                rows.append(row)
    mat = Mat(rows, len(rows), total, coerce=False) if rows else Mat.zeros(0, total)
    basis = kernel_basis(mat)
    out = []
    for bcol in range(basis.cols):
        comps = {}
        for o in cat.objects:
            d = x.dim(o)
            comps[o] = Mat([[basis.data[entry(o, i, j)][bcol] for j in range(d)]
                            for i in range(d)], d, d, coerce=False)
        out.append(NatEndo(x, comps, check=False))
    return out


def _nat_endo_basis_chain(x):
    cat = x.base
    offsets = {}
    total = 0
    for o in cat.objects:
        cxo = x.cx(o)
        for n in cxo.dims:
            offsets[(o, n)] = total
            total += cxo.dim(n) ** 2

    def entry(o, n, i, j):
        return offsets[(o, n)] + i * x.cx(o).dim(n) + j

    rows = []
    # chain-map condition per object: d f - f d = 0
    for o in cat.objects:
        cxo = x.cx(o)
        for n in cxo.dims:
            d_n = cxo.diff(n)
            if not d_n.rows:
                continue
            # d_n f_n - f_{n-1} d_n = 0
            for i in range(cxo.dim(n - 1)):
                for j in range(cxo.dim(n)):
                    row = [ZERO] * total
                    for k in range(cxo.dim(n)):
                        row[entry(o, n, k, j)] += d_n.data[i][k]
                    if (o, n - 1) in offsets:
                        for k in range(cxo.dim(n - 1)):
                            row[entry(o, n - 1, i, k)] -= d_n.data[k][j]
                    rows.append(row)
    # naturality per generating arrow per degree
    for a in cat.generating_arrows():
        s, t = cat.src[a], cat.dst[a]
        cxs, cxt = x.cx(s), x.cx(t)
        for n in set(cxs.dims) | set(cxt.dims):
            m = x.map(a).mat(n)
            for i in range(cxt.dim(n)):
                for j in range(cxs.dim(n)):
                    row = [ZERO] * total
                    if (s, n) in offsets:
                        for k in range(cxs.dim(n)):
                            row[entry(s, n, k, j)] += m.data[i][k]
                    if (t, n) in offsets:
                        for k in range(cxt.dim(n)):
                            row[entry(t, n, i, k)] -= m.data[k][j]
                    if any(row):
                        rows.append(row)
    mat = Mat(rows, len(rows), total, coerce=False) if rows else Mat.zeros(0, total)
    basis = kernel_basis(mat)
    out = []
    for bcol in range(basis.cols):
        comps = {}
        for o in cat.objects:
            cxo = x.cx(o)
            mats = {}
            for n in cxo.dims:
                d = cxo.dim(n)
                mats[n] = Mat([[basis.data[entry(o, n, i, j)][bcol]
                                for j in range(d)] for i in range(d)],
                              d, d, coerce=False)
            comps[o] = ChainMap(cxo, cxo, mats, check=False)
        out.append(NatEndo(x, comps, check=False))
    return out


def chain_map_space(src, dst):
    """Basis of all chain maps src -> dst, by exact linear solving."""
    offsets = {}
    total = 0
    degs = sorted(set(src.dims) & set(dst.dims))
    for n in degs:
        offsets[n] = total
        total += dst.dim(n) * src.dim(n)

    def entry(n, i, j):
        return offsets[n] + i * src.dim(n) + j

    rows = []
    for n in sorted(set(src.dims) | set(dst.dims)):
        # d_dst f_n - f_{n-1} d_src = 0 as maps src_n -> dst_{n-1}
        ddst = dst.diff(n)
        dsrc = src.diff(n)
        for i in range(dst.dim(n - 1)):
            for j in range(src.dim(n)):
                row = [ZERO] * total
                if n in offsets:
                    for k in range(dst.dim(n)):
                        row[entry(n, k, j)] += ddst.data[i][k]
                if (n - 1) in offsets:
                    for k in range(src.dim(n - 1)):
                        row[entry(n - 1, i, k)] -= dsrc.data[k][j]
                if any(row):
                    rows.append(row)
    mat = Mat(rows, len(rows), total, coerce=False) if rows else Mat.zeros(0, total)
    basis = kernel_basis(mat)
    out = []
    for bcol in range(basis.cols):
        mats = {}
        for n in degs:
            mats[n] = Mat([[basis.data[entry(n, i, j)][bcol]
                            for j in range(src.dim(n))]
                           for i in range(dst.dim(n))],
                          dst.dim(n), src.dim(n), coerce=False)
        out.append(ChainMap(src, dst, mats, check=False))
    return out


# ---------------------------------------------------------------------------
# homotopy colimits over strictly homotopy finite shapes

class HocolimResult:
    """Total complex of the level construction, with its summand index.

    ``index`` maps (string, internal degree) -> (total degree, offset);
    a string is (start object, tuple of nonidentity arrows).
    """

    def __init__(self, complex_, index, strings, diagram):
        self.complex = complex_
        self.index = index
        self.strings = strings
        self.diagram = diagram

    def induce(self, f):
        """Block-diagonal chain endomorphism induced by a natural endo."""
        mats = {n: [[ZERO] * self.complex.dim(n)
                    for _ in range(self.complex.dim(n))]
                for n in self.complex.dims}
        for (s, m), (n, off) in self.index.items():
            fm = f.at(s[0]).mat(m)
            block = mats[n]
            for i in range(fm.rows):
                for j in range(fm.cols):
                    block[off + i][off + j] = fm.data[i][j]
        return ChainMap(self.complex, self.complex,
                        {n: Mat(b, self.complex.dim(n), self.complex.dim(n),
                                coerce=False)
                         for n, b in mats.items()}, check=False)


def hocolim_hofin(x, check=True):
    """Homotopy colimit of a chain diagram over a strictly homotopy finite base.

    Level k is the direct sum of the first-object values over all
    length-k strings of nonidentity arrows; the level differential
    alternates face maps (apply the first arrow / compose adjacent
    arrows / drop the last), and the total differential adds the internal
    one with sign (-1)^k.
    """
    cat = x.base
    if not fincat.is_strictly_homotopy_finite(cat):
        raise ValueError("base category is not strictly homotopy finite")
    levels = fincat.enumerate_strings(cat)
    index = {}
    dims = {}
    for k, level in enumerate(levels):
        for s in level:
            cx0 = x.cx(s[0])
            for m in cx0.dims:
                n = k + m
                off = dims.get(n, 0)
                index[(s, m)] = (n, off)
                dims[n] = off + cx0.dim(m)
    dims = {n: d for n, d in dims.items() if d}
    diff = {n: [[ZERO] * dims.get(n, 0) for _ in range(dims.get(n - 1, 0))]
            for n in dims}

    def add_block(n, roff, coff, m, sign):
        tgt = diff.get(n)
        if tgt is None:
            return
        for i in range(m.rows):
            trow = tgt[roff + i]
            for j in range(m.cols):
                v = m.data[i][j]
                if v:
                    trow[coff + j] += v if sign > 0 else -v

    for (s, m), (n, off) in index.items():
        start, arrs = s
        k = len(arrs)
        cx0 = x.cx(start)
        # internal differential with sign (-1)^k
        dm = cx0.diff(m)
        if dm.rows and (s, m - 1) in index:
            add_block(n, index[(s, m - 1)][1], off, dm, 1 if k % 2 == 0 else -1)
        # face maps with sign (-1)^i
        for i in range(k + 1):
            if i == 0:
                tgt_s = (cat.dst[arrs[0]], arrs[1:]) if k else None
                if tgt_s is None:
                    continue
                comp = x.map(arrs[0]).mat(m)
            elif i < k:
                tgt_s = (start, arrs[:i - 1] + (cat.then(arrs[i - 1], arrs[i]),)
                         + arrs[i + 1:])
                comp = Mat.identity(cx0.dim(m))
            else:
                if k == 0:
                    continue
                tgt_s = (start, arrs[:k - 1])
                comp = Mat.identity(cx0.dim(m))
            if (tgt_s, m) in index:
                add_block(n, index[(tgt_s, m)][1], off, comp,
                          1 if i % 2 == 0 else -1)

    total = ChainComplex(dims, {n: Mat(rows, dims.get(n - 1, 0), dims.get(n, 0),
                                       coerce=False)
                                for n, rows in diff.items()
                                if dims.get(n - 1, 0)},
                         check=check)
    strings = [s for level in levels for s in level]
    return HocolimResult(total, index, strings, x)


def pushout_ho(x, check=True):
    """Homotopy pushout: the homotopy colimit over a two-legged span base."""
    return hocolim_hofin(x, check=check)


def cofiber(f):
    """Mapping cone wrapper; see exactalg.cone."""
    from .exactalg import cone
    return cone(f)


# ---------------------------------------------------------------------------
# coinvariants of group actions

def group_action_idempotent(x, obj, group_arrows):
    """Averaging idempotent (1/|G|) sum of the action chain maps."""
    cxo = x.cx(obj)
    total = None
    for g in group_arrows:
        m = x.map(g)
        total = m if total is None else total + m
    e = total.smul(F(1, len(group_arrows)))
    return e


def chain_idempotent_image(e):
    """Split a degreewise idempotent chain endo: (subcomplex, incl, proj)."""
    cx = e.src
    incs = {}
    projs = {}
    dims = {}
    for n in cx.dims:
        i, p = idempotent_image(e.mat(n))
        if i.cols:
            incs[n] = i
            projs[n] = p
            dims[n] = i.cols
    d = {}
    for n in dims:
        if (n - 1) in dims:
            d[n] = projs[n - 1] @ cx.diff(n) @ incs[n]
    sub = ChainComplex(dims, d)
    inc = ChainMap(sub, cx, incs, check=False)
    proj = ChainMap(cx, sub, projs, check=False)
    return sub, inc, proj


def coinvariants_group(x, f):
    """Coinvariants of a one-object group-shaped chain diagram, with endo.

    Returns (subcomplex, induced endo, inclusion, projection).  The
    coinvariants are the image of the averaging idempotent; its rank per
    degree equals the dimension of the invariant subspace.
    """
    cat = x.base
    if len(cat.objects) != 1 or not fincat.is_groupoid(cat):
        raise ValueError("coinvariants need a one-object groupoid base")
    obj = cat.objects[0]
    e = group_action_idempotent(x, obj, list(cat.arrows))
    sub, inc, proj = chain_idempotent_image(e)
    induced = proj.compose(f.at(obj)).compose(inc)
    return sub, induced, inc, proj


def invariant_dims(x):
    """Dimensions of the joint fixed space of a one-object group action."""
    cat = x.base
    obj = cat.objects[0]
    cxo = x.cx(obj)
    out = {}
    for n in cxo.dims:
        rows = []
        for g in cat.arrows:
            m = x.map(g).mat(n) - Mat.identity(cxo.dim(n))
            rows.extend(m.data)
        big = Mat(rows, len(rows), cxo.dim(n), coerce=False)
        out[n] = kernel_basis(big).cols
    return {n: d for n, d in out.items() if d}


def hocolim_groupoid(x, f):
    """Homotopy colimit over a finite groupoid: skeleton-wise coinvariants.

    Returns (complex, induced endo, list of (object, subcomplex)).
    """
    cat = x.base
    if not fincat.is_groupoid(cat):
        raise ValueError("base is not a groupoid")
    skel = fincat.skeletalize(cat)
    pieces = []
    endos = []
    tagged = []
    for a in skel.cat.objects:
        auts = fincat.aut_group(cat, a)
        e = group_action_idempotent(x, a, list(auts.elements))
        sub, inc, proj = chain_idempotent_image(e)
        pieces.append(sub)
        endos.append(proj.compose(f.at(a)).compose(inc))
        tagged.append((a, sub))
    total, maps = _direct_sum_complex(pieces)
    induced = _direct_sum_endo(total, maps, pieces, endos)
    return total, induced, tagged


def _direct_sum_complex(pieces):
    dims = {}
    offs = []
    for p in pieces:
        off = {}
        for n in p.dims:
            off[n] = dims.get(n, 0)
            dims[n] = off[n] + p.dim(n)
        offs.append(off)
    d = {}
    for n in dims:
        if dims.get(n - 1, 0):
            rows = [[ZERO] * dims.get(n, 0) for _ in range(dims[n - 1])]
            for p, off in zip(pieces, offs):
                dm = p.diff(n)
                for i in range(dm.rows):
                    for j in range(dm.cols):
                        rows[off[n - 1] + i][off[n] + j] = dm.data[i][j]
            d[n] = Mat(rows, dims[n - 1], dims.get(n, 0), coerce=False)
    return ChainComplex(dims, d, check=False), offs


def _direct_sum_endo(total, offs, pieces, endos):
    mats = {n: [[ZERO] * total.dim(n) for _ in range(total.dim(n))]
            for n in total.dims}
    for p, off, e in zip(pieces, offs, endos):
        for n in p.dims:
            m = e.mat(n)
            block = mats[n]
            for i in range(m.rows):
                for j in range(m.cols):
                    block[off[n] + i][off[n] + j] = m.data[i][j]
    return ChainMap(total, total,
                    {n: Mat(b, total.dim(n), total.dim(n), coerce=False)
                     for n, b in mats.items()}, check=False)


# ---------------------------------------------------------------------------
# homotopy colimits over finite EI shapes

def _chains_of_poset(pos):
    """All strictly increasing chains of a poset category, all lengths."""
    lt = {o: [] for o in pos.objects}
    for a in pos.nonidentity():
        lt[pos.src[a]].append(pos.dst[a])
    chains = [(o,) for o in pos.objects]
    frontier = list(chains)
    while frontier:
        nxt = []
        for c in frontier:
            for o in lt[c[-1]]:
                nxt.append(c + (o,))
        chains.extend(nxt)
        frontier = nxt
    return chains


def _chains_category(chains):
    """Category of chains and subchain selections (longer -> shorter).

    An arrow c -> c' is a strictly monotone position tuple with
    c[positions] == c'; composing selects positions of positions.  This
    category is strictly homotopy finite.
    """
    from itertools import combinations
    objs = list(chains)
    arrows = []
    for c in objs:
        n = len(c)
        for m in range(1, n + 1):
            for pos in combinations(range(n), m):
                sub = tuple(c[i] for i in pos)
                arrows.append(((c, pos), c, sub))
    identities = {c: (c, tuple(range(len(c)))) for c in objs}
    compose = {}
    by_src = {}
    for (a, s, t) in arrows:
        by_src.setdefault(s, []).append((a, t))
    for (a, s, t) in arrows:
        (_, pos1) = a
        for (b, t2) in by_src.get(t, []):
            (_, pos2) = b
            compose[(a, b)] = (s, tuple(pos1[i] for i in pos2))
    return fincat.FinCat(objs, arrows, identities, compose, name="chains")


def hocolim_EI(x, f, check=True):
    """Homotopy colimit over a finite EI category, with induced endo.

    Pipeline: restrict to a skeleton; form the poset of objects; for each
    strictly increasing chain take, per iso class of arrow strings over
    it, the coinvariants of the first object's value under the string
    stabilizer acting through first components; transport the subchain
    face maps along chosen orbit representatives; run the strictly
    homotopy finite construction over the chain category.

    Returns (HocolimResult over the chain category, induced endo).
    """
    cat = x.base
    if not fincat.is_EI(cat):
        raise ValueError("base category is not EI")
    skel = fincat.skeletalize(cat)
    scat = skel.cat
    pos, _ = fincat.poset_reflection(scat)
    chains = _chains_of_poset(pos)
    dcat = _chains_category(chains)

    # per chain: iso classes of strings, coinvariant pieces
    cls = {}
    piece = {}
    for c in chains:
        sc = fincat.string_iso_classes(scat, c)
        cls[c] = sc
        pieces = []
        for k in sc.classes:
            e = _string_stabilizer_idempotent(x, c[0], k["aut"])
            pieces.append(chain_idempotent_image(e))
        piece[c] = pieces

    complexes = {}
    offsets = {}
    for c in chains:
        subs = [p[0] for p in piece[c]]
        total, offs = _direct_sum_complex(subs)
        complexes[c] = total
        offsets[c] = offs

    maps = {}
    for arr in dcat.arrows:
        (c, posn) = arr
        sub = tuple(c[i] for i in posn)
        maps[arr] = _ei_face_map(x, scat, cls, piece, offsets, complexes,
                                 c, posn, sub)
    dia = ChainDiagram(dcat, complexes, maps, check=check)

    endos = {}
    for c in chains:
        blocks = []
        for (subcx, inc, proj) in piece[c]:
            blocks.append(proj.compose(f.at(c[0])).compose(inc))
        endos[c] = _direct_sum_endo(complexes[c], offsets[c],
                                    [p[0] for p in piece[c]], blocks)
    nat = NatEndo(dia, endos, check=check)

    res = hocolim_hofin(dia, check=check)
    return res, res.induce(nat)


def _string_stabilizer_idempotent(x, obj, aut):
    """Average of the first-component actions of a string stabilizer."""
    cxo = x.cx(obj)
    total = None
    for g in aut.elements:
        m = x.map(g[0])
        total = m if total is None else total + m
    return total.smul(F(1, len(aut.elements)))


def _ei_face_map(x, scat, cls, piece, offsets, complexes, c, posn, sub):
    """Chain map between coinvariant sums along a subchain selection.

    For each class representative over c, compose its arrows between the
    selected positions, locate the resulting string's class over the
    subchain, and conjugate onto that class representative; the block map
    is projection o (value of the connecting arrow) o inclusion.
    """
    src_cx = complexes[c]
    dst_cx = complexes[sub]
    mats = {n: [[ZERO] * src_cx.dim(n) for _ in range(dst_cx.dim(n))]
            for n in set(src_cx.dims) | set(dst_cx.dims)}
    src_cls = cls[c]
    dst_cls = cls[sub]
    for ci, k in enumerate(src_cls.classes):
        rep = k["rep"]
        # push the representative string along the selection
        pushed = []
        for i in range(1, len(posn)):
            seg = rep[posn[i - 1]:posn[i]]
            pushed.append(scat.then_seq(list(seg)))
        pushed = tuple(pushed)
        # connecting arrow from c[0] to sub[0]
        if posn[0] == 0:
            connect = scat.idarr(c[0])
        else:
            connect = scat.then_seq(list(rep[:posn[0]]))
        di, g = dst_cls.locate(pushed)
        # g moves the destination representative onto the pushed string;
        # conjugate back with its inverse, acting through first components
        aut0 = g[0]
        ginv0 = _component_inverse(scat, aut0)
        total_arrow = scat.then(connect, ginv0)
        (dsub, dinc, dproj) = piece[sub][di]
        (ssub, sinc, sproj) = piece[c][ci]
        block = dproj.compose(x.map(total_arrow)).compose(sinc)
        soff = offsets[c][ci]
        doff = offsets[sub][di]
        for n in ssub.dims:
            m = block.mat(n)
            if n not in mats:
                continue
            tgt = mats[n]
            for i in range(m.rows):
                for j in range(m.cols):
                    tgt[doff[n] + i][soff[n] + j] = m.data[i][j]
    return ChainMap(src_cx, dst_cx,
                    {n: Mat(rows, dst_cx.dim(n), src_cx.dim(n), coerce=False)
                     for n, rows in mats.items()}, check=False)


def _component_inverse(cat, arrow):
    inv = cat.inv(arrow)
    if inv is None:
        raise ValueError("arrow %r is not invertible" % (arrow,))
    return inv


# ---------------------------------------------------------------------------
# set-level colimits

def colim_fin_set(d):
    """Colimit of a finite-set diagram: classes of the generated relation.

    Returns (list of class representatives, map (object, element) -> index).
    """
    cat = d.base
    items = [(o, z) for o in cat.objects for z in d.sets[o]]
    uf = fincat.UnionFind(items)
    for a in cat.nonidentity():
        s, t = cat.src[a], cat.dst[a]
        for z in d.sets[s]:
            uf.union((s, z), (t, d.funcs[a][z]))
    reps = []
    idx = {}
    for it in items:
        r = uf.find(it)
        if r not in idx:
            idx[r] = len(reps)
            reps.append(r)
    assign = {it: idx[uf.find(it)] for it in items}
    return reps, assign


def induced_endo_fin_set(d, endo_funcs):
    """Induced endofunction on the set colimit, plus its fixed-point count.

    ``endo_funcs`` maps each object to an endofunction dict; naturality is
    assumed (checked by NatEndo-style callers).
    """
    reps, assign = colim_fin_set(d)
    out = {}
    for (o, z), i in assign.items():
        j = assign[(o, endo_funcs[o][z])]
        if i in out and out[i] != j:
            raise ValueError("endomorphism does not descend to the colimit")
        out[i] = j
    fixed = sum(1 for i, j in out.items() if i == j)
    return out, fixed
