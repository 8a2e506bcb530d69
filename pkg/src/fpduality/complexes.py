"""Bounded cochain complexes of free modules.

Cohomological indexing throughout.  Sign conventions are fixed once for the
whole artifact: the differential of Hom(X, Y) is f -> d_Y o f - (-1)^n f o
d_X for f of degree n, and the tensor differential carries the Koszul sign
(-1)^i on the second factor.  d o d = 0 is asserted after every
construction (after reduction when a quotient ring is attached).
"""

from .errors import AlgebraError, RingMismatch
from .groebner import (
    ModuleGB,
    QuotientRing,
    VectorPoly,
    ambient_of,
    modulus_gens,
    presentation_resolution,
    unit_vector,
)
from .modules import FPModule, ModuleMap, free_module


def solve_in_span(target, columns, ring, rank):
    """Coefficients c with sum c_i columns_i = target modulo the modulus of
    `ring`, or None.  The workhorse for all lifting problems."""
    amb = ambient_of(ring)
    cols = list(columns)
    extra = []
    for g in modulus_gens(ring):
        for i in range(rank):
            extra.append(unit_vector(amb, rank, i, g))
    allcols = cols + extra
    if not allcols:
        return [] if target.is_zero() else None
    mgb = ModuleGB(amb, rank, allcols)
    coeffs = mgb.lift(target)
    if coeffs is None:
        return None
    return coeffs[: len(cols)]


class FreeComplex:
    """Bounded complex of free modules; matrices are lists of columns."""

    def __init__(self, ring, terms, diffs, labels=None, check=True):
        self.ring = ring
        self.ambient = ambient_of(ring)
        self.terms = {d: r for d, r in terms.items() if r > 0}
        self.diffs = {}
        for d, cols in diffs.items():
            if self.terms.get(d, 0) == 0 or self.terms.get(d + 1, 0) == 0:
                continue
            cols = list(cols)
            if len(cols) != self.terms[d]:
                raise AlgebraError("differential at %d has wrong number of columns" % d)
            for c in cols:
                if c.rank != self.terms[d + 1]:
                    raise AlgebraError("differential at %d has wrong column length" % d)
            if any(not c.is_zero() for c in cols):
                self.diffs[d] = cols
        self.labels = labels or {}
        if check:
            self._check_dd()

    def _reduce(self, f):
        if isinstance(self.ring, QuotientRing):
            return self.ring.reduce(f)
        return f

    def _check_dd(self):
        for d, cols in self.diffs.items():
            nxt = self.diffs.get(d + 1)
            if not nxt:
                continue
            for c in cols:
                acc = None
                for coeff, col2 in zip(c.components, nxt):
                    t = col2.mul_poly(coeff)
                    acc = t if acc is None else acc + t
                if acc is not None and not all(
                    self._reduce(x).is_zero() for x in acc.components
                ):
                    raise AlgebraError("d o d != 0 at degree %d" % d)

    def rank(self, d):
        return self.terms.get(d, 0)

    def support(self):
        if not self.terms:
            return (0, -1)
        return (min(self.terms), max(self.terms))

    def differential(self, d):
        """Columns of d: C^d -> C^{d+1} (zero columns if absent)."""
        r, s = self.rank(d), self.rank(d + 1)
        if d in self.diffs:
            return self.diffs[d]
        return [VectorPoly(self.ambient, [self.ambient.zero()] * s) for _ in range(r)]

    def degrees(self):
        return sorted(self.terms)

    def apply_entrywise(self, fn, ring=None):
        """New complex with every matrix entry mapped through fn."""
        diffs = {}
        amb = ambient_of(ring) if ring is not None else self.ambient
        for d, cols in self.diffs.items():
            diffs[d] = [VectorPoly(amb, [fn(c) for c in col.components]) for col in cols]
        return FreeComplex(ring or self.ring, dict(self.terms), diffs, labels=dict(self.labels))

    def __repr__(self):
        lo, hi = self.support()
        ranks = ",".join("%d:%d" % (d, self.rank(d)) for d in self.degrees())
        return "FreeComplex[%d..%d](%s over %r)" % (lo, hi, ranks, self.ring)


def zero_complex(ring):
    return FreeComplex(ring, {}, {})


def rank_one_complex(ring, degree, label=None):
    labels = {degree: [label]} if label else None
    return FreeComplex(ring, {degree: 1}, {}, labels=labels)


def module_as_complex(ring, rank, degree=0):
    return FreeComplex(ring, {degree: rank}, {})


def shift(T, k):
    """T[k]: degree n picks up T^{n+k}; differentials gain the sign (-1)^k."""
    sign = 1 if k % 2 == 0 else -1
    terms = {d - k: r for d, r in T.terms.items()}
    diffs = {}
    for d, cols in T.diffs.items():
        diffs[d - k] = [c if sign == 1 else -c for c in cols]
    labels = {d - k: v for d, v in T.labels.items()}
    return FreeComplex(T.ring, terms, diffs, labels=labels, check=False)


class BasisIndex:
    """Index bookkeeping for Hom/tensor terms built from basis triples."""

    def __init__(self, triples):
        self.triples = list(triples)
        self.position = {t: i for i, t in enumerate(self.triples)}

    def __len__(self):
        return len(self.triples)


def hom_complex(X, Y):
    """Hom(X, Y) with differential d_Y o f - (-1)^n f o d_X."""
    if ambient_of(X.ring) != ambient_of(Y.ring):
        raise RingMismatch("Hom of complexes over different ambient rings")
    amb = X.ambient
    ring = Y.ring if isinstance(Y.ring, QuotientRing) else X.ring
    xlo, xhi = X.support()
    ylo, yhi = Y.support()
    if X.rank(0) == 0 and not X.terms:
        return zero_complex(ring), {}
    bases = {}
    for n in range(ylo - xhi, yhi - xlo + 1):
        triples = []
        for i in X.degrees():
            j = i + n
            if Y.rank(j) == 0:
                continue
            for a in range(X.rank(i)):
                for b in range(Y.rank(j)):
                    triples.append((i, a, b))
        if triples:
            bases[n] = BasisIndex(triples)
    terms = {n: len(bi) for n, bi in bases.items()}
    diffs = {}
    for n, bi in bases.items():
        tgt = bases.get(n + 1)
        if tgt is None:
            continue
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        cols = []
        for (i, a, b) in bi.triples:
            comps = [amb.zero()] * len(tgt)
            dy = Y.diffs.get(i + n)
            if dy is not None:
                col = dy[b]
                for b2, entry in enumerate(col.components):
                    if entry.is_zero():
                        continue
                    pos = tgt.position.get((i, a, b2))
                    if pos is not None:
                        comps[pos] = comps[pos] + entry
            dx = X.diffs.get(i - 1)
            if dx is not None:
                for a2 in range(X.rank(i - 1)):
                    entry = dx[a2].components[a]
                    if entry.is_zero():
                        continue
                    pos = tgt.position.get((i - 1, a2, b))
                    if pos is not None:
                        comps[pos] = comps[pos] + (entry if sign == 1 else -entry)
            cols.append(VectorPoly(amb, comps))
        diffs[n] = cols
    return FreeComplex(ring, terms, diffs), bases


def tensor_complex(X, Y):
    """Total complex of X tensor Y with Koszul signs."""
    if ambient_of(X.ring) != ambient_of(Y.ring):
        raise RingMismatch("tensor of complexes over different ambient rings")
    amb = X.ambient
    ring = X.ring if isinstance(X.ring, QuotientRing) else Y.ring
    xlo, xhi = X.support()
    ylo, yhi = Y.support()
    bases = {}
    for n in range(xlo + ylo, xhi + yhi + 1):
        triples = []
        for i in X.degrees():
            j = n - i
            if Y.rank(j) == 0:
                continue
            for a in range(X.rank(i)):
                for b in range(Y.rank(j)):
                    triples.append((i, a, b))
        if triples:
            bases[n] = BasisIndex(triples)
    terms = {n: len(bi) for n, bi in bases.items()}
    diffs = {}
    for n, bi in bases.items():
        tgt = bases.get(n + 1)
        if tgt is None:
            continue
        cols = []
        for (i, a, b) in bi.triples:
            comps = [amb.zero()] * len(tgt)
            dx = X.diffs.get(i)
            if dx is not None:
                col = dx[a]
                for a2, entry in enumerate(col.components):
                    if entry.is_zero():
                        continue
                    pos = tgt.position.get((i + 1, a2, b))
                    if pos is not None:
                        comps[pos] = comps[pos] + entry
            dy = Y.diffs.get(n - i)
            if dy is not None:
                sign = 1 if i % 2 == 0 else -1
                col = dy[b]
                for b2, entry in enumerate(col.components):
                    if entry.is_zero():
                        continue
                    pos = tgt.position.get((i, a, b2))
                    if pos is not None:
                        comps[pos] = comps[pos] + (entry if sign == 1 else -entry)
            cols.append(VectorPoly(amb, comps))
        diffs[n] = cols
    return FreeComplex(ring, terms, diffs), bases


# ---------------------------------------------------------------------------
# cohomology

class HDegree:
    """Cohomology in one degree: presentation, representatives, coordinates."""

    def __init__(self, module, reps, boundary_cols, rank, ring):
        self.module = module
        self.reps = reps
        self._boundary_cols = boundary_cols
        self._rank = rank
        self._ring = ring
        self._mgb = None

    def coords_of_cocycle(self, v):
        """Class of a cocycle vector in the presentation's generators."""
        cols = list(self.reps) + list(self._boundary_cols)
        amb = ambient_of(self._ring)
        extra = []
        for g in modulus_gens(self._ring):
            for i in range(self._rank):
                extra.append(unit_vector(amb, self._rank, i, g))
        if self._mgb is None:
            self._mgb = ModuleGB(amb, self._rank, cols + extra) if cols + extra else None
        if self._mgb is None:
            return None if not v.is_zero() else []
        coeffs = self._mgb.lift(v)
        if coeffs is None:
            return None
        return coeffs[: len(self.reps)]

    def is_zero(self):
        return self.module.is_zero_module()


class CohomologyReport:
    def __init__(self, degrees):
        self.degrees = degrees  # dict degree -> HDegree

    def module(self, d):
        h = self.degrees.get(d)
        return h.module if h else None

    def nonzero_degrees(self):
        return sorted(d for d, h in self.degrees.items() if not h.is_zero())

    def lowest_nonzero(self):
        ds = self.nonzero_degrees()
        return ds[0] if ds else None


def cohomology(T, over=None):
    """Per-degree kernel/image presentations of a free complex.

    `over` may supply a QuotientRing whose modulus is adjoined; complexes
    over quotient rings adjoin their own modulus automatically.
    """
    ring = over or T.ring
    amb = ambient_of(ring)
    mods = modulus_gens(ring)
    out = {}
    lo, hi = T.support()
    for d in range(lo, hi + 1):
        r = T.rank(d)
        if r == 0:
            continue
        # cocycles: v with D_d v = 0 modulo the modulus
        dcols = T.diffs.get(d)
        if dcols is None:
            reps = [unit_vector(amb, r, i) for i in range(r)]
        else:
            s = T.rank(d + 1)
            cols = list(dcols)
            extra = []
            for g in mods:
                for i in range(s):
                    extra.append(unit_vector(amb, s, i, g))
            from .groebner import syzygies

            # build the map R^r -> R^s and find its kernel mod modulus
            big = cols + extra
            reps = []
            seen = set()
            for z in syzygies(big):
                head = VectorPoly(amb, z.components[:r])
                if head.is_zero() or head.components in seen:
                    continue
                seen.add(head.components)
                reps.append(head)
        # boundaries
        bcols = []
        prev = T.diffs.get(d - 1)
        if prev is not None:
            bcols.extend(prev)
        # presentation of H^d
        k = len(reps)
        rel_source = list(reps) + bcols
        rels = []
        if rel_source:
            from .groebner import syzygies

            extra = []
            for g in mods:
                for i in range(r):
                    extra.append(unit_vector(amb, r, i, g))
            for z in syzygies(rel_source + extra):
                head = VectorPoly(amb, z.components[:k])
                if not head.is_zero():
                    rels.append(head)
        module = FPModule(ring, k, rels)
        out[d] = HDegree(module, reps, bcols, r, ring)
    return CohomologyReport(out)


# ---------------------------------------------------------------------------
# chain maps

class ChainMap:
    """Map of free complexes; maps[d] is a list of columns C^d_src -> C^d_tgt."""

    def __init__(self, source, target, maps, check=True):
        self.source = source
        self.target = target
        self.maps = {}
        for d, cols in maps.items():
            if source.rank(d) == 0:
                continue
            cols = list(cols)
            if len(cols) != source.rank(d):
                raise AlgebraError("chain map at degree %d has wrong width" % d)
            self.maps[d] = cols
        if check:
            self.verify()

    def _reduce_ok(self, v):
        ring = self.target.ring
        if isinstance(ring, QuotientRing):
            return all(ring.reduce(c).is_zero() for c in v.components)
        return v.is_zero()

    def column(self, d, j):
        if d in self.maps:
            return self.maps[d][j]
        amb = self.target.ambient
        return VectorPoly(amb, [amb.zero()] * self.target.rank(d))

    def apply(self, d, v):
        amb = self.target.ambient
        acc = VectorPoly(amb, [amb.zero()] * self.target.rank(d))
        for j, c in enumerate(v.components):
            if c.is_zero():
                continue
            acc = acc + self.column(d, j).mul_poly(c)
        return acc

    def verify(self):
        """d_tgt o f = f o d_src, modulo the target's modulus."""
        for d in self.source.degrees():
            if self.source.rank(d) == 0:
                continue
            for j in range(self.source.rank(d)):
                src_col = unit_vector(self.source.ambient, self.source.rank(d), j)
                lhs = None
                dcols = self.target.diffs.get(d)
                fj = self.column(d, j)
                if dcols is not None:
                    acc = None
                    for coeff, col in zip(fj.components, dcols):
                        t = col.mul_poly(coeff)
                        acc = t if acc is None else acc + t
                    lhs = acc
                sd = self.source.diffs.get(d)
                rhs = None
                if sd is not None:
                    rhs = self.apply(d + 1, sd[j])
                amb = self.target.ambient
                r = self.target.rank(d + 1)
                zero = VectorPoly(amb, [amb.zero()] * r)
                lhs = lhs if lhs is not None else zero
                rhs = rhs if rhs is not None else zero
                if r and not self._reduce_ok(lhs - rhs):
                    raise AlgebraError("not a chain map at degree %d" % d)

    def induced_on_cohomology(self, d, h_src, h_tgt):
        """ModuleMap H^d(source) -> H^d(target) on the given reports."""
        cols = []
        for rep in h_src.reps:
            img = self.apply(d, rep)
            coords = h_tgt.coords_of_cocycle(img)
            if coords is None:
                raise AlgebraError("image of a cocycle is not a cocycle class")
            cols.append(VectorPoly(self.target.ambient, coords))
        return ModuleMap(h_src.module, h_tgt.module, cols, check=True)


# ---------------------------------------------------------------------------
# resolutions as complexes

class ResolutionComplex:
    """Free resolution of an FPModule M over its ambient polynomial ring,
    wrapped as a FreeComplex in degrees [-length, 0]."""

    def __init__(self, M, length_cap=None):
        amb = M.ambient
        if isinstance(M.ring, QuotientRing):
            # resolve over the ambient ring; relations already include modulus
            pass
        stages = presentation_resolution(amb, M.ngens, M.relations, length_cap)
        terms = {0: M.ngens}
        diffs = {}
        for k, cols in enumerate(stages):
            terms[-(k + 1)] = len(cols)
            diffs[-(k + 1)] = cols
        self.module = M
        self.complex = FreeComplex(amb, terms, diffs)
        self.length = len(stages)


def resolution_complex(M, length_cap=None):
    return ResolutionComplex(M, length_cap)


def rhom_to_module(M, T, length_cap=None):
    """R Hom(M, T) for M an FPModule over a polynomial ring, T a bounded
    free complex: Hom of the free resolution into T."""
    res = resolution_complex(M, length_cap)
    H, bases = hom_complex(res.complex, T)
    H.hom_bases = bases
    H.resolution = res
    return H


def koszul_complex(ring, elements):
    """Koszul complex on a sequence, as a resolution-shaped complex in
    degrees [-c, 0]: term at -j has basis the j-subsets, d(e_T) =
    sum_{t in T} sign * r_t e_{T - t}."""
    from itertools import combinations

    amb = ambient_of(ring)
    elems = list(elements)
    c = len(elems)
    terms = {}
    diffs = {}
    labels = {}
    subsets = {j: list(combinations(range(c), j)) for j in range(c + 1)}
    index = {j: {s: i for i, s in enumerate(subsets[j])} for j in range(c + 1)}
    for j in range(c + 1):
        terms[-j] = len(subsets[j])
        labels[-j] = ["e" + "".join(str(t + 1) for t in s) for s in subsets[j]]
    for j in range(1, c + 1):
        cols = []
        for T in subsets[j]:
            comps = [amb.zero()] * len(subsets[j - 1])
            for k, t in enumerate(T):
                rest = tuple(x for x in T if x != t)
                sign = (-1) % amb.p if k % 2 else 1
                comps[index[j - 1][rest]] = comps[index[j - 1][rest]] + elems[t].scale(sign)
            cols.append(VectorPoly(amb, comps))
        diffs[-j] = cols
    K = FreeComplex(ring, terms, diffs, labels=labels)
    K.koszul_elements = elems
    K.koszul_subsets = subsets
    K.koszul_index = index
    return K


def lift_map_of_resolutions(f0_cols, resA, resB, ring):
    """Lift a degree-0 map of resolved modules to a chain map resA -> resB.

    f0_cols are columns A^{r_0} -> B^{s_0} covering the module map; lower
    degrees are solved through the exactness of resB modulo the ring's
    modulus.  Returns a ChainMap between the underlying complexes.
    """
    A, B = resA.complex, resB.complex
    amb = B.ambient
    maps = {0: list(f0_cols)}
    lo, _hi = A.support()
    for d in range(-1, lo - 1, -1):
        if A.rank(d) == 0:
            break
        cols = []
        dA = A.diffs.get(d)
        dB = B.diffs.get(d)
        for j in range(A.rank(d)):
            # want x with d_B(x) = f_{d+1}(d_A e_j)
            target = None
            upper = maps.get(d + 1)
            if dA is not None and upper is not None:
                acc = VectorPoly(amb, [amb.zero()] * B.rank(d + 1))
                for i, c in enumerate(dA[j].components):
                    if not c.is_zero():
                        acc = acc + upper[i].mul_poly(c)
                target = acc
            else:
                target = VectorPoly(amb, [amb.zero()] * B.rank(d + 1))
            if B.rank(d) == 0:
                if target.is_zero():
                    cols.append(VectorPoly(amb, []))
                    continue
                raise AlgebraError("no room to lift at degree %d" % d)
            coeffs = solve_in_span(target, dB or [], ring, B.rank(d + 1))
            if coeffs is None:
                raise AlgebraError("lifting failed at degree %d" % d)
            x = VectorPoly(amb, list(coeffs) + [amb.zero()] * (B.rank(d) - len(coeffs)))
            cols.append(x)
        maps[d] = cols
    return ChainMap(A, B, maps, check=True)


# ---------------------------------------------------------------------------
# complexes of finitely presented modules

class ModComplex:
    """Bounded complex of FPModules with ModuleMap differentials."""

    def __init__(self, ring, terms, diffs, check=True):
        from .modules import ModuleMap

        self.ring = ring
        self.ambient = ambient_of(ring)
        self.terms = dict(terms)
        self.diffs = dict(diffs)
        if check:
            for d, f in self.diffs.items():
                nxt = self.diffs.get(d + 1)
                if nxt is not None:
                    comp = nxt.compose(f)
                    if not comp.is_zero_map():
                        raise AlgebraError("d o d != 0 at degree %d" % d)

    def module(self, d):
        return self.terms.get(d)

    def degrees(self):
        return sorted(self.terms)

    def support(self):
        ds = self.degrees()
        return (ds[0], ds[-1]) if ds else (0, -1)


class ModHDegree:
    """Cohomology of a ModComplex in one degree, with representatives."""

    def __init__(self, module, reps, boundary_cols, host):
        self.module = module
        self.reps = reps
        self.boundary_cols = boundary_cols
        self.host = host
        self._mgb = None

    def coords_of_cocycle(self, v):
        cols = list(self.reps) + list(self.boundary_cols) + list(self.host.relations)
        amb = self.host.ambient
        if self._mgb is None:
            self._mgb = ModuleGB(amb, self.host.ngens, cols) if cols else None
        if self._mgb is None:
            return [] if v.is_zero() else None
        coeffs = self._mgb.lift(v)
        if coeffs is None:
            return None
        return coeffs[: len(self.reps)]

    def is_zero(self):
        return self.module.is_zero_module()


def mod_cohomology(C, window=None):
    """Per-degree cohomology of a ModComplex; restricted to a degree window
    when the complex is only correct there (truncated resolutions)."""
    from .groebner import syzygies
    from .modules import FPModule

    out = {}
    lo, hi = C.support()
    for d in range(lo, hi + 1):
        if window is not None and not (window[0] <= d <= window[1]):
            continue
        M = C.module(d)
        if M is None:
            continue
        amb = M.ambient
        f_out = C.diffs.get(d)
        if f_out is None:
            reps = [M.gen(i) for i in range(M.ngens)]
        else:
            N = f_out.target
            cols = [f_out.columns[j] for j in range(M.ngens)]
            big = cols + list(N.relations)
            reps = []
            seen = set()
            for z in syzygies(big) if big else []:
                head = VectorPoly(amb, z.components[: M.ngens])
                if head.is_zero() or head.components in seen:
                    continue
                seen.add(head.components)
                reps.append(head)
        f_in = C.diffs.get(d - 1)
        bcols = list(f_in.columns) if f_in is not None else []
        k = len(reps)
        rels = []
        src = list(reps) + bcols + list(M.relations)
        if src:
            for z in syzygies(src):
                head = VectorPoly(amb, z.components[:k])
                if not head.is_zero():
                    rels.append(head)
        module = FPModule(C.ring, k, rels)
        out[d] = ModHDegree(module, reps, bcols, M)
    return out


def hom_from_free(K, T):
    """Hom(K, T) for K a bounded free complex and T a ModComplex over a
    compatible quotient ring: terms are direct sums of copies of T's terms,
    differential d(f) = d_T o f - (-1)^n f o d_K."""
    from .modules import FPModule, ModuleMap, direct_sum

    ring = T.ring
    amb = ambient_of(ring)
    klo, khi = K.support()
    tlo, thi = T.support()
    bases = {}
    for n in range(tlo - khi, thi - klo + 1):
        triples = []
        for i in K.degrees():
            Tj = T.module(i + n)
            if Tj is None:
                continue
            for a in range(K.rank(i)):
                for g in range(Tj.ngens):
                    triples.append((i, a, g))
        if triples:
            bases[n] = triples
    terms = {}
    offsets = {}
    for n, triples in bases.items():
        mods = []
        offs = []
        acc = 0
        seen_ia = []
        for i in K.degrees():
            Tj = T.module(i + n)
            if Tj is None:
                continue
            for a in range(K.rank(i)):
                seen_ia.append((i, a))
                offs.append(((i, a), acc))
                mods.append(Tj)
                acc += Tj.ngens
        terms[n] = direct_sum(mods) if mods else FPModule(ring, 0, [])
        offsets[n] = dict(offs)
    diffs = {}
    for n in sorted(terms):
        if (n + 1) not in terms:
            continue
        src = terms[n]
        tgt = terms[n + 1]
        cols = [VectorPoly(amb, [amb.zero()] * tgt.ngens) for _ in range(src.ngens)]
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        for (i, a, g) in bases[n]:
            col_idx = offsets[n][(i, a)] + g
            comps = [amb.zero()] * tgt.ngens
            # d_T o f part
            dT = T.diffs.get(i + n)
            if dT is not None and (i, a) in offsets[n + 1]:
                img = dT.columns[g]
                base = offsets[n + 1][(i, a)]
                for g2, entry in enumerate(img.components):
                    comps[base + g2] = comps[base + g2] + entry
            # f o d_K part
            dK = K.diffs.get(i - 1)
            if dK is not None:
                for a2 in range(K.rank(i - 1)):
                    entry = dK[a2].components[a]
                    if entry.is_zero():
                        continue
                    key = (i - 1, a2)
                    if key not in offsets[n + 1]:
                        continue
                    base = offsets[n + 1][key]
                    comps[base + g] = comps[base + g] + (
                        entry if sign == 1 else -entry
                    )
            cols[col_idx] = VectorPoly(amb, comps)
        from .modules import ModuleMap as _MM

        diffs[n] = _MM(src, tgt, cols, check=False)
    C = ModComplex(ring, terms, diffs, check=True)
    C.hom_bases = bases
    C.hom_offsets = offsets
    return C


def free_complex_as_mod(T, ring=None):
    """View a FreeComplex as a ModComplex of free modules over `ring`."""
    from .modules import FPModule, ModuleMap, free_module

    ring = ring or T.ring
    terms = {d: free_module(ring, T.rank(d)) for d in T.degrees()}
    diffs = {}
    for d, cols in T.diffs.items():
        diffs[d] = ModuleMap(terms[d], terms[d + 1], cols, check=False)
    C = ModComplex(ring, terms, diffs, check=False)
    return C
