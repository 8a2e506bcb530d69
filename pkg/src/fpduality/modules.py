"""Finitely presented modules over polynomial and quotient rings.

A module is a cokernel presentation: ngens generators of a free cover and a
list of relation columns.  Over a quotient ring the modulus multiples of
each generator are adjoined at construction, so that every Groebner
computation can run over the ambient polynomial ring.  Isomorphism is never
decided generically: kernel_cokernel certifies explicitly given maps.
"""

from itertools import combinations

from .errors import AlgebraError, NotGraded, NotMaximal, RingMismatch
from .fp import inv_mod
from .groebner import (
    Ideal,
    ModuleGB,
    QuotientRing,
    VectorPoly,
    ambient_of,
    modulus_gens,
    syzygies,
    unit_vector,
)


class FPModule:
    """Finitely presented module given by a relation matrix."""

    def __init__(self, ring, ngens, relations, grading=None, normalize=True):
        self.ring = ring
        self.ambient = ambient_of(ring)
        self.ngens = ngens
        rels = []
        for r in relations:
            if r.rank != ngens:
                raise AlgebraError("relation of length %d in a module of rank %d" % (r.rank, ngens))
            if not r.is_zero():
                rels.append(r)
        if normalize:
            for g in modulus_gens(ring):
                for i in range(ngens):
                    rels.append(unit_vector(self.ambient, ngens, i, g))
        self.relations = rels
        if grading is not None:
            grading = list(grading)
            if len(grading) != ngens:
                raise AlgebraError("one degree per generator required")
        self.grading = grading
        self._relgb = None

    def relgb(self):
        if self._relgb is None:
            self._relgb = ModuleGB(self.ambient, self.ngens, self.relations)
        return self._relgb

    def zero_vector(self):
        return VectorPoly(self.ambient, [self.ambient.zero()] * self.ngens)

    def gen(self, i):
        return unit_vector(self.ambient, self.ngens, i)

    def nf(self, v):
        if self.ngens == 0:
            return v
        if not self.relations:
            return v
        return self.relgb().normal_form(v)

    def element_is_zero(self, v):
        return self.nf(v).is_zero()

    def elements_equal(self, v, w):
        return self.element_is_zero(v - w)

    def is_zero_module(self):
        return all(self.element_is_zero(self.gen(i)) for i in range(self.ngens))

    def lift_element(self, v, extra_columns=()):
        """Coefficients of v on [extra_columns | relations], or None."""
        cols = list(extra_columns) + list(self.relations)
        if not cols:
            return [] if v.is_zero() else None
        mgb = ModuleGB(self.ambient, self.ngens, cols)
        coeffs = mgb.lift(v)
        if coeffs is None:
            return None
        return coeffs[: len(extra_columns)]

    def __repr__(self):
        return "FPModule(ngens=%d, nrels=%d over %r)" % (
            self.ngens,
            len(self.relations),
            self.ring,
        )


def free_module(ring, rank, grading=None):
    return FPModule(ring, rank, [], grading=grading)


def cyclic_module(ring, ideal_gens=()):
    """ring/(ideal) as a module over ring (one generator)."""
    amb = ambient_of(ring)
    rels = [VectorPoly(amb, [g]) for g in ideal_gens]
    return FPModule(ring, 1, rels)


def ideal_module(ring, gens):
    """A finitely generated ideal as a module over its ring.

    Generators map to the given ring elements; relations are their
    syzygies over the ambient ring, modulus included.
    """
    amb = ambient_of(ring)
    cols = [VectorPoly(amb, [g]) for g in gens]
    for m in modulus_gens(ring):
        cols.append(VectorPoly(amb, [m]))
    syz = syzygies(cols)
    k = len(gens)
    rels = [VectorPoly(amb, s.components[:k]) for s in syz]
    mod = FPModule(ring, k, rels)
    mod.ideal_gens = list(gens)
    return mod


class ModuleMap:
    """Map of FPModules given by a matrix on generators (columns = images)."""

    def __init__(self, source, target, columns, check=True):
        if ambient_of(source.ring) != ambient_of(target.ring):
            raise RingMismatch("source and target must share an ambient ring")
        self.source = source
        self.target = target
        cols = []
        for c in columns:
            if isinstance(c, (list, tuple)):
                c = VectorPoly(target.ambient, c)
            if c.rank != target.ngens:
                raise AlgebraError("column of wrong length")
            cols.append(c)
        if len(cols) != source.ngens:
            raise AlgebraError("need one column per source generator")
        self.columns = cols
        if check:
            for r in source.relations:
                if not self.target.element_is_zero(self.apply_coords(r)):
                    raise AlgebraError("map not well defined on a source relation")

    def apply_coords(self, v):
        """Image of a coordinate vector of the source."""
        acc = None
        for c, col in zip(v.components, self.columns):
            term = col.mul_poly(c)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = self.target.zero_vector()
        return acc

    def compose(self, other):
        """self after other."""
        cols = [self.apply_coords(c) for c in other.columns]
        return ModuleMap(other.source, self.target, cols, check=False)

    def __add__(self, other):
        return ModuleMap(
            self.source,
            self.target,
            [a + b for a, b in zip(self.columns, other.columns)],
            check=False,
        )

    def __neg__(self):
        return ModuleMap(self.source, self.target, [-c for c in self.columns], check=False)

    def __sub__(self, other):
        return self + (-other)

    def is_zero_map(self):
        return all(self.target.element_is_zero(c) for c in self.columns)

    def equals(self, other):
        return (
            self.source.ngens == other.source.ngens
            and all(
                self.target.element_is_zero(a - b)
                for a, b in zip(self.columns, other.columns)
            )
        )

    @staticmethod
    def identity(M):
        return ModuleMap(M, M, [M.gen(i) for i in range(M.ngens)], check=False)

    @staticmethod
    def zero(M, N):
        return ModuleMap(M, N, [N.zero_vector() for _ in range(M.ngens)], check=False)

    def __repr__(self):
        return "ModuleMap(%d -> %d over %r)" % (self.source.ngens, self.target.ngens, self.target.ring)


# ---------------------------------------------------------------------------
# kernels, cokernels, certification

def kernel_with_inclusion(f):
    """Presentation of ker(f) plus the inclusion map into the source."""
    amb = f.source.ambient
    m = f.source.ngens
    n = f.target.ngens
    cols = []
    for j in range(m):
        cols.append(f.columns[j])
    cols.extend(f.target.relations)
    syz = syzygies(cols) if cols else []
    kernel_gens = []
    for s in syz:
        head = VectorPoly(amb, s.components[:m])
        if not head.is_zero():
            kernel_gens.append(f.source.nf(head))
    # drop duplicates and zero images after reduction
    seen = set()
    uniq = []
    for g in kernel_gens:
        if g.is_zero():
            continue
        key = g.components
        if key in seen:
            continue
        seen.add(key)
        uniq.append(g)
    kernel_gens = uniq
    k = len(kernel_gens)
    rel_cols = list(kernel_gens) + list(f.source.relations)
    rels = []
    if rel_cols:
        for s in syzygies(rel_cols):
            head = VectorPoly(amb, s.components[:k])
            if not head.is_zero():
                rels.append(head)
    ker = FPModule(f.source.ring, k, rels)
    incl = ModuleMap(ker, f.source, kernel_gens, check=False)
    return ker, incl


def cokernel_with_projection(f):
    coker = FPModule(
        f.target.ring,
        f.target.ngens,
        list(f.target.relations) + list(f.columns),
        normalize=False,
    )
    proj = ModuleMap(f.target, coker, [coker.gen(i) for i in range(coker.ngens)], check=False)
    return coker, proj


def kernel_cokernel(f):
    """(ker f, coker f); f is an isomorphism iff both are zero modules."""
    ker, _ = kernel_with_inclusion(f)
    coker, _ = cokernel_with_projection(f)
    return ker, coker


def is_isomorphism(f):
    ker, coker = kernel_cokernel(f)
    return ker.is_zero_module() and coker.is_zero_module()


# ---------------------------------------------------------------------------
# hom and tensor

class HomModule(FPModule):
    """Hom_R(M, N) presented as an FPModule, with decode/encode."""

    def __init__(self, M, N):
        if ambient_of(M.ring) != ambient_of(N.ring):
            raise RingMismatch("Hom requires a common ambient ring")
        self.hom_source = M
        self.hom_target = N
        amb = M.ambient
        m, n = M.ngens, N.ngens
        nm = n * m

        def vec_index(j, i):
            return j * n + i

        # columns of the stacked condition map R^{nm} -> R^{n * q}
        q = len(M.relations)
        big_cols = []
        for j in range(m):
            for i in range(n):
                comps = [amb.zero()] * (n * q)
                for t, a in enumerate(M.relations):
                    if not a.components[j].is_zero():
                        comps[t * n + i] = a.components[j]
                big_cols.append(VectorPoly(amb, comps))
        for t in range(q):
            for b in N.relations:
                comps = [amb.zero()] * (n * q)
                for i in range(n):
                    comps[t * n + i] = b.components[i]
                big_cols.append(VectorPoly(amb, comps))
        if q == 0:
            # no conditions: Hom(R^m-span, N) = N^m
            raw_gens = [unit_vector(amb, nm, k) for k in range(nm)]
        else:
            raw_gens = []
            seen = set()
            for s in syzygies(big_cols):
                head = VectorPoly(amb, s.components[:nm])
                if head.is_zero():
                    continue
                if head.components in seen:
                    continue
                seen.add(head.components)
                raw_gens.append(head)
        # quotient by maps with columns inside the relation span of N
        mod_cols = []
        for j in range(m):
            for b in N.relations:
                comps = [amb.zero()] * nm
                for i in range(n):
                    comps[vec_index(j, i)] = b.components[i]
                mod_cols.append(VectorPoly(amb, comps))
        k = len(raw_gens)
        rels = []
        if raw_gens or mod_cols:
            for s in syzygies(list(raw_gens) + mod_cols):
                head = VectorPoly(amb, s.components[:k])
                if not head.is_zero():
                    rels.append(head)
        self._vec_gens = raw_gens
        self._mod_cols = mod_cols
        self._vec_index = vec_index
        super().__init__(M.ring, k, rels)

    def decode(self, coeffs):
        """Turn Hom coordinates into an explicit ModuleMap."""
        amb = self.ambient
        M, N = self.hom_source, self.hom_target
        if isinstance(coeffs, int):
            vec = self._vec_gens[coeffs]
        else:
            comps = [amb.zero()] * (N.ngens * M.ngens)
            for c, g in zip(coeffs, self._vec_gens):
                if isinstance(c, int):
                    c = amb.const(c)
                for idx, comp in enumerate(g.components):
                    comps[idx] = comps[idx] + c * comp
            vec = VectorPoly(amb, comps)
        cols = []
        for j in range(M.ngens):
            col = vec.components[j * N.ngens : (j + 1) * N.ngens]
            cols.append(N.nf(VectorPoly(amb, col)))
        return ModuleMap(M, N, cols, check=False)

    def encode(self, f):
        """Coordinates of an explicit ModuleMap in this presentation."""
        amb = self.ambient
        M, N = self.hom_source, self.hom_target
        comps = []
        for j in range(M.ngens):
            comps.extend(f.columns[j].components)
        vec = VectorPoly(amb, comps)
        cols = list(self._vec_gens) + self._mod_cols
        if not cols:
            return [] if vec.is_zero() else None
        mgb = ModuleGB(amb, N.ngens * M.ngens, cols)
        coeffs = mgb.lift(vec)
        if coeffs is None:
            return None
        return coeffs[: len(self._vec_gens)]


def hom_module(M, N):
    return HomModule(M, N)


def tensor_module(M, N):
    """M otimes_R N by the standard block presentation."""
    if ambient_of(M.ring) != ambient_of(N.ring):
        raise RingMismatch("tensor requires a common ambient ring")
    amb = M.ambient
    m, n = M.ngens, N.ngens

    def slot(i, j):
        return i * n + j

    rels = []
    for a in M.relations:
        for j in range(n):
            comps = [amb.zero()] * (m * n)
            for i in range(m):
                comps[slot(i, j)] = a.components[i]
            rels.append(VectorPoly(amb, comps))
    for b in N.relations:
        for i in range(m):
            comps = [amb.zero()] * (m * n)
            for j in range(n):
                comps[slot(i, j)] = b.components[j]
            rels.append(VectorPoly(amb, comps))
    grading = None
    if M.grading is not None and N.grading is not None:
        grading = [M.grading[i] + N.grading[j] for i in range(m) for j in range(n)]
    return FPModule(M.ring, m * n, rels, grading=grading)


def direct_sum(modules):
    ring = modules[0].ring
    amb = modules[0].ambient
    total = sum(M.ngens for M in modules)
    offsets = []
    acc = 0
    for M in modules:
        offsets.append(acc)
        acc += M.ngens
    rels = []
    for off, M in zip(offsets, modules):
        for r in M.relations:
            comps = [amb.zero()] * total
            for i, c in enumerate(r.components):
                comps[off + i] = c
            rels.append(VectorPoly(amb, comps))
    out = FPModule(ring, total, rels, normalize=False)
    out.summand_offsets = offsets
    return out


def exterior_power(M, k):
    """Lambda^k M: generators are k-subsets, relations are wedged relations."""
    if k < 0 or k > M.ngens:
        raise AlgebraError("exterior power out of range")
    amb = M.ambient
    subsets = list(combinations(range(M.ngens), k))
    index = {s: i for i, s in enumerate(subsets)}
    rels = []
    if k >= 1:
        smaller = list(combinations(range(M.ngens), k - 1))
        for a in M.relations:
            for T in smaller:
                comps = [amb.zero()] * len(subsets)
                for i in range(M.ngens):
                    if i in T:
                        continue
                    c = a.components[i]
                    if c.is_zero():
                        continue
                    merged = tuple(sorted(T + (i,)))
                    sign = (-1) ** sum(1 for t in T if t < i)
                    comps[index[merged]] = comps[index[merged]] + (
                        c if sign == 1 else -c
                    )
                rels.append(VectorPoly(amb, comps))
    grading = None
    if M.grading is not None:
        grading = [sum(M.grading[i] for i in s) for s in subsets]
    out = FPModule(M.ring, len(subsets), rels, grading=grading)
    out.subset_labels = subsets
    return out


# ---------------------------------------------------------------------------
# numerics at a maximal ideal, Hilbert functions, generic rank

def fp_rank(rows, p):
    """Rank of an integer matrix mod p by Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inv_mod(rows[r][col], p)
        rows[r] = [c * inv % p for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
        rank += 1
    return rank


def minimal_generators_at(M, max_ideal):
    """dim_{R/m} M/mM for a maximal ideal with residue field F_p."""
    amb = M.ambient
    if isinstance(max_ideal, (list, tuple)):
        max_ideal = Ideal(amb, max_ideal)
    gens = list(max_ideal.gens) + modulus_gens(M.ring)
    residue = QuotientRing(amb, gens)
    basis = residue.standard_monomials()
    if basis is None or basis != [(0,) * amb.nvars]:
        raise NotMaximal("residue ring is not F_p; desk scale requires residue field F_p")
    p = amb.p
    rows = []
    for rel in M.relations:
        row = []
        for c in rel.components:
            v = residue.reduce(c).constant_value()
            row.append(v if v is not None else 0)
        rows.append(row)
    if not rows:
        return M.ngens
    return M.ngens - fp_rank(rows, p)


def _monomials_of_degree(nvars, d):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def hilbert_function(M, d_max):
    """dim_Fp M_d for 0 <= d <= d_max, by monomial counting."""
    if M.grading is None:
        raise NotGraded("module carries no grading")
    amb = M.ambient
    for rel in M.relations:
        degs = set()
        for j, c in enumerate(rel.components):
            for mono in c.terms:
                degs.add(sum(mono) + M.grading[j])
        if len(degs) > 1:
            raise NotGraded("inhomogeneous relation %r" % (rel,))
    gb = M.relgb().basis
    from .groebner import leading_term

    leads = [leading_term(v, M.ngens, amb.order) for v in gb]
    out = []
    for d in range(d_max + 1):
        count = 0
        for j in range(M.ngens):
            dd = d - M.grading[j]
            if dd < 0:
                continue
            for mono in _monomials_of_degree(amb.nvars, dd):
                divisible = False
                for (pos, lm, _c) in leads:
                    if pos == j and all(x <= y for x, y in zip(lm, mono)):
                        divisible = True
                        break
                if not divisible:
                    count += 1
        out.append(count)
    return out


def _det(ring, rows):
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    acc = ring.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det(ring, minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def generic_rank(M):
    """Rank of M at the generic point of a domain: ngens minus the largest
    size of a nonvanishing minor of the presentation matrix."""
    amb = M.ambient
    rels = [r for r in M.relations]
    m = M.ngens
    q = len(rels)
    if q == 0 or m == 0:
        return m
    entries = [[rels[t].components[i] for t in range(q)] for i in range(m)]
    reduce = M.ring.reduce if isinstance(M.ring, QuotientRing) else (lambda f: f)
    for size in range(min(m, q), 0, -1):
        for rowset in combinations(range(m), size):
            for colset in combinations(range(q), size):
                sub = [[entries[i][t] for t in colset] for i in rowset]
                if not reduce(_det(amb, sub)).is_zero():
                    return m - size
    return m
