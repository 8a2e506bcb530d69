"""Buchberger engine for ideals and submodules of free modules.

One extended computation produces three artifacts at once: the reduced
Groebner basis, a certificate expressing every basis element in the input
generators, and generators of the syzygy module.  The trick is the usual
one: augment each input vector with a unit tail and run Buchberger under a
block order in which every term of the original free module dominates every
tail term.

Module term order: position-over-term over the ring's order, positions
compared ascending (e_0 is the largest position).  Pair selection is the
normal strategy (smallest lcm); Gebauer-Moeller elimination prunes the pair
queue.  Runs are deterministic.
"""

import heapq

from .config import config
from .errors import AlgebraError, DegreeBudgetExceeded, RingMismatch
from .fp import inv_mod
from .polyring import (
    PolyRing,
    Polynomial,
    MonomialOrder,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class VectorPoly:
    """Element of a free module R^rank, stored as a tuple of polynomials."""

    __slots__ = ("ring", "components", "_leads")

    def __init__(self, ring, components):
        components = tuple(components)
        for c in components:
            if c.ring != ring:
                raise RingMismatch("vector components must share one ambient ring")
        self.ring = ring
        self.components = components
        self._leads = None

    @property
    def rank(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        return VectorPoly(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorPoly(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorPoly(self.ring, [-a for a in self.components])

    def scale(self, c):
        return VectorPoly(self.ring, [a.scale(c) for a in self.components])

    def mul_term(self, mono, coeff):
        return VectorPoly(self.ring, [a.mul_term(mono, coeff) for a in self.components])

    def mul_poly(self, f):
        return VectorPoly(self.ring, [a * f for a in self.components])

    def __eq__(self, other):
        return (
            isinstance(other, VectorPoly)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.ring, self.components))

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.components) + ")"


def unit_vector(ring, rank, i, poly=None):
    comps = [ring.zero()] * rank
    comps[i] = poly if poly is not None else ring.one()
    return VectorPoly(ring, comps)


def vector_from_poly(f):
    return VectorPoly(f.ring, (f,))


# ---------------------------------------------------------------------------
# leading terms under POT with an optional primary block

def leading_term(v, primary, order):
    """Largest (pos, mono, coeff); primary positions dominate the rest.

    Cached per (primary, order) on the immutable vector."""
    cache_key = (primary, order.name, order.nblock)
    if v._leads is None:
        v._leads = {}
    elif cache_key in v._leads:
        return v._leads[cache_key]
    best = None
    best_key = None
    okey = order.key
    for i, f in enumerate(v.components):
        if not f.terms:
            continue
        m, c = f.leading()
        block = 0 if i < primary else 1
        key = (-block, -i, okey(m))
        if best_key is None or key > best_key:
            best_key = key
            best = (i, m, c)
    v._leads[cache_key] = best
    return best


def term_key(pos, mono, primary, order):
    block = 0 if pos < primary else 1
    return (-block, -pos, order.key(mono))


def _budget_check(deg):
    if deg > config.degree_budget:
        raise DegreeBudgetExceeded(
            "intermediate degree %d exceeds the budget %d" % (deg, config.degree_budget)
        )


class _Rev:
    """Inverts comparisons so heapq pops the largest term first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k


def division(v, divisors, primary=None, order=None, budget=True):
    """Divide v by the divisors; returns (quotients, remainder).

    v = sum quotients[k] * divisors[k] + remainder, and no remainder term
    is divisible by any divisor leading term.  The working vector is a flat
    coefficient dictionary driven by a lazy max-heap of term keys.
    """
    ring = v.ring
    p = ring.p
    rank = v.rank
    primary = rank if primary is None else primary
    order = order or ring.order
    okey = order.key
    leads = [leading_term(g, primary, order) for g in divisors]
    by_pos = {}
    for k, lk in enumerate(leads):
        if lk is not None:
            by_pos.setdefault(lk[0], []).append((k, lk[1], lk[2]))
    quotients = [dict() for _ in divisors]
    remainder = [dict() for _ in range(rank)]
    terms = {}
    heap = []

    def push(pos, mono, coeff):
        key = (pos, mono)
        c = (terms.get(key, 0) + coeff) % p
        if c:
            if key not in terms:
                block = 0 if pos < primary else 1
                heapq.heappush(heap, (_Rev((-block, -pos, okey(mono))), pos, mono))
            terms[key] = c
        elif key in terms:
            del terms[key]

    for i, f in enumerate(v.components):
        for mono, c in f.terms.items():
            push(i, mono, c)
    while heap:
        _k, pos, mono = heap[0]
        coeff = terms.get((pos, mono), 0)
        if coeff == 0:
            heapq.heappop(heap)
            continue
        hit = None
        for (k, lmono, lcoeff) in by_pos.get(pos, ()):
            if mono_divides(lmono, mono):
                hit = (k, lmono, lcoeff)
                break
        if hit is None:
            heapq.heappop(heap)
            r = remainder[pos]
            c2 = (r.get(mono, 0) + coeff) % p
            if c2:
                r[mono] = c2
            elif mono in r:
                del r[mono]
            del terms[(pos, mono)]
            continue
        if budget:
            _budget_check(mono_degree(mono))
        k, lmono, lcoeff = hit
        q_mono = mono_div(mono, lmono)
        q_coeff = coeff * inv_mod(lcoeff, p) % p
        qd = quotients[k]
        q_new = (qd.get(q_mono, 0) + q_coeff) % p
        if q_new:
            qd[q_mono] = q_new
        elif q_mono in qd:
            del qd[q_mono]
        for i, comp in enumerate(divisors[k].components):
            for m2, c2 in comp.terms.items():
                push(i, mono_mul(m2, q_mono), -(c2 * q_coeff))
    rem = VectorPoly(ring, [Polynomial(ring, d) for d in remainder])
    quo = [Polynomial(ring, d) for d in quotients]
    return quo, rem


def normal_form_vector(v, gb, primary=None, order=None):
    return division(v, gb, primary=primary, order=order)[1]


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller pair elimination

def _s_pair_data(f, g, primary, order):
    lf = leading_term(f, primary, order)
    lg = leading_term(g, primary, order)
    if lf[0] != lg[0]:
        return None
    lcm = mono_lcm(lf[1], lg[1])
    return (lf[0], lcm, lf, lg)


def _reduced_basis(basis, primary, order):
    """Minimalize and tail-reduce; leads made monic, deterministic output."""
    leads = [leading_term(g, primary, order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        li = leads[i]
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            lj = leads[j]
            if lj[0] == li[0] and mono_divides(lj[1], li[1]):
                if (mono_degree(lj[1]) < mono_degree(li[1])) or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(g)
    reduced = []
    for idx, g in enumerate(keep):
        others = [h for j, h in enumerate(keep) if j != idx]
        if others:
            _, g = division(g, others, primary=primary, order=order)
        if g.is_zero():
            continue
        _, _, c = leading_term(g, primary, order)
        g = g.scale(inv_mod(c, g.ring.p))
        reduced.append(g)
    reduced.sort(
        key=lambda h: term_key(*leading_term(h, primary, order)[:2], primary, order),
        reverse=True,
    )
    return reduced


def buchberger(vectors, primary=None, order=None, product_criterion=None):
    """Reduced Groebner basis of the submodule spanned by the vectors."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    ring = vectors[0].ring
    rank = vectors[0].rank
    primary = rank if primary is None else primary
    order = order or ring.order
    if product_criterion is None:
        # Buchberger's coprimality criterion is only sound for ring ideals
        product_criterion = rank == 1

    basis = []
    pairs = []  # entries: (pos, lcm, i, j)

    def update(h):
        # Gebauer-Moeller update of the pair queue with the new element h
        t = len(basis)
        lh = leading_term(h, primary, order)
        fresh = []
        for i, g in enumerate(basis):
            lg = leading_term(g, primary, order)
            if lg[0] != lh[0]:
                continue
            fresh.append((lg[0], mono_lcm(lg[1], lh[1]), i, t))
        # criterion M: drop new pairs whose lcm strictly contains another new lcm
        fresh2 = []
        for a in fresh:
            dominated = False
            for b in fresh:
                if a is b:
                    continue
                if mono_divides(b[1], a[1]) and b[1] != a[1]:
                    dominated = True
                    break
            if not dominated:
                fresh2.append(a)
        # criterion F: keep one representative per lcm value
        seen = {}
        fresh3 = []
        for a in fresh2:
            key = (a[0], a[1])
            if key in seen:
                continue
            seen[key] = True
            fresh3.append(a)
        # criterion B (product criterion), ring case only
        if product_criterion:
            kept = []
            for a in fresh3:
                i = a[2]
                lg = leading_term(basis[i], primary, order)
                if mono_mul(lg[1], lh[1]) == a[1]:
                    continue
                kept.append(a)
            fresh3 = kept
        # prune old pairs via the chain criterion against lh
        pruned = []
        for (pos, lcm, i, j) in pairs:
            if pos == lh[0] and mono_divides(lh[1], lcm):
                lij = lcm
                li = leading_term(basis[i], primary, order)
                lj = leading_term(basis[j], primary, order)
                if mono_lcm(li[1], lh[1]) != lij and mono_lcm(lj[1], lh[1]) != lij:
                    continue
            pruned.append((pos, lcm, i, j))
        basis.append(h)
        pruned.extend(fresh3)
        return pruned

    for v in vectors:
        _, _, c = leading_term(v, primary, order)
        pairs = update(v.scale(inv_mod(c, ring.p)))

    while pairs:
        # normal selection: smallest lcm in the term order, then index order
        pairs.sort(key=lambda a: (term_key(a[0], a[1], primary, order), -a[2], -a[3]))
        pos, lcm, i, j = pairs.pop(0)
        _budget_check(mono_degree(lcm))
        f, g = basis[i], basis[j]
        lf = leading_term(f, primary, order)
        lg = leading_term(g, primary, order)
        p = ring.p
        sf = f.mul_term(mono_div(lcm, lf[1]), 1)
        sg = g.mul_term(mono_div(lcm, lg[1]), inv_mod(lg[2], p) * lf[2] % p)
        spoly = sf - sg
        _, rem = division(spoly, basis, primary=primary, order=order)
        if rem.is_zero():
            continue
        _, _, c = leading_term(rem, primary, order)
        pairs = update(rem.scale(inv_mod(c, p)))

    return _reduced_basis(basis, primary, order)


class ModuleGB:
    """Groebner data for a list of generators of a submodule of R^rank.

    Holds the reduced basis plus, for each basis element, a certificate
    writing it as a combination of the input generators.  reduce() divides
    and re-expresses the quotient part in the inputs, which is the lifting
    primitive everything downstream leans on.
    """

    def __init__(self, ring, rank, generators, order=None):
        self.ring = ring
        self.rank = rank
        self.generators = list(generators)
        self.order = order or ring.order
        k = len(self.generators)
        augmented = []
        for i, v in enumerate(self.generators):
            comps = list(v.components) + [ring.zero()] * k
            comps[rank + i] = ring.one()
            augmented.append(VectorPoly(ring, comps))
        full = buchberger(augmented, primary=rank, order=self.order, product_criterion=False)
        self.basis = []
        self.certificates = []
        self.syzygies = []
        for w in full:
            head = VectorPoly(ring, w.components[:rank])
            tail = VectorPoly(ring, w.components[rank:])
            if head.is_zero():
                self.syzygies.append(tail)
            else:
                self.basis.append(head)
                self.certificates.append(tail)

    def reduce(self, v):
        """(coefficients on the input generators, normal form of v)."""
        if v.rank != self.rank:
            raise AlgebraError("vector rank %d does not match module rank %d" % (v.rank, self.rank))
        quots, rem = division(v, self.basis, primary=self.rank, order=self.order)
        k = len(self.generators)
        coeffs = [self.ring.zero() for _ in range(k)]
        for q, cert in zip(quots, self.certificates):
            if q.is_zero():
                continue
            for idx in range(k):
                coeffs[idx] = coeffs[idx] + q * cert.components[idx]
        return coeffs, rem

    def normal_form(self, v):
        return division(v, self.basis, primary=self.rank, order=self.order)[1]

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def lift(self, v):
        """Coefficients expressing v in the generators, or None."""
        coeffs, rem = self.reduce(v)
        if not rem.is_zero():
            return None
        return coeffs


def syzygies(vectors):
    """Generators of the syzygy module of the given vectors."""
    vectors = list(vectors)
    if not vectors:
        return []
    ring = vectors[0].ring
    rank = vectors[0].rank
    mgb = ModuleGB(ring, rank, vectors)
    return mgb.syzygies


def groebner_basis(polys):
    """Reduced Groebner basis for a list of ring elements."""
    vecs = [vector_from_poly(f) for f in polys if not f.is_zero()]
    gb = buchberger(vecs)
    return [v.components[0] for v in gb]


def normal_form(f, gb_polys):
    if isinstance(f, VectorPoly):
        return normal_form_vector(f, gb_polys)
    gbv = [vector_from_poly(g) for g in gb_polys if not g.is_zero()]
    if not gbv:
        return f
    return normal_form_vector(vector_from_poly(f), gbv).components[0]


# ---------------------------------------------------------------------------
# ideals and quotient rings

class Ideal:
    """Ideal of a PolyRing with a lazily cached reduced Groebner basis."""

    def __init__(self, ring, gens):
        self.ring = ring
        fixed = []
        for g in gens:
            if isinstance(g, int):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatch("generator in the wrong ring")
            if not g.is_zero():
                fixed.append(g)
        self.gens = fixed
        self._gb = None
        self._mgb = None

    def groebner(self):
        if self._gb is None:
            self._gb = groebner_basis(self.gens)
        return self._gb

    def module_gb(self):
        if self._mgb is None:
            self._mgb = ModuleGB(self.ring, 1, [vector_from_poly(g) for g in self.gens])
        return self._mgb

    def reduce(self, f):
        return normal_form(f, self.groebner())

    def contains(self, f):
        return self.reduce(f).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self):
        return not self.groebner()

    def is_unit_ideal(self):
        gb = self.groebner()
        return any(g.constant_value() not in (None, 0) for g in gb)

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(repr(g) for g in self.gens)


class QuotientRing:
    """P/I with elements represented by normal forms against the modulus."""

    def __init__(self, ambient, modulus):
        if isinstance(modulus, (list, tuple)):
            modulus = Ideal(ambient, modulus)
        if modulus.ring != ambient:
            raise RingMismatch("modulus lives in a different ring")
        self.ambient = ambient
        self.modulus = modulus
        self.p = ambient.p

    @property
    def variables(self):
        return self.ambient.variables

    @property
    def nvars(self):
        return self.ambient.nvars

    def reduce(self, f):
        if isinstance(f, int):
            f = self.ambient.const(f)
        return self.modulus.reduce(f)

    def zero(self):
        return self.ambient.zero()

    def one(self):
        return self.reduce(self.ambient.one())

    def var(self, name_or_index):
        return self.reduce(self.ambient.var(name_or_index))

    def gens(self):
        return [self.var(i) for i in range(self.ambient.nvars)]

    def elements_equal(self, f, g):
        return self.reduce(f - g).is_zero()

    def is_zero_ring(self):
        return self.modulus.is_unit_ideal()

    def standard_monomials(self, max_extra=None):
        """Monomial basis of P/I if finite dimensional, else None.

        max_extra bounds the search degree beyond the lead-term degrees.
        """
        gb = self.modulus.groebner()
        leads = [g.leading()[0] for g in gb] if gb else []
        n = self.ambient.nvars
        if n == 0:
            return [()] if not self.is_zero_ring() else []
        # finite dimensional iff some pure power of each variable leads
        bounds = [None] * n
        for m in leads:
            support = [i for i, e in enumerate(m) if e]
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or m[i] < bounds[i]:
                    bounds[i] = m[i]
        if any(b is None for b in bounds):
            return None
        basis = []

        def rec(prefix):
            if len(prefix) == n:
                mono = tuple(prefix)
                for lm in leads:
                    if mono_divides(lm, mono):
                        return
                basis.append(mono)
                return
            i = len(prefix)
            for e in range(bounds[i]):
                rec(prefix + [e])

        rec([])
        basis.sort()
        return basis

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and sorted(map(repr, self.modulus.gens)) == sorted(map(repr, other.modulus.gens))
        )

    def __hash__(self):
        return hash((self.ambient, tuple(sorted(map(repr, self.modulus.gens)))))

    def __repr__(self):
        return "%r/(%s)" % (self.ambient, ", ".join(repr(g) for g in self.modulus.gens))


def ambient_of(ring):
    return ring.ambient if isinstance(ring, QuotientRing) else ring


def modulus_gens(ring):
    if isinstance(ring, QuotientRing):
        return list(ring.modulus.gens)
    return []


def reduce_in(ring, f):
    if isinstance(ring, QuotientRing):
        return ring.reduce(f)
    return f


# ---------------------------------------------------------------------------
# renaming and elimination

def rename_poly(f, target, index_map):
    """Transport f to `target`, sending variable i to variable index_map[i]."""
    n = target.nvars
    acc = {}
    p = target.p
    for m, c in f.terms.items():
        exps = [0] * n
        for i, e in enumerate(m):
            if e:
                exps[index_map[i]] += e
        key = tuple(exps)
        c2 = (acc.get(key, 0) + c) % p
        if c2:
            acc[key] = c2
        elif key in acc:
            del acc[key]
    return Polynomial(target, acc)


def elimination_kernel(phi):
    """Kernel of a ring map as an ideal of the source ambient ring.

    Graph-ideal method: adjoin the source variables to the target, impose
    y_j - phi(y_j), eliminate the target variables with a block order.
    """
    src_amb = phi.source_ambient
    tgt_amb = phi.target_ambient
    nt, ns = tgt_amb.nvars, src_amb.nvars
    names = ["@t%d" % i for i in range(nt)] + ["@s%d" % j for j in range(ns)]
    big = PolyRing(src_amb.p, names, MonomialOrder("block", nt) if nt else src_amb.order)
    tmap = list(range(nt))
    smap = [nt + j for j in range(ns)]
    gens = []
    for g in modulus_gens(phi.target):
        gens.append(rename_poly(g, big, tmap))
    for j in range(ns):
        img = rename_poly(phi.images[j], big, tmap)
        gens.append(big.var(nt + j) - img)
    gb = groebner_basis(gens)
    back = {nt + j: j for j in range(ns)}
    kernel = []
    for g in gb:
        if all(all(e == 0 for e in m[:nt]) for m in g.terms):
            kernel.append(rename_poly(g, src_amb, [back.get(i, 0) for i in range(big.nvars)]))
    kernel.extend(modulus_gens(phi.source))
    return Ideal(src_amb, kernel)


def ideal_sum(I, J):
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I, J):
    return Ideal(I.ring, [a * b for a in I.gens for b in J.gens])


def ideal_intersection(I, J):
    """The t-trick: (t I + (1-t) J) \\cap R."""
    ring = I.ring
    n = ring.nvars
    names = ("@t",) + ring.variables
    big = PolyRing(ring.p, names, MonomialOrder("block", 1))
    shift = [i + 1 for i in range(n)]
    t = big.var(0)
    one_minus_t = big.one() - t
    gens = [rename_poly(g, big, shift) * t for g in I.gens]
    gens += [rename_poly(g, big, shift) * one_minus_t for g in J.gens]
    gb = groebner_basis(gens)
    back = [0] + list(range(n))
    result = []
    for g in gb:
        if all(m[0] == 0 for m in g.terms):
            result.append(rename_poly(g, ring, back))
    return Ideal(ring, result)


def exact_divide(f, g):
    """f / g when g divides f exactly, else None."""
    if f.is_zero():
        return f.ring.zero()
    quots, rem = division(vector_from_poly(f), [vector_from_poly(g)])
    if not rem.is_zero():
        return None
    return quots[0]


def ideal_quotient(I, J):
    """(I : J) via intersections with principal ideals."""
    ring = I.ring
    result = None
    for g in J.gens:
        if g.is_zero():
            continue
        meet = ideal_intersection(I, Ideal(ring, [g]))
        colon = []
        for h in meet.gens:
            q = exact_divide(h, g)
            if q is None:
                raise AlgebraError("intersection element not divisible; internal error")
            colon.append(q)
        K = Ideal(ring, colon)
        result = K if result is None else ideal_intersection(result, K)
    if result is None:
        return Ideal(ring, [ring.one()])
    return result


def ideal_membership(f, I):
    return I.contains(f)


# ---------------------------------------------------------------------------
# free resolutions (raw matrix form; complexes.py wraps them)

def presentation_resolution(ring, rank, columns, length_cap=None):
    """Iterated syzygies: stages[0] = columns presenting M inside R^rank.

    Returns a list of stages, where stages[k] is a list of VectorPoly
    columns mapping R^{len(stages[k])} -> R^{len(stages[k-1])}.  Stops when
    a syzygy module vanishes.
    """
    if length_cap is None:
        length_cap = ring.nvars + 2
    stages = []
    current = [c for c in columns if not c.is_zero()]
    if not current:
        return stages
    stages.append(current)
    while len(stages) <= length_cap:
        syz = syzygies(stages[-1])
        syz = [s for s in syz if not s.is_zero()]
        if not syz:
            return stages
        stages.append(syz)
    raise AlgebraError(
        "resolution did not terminate within cap %d; this should not happen over a polynomial ring"
        % length_cap
    )
