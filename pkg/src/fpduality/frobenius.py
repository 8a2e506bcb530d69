"""The Frobenius endomorphism as a computational object.

Over F_p every polynomial splits uniquely as u = sum_a v_a^{p^e} x^a with a
ranging over exponent vectors below p^e, because the prime field is fixed
by Frobenius.  That decomposition is exact coefficient surgery, so
pushforward presentations, p-basis tests and the trace generator all avoid
Groebner computations except where relations genuinely enter.

The twisted scalar action r . F_*(s) = F_*(r^{p^e} s) is never represented
natively: all module data is stored untwisted via the decomposition.
"""

from itertools import product

from .config import config
from .errors import AlgebraError, NoPBasis, SizeCapExceeded
from .groebner import Ideal, QuotientRing, VectorPoly, ambient_of
from .modules import FPModule, ModuleMap, free_module, kernel_cokernel
from .polyring import Polynomial
from .complexes import FreeComplex


def bracket_power(I, e):
    """I^{[p^e]}: the ideal generated by p^e-th powers of the generators."""
    if e < 0:
        raise AlgebraError("bracket power needs e >= 0")
    q = I.ring.p ** e
    return Ideal(I.ring, [g ** q for g in I.gens])


def restricted_monomials(nvars, q):
    """All exponent tuples with entries in [0, q), sorted."""
    return sorted(product(range(q), repeat=nvars))


def frobenius_decompose(f, e=1):
    """dict a -> v_a with f = sum v_a^{p^e} x^a, entries of a below p^e."""
    ring = f.ring
    q = ring.p ** e
    parts = {}
    for mono, c in f.terms.items():
        rem = tuple(x % q for x in mono)
        quot = tuple(x // q for x in mono)
        d = parts.setdefault(rem, {})
        d[quot] = (d.get(quot, 0) + c) % ring.p
    out = {}
    for rem, terms in parts.items():
        terms = {m: c for m, c in terms.items() if c}
        if terms:
            out[rem] = Polynomial(ring, terms)
    return out


def _check_size(p, e, nvars):
    if p ** (e * nvars) > config.size_cap:
        raise SizeCapExceeded(
            "pushforward basis of size %d exceeds the cap %d"
            % (p ** (e * nvars), config.size_cap)
        )


class PushforwardIndex:
    """Basis bookkeeping for F^e_* of a module on r generators."""

    def __init__(self, ring, e, r):
        amb = ambient_of(ring)
        self.p = amb.p
        self.e = e
        self.q = self.p ** e
        self.nvars = amb.nvars
        self.r = r
        self.monomials = restricted_monomials(self.nvars, self.q)
        self.position = {m: i for i, m in enumerate(self.monomials)}
        self.total = len(self.monomials) * r

    def index(self, mono, j):
        return self.position[tuple(mono)] * self.r + j

    def tag(self, idx):
        return (self.monomials[idx // self.r], idx % self.r)


def pushforward_vector(index, v, e):
    """Coordinates of F^e_*(v) for v a coordinate vector of the module."""
    amb = v.ring
    comps = [amb.zero()] * index.total
    for j, f in enumerate(v.components):
        if f.is_zero():
            continue
        for a, va in frobenius_decompose(f, e).items():
            idx = index.index(a, j)
            comps[idx] = comps[idx] + va
    return VectorPoly(amb, comps)


def pushforward_module(M, e=1):
    """F^e_* M as an FPModule over the same ring, untwisted presentation.

    Generators are tagged (a, j) for a restricted monomial and j a
    generator of M; the relation columns are the decompositions of
    x^b * rho over all restricted b and relations rho of M.
    """
    amb = M.ambient
    _check_size(amb.p, e, amb.nvars)
    index = PushforwardIndex(M.ring, e, M.ngens)
    rels = []
    for b in index.monomials:
        xb = amb.monomial(b)
        for rho in M.relations:
            shifted = VectorPoly(amb, [c * xb for c in rho.components])
            rels.append(pushforward_vector(index, shifted, e))
    out = FPModule(M.ring, index.total, rels)
    out.pushforward_index = index
    return out


class FrobPushforward:
    """F^e_* R with monomial basis bookkeeping and the twist marker."""

    def __init__(self, R, e=1):
        self.ring = R
        self.e = e
        amb = ambient_of(R)
        self.p = amb.p
        base = FPModule(R, 1, [])
        self.module = pushforward_module(base, e)
        self.index = self.module.pushforward_index
        self.basis_tags = [self.index.tag(i)[0] for i in range(self.index.total)]
        self.twist = (self.p, e)

    def coords(self, u):
        """Coordinates of F^e_*(u) on the restricted monomial generators."""
        amb = ambient_of(self.ring)
        return pushforward_vector(self.index, VectorPoly(amb, [u]), self.e)

    def multiplication_map(self, s):
        """The R-linear map F_*(u) -> F_*(s u) on this presentation."""
        amb = ambient_of(self.ring)
        cols = []
        for a in self.index.monomials:
            cols.append(self.coords(s * amb.monomial(a)))
        return ModuleMap(self.module, self.module, cols, check=False)


def frobenius_pushforward(R, e=1):
    return FrobPushforward(R, e)


def pushforward_complex(T, e=1):
    """Apply F^e_* to a free complex, expanding each entry into a block."""
    ring = T.ring
    amb = ambient_of(ring)
    _check_size(amb.p, e, amb.nvars)
    indices = {d: PushforwardIndex(ring, e, T.rank(d)) for d in T.degrees()}
    terms = {d: indices[d].total for d in T.degrees()}
    diffs = {}
    for d, cols in T.diffs.items():
        src, tgt = indices[d], indices[d + 1]
        out_cols = [None] * src.total
        for b_idx, b in enumerate(src.monomials):
            xb = amb.monomial(b)
            for j, col in enumerate(cols):
                shifted = VectorPoly(amb, [c * xb for c in col.components])
                out_cols[src.index(b, j)] = pushforward_vector(tgt, shifted, e)
        diffs[d] = out_cols
    out = FreeComplex(ring, terms, diffs)
    out.pushforward_indices = indices
    return out


# ---------------------------------------------------------------------------
# p-generating sets and p-bases

def _coordinate_map(R, xs, e=1):
    """The map R^(qg-monomials in xs) -> F^e_* R sending e_a to F_*(xs^a)."""
    amb = ambient_of(R)
    q = amb.p ** e
    if amb.p ** (e * len(xs)) > config.size_cap:
        raise SizeCapExceeded("restricted monomials in the tuple exceed the size cap")
    push = FrobPushforward(R, e)
    tuples = restricted_monomials(len(xs), q)
    cols = []
    for a in tuples:
        u = amb.one()
        for g, k in zip(xs, a):
            if k:
                u = u * (g ** k)
        if isinstance(R, QuotientRing):
            u = R.reduce(u)
        cols.append(push.coords(u))
    source = free_module(R, len(tuples))
    theta = ModuleMap(source, push.module, cols, check=False)
    theta.tuple_monomials = tuples
    theta.push = push
    return theta


def is_p_generating(R, xs):
    """True iff R = R^p[xs]: the coordinate map is surjective."""
    theta = _coordinate_map(R, xs)
    _ker, coker = kernel_cokernel(theta)
    return coker.is_zero_module()


def is_p_basis(R, xs):
    """True iff the restricted monomials in xs form a free basis over R^p."""
    theta = _coordinate_map(R, xs)
    ker, coker = kernel_cokernel(theta)
    return coker.is_zero_module() and ker.is_zero_module()


def xs_coordinates(R, xs, u, e=1):
    """c_a with u = sum c_a^{p^e} xs^a (a below p^e), or None.

    The untwisted coordinates of F^e_*(u) on the restricted monomials of
    the tuple, solved through the canonical pushforward presentation.
    """
    from .complexes import solve_in_span

    theta = _coordinate_map(R, xs, e)
    push = theta.push
    target = push.coords(u if not isinstance(R, QuotientRing) else R.reduce(u))
    cols = list(theta.columns) + list(push.module.relations)
    coeffs = solve_in_span(target, cols, R, push.module.ngens)
    if coeffs is None:
        return None
    out = {}
    for a, c in zip(theta.tuple_monomials, coeffs[: len(theta.tuple_monomials)]):
        if isinstance(R, QuotientRing):
            c = R.reduce(c)
        if not c.is_zero():
            out[a] = c
    return out


def pbasis_trace_generator(R, xs, omega_complex):
    """The free generator of Hom(F_*R, omega) attached to a p-basis.

    Sends F_*(xs^(p-1,...,p-1)) to the distinguished volume form and every
    other restricted monomial in xs to zero.  Returns the ModuleMap on the
    free xs-monomial model together with a freeness certificate: the matrix
    of all precompositions with basis multiplications is invertible.
    """
    amb = ambient_of(R)
    p = amb.p
    n = len(xs)
    if not is_p_basis(R, xs):
        raise NoPBasis("the given tuple is not a p-basis")
    degrees = omega_complex.degrees()
    if len(degrees) != 1 or omega_complex.rank(degrees[0]) != 1:
        raise AlgebraError("expected a rank-one volume complex")
    tuples = restricted_monomials(n, p)
    top = tuple([p - 1] * n)
    omega_module = free_module(R, 1)
    source = free_module(R, len(tuples))
    cols = []
    for a in tuples:
        if a == top:
            cols.append(VectorPoly(amb, [amb.one()]))
        else:
            cols.append(VectorPoly(amb, [amb.zero()]))
    phi = ModuleMap(source, omega_module, cols, check=False)
    phi.basis_tuples = tuples
    phi.volume_degree = degrees[0]

    # freeness certificate: Phi composed with multiplication by each basis
    # monomial spans Hom(F_*R, omega); the evaluation matrix is invertible
    from .modules import _det

    rows = []
    for b in tuples:
        row = []
        for a in tuples:
            # coefficient of the top monomial in xs^{a+b}
            combined = tuple(x + y for x, y in zip(a, b))
            u = amb.one()
            for g, k in zip(xs, combined):
                if k:
                    u = u * (g ** k)
            coords = xs_coordinates(R, xs, u)
            entry = coords.get(top) if coords else None
            row.append(entry if entry is not None else amb.zero())
        rows.append(row)
    det = _det(amb, rows)
    if isinstance(R, QuotientRing):
        det = R.reduce(det)
    cval = det.constant_value()
    phi.freeness_certificate = cval is not None and cval != 0
    if not phi.freeness_certificate:
        raise AlgebraError("trace generator does not freely generate; not a p-basis?")
    return phi


def regrouping_map(R, e):
    """The explicit iso F^{e+1}_* R -> F^e_*(F^1_* R) by exponent carrying."""
    amb = ambient_of(R)
    big = FrobPushforward(R, e + 1)
    inner = FrobPushforward(R, 1)
    outer = pushforward_module(inner.module, e)
    oidx = outer.pushforward_index
    cols = []
    p = amb.p
    for c in big.index.monomials:
        a = tuple(x // p for x in c)
        b = tuple(x % p for x in c)
        j = inner.index.index(b, 0)
        comps = [amb.zero()] * outer.ngens
        comps[oidx.index(a, j)] = amb.one()
        cols.append(VectorPoly(amb, comps))
    return ModuleMap(big.module, outer, cols, check=True)
