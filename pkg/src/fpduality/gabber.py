"""Gabber's construction at finite truncation level.

One step adjoins p-th roots of a p-generating tuple: R' = R[X]/(X_i^p -
x_i) with phi(r X_i) = r^p x_i and iota the inclusion.  The infinite limit
ring is represented only through the tower of these stages; kernel
identities and the completion identification are checked on the finite
quotients.
"""

from .errors import AlgebraError, NotPGenerating, NotSurjective
from .frobenius import bracket_power, is_p_generating, xs_coordinates
from .groebner import (
    QuotientRing,
    ambient_of,
    elimination_kernel,
    groebner_basis,
    modulus_gens,
    normal_form,
    rename_poly,
)
from .polyring import MonomialOrder, PolyRing, RingMap


def _fresh_names(existing, wanted):
    out = []
    taken = set(existing)
    for name in wanted:
        cand = name
        while cand in taken:
            cand = "@" + cand
        taken.add(cand)
        out.append(cand)
    return out


def _extend_ring(R, new_names):
    """Ambient of R with extra variables; returns (ring, index map old->new)."""
    amb = ambient_of(R)
    names = _fresh_names(amb.variables, new_names)
    big = PolyRing(amb.p, amb.variables + tuple(names), amb.order)
    index = list(range(amb.nvars))
    return big, index, names


class GabberStage:
    """One p-th-root extension R_i of R_{i-1} along the current tuple."""

    def __init__(self, base, level, ring, phi, iota, pbasis_images, iota_kernel_zero):
        self.base = base
        self.level = level
        self.ring = ring
        self.phi = phi
        self.iota = iota
        self.pbasis_images = pbasis_images
        self.iota_kernel_zero = iota_kernel_zero

    def check_frobenius_identities(self, samples=()):
        """phi o iota = F on the base and iota o phi = F upstairs."""
        R0 = self.phi.target
        amb0 = ambient_of(R0)
        p = amb0.p
        reduce0 = R0.reduce if isinstance(R0, QuotientRing) else (lambda f: f)
        for f in list(amb0.gens()) + list(samples):
            lhs = self.phi.apply(self.iota.apply(f))
            if not reduce0(lhs - f ** p).is_zero():
                return False
        R1 = self.ring
        amb1 = ambient_of(R1)
        for g in amb1.gens():
            lhs = self.iota.apply(self.phi.apply(g))
            if not R1.reduce(lhs - g ** p).is_zero():
                return False
        return True


def gabber_step(R, xs, check_p_generating=True, level=1, root_stub="X"):
    """R' = R[X_1..X_n]/(X_i^p - x_i) with phi, iota and the new p-basis."""
    amb = ambient_of(R)
    p = amb.p
    xs = list(xs)
    if check_p_generating and not is_p_generating(R, xs):
        raise NotPGenerating("the tuple does not p-generate the ring")
    names = ["%s%d_%d" % (root_stub, j + 1, level) for j in range(len(xs))]
    big, index, names = _extend_ring(R, names)
    n0 = amb.nvars
    mod = [rename_poly(g, big, index) for g in modulus_gens(R)]
    roots = [big.var(n0 + j) for j in range(len(xs))]
    for j, x in enumerate(xs):
        mod.append(roots[j] ** p - rename_poly(x, big, index))
    R1 = QuotientRing(big, mod)
    iota = RingMap(R, R1, [R1.reduce(big.var(i)) for i in range(n0)], check=True)
    phi_images = []
    reduceR = R.reduce if isinstance(R, QuotientRing) else (lambda f: f)
    for i in range(n0):
        phi_images.append(reduceR(amb.var(i) ** p))
    for x in xs:
        phi_images.append(reduceR(x))
    phi = RingMap(R1, R, phi_images, check=True)
    ker = elimination_kernel(iota)
    stage = GabberStage(
        base=R,
        level=level,
        ring=R1,
        phi=phi,
        iota=iota,
        pbasis_images=[R1.reduce(r) for r in roots],
        iota_kernel_zero=ker.is_zero(),
    )
    if not stage.check_frobenius_identities():
        raise AlgebraError("Frobenius identities failed on a Gabber step")
    return stage


class GabberTruncation:
    """Level-e stage of the tower with the composite projection to R."""

    def __init__(self, base, xs, stages, pi):
        self.base = base
        self.xs = list(xs)
        self.stages = stages
        self.ring = stages[-1].ring if stages else base
        self.level = len(stages)
        self.pi = pi

    @property
    def pbasis_images(self):
        if not self.stages:
            return list(self.xs)
        return self.stages[-1].pbasis_images


def gabber_truncation(R, xs, e, root_stub="X"):
    """Iterate gabber_step e times; the composite pi_e projects to R."""
    xs = list(xs)
    if not is_p_generating(R, xs):
        raise NotPGenerating("the tuple does not p-generate the ring")
    stages = []
    current = R
    tuple_now = xs
    pi = RingMap.identity(R)
    for k in range(1, e + 1):
        stage = gabber_step(current, tuple_now, check_p_generating=False, level=k, root_stub=root_stub)
        stages.append(stage)
        pi = pi.compose(stage.phi) if k > 1 else stage.phi
        current = stage.ring
        tuple_now = stage.pbasis_images
    if not stages:
        pi = RingMap.identity(R)
    return GabberTruncation(R, xs, stages, pi)


def ring_map_is_surjective(phi):
    """Tag-variable subalgebra membership test for surjectivity."""
    tgt = phi.target
    tgt_amb = ambient_of(tgt)
    n = tgt_amb.nvars
    k = len(phi.images)
    names = list(tgt_amb.variables) + _fresh_names(tgt_amb.variables, ["@g%d" % j for j in range(k)])
    big = PolyRing(tgt_amb.p, names, MonomialOrder("block", n) if n else tgt_amb.order)
    idx = list(range(n))
    gens = [rename_poly(g, big, idx) for g in modulus_gens(tgt)]
    for j, img in enumerate(phi.images):
        gens.append(big.var(n + j) - rename_poly(img, big, idx))
    gb = groebner_basis(gens)
    for i in range(n):
        nf = normal_form(rename_poly(tgt_amb.var(i), big, idx), gb)
        if any(any(m[:n][j] for j in range(n)) for m in nf.terms):
            return False
    return True


def verify_kernel_bracket(S, pi, e):
    """ker(pi_e) = (ker pi)^{[p^e]} through the lifted tower stages.

    S must be a polynomial ring whose variables are the certified p-basis;
    pi: S ->> R surjective.  The stage maps send the basis to the stage
    roots, as in the universal factorization through the tower.
    """
    if isinstance(S, QuotientRing):
        raise AlgebraError("the regular cover must be presented as a polynomial ring")
    if not ring_map_is_surjective(pi):
        raise NotSurjective("pi is not surjective onto the target")
    R = pi.target
    xs = list(pi.images)
    J = elimination_kernel(pi)
    if e == 0:
        return True
    tower = gabber_truncation(R, xs, e)
    Re = tower.ring
    roots = tower.pbasis_images
    pi_e = RingMap(S, Re, roots, check=False)
    ker_e = elimination_kernel(pi_e)
    expected = bracket_power(J, e)
    return ker_e.equals(expected)


def phi_inverse_for_pbasis(stage):
    """Inverse of phi: R' -> R when the tuple is a p-basis of reduced R.

    Sends each base variable through its p-th-root expansion in the tuple;
    returns the certified inverse RingMap or None."""
    R = stage.base
    amb = ambient_of(R)
    R1 = stage.ring
    amb1 = ambient_of(R1)
    n0 = amb.nvars
    xs = stage.phi.images[n0:]
    images = []
    for i in range(n0):
        v = amb.var(i)
        coords = xs_coordinates(R, xs, v if not isinstance(R, QuotientRing) else R.reduce(v))
        if coords is None:
            return None
        acc = amb1.zero()
        for a, c in coords.items():
            term = rename_poly(c, amb1, list(range(n0)))
            for j, k in enumerate(a):
                if k:
                    root = amb1.var(n0 + j)
                    term = term * (root ** k)
            acc = acc + term
        images.append(R1.reduce(acc))
    try:
        rho = RingMap(R, R1, images, check=True)
    except AlgebraError:
        return None
    # certify both composites are the identity on generators
    for i in range(n0):
        v = amb.var(i)
        if not (R.reduce(stage.phi.apply(rho.apply(v)) - v).is_zero()
                if isinstance(R, QuotientRing)
                else (stage.phi.apply(rho.apply(v)) - v).is_zero()):
            return None
    for i in range(amb1.nvars):
        w = amb1.var(i)
        if not R1.reduce(rho.apply(stage.phi.apply(w)) - w).is_zero():
            return None
    return rho


def extend_pgens_check(R, xs, ys, e):
    """Cor: G(R; x, y) = G(R; x)[[t]] at truncation level e.

    Certifies an explicit ring isomorphism between the level-e truncation
    for the extended tuple and the level-e truncation for xs with adjoined
    variables killed by (Y_i - g_i)^{p^e}, g_i a lift of y_i."""
    xs, ys = list(xs), list(ys)
    if not is_p_generating(R, xs):
        raise NotPGenerating("the base tuple does not p-generate")
    if not ys:
        return True
    amb = ambient_of(R)
    p = amb.p
    q = p ** e
    T1 = gabber_truncation(R, xs + ys, e, root_stub="Z")
    TX = gabber_truncation(R, xs, e, root_stub="X")
    ambx = ambient_of(TX.ring)
    n0 = amb.nvars
    nx = len(xs)
    # lifts g_i of y_i into the stage-e ring via p^e-th root coordinates
    lifts = []
    for y in ys:
        coords = xs_coordinates(R, xs, y if not isinstance(R, QuotientRing) else R.reduce(y), e=e)
        if coords is None:
            raise NotPGenerating("cannot expand the extra element in the tuple")
        acc = ambx.zero()
        for a, c in coords.items():
            term = rename_poly(c, ambx, list(range(n0)))
            for j, k in enumerate(a):
                if k:
                    # stage-e root of xs_j sits at a deterministic position
                    root = ambx.var(n0 + (e - 1) * nx + j)
                    term = term * (root ** k)
            acc = acc + term
        lifts.append(acc)
    # T2: adjoin one variable per y with (Y - g)^{p^e} = 0
    names = ["t%d" % (i + 1) for i in range(len(ys))]
    big, idx, names = _extend_ring(TX.ring, names)
    mod = [rename_poly(g, big, idx) for g in modulus_gens(TX.ring)]
    tvars = [big.var(ambx.nvars + i) for i in range(len(ys))]
    glifts = [rename_poly(g, big, idx) for g in lifts]
    for t, g in zip(tvars, glifts):
        mod.append((t - g) ** q)
    T2 = QuotientRing(big, mod)
    # psi: T1 -> T2.  T1's ambient lists, per level, the roots of the whole
    # tuple (xs then ys); a level-k root of y_i maps to t_i^{p^{e-k}}.
    amb1 = ambient_of(T1.ring)
    ntuple = nx + len(ys)
    images = [T2.reduce(big.var(i)) for i in range(n0)]
    for k in range(1, e + 1):
        for j in range(nx):
            images.append(T2.reduce(big.var(n0 + (k - 1) * nx + j)))
        for i in range(len(ys)):
            images.append(T2.reduce(tvars[i] ** (p ** (e - k))))
    psi = RingMap(T1.ring, T2, images, check=True)
    # inverse: base vars and xs-roots map identically; t_i to the top root
    inv_images = [T1.ring.reduce(amb1.var(i)) for i in range(n0)]
    for k in range(1, e + 1):
        base_pos = n0 + (k - 1) * ntuple
        for j in range(nx):
            inv_images.append(T1.ring.reduce(amb1.var(base_pos + j)))
    for i in range(len(ys)):
        top_pos = n0 + (e - 1) * ntuple + nx + i
        inv_images.append(T1.ring.reduce(amb1.var(top_pos)))
    tau = RingMap(T2, T1.ring, inv_images, check=True)
    # both composites are the identity on generators
    for i in range(amb1.nvars):
        w = amb1.var(i)
        if not T1.ring.reduce(tau.apply(psi.apply(w)) - w).is_zero():
            return False
    for i in range(big.nvars):
        w = big.var(i)
        if not T2.reduce(psi.apply(tau.apply(w)) - w).is_zero():
            return False
    return True
