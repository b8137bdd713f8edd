"""Strong crossed modules with fixed kernel V and cokernel h, and their classes in H^3(h, V).

Cochains with values in a 2-vector space that is not a module of the
algebra in question (for instance m-valued cochains on h) are stored as
repcoh Cochains over a trivial module; only their shapes are used then.
"""

from .crossmod import (CMMorphism, CrossedModule, DerivAction, check_cm_morphism,
                       four_term_sequence, perturbed_section)
from .graded import GradedMap, MultiTensor, TwoTermSpace, unit, vadd, vneg, vsub, vzero
from .lie2core import Lie2Algebra, Lie2Hom, RefusalError, Verdict, quotient
from .ratlin import (NoSolution, RationalMatrix, image_basis, in_span, inverse, kernel_basis, rank, section_on_image,
                     solve, span_basis)
from .repcoh import (Cochain, Lie2Module, apply_D, class_coordinates, cochain_blocks, cohomology, coboundary_cached)


# -- cochain plumbing -----------------------------------------------------------

def pullback_module(V, pi):
    """The g-module obtained from an h-module V along a homomorphism pi: g -> h."""
    g = pi.source
    p0, p1 = pi.phi0, pi.phi1
    return Lie2Module.from_functions(
        g, V.space,
        lambda i, u: V.xu(p0.column(i), unit(V.dims[0], u)),
        lambda i, t: V.xm(p0.column(i), unit(V.dims[1], t)),
        lambda a, u: V.au(p1.column(a), unit(V.dims[0], u)),
        lambda i, j, u: vadd(V.xyu(p0.column(i), p0.column(j), unit(V.dims[0], u)),
                             V.au(pi.phi2.evaluate([g.e0(i), g.e0(j)]), unit(V.dims[0], u))))


def precompose(c, f0, f1, module):
    """c(f0 x, ..., f1 a, ...) as a cochain over module (whose algebra is the source of f)."""
    n0, n1 = module.algebra.dims
    vd = module.dims
    comps = {}
    for (p, q, s), t in c.components.items():
        comps[(p, q, s)] = MultiTensor.from_function(
            p, q, n0, n1, vd[s],
            lambda xt, at, t=t: t.evaluate([f0.column(i) for i in xt], [f1.column(a) for a in at]), "V%d" % s)
    return Cochain(module, c.degree, comps)


def postcompose(c, P0, P1, module):
    """Apply P0 to V0-valued blocks and P1 to V1-valued blocks."""
    comps = {b: t.then(P0 if b[2] == 0 else P1, "V%d" % b[2]) for b, t in c.components.items()}
    return Cochain(module, c.degree, comps)


def cochain_from_functions(module, degree, fns):
    """fns maps a block (p, q, s) to fn(xs, as_) on dense basis vectors."""
    g = module.algebra
    n0, n1 = g.dims
    vd = module.dims
    comps = {}
    for b in cochain_blocks(degree):
        p, q, s = b
        fn = fns.get(b)
        if fn is None:
            continue
        comps[b] = MultiTensor.from_function(
            p, q, n0, n1, vd[s], lambda xt, at, fn=fn: fn([g.e0(i) for i in xt], [g.e1(a) for a in at]), "V%d" % s)
    return Cochain(module, degree, comps)


def _ev(c, b, xs, as_=()):
    return c[b].evaluate(list(xs), list(as_))


def _solve_into(B, v, label, witness):
    try:
        return solve(B, v)
    except NoSolution:
        raise RefusalError(label, witness)


def _convert(c, I0, I1, module, label):
    """Express an m-valued cochain through the inclusion (I0, I1) of V, refusing if it does not land in V."""
    comps = {}
    n0, n1 = module.algebra.dims
    vd = module.dims
    for b, t in c.components.items():
        I = I0 if b[2] == 0 else I1
        comps[b] = MultiTensor.from_function(
            b[0], b[1], n0, n1, vd[b[2]],
            lambda xt, at, t=t, I=I, b=b: _solve_into(I, t.column(xt, at), label, (b, xt, at)), "V%d" % b[2])
    return Cochain(module, c.degree, comps)


# -- abelian extensions and the splice ---------------------------------------------

class Extension:
    def __init__(self, algebra, incl, proj):
        self.algebra = algebra
        self.incl = incl
        self.proj = proj


def abelian_extension(h, Q, lam):
    """h (+)_lambda Q for an h-module Q and a 2-cocycle lambda in C^2(h, Q)."""
    if lam.degree != 2 or lam.module.dims != Q.dims or lam.module.algebra.dims != h.dims:
        raise ValueError("lambda must be a 2-cochain on h with values in Q")
    if not apply_D(Cochain(Q, 2, lam.components)).is_zero():
        raise RefusalError("lambda is not a 2-cocycle")
    n0, n1 = h.dims
    q0, q1 = Q.dims
    N0, N1 = n0 + q0, n1 + q1
    L0 = lambda a: _ev(lam, (0, 1, 0), [], [a])
    L1 = lambda x, y: _ev(lam, (2, 0, 0), [x, y])
    L2 = lambda x, a: _ev(lam, (1, 1, 1), [x], [a])
    L3 = lambda x, y, z: _ev(lam, (3, 0, 1), [x, y, z])
    sp0 = lambda v: (tuple(v[:n0]), tuple(v[n0:]))
    sp1 = lambda v: (tuple(v[:n1]), tuple(v[n1:]))
    diff = RationalMatrix.from_columns(
        [(lambda a, n: h.d(a) + vadd(Q.space.d(n), L0(a)))(*sp1(unit(N1, j))) for j in range(N1)], N0) \
        if N1 else RationalMatrix(N0, 0)

    def br00(i, j):
        (x, p), (y, q) = sp0(unit(N0, i)), sp0(unit(N0, j))
        return h.br(x, y) + vadd(Q.xu(x, q), vneg(Q.xu(y, p)), L1(x, y))

    def br01(i, j):
        (x, p), (a, n) = sp0(unit(N0, i)), sp1(unit(N1, j))
        return h.br01(x, a) + vadd(Q.xm(x, n), vneg(Q.au(a, p)), L2(x, a))

    def l3(i, j, k):
        (x, p), (y, q), (z, r) = sp0(unit(N0, i)), sp0(unit(N0, j)), sp0(unit(N0, k))
        return h.l3v(x, y, z) + vadd(L3(x, y, z), vneg(Q.xyu(x, y, r)), vneg(Q.xyu(y, z, p)), vneg(Q.xyu(z, x, q)))

    E = Lie2Algebra.from_functions(TwoTermSpace(N0, N1, diff), br00, br01, l3)
    I0 = RationalMatrix.from_columns([(0,) * n0 + unit(q0, i) for i in range(q0)], N0) if q0 else RationalMatrix(N0, 0)
    I1 = RationalMatrix.from_columns([(0,) * n1 + unit(q1, i) for i in range(q1)], N1) if q1 else RationalMatrix(N1, 0)
    P0 = RationalMatrix.from_rows([unit(N0, i) for i in range(n0)], N0) if n0 else RationalMatrix(0, N0)
    P1 = RationalMatrix.from_rows([unit(N1, i) for i in range(n1)], N1) if n1 else RationalMatrix(0, N1)
    return Extension(E, GradedMap(I0, I1), Lie2Hom(E, h, GradedMap(P0, P1)))


def module_map_residuals(A, B, f):
    """f: A -> B as a map of modules over the same algebra (chain map and equivariant)."""
    v = Verdict()
    if not f.is_chain_map(A.space, B.space):
        v.fail("module map commutes with d", ())
    g = A.algebra
    n0, n1 = g.dims
    a0, a1 = A.dims
    for i in range(n0):
        x = g.e0(i)
        for u in range(a0):
            if f.m0.apply(A.xu(x, unit(a0, u))) != B.xu(x, f.m0.column(u)):
                v.fail("module map equivariant on degree 0", ("x%d" % i, "u%d" % u))
            for j in range(i + 1, n0):
                if f.m1.apply(A.xyu(x, g.e0(j), unit(a0, u))) != B.xyu(x, g.e0(j), f.m0.column(u)):
                    v.fail("module map equivariant for (x, y) |>", ("x%d" % i, "x%d" % j, "u%d" % u))
        for t in range(a1):
            if f.m1.apply(A.xm(x, unit(a1, t))) != B.xm(x, f.m1.column(t)):
                v.fail("module map equivariant on degree 1", ("x%d" % i, "m%d" % t))
    for a in range(n1):
        for u in range(a0):
            if f.m1.apply(A.au(g.e1(a), unit(a0, u))) != B.au(g.e1(a), f.m0.column(u)):
                v.fail("module map equivariant for g1", ("a%d" % a, "u%d" % u))
    return v


def check_short_exact(V, I, Q, p, q):
    v = Verdict()
    v.merge(module_map_residuals(V, I, p), "p: ")
    v.merge(module_map_residuals(I, Q, q), "q: ")
    for deg, P, R, dv, di, dq in ((0, p.m0, q.m0, V.dims[0], I.dims[0], Q.dims[0]),
                                  (1, p.m1, q.m1, V.dims[1], I.dims[1], Q.dims[1])):
        if rank(P) != dv:
            v.fail("exactness: p injective", ("degree %d" % deg,))
        if rank(R) != dq:
            v.fail("exactness: q surjective", ("degree %d" % deg,))
        if not (R @ P).is_zero() or dv + dq != di:
            v.fail("exactness at I", ("degree %d" % deg,))
    return v


def splice(V, I, Q, p, q, lam):
    """The strong crossed module (I, h (+)_lambda Q, phi = (0, q)) with h acting on I."""
    v = check_short_exact(V, I, Q, p, q)
    if not v:
        raise RefusalError(v.first[0], v.first[1])
    h = I.algebra
    ext = abelian_extension(h, Q, lam)
    E = ext.algebra
    M = pullback_module(I, ext.proj)
    phi = GradedMap(ext.incl.m0 @ q.m0, ext.incl.m1 @ q.m1)
    cm = CrossedModule(Lie2Algebra(I.space), E, DerivAction(M), phi,
                       kernel=(p, V.space), cokernel=ext.proj)
    return cm


# -- the lambda condition and epsilon_lambda ----------------------------------------

def _echelon(k, dims):
    return span_basis([tuple(v) for v in k[0]], dims[0]), span_basis([tuple(v) for v in k[1]], dims[1])


def _h_and_section(g, k, V):
    h, pi = quotient(g, k)
    if V.algebra != h:
        raise RefusalError("V is not a module over g/k in the quotient coordinates")
    s = GradedMap(section_on_image(pi.phi0), section_on_image(pi.phi1))
    return h, pi, s


def contraction_residuals(c, vectors0, vectors1):
    """Failures of i_e c = 0 for e in the given degree-0 and degree-1 vectors."""
    g = c.module.algebra
    n0, n1 = g.dims
    v = Verdict()
    for (p, q, s), t in c.components.items():
        if p:
            rest = [(xt, at) for xt, at in _tuples(n0, n1, p - 1, q)]
            for k, e in enumerate(vectors0):
                for xt, at in rest:
                    val = t.evaluate([e] + [g.e0(i) for i in xt], [g.e1(a) for a in at])
                    if any(val):
                        v.fail("i_e(D lambda) = 0", ("e=k0[%d]" % k,) + tuple("x%d" % i for i in xt)
                               + tuple("a%d" % a for a in at), val)
                        break
        if q:
            rest = [(xt, at) for xt, at in _tuples(n0, n1, p, q - 1)]
            for k, e in enumerate(vectors1):
                for xt, at in rest:
                    val = t.evaluate([g.e0(i) for i in xt], [e] + [g.e1(a) for a in at])
                    if any(val):
                        v.fail("i_e(D lambda) = 0", ("e=k1[%d]" % k,) + tuple("x%d" % i for i in xt)
                               + tuple("a%d" % a for a in at), val)
                        break
    return v


def _tuples(n0, n1, p, q):
    from .graded import indexer
    return indexer(n0, n1, p, q).tuples


class LambdaCheck:
    def __init__(self, verdict, theta, h, pi, s, Vg, Dlam):
        self.verdict = verdict
        self.theta = theta
        self.h, self.pi, self.section, self.Vg, self.Dlam = h, pi, s, Vg, Dlam

    @property
    def ok(self):
        return self.verdict.ok


def check_lambda_condition(g, k, V, lam):
    """i_e(D^g lambda) = 0 for all e in the ideal k; on success theta = s^* D^g lambda."""
    h, pi, s = _h_and_section(g, k, V)
    Vg = pullback_module(V, pi)
    lam = Cochain(Vg, 2, lam.components)
    Dl = apply_D(lam)
    b0, b1 = _echelon(k, g.dims)
    v = contraction_residuals(Dl, b0, b1)
    theta = None
    if v:
        theta = precompose(Dl, s.m0, s.m1, V)
        if precompose(theta, pi.phi0, pi.phi1, Vg) != Dl:
            raise AssertionError("D lambda is not pulled back although its contractions with k vanish")
        if not apply_D(theta).is_zero():
            v.fail("theta is a 3-cocycle", ())
    return LambdaCheck(v, theta, h, pi, s, Vg, Dl)


def lambda_condition_space(g, k, V):
    """Basis (flattened 2-cochains) of all lambda satisfying the condition."""
    h, pi, s = _h_and_section(g, k, V)
    Vg = pullback_module(V, pi)
    D2 = coboundary_cached(Vg, 2)
    n3 = D2.rows
    # i_e(D lambda) = 0 for all e  <=>  D lambda = pi^* s^* D lambda
    cols = []
    for j in range(n3):
        c = Cochain.from_flat(Vg, 3, unit(n3, j))
        back = precompose(precompose(c, s.m0, s.m1, V), pi.phi0, pi.phi1, Vg)
        cols.append(vsub(c.flatten(), back.flatten()))
    P = RationalMatrix.from_columns(cols, n3) if n3 else RationalMatrix(0, 0)
    return [Cochain.from_flat(Vg, 2, w) for w in kernel_basis(P @ D2)]


def epsilon_lambda(g, k, V, lam):
    """The strong crossed module (k (+)_lambda V, g, action, i (+) 0)."""
    chk = check_lambda_condition(g, k, V, lam)
    if not chk.ok:
        raise RefusalError(chk.verdict.first[0], chk.verdict.first[1])
    Vg = chk.Vg
    lam = Cochain(Vg, 2, lam.components)
    n0, n1 = g.dims
    b0, b1 = _echelon(k, g.dims)
    k0, k1 = len(b0), len(b1)
    v0, v1 = V.dims
    K0 = RationalMatrix.from_columns(b0, n0) if b0 else RationalMatrix(n0, 0)
    K1 = RationalMatrix.from_columns(b1, n1) if b1 else RationalMatrix(n1, 0)
    c0 = lambda w: solve(K0, w)
    c1 = lambda w: solve(K1, w)
    L0 = lambda a: _ev(lam, (0, 1, 0), [], [a])
    L1 = lambda x, y: _ev(lam, (2, 0, 0), [x, y])
    L2 = lambda x, a: _ev(lam, (1, 1, 1), [x], [a])
    L3 = lambda x, y, z: _ev(lam, (3, 0, 1), [x, y, z])
    N0, N1 = k0 + v0, k1 + v1
    sp0 = lambda w: (K0.apply(w[:k0]), tuple(w[k0:]))
    sp1 = lambda w: (K1.apply(w[:k1]), tuple(w[k1:]))
    diff = RationalMatrix.from_columns(
        [(lambda xi, mm: c0(g.d(xi)) + vadd(V.space.d(mm), L0(xi)))(*sp1(unit(N1, j))) for j in range(N1)], N0) \
        if N1 else RationalMatrix(N0, 0)
    space = TwoTermSpace(N0, N1, diff)

    def br00(i, j):
        (al, _), (be, _) = sp0(unit(N0, i)), sp0(unit(N0, j))
        return c0(g.br(al, be)) + L1(al, be)

    def br01(i, j):
        (al, _), (xi, _) = sp0(unit(N0, i)), sp1(unit(N1, j))
        return c1(g.br01(al, xi)) + L2(al, xi)

    def l3(i, j, kk):
        (al, _), (be, _), (ga, _) = sp0(unit(N0, i)), sp0(unit(N0, j)), sp0(unit(N0, kk))
        return c1(g.l3v(al, be, ga)) + L3(al, be, ga)

    m = Lie2Algebra.from_functions(space, br00, br01, l3)

    def xu(i, j):
        x = g.e0(i)
        al, u = sp0(unit(N0, j))
        return c0(g.br(x, al)) + vadd(L1(x, al), Vg.xu(x, u))

    def xm(i, j):
        x = g.e0(i)
        xi, mm = sp1(unit(N1, j))
        return c1(g.br01(x, xi)) + vadd(L2(x, xi), Vg.xm(x, mm))

    def au(a, j):
        b = g.e1(a)
        al, u = sp0(unit(N0, j))
        # [a, alpha] = -l2(alpha, a) and lambda_2(a, alpha) = -lambda_2(alpha, a)
        return c1(vneg(g.br01(al, b))) + vadd(vneg(L2(al, b)), Vg.au(b, u))

    def xyu(i, jj, j):
        x, y = g.e0(i), g.e0(jj)
        al, u = sp0(unit(N0, j))
        return c1(vneg(g.l3v(x, y, al))) + vadd(vneg(L3(x, y, al)), Vg.xyu(x, y, u))

    M = Lie2Module.from_functions(g, space, xu, xm, au, xyu)
    lphi = [MultiTensor.from_function(
        2, 0, N0, N1, N1,
        lambda xt, at, i=i: (lambda al, be: c1(g.l3v(g.e0(i), al, be)) + L3(g.e0(i), al, be))(
            sp0(unit(N0, xt[0]))[0], sp0(unit(N0, xt[1]))[0]), "V1") for i in range(n0)]
    phi = GradedMap(K0.hstack(RationalMatrix(n0, v0)), K1.hstack(RationalMatrix(n1, v1)))
    J0 = RationalMatrix.from_columns([(0,) * k0 + unit(v0, i) for i in range(v0)], N0) if v0 else RationalMatrix(N0, 0)
    J1 = RationalMatrix.from_columns([(0,) * k1 + unit(v1, i) for i in range(v1)], N1) if v1 else RationalMatrix(N1, 0)
    return CrossedModule(m, g, DerivAction(M, lphi), phi, kernel=(GradedMap(J0, J1), V.space), cokernel=chk.pi)


def gauge_transform(g, k, V, lam, A=None, R=None):
    """(F, Id, tau): epsilon_(lambda + DA + pi^* R) -> epsilon_lambda, with its inverse F."""
    h, pi, s = _h_and_section(g, k, V)
    Vg = pullback_module(V, pi)
    lam = Cochain(Vg, 2, lam.components)
    A = Cochain(Vg, 1, A.components) if A is not None else Cochain(Vg, 1)
    R = Cochain(V, 2, R.components) if R is not None else Cochain(V, 2)
    lam2 = lam + apply_D(A) + precompose(R, pi.phi0, pi.phi1, Vg)
    target = epsilon_lambda(g, k, V, lam)
    source = epsilon_lambda(g, k, V, lam2)
    n0, n1 = g.dims
    b0, b1 = _echelon(k, g.dims)
    k0, k1 = len(b0), len(b1)
    v0, v1 = V.dims
    N0, N1 = k0 + v0, k1 + v1
    A0 = lambda w: _ev(A, (1, 0, 0), [w])
    A1 = lambda w: _ev(A, (0, 1, 1), [], [w])
    A2 = lambda x, y: _ev(A, (2, 0, 1), [x, y])
    kv0 = lambda j: RationalMatrix.from_columns(b0, n0).apply(unit(N0, j)[:k0]) if k0 else vzero(n0)
    kv1 = lambda j: RationalMatrix.from_columns(b1, n1).apply(unit(N1, j)[:k1]) if k1 else vzero(n1)
    F0 = RationalMatrix.from_columns(
        [vadd(unit(N0, j), (0,) * k0 + A0(kv0(j))) for j in range(N0)], N0) if N0 else RationalMatrix(0, 0)
    F1 = RationalMatrix.from_columns(
        [vadd(unit(N1, j), (0,) * k1 + A1(kv1(j))) for j in range(N1)], N1) if N1 else RationalMatrix(0, 0)
    F2 = MultiTensor.from_function(2, 0, N0, N1, N1, lambda xt, at: (0,) * k1 + A2(kv0(xt[0]), kv0(xt[1])), "g1")
    tau = MultiTensor.from_function(1, 1, n0, N0, N1, lambda xt, at: (0,) * k1 + A2(g.e0(xt[0]), kv0(at[0])), "V1")
    F = Lie2Hom(source.m, target.m, GradedMap(F0, F1), F2)
    f = CMMorphism(source, target, F, Lie2Hom.identity(g), tau)
    f.inverse = GradedMap(inverse(F0) if N0 else F0, inverse(F1) if N1 else F1)
    f.lam_source = lam2
    return f


# -- the class mu ------------------------------------------------------------------

class SectionPair:
    """s: h -> g with pi s = Id, and q: g -> m with phi q = Id on Img phi."""

    def __init__(self, s, q):
        self.s = s
        self.q = q

    def validate(self, cm, ft):
        v = Verdict()
        if ft.proj.phi0 @ self.s.m0 != RationalMatrix.identity(ft.h.dims[0]) or \
                ft.proj.phi1 @ self.s.m1 != RationalMatrix.identity(ft.h.dims[1]):
            v.fail("section pair: pi s = Id", ())
        for P, Q in ((cm.phi.m0, self.q.m0), (cm.phi.m1, self.q.m1)):
            if P @ Q @ P != P:
                v.fail("section pair: phi q = Id on Img phi", ())
        return v


def default_sections(cm, ft=None):
    ft = ft or four_term_sequence(cm, check_independence=False)
    s = GradedMap(section_on_image(ft.proj.phi0), section_on_image(ft.proj.phi1))
    return SectionPair(s, GradedMap(section_on_image(cm.phi.m0), section_on_image(cm.phi.m1)))


def alternative_sections(cm, ft=None, seed=1):
    """A second admissible pair: s moved by phi t, q moved by a map into ker phi."""
    ft = ft or four_term_sequence(cm, check_independence=False)
    base = default_sections(cm, ft)
    s = perturbed_section(cm, base.s, seed)
    I0, I1 = ft.incl.m0, ft.incl.m1
    n0, n1 = cm.g.dims

    def shift(I, rows_out, cols):
        r = I.cols
        w = RationalMatrix(r, cols, [((i + 2 * j + seed) % 3) - 1 for i in range(r) for j in range(cols)])
        return I @ w if r else RationalMatrix(rows_out, cols)

    q = GradedMap(base.q.m0 + shift(I0, cm.m.dims[0], n0), base.q.m1 + shift(I1, cm.m.dims[1], n1))
    return SectionPair(s, q)


class MuResult:
    def __init__(self, theta, class_id, lam, ft, sections, lam_h):
        self.theta = theta
        self.class_id = class_id
        self.lam = lam
        self.four_term = ft
        self.sections = sections
        self.lam_h = lam_h


def _lambda_eps(cm, ft, sp):
    """lambda_eps in C^2(h, m) from the four block formulas (values checked to lie in Img phi)."""
    g, m = cm.g, cm.m
    s0, s1 = sp.s.m0, sp.s.m1
    q0, q1 = sp.q.m0, sp.q.m1
    img0, img1 = image_basis(cm.phi.m0), image_basis(cm.phi.m1)
    n0, n1 = g.dims

    def inimg(w, img, dim, name, args):
        if not in_span(img, w, dim):
            raise RefusalError("argument of %s lies in Img phi" % name, args)
        return w

    fns = {
        (0, 1, 0): lambda xs, as_: q0.apply(inimg(vsub(g.d(s1.apply(as_[0])), s0.apply(ft.h.d(as_[0]))),
                                                  img0, n0, "lambda_0", as_)),
        (2, 0, 0): lambda xs, as_: q0.apply(inimg(vsub(g.br(s0.apply(xs[0]), s0.apply(xs[1])),
                                                       s0.apply(ft.h.br(xs[0], xs[1]))), img0, n0, "lambda_1", xs)),
        (1, 1, 1): lambda xs, as_: q1.apply(inimg(vsub(g.br01(s0.apply(xs[0]), s1.apply(as_[0])),
                                                       s1.apply(ft.h.br01(xs[0], as_[0]))), img1, n1, "lambda_2",
                                                  xs + as_)),
        (3, 0, 1): lambda xs, as_: q1.apply(inimg(vsub(g.l3v(*[s0.apply(x) for x in xs]),
                                                       s1.apply(ft.h.l3v(*xs))), img1, n1, "lambda_3", xs)),
    }
    return cochain_from_functions(Lie2Module(ft.h, m.space), 2, fns)


def _theta(cm, ft, sp, lam_h):
    """theta = s^* D^g (pi^* lambda), expressed in V."""
    pulled = precompose(lam_h, ft.proj.phi0, ft.proj.phi1, cm.module)
    Dl = apply_D(pulled)
    th_m = precompose(Dl, sp.s.m0, sp.s.m1, Lie2Module(ft.h, cm.m.space))
    return _convert(th_m, ft.incl.m0, ft.incl.m1, ft.module, "phi theta = 0 (theta lands in V)")


def mu(cm, sections=None, ft=None):
    """theta_eps and the coordinates of its class in H^3(h, V)."""
    if not cm.strong:
        raise RefusalError("crossed module is not strong")
    ft = ft or four_term_sequence(cm)
    sp = sections or default_sections(cm, ft)
    v = sp.validate(cm, ft)
    if not v:
        raise RefusalError(v.first[0], v.first[1])
    lam_h = _lambda_eps(cm, ft, sp)
    theta = _theta(cm, ft, sp, lam_h)
    if not apply_D(theta).is_zero():
        raise AssertionError("D^h theta is not zero")
    cid = class_coordinates(ft.module, 3, theta.flatten())
    return MuResult(theta, cid, lam_h, ft, sp, lam_h)


def same_class(M, n, a, b):
    """Two n-cocycles are cohomologous (membership in the image of D)."""
    from .repcoh import is_coboundary
    return is_coboundary(M, n, vsub(a.flatten(), b.flatten()))


def section_change_witness(cm, s, sbar, q, ft=None):
    """B with theta - theta_bar = D^h(lambda - lambda_bar - B) for sections s, s_bar and a common q."""
    ft = ft or four_term_sequence(cm)
    m, M = cm.m, cm.module
    diff = GradedMap(s.m0 - sbar.m0, s.m1 - sbar.m1)
    if cm.phi.m0 @ q.m0 @ diff.m0 != diff.m0 or cm.phi.m1 @ q.m1 @ diff.m1 != diff.m1:
        raise RefusalError("s - s_bar is not valued in Img phi")
    t0, t1 = q.m0 @ diff.m0, q.m1 @ diff.m1
    S0, S1, B0_ = s.m0, s.m1, sbar.m0
    h = ft.h
    fns = {
        (0, 1, 0): lambda xs, as_: vsub(m.d(t1.apply(as_[0])), t0.apply(h.d(as_[0]))),
        (2, 0, 0): lambda xs, as_: vsub(vsub(M.xu(B0_.apply(xs[0]), t0.apply(xs[1])), M.xu(S0.apply(xs[1]), t0.apply(xs[0]))),
                                        t0.apply(h.br(xs[0], xs[1]))),
        (1, 1, 1): lambda xs, as_: vsub(vsub(M.xm(B0_.apply(xs[0]), t1.apply(as_[0])), M.au(S1.apply(as_[0]), t0.apply(xs[0]))),
                                        t1.apply(h.br01(xs[0], as_[0]))),
        (3, 0, 1): lambda xs, as_: _b3(cm, S0, S1, B0_, t0, t1, h, *xs),
    }
    B = cochain_from_functions(Lie2Module(h, m.space), 2, fns)
    spA, spB = SectionPair(s, q), SectionPair(sbar, q)
    lam, lamb = _lambda_eps(cm, ft, spA), _lambda_eps(cm, ft, spB)
    th, thb = _theta(cm, ft, spA, lam), _theta(cm, ft, spB, lamb)
    diffc = _convert(lam - lamb - B, ft.incl.m0, ft.incl.m1, ft.module, "lambda - lambda_bar - B lands in V")
    v = Verdict()
    if th - thb != apply_D(diffc):
        v.fail("theta - theta_bar = D(lambda - lambda_bar - B)", ())
    return B, v


def _b3(cm, S0, S1, B0_, t0, t1, h, x, y, z):
    """Degree-3 block of the section-change cochain: the expansion of
    l3(s x, s y, s z) - l3(s_bar x, s_bar y, s_bar z) through s = s_bar + phi t, minus t1 l3."""
    M, m, act = cm.module, cm.m, cm.action
    bx, by, bz = B0_.apply(x), B0_.apply(y), B0_.apply(z)
    tx, ty, tz = t0.apply(x), t0.apply(y), t0.apply(z)
    return vadd(vneg(M.xyu(by, bz, tx)), vneg(M.xyu(bz, bx, ty)), vneg(M.xyu(bx, by, tz)),
                act.l(bz, tx, ty), act.l(by, tz, tx), act.l(bx, ty, tz), m.l3v(tx, ty, tz),
                vneg(t1.apply(h.l3v(x, y, z))))


def _diagram_verdict(cmA, cmB, F0, F1, G, ftA, ftB):
    v = Verdict()
    if ftA.V != ftB.V or ftA.module != ftB.module:
        v.fail("diagram: same V and h-module", ())
        return v
    if F0 @ ftA.incl.m0 != ftB.incl.m0 or F1 @ ftA.incl.m1 != ftB.incl.m1:
        v.fail("diagram: Id on V", ())
    if ftB.proj.phi0 @ G.phi0 != ftA.proj.phi0 or ftB.proj.phi1 @ G.phi1 != ftA.proj.phi1:
        v.fail("diagram: Id on h", ())
    return v


def strong_map_invariance(cmA, cmB, F, G, sections=None):
    """theta_A - theta_B = D^h B for a strong map (F, G) inducing Id on V and h."""
    v = Verdict()
    if not (F.strong and G.strong):
        v.fail("strong map: F2 = 0 and G2 = 0", ())
        return v, None
    v.merge(check_cm_morphism(CMMorphism(cmA, cmB, F, G)), "morphism: ")
    ftA, ftB = four_term_sequence(cmA), four_term_sequence(cmB)
    v.merge(_diagram_verdict(cmA, cmB, F.phi0, F.phi1, G, ftA, ftB))
    if not v:
        return v, None
    spA = sections or default_sections(cmA, ftA)
    s2 = GradedMap(G.phi0 @ spA.s.m0, G.phi1 @ spA.s.m1)
    qB = default_sections(cmB, ftB).q
    spB = SectionPair(s2, qB)
    gA = cmA.g
    h = ftA.h
    S0, S1 = spA.s.m0, spA.s.m1
    C0 = F.phi0 @ spA.q.m0 - qB.m0 @ G.phi0
    C1 = F.phi1 @ spA.q.m1 - qB.m1 @ G.phi1
    fns = {
        (0, 1, 0): lambda xs, as_: C0.apply(vsub(gA.d(S1.apply(as_[0])), S0.apply(h.d(as_[0])))),
        (2, 0, 0): lambda xs, as_: C0.apply(vsub(gA.br(S0.apply(xs[0]), S0.apply(xs[1])), S0.apply(h.br(*xs)))),
        (1, 1, 1): lambda xs, as_: C1.apply(vsub(gA.br01(S0.apply(xs[0]), S1.apply(as_[0])),
                                                 S1.apply(h.br01(xs[0], as_[0])))),
        (3, 0, 1): lambda xs, as_: C1.apply(vsub(gA.l3v(*[S0.apply(x) for x in xs]), S1.apply(h.l3v(*xs)))),
    }
    Bm = cochain_from_functions(Lie2Module(h, cmB.m.space), 2, fns)
    B = _convert(Bm, ftB.incl.m0, ftB.incl.m1, ftB.module, "B lands in V")
    rA = mu(cmA, spA, ftA)
    rB = mu(cmB, spB, ftB)
    if rA.theta - rB.theta != apply_D(B):
        v.fail("theta_A - theta_B = D B", ())
    if rA.class_id != rB.class_id:
        v.fail("equal classes", (rA.class_id, rB.class_id))
    return v, B


ELEMENTARY_CONDITIONS = (
    "G2 = 0",
    "Img tau in i'(V)",
    "tau(g0, i(V)) = 0",
    "tau(phi0 alpha, beta) = tau(alpha, phi0 beta)",
)


def elementary_equivalence_check(cmA, cmB, F, G, tau=None):
    f = CMMorphism(cmA, cmB, F, G, tau)
    v = check_cm_morphism(f)
    ftA, ftB = four_term_sequence(cmA), four_term_sequence(cmB)
    v.merge(_diagram_verdict(cmA, cmB, F.phi0, F.phi1, G, ftA, ftB))
    if not G.phi2.is_zero():
        v.fail(ELEMENTARY_CONDITIONS[0], ())
    n0 = cmA.g.dims[0]
    k0 = cmA.m.dims[0]
    IB1 = [ftB.incl.m1.column(j) for j in range(ftB.incl.m1.cols)]
    for i in range(n0):
        for a in range(k0):
            val = f.tau.evaluate([cmA.g.e0(i)], [cmA.m.e0(a)])
            if not in_span(IB1, val, cmB.m.dims[1]):
                v.fail(ELEMENTARY_CONDITIONS[1], ("x=e%d" % i, "alpha=f%d" % a), val)
        for j in range(ftA.incl.m0.cols):
            val = f.tau.evaluate([cmA.g.e0(i)], [ftA.incl.m0.column(j)])
            if any(val):
                v.fail(ELEMENTARY_CONDITIONS[2], ("x=e%d" % i, "v%d" % j), val)
    p0 = cmA.phi.m0
    for a in range(k0):
        for b in range(k0):
            al, be = cmA.m.e0(a), cmA.m.e0(b)
            lhs = f.tau.evaluate([p0.apply(al)], [be])
            rhs = vneg(f.tau.evaluate([p0.apply(be)], [al]))
            if lhs != rhs:
                v.fail(ELEMENTARY_CONDITIONS[3], ("alpha=f%d" % a, "beta=f%d" % b), vsub(lhs, rhs))
    return v


# -- the connecting homomorphism --------------------------------------------------

def induced_map(A, B, f, n):
    """Matrix of H^n(h, A) -> H^n(h, B) induced by a module map f, in representative bases."""
    _, reps = cohomology(A, n)
    cols = [class_coordinates(B, n, postcompose(r, f.m0, f.m1, B).flatten()) for r in reps]
    nb = cohomology(B, n)[0]
    return RationalMatrix.from_columns(cols, nb) if cols else RationalMatrix(nb, 0)


def _connecting(V, I, Q, p, q, n, r):
    _, reps = cohomology(Q, n)
    L0, L1 = section_on_image(p.m0), section_on_image(p.m1)
    cols = []
    for c in reps:
        lift = postcompose(c, r.m0, r.m1, I)
        Dl = apply_D(lift)
        w = postcompose(Dl, L0, L1, V)
        if postcompose(w, p.m0, p.m1, I) != Dl:
            raise AssertionError("D of the lift does not land in p(V)")
        cols.append(class_coordinates(V, n + 1, w.flatten()))
    nv = cohomology(V, n + 1)[0]
    return RationalMatrix.from_columns(cols, nv) if cols else RationalMatrix(nv, 0)


def connecting_map(V, I, Q, p, q, n):
    """The snake map H^n(h, Q) -> H^(n+1)(h, V), checked against a second section of q."""
    v = check_short_exact(V, I, Q, p, q)
    if not v:
        raise RefusalError(v.first[0], v.first[1])
    r = GradedMap(section_on_image(q.m0), section_on_image(q.m1))
    out = _connecting(V, I, Q, p, q, n, r)
    z0 = RationalMatrix(V.dims[0], Q.dims[0], [((i + j) % 2) for i in range(V.dims[0]) for j in range(Q.dims[0])])
    z1 = RationalMatrix(V.dims[1], Q.dims[1], [((i + j + 1) % 2) for i in range(V.dims[1]) for j in range(Q.dims[1])])
    r2 = GradedMap(r.m0 + p.m0 @ z0, r.m1 + p.m1 @ z1)
    if _connecting(V, I, Q, p, q, n, r2) != out:
        raise AssertionError("connecting map depends on the section")
    return out
