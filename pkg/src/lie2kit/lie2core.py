"""Lie 2-algebras, strict Lie 3-algebras, homomorphisms, ideals and quotients.

The homotopy Jacobi identities are checked by brute force: every
canonically ordered tuple of basis elements is fed through the
generalised Jacobi sum and the residual must vanish exactly.
"""

import logging
from itertools import combinations, combinations_with_replacement

from .graded import (GradedMap, MultiTensor, TwoTermSpace, koszul_sign, sp_add,
                     to_sparse, unit, unshuffles, vsub, vzero)
from .ratlin import ONE, RationalMatrix, image_basis, in_span, kernel_basis, quotient_basis, rank, solve

log = logging.getLogger(__name__)


class Verdict:
    """Outcome of a check: ok plus an ordered list of (label, witness, residual)."""

    def __init__(self, failures=None, notes=None):
        self.failures = list(failures or [])
        self.notes = list(notes or [])

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def fail(self, label, witness, residual=None):
        self.failures.append((label, witness, residual))

    def labels(self):
        return sorted({f[0] for f in self.failures})

    def merge(self, other, prefix=""):
        for label, witness, residual in other.failures:
            self.failures.append((prefix + label, witness, residual))
        self.notes.extend(other.notes)
        return self

    def report(self):
        if self.ok:
            return ["pass"]
        return ["%s failed at %s" % (label, witness) for label, witness, _ in self.failures]

    def __repr__(self):
        return "Verdict(ok=%s, failures=%d)" % (self.ok, len(self.failures))


class RefusalError(ValueError):
    """A construction refused because a named hypothesis does not hold."""

    def __init__(self, label, witness=None):
        self.label = label
        self.witness = witness
        msg = label if witness is None else "%s failed at %s" % (label, witness)
        super().__init__(msg)


# -- generic L-infinity structure on a homogeneous basis ------------------

class LinfStructure:
    """Brackets l_k on a basis with degrees, stored on sorted index tuples.

    brackets[k] maps a nondecreasing index tuple to a sparse output vector.
    Values on other orderings follow from graded antisymmetry.
    """

    def __init__(self, degrees, brackets, names=None):
        self.degrees = list(degrees)
        self.brackets = {k: dict(v) for k, v in brackets.items()}
        self.names = names or ["e%d" % i for i in range(len(self.degrees))]
        self.top = max(self.degrees) if self.degrees else 0

    def _canon(self, idx):
        idx = list(idx)
        deg = self.degrees
        sign = 1
        n = len(idx)
        for top in range(n - 1, 0, -1):
            for k in range(top):
                if idx[k] > idx[k + 1]:
                    if not (deg[idx[k]] % 2 and deg[idx[k + 1]] % 2):
                        sign = -sign
                    idx[k], idx[k + 1] = idx[k + 1], idx[k]
        for k in range(n - 1):
            if idx[k] == idx[k + 1] and deg[idx[k]] % 2 == 0:
                return 0, None
        return sign, tuple(idx)

    def bracket(self, k, args):
        table = self.brackets.get(k)
        if not table:
            return {}
        acc = {}
        items = [list(a.items()) for a in args]

        def rec(pos, idx, coef):
            if pos == len(items):
                sign, key = self._canon(idx)
                if sign:
                    val = table.get(key)
                    if val:
                        sp_add(acc, val, coef * sign)
                return
            for i, c in items[pos]:
                idx.append(i)
                rec(pos + 1, idx, coef * c)
                idx.pop()

        rec(0, [], ONE)
        return acc

    def jacobi_residual(self, tup):
        n = len(tup)
        degs = [self.degrees[i] for i in tup]
        acc = {}
        for i in range(1, n + 1):
            j = n + 1 - i
            if not self.brackets.get(i) or not self.brackets.get(j):
                continue
            outer_sign = -1 if (i * (j - 1)) % 2 else 1
            for perm, sgn in unshuffles(i, n):
                inner = self.bracket(i, [{tup[k]: ONE} for k in perm[:i]])
                if not inner:
                    continue
                ks = koszul_sign(perm, degs)
                outer = self.bracket(j, [inner] + [{tup[k]: ONE} for k in perm[i:]])
                sp_add(acc, outer, outer_sign * sgn * ks)
        return acc

    def canonical_tuples(self, n):
        deg = self.degrees
        for tup in combinations_with_replacement(range(len(deg)), n):
            if any(tup[k] == tup[k + 1] and deg[tup[k]] % 2 == 0 for k in range(n - 1)):
                continue
            out_deg = sum(deg[i] for i in tup) + n - 3
            if out_deg < 0 or out_deg > self.top:
                continue
            yield tup

    def check(self, nmax, label="L-infinity identity"):
        verdict = Verdict()
        for n in range(1, nmax + 1):
            for tup in self.canonical_tuples(n):
                res = self.jacobi_residual(tup)
                if res:
                    verdict.fail("%s n=%d" % (label, n), tuple(self.names[i] for i in tup), res)
        return verdict


# -- Lie 2-algebras --------------------------------------------------------

class Lie2Algebra:
    """(g1 --d--> g0, l2, l3) stored as structure-constant tensors."""

    def __init__(self, space, l2_00=None, l2_01=None, l3=None):
        n0, n1 = space.dim0, space.dim1
        self.space = space
        self.l2_00 = l2_00 if l2_00 is not None else MultiTensor.zero(2, 0, n0, n1, n0, "g0")
        self.l2_01 = l2_01 if l2_01 is not None else MultiTensor.zero(1, 1, n0, n1, n1, "g1")
        self.l3 = l3 if l3 is not None else MultiTensor.zero(3, 0, n0, n1, n1, "g1")
        for name, t, shape in (("l2_00", self.l2_00, (2, 0, n0, n1, n0)),
                               ("l2_01", self.l2_01, (1, 1, n0, n1, n1)),
                               ("l3", self.l3, (3, 0, n0, n1, n1))):
            if t.shape != shape:
                raise ValueError("%s has shape %s, expected %s" % (name, t.shape, shape))

    @classmethod
    def abelian(cls, n0, n1, diff=None):
        return cls(TwoTermSpace(n0, n1, diff))

    @classmethod
    def from_functions(cls, space, br00=None, br01=None, l3=None):
        n0, n1 = space.dim0, space.dim1
        zero0 = lambda *a: vzero(n0)
        zero1 = lambda *a: vzero(n1)
        b00 = MultiTensor.from_function(2, 0, n0, n1, n0, lambda xt, at: (br00 or zero0)(*xt), "g0")
        b01 = MultiTensor.from_function(1, 1, n0, n1, n1, lambda xt, at: (br01 or zero1)(xt[0], at[0]), "g1")
        t3 = MultiTensor.from_function(3, 0, n0, n1, n1, lambda xt, at: (l3 or zero1)(*xt), "g1")
        return cls(space, b00, b01, t3)

    @property
    def dims(self):
        return (self.space.dim0, self.space.dim1)

    def __eq__(self, other):
        return (isinstance(other, Lie2Algebra) and self.space == other.space and self.l2_00 == other.l2_00
                and self.l2_01 == other.l2_01 and self.l3 == other.l3)

    def __repr__(self):
        return "Lie2Algebra(dims=%s)" % (self.dims,)

    def is_strict(self):
        return self.l3.is_zero()

    def is_skeletal(self):
        return self.space.diff.is_zero()

    def d(self, a):
        return self.space.diff.apply(a)

    def br(self, x, y):
        return self.l2_00.evaluate([x, y])

    def br01(self, x, a):
        return self.l2_01.evaluate([x], [a])

    def l3v(self, x, y, z):
        return self.l3.evaluate([x, y, z])

    def e0(self, i):
        return unit(self.space.dim0, i)

    def e1(self, i):
        return unit(self.space.dim1, i)

    def names(self):
        n0, n1 = self.dims
        return ["x%d" % i for i in range(n0)] + ["a%d" % i for i in range(n1)]

    def to_linf(self):
        n0, n1 = self.dims
        degrees = [0] * n0 + [1] * n1
        l1, l2, l3 = {}, {}, {}
        for a in range(n1):
            v = {i: c for i, c in to_sparse(self.space.diff.column(a)).items()}
            if v:
                l1[(n0 + a,)] = v
        for j, (xt, _) in enumerate(self.l2_00.basis.tuples):
            v = to_sparse(self.l2_00.coeffs.column(j))
            if v:
                l2[xt] = v
        for j, (xt, at) in enumerate(self.l2_01.basis.tuples):
            v = {n0 + i: c for i, c in to_sparse(self.l2_01.coeffs.column(j)).items()}
            if v:
                l2[(xt[0], n0 + at[0])] = v
        for j, (xt, _) in enumerate(self.l3.basis.tuples):
            v = {n0 + i: c for i, c in to_sparse(self.l3.coeffs.column(j)).items()}
            if v:
                l3[xt] = v
        return LinfStructure(degrees, {1: l1, 2: l2, 3: l3}, self.names())


def check_lie2(g):
    """Homotopy Jacobi identities n = 1..4 on all basis tuples."""
    return g.to_linf().check(4, "Lie 2-algebra identity")


def jacobi_check(g):
    """Textbook Jacobi identity for the bracket on g0 (oracle for g1 = 0)."""
    n0 = g.space.dim0
    verdict = Verdict()
    for i, j, k in combinations(range(n0), 3):
        x, y, z = g.e0(i), g.e0(j), g.e0(k)
        res = [sum(t) for t in zip(g.br(x, g.br(y, z)), g.br(y, g.br(z, x)), g.br(z, g.br(x, y)))]
        if any(res):
            verdict.fail("Jacobi identity", ("x%d" % i, "x%d" % j, "x%d" % k), res)
    return verdict


# -- homomorphisms ----------------------------------------------------------

HOM_CONDITIONS = (
    "hom condition 1 (d' phi1 = phi0 d)",
    "hom condition 2 (brackets on g0 wedge g0)",
    "hom condition 3 (brackets on g0 x g1)",
    "hom condition 4 (coherence with l3)",
)


class Lie2Hom:
    """(phi0, phi1, phi2): source -> target."""

    def __init__(self, source, target, maps, phi2=None):
        self.source = source
        self.target = target
        self.maps = maps
        n0, n1 = source.dims
        t0, t1 = target.dims
        if maps.m0.shape != (t0, n0) or maps.m1.shape != (t1, n1):
            raise ValueError("hom component shapes %s, %s do not match dims %s -> %s"
                             % (maps.m0.shape, maps.m1.shape, source.dims, target.dims))
        self.phi2 = phi2 if phi2 is not None else MultiTensor.zero(2, 0, n0, n1, t1, "g1")
        if self.phi2.shape != (2, 0, n0, n1, t1):
            raise ValueError("phi2 has shape %s" % (self.phi2.shape,))

    @property
    def phi0(self):
        return self.maps.m0

    @property
    def phi1(self):
        return self.maps.m1

    @property
    def strong(self):
        return self.phi2.is_zero()

    @classmethod
    def identity(cls, g):
        return cls(g, g, GradedMap.identity(g.space))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, GradedMap.zero(source.space, target.space))

    def __eq__(self, other):
        return isinstance(other, Lie2Hom) and self.maps == other.maps and self.phi2 == other.phi2


def check_hom(f):
    g, h = f.source, f.target
    n0, n1 = g.dims
    if (f.phi0.cols, f.phi1.cols) != (n0, n1) or (f.phi0.rows, f.phi1.rows) != h.dims:
        raise ValueError("dimension mismatch")
    p0, p1 = f.phi0, f.phi1
    verdict = Verdict()
    lhs = h.space.diff @ p1
    rhs = p0 @ g.space.diff
    for a in range(n1):
        if lhs.column(a) != rhs.column(a):
            verdict.fail(HOM_CONDITIONS[0], ("a%d" % a,), vsub(lhs.column(a), rhs.column(a)))
    for i, j in combinations(range(n0), 2):
        x, y = g.e0(i), g.e0(j)
        res = vsub(vsub(p0.apply(g.br(x, y)), h.br(p0.apply(x), p0.apply(y))),
                   h.d(f.phi2.evaluate([x, y])))
        if any(res):
            verdict.fail(HOM_CONDITIONS[1], ("x%d" % i, "x%d" % j), res)
    for i in range(n0):
        for a in range(n1):
            x, b = g.e0(i), g.e1(a)
            res = vsub(vsub(p1.apply(g.br01(x, b)), h.br01(p0.apply(x), p1.apply(b))),
                       f.phi2.evaluate([x, g.d(b)]))
            if any(res):
                verdict.fail(HOM_CONDITIONS[2], ("x%d" % i, "a%d" % a), res)
    for i, j, k in combinations(range(n0), 3):
        x, y, z = g.e0(i), g.e0(j), g.e0(k)
        lhs = vzero(h.dims[1])
        rhs = vzero(h.dims[1])
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            lhs = [s + t for s, t in zip(lhs, h.br01(p0.apply(u), f.phi2.evaluate([v, w])))]
            rhs = [s + t for s, t in zip(rhs, f.phi2.evaluate([g.br(u, v), w]))]
        lhs = [s + t for s, t in zip(lhs, h.l3v(p0.apply(x), p0.apply(y), p0.apply(z)))]
        rhs = [s + t for s, t in zip(rhs, p1.apply(g.l3v(x, y, z)))]
        res = vsub(lhs, rhs)
        if any(res):
            verdict.fail(HOM_CONDITIONS[3], ("x%d" % i, "x%d" % j, "x%d" % k), res)
    return verdict


def compose(psi, phi):
    """psi after phi, with (psi phi)_2 = psi1 phi2 + psi2 (phi0 wedge phi0)."""
    if phi.target.dims != psi.source.dims:
        raise ValueError("dimension mismatch in composition")
    g = phi.source
    n0, n1 = g.dims
    t1 = psi.target.dims[1]

    def two(xt, at):
        x, y = g.e0(xt[0]), g.e0(xt[1])
        u = psi.phi1.apply(phi.phi2.evaluate([x, y]))
        v = psi.phi2.evaluate([phi.phi0.apply(x), phi.phi0.apply(y)])
        return [s + t for s, t in zip(u, v)]

    phi2 = MultiTensor.from_function(2, 0, n0, n1, t1, two, "g1")
    return Lie2Hom(g, psi.target, psi.maps.compose(phi.maps), phi2)


# -- subspaces, ideals, quotients -------------------------------------------

def _span_ok(basis, v, dim):
    return in_span(basis, v, dim)


def is_ideal(g, h):
    """h = (h0 spanning vectors, h1 spanning vectors)."""
    h0, h1 = [tuple(v) for v in h[0]], [tuple(v) for v in h[1]]
    n0, n1 = g.dims
    for k, v in enumerate(h1):
        if not _span_ok(h0, g.d(v), n0):
            raise RefusalError("subspace is not closed under d", ("h1[%d]" % k,))
    verdict = Verdict()
    for k, u in enumerate(h0):
        for i in range(n0):
            if not _span_ok(h0, g.br(u, g.e0(i)), n0):
                verdict.fail("ideal condition l2(h0, g0) in h0", ("h0[%d]" % k, "x%d" % i))
        for a in range(n1):
            if not _span_ok(h1, g.br01(u, g.e1(a)), n1):
                verdict.fail("ideal condition l2(h0, g1) in h1", ("h0[%d]" % k, "a%d" % a))
        for i, j in combinations(range(n0), 2):
            if not _span_ok(h1, g.l3v(u, g.e0(i), g.e0(j)), n1):
                verdict.fail("ideal condition l3(h0, g0, g0) in h1", ("h0[%d]" % k, "x%d" % i, "x%d" % j))
    for k, b in enumerate(h1):
        for i in range(n0):
            if not _span_ok(h1, g.br01(g.e0(i), b), n1):
                verdict.fail("ideal condition l2(g0, h1) in h1", ("x%d" % i, "h1[%d]" % k))
    return verdict


def _independent(vectors, dim):
    from .ratlin import span_basis
    return span_basis([tuple(v) for v in vectors], dim)


def quotient(g, h):
    """Quotient g/h on unit-vector complements, with the strong projection."""
    verdict = is_ideal(g, h)
    if not verdict:
        label, witness, _ = verdict.first
        raise RefusalError(label, witness)
    n0, n1 = g.dims
    h0, h1 = _independent(h[0], n0), _independent(h[1], n1)
    c0, p0 = quotient_basis(h0, n0)
    c1, p1 = quotient_basis(h1, n1)
    k0, k1 = len(c0), len(c1)
    diff = RationalMatrix.from_columns([p0.apply(g.d(c)) for c in c1], k0) if k1 else RationalMatrix(k0, 0)
    space = TwoTermSpace(k0, k1, diff)
    q = Lie2Algebra.from_functions(
        space,
        lambda i, j: p0.apply(g.br(c0[i], c0[j])),
        lambda i, a: p1.apply(g.br01(c0[i], c1[a])),
        lambda i, j, k: p1.apply(g.l3v(c0[i], c0[j], c0[k])))
    proj = Lie2Hom(g, q, GradedMap(p0, p1))
    return q, proj


def subalgebra(g, sub):
    """Restrict g to a closed graded subspace given by bases (b0, b1)."""
    n0, n1 = g.dims
    b0, b1 = list(sub[0]), list(sub[1])
    m0 = RationalMatrix.from_columns(b0, n0)
    m1 = RationalMatrix.from_columns(b1, n1)

    def c0(v):
        return solve(m0, v)

    def c1(v):
        return solve(m1, v)

    diff = RationalMatrix.from_columns([c0(g.d(b)) for b in b1], len(b0)) if b1 else RationalMatrix(len(b0), 0)
    return Lie2Algebra.from_functions(
        TwoTermSpace(len(b0), len(b1), diff),
        lambda i, j: c0(g.br(b0[i], b0[j])),
        lambda i, a: c1(g.br01(b0[i], b1[a])),
        lambda i, j, k: c1(g.l3v(b0[i], b0[j], b0[k])))


def hom_kernel(f):
    """Kernel (ker phi0, ker phi1) as an ideal of the source."""
    g = f.source
    n0, _ = g.dims
    k0 = kernel_basis(f.phi0)
    k1 = kernel_basis(f.phi1)
    for k, u in enumerate(k0):
        for i in range(n0):
            if any(f.phi2.evaluate([u, g.e0(i)])):
                raise RefusalError("kernel hypothesis phi2(ker phi0, g0) = 0", ("ker0[%d]" % k, "x%d" % i))
    verdict = is_ideal(g, (k0, k1))
    if not verdict:
        raise RefusalError(*verdict.first[:2])
    return k0, k1


def hom_image(f):
    """Image (Img phi0, Img phi1) with its restricted Lie 2-algebra."""
    g, h = f.source, f.target
    n0, _ = g.dims
    i0, i1 = image_basis(f.phi0), image_basis(f.phi1)
    t0, t1 = h.dims
    for i, j in combinations(range(n0), 2):
        if not in_span(i1, f.phi2.evaluate([g.e0(i), g.e0(j)]), t1):
            raise RefusalError("image hypothesis Img phi2 in Img phi1", ("x%d" % i, "x%d" % j))
    for u in i1:
        if not in_span(i0, h.d(u), t0):
            raise RefusalError("image not closed under d")
    for u, v in combinations(i0, 2):
        if not in_span(i0, h.br(u, v), t0):
            raise RefusalError("image not closed under l2 on degree 0")
    for u in i0:
        for b in i1:
            if not in_span(i1, h.br01(u, b), t1):
                raise RefusalError("image not closed under l2 on degree 0 x 1")
    for u, v, w in combinations(i0, 3):
        if not in_span(i1, h.l3v(u, v, w), t1):
            raise RefusalError("image not closed under l3")
    return (i0, i1), subalgebra(h, (i0, i1))


def first_iso_check(f):
    """g/ker f is isomorphic to Img f through the induced map."""
    verdict = Verdict()
    k0, k1 = hom_kernel(f)
    (i0, i1), img = hom_image(f)
    g = f.source
    n0, n1 = g.dims
    if n0 - len(k0) != len(i0) or n1 - len(k1) != len(i1):
        verdict.fail("first isomorphism dimension count", (n0 - len(k0), len(i0), n1 - len(k1), len(i1)))
        return verdict
    q, proj = quotient(g, (k0, k1))
    c0, _ = quotient_basis(_independent(k0, n0), n0)
    c1, _ = quotient_basis(_independent(k1, n1), n1)
    m0 = RationalMatrix.from_columns(i0, f.target.dims[0])
    m1 = RationalMatrix.from_columns(i1, f.target.dims[1])
    a0 = RationalMatrix.from_columns([solve(m0, f.phi0.apply(c)) for c in c0], len(i0)) if c0 else RationalMatrix(len(i0), 0)
    a1 = RationalMatrix.from_columns([solve(m1, f.phi1.apply(c)) for c in c1], len(i1)) if c1 else RationalMatrix(len(i1), 0)
    qn0, qn1 = q.dims
    psi2 = MultiTensor.from_function(
        2, 0, qn0, qn1, len(i1),
        lambda xt, at: solve(m1, f.phi2.evaluate([c0[xt[0]], c0[xt[1]]])), "g1")
    induced = Lie2Hom(q, img, GradedMap(a0, a1), psi2)
    if rank(a0) != len(i0) or rank(a1) != len(i1):
        verdict.fail("induced map is not bijective", (rank(a0), rank(a1)))
    verdict.merge(check_hom(induced), "induced map: ")
    return verdict


# -- strict Lie 3-algebras --------------------------------------------------

class Lie3Algebra:
    """Strict Lie 3-algebra on L2 -> L1 -> L0.

    l2 and l3 are dicts from sorted global index tuples to sparse output
    vectors; global indices run through L0, then L1, then L2.
    """

    def __init__(self, space, l2=None, l3=None, names=None):
        self.space = space
        self.l2 = {k: dict(v) for k, v in (l2 or {}).items() if v}
        self.l3 = {k: dict(v) for k, v in (l3 or {}).items() if v}
        n0, n1, n2 = space.dims
        self.names = names or (["x%d" % i for i in range(n0)] + ["y%d" % i for i in range(n1)]
                               + ["z%d" % i for i in range(n2)])

    @property
    def degrees(self):
        n0, n1, n2 = self.space.dims
        return [0] * n0 + [1] * n1 + [2] * n2

    def l1_table(self):
        n0, n1, _ = self.space.dims
        l1 = {}
        for b in range(self.space.dim1):
            v = to_sparse(self.space.diff10.column(b))
            if v:
                l1[(n0 + b,)] = v
        for c in range(self.space.dim2):
            v = {n0 + i: x for i, x in to_sparse(self.space.diff21.column(c)).items()}
            if v:
                l1[(n0 + n1 + c,)] = v
        return l1

    def to_linf(self):
        return LinfStructure(self.degrees, {1: self.l1_table(), 2: self.l2, 3: self.l3}, self.names)

    def __eq__(self, other):
        return isinstance(other, Lie3Algebra) and self.space == other.space and self.l2 == other.l2 and self.l3 == other.l3


def check_lie3_strict(t):
    lin = t.to_linf()
    verdict = Verdict()
    deg = lin.degrees
    for key, val in list(t.l2.items()) + list(t.l3.items()):
        out_deg = sum(deg[i] for i in key) + len(key) - 2
        for i in val:
            if deg[i] != out_deg:
                raise ValueError("bracket on %r has output of wrong degree" % (key,))
    return verdict.merge(lin.check(5, "Lie 3-algebra identity"))


def transport(g, phi0, phi1, phi2=None):
    """The structure on the same dimensions making (phi0, phi1, phi2) an
    isomorphism g -> g'.  phi0, phi1 must be invertible."""
    from .ratlin import inverse
    n0, n1 = g.dims
    if phi2 is None:
        phi2 = MultiTensor.zero(2, 0, n0, n1, n1, "g1")
    i0, i1 = inverse(phi0), inverse(phi1)
    diff = phi0 @ g.space.diff @ i1 if n1 else RationalMatrix(n0, 0)
    space = TwoTermSpace(n0, n1, diff)

    def pre(u):
        return i0.apply(u)

    def br00(i, j):
        x, y = pre(unit(n0, i)), pre(unit(n0, j))
        return vsub(phi0.apply(g.br(x, y)), diff.apply(phi2.evaluate([x, y])))

    def br01(i, a):
        x, b = pre(unit(n0, i)), i1.apply(unit(n1, a))
        return vsub(phi1.apply(g.br01(x, b)), phi2.evaluate([x, g.d(b)]))

    half = Lie2Algebra.from_functions(space, br00, br01)

    def l3(i, j, k):
        x, y, z = (pre(unit(n0, t)) for t in (i, j, k))
        acc = phi1.apply(g.l3v(x, y, z))
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            acc = [s + t for s, t in zip(acc, phi2.evaluate([g.br(u, v), w]))]
            acc = vsub(acc, half.br01(phi0.apply(u), phi2.evaluate([v, w])))
        return acc

    h = Lie2Algebra(space, half.l2_00, half.l2_01,
                    MultiTensor.from_function(3, 0, n0, n1, n1, lambda xt, at: l3(*xt), "g1"))
    return h, Lie2Hom(g, h, GradedMap(phi0, phi1), phi2)
