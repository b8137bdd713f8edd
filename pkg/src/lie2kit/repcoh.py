"""Modules over a Lie 2-algebra and the cochain complex C^n(g, V).

A cochain of degree n is a bundle of tensors f in Hom(wedge^p g0 (x) sym^q g1, V_s)
with p + 2q - s = n.  Blocks are flattened in (s, p, q) order; inside a
block the coordinate of (basis tuple k, output row r) is k * dim V_s + r.
"""

import os
from itertools import combinations

from .graded import (GradedMap, MultiTensor, TwoTermSpace, indexer, multiset_count, to_sparse, unit, unshuffles, vadd, vneg, vscale, vsub, vzero)
from .lie2core import Lie2Algebra, Lie2Hom, RefusalError, Verdict, check_hom
from .ratlin import ONE, ZERO, RationalMatrix, image_basis, kernel_basis, rank, solve
from math import comb

DEFAULT_CEILING = 4


def degree_ceiling():
    return int(os.environ.get("LIE2KIT_DEGREE_CEILING", DEFAULT_CEILING))


# -- Hom(V, W) and End(V) ---------------------------------------------------

def _flat(m):
    return tuple(m.entries())


def _unflat(v, rows, cols):
    return RationalMatrix(rows, cols, v)


class HomAlgebra:
    """Strict Lie 2-algebra Hom(V, W) with bracket twisted by phi: W -> V.

    Degree 0 is {(X0, X1) : X0 dV = dW X1}, degree 1 is Hom(V0, W1).
    Coordinates of degree-0 elements refer to a kernel basis of the
    constraint on the flattened pair (X0, X1).
    """

    def __init__(self, V, W, phi=None):
        self.V, self.W = V, W
        self.phi = phi if phi is not None else GradedMap.identity(V)
        v0, v1, w0, w1 = V.dim0, V.dim1, W.dim0, W.dim1
        self.n00 = w0 * v0
        self.n01 = w1 * v1
        constraint = []
        for i in range(w0):
            for j in range(v1):
                row = [ZERO] * (self.n00 + self.n01)
                for k in range(v0):
                    row[i * v0 + k] += V.diff[k, j]
                for k in range(w1):
                    row[self.n00 + k * v1 + j] -= W.diff[i, k]
                constraint.append(row)
        cm = RationalMatrix.from_rows(constraint, self.n00 + self.n01) if constraint else RationalMatrix(0, self.n00 + self.n01)
        self.basis0 = kernel_basis(cm)
        self._b0 = RationalMatrix.from_columns(self.basis0, self.n00 + self.n01)
        n1 = w1 * v0
        diff = RationalMatrix.from_columns([self.coords0(*self.delta(self.op1(unit(n1, t)))) for t in range(n1)],
                                           len(self.basis0)) if n1 else RationalMatrix(len(self.basis0), 0)
        space = TwoTermSpace(len(self.basis0), n1, diff)
        b0 = self.basis0
        self.algebra = Lie2Algebra.from_functions(
            space,
            lambda i, j: self.coords0(*self.bracket00(self.op0(b0[i]), self.op0(b0[j]))),
            lambda i, t: _flat(self.bracket01(self.op0(b0[i]), self.op1(unit(n1, t)))))

    def op0(self, vec):
        v0, v1, w0, w1 = self.V.dim0, self.V.dim1, self.W.dim0, self.W.dim1
        vec = tuple(vec)
        return _unflat(vec[:self.n00], w0, v0), _unflat(vec[self.n00:], w1, v1)

    def op1(self, vec):
        return _unflat(tuple(vec), self.W.dim1, self.V.dim0)

    def elem0(self, coords):
        return self.op0(self._b0.apply(coords))

    def coords0(self, x0, x1):
        flat = _flat(x0) + _flat(x1)
        return solve(self._b0, flat)

    def delta(self, theta):
        return self.W.diff @ theta, theta @ self.V.diff

    def bracket00(self, x, y):
        p0, p1 = self.phi.m0, self.phi.m1
        return (x[0] @ p0 @ y[0] - y[0] @ p0 @ x[0], x[1] @ p1 @ y[1] - y[1] @ p1 @ x[1])

    def bracket01(self, x, theta):
        return x[1] @ self.phi.m1 @ theta - theta @ self.phi.m0 @ x[0]


def end_algebra(V):
    return HomAlgebra(V, V)


# -- modules ----------------------------------------------------------------

class Lie2Module:
    """Action of g on V given by four tensors.

    act00: x |> u (g0 x V0 -> V0), act01: x |> m (g0 x V1 -> V1),
    act10: a |> u (g1 x V0 -> V1), act2: (x, y) |> u (wedge^2 g0 x V0 -> V1).
    Mixed slots are stored as MultiTensors whose second slot has arity one.
    """

    def __init__(self, algebra, space, act00=None, act01=None, act10=None, act2=None):
        n0, n1 = algebra.dims
        v0, v1 = space.dim0, space.dim1
        self.algebra = algebra
        self.space = space
        self.act00 = act00 if act00 is not None else MultiTensor.zero(1, 1, n0, v0, v0)
        self.act01 = act01 if act01 is not None else MultiTensor.zero(1, 1, n0, v1, v1, "V1")
        self.act10 = act10 if act10 is not None else MultiTensor.zero(1, 1, n1, v0, v1, "V1")
        self.act2 = act2 if act2 is not None else MultiTensor.zero(2, 1, n0, v0, v1, "V1")
        for name, t, shape in (("act00", self.act00, (1, 1, n0, v0, v0)), ("act01", self.act01, (1, 1, n0, v1, v1)),
                               ("act10", self.act10, (1, 1, n1, v0, v1)), ("act2", self.act2, (2, 1, n0, v0, v1))):
            if t.shape != shape:
                raise ValueError("%s has shape %s, expected %s" % (name, t.shape, shape))
        self._mats = None

    @classmethod
    def trivial(cls, algebra, space):
        return cls(algebra, space)

    @classmethod
    def from_functions(cls, algebra, space, xu=None, xm=None, au=None, xyu=None):
        n0, n1 = algebra.dims
        v0, v1 = space.dim0, space.dim1
        z0 = lambda *a: vzero(v0)
        z1 = lambda *a: vzero(v1)
        return cls(algebra, space,
                   MultiTensor.from_function(1, 1, n0, v0, v0, lambda xt, at: (xu or z0)(xt[0], at[0])),
                   MultiTensor.from_function(1, 1, n0, v1, v1, lambda xt, at: (xm or z1)(xt[0], at[0]), "V1"),
                   MultiTensor.from_function(1, 1, n1, v0, v1, lambda xt, at: (au or z1)(xt[0], at[0]), "V1"),
                   MultiTensor.from_function(2, 1, n0, v0, v1, lambda xt, at: (xyu or z1)(xt[0], xt[1], at[0]), "V1"))

    def __eq__(self, other):
        return (isinstance(other, Lie2Module) and self.algebra == other.algebra and self.space == other.space
                and (self.act00, self.act01, self.act10, self.act2) == (other.act00, other.act01, other.act10, other.act2))

    @property
    def dims(self):
        return (self.space.dim0, self.space.dim1)

    def xu(self, x, u):
        return self.act00.evaluate([x], [u])

    def xm(self, x, m):
        return self.act01.evaluate([x], [m])

    def au(self, a, u):
        return self.act10.evaluate([a], [u])

    def xyu(self, x, y, u):
        return self.act2.evaluate([x, y], [u])

    def matrices(self):
        """Action operators of basis elements as matrices."""
        if self._mats is None:
            n0, n1 = self.algebra.dims
            v0, v1 = self.dims

            def op(t, xs, dim_in):
                return RationalMatrix.from_columns([t.evaluate(xs, [unit(dim_in, c)]) for c in range(dim_in)],
                                                   t.target_dim)

            g = self.algebra
            self._mats = {
                "00": [op(self.act00, [g.e0(i)], v0) for i in range(n0)],
                "01": [op(self.act01, [g.e0(i)], v1) for i in range(n0)],
                "10": [op(self.act10, [g.e1(a)], v0) for a in range(n1)],
                "2": {(i, j): op(self.act2, [g.e0(i), g.e0(j)], v0) for i, j in combinations(range(n0), 2)},
            }
        return self._mats


def action_hom(M):
    """The action as a candidate Lie 2-algebra map g -> End(V); refuses if
    some x |> does not commute with the differential."""
    E = end_algebra(M.space)
    g = M.algebra
    n0, n1 = g.dims
    mats = M.matrices()
    cols0 = []
    for i in range(n0):
        x0, x1 = mats["00"][i], mats["01"][i]
        if x0 @ M.space.diff != M.space.diff @ x1:
            raise RefusalError("action of x%d does not commute with the differential" % i, ("x%d" % i,))
        cols0.append(E.coords0(x0, x1))
    phi0 = RationalMatrix.from_columns(cols0, E.algebra.dims[0]) if n0 else RationalMatrix(E.algebra.dims[0], 0)
    phi1 = RationalMatrix.from_columns([_flat(mats["10"][a]) for a in range(n1)], E.algebra.dims[1]) if n1 else RationalMatrix(E.algebra.dims[1], 0)
    phi2 = MultiTensor.from_function(2, 0, n0, n1, E.algebra.dims[1],
                                     lambda xt, at: _flat(mats["2"][xt]), "g1")
    return Lie2Hom(g, E.algebra, GradedMap(phi0, phi1), phi2), E


def check_action(M):
    try:
        f, _ = action_hom(M)
    except RefusalError as exc:
        v = Verdict()
        v.fail(exc.label, exc.witness)
        return v
    return Verdict().merge(check_hom(f), "action: ")


def adjoint_module(g):
    n0, n1 = g.dims
    return Lie2Module.from_functions(
        g, g.space,
        lambda i, u: g.br(g.e0(i), g.e0(u)),
        lambda i, m: g.br01(g.e0(i), g.e1(m)),
        lambda a, u: vneg(g.br01(g.e0(u), g.e1(a))),
        lambda i, j, u: vneg(g.l3v(g.e0(i), g.e0(j), g.e0(u))))


# -- cochains ---------------------------------------------------------------

def cochain_blocks(n):
    """(p, q, s) with p + 2q - s = n, s in {0, 1}, sorted by (s, p, q)."""
    out = []
    for s in (0, 1):
        for q in range(0, (n + s) // 2 + 1):
            p = n + s - 2 * q
            if p >= 0:
                out.append((p, q, s))
    return sorted(out, key=lambda b: (b[2], b[0], b[1]))


def block_dim(p, q, s, gdims, vdims):
    return comb(gdims[0], p) * multiset_count(gdims[1], q) * vdims[s]


def cochain_space(M, n):
    """Blocks of C^n with their dimensions, plus the total."""
    gd, vd = M.algebra.dims, M.dims
    blocks = [(b, block_dim(*b, gd, vd)) for b in cochain_blocks(n)]
    return blocks, sum(d for _, d in blocks)


class Cochain:
    def __init__(self, M, degree, components=None):
        self.module = M
        self.degree = degree
        n0, n1 = M.algebra.dims
        vd = M.dims
        self.components = {}
        for b in cochain_blocks(degree):
            p, q, s = b
            t = (components or {}).get(b)
            if t is None:
                t = MultiTensor.zero(p, q, n0, n1, vd[s], "V%d" % s)
            if t.shape != (p, q, n0, n1, vd[s]):
                raise ValueError("component %s has shape %s" % (b, t.shape))
            self.components[b] = t
        extra = set(components or {}) - set(self.components)
        if extra:
            raise ValueError("blocks %s do not belong to degree %d" % (sorted(extra), degree))

    def __getitem__(self, b):
        return self.components[b]

    def flatten(self):
        out = []
        for b in cochain_blocks(self.degree):
            t = self.components[b]
            for k in range(len(t.basis)):
                out.extend(t.coeffs.column(k))
        return tuple(out)

    @classmethod
    def from_flat(cls, M, degree, vec):
        n0, n1 = M.algebra.dims
        vd = M.dims
        comps = {}
        pos = 0
        vec = tuple(vec)
        for p, q, s in cochain_blocks(degree):
            ix = indexer(n0, n1, p, q)
            w = vd[s]
            cols = [vec[pos + k * w: pos + (k + 1) * w] for k in range(len(ix))]
            pos += len(ix) * w
            comps[(p, q, s)] = MultiTensor(p, q, n0, n1, w, RationalMatrix.from_columns(cols, w), "V%d" % s)
        if pos != len(vec):
            raise ValueError("vector length %d, expected %d" % (len(vec), pos))
        return cls(M, degree, comps)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.flatten() == other.flatten()

    def __add__(self, other):
        return Cochain.from_flat(self.module, self.degree, vadd(self.flatten(), other.flatten()))

    def __sub__(self, other):
        return Cochain.from_flat(self.module, self.degree, vsub(self.flatten(), other.flatten()))

    def __neg__(self):
        return Cochain.from_flat(self.module, self.degree, vneg(self.flatten()))

    def is_zero(self):
        return not any(self.flatten())

    def __repr__(self):
        return "Cochain(degree=%d)" % self.degree


# -- the coboundary operator --------------------------------------------------

def _expand(n0, n1, p, q, xs, as_):
    """Columns and coefficients of a (possibly non-basis) argument list."""
    ix = indexer(n0, n1, p, q)
    args = [list(x.items()) for x in xs] + [list(a.items()) for a in as_]
    out = {}
    from itertools import product
    for choice in product(*args):
        coef = ONE
        for _, c in choice:
            coef *= c
        idx = [i for i, _ in choice]
        col, sign = ix.locate(idx[:p], idx[p:])
        if col is None:
            continue
        out[col] = out.get(col, ZERO) + sign * coef
    return {k: v for k, v in out.items() if v}


class _Builder:
    def __init__(self, M, n):
        self.M = M
        self.n = n
        g = M.algebra
        self.n0, self.n1 = g.dims
        self.vd = M.dims
        self.src = self._offsets(n)
        self.dst = self._offsets(n + 1)
        self.entries = {}

    def _offsets(self, n):
        offs = {}
        pos = 0
        for b in cochain_blocks(n):
            offs[b] = pos
            pos += block_dim(*b, (self.n0, self.n1), self.vd)
        offs["total"] = pos
        return offs

    def add(self, out_block, out_col, in_block, xs, as_, op, sign):
        """Record sign * op(f_in(xs, as_)) at output (out_block, out_col).

        op is a matrix V_in -> V_out or None for the identity."""
        if in_block not in self.src:
            return
        p, q, s = in_block
        if p > self.n0 or (q and not self.n1):
            return
        cols = _expand(self.n0, self.n1, p, q, xs, as_)
        if not cols:
            return
        w_in = self.vd[s]
        w_out = self.vd[out_block[2]]
        r0 = self.dst[out_block] + out_col * w_out
        c_base = self.src[in_block]
        e = self.entries
        for col, coef in cols.items():
            c0 = c_base + col * w_in
            if op is None:
                for r in range(w_in):
                    key = (r0 + r, c0 + r)
                    e[key] = e.get(key, ZERO) + sign * coef
            else:
                for r in range(w_out):
                    for c in range(w_in):
                        a = op[r, c]
                        if a:
                            key = (r0 + r, c0 + c)
                            e[key] = e.get(key, ZERO) + sign * coef * a

    def matrix(self):
        rows, cols = self.dst["total"], self.src["total"]
        data = [ZERO] * (rows * cols)
        for (r, c), v in self.entries.items():
            data[r * cols + c] = v
        return RationalMatrix(rows, cols, data)


def _basis_vec(i):
    return {i: ONE}


def coboundary(M, n):
    """Matrix of D: C^n -> C^(n+1), assembled from its six components."""
    B = _Builder(M, n)
    g = M.algebra
    n0, n1 = g.dims
    mats = M.matrices()
    dmat = M.space.diff
    dcols = [to_sparse(g.space.diff.column(a)) for a in range(n1)]
    br00 = {}
    for i, j in combinations(range(n0), 2):
        br00[(i, j)] = to_sparse(g.br(g.e0(i), g.e0(j)))
    br01 = {(i, a): to_sparse(g.br01(g.e0(i), g.e1(a))) for i in range(n0) for a in range(n1)}
    l3 = {t: to_sparse(g.l3v(*(g.e0(i) for i in t))) for t in combinations(range(n0), 3)}
    for out in cochain_blocks(n + 1):
        P, Q, S = out
        if P > n0 or (Q and not n1):
            continue
        ix = indexer(n0, n1, P, Q)
        for col, (xt, at) in enumerate(ix.tuples):
            X = [_basis_vec(i) for i in xt]
            A = [_basis_vec(a) for a in at]
            # hat d: from (P+1, Q-1, S), sign (-1)^(P+1)
            if Q >= 1:
                sg = -1 if (P + 1) % 2 else 1
                for k in range(Q):
                    rest = A[:k] + A[k + 1:]
                    B.add(out, col, (P + 1, Q - 1, S), X + [dcols[at[k]]], rest, None, sg)
            # hat partial: from (P, Q, 1) into S = 0, sign (-1)^(P + 2Q)
            if S == 0:
                B.add(out, col, (P, Q, 1), X, A, dmat, -1 if P % 2 else 1)
            # d^(1,0): from (P-1, Q, S)
            if P >= 1:
                key = "00" if S == 0 else "01"
                for i in range(P):
                    sg = 1 if i % 2 == 0 else -1          # (-1)^(i+1) with 1-based i
                    B.add(out, col, (P - 1, Q, S), X[:i] + X[i + 1:], A, mats[key][xt[i]], sg)
                for i, j in combinations(range(P), 2):
                    sg = 1 if (i + j) % 2 == 0 else -1    # (-1)^(i+j), same parity 1-based
                    rest = [X[k] for k in range(P) if k not in (i, j)]
                    B.add(out, col, (P - 1, Q, S), [br00[(xt[i], xt[j])]] + rest, A, None, sg)
                for i in range(P):
                    sg = -1 if i % 2 == 0 else 1          # (-1)^i with 1-based i
                    rest = X[:i] + X[i + 1:]
                    for k in range(Q):
                        args = A[:k] + [br01[(xt[i], at[k])]] + A[k + 1:]
                        B.add(out, col, (P - 1, Q, S), rest, args, None, sg)
            # d^(0,1): from (P, Q-1, 0) into S = 1, sign (-1)^P
            if S == 1 and Q >= 1:
                sg = -1 if P % 2 else 1
                for k in range(Q):
                    B.add(out, col, (P, Q - 1, 0), X, A[:k] + A[k + 1:], mats["10"][at[k]], sg)
            # d_phi2: from (P-2, Q, 0) into S = 1, sign (-1)^(P-2+2Q) (-1)^sigma
            if S == 1 and P >= 2:
                base = -1 if P % 2 else 1
                for perm, sgn in unshuffles(2, P):
                    i, j = xt[perm[0]], xt[perm[1]]
                    rest = [X[k] for k in perm[2:]]
                    B.add(out, col, (P - 2, Q, 0), rest, A, mats["2"][(i, j)], base * sgn)
            # d_l3: from (P-3, Q+1, S), -(-1)^tau
            if P >= 3 and n1:
                for perm, sgn in unshuffles(3, P):
                    t = tuple(xt[k] for k in perm[:3])
                    val = l3[t]
                    if not val:
                        continue
                    rest = [X[k] for k in perm[3:]]
                    B.add(out, col, (P - 3, Q + 1, S), rest, A + [val], None, -sgn)
    return B.matrix()


_CACHE = {}


def coboundary_cached(M, n):
    key = (id(M), n)
    hit = _CACHE.get(key)
    if hit is None or hit[0] is not M:
        hit = _CACHE[key] = (M, coboundary(M, n))
    return hit[1]


def apply_D(c):
    D = coboundary_cached(c.module, c.degree)
    return Cochain.from_flat(c.module, c.degree + 1, D.apply(c.flatten()))


def cohomology(M, n):
    """(betti, representatives) of H^n(g, V)."""
    ceiling = degree_ceiling()
    if n > ceiling:
        raise RefusalError("degree %d exceeds the configured ceiling %d" % (n, ceiling))
    if n < -1:
        raise ValueError("degree must be at least -1")
    Dn = coboundary_cached(M, n)
    ker = kernel_basis(Dn)
    if n - 1 >= -1:
        img = image_basis(coboundary_cached(M, n - 1))
    else:
        img = []
    reps = []
    span = list(img)
    r = len(img)
    dim = Dn.cols
    for v in ker:
        trial = span + [v]
        if rank(RationalMatrix.from_rows(trial, dim)) > r:
            span = trial
            r += 1
            reps.append(v)
    betti = len(ker) - len(img)
    assert betti == len(reps)
    return betti, [Cochain.from_flat(M, n, v) for v in reps]


def is_coboundary(M, n, vec):
    """Whether a flattened n-cochain lies in the image of D_(n-1)."""
    from .ratlin import NoSolution
    if n - 1 < -1:
        return not any(vec)
    try:
        solve(coboundary_cached(M, n - 1), vec)
    except NoSolution:
        return False
    return True


def class_coordinates(M, n, vec):
    """Coordinates of the class of a cocycle in the representative basis of H^n."""
    _, reps = cohomology(M, n)
    img = image_basis(coboundary_cached(M, n - 1)) if n - 1 >= -1 else []
    cols = [r.flatten() for r in reps] + list(img)
    dim = len(vec)
    if not cols:
        return ()
    sol = solve(RationalMatrix.from_columns(cols, dim), vec)
    return tuple(sol[:len(reps)])


# -- explicit low-degree formulas ---------------------------------------------

def one_cochain(M, X0, X1, lX):
    """Degree-1 cochain from X0: g0 -> V0, X1: g1 -> V1 (matrices) and lX."""
    n0, n1 = M.algebra.dims
    v0, v1 = M.dims
    return Cochain(M, 1, {
        (1, 0, 0): MultiTensor(1, 0, n0, n1, v0, X0),
        (0, 1, 1): MultiTensor(0, 1, n0, n1, v1, X1, "V1"),
        (2, 0, 1): lX,
    })


def one_cocycle_residuals(M, X0, X1, lX):
    """Residuals of the four 1-cocycle equations, per basis tuple."""
    g = M.algebra
    n0, n1 = g.dims
    dV = M.space.diff
    v = Verdict()
    lhs, rhs = X0 @ g.space.diff, dV @ X1
    for a in range(n1):
        if lhs.column(a) != rhs.column(a):
            v.fail("1-cocycle eq. X0 d = partial X1", ("a%d" % a,), vsub(lhs.column(a), rhs.column(a)))
    for i, j in combinations(range(n0), 2):
        x, y = g.e0(i), g.e0(j)
        res = vsub(dV.apply(lX.evaluate([x, y])),
                   vadd(X0.apply(g.br(x, y)), M.xu(y, X0.apply(x)), vneg(M.xu(x, X0.apply(y)))))
        if any(res):
            v.fail("1-cocycle eq. partial lX(x,y)", ("x%d" % i, "x%d" % j), res)
    for i in range(n0):
        for a in range(n1):
            x, b = g.e0(i), g.e1(a)
            res = vsub(lX.evaluate([x, g.d(b)]),
                       vadd(X1.apply(g.br01(x, b)), M.au(b, X0.apply(x)), vneg(M.xm(x, X1.apply(b)))))
            if any(res):
                v.fail("1-cocycle eq. lX(x,da)", ("x%d" % i, "a%d" % a), res)
    for i, j, k in combinations(range(n0), 3):
        x, y, z = g.e0(i), g.e0(j), g.e0(k)
        acc = vzero(M.dims[1])
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            acc = vadd(acc, lX.evaluate([p, g.br(q, r)]), M.xm(p, lX.evaluate([q, r])), vneg(M.xyu(q, r, X0.apply(p))))
        res = vsub(X1.apply(g.l3v(x, y, z)), acc)
        if any(res):
            v.fail("1-cocycle eq. X l3", ("x%d" % i, "x%d" % j, "x%d" % k), res)
    return v


def one_coboundary(M, u, Theta):
    """D(u + Theta) for u in V0 and Theta: g0 -> V1, by the explicit formulas."""
    g = M.algebra
    n0, n1 = g.dims
    v0, v1 = M.dims
    dV = M.space.diff
    u = tuple(u)
    X0 = RationalMatrix.from_columns([vsub(M.xu(g.e0(i), u), dV.apply(Theta.apply(g.e0(i)))) for i in range(n0)], v0)
    X1 = RationalMatrix.from_columns([vsub(M.au(g.e1(a), u), Theta.apply(g.d(g.e1(a)))) for a in range(n1)], v1)

    def lx(xt, at):
        x, y = g.e0(xt[0]), g.e0(xt[1])
        return vadd(M.xyu(x, y, u), M.xm(x, Theta.apply(y)), vneg(M.xm(y, Theta.apply(x))),
                    vneg(Theta.apply(g.br(x, y))))

    lX = MultiTensor.from_function(2, 0, n0, n1, v1, lx, "V1")
    return one_cochain(M, X0, X1, lX)


def zero_cochain(M, u, Theta):
    n0, n1 = M.algebra.dims
    v0, v1 = M.dims
    return Cochain(M, 0, {(0, 0, 0): MultiTensor(0, 0, n0, n1, v0, RationalMatrix.from_columns([tuple(u)], v0)),
                          (1, 0, 1): MultiTensor(1, 0, n0, n1, v1, Theta, "V1")})


def two_cochain(M, lam0, lam1, lam2, lam3):
    """lam0: g1 -> V0, lam1: wedge^2 g0 -> V0, lam2: g0 x g1 -> V1, lam3: wedge^3 g0 -> V1."""
    return Cochain(M, 2, {(0, 1, 0): lam0, (2, 0, 0): lam1, (1, 1, 1): lam2, (3, 0, 1): lam3})


def three_coboundary(lam):
    """D lambda for a 2-cochain by the five explicit component formulas."""
    M = lam.module
    g = M.algebra
    n0, n1 = g.dims
    v0, v1 = M.dims
    dV = M.space.diff
    l0, l1, l2, l3 = lam[(0, 1, 0)], lam[(2, 0, 0)], lam[(1, 1, 1)], lam[(3, 0, 1)]
    L0 = lambda a: l0.evaluate([], [a])
    L1 = lambda x, y: l1.evaluate([x, y])
    L2 = lambda x, a: l2.evaluate([x], [a])
    L3 = lambda x, y, z: l3.evaluate([x, y, z])

    def th0(xt, at):
        x, a = g.e0(xt[0]), g.e1(at[0])
        return vadd(M.xu(x, L0(a)), vneg(L0(g.br01(x, a))), L1(x, g.d(a)), vneg(dV.apply(L2(x, a))))

    def th1(xt, at):
        a, b = g.e1(at[0]), g.e1(at[1])
        return vadd(M.au(a, L0(b)), M.au(b, L0(a)), vneg(L2(g.d(a), b)), vneg(L2(g.d(b), a)))

    def th2(xt, at):
        x, y, z = (g.e0(i) for i in xt)
        acc = vneg(L0(g.l3v(x, y, z)))
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            acc = vadd(acc, M.xu(p, L1(q, r)), vneg(L1(g.br(p, q), r)))
        return vsub(acc, dV.apply(L3(x, y, z)))

    def th3(xt, at):
        x, y = g.e0(xt[0]), g.e0(xt[1])
        a = g.e1(at[0])
        return vadd(M.xyu(x, y, L0(a)), M.au(a, L1(x, y)), M.xm(x, L2(y, a)), vneg(M.xm(y, L2(x, a))),
                    vneg(L2(g.br(x, y), a)), vneg(L2(y, g.br01(x, a))), L2(x, g.br01(y, a)),
                    vneg(L3(x, y, g.d(a))))

    def th4(xt, at):
        xs = [g.e0(i) for i in xt]
        acc = vzero(v1)
        for perm, sgn in unshuffles(2, 4):
            a, b, c, d = (xs[k] for k in perm)
            acc = vadd(acc, vscale(sgn, M.xyu(a, b, L1(c, d))))
        for perm, sgn in unshuffles(3, 4):
            a, b, c, d = (xs[k] for k in perm)
            acc = vsub(acc, vscale(sgn, L2(d, g.l3v(a, b, c))))
        for i in range(4):
            rest = xs[:i] + xs[i + 1:]
            acc = vadd(acc, vscale((-1) ** i, M.xm(xs[i], L3(*rest))))
        for i, j in combinations(range(4), 2):
            rest = [xs[k] for k in range(4) if k not in (i, j)]
            acc = vadd(acc, vscale((-1) ** (i + j), L3(g.br(xs[i], xs[j]), *rest)))
        return acc

    return Cochain(M, 3, {
        (1, 1, 0): MultiTensor.from_function(1, 1, n0, n1, v0, th0),
        (0, 2, 1): MultiTensor.from_function(0, 2, n0, n1, v1, th1, "V1"),
        (3, 0, 0): MultiTensor.from_function(3, 0, n0, n1, v0, th2),
        (2, 1, 1): MultiTensor.from_function(2, 1, n0, n1, v1, th3, "V1"),
        (4, 0, 1): MultiTensor.from_function(4, 0, n0, n1, v1, th4, "V1"),
    })


def ce_differential(w, xs_vals, br, act, p):
    """Classical value (dw)(x_0..x_p) for a p-form w on a Lie algebra; helper for
    the skeletal check.  w(list) -> vector, br(x, y), act(x, v)."""
    xs = xs_vals
    acc = None
    for i in range(p + 1):
        rest = xs[:i] + xs[i + 1:]
        term = vscale((-1) ** i, act(xs[i], w(rest)))
        acc = term if acc is None else vadd(acc, term)
    for i, j in combinations(range(p + 1), 2):
        rest = [xs[k] for k in range(p + 1) if k not in (i, j)]
        acc = vadd(acc, vscale((-1) ** (i + j), w([br(xs[i], xs[j])] + rest)))
    return acc


def skeletal_derivation_check(g, X0, X1, lX):
    """X in Der(g0 |x V) and Dl_X = [X, l3] for a skeletal g (d = 0)."""
    if not g.is_skeletal():
        raise RefusalError("algebra is not skeletal")
    n0, n1 = g.dims
    v = Verdict()
    for i, j in combinations(range(n0), 2):
        x, y = g.e0(i), g.e0(j)
        res = vsub(X0.apply(g.br(x, y)), vadd(g.br(X0.apply(x), y), g.br(x, X0.apply(y))))
        if any(res):
            v.fail("X0 is a derivation of g0", ("x%d" % i, "x%d" % j), res)
    for i in range(n0):
        for a in range(n1):
            x, b = g.e0(i), g.e1(a)
            res = vsub(X1.apply(g.br01(x, b)), vadd(g.br01(X0.apply(x), b), g.br01(x, X1.apply(b))))
            if any(res):
                v.fail("X is a derivation of the semidirect product", ("x%d" % i, "a%d" % a), res)
    for i, j, k in combinations(range(n0), 3):
        xs = [g.e0(i), g.e0(j), g.e0(k)]
        dl = ce_differential(lambda args: lX.evaluate(args), xs, g.br, g.br01, 2)
        bracket = vsub(X1.apply(g.l3v(*xs)), vadd(g.l3v(X0.apply(xs[0]), xs[1], xs[2]),
                                                   g.l3v(xs[0], X0.apply(xs[1]), xs[2]),
                                                   g.l3v(xs[0], xs[1], X0.apply(xs[2]))))
        res = vsub(dl, bracket)
        if any(res):
            v.fail("CE coboundary of lX equals [X, l3]", ("x%d" % i, "x%d" % j, "x%d" % k), res)
    return v
