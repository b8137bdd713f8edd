"""Small hand-made Lie 2-algebras used by the tests, the CLI examples and the docs."""

from fractions import Fraction

from .graded import GradedMap, MultiTensor, TwoTermSpace
from .lie2core import Lie2Algebra, quotient, transport
from .ratlin import RationalMatrix


def abelian(n0=1, n1=1, diff=None):
    return Lie2Algebra.abelian(n0, n1, diff)


def aff1():
    """Two-dimensional non-abelian Lie algebra [e0, e1] = e1, g1 = 0."""
    return Lie2Algebra.from_functions(TwoTermSpace(2, 0), lambda i, j: (0, 1))


def sl2():
    """sl2 on (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    t = {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}
    return Lie2Algebra.from_functions(TwoTermSpace(3, 0), lambda i, j: t[(i, j)])


def heis():
    """Heisenberg algebra [e0, e1] = e2."""
    t = {(0, 1): (0, 0, 1), (0, 2): (0, 0, 0), (1, 2): (0, 0, 0)}
    return Lie2Algebra.from_functions(TwoTermSpace(3, 0), lambda i, j: t[(i, j)])


def string_sl2():
    """sl2 -> 0 with l3(x, y, z) = K(x, [y, z]) for the Killing form K."""
    t = {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}
    K = [[8, 0, 0], [0, 0, 4], [0, 4, 0]]

    def l3(i, j, k):
        b = t[(j, k)]
        return (sum(K[i][r] * b[r] for r in range(3)),)

    return Lie2Algebra.from_functions(TwoTermSpace(3, 1), lambda i, j: t[(i, j)], None, l3)


def aff1_cm():
    """Strict (2,1) algebra with d(a) = e1, [e0, e1] = e1, [e0, a] = a."""
    return Lie2Algebra.from_functions(TwoTermSpace(2, 1, [[0], [1]]), lambda i, j: (0, 1),
                                      lambda i, a: (1,) if i == 0 else (0,))


def strict32():
    """Strict (3,2) algebra: e0 acts with weights 1, 2 on e1, e2 and on a0, a1; d(a_k) = e_(k+1)."""
    t = {(0, 1): (0, 1, 0), (0, 2): (0, 0, 2), (1, 2): (0, 0, 0)}
    w = {0: (1, 0), 1: (0, 2)}

    def br01(i, a):
        return w[a] if i == 0 else (0, 0)

    return Lie2Algebra.from_functions(TwoTermSpace(3, 2, [[0, 0], [1, 0], [0, 1]]), lambda i, j: t[(i, j)], br01)


def _mat(rows):
    return RationalMatrix.from_rows(rows, len(rows[0]) if rows else 0)


def transported_aff1_cm():
    """aff1_cm pushed along a non-trivial (phi0, phi1, phi2): non-strict and non-skeletal."""
    phi2 = MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), 2)], "g1")
    h, _ = transport(aff1_cm(), _mat([[1, 1], [-1, 2]]), _mat([[2]]), phi2)
    return h


def transported_strict32():
    phi2 = MultiTensor.from_entries(2, 0, 3, 2, 2, [((0, 1, 0), 1), ((1, 2, 1), -1), ((0, 2, 1), Fraction(1, 2))], "g1")
    h, _ = transport(strict32(), _mat([[1, 0, 1], [0, 1, 0], [1, 1, 2]]), _mat([[1, 1], [0, 1]]), phi2)
    return h


ALGEBRAS = {
    "abelian": lambda: abelian(1, 1),
    "aff1": aff1,
    "sl2": sl2,
    "heis": heis,
    "string_sl2": string_sl2,
    "aff1_cm": aff1_cm,
    "strict32": strict32,
    "transported_aff1_cm": transported_aff1_cm,
    "transported_strict32": transported_strict32,
}


def direct_sum(a, b):
    """a (+) b with no cross brackets; a's coordinates first in each degree."""
    n0, n1 = a.dims
    k0, k1 = b.dims
    N0, N1 = n0 + k0, n1 + k1
    rows = [list(a.space.diff.row(i)) + [0] * k1 for i in range(n0)] + \
        [[0] * n1 + list(b.space.diff.row(i)) for i in range(k0)]
    diff = RationalMatrix.from_rows(rows, N1) if N0 else RationalMatrix(0, N1)

    def sp(v, n):
        return tuple(v[:n]), tuple(v[n:])

    def e(N, i):
        return tuple(1 if j == i else 0 for j in range(N))

    def br00(i, j):
        (x, u), (y, w) = sp(e(N0, i), n0), sp(e(N0, j), n0)
        return a.br(x, y) + b.br(u, w)

    def br01(i, t):
        (x, u), (c, m) = sp(e(N0, i), n0), sp(e(N1, t), n1)
        return a.br01(x, c) + b.br01(u, m)

    def l3(i, j, k):
        (x, u), (y, w), (z, r) = sp(e(N0, i), n0), sp(e(N0, j), n0), sp(e(N0, k), n0)
        return a.l3v(x, y, z) + b.l3v(u, w, r)

    return Lie2Algebra.from_functions(TwoTermSpace(N0, N1, diff), br00, br01, l3)


def heis4():
    """Four-dimensional algebra with [e0, e1] = e3 as the only bracket."""
    t = {(0, 1): (0, 0, 0, 1)}
    return Lie2Algebra.from_functions(TwoTermSpace(4, 0), lambda i, j: t.get((i, j), (0, 0, 0, 0)))


def heis4_extension():
    """(g, k, V, lambda) with k = span(e3), V trivial and lambda_1(e2, e3) = 1.

    The resulting crossed module has a non-zero class in H^3(g/k, V)."""
    from .classify import pullback_module
    from .repcoh import Cochain, Lie2Module
    g = heis4()
    k = ([(0, 0, 0, 1)], [])
    h, pi = quotient(g, k)
    V = Lie2Module(h, TwoTermSpace(1, 0))
    lam = Cochain(pullback_module(V, pi), 2, {(2, 0, 0): MultiTensor.from_entries(2, 0, 4, 0, 1, [((2, 3, 0), 1)])})
    return g, k, V, lam


def extension_cases():
    """Small (g, k, V) triples for which the lambda condition has solutions."""
    from .repcoh import Lie2Module
    out = {}
    for name, g, k, Vs in (
            ("heis", heis(), ([(0, 0, 1)], []), TwoTermSpace(1, 0)),
            ("aff1_cm", aff1_cm(), ([(0, 1)], [(1,)]), TwoTermSpace(1, 1, [[1]])),
            ("string_sum", direct_sum(string_sl2(), abelian(1, 1)), ([(0, 0, 0, 1)], [(0, 1)]), TwoTermSpace(1, 1)),
            ("string_sum0", direct_sum(string_sl2(), abelian(1, 0)), ([(0, 0, 0, 1)], []), TwoTermSpace(1, 1))):
        h, _ = quotient(g, k)
        out[name] = (g, k, Lie2Module(h, Vs))
    return out


def splice_abelian3():
    """(V, I, Q, p, q, lambda) over the abelian algebra on three generators.

    I = span(f0, f1) with x0 |> f1 = f0, V = span(f0), Q = I/V, and
    lambda = x1* ^ x2* in C^2(h, Q).  The connecting map sends [lambda] to a
    non-zero class."""
    from .repcoh import Cochain, Lie2Module
    h = abelian(3, 0)
    V = Lie2Module(h, TwoTermSpace(1, 0))
    Q = Lie2Module(h, TwoTermSpace(1, 0))
    I = Lie2Module(h, TwoTermSpace(2, 0), MultiTensor.from_entries(1, 1, 3, 2, 2, [((0, 1, 0), 1)]))
    p = GradedMap(RationalMatrix.from_rows([[1], [0]]), RationalMatrix(0, 0))
    q = GradedMap(RationalMatrix.from_rows([[0, 1]]), RationalMatrix(0, 0))
    lam = Cochain(Q, 2, {(2, 0, 0): MultiTensor.from_entries(2, 0, 3, 0, 1, [((1, 2, 0), 1)])})
    return V, I, Q, p, q, lam


def splice_aff1_cm():
    """Splice over the non-trivial (2,1) algebra aff1_cm with I = V (+) Q trivial,
    each a copy of Q(1) -> Q(1) with identity differential, and lambda = 0."""
    from .repcoh import Cochain, Lie2Module
    h = aff1_cm()
    one = TwoTermSpace(1, 1, [[1]])
    V = Lie2Module(h, one)
    Q = Lie2Module(h, one)
    I = Lie2Module(h, TwoTermSpace(2, 2, [[1, 0], [0, 1]]))
    p = GradedMap(RationalMatrix.from_rows([[1], [0]]), RationalMatrix.from_rows([[1], [0]]))
    q = GradedMap(RationalMatrix.from_rows([[0, 1]]), RationalMatrix.from_rows([[0, 1]]))
    return V, I, Q, p, q, Cochain(Q, 2)


def crossed_modules():
    """Named crossed modules: ideal / identity ones and derivation ones."""
    from .crossmod import derivation_crossed_module, ideal_crossed_module, identity_crossed_module
    return {
        "aff1_ideal": ideal_crossed_module(aff1(), ([(0, 1)], [])),
        "aff1_cm_ideal": ideal_crossed_module(aff1_cm(), ([(0, 1)], [(1,)])),
        "string_sl2_identity": identity_crossed_module(string_sl2()),
        "transported_aff1_cm_identity": identity_crossed_module(transported_aff1_cm()),
        "aff1_cm_derivations": derivation_crossed_module(aff1_cm()),
        "string_sl2_derivations": derivation_crossed_module(string_sl2()),
    }


def _lambda_from_space(g, k, V, coeffs):
    from .classify import lambda_condition_space
    from .repcoh import Cochain
    basis = lambda_condition_space(g, k, V)
    flat = [0] * len(basis[0].flatten())
    for c, b in zip(coeffs, basis):
        flat = [x + c * y for x, y in zip(flat, b.flatten())]
    return Cochain.from_flat(basis[0].module, 2, flat)


def _put_extension(ws, name, gname, k, V, lam):
    ws.put_module(name + ".V", V)
    lname = ws.put_cochain(name + ".lambda", lam)
    obj = {"g": gname, "ideal": [[[str(x) for x in v] for v in k[0]], [[str(x) for x in v] for v in k[1]]],
           "V": name + ".V", "lambda": lname}
    ws.put("extensions", name, obj)


def _put_sequence(ws, name, V, I, Q, p, q, lam):
    from .workspace import matrix_to
    h = ws.ensure_algebra(V.algebra, name + ".h")
    for tag, M in (("V", V), ("I", I), ("Q", Q)):
        ws.put_module("%s.%s" % (name, tag), M, h)
    obj = {"V": name + ".V", "I": name + ".I", "Q": name + ".Q", "p0": matrix_to(p.m0), "p1": matrix_to(p.m1),
           "q0": matrix_to(q.m0), "q1": matrix_to(q.m1)}
    if not lam.is_zero():
        obj["lambda"] = ws.put_cochain(name + ".lambda", lam, name + ".Q")
    ws.put("sequences", name, obj)


def fixture_workspaces():
    """The shipped workspace files, keyed by file name."""
    from .crossmod import identity_crossed_module
    from .repcoh import Cochain, Lie2Module, adjoint_module
    from .workspace import Workspace
    cms = crossed_modules()
    out = {}

    ws = Workspace()
    for name, g in (("abelian_1_1", abelian(1, 1)), ("abelian_2_1", abelian(2, 1, [[1], [0]])),
                    ("abelian_3_0", abelian(3, 0))):
        ws.put_algebra(name, g)
        ws.put_module(name + ".trivial", Lie2Module(g, TwoTermSpace(1, 1)), name)
    ws.put("spaces", "line", {"dims": [1, 0], "d": []})
    ws.put("modules", "abelian_3_0.line", {"algebra": "abelian_3_0", "space": "line"})
    ws.put_crossed_module("abelian_2_1.identity", identity_crossed_module(abelian(2, 1, [[1], [0]])))
    out["abelian.json"] = ws

    ws = Workspace()
    for name in ("aff1", "aff1_cm", "transported_aff1_cm"):
        g = ALGEBRAS[name]()
        ws.put_algebra(name, g)
        ws.put_module(name + ".adjoint", adjoint_module(g), name)
    ws.put_module("aff1.trivial", Lie2Module(aff1(), TwoTermSpace(1, 0)), "aff1")
    out["aff1.json"] = ws

    ws = Workspace()
    for name in ("sl2", "string_sl2"):
        g = ALGEBRAS[name]()
        ws.put_algebra(name, g)
        ws.put_module(name + ".trivial", Lie2Module(g, TwoTermSpace(1, 0)), name)
        ws.put_module(name + ".adjoint", adjoint_module(g), name)
    out["sl2.json"] = ws

    ws = Workspace()
    ws.put_algebra("heis", heis())
    ws.put_module("heis.trivial", Lie2Module(heis(), TwoTermSpace(1, 0)), "heis")
    g, k, V = extension_cases()["heis"]
    _put_extension(ws, "heis.center", "heis", k, V, _lambda_from_space(g, k, V, [1, -2, 3, 1, 2, -1]))
    Vg = Cochain(_lambda_from_space(g, k, V, [1]).module, 1).module
    A = Cochain.from_flat(Vg, 1, [(-1) ** i * (i % 3) for i in range(len(Cochain(Vg, 1).flatten()))])
    R = Cochain.from_flat(V, 2, [1 + i % 2 for i in range(len(Cochain(V, 2).flatten()))])
    ws.put_cochain("heis.center.A", A, "heis.center.lambda.module")
    ws.put_cochain("heis.center.R", R, "heis.center.V")
    gauged = dict(ws.data["extensions"]["heis.center"], A="heis.center.A", R="heis.center.R")
    ws.put("extensions", "heis.center.gauged", gauged)
    ws.put_algebra("heis4", heis4())
    g, k, V, lam = heis4_extension()
    _put_extension(ws, "heis4.center", "heis4", k, V, lam)
    out["heis.json"] = ws

    ws = Workspace()
    _put_sequence(ws, "splice", *splice_abelian3())
    _put_sequence(ws, "splice_aff1_cm", *splice_aff1_cm())
    out["splice.json"] = ws

    ws = Workspace()
    for name in ("aff1_cm_derivations", "string_sl2_derivations"):
        ws.put_crossed_module(name, cms[name])
    out["derivation_cm.json"] = ws

    ws = Workspace()
    for name in ("aff1_ideal", "aff1_cm_ideal", "string_sl2_identity", "transported_aff1_cm_identity"):
        ws.put_crossed_module(name, cms[name])
    out["ideal_cm.json"] = ws
    return out


def write_fixture_files(directory):
    import os
    for fname, ws in fixture_workspaces().items():
        ws.dump(os.path.join(directory, fname))
