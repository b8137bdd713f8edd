"""Valid (algebra, module) pairs with every graded piece of dimension at most 3,
and (g, m, action) triples for crossed products."""

from fractions import Fraction

from lie2kit import fixtures as F
from lie2kit.classify import pullback_module
from lie2kit.crossmod import DerivAction, ideal_crossed_module, identity_crossed_module
from lie2kit.graded import MultiTensor, TwoTermSpace, unit
from lie2kit.lie2core import Lie2Algebra, quotient, transport
from lie2kit.ratlin import RationalMatrix
from lie2kit.repcoh import Lie2Module, adjoint_module


def _m(rows):
    return RationalMatrix.from_rows(rows)


def transported_sl2_string():
    phi2 = MultiTensor.from_entries(2, 0, 3, 1, 1, [((0, 1, 0), 1), ((1, 2, 0), Fraction(-1, 2))], "g1")
    h, _ = transport(F.string_sl2(), _m([[1, 1, 0], [0, 1, 0], [0, 1, 1]]), _m([[3]]), phi2)
    return h


def valid_pairs():
    """(name, module) pairs; each module's algebra passes check_lie2 and the action passes check_action."""
    out = []
    algebras = dict((k, f()) for k, f in F.ALGEBRAS.items())
    algebras["transported_string_sl2"] = transported_sl2_string()
    algebras["abelian_2_1_d"] = F.abelian(2, 1, [[1], [0]])
    algebras["aff1_plus_line"] = F.direct_sum(F.aff1(), F.abelian(1, 1))
    for name, g in sorted(algebras.items()):
        n0, n1 = g.dims
        if max(n0, n1) > 3:
            continue
        out.append((name + "/adjoint", adjoint_module(g)))
        out.append((name + "/trivial_1_1", Lie2Module(g, TwoTermSpace(1, 1, [[1]]))))
    # modules pulled back along quotients, and ideals acted on by the ambient algebra
    h, pi = quotient(F.aff1_cm(), ([(0, 1)], [(1,)]))
    out.append(("aff1_cm/pullback_trivial", pullback_module(Lie2Module(h, TwoTermSpace(1, 1)), pi)))
    out.append(("aff1_cm/ideal", ideal_crossed_module(F.aff1_cm(), ([(0, 1)], [(1,)])).module))
    out.append(("aff1/ideal", ideal_crossed_module(F.aff1(), ([(0, 1)], [])).module))
    out.append(("string_sl2/identity", ideal_crossed_module(F.string_sl2(), ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1,)])).module))
    # a non-trivial module over aff1: e0 acts by weight 1 on V0 and V1, d = id
    out.append(("aff1/weight_one", Lie2Module.from_functions(
        F.aff1(), TwoTermSpace(1, 1, [[1]]),
        lambda i, u: (1,) if i == 0 else (0,), lambda i, m: (1,) if i == 0 else (0,))))
    return out


def _basis(n, offset, total):
    return [unit(total, offset + i) for i in range(n)]


def product_bases(g, m):
    n0, n1 = g.dims
    k0, k1 = m.dims
    return ((_basis(n0, 0, n0 + k0), _basis(n1, 0, n1 + k1)), (_basis(k0, n0, n0 + k0), _basis(k1, n1, n1 + k1)))


def product_cases():
    """(name, g, m, action) for every crossed module fixture, every identity
    crossed module and every semidirect product over the valid module pairs."""
    out = [(name, cm.g, cm.m, cm.action) for name, cm in sorted(F.crossed_modules().items())]
    for name, make in sorted(F.ALGEBRAS.items()):
        cm = identity_crossed_module(make())
        out.append(("identity/" + name, cm.g, cm.m, cm.action))
    for name, M in valid_pairs()[:10]:
        out.append(("semidirect/" + name, M.algebra, Lie2Algebra(M.space), DerivAction(M)))
    return out
