"""Graded spaces, chain maps and multilinear tensors on wedge^p g0 (x) sym^q g1.

Vectors are plain tuples of Fractions.  Internally tensors keep a sparse
copy of their columns so that multilinear expansion only touches nonzero
coordinates.
"""

from itertools import combinations, combinations_with_replacement, product
from math import comb

from .ratlin import ONE, ZERO, RationalMatrix, frac


# -- dense vector helpers -------------------------------------------------

def vzero(n):
    return (ZERO,) * n


def unit(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(*vs):
    return tuple(sum(c, ZERO) for c in zip(*vs))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def vneg(v):
    return tuple(-a for a in v)


def is_zero(v):
    return not any(v)


def to_sparse(v):
    if isinstance(v, dict):
        return v
    return {i: a for i, a in enumerate(v) if a}


def to_dense(d, n):
    v = [ZERO] * n
    for i, a in d.items():
        v[i] += a
    return tuple(v)


def sp_add(acc, d, c=ONE):
    for i, a in d.items():
        x = acc.get(i, ZERO) + c * a
        if x:
            acc[i] = x
        else:
            acc.pop(i, None)
    return acc


# -- permutations and signs -----------------------------------------------

def perm_sign(perm):
    n = len(perm)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def unshuffles(i, n):
    """All (i, n-i)-unshuffles of range(n) as (perm, sign) pairs.

    perm lists the positions taken first, then the remaining ones, each
    block increasing.
    """
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    out = []
    for head in combinations(range(n), i):
        rest = tuple(k for k in range(n) if k not in head)
        perm = head + rest
        out.append((perm, perm_sign(perm)))
    return out


def koszul_sign(perm, degrees):
    """Koszul sign of moving x_perm[0], ..., x_perm[n-1] into place.

    degrees[k] is the degree of x_k.  Accumulated by bubble sort, one
    factor (-1)^(d_a d_b) per adjacent transposition.
    """
    if len(perm) != len(degrees):
        raise ValueError("degrees length must match permutation length")
    seq = list(perm)
    sign = 1
    n = len(seq)
    for top in range(n - 1, 0, -1):
        for k in range(top):
            if seq[k] > seq[k + 1]:
                if degrees[seq[k]] % 2 and degrees[seq[k + 1]] % 2:
                    sign = -sign
                seq[k], seq[k + 1] = seq[k + 1], seq[k]
    return sign


def sort_antisymmetric(idx):
    """Sort indices with the sign of the sorting permutation; (0, None) on repeats."""
    idx = list(idx)
    sign = 1
    n = len(idx)
    for top in range(n - 1, 0, -1):
        for k in range(top):
            if idx[k] > idx[k + 1]:
                idx[k], idx[k + 1] = idx[k + 1], idx[k]
                sign = -sign
    if any(idx[k] == idx[k + 1] for k in range(n - 1)):
        return 0, None
    return sign, tuple(idx)


# -- spaces and maps ------------------------------------------------------

def _matrix(m, rows, cols):
    if isinstance(m, RationalMatrix):
        out = m
    elif m is None:
        out = RationalMatrix.zeros(rows, cols)
    else:
        out = RationalMatrix.from_rows(m, cols) if rows else RationalMatrix(0, cols)
    if out.shape != (rows, cols):
        raise ValueError("matrix shape %s, expected %s" % (out.shape, (rows, cols)))
    return out


class TwoTermSpace:
    """V1 --diff--> V0."""

    def __init__(self, dim0, dim1, diff=None):
        self.dim0 = dim0
        self.dim1 = dim1
        self.diff = _matrix(diff, dim0, dim1)

    def __eq__(self, other):
        return isinstance(other, TwoTermSpace) and (self.dim0, self.dim1, self.diff) == (other.dim0, other.dim1, other.diff)

    def __repr__(self):
        return "TwoTermSpace(%d, %d)" % (self.dim0, self.dim1)

    @property
    def dims(self):
        return (self.dim0, self.dim1)

    def d(self, v):
        return self.diff.apply(v)


class ThreeTermSpace:
    """V2 --diff21--> V1 --diff10--> V0 with diff10 diff21 = 0."""

    def __init__(self, dim0, dim1, dim2, diff10=None, diff21=None):
        self.dim0, self.dim1, self.dim2 = dim0, dim1, dim2
        self.diff10 = _matrix(diff10, dim0, dim1)
        self.diff21 = _matrix(diff21, dim1, dim2)
        if not (self.diff10 @ self.diff21).is_zero():
            raise ValueError("diff10 * diff21 is not zero")

    @property
    def dims(self):
        return (self.dim0, self.dim1, self.dim2)

    def __eq__(self, other):
        return isinstance(other, ThreeTermSpace) and (self.dims, self.diff10, self.diff21) == (other.dims, other.diff10, other.diff21)


class GradedMap:
    """Degree-preserving pair (m0, m1)."""

    def __init__(self, m0, m1):
        self.m0 = m0
        self.m1 = m1

    def __eq__(self, other):
        return isinstance(other, GradedMap) and self.m0 == other.m0 and self.m1 == other.m1

    def __repr__(self):
        return "GradedMap(%r, %r)" % (self.m0.shape, self.m1.shape)

    @classmethod
    def identity(cls, space):
        return cls(RationalMatrix.identity(space.dim0), RationalMatrix.identity(space.dim1))

    @classmethod
    def zero(cls, source, target):
        return cls(RationalMatrix.zeros(target.dim0, source.dim0), RationalMatrix.zeros(target.dim1, source.dim1))

    def is_chain_map(self, source, target):
        return self.m0 @ source.diff == target.diff @ self.m1

    def compose(self, other):
        """self after other."""
        return GradedMap(self.m0 @ other.m0, self.m1 @ other.m1)


# -- basis enumeration ----------------------------------------------------

def multiset_count(n, q):
    if q == 0:
        return 1
    return comb(n + q - 1, q) if n else 0


class BasisIndexer:
    """Lexicographic bijection between (x-tuple, a-multiset) pairs and columns."""

    def __init__(self, n0, n1, p, q):
        self.n0, self.n1, self.p, self.q = n0, n1, p, q
        self.tuples = [(xt, at) for xt, at in product(combinations(range(n0), p),
                                                      combinations_with_replacement(range(n1), q))]
        self._index = {t: k for k, t in enumerate(self.tuples)}

    def __len__(self):
        return len(self.tuples)

    def index(self, xt, at):
        return self._index[(tuple(xt), tuple(at))]

    def tuple_at(self, k):
        return self.tuples[k]

    def locate(self, xs, as_):
        """Column and sign for arbitrary-order basis indices, or (None, 0)."""
        sign, xt = sort_antisymmetric(xs)
        if not sign:
            return None, 0
        return self._index[(xt, tuple(sorted(as_)))], sign


_INDEXERS = {}


def indexer(n0, n1, p, q):
    key = (n0, n1, p, q)
    ix = _INDEXERS.get(key)
    if ix is None:
        ix = _INDEXERS[key] = BasisIndexer(n0, n1, p, q)
    return ix


class MultiTensor:
    """Multilinear map wedge^p(g0) (x) sym^q(g1) -> target, antisymmetric in
    the g0 slots and symmetric in the g1 slots."""

    def __init__(self, p, q, n0, n1, target_dim, coeffs=None, target="V0"):
        self.p, self.q, self.n0, self.n1 = p, q, n0, n1
        self.target_dim = target_dim
        self.target = target
        self.basis = indexer(n0, n1, p, q)
        self.coeffs = _matrix(coeffs, target_dim, len(self.basis))
        self._cols = [to_sparse(self.coeffs.column(j)) for j in range(self.coeffs.cols)]

    @classmethod
    def zero(cls, p, q, n0, n1, target_dim, target="V0"):
        return cls(p, q, n0, n1, target_dim, None, target)

    @classmethod
    def from_function(cls, p, q, n0, n1, target_dim, fn, target="V0"):
        """Build from fn(x_tuple, a_tuple) evaluated on canonical basis tuples."""
        ix = indexer(n0, n1, p, q)
        cols = []
        for xt, at in ix.tuples:
            v = fn(xt, at)
            cols.append(to_dense(v, target_dim) if isinstance(v, dict) else tuple(frac(a) for a in v))
        return cls(p, q, n0, n1, target_dim, RationalMatrix.from_columns(cols, target_dim), target)

    @classmethod
    def from_entries(cls, p, q, n0, n1, target_dim, entries, target="V0"):
        """entries: iterable of (index tuple, value); the index tuple lists the
        p g0-indices, the q g1-indices and finally the output index.  Input
        order is free; antisymmetric signs are applied."""
        ix = indexer(n0, n1, p, q)
        data = [[ZERO] * len(ix) for _ in range(target_dim)]
        for idx, val in entries:
            idx = tuple(idx)
            if len(idx) != p + q + 1:
                raise ValueError("index tuple %r has wrong length for arity (%d,%d)" % (idx, p, q))
            xs, as_, out = idx[:p], idx[p:p + q], idx[-1]
            if any(not 0 <= i < n0 for i in xs) or any(not 0 <= i < n1 for i in as_) or not 0 <= out < target_dim:
                raise ValueError("index tuple %r out of range" % (idx,))
            col, sign = ix.locate(xs, as_)
            if col is None:
                raise ValueError("index tuple %r repeats an antisymmetric slot" % (idx,))
            data[out][col] += sign * frac(val)
        return cls(p, q, n0, n1, target_dim, RationalMatrix.from_rows(data, len(ix)) if target_dim else None, target)

    def entries(self):
        out = []
        for j, (xt, at) in enumerate(self.basis.tuples):
            for i, v in sorted(self._cols[j].items()):
                out.append((xt + at + (i,), v))
        return out

    @property
    def shape(self):
        return (self.p, self.q, self.n0, self.n1, self.target_dim)

    def __eq__(self, other):
        return isinstance(other, MultiTensor) and self.shape == other.shape and self.coeffs == other.coeffs

    def __repr__(self):
        return "MultiTensor(p=%d, q=%d, dims=(%d,%d)->%d)" % (self.p, self.q, self.n0, self.n1, self.target_dim)

    def is_zero(self):
        return self.coeffs.is_zero()

    def _like(self, coeffs):
        return MultiTensor(self.p, self.q, self.n0, self.n1, self.target_dim, coeffs, self.target)

    def __add__(self, other):
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self):
        return self._like(-self.coeffs)

    def scale(self, c):
        return self._like(self.coeffs.scale(c))

    def then(self, m, target=None):
        """Post-compose the output with the matrix m."""
        return MultiTensor(self.p, self.q, self.n0, self.n1, m.rows, m @ self.coeffs, target or self.target)

    def column(self, xt, at):
        return self.coeffs.column(self.basis.index(xt, at))

    def at(self, xs, as_):
        """Sparse value on basis indices given in any order."""
        col, sign = self.basis.locate(xs, as_)
        if col is None:
            return {}
        c = self._cols[col]
        if sign == 1:
            return dict(c)
        return {i: -a for i, a in c.items()}

    def eval_sparse(self, xs, as_):
        """Multilinear evaluation on sparse vector arguments; sparse result."""
        if len(xs) != self.p or len(as_) != self.q:
            raise ValueError("arity mismatch: expected (%d,%d), got (%d,%d)" % (self.p, self.q, len(xs), len(as_)))
        args = [list(x.items()) for x in xs] + [list(a.items()) for a in as_]
        acc = {}
        p = self.p
        for choice in product(*args):
            coef = ONE
            for _, c in choice:
                coef *= c
            idx = [i for i, _ in choice]
            col, sign = self.basis.locate(idx[:p], idx[p:])
            if col is None:
                continue
            sp_add(acc, self._cols[col], coef * sign)
        return acc

    def evaluate(self, xs, as_=()):
        """Value on dense vectors: xs in g0 (p of them), as_ in g1 (q of them)."""
        xs, as_ = list(xs), list(as_)
        if len(xs) != self.p or len(as_) != self.q:
            raise ValueError("arity mismatch: expected (%d,%d), got (%d,%d)" % (self.p, self.q, len(xs), len(as_)))
        return to_dense(self.eval_sparse([to_sparse(x) for x in xs], [to_sparse(a) for a in as_]), self.target_dim)
