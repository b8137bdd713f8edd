"""Exact rational linear algebra over Fraction entries.

Every routine here is exact.  Row reduction is done on integer rows
(denominators cleared per row, gcd-normalised after each step) so that
intermediate values stay small; results are returned as Fractions.
"""

from fractions import Fraction
from math import gcd, lcm

ZERO = Fraction(0)
ONE = Fraction(1)


class NoSolution(ValueError):
    """Raised by solve when the system is inconsistent."""


class DependentInput(ValueError):
    """Raised by quotient_basis when the spanning set is not independent."""


def frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace("−", "-"))
    return Fraction(x)


class RationalMatrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [ZERO] * (rows * cols)
        entries = tuple(frac(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count %d does not match %dx%d" % (len(entries), rows, cols))
        self._data = entries

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(c) for c in columns]
        data = [columns[j][i] for i in range(rows) for j in range(len(columns))]
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entries(self):
        return self._data

    def row(self, i):
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return RationalMatrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def is_zero(self):
        return all(e == 0 for e in self._data)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return "RationalMatrix(%d, %d, %r)" % (self.rows, self.cols, [str(e) for e in self._data])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))
        return RationalMatrix(self.rows, self.cols, [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))
        return RationalMatrix(self.rows, self.cols, [a - b for a, b in zip(self._data, other._data)])

    def __neg__(self):
        return RationalMatrix(self.rows, self.cols, [-a for a in self._data])

    def scale(self, c):
        c = frac(c)
        return RationalMatrix(self.rows, self.cols, [c * a for a in self._data])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            n, m = other.rows, other.cols
            out = [ZERO] * (self.rows * m)
            brows = [[(j, v) for j, v in enumerate(other.row(k)) if v] for k in range(n)]
            for i in range(self.rows):
                acc = [ZERO] * m
                for k, a in enumerate(self.row(i)):
                    if a:
                        for j, v in brows[k]:
                            acc[j] += a * v
                out[i * m:(i + 1) * m] = acc
            return RationalMatrix(self.rows, m, out)
        return self.apply(other)

    def apply(self, vec):
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        nz = [(j, v) for j, v in enumerate(vec) if v]
        c = self.cols
        return tuple(sum((self._data[i * c + j] * v for j, v in nz), ZERO) for i in range(self.rows))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return RationalMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)], self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return RationalMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    def submatrix(self, rows, cols):
        return RationalMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))


def _int_row(row):
    den = 1
    for e in row:
        den = lcm(den, e.denominator)
    return [int(e * den) for e in row]


def _normalise(row):
    g = 0
    for e in row:
        if e:
            g = gcd(g, e)
    if g > 1:
        return [e // g for e in row]
    return row


def rank(m):
    """Row rank by fraction-free (Bareiss) elimination."""
    a = [_int_row(m.row(i)) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            a[i] = [(p * ai[k] - f * a[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(m):
    """Reduced row echelon form; returns (rows as Fraction lists, pivot columns)."""
    a = [_normalise(_int_row(m.row(i))) for i in range(m.rows)]
    ncols = m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = _normalise([p * x - f * y for x, y in zip(a[i], pr)])
        pivots.append(c)
        r += 1
    out = []
    for i, c in enumerate(pivots):
        p = a[i][c]
        out.append([Fraction(x, p) for x in a[i]])
    return out, pivots


def kernel_basis(m):
    """Basis of {v : M v = 0}, one vector per free column, in normal form."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def image_basis(m):
    """Reduced echelon basis of the column space."""
    red, _ = rref(m.transpose())
    return [tuple(r) for r in red]


def span_basis(vectors, dim):
    if not vectors:
        return []
    red, _ = rref(RationalMatrix.from_rows(vectors, dim))
    return [tuple(r) for r in red]


def in_span(vectors, v, dim):
    if not any(v):
        return True
    if not vectors:
        return False
    return rank(RationalMatrix.from_rows(list(vectors) + [v], dim)) == rank(RationalMatrix.from_rows(vectors, dim))


def solve(m, b):
    """A particular solution of M v = b (free variables set to zero)."""
    b = tuple(frac(x) for x in b)
    if len(b) != m.rows:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), m.rows))
    aug = m.hstack(RationalMatrix.from_columns([b], m.rows))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        raise NoSolution("inconsistent system")
    v = [ZERO] * m.cols
    for row, c in zip(red, pivots):
        v[c] = row[m.cols]
    return tuple(v)


def inverse(m):
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    red, pivots = rref(m.hstack(RationalMatrix.identity(n)))
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return RationalMatrix.from_rows([r[n:] for r in red[:n]], n)


def quotient_basis(sub, ambient_dim):
    """Complement of span(sub) by unit vectors, plus the projection onto it.

    Returns (complement, P) where P has one row per complement vector,
    kills sub and sends complement[i] to the i-th unit vector.
    """
    sub = [tuple(frac(x) for x in v) for v in sub]
    for v in sub:
        if len(v) != ambient_dim:
            raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
    if sub and rank(RationalMatrix.from_rows(sub, ambient_dim)) < len(sub):
        raise DependentInput("spanning set is linearly dependent")
    pivots = set(rref(RationalMatrix.from_rows(sub, ambient_dim))[1]) if sub else set()
    comp = []
    for j in range(ambient_dim):
        if j not in pivots:
            e = [ZERO] * ambient_dim
            e[j] = ONE
            comp.append(tuple(e))
    full = RationalMatrix.from_columns(sub + comp, ambient_dim)
    inv = inverse(full) if ambient_dim else RationalMatrix(0, 0)
    proj = RationalMatrix.from_rows([inv.row(len(sub) + i) for i in range(len(comp))], ambient_dim)
    return comp, proj


def section_on_image(m):
    """Linear q with M q M = M; q vanishes on a unit-vector complement of the image."""
    _, pivots = rref(m)
    cols = [m.column(j) for j in pivots]
    comp, _ = quotient_basis(cols, m.rows)
    full = RationalMatrix.from_columns(cols + comp, m.rows)
    inv = inverse(full) if m.rows else RationalMatrix(0, 0)
    rows = []
    for j in range(m.cols):
        if j in pivots:
            rows.append(inv.row(pivots.index(j)))
        else:
            rows.append((ZERO,) * m.rows)
    return RationalMatrix.from_rows(rows, m.rows)
