"""JSON workspace files: named algebras, modules, homomorphisms, crossed modules,
cochains, Lie 3-algebras, exact sequences and extension data.

Rationals are strings "p/q", indices are 0-based and every matrix or tensor
is a sparse list of [index-list, value] pairs.  Writing is deterministic, so
load followed by dump reproduces the file byte for byte.
"""

import json
import re
from fractions import Fraction

from .crossmod import CMMorphism, CrossedModule, DerivAction
from .graded import GradedMap, MultiTensor, ThreeTermSpace, TwoTermSpace, to_sparse
from .lie2core import Lie2Algebra, Lie2Hom, Lie3Algebra
from .ratlin import RationalMatrix
from .repcoh import Cochain, Lie2Module, cochain_blocks

SECTIONS = ("spaces", "algebras", "modules", "homomorphisms", "crossed_modules", "cochains", "lie3_algebras", "sequences",
            "extensions", "morphisms", "results")

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class MalformedInput(ValueError):
    """Input that does not parse, does not resolve or has the wrong shape."""

    def __init__(self, path, msg):
        self.path = path
        super().__init__("%s: %s" % (path, msg))


# -- scalars, matrices, tensors ---------------------------------------------------

def rat(v, path):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise MalformedInput(path, "rational must be a string 'p/q' or an integer, got %r" % (v,))
    s = str(v).strip()
    if not _RATIONAL.match(s):
        raise MalformedInput(path, "bad rational %r" % (v,))
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise MalformedInput(path, "zero denominator in %r" % (v,))


def fmt(x):
    return str(Fraction(x))


def _entry_list(obj, path):
    if not isinstance(obj, list):
        raise MalformedInput(path, "expected a list of [indices, value] entries")
    out = []
    for k, e in enumerate(obj):
        p = "%s[%d]" % (path, k)
        if not (isinstance(e, list) and len(e) == 2 and isinstance(e[0], list)
                and all(isinstance(i, int) and not isinstance(i, bool) for i in e[0])):
            raise MalformedInput(p, "expected [index-list, value]")
        out.append((tuple(e[0]), rat(e[1], p)))
    return out


def matrix_from(obj, rows, cols, path):
    data = [[Fraction(0)] * cols for _ in range(rows)]
    for (idx, val) in _entry_list(obj if obj is not None else [], path):
        if len(idx) != 2 or not (0 <= idx[0] < rows and 0 <= idx[1] < cols):
            raise MalformedInput(path, "index %r outside a %dx%d matrix" % (idx, rows, cols))
        data[idx[0]][idx[1]] += val
    return RationalMatrix(rows, cols, [e for r in data for e in r])


def matrix_to(m):
    return [[[i, j], fmt(m[i, j])] for i in range(m.rows) for j in range(m.cols) if m[i, j]]


def tensor_from(obj, p, q, n0, n1, target_dim, target, path):
    entries = _entry_list(obj if obj is not None else [], path)
    try:
        return MultiTensor.from_entries(p, q, n0, n1, target_dim, entries, target)
    except ValueError as e:
        raise MalformedInput(path, str(e))


def tensor_to(t):
    return [[list(idx), fmt(v)] for idx, v in t.entries()]


def _dims(obj, n, path):
    d = obj.get("dims") if isinstance(obj, dict) else None
    if not (isinstance(d, list) and len(d) == n and all(isinstance(x, int) and x >= 0 for x in d)):
        raise MalformedInput(path + ".dims", "expected %d non-negative integers" % n)
    return d


def _require(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput("%s.%s" % (path, key), "missing field")
    return obj[key]


# -- per-kind codecs ---------------------------------------------------------------

def space_from(obj, path):
    n0, n1 = _dims(obj, 2, path)
    return TwoTermSpace(n0, n1, matrix_from(obj.get("d"), n0, n1, path + ".d"))


def space_to(V):
    return {"dims": [V.dim0, V.dim1], "d": matrix_to(V.diff)}


def algebra_from(obj, path):
    space = space_from(obj, path)
    n0, n1 = space.dims
    for key in ("l2_00", "l2_01", "l3"):
        _require(obj, key, path)
    return Lie2Algebra(space,
                       tensor_from(obj["l2_00"], 2, 0, n0, n1, n0, "g0", path + ".l2_00"),
                       tensor_from(obj["l2_01"], 1, 1, n0, n1, n1, "g1", path + ".l2_01"),
                       tensor_from(obj["l3"], 3, 0, n0, n1, n1, "g1", path + ".l3"))


def algebra_to(g):
    out = space_to(g.space)
    out.update({"l2_00": tensor_to(g.l2_00), "l2_01": tensor_to(g.l2_01), "l3": tensor_to(g.l3)})
    return out


class Workspace:
    """Raw JSON sections plus lazily decoded objects."""

    def __init__(self, data=None):
        data = data if data is not None else {}
        if not isinstance(data, dict):
            raise MalformedInput("$", "workspace must be a JSON object")
        for k in data:
            if k not in SECTIONS and k != "format":
                raise MalformedInput("$." + k, "unknown section")
        self.data = {s: dict(data.get(s, {})) for s in SECTIONS}
        for s in SECTIONS:
            if not isinstance(data.get(s, {}), dict):
                raise MalformedInput("$." + s, "section must be an object")
        self._cache = {}

    # loading / dumping
    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise MalformedInput(str(path), "cannot read workspace: %s" % e)
        return cls(data)

    def to_json(self):
        out = {"format": "lie2kit-workspace/1"}
        for s in SECTIONS:
            if self.data[s]:
                out[s] = self.data[s]
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    def dump(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())

    def kind_of(self, name):
        kinds = [s for s in SECTIONS if name in self.data[s]]
        if not kinds:
            raise MalformedInput(name, "unresolved reference")
        return kinds[0]

    def names(self):
        return [(s, n) for s in SECTIONS for n in sorted(self.data[s])]

    def _raw(self, section, name):
        if not isinstance(name, str) or name not in self.data[section]:
            raise MalformedInput("%s.%s" % (section, name), "unresolved reference")
        return self.data[section][name]

    def _get(self, section, name, decode):
        key = (section, name)
        if key not in self._cache:
            self._cache[key] = decode(self._raw(section, name), "%s.%s" % (section, name))
        return self._cache[key]

    # decoders
    def space(self, name):
        return self._get("spaces", name, space_from)

    def _space_of(self, obj, path):
        """A module space given inline (dims, d) or by name ("space")."""
        if isinstance(obj, dict) and "space" in obj:
            return self.space(obj["space"])
        return space_from(obj, path)

    def algebra(self, name):
        return self._get("algebras", name, algebra_from)

    def module(self, name):
        def dec(obj, path):
            g = self.algebra(_require(obj, "algebra", path))
            V = self._space_of(obj, path)
            n0, n1 = g.dims
            v0, v1 = V.dims
            return Lie2Module(g, V,
                              tensor_from(obj.get("act00"), 1, 1, n0, v0, v0, "V0", path + ".act00"),
                              tensor_from(obj.get("act01"), 1, 1, n0, v1, v1, "V1", path + ".act01"),
                              tensor_from(obj.get("act10"), 1, 1, n1, v0, v1, "V1", path + ".act10"),
                              tensor_from(obj.get("act2"), 2, 1, n0, v0, v1, "V1", path + ".act2"))
        return self._get("modules", name, dec)

    def hom(self, name):
        def dec(obj, path):
            g = self.algebra(_require(obj, "source", path))
            h = self.algebra(_require(obj, "target", path))
            n0, n1 = g.dims
            t0, t1 = h.dims
            return Lie2Hom(g, h, GradedMap(matrix_from(obj.get("phi0"), t0, n0, path + ".phi0"),
                                           matrix_from(obj.get("phi1"), t1, n1, path + ".phi1")),
                           tensor_from(obj.get("phi2"), 2, 0, n0, n1, t1, "g1", path + ".phi2"))
        return self._get("homomorphisms", name, dec)

    def crossed_module(self, name):
        def dec(obj, path):
            m = self.algebra(_require(obj, "m", path))
            g = self.algebra(_require(obj, "g", path))
            M = self.module(_require(obj, "module", path))
            if M.algebra != g or M.space != m.space:
                raise MalformedInput(path + ".module", "module must be a g-module on the space of m")
            n0, n1 = g.dims
            k0, k1 = m.dims
            lphi = [[] for _ in range(n0)]
            for idx, val in _entry_list(obj.get("lphi", []), path + ".lphi"):
                if len(idx) != 4 or not 0 <= idx[0] < n0:
                    raise MalformedInput(path + ".lphi", "entries are [[x, beta, gamma, out], value]")
                lphi[idx[0]].append((idx[1:], val))
            try:
                lt = [MultiTensor.from_entries(2, 0, k0, k1, k1, e, "V1") for e in lphi]
            except ValueError as e:
                raise MalformedInput(path + ".lphi", str(e))
            kernel = cokernel = None
            if "kernel" in obj:
                kp = path + ".kernel"
                V = self._space_of(_require(obj["kernel"], "V", kp), kp + ".V")
                kernel = (GradedMap(matrix_from(obj["kernel"].get("incl0"), k0, V.dim0, kp + ".incl0"),
                                    matrix_from(obj["kernel"].get("incl1"), k1, V.dim1, kp + ".incl1")), V)
            if "cokernel" in obj:
                cokernel = self.hom(obj["cokernel"])
            try:
                return CrossedModule(m, g, DerivAction(M, lt),
                                     GradedMap(matrix_from(obj.get("phi0"), n0, k0, path + ".phi0"),
                                               matrix_from(obj.get("phi1"), n1, k1, path + ".phi1")),
                                     tensor_from(obj.get("phi2"), 2, 0, k0, k1, n1, "g1", path + ".phi2"),
                                     tensor_from(obj.get("sigma"), 1, 1, n0, k0, n1, "g1", path + ".sigma"),
                                     kernel, cokernel)
            except ValueError as e:
                raise MalformedInput(path, str(e))
        return self._get("crossed_modules", name, dec)

    def cochain(self, name):
        def dec(obj, path):
            M = self.module(_require(obj, "module", path))
            n = _require(obj, "degree", path)
            if not isinstance(n, int) or n < -1:
                raise MalformedInput(path + ".degree", "expected an integer >= -1")
            n0, n1 = M.algebra.dims
            comps = {}
            blocks = obj.get("blocks", {})
            valid = {"%d,%d,%d" % b: b for b in cochain_blocks(n)}
            for key in blocks:
                if key not in valid:
                    raise MalformedInput("%s.blocks.%s" % (path, key), "not a block of degree %d" % n)
                p, q, s = valid[key]
                comps[valid[key]] = tensor_from(blocks[key], p, q, n0, n1, M.dims[s], "V%d" % s,
                                                "%s.blocks.%s" % (path, key))
            return Cochain(M, n, comps)
        return self._get("cochains", name, dec)

    def lie3(self, name):
        def dec(obj, path):
            n0, n1, n2 = _dims(obj, 3, path)
            try:
                space = ThreeTermSpace(n0, n1, n2, matrix_from(obj.get("d10"), n0, n1, path + ".d10"),
                                       matrix_from(obj.get("d21"), n1, n2, path + ".d21"))
            except ValueError as e:
                raise MalformedInput(path, str(e))
            N = n0 + n1 + n2
            tables = {}
            for key, arity in (("l2", 2), ("l3", 3)):
                t = {}
                for idx, val in _entry_list(obj.get(key, []), "%s.%s" % (path, key)):
                    if len(idx) != arity + 1 or any(not 0 <= i < N for i in idx):
                        raise MalformedInput("%s.%s" % (path, key), "bad index %r" % (idx,))
                    args, out = tuple(idx[:-1]), idx[-1]
                    if list(args) != sorted(args):
                        raise MalformedInput("%s.%s" % (path, key), "argument indices must be sorted: %r" % (idx,))
                    t.setdefault(args, {})[out] = t.setdefault(args, {}).get(out, 0) + val
                tables[key] = t
            return Lie3Algebra(space, tables["l2"], tables["l3"])
        return self._get("lie3_algebras", name, dec)

    def sequence(self, name):
        def dec(obj, path):
            V = self.module(_require(obj, "V", path))
            I = self.module(_require(obj, "I", path))
            Q = self.module(_require(obj, "Q", path))
            if not (V.algebra == I.algebra == Q.algebra):
                raise MalformedInput(path, "V, I and Q must be modules over the same algebra")
            p = GradedMap(matrix_from(obj.get("p0"), I.dims[0], V.dims[0], path + ".p0"),
                          matrix_from(obj.get("p1"), I.dims[1], V.dims[1], path + ".p1"))
            q = GradedMap(matrix_from(obj.get("q0"), Q.dims[0], I.dims[0], path + ".q0"),
                          matrix_from(obj.get("q1"), Q.dims[1], I.dims[1], path + ".q1"))
            return V, I, Q, p, q
        return self._get("sequences", name, dec)

    def extension(self, name):
        def dec(obj, path):
            g = self.algebra(_require(obj, "g", path))
            ideal = _require(obj, "ideal", path)
            if not (isinstance(ideal, list) and len(ideal) == 2):
                raise MalformedInput(path + ".ideal", "expected [degree-0 vectors, degree-1 vectors]")
            vecs = []
            for deg, (vs, n) in enumerate(zip(ideal, g.dims)):
                if not isinstance(vs, list):
                    raise MalformedInput("%s.ideal[%d]" % (path, deg), "expected a list of vectors")
                out = []
                for k, v in enumerate(vs):
                    p = "%s.ideal[%d][%d]" % (path, deg, k)
                    if not isinstance(v, list) or len(v) != n:
                        raise MalformedInput(p, "expected a vector of length %d" % n)
                    out.append(tuple(rat(x, p) for x in v))
                vecs.append(out)
            V = self.module(_require(obj, "V", path))
            lam = self.cochain(_require(obj, "lambda", path))
            return g, (vecs[0], vecs[1]), V, lam
        return self._get("extensions", name, dec)

    # encoders
    def put(self, section, name, obj):
        self.data[section][name] = obj
        self._cache.pop((section, name), None)

    def put_algebra(self, name, g):
        self.put("algebras", name, algebra_to(g))
        return name

    def ensure_algebra(self, g, name):
        for n in sorted(self.data["algebras"]):
            if self.algebra(n) == g:
                return n
        return self.put_algebra(name, g)

    def put_module(self, name, M, algebra_name=None):
        an = algebra_name or self.ensure_algebra(M.algebra, name + ".algebra")
        obj = {"algebra": an}
        obj.update(space_to(M.space))
        obj.update({"act00": tensor_to(M.act00), "act01": tensor_to(M.act01), "act10": tensor_to(M.act10),
                    "act2": tensor_to(M.act2)})
        self.put("modules", name, obj)
        return name

    def put_hom(self, name, f):
        s = self.ensure_algebra(f.source, name + ".source")
        t = self.ensure_algebra(f.target, name + ".target")
        self.put("homomorphisms", name, {"source": s, "target": t, "phi0": matrix_to(f.phi0),
                                         "phi1": matrix_to(f.phi1), "phi2": tensor_to(f.phi2)})
        return name

    def put_crossed_module(self, name, cm):
        mn = self.ensure_algebra(cm.m, name + ".m")
        gn = self.ensure_algebra(cm.g, name + ".g")
        modn = self.put_module(name + ".module", cm.module, gn)
        lphi = [[[x] + e[0], e[1]] for x, t in enumerate(cm.action.lphi) for e in tensor_to(t)]
        obj = {"m": mn, "g": gn, "module": modn, "lphi": lphi, "phi0": matrix_to(cm.phi.m0),
               "phi1": matrix_to(cm.phi.m1), "phi2": tensor_to(cm.phi2), "sigma": tensor_to(cm.sigma)}
        if cm.kernel is not None:
            incl, V = cm.kernel
            obj["kernel"] = {"V": space_to(V), "incl0": matrix_to(incl.m0), "incl1": matrix_to(incl.m1)}
        if cm.cokernel is not None:
            obj["cokernel"] = self.put_hom(name + ".cokernel", cm.cokernel)
        self.put("crossed_modules", name, obj)
        return name

    def put_cochain(self, name, c, module_name=None):
        mn = module_name or self.put_module(name + ".module", c.module)
        blocks = {"%d,%d,%d" % b: tensor_to(t) for b, t in c.components.items() if not t.is_zero()}
        self.put("cochains", name, {"module": mn, "degree": c.degree, "blocks": blocks})
        return name

    def put_lie3(self, name, t):
        def flat(table):
            return [[list(k) + [o], fmt(v)] for k in sorted(table) for o, v in sorted(table[k].items()) if v]
        n0, n1, n2 = t.space.dims
        self.put("lie3_algebras", name, {"dims": [n0, n1, n2], "d10": matrix_to(t.space.diff10),
                                         "d21": matrix_to(t.space.diff21), "l2": flat(t.l2), "l3": flat(t.l3)})
        return name

    def put_morphism(self, name, f, source_name, target_name):
        self.put("morphisms", name, {
            "source": source_name, "target": target_name,
            "F0": matrix_to(f.F.phi0), "F1": matrix_to(f.F.phi1), "F2": tensor_to(f.F.phi2),
            "G0": matrix_to(f.G.phi0), "G1": matrix_to(f.G.phi1), "G2": tensor_to(f.G.phi2),
            "tau": tensor_to(f.tau)})
        return name

    def morphism(self, name):
        def dec(obj, path):
            A = self.crossed_module(_require(obj, "source", path))
            B = self.crossed_module(_require(obj, "target", path))
            a0, a1 = A.m.dims
            b0, b1 = B.m.dims
            n0, n1 = A.g.dims
            t0, t1 = B.g.dims
            F = Lie2Hom(A.m, B.m, GradedMap(matrix_from(obj.get("F0"), b0, a0, path + ".F0"),
                                            matrix_from(obj.get("F1"), b1, a1, path + ".F1")),
                        tensor_from(obj.get("F2"), 2, 0, a0, a1, b1, "g1", path + ".F2"))
            G = Lie2Hom(A.g, B.g, GradedMap(matrix_from(obj.get("G0"), t0, n0, path + ".G0"),
                                            matrix_from(obj.get("G1"), t1, n1, path + ".G1")),
                        tensor_from(obj.get("G2"), 2, 0, n0, n1, t1, "g1", path + ".G2"))
            return CMMorphism(A, B, F, G, tensor_from(obj.get("tau"), 1, 1, n0, a0, b1, "V1", path + ".tau"))
        return self._get("morphisms", name, dec)

    def put_result(self, name, obj):
        self.put("results", name, obj)
        return name


def vector_to(v):
    return [fmt(x) for x in v]


def sparse_vector_to(v):
    return [[[i], fmt(x)] for i, x in sorted(to_sparse(v).items())]
