"""lie2kit command line: checks and constructions on JSON workspace files.

Exit codes: 0 all checks pass, 1 a mathematical check failed or a
construction refused (a witness is printed), 2 the input is malformed.
"""

import argparse
import json
import sys

from . import classify, crossmod
from .graded import TwoTermSpace
from .lie2core import Lie2Hom, RefusalError, Verdict, check_hom, check_lie2, check_lie3_strict
from .repcoh import Cochain, Lie2Module, apply_D, check_action, class_coordinates, cohomology, degree_ceiling
from .workspace import MalformedInput, Workspace, fmt, matrix_to, vector_to

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


def _say(*parts):
    print(*parts)


def _verdict_lines(v):
    """First witness per label, in the order the labels first failed."""
    seen, out = set(), []
    for label, witness, _ in v.failures:
        if label not in seen:
            seen.add(label)
            out.append("  FAIL %s at %s" % (label, witness))
    return out


def _show(title, v):
    _say("%s: %s" % (title, "PASS" if v.ok else "FAIL"))
    for line in _verdict_lines(v):
        _say(line)
    return v.ok


# -- validation --------------------------------------------------------------------

def entity_checks(ws, section, name):
    """Ordered (title, verdict) pairs for one entity."""
    if section == "spaces":
        ws.space(name)
        return [("space %s" % name, Verdict())]
    if section == "algebras":
        return [("algebra %s: Lie 2-algebra identities" % name, check_lie2(ws.algebra(name)))]
    if section == "modules":
        M = ws.module(name)
        return [("module %s: action is a homomorphism into End(V)" % name, check_action(M))]
    if section == "homomorphisms":
        return [("homomorphism %s: homomorphism conditions" % name, check_hom(ws.hom(name)))]
    if section == "crossed_modules":
        cm = ws.crossed_module(name)
        v = crossmod.check_crossed_module(cm)
        out = [("crossed module %s: axioms, Pi homomorphism, g, m, action" % name, v)]
        if v.ok:
            out.append(("crossed module %s: mapping cone Lie 3-algebra" % name,
                        check_lie3_strict(crossmod.mapping_cone(cm))))
        return out
    if section == "cochains":
        c = ws.cochain(name)
        out = [("cochain %s: module" % name, check_action(c.module))]
        note = Verdict()
        note.notes.append("cocycle" if apply_D(c).is_zero() else "not a cocycle")
        out.append(("cochain %s: shapes (%s)" % (name, note.notes[0]), note))
        return out
    if section == "lie3_algebras":
        return [("Lie 3-algebra %s: strict Lie 3-algebra identities" % name, check_lie3_strict(ws.lie3(name)))]
    if section == "sequences":
        V, I, Q, p, q = ws.sequence(name)
        return [("sequence %s: short exact sequence of modules" % name, classify.check_short_exact(V, I, Q, p, q))]
    if section == "extensions":
        g, k, V, lam = ws.extension(name)
        return [("extension %s: lambda condition" % name, classify.check_lambda_condition(g, k, V, lam).verdict)]
    if section == "morphisms":
        return [("morphism %s: crossed-module morphism" % name, crossmod.check_cm_morphism(ws.morphism(name)))]
    return []


def _all_entities(ws, entity):
    if entity is None:
        return [(s, n) for s, n in ws.names() if s != "results"]
    return [(ws.kind_of(entity), entity)]


def cmd_validate(ws, args):
    ok = True
    targets = _all_entities(ws, args.entity)
    # decode everything first so malformed input is reported before any computation
    for section, name in targets:
        entity_checks_decode(ws, section, name)
    for section, name in targets:
        for title, v in entity_checks(ws, section, name):
            ok = _show(title, v) and ok
    return ok


def entity_checks_decode(ws, section, name):
    decoders = {"spaces": ws.space, "algebras": ws.algebra, "modules": ws.module, "homomorphisms": ws.hom,
                "crossed_modules": ws.crossed_module, "cochains": ws.cochain, "lie3_algebras": ws.lie3,
                "sequences": ws.sequence, "extensions": ws.extension, "morphisms": ws.morphism}
    if section in decoders:
        decoders[section](name)


# -- helpers ---------------------------------------------------------------------------

def _need(args):
    if args.entity is None:
        raise MalformedInput("--entity", "this subcommand needs --entity")
    return args.entity


def _kind(ws, name, allowed):
    kind = ws.kind_of(name)
    if kind not in allowed:
        raise MalformedInput(name, "is a %s entry; expected one of %s" % (kind, ", ".join(allowed)))
    return kind


def _module_for(ws, name):
    """A module entity, or the trivial one-dimensional module of an algebra."""
    kind = _kind(ws, name, ("modules", "algebras"))
    if kind == "modules":
        return ws.module(name)
    return Lie2Module(ws.algebra(name), TwoTermSpace(1, 0))


def _revalidate(ws, section, name):
    """Round-trip the workspace through JSON and re-run the checks on one entity."""
    again = Workspace(json.loads(ws.dumps()))
    if again.dumps() != ws.dumps():
        raise AssertionError("workspace round trip is not bit-identical")
    ok = True
    for title, v in entity_checks(again, section, name):
        ok = _show("written " + title, v) and ok
    return ok


def _finish(ws, args, written):
    ok = True
    for section, name in written:
        ok = _revalidate(ws, section, name) and ok
    if args.out:
        ws.dump(args.out)
        _say("wrote %s" % args.out)
    return ok


def _crossed_module_for(ws, name):
    """Crossed module named directly, or built from a sequence (splice) or an extension (epsilon_lambda)."""
    kind = _kind(ws, name, ("crossed_modules", "sequences", "extensions"))
    if kind == "crossed_modules":
        return ws.crossed_module(name), kind
    if kind == "sequences":
        V, I, Q, p, q = ws.sequence(name)
        return classify.splice(V, I, Q, p, q, _sequence_lambda(ws, name, Q)), kind
    g, k, V, lam = ws.extension(name)
    return classify.epsilon_lambda(g, k, V, lam), kind


def _sequence_lambda(ws, name, Q):
    ref = ws.data["sequences"][name].get("lambda")
    if ref is None:
        return Cochain(Q, 2)
    lam = ws.cochain(ref)
    if lam.module != Q or lam.degree != 2:
        raise MalformedInput("sequences.%s.lambda" % name, "must be a 2-cochain with values in Q")
    return lam


def _vec(v):
    return "(" + ", ".join(fmt(x) for x in v) + ")"


# -- subcommands ---------------------------------------------------------------------

def cmd_cohomology(ws, args):
    name = _need(args)
    M = _module_for(ws, name)
    top = args.degree if args.degree is not None else 3
    ceiling = degree_ceiling()
    if top > ceiling:
        raise RefusalError("degree %d exceeds the configured ceiling %d (LIE2KIT_DEGREE_CEILING)" % (top, ceiling))
    v = check_action(M)
    if not v.ok:
        _show("module %s" % name, v)
        return False
    rows = []
    _say("n  betti")
    for n in range(0, top + 1):
        betti, reps = cohomology(M, n)
        _say("%d  %d" % (n, betti))
        rows.append({"degree": n, "betti": betti, "representatives": [[fmt(x) for x in r.flatten()] for r in reps]})
    result = {"entity": name, "cohomology": rows}
    if args.json:
        print(json.dumps(result, sort_keys=True))
    ws.put_result(name + ".cohomology", result)
    return _finish(ws, args, [])


def cmd_crossed_product(ws, args):
    name = _need(args)
    cm, _ = _crossed_module_for(ws, name)
    L = cm.crossed_product()
    out = ws.put_algebra(name + ".product", L)
    _say("crossed product %s: dims %s" % (out, L.dims))
    return _finish(ws, args, [("algebras", out)])


def cmd_mapping_cone(ws, args):
    name = _need(args)
    cm, _ = _crossed_module_for(ws, name)
    v = crossmod.check_crossed_module(cm)
    if not _show("crossed module %s" % name, v):
        return False
    T = crossmod.mapping_cone(cm)
    out = ws.put_lie3(name + ".cone", T)
    _say("mapping cone %s: dims %s, l3 %s" % (out, T.space.dims, "vanishes" if not T.l3 else "non-zero"))
    return _finish(ws, args, [("lie3_algebras", out)])


def cmd_derivations(ws, args):
    name = _need(args)
    kind = _kind(ws, name, ("crossed_modules", "algebras"))
    if kind == "algebras":
        cm = crossmod.derivation_crossed_module(ws.algebra(name))
        out = ws.put_crossed_module(name + ".derivations", cm)
        _say("derivation crossed module %s: Der(g) dims %s" % (out, cm.g.dims))
        return _finish(ws, args, [("algebras", ws.ensure_algebra(cm.g, out + ".g")), ("crossed_modules", out)])
    cm = ws.crossed_module(name)
    D = crossmod.der_complex(cm).algebra
    out = ws.put_algebra(name + ".der", D)
    _say("Der(g, m) %s: dims %s" % (out, D.dims))
    return _finish(ws, args, [("algebras", out)])


def cmd_h1(ws, args):
    name = _need(args)
    kind = _kind(ws, name, ("crossed_modules", "algebras"))
    cm = ws.crossed_module(name) if kind == "crossed_modules" else crossmod.identity_crossed_module(ws.algebra(name))
    H = crossmod.h1_lie_algebra(cm)
    _say("H^1 %s: dimension %d" % (name, H.betti))
    for (i, j), c in sorted(H.structure.items()):
        if any(c):
            _say("  [h%d, h%d] = %s" % (i, j, _vec(c)))
    ws.put_result(name + ".h1", {"entity": name, "dimension": H.betti,
                                  "representatives": [vector_to(r) for r in H.representatives],
                                  "structure": [[[i, j], vector_to(c)] for (i, j), c in sorted(H.structure.items())
                                                if any(c)]})
    return _finish(ws, args, [])


def cmd_mu(ws, args):
    name = _need(args)
    cm, kind = _crossed_module_for(ws, name)
    v = crossmod.check_crossed_module(cm)
    if not _show("crossed module %s" % name, v):
        return False
    r1 = classify.mu(cm)
    r2 = classify.mu(cm, classify.alternative_sections(cm, r1.four_term))
    _say("mu %s: class %s" % (name, _vec(r1.class_id)))
    ok = _show("section independence (second section pair gives %s)" % _vec(r2.class_id),
               _agree(r1.class_id == r2.class_id, "class_id independent of sections", (r1.class_id, r2.class_id)))
    result = {"entity": name, "class_id": vector_to(r1.class_id), "h3_dimension": len(r1.class_id)}
    if kind == "sequences":
        V, I, Q, p, q = ws.sequence(name)
        lam = _sequence_lambda(ws, name, Q)
        d = classify.connecting_map(V, I, Q, p, q, 2).apply(class_coordinates(Q, 2, lam.flatten()))
        _say("connecting map of [lambda]: %s" % _vec(d))
        ok = _show("mu equals the connecting map of [lambda]",
                   _agree(tuple(d) == tuple(r1.class_id), "mu = partial[lambda]", (r1.class_id, d))) and ok
        result["connecting"] = vector_to(d)
    if kind == "extensions":
        g, k, V, lam = ws.extension(name)
        chk = classify.check_lambda_condition(g, k, V, lam)
        t = class_coordinates(V, 3, chk.theta.flatten())
        _say("theta class of the lambda condition: %s" % _vec(t))
        ok = _show("mu equals the theta class", _agree(tuple(t) == tuple(r1.class_id), "mu = [theta]",
                                                       (r1.class_id, t))) and ok
        result["theta_class"] = vector_to(t)
    cname = ws.put_crossed_module(name + ".eps", cm) if kind != "crossed_modules" else name
    ws.put_cochain(name + ".theta", r1.theta)
    result["crossed_module"] = cname
    result["theta"] = name + ".theta"
    ws.put_result(name + ".mu", result)
    if args.json:
        print(json.dumps(result, sort_keys=True))
    written = [("crossed_modules", cname)] if kind != "crossed_modules" else []
    return _finish(ws, args, written) and ok


def _agree(cond, label, witness):
    v = Verdict()
    if not cond:
        v.fail(label, witness)
    return v


def cmd_gauge(ws, args):
    name = _need(args)
    _kind(ws, name, ("extensions",))
    g, k, V, lam = ws.extension(name)
    raw = ws.data["extensions"][name]
    A = ws.cochain(raw["A"]) if "A" in raw else None
    R = ws.cochain(raw["R"]) if "R" in raw else None
    f = classify.gauge_transform(g, k, V, lam, A, R)
    v = crossmod.check_cm_morphism(f)
    ok = _show("gauge morphism %s" % name, v)
    c1, c2 = classify.mu(f.source).class_id, classify.mu(f.target).class_id
    ok = _show("class unchanged (%s, %s)" % (_vec(c1), _vec(c2)), _agree(c1 == c2, "class_id fixed", (c1, c2))) and ok
    ident = (f.F == Lie2Hom.identity(f.source.m) and f.tau.is_zero())
    _say("morphism is the identity" if ident else "morphism is not the identity")
    s = ws.put_crossed_module(name + ".gauge_source", f.source)
    t = ws.put_crossed_module(name + ".gauge_target", f.target)
    m = ws.put_morphism(name + ".gauge", f, s, t)
    return _finish(ws, args, [("morphisms", m)]) and ok


def cmd_splice(ws, args):
    name = _need(args)
    _kind(ws, name, ("sequences",))
    cm, _ = _crossed_module_for(ws, name)
    out = ws.put_crossed_module(name + ".splice", cm)
    _say("spliced crossed module %s: m dims %s, g dims %s" % (out, cm.m.dims, cm.g.dims))
    return _finish(ws, args, [("crossed_modules", out)])


def cmd_connecting(ws, args):
    name = _need(args)
    _kind(ws, name, ("sequences",))
    V, I, Q, p, q = ws.sequence(name)
    n = args.degree if args.degree is not None else 2
    if n + 1 > degree_ceiling():
        raise RefusalError("degree %d exceeds the configured ceiling %d (LIE2KIT_DEGREE_CEILING)" % (n + 1, degree_ceiling()))
    d = classify.connecting_map(V, I, Q, p, q, n)
    _say("connecting map H^%d(h, Q) -> H^%d(h, V): %dx%d" % (n, n + 1, d.rows, d.cols))
    for i in range(d.rows):
        _say("  " + " ".join(fmt(d[i, j]) for j in range(d.cols)))
    ws.put_result(name + ".connecting%d" % n, {"entity": name, "degree": n, "matrix": matrix_to(d),
                                                "shape": [d.rows, d.cols]})
    return _finish(ws, args, [])


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "crossed-product": cmd_crossed_product,
    "mapping-cone": cmd_mapping_cone,
    "derivations": cmd_derivations,
    "h1": cmd_h1,
    "mu": cmd_mu,
    "gauge": cmd_gauge,
    "splice": cmd_splice,
    "connecting": cmd_connecting,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="lie2kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--file", required=True, help="workspace JSON file")
        p.add_argument("--entity", help="name of the entity to act on")
        p.add_argument("--degree", type=int, help="cohomological degree")
        p.add_argument("--out", help="write the workspace with constructed entities here")
        p.add_argument("--json", action="store_true", help="also print a machine-readable JSON result")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_MALFORMED if e.code else EXIT_OK
    try:
        ws = Workspace.load(args.file)
        ok = COMMANDS[args.command](ws, args)
    except MalformedInput as e:
        print("malformed input: %s" % e, file=sys.stderr)
        return EXIT_MALFORMED
    except RefusalError as e:
        _say("REFUSED: %s" % e)
        return EXIT_FAIL
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
