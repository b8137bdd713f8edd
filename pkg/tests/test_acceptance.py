"""The eight acceptance criteria, one test each.

Every test prints a single line "criterion N: PASS|FAIL  <summary>" to the
terminal (outside pytest's capture) and then asserts the outcome.
"""

import json
import os
import random
import time
from fractions import Fraction
from itertools import combinations

from lie2kit import fixtures as F
from lie2kit.classify import (alternative_sections, check_lambda_condition, connecting_map, epsilon_lambda,
                              gauge_transform, mu, precompose, pullback_module, splice)
from lie2kit.cli import main
from lie2kit.crossmod import (AXIOMS, _inn_ideal_verdict, axiom_report, check_cm_morphism, check_crossed_module,
                              crossed_product, der_complex, four_term_sequence, mapping_cone, split_crossed_product)
from lie2kit.graded import TwoTermSpace
from lie2kit.lie2core import HOM_CONDITIONS, Lie3Algebra, check_hom, check_lie2, check_lie3_strict, quotient
from lie2kit.repcoh import Cochain, Lie2Module, apply_D, class_coordinates, coboundary, cochain_space, cohomology, \
    one_cocycle_residuals
from lie2kit.workspace import Workspace

from generators import product_bases, product_cases, valid_pairs
from mutations import axiom_mutants, hom_condition_mutants
from oracles import ce_betti

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def report(capsys, n, ok, summary):
    with capsys.disabled():
        print("\ncriterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", summary))
    assert ok, summary


def shipped_crossed_modules():
    out = {}
    for fname in sorted(os.listdir(FIXTURES)):
        if fname.endswith(".json"):
            ws = Workspace.load(os.path.join(FIXTURES, fname))
            for name in sorted(ws.data["crossed_modules"]):
                out[name] = ws.crossed_module(name)
    return out


def test_criterion_1_d_squared(capsys):
    t0 = time.time()
    pairs = valid_pairs()
    bad = [(name, n) for name, M in pairs for n in range(-1, 4)
           if not (coboundary(M, n + 1) @ coboundary(M, n)).is_zero()]
    small = all(max(M.algebra.dims + M.dims) <= 3 and check_lie2(M.algebra).ok for _, M in pairs)
    elapsed = time.time() - t0
    ok = len(pairs) >= 20 and small and not bad and elapsed < 30
    report(capsys, 1, ok, "D^2 = 0 on %d pairs, n in [-1, 3], %.1fs, failures %s" % (len(pairs), elapsed, bad))


def test_criterion_2_classical_reduction(capsys):
    rows = []
    ok = True
    for name, g in (("aff1", F.aff1()), ("sl2", F.sl2())):
        M = Lie2Module(g, TwoTermSpace(1, 0))
        ours = [cohomology(M, n)[0] for n in range(4)]
        ref = [ce_betti(g, n) for n in range(4)]
        ok = ok and ours == ref
        rows.append("%s %s" % (name, ours))
        if name == "sl2":
            ok = ok and ours[1] == ours[2] == 0 and ours[3] == 1
    report(capsys, 2, ok, "betti numbers match the Chevalley-Eilenberg oracle: " + ", ".join(rows))


def test_criterion_3_mapping_cone(capsys):
    cms = shipped_crossed_modules()
    passing = [name for name, cm in cms.items() if check_lie3_strict(mapping_cone(cm)).ok]
    caught = []
    for name, cm in cms.items():
        cone = mapping_cone(cm)
        # add 1 to the x0-coefficient of [x0, x1] (both in degree 0)
        l2 = {k: dict(v) for k, v in cone.l2.items()}
        slot = l2.setdefault((0, 1), {})
        slot[0] = slot.get(0, 0) + 1
        v = check_lie3_strict(Lie3Algebra(cone.space, l2, cone.l3))
        if not v.ok and v.first[1]:
            caught.append(name)
    ok = len(cms) >= 6 and len(passing) == len(cms) and len(caught) == len(cms)
    report(capsys, 3, ok, "cone passes on %d/%d shipped crossed modules; mutation caught with witness on %d"
           % (len(passing), len(cms), len(caught)))


def test_criterion_4_derivation_algebra(capsys):
    cms = shipped_crossed_modules()
    results = {}
    for name, cm in cms.items():
        der = der_complex(cm)
        D = der.algebra
        strict = check_lie2(D).ok and D.is_strict()
        closed = all(one_cocycle_residuals(cm.module, *der.unpack(der.c1.bracket(a, b))).ok
                     for a, b in combinations(der.basis0, 2))
        ideal = _inn_ideal_verdict(der, cm).ok
        results[name] = strict and closed and ideal
    ok = all(results.values())
    report(capsys, 4, ok, "Der(g, m) strict, Der_0 closed, {Der_0, Inn_0} in Inn_0 on %d/%d fixtures"
           % (sum(results.values()), len(results)))


def test_criterion_5_split_round_trip(capsys):
    cases = product_cases()
    exact = 0
    for _, g, m, act in cases:
        L = crossed_product(g, m, act)
        g2, m2, act2 = split_crossed_product(L, *product_bases(g, m))
        base, base2 = act.base, act2.base
        if (g2, m2) == (g, m) and all(getattr(base, t) == getattr(base2, t) for t in
                                      ("act00", "act01", "act10", "act2")) and act2.lphi == act.lphi:
            exact += 1
    ok = len(cases) >= 10 and exact == len(cases)
    report(capsys, 5, ok, "split of crossed product recovers the action tensors on %d/%d fixtures"
           % (exact, len(cases)))


def _extensions():
    out = {name: (g, k, V, F._lambda_from_space(g, k, V, [1, 2, -1, 1, 1, 1, 1, 1]))
           for name, (g, k, V) in F.extension_cases().items()}
    out["heis4"] = F.heis4_extension()
    return out


def test_criterion_6_classification(capsys):
    t0 = time.time()
    ext = _extensions()
    strong = {name: cm for name, cm in F.crossed_modules().items() if cm.strong}
    strong.update({"eps/" + name: epsilon_lambda(*data) for name, data in ext.items()})
    strong["splice/abelian3"] = splice(*F.splice_abelian3())
    strong["splice/aff1_cm"] = splice(*F.splice_aff1_cm())

    # (a) two independent section pairs
    a_ok = True
    for cm in strong.values():
        ft = four_term_sequence(cm)
        a_ok = a_ok and mu(cm, ft=ft).class_id == mu(cm, alternative_sections(cm, ft), ft).class_id

    # (b) mu(eps_lambda) + D s^* lambda = theta
    b_ok = True
    for g, k, V, lam in ext.values():
        chk = check_lambda_condition(g, k, V, lam)
        r = mu(epsilon_lambda(g, k, V, lam))
        s_lam = precompose(Cochain(chk.Vg, 2, lam.components), chk.section.m0, chk.section.m1, V)
        b_ok = b_ok and chk.ok and r.theta + apply_D(s_lam) == chk.theta
        b_ok = b_ok and r.class_id == class_coordinates(V, 3, chk.theta.flatten())

    # (c) gauge transformations
    c_ok = True
    rng = random.Random(1)
    for g, k, V, lam in ext.values():
        _, pi = quotient(g, k)
        Vg = pullback_module(V, pi)
        A = Cochain.from_flat(Vg, 1, [Fraction(rng.randint(-2, 2)) for _ in range(cochain_space(Vg, 1)[1])])
        R = Cochain.from_flat(V, 2, [Fraction(rng.randint(-2, 2)) for _ in range(cochain_space(V, 2)[1])])
        f = gauge_transform(g, k, V, lam, A, R)
        c_ok = c_ok and check_cm_morphism(f).ok and mu(f.source).class_id == mu(f.target).class_id

    # (d) mu of the splice equals the connecting map of [lambda]
    V, I, Q, p, q, lam = F.splice_abelian3()
    d = connecting_map(V, I, Q, p, q, 2).apply(class_coordinates(Q, 2, lam.flatten()))
    d_ok = mu(splice(V, I, Q, p, q, lam)).class_id == d and any(d)

    elapsed = time.time() - t0
    ok = a_ok and b_ok and c_ok and d_ok and elapsed < 60
    report(capsys, 6, ok, "(a) %s (b) %s (c) %s (d) %s on %d strong crossed modules, %.1fs"
           % tuple(["ok" if x else "FAILED" for x in (a_ok, b_ok, c_ok, d_ok)] + [len(strong), elapsed]))


def test_criterion_7_mutation_sensitivity(capsys):
    axioms = {k: axiom_report(check_crossed_module(cm)) for k, cm in axiom_mutants().items()}
    axioms_ok = sorted(axioms) == [0, 1, 2, 3] and all(axioms[k] == [AXIOMS[k]] for k in axioms)
    homs = {k: check_hom(f).labels() for k, f in hom_condition_mutants().items()}
    homs_ok = sorted(homs) == [0, 1, 2, 3] and all(homs[k] == [HOM_CONDITIONS[k]] for k in homs)
    report(capsys, 7, axioms_ok and homs_ok,
           "each crossed-module axiom and each homomorphism condition has a mutant failing exactly it")


def _cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def _json_line(out):
    return json.loads(next(line for line in out.splitlines() if line.startswith("{")))


def test_criterion_8_cli_contract(capsys, tmp_path):
    fx = lambda name: os.path.join(FIXTURES, name)
    checks = {}
    files = sorted(f for f in os.listdir(FIXTURES) if f.endswith(".json"))
    checks["validate"] = all(_cli(capsys, "validate", "--file", fx(f))[0] == 0 for f in files)
    coh = True
    for fname, entity, g in (("sl2.json", "sl2.trivial", F.sl2()), ("aff1.json", "aff1.trivial", F.aff1())):
        code, out = _cli(capsys, "cohomology", "--file", fx(fname), "--entity", entity, "--degree", "3", "--json")
        coh = coh and code == 0 and [r["betti"] for r in _json_line(out)["cohomology"]] == \
            [ce_betti(g, n) for n in range(4)]
    checks["cohomology"] = coh
    code, out = _cli(capsys, "mu", "--file", fx("splice.json"), "--entity", "splice", "--json")
    res = _json_line(out)
    mu_ok = code == 0 and res["class_id"] == res["connecting"] == ["1"]
    code, out = _cli(capsys, "mu", "--file", fx("heis.json"), "--entity", "heis4.center", "--json")
    res = _json_line(out)
    mu_ok = mu_ok and code == 0 and res["class_id"] == res["theta_class"]
    for entity in ("aff1_ideal", "aff1_cm_ideal", "string_sl2_identity", "transported_aff1_cm_identity"):
        mu_ok = mu_ok and _cli(capsys, "mu", "--file", fx("ideal_cm.json"), "--entity", entity)[0] == 0
    checks["mu"] = mu_ok
    with open(fx("sl2.json")) as fh:
        data = json.load(fh)
    entry = data["algebras"]["sl2"]["l2_00"][0]
    entry[1] = str(Fraction(entry[1]) + 1)
    bad = tmp_path / "mutated.json"
    bad.write_text(json.dumps(data))
    code, out = _cli(capsys, "validate", "--file", str(bad), "--entity", "sl2")
    checks["exit 1"] = code == 1 and "FAIL Lie 2-algebra identity n=3 at" in out
    del data["algebras"]["sl2"]["l3"]
    bad.write_text(json.dumps(data))
    checks["exit 2"] = _cli(capsys, "validate", "--file", str(bad))[0] == 2
    failed = [k for k, v in checks.items() if not v]
    report(capsys, 8, not failed, "validate/cohomology/mu on shipped fixtures with exit codes 0/1/2; failed: %s"
           % (failed or "none"))
