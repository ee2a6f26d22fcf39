"""Acceptance criteria 1-8; each test prints one PASS/FAIL line."""
import io
import json
import random
import time

import pytest

from harada_quivers.algebra import build_algebra, evaluate_phi, same_ideal
from harada_quivers.block import (BlockSpec, block_presentation_from, block_quiver, extend, extend_path,
                                  extend_product, relabel)
from harada_quivers.cli import run
from harada_quivers.corpus import a2_path_algebra, running_example, standard_corpus, truncated_polynomial
from harada_quivers.dsl import parse_file
from harada_quivers.harada import StaircaseSpec, harada_construction, qf_check, theta_prime_full
from harada_quivers.linalg import nullspace
from harada_quivers.matrix_model import (build_block_algebra, oracle_radical, phi_prime, verify_block_presentation,
                                         verify_harada_conditions, verify_radical_formula)
from harada_quivers.pipeline import verify_pipeline
from harada_quivers.quiver import PathCombination, Presentation

from conftest import CORPUS_DIR, block_specs
from helpers import random_path

SPEC = BlockSpec((3, 2))
STAIR = StaircaseSpec(((1, 2, 2), (1, 2)))
CORPUS = standard_corpus()
QF_NAMES = ["running", "poly2", "poly3", "poly4"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def _words(q, *words):
    return [PathCombination.from_path(q, q.path(*w.split())) for w in words]


def test_criterion_1_golden_block_extension(report):
    t = time.perf_counter()
    src = parse_file(CORPUS_DIR / "ex35.qpr")
    bq = block_quiver(src.presentation, SPEC)
    got = block_presentation_from(bq)
    Q = got.quiver
    edges = {(a.label, Q.vertices[a.source], Q.vertices[a.target]) for a in Q.arrows}
    want_edges = {("d:1:1", "(1,1)", "(1,2)"), ("d:1:2", "(1,2)", "(1,3)"), ("d:2:1", "(2,1)", "(2,2)"),
                  ("b:a11", "(1,3)", "(1,1)"), ("b:a12", "(1,3)", "(2,1)"), ("b:a21", "(2,2)", "(1,1)")}
    cube, cycle, r2, r3 = _words(Q, "b:a11 d:1:1 d:1:2 b:a11 d:1:1 d:1:2 b:a11", "b:a12 d:2:1 b:a21",
                                 "b:a11 d:1:1 d:1:2 b:a12", "b:a21 d:1:1 d:1:2 b:a11")
    expected = Presentation(Q, (cube - cycle, r2, r3), got.field)
    ok_quiver = Q.num_vertices == 5 and len(Q.arrows) == 6 and edges == want_edges
    ok_ideal = same_ideal(got, expected)
    elapsed = time.perf_counter() - t
    report(1, ok_quiver and ok_ideal and elapsed < 5,
           f"quiver {'matches' if ok_quiver else 'differs'}, relation ideal "
           f"{'equal' if ok_ideal else 'different'}, {elapsed:.2f}s")


def test_criterion_2_dimension_ladder(report):
    pres = running_example()
    res = verify_pipeline(pres, SPEC, STAIR)
    bq = block_quiver(pres, SPEC)
    sym_block = build_algebra(block_presentation_from(bq)).dim
    sym_harada = build_algebra(harada_construction(pres, SPEC, STAIR).presentation).dim
    want = {"R": 8, "P": 52, "X": 5, "P/X": 47}
    ok = res.dims == want and sym_block == res.dims["P"] and sym_harada == res.dims["P/X"] and res.ok
    report(2, ok, f"dims {res.dims}; symbolic KQ'/I' {sym_block}, harada {sym_harada}")


def test_criterion_3_golden_harada(report):
    # e(a21 a12) = b:a21 d:1:1 d:1:2 b:a12, straight from the extension map
    d = "d:1:1 d:1:2"
    cube = f"b:a11 {d} b:a11 {d} b:a11"
    golden = sorted(tuple(w.split()) for w in (f"{d} {cube} d:1:1", f"{cube} {d}",
                                               f"d:2:1 b:a21 {d} b:a12 d:2:1"))
    out = io.StringIO()
    code = run(["harada", str(CORPUS_DIR / "ex35_socle.qpr"), "--format", "json"], stdout=out)
    data = json.loads(out.getvalue())
    got = sorted(tuple(g["path"]) for g in data["generators"])
    bps = data["breakpoints"] == {"1": [0, 1, 3], "2": [0, 1, 2]}
    # default socle choice: same ideal as the golden presentation
    hc = harada_construction(running_example(), SPEC, STAIR)
    Q = hc.presentation.quiver
    golden_pres = Presentation(Q, hc.block_relations + tuple(_words(Q, *(" ".join(w) for w in golden))))
    ok_default = same_ideal(hc.presentation, golden_pres)
    report(3, code == 0 and bps and got == golden and ok_default,
           f"breakpoints {'match' if bps else 'differ'}, generators {'match' if got == golden else got}, "
           f"default socle choice ideal-equal: {ok_default}")


def _instances():
    for name, pres in CORPUS.items():
        R = build_algebra(pres)
        for spec in block_specs(R.num_vertices):
            yield name, pres, R, spec


def test_criterion_4_oracle_equivalence(report):
    failures, count, worst = [], 0, 0.0
    for name, pres, R, spec in _instances():
        t = time.perf_counter()
        bq = block_quiver(pres, spec)
        rep = verify_block_presentation(block_presentation_from(bq), bq, build_block_algebra(R, spec))
        elapsed = time.perf_counter() - t
        worst = max(worst, elapsed)
        count += 1
        if not rep.ok or elapsed >= 60:
            failures.append((name, spec.n, [leg.name for leg in rep.failed()], elapsed))
    report(4, not failures and len(CORPUS) >= 6,
           f"{count} instances over {len(CORPUS)} presentations, worst {worst:.2f}s, failures {failures}")


def test_criterion_5_radical_formula(report):
    failures, count = [], 0
    for name, pres, R, spec in _instances():
        rep = verify_radical_formula(build_block_algebra(R, spec))
        count += 1
        if not rep.ok:
            failures.append((name, spec.n, [leg.detail for leg in rep.failed()]))
    report(5, not failures, f"J(P) and J(P)^2 tables on {count} instances, failures {failures}")


def test_criterion_6_qf_and_harada(report):
    results = {}
    results["sigma running = id"] = qf_check(build_algebra(running_example())).permutation.is_identity()
    for n in (2, 3, 4):
        check = qf_check(build_algebra(truncated_polynomial(n)))
        results[f"sigma K[x]/(x^{n}) = id"] = check.is_qf and check.permutation.is_identity()
    A2 = build_algebra(a2_path_algebra())
    results["A2 rejected"] = not qf_check(A2).is_qf
    res = verify_pipeline(running_example(), SPEC, STAIR)
    by_title = {r.title: r.ok for r in res.reports}
    results["Harada on P"] = by_title["harada conditions on P"]
    results["Harada on P/X"] = by_title["harada conditions on P/X"]
    results["A2 not Harada"] = not verify_harada_conditions(A2, [[0], [1]]).ok
    bad = [k for k, v in results.items() if not v]
    report(6, not bad, f"{len(results)} checks, failing: {bad}")


def test_criterion_7_degenerate_spec(report):
    failures = []
    for name, pres in CORPUS.items():
        m = pres.quiver.num_vertices
        bq = block_quiver(pres, BlockSpec.trivial(m))
        Q = bq.quiver
        vmap = {i: bq.vertex_of[(i, 1)] for i in range(m)}
        amap = dict(enumerate(bq.beta))
        iso = (len(set(vmap.values())) == m == Q.num_vertices and len(Q.arrows) == len(pres.quiver.arrows)
               and all((vmap[a.source], vmap[a.target]) == (Q.arrows[amap[k]].source, Q.arrows[amap[k]].target)
                       for k, a in enumerate(pres.quiver.arrows)))
        if not (iso and same_ideal(relabel(pres, Q, amap), block_presentation_from(bq))):
            failures.append(name)
    report(7, not failures, f"{len(CORPUS)} presentations, failures {failures}")


def _kernel_element(R, q, rng, nil):
    """A random element of ker(phi) supported on paths between two random vertices."""
    i, j = rng.randrange(q.num_vertices), rng.randrange(q.num_vertices)
    paths = [p for k in range(1, nil + 2) for p in q.paths_between(i, j, k)]
    if not paths:
        return None
    images = [evaluate_phi(R, PathCombination.from_path(q, p)) for p in paths]
    rows = {}
    for col, img in enumerate(images):
        for a, c in img.items():
            rows.setdefault(a, {})[col] = c
    ker = nullspace(rows.values(), len(paths), R.field.one)
    if not ker:
        return None
    terms = {}
    for vec in ker:
        c = R.field(rng.randint(-3, 3))
        for col, x in vec.items():
            terms[paths[col]] = terms.get(paths[col], R.field.zero) + c * x
    x = PathCombination(q, {p: c for p, c in terms.items() if c})
    return None if x.is_zero() else x


def test_criterion_8_lemma_suite(report):
    failures = []
    counts = {"vanishing": 0, "kernel": 0, "composition": 0, "socle": 0}
    for name, pres in CORPUS.items():
        R = build_algebra(pres)
        q = pres.quiver
        nil = R.normal_form.nil_length
        specs = list(block_specs(R.num_vertices))
        models = {}
        rng = random.Random(f"lemmas-{name}")
        local = {"vanishing": 0, "composition": 0}
        while min(local.values()) < 500:
            spec = rng.choice(specs)
            if spec not in models:
                models[spec] = (block_quiver(pres, spec), build_block_algebra(R, spec))
            bq, P = models[spec]
            p = random_path(q, rng, nil + 1)
            if p is None:
                continue
            x = PathCombination.from_path(q, p)
            if (not evaluate_phi(R, x)) != (not phi_prime(bq, P, extend(bq, x))):
                failures.append(("vanishing", name, spec.n, q.format_path(p)))
            counts["vanishing"] += 1
            local["vanishing"] += 1
            r = random_path(q, rng, nil + 1, start=q.target(p))
            if r is not None:
                if extend_path(bq, q.compose(p, r)) != extend_product(bq, p, r):
                    failures.append(("composition", name, spec.n))
                counts["composition"] += 1
                local["composition"] += 1
        for k in range(200):
            spec = rng.choice(specs)
            if spec not in models:
                models[spec] = (block_quiver(pres, spec), build_block_algebra(R, spec))
            bq, P = models[spec]
            x = _kernel_element(R, q, rng, nil)
            if x is None:
                continue
            if phi_prime(bq, P, extend(bq, x)):
                failures.append(("kernel", name, spec.n))
            counts["kernel"] += 1
        for rel in pres.relations:
            for bq, P in models.values():
                if phi_prime(bq, P, extend(bq, rel)):
                    failures.append(("relation", name))
        if name in QF_NAMES:
            check = qf_check(R)
            hc_thetas = None
            for spec in specs:
                if hc_thetas is None:
                    hc_thetas = harada_construction(pres, spec, StaircaseSpec(tuple((1,) * n for n in spec.n)),
                                                    alg=R).thetas
                bq, P = models.get(spec) or (block_quiver(pres, spec), build_block_algebra(R, spec))
                J = oracle_radical(P.algebra)
                for i in range(R.num_vertices):
                    th = theta_prime_full(bq, check.permutation, hc_thetas, i)
                    v = phi_prime(bq, P, PathCombination.from_path(bq.quiver, th))
                    if not v or any(P.algebra.mul(v, j) for j in J.basis()):
                        failures.append(("socle", name, spec.n, i))
                    counts["socle"] += 1
    report(8, not failures and counts["composition"] >= 500 * len(CORPUS),
           f"cases {counts}, failures {failures[:5]}")
