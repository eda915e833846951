"""
Acceptance sweep for GrapeQI
Runs every acceptance criterion on seeded pools and tabulates the outcome
"""
import argparse
import contextlib
import io
import logging
import os
import sys
import tempfile
import time
from itertools import combinations

import pandas as pd

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import cli
from grapeqi import create_app
from grapeqi.errors import GrapeQIError
from grapeqi.models import SimpleGraph
from grapeqi.services import canonical_form, free_rank_formula, star_b4_rank, tree_b2_rank
from grapeqi.services import generators

logger = logging.getLogger('grapeqi.sweep')


def normal_pool(app, rng, size, max_vertices=4, max_loops=2, within_guard=True):
    """Large normal bunches, by default only those whose realized graphs fit the product guard"""
    pool = []
    attempts = 0
    while len(pool) < size and attempts < 50 * size:
        attempts += 1
        g, _ = app.reductions.normal_representative(
            generators.random_bunch(rng, max_vertices=max_vertices, max_loops=max_loops))
        if not within_guard or g.stem.number_of_edges + 3 * g.loops_sum() <= app.guards.products_max_edges:
            pool.append(g)
    return pool


# Criteria: each returns (cases, passed)

def rank_formula_values(app, rng):
    stated = [(3, 0, 1), (0, 1, 1), (1, 0, 0), (2, 0, 0)]
    return len(stated), sum(free_rank_formula(n, l) == value for n, l, value in stated)


def betti_matches_formula(app, rng):
    cases = [(n, l) for n in range(5) for l in range(4) if n + l >= 1]
    passed = 0
    for n, l in cases:
        cc = app.spaces.build_udn(generators.star_with_grapes(n, l), 2)
        passed += app.spaces.betti(cc)[1] == free_rank_formula(n, l)
    return len(cases), passed


def small_examples(app, rng):
    star = SimpleGraph(['c', 'x', 'y', 'z'], [('c', 'x'), ('c', 'y'), ('c', 'z')])
    triangle = SimpleGraph(['a', 'b', 'c'], [('a', 'b'), ('b', 'c'), ('c', 'a')])
    passed = 0
    for graph, counts in ((star, (6, 6, 0)), (triangle, (3, 3, 0))):
        cc = app.spaces.build_udn(graph, 2)
        passed += cc.cell_counts(upto=2) == counts and app.spaces.betti(cc)[1] == 1
    return 2, passed


def tree_formula(app, rng):
    passed = 0
    for _ in range(50):
        stem = generators.random_stem(rng, int(rng.integers(1, 11)))
        cc = app.spaces.build_udn(SimpleGraph(stem.vertices, stem.edges), 2)
        passed += app.spaces.betti(cc)[1] == tree_b2_rank(stem)
    return 50, passed


def specialness(app, rng):
    passed = 0
    for _ in range(100):
        graph = generators.random_simple_graph(rng, max_vertices=10)
        passed += app.spaces.is_special(app.spaces.build_udn(graph, 2))
    return 100, passed


def twig_correspondence(app, rng):
    pool = normal_pool(app, rng, 30)
    return len(pool), sum(app.products.twig_correspondence_check(g) for g in pool)


def intersection_lemma(app, rng):
    pool = normal_pool(app, rng, 30)
    passed = 0
    for g in pool:
        ids = [t.id for t in g.twigs()]
        subsets = [s for r in range(1, 4) for s in combinations(ids, r)]
        passed += all(app.products.intersection_lemma_check(g, s) for s in subsets)
    return len(pool), passed


def local_convexity(app, rng):
    pool = normal_pool(app, rng, 30)
    return len(pool), sum(
        app.products.local_convexity_up2(app.spaces.realize_grape(g))[0] for g in pool)


def trichotomy(app, rng):
    pool = normal_pool(app, rng, 30, max_vertices=8, max_loops=3, within_guard=False)
    passed = 0
    for g in pool:
        verdict, witness = app.ri.trichotomy(g)
        if g.stem.is_path():
            passed += verdict == 'path-stem-and-simplex'
        else:
            top = max(g.stem.valence(v) for v in g.vertices)
            passed += verdict == 'not-simply-connected' and witness['complete_graph'] == top
    return len(pool), passed


def quasi_minimal_uniqueness(app, rng):
    passed = 0
    for g in generators.pool(rng, 100):
        expected = canonical_form(app.reductions.quasi_minimal(g)[0])
        passed += all(
            canonical_form(app.reductions.quasi_minimal_by_schedule(g, rng)[0]) == expected
            for _ in range(10)
        )
    return 100, passed


def operation_invariance(app, rng):
    cases = passed = 0
    for g in generators.pool(rng, 40, max_vertices=6, max_loops=2):
        for _, after in app.reductions.legal_steps(g):
            cases += 1
            passed += app.qi.decide_qi(g, after)[0]
    return cases, passed


def picking_pair_discrimination(app, rng):
    out = io.StringIO()
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for i, g in enumerate(generators.picking_pair()):
            path = os.path.join(tmp, f'pair{i}.grape')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(app.formats.serialize_grape(g))
            paths.append(path)
        with contextlib.redirect_stdout(out):
            code = cli.main(['qi', *paths])
    return 1, int(code == 0 and out.getvalue().splitlines()[0] == 'QI: no')


def equivalence_relation(app, rng):
    pool = generators.pool(rng, 40, max_vertices=6)
    descriptors = [app.qi.descriptor(g) for g in pool]
    cases = passed = 0
    for i, j in combinations(range(len(pool)), 2):
        cases += 1
        forward, d1, d2 = app.qi.decide_qi(pool[i], pool[j])
        backward, _, _ = app.qi.decide_qi(pool[j], pool[i])
        passed += (forward == backward == (descriptors[i] == descriptors[j])
                   and (d1, d2) == (descriptors[i], descriptors[j]))
    return cases, passed


def tree_four_braids(app, rng):
    star = SimpleGraph(['c', 'x', 'y', 'z'], [('c', 'x'), ('c', 'y'), ('c', 'z')])
    cc = app.spaces.build_udn(app.spaces.subdivide_for(star, 4), 4)
    return 1, int(app.spaces.betti(cc)[1] == star_b4_rank(3))


def raag_criteria(app, rng):
    expected = [(generators.path_bunch(k), 'qi-to-raag') for k in range(1, 6)]
    expected.append((generators.dynkin_bunch(5), 'not-qi-to-raag'))
    return len(expected), sum(app.qi.raag_qi_check(g).value == value for g, value in expected)


def round_trip(app, rng):
    passed = 0
    for g in generators.pool(rng, 1000):
        passed += app.formats.parse_grape(app.formats.serialize_grape(g)) == g
    return 1000, passed


CRITERIA = [
    (1, 'rank formula values', rank_formula_values),
    (2, 'betti vs N(n, l)', betti_matches_formula),
    (3, 'UD_2 of star and triangle', small_examples),
    (4, 'tree B_2 rank', tree_formula),
    (5, 'UD_2 is special', specialness),
    (6, 'twig correspondence', twig_correspondence),
    (7, 'intersection lemma', intersection_lemma),
    (8, 'local convexity of UP_2', local_convexity),
    (9, 'RI trichotomy', trichotomy),
    (10, 'quasi-minimal uniqueness', quasi_minimal_uniqueness),
    (11, 'operation invariance', operation_invariance),
    (12, 'picking pair discrimination', picking_pair_discrimination),
    (13, 'decide_qi is an equivalence', equivalence_relation),
    (14, 'tree 4-braid rank', tree_four_braids),
    (15, 'RAAG criteria', raag_criteria),
    (16, 'text round trip', round_trip),
]

SLOW = {14}


def run_criterion(app, number, name, check, seed):
    rng = generators.make_rng(seed + number)
    start = time.perf_counter()
    try:
        cases, passed = check(app, rng)
    except GrapeQIError as e:
        logger.warning("criterion %d failed with error[%s]: %s", number, e.code, e)
        cases, passed = 0, -1
    seconds = time.perf_counter() - start
    logger.info("criterion %d (%s): %d/%d in %.2fs", number, name, passed, cases, seconds)
    return {
        'criterion': number,
        'name': name,
        'cases': cases,
        'passed': passed,
        'ok': cases > 0 and passed == cases,
        'seconds': round(seconds, 3),
    }


def main(argv=None):
    """Run the acceptance sweep and print the table"""
    parser = argparse.ArgumentParser(description="Run the GrapeQI acceptance sweep")
    parser.add_argument('--csv', metavar='PATH', help="Also write the table as CSV")
    parser.add_argument('--only', type=int, nargs='+', metavar='N', help="Run only these criteria")
    parser.add_argument('--skip-slow', action='store_true', help="Skip the 4-braid desk check")
    parser.add_argument('--env', default=None, help="Configuration environment")
    args = parser.parse_args(argv)

    app = create_app(args.env)
    logger.setLevel(logging.INFO)
    seed = app.config.SEED

    rows = []
    for number, name, check in CRITERIA:
        if args.only and number not in args.only:
            continue
        if args.skip_slow and number in SLOW:
            continue
        rows.append(run_criterion(app, number, name, check, seed))

    table = pd.DataFrame(rows, columns=['criterion', 'name', 'cases', 'passed', 'ok', 'seconds'])
    print(table.to_string(index=False))
    if args.csv:
        table.to_csv(args.csv, index=False)
    return 0 if table['ok'].all() else 1


if __name__ == '__main__':
    sys.exit(main())
