"""
GrapeQI command line
Normalize, minimize and compare bunches of grapes; inspect their configuration spaces
"""
import argparse
import sys
from itertools import combinations

from grapeqi import create_app
from grapeqi.errors import GrapeQIError
from grapeqi.services import canonical_form, dump_json

ENVIRONMENTS = ('development', 'production', 'testing', 'default')


def read_input(path):
    if path == '-':
        return sys.stdin.read()
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def write_file(path, text):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)


def yes_no(flag):
    return 'yes' if flag else 'no'


def load_bunch(app, path):
    """Grape text document, graph document or the JSON mirror of the grape format"""
    text = read_input(path)
    if text.lstrip().startswith('{'):
        return app.formats.parse_grape_json(text)
    return app.formats.load_bunch(text)


def emit_representative(app, args, kind, g, trace):
    if args.json:
        print(dump_json(kind, {'bunch': g.to_dict(), 'trace': trace.to_dict()}), end='')
        return
    if args.trace:
        for line in trace.lines():
            print(f'# {line}')
    print(app.formats.serialize_grape(g), end='')


# Commands

def cmd_normalize(app, args):
    g, trace = app.reductions.normal_representative(load_bunch(app, args.input))
    emit_representative(app, args, 'normal-representative', g, trace)


def cmd_enrich(app, args):
    g, trace = app.reductions.rich_representative(load_bunch(app, args.input))
    emit_representative(app, args, 'rich-representative', g, trace)


def cmd_minimize(app, args):
    g, trace = app.reductions.quasi_minimal(load_bunch(app, args.input))
    emit_representative(app, args, 'quasi-minimal-representative', g, trace)


def print_verdict(args, verdict, d1, d2):
    if args.json:
        print(dump_json('qi-verdict', {
            'qi': verdict,
            'descriptors': [d1.to_dict(), d2.to_dict()],
        }), end='')
        return
    print(f'QI: {yes_no(verdict)}')
    print(f'A: {d1}')
    print(f'B: {d2}')


def cmd_qi(app, args):
    verdict, d1, d2 = app.qi.decide_qi(load_bunch(app, args.first), load_bunch(app, args.second))
    print_verdict(args, verdict, d1, d2)


def cmd_qi_tree4(app, args):
    t1 = app.formats.parse_tree(read_input(args.first))
    t2 = app.formats.parse_tree(read_input(args.second))
    d1, d2 = app.qi.tree4_descriptor(t1), app.qi.tree4_descriptor(t2)
    print_verdict(args, d1 == d2, d1, d2)


def cmd_ri(app, args):
    ri = app.ri.build_ri(load_bunch(app, args.input))
    if args.dot:
        write_file(args.dot, app.formats.export_dot(ri))
    if args.json:
        print(app.formats.ri_to_json(ri), end='')
        return
    print(f'twigs: {len(ri.vertices)}, dimension: {ri.dimension}, '
          f'f-vector: {"/".join(str(n) for n in ri.f_vector())}')
    for s in ri.simplices:
        print(f"simplex {' '.join(s.twigs)}: {s.label} {s.qi_type}")


def ud_graph(app, args):
    """Base graph for cmd_ud and the bunch it came from, if any"""
    text = read_input(args.input)
    if app.formats.is_graph_document(text):
        return app.formats.parse_graph(text), None
    g = app.formats.parse_grape_json(text) if text.lstrip().startswith('{') else app.formats.parse_grape(text)
    return app.spaces.realize_grape(g), g


def verify_bunch(app, g):
    """Twig correspondence and intersection checks on a large normal bunch"""
    cls = g.classify()
    if not (cls.large and cls.normal):
        return {}
    twig_ids = [t.id for t in g.twigs()]
    subsets = [s for r in (1, 2, 3) for s in combinations(twig_ids, r)]
    return {
        'twig_correspondence': app.products.twig_correspondence_check(g),
        'intersection_lemma': all(app.products.intersection_lemma_check(g, s) for s in subsets),
        'local_convexity': app.products.local_convexity_up2(app.spaces.realize_grape(g))[0],
    }


def cmd_ud(app, args):
    graph, g = ud_graph(app, args)
    if args.subdivide == 'auto':
        graph = app.spaces.subdivide_for(graph, args.n)
    cc = app.spaces.build_udn(graph, args.n)
    links = app.spaces.links_ok(cc)
    report = app.spaces.hyperplanes(cc)
    betti = app.spaces.betti(cc)
    checks = verify_bunch(app, g) if args.verify and g is not None else {}

    if args.dot:
        write_file(args.dot, app.formats.export_dot(cc))
    if args.json:
        print(app.formats.complex_to_json(cc, report=report, links=links, betti=betti, checks=checks),
              end='')
        return

    counts = '/'.join(str(n) for n in cc.cell_counts(upto=max(cc.dimension, 2)))
    print(f'cells: {counts}, b0={betti[0]}, b1={betti[1]}, '
          f'npc: {yes_no(links[0])}, special: {yes_no(links[0] and report.clean)}')
    for name, ok in checks.items():
        print(f"{name.replace('_', ' ')}: {yes_no(ok)}")


def cmd_grow(app, args):
    stem = app.formats.parse_tree(read_input(args.input))
    g = app.qi.grow_from_tree(stem)
    if args.json:
        print(app.formats.serialize_grape_json(g), end='')
        return
    print(app.formats.serialize_grape(g), end='')


def cmd_raag(app, args):
    verdict = app.qi.raag_qi_check(load_bunch(app, args.input))
    if args.json:
        print(dump_json('raag-verdict', verdict.to_dict()), end='')
        return
    print(f'RAAG: {verdict.value}')
    for key, value in sorted((verdict.witness or {}).items()):
        shown = ' '.join(value) if isinstance(value, list) else value
        print(f'  {key}: {shown}')


def cmd_canon(app, args):
    g = load_bunch(app, args.input)
    if args.minimal:
        g, _ = app.reductions.quasi_minimal(g)
    form = canonical_form(g)
    if args.json:
        print(dump_json('canonical-form', {'code': str(form)}), end='')
        return
    print(form)


def cmd_rank(app, args):
    g = load_bunch(app, args.input)
    rank = 'large' if g.is_large else app.qi.small_rank(g)
    if args.json:
        print(dump_json('small-rank', {'rank': rank}), end='')
        return
    print(rank)


COMMANDS = {
    'normalize': cmd_normalize,
    'enrich': cmd_enrich,
    'minimize': cmd_minimize,
    'qi': cmd_qi,
    'qi-tree4': cmd_qi_tree4,
    'ri': cmd_ri,
    'ud': cmd_ud,
    'grow': cmd_grow,
    'raag': cmd_raag,
    'canon': cmd_canon,
    'rank': cmd_rank,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="Emit the versioned JSON document")
    common.add_argument('--env', choices=ENVIRONMENTS, default=None,
                        help="Configuration environment (default: GRAPEQI_ENV)")
    common.add_argument('--guard-override', action='store_true',
                        help="Raise every size guard by GRAPEQI_GUARD_OVERRIDE_FACTOR; may be very slow")

    parser = argparse.ArgumentParser(
        prog='grapeqi',
        description="Quasi-isometry classification of 2-braid groups over bunches of grapes",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name, help_text in (
        ('normalize', "Normal representative (prune empty twigs, smooth twigs)"),
        ('enrich', "Minimal rich representative of a normal bunch"),
        ('minimize', "Quasi-minimal representative"),
    ):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.add_argument('input', help="Grape document, or - for stdin")
        p.add_argument('--trace', action='store_true', help="Print the applied operations as comments")

    for name, help_text in (
        ('qi', "Are the 2-braid groups over two bunches quasi-isometric?"),
        ('qi-tree4', "Are the 4-braid groups over two trees quasi-isometric?"),
    ):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.add_argument('first')
        p.add_argument('second')

    p = subparsers.add_parser('ri', parents=[common], help="Labelled reduced intersection complex")
    p.add_argument('input')
    p.add_argument('--dot', metavar='PATH', help="Also write the complex as DOT")

    p = subparsers.add_parser('ud', parents=[common], help="Discrete configuration space report")
    p.add_argument('input', help="Graph document (edge lines) or grape document")
    p.add_argument('--n', type=int, default=2, help="Number of particles")
    p.add_argument('--subdivide', choices=('auto', 'off'), default='auto')
    p.add_argument('--verify', action='store_true',
                   help="Also check the product subcomplexes against the twigs")
    p.add_argument('--dot', metavar='PATH', help="Write the 1-skeleton as DOT")

    p = subparsers.add_parser('grow', parents=[common], help="Bunch grown from a tree")
    p.add_argument('input', help="Tree document")

    p = subparsers.add_parser('raag', parents=[common], help="Sufficient RAAG criteria")
    p.add_argument('input')

    p = subparsers.add_parser('canon', parents=[common], help="Canonical form of a bunch")
    p.add_argument('input')
    p.add_argument('--minimal', action='store_true', help="Of the quasi-minimal representative")

    p = subparsers.add_parser('rank', parents=[common], help="Free rank of B_2 over a small bunch")
    p.add_argument('input')
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        app = create_app(args.env, guard_override=args.guard_override)
        COMMANDS[args.command](app, args)
    except GrapeQIError as e:
        print(f'error[{e.code}]: {e}', file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f'error[io]: {e}', file=sys.stderr)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
