import io
import json

import pytest

from cli import build_parser, main, verify_bunch
from grapeqi.services import GrapeFormatService
from grapeqi.services.generators import dynkin_bunch, path_bunch, picking_pair

ABCD = 'stem a b\nstem b c\nstem c d\nloops a 2\nloops c 1\n'
EDGE = 'stem a b\nloops a 1\nloops b 1\n'


@pytest.fixture(autouse=True)
def testing_env(monkeypatch):
    monkeypatch.setenv('GRAPEQI_ENV', 'testing')


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestRepresentatives:

    def test_normalize(self, capsys, write):
        code, out, _ = run(capsys, 'normalize', write('abcd.grape', ABCD))
        assert code == 0
        assert out == ('# grapeqi bunch: V=2 E=1 loops=3\n'
                       'format 1\n'
                       'stem a c\n'
                       'loops a 2\n'
                       'loops c 1\n')

    def test_normalize_is_stable(self, capsys, write):
        _, first, _ = run(capsys, 'normalize', write('abcd.grape', ABCD))
        _, second, _ = run(capsys, 'normalize', write('normal.grape', first))
        assert second == first

    def test_trace(self, capsys, write):
        _, out, _ = run(capsys, 'normalize', '--trace', write('abcd.grape', ABCD))
        lines = out.splitlines()
        assert lines[0].startswith('# step 1: prune-empty-twig c-d')
        assert lines[1].startswith('# step 2: smooth-twig a-b-c')

    def test_json(self, capsys, write):
        _, out, _ = run(capsys, 'normalize', '--json', write('abcd.grape', ABCD))
        document = json.loads(out)
        assert document['kind'] == 'normal-representative'
        assert document['bunch']['stem'] == [['a', 'c']]
        assert len(document['trace']['steps']) == 2

    def test_enrich_needs_normal(self, capsys, write):
        code, out, err = run(capsys, 'enrich', write('abcd.grape', ABCD))
        assert code == 2
        assert out == ''
        assert err.splitlines()[-1].startswith('error[not-normal]')

    def test_minimize_four_star(self, capsys, write):
        text = ''.join(f'stem c x{i}\nloops x{i} 1\n' for i in range(1, 5))
        code, out, _ = run(capsys, 'minimize', write('star.grape', text))
        assert code == 0
        assert sum(1 for line in out.splitlines() if line.startswith('stem ')) == 2

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr('sys.stdin', io.StringIO(EDGE))
        code, out, _ = run(capsys, 'normalize', '-')
        assert code == 0
        assert 'stem a b\n' in out

    def test_graph_document(self, capsys, write):
        text = 'edge o o\nedge o o\n'
        _, out, _ = run(capsys, 'rank', write('bouquet.graph', text))
        assert out == '4\n'


class TestDecisions:

    def test_picking_pair(self, capsys, write):
        formats = GrapeFormatService()
        first, second = (formats.serialize_grape(g) for g in picking_pair())
        code, out, _ = run(capsys, 'qi', write('a.grape', first), write('b.grape', second))
        assert code == 0
        assert out.splitlines()[0] == 'QI: no'

    def test_same_class(self, capsys, write):
        relabelled = EDGE.replace('a', 'p').replace('b', 'q')
        _, out, _ = run(capsys, 'qi', write('a.grape', EDGE), write('b.grape', relabelled))
        assert out.startswith('QI: yes\n')

    def test_qi_json(self, capsys, write):
        _, out, _ = run(capsys, 'qi', '--json', write('a.grape', EDGE), write('b.grape', EDGE))
        document = json.loads(out)
        assert document['kind'] == 'qi-verdict'
        assert document['qi'] is True
        assert document['descriptors'][0]['variant'] == 'large'

    def test_trees(self, capsys, write):
        star3 = write('s3.tree', 'stem c x1\nstem c x2\nstem c x3\n')
        star4 = write('s4.tree', 'stem c x1\nstem c x2\nstem c x3\nstem c x4\n')
        _, out, _ = run(capsys, 'qi-tree4', star3, star4)
        assert out.startswith('QI: yes\n')

    def test_rank(self, capsys, write):
        _, out, _ = run(capsys, 'rank', write('star.grape', 'stem c x\nstem c y\nstem c z\n'))
        assert out == '1\n'
        _, out, _ = run(capsys, 'rank', write('edge.grape', EDGE))
        assert out == 'large\n'

    def test_grow(self, capsys, write):
        tree = write('s4.tree', 'stem c x1\nstem c x2\nstem c x3\nstem c x4\n')
        _, out, _ = run(capsys, 'grow', tree)
        assert 'loops c 3\n' in out

    def test_raag(self, capsys, write):
        text = GrapeFormatService().serialize_grape(dynkin_bunch(5))
        _, out, _ = run(capsys, 'raag', write('dynkin.grape', text))
        assert out.splitlines()[0] == 'RAAG: not-qi-to-raag'
        assert '  n: 5' in out.splitlines()

    def test_canon_ignores_names(self, capsys, write):
        _, first, _ = run(capsys, 'canon', write('a.grape', EDGE))
        _, second, _ = run(capsys, 'canon', write('b.grape', EDGE.replace('a', 'p').replace('b', 'q')))
        assert first == second


class TestComplexes:

    def test_ri(self, capsys, write):
        text = 'stem c x1\nstem c x2\nstem c x3\n' + ''.join(f'loops {v} 1\n' for v in ('c', 'x1', 'x2', 'x3'))
        code, out, _ = run(capsys, 'ri', write('star.grape', text))
        assert code == 0
        assert out.splitlines()[0] == 'twigs: 3, dimension: 1, f-vector: 3/3'
        assert 'simplex c-x1 c-x2: (1,1) Z×Z' in out.splitlines()

    def test_ud_graph(self, capsys, write):
        code, out, _ = run(capsys, 'ud', write('star.graph', 'edge c x\nedge c y\nedge c z\n'))
        assert code == 0
        assert out == 'cells: 6/6/0, b0=1, b1=1, npc: yes, special: yes\n'

    def test_ud_verify(self, capsys, write, tmp_path):
        dot = tmp_path / 'ud.dot'
        code, out, _ = run(capsys, 'ud', '--verify', '--dot', str(dot), write('edge.grape', EDGE))
        assert code == 0
        lines = out.splitlines()
        assert lines[1:] == ['twig correspondence: yes', 'intersection lemma: yes', 'local convexity: yes']
        assert dot.read_text(encoding='utf-8').startswith('graph "G" {')

    def test_verify_covers_single_twigs(self, app, monkeypatch):
        seen = []
        monkeypatch.setattr(app.products, 'intersection_lemma_check',
                            lambda g, twigs: seen.append(tuple(twigs)) or True)
        monkeypatch.setattr(app.products, 'twig_correspondence_check', lambda g: True)
        checks = verify_bunch(app, path_bunch(2))
        assert checks['intersection_lemma']
        assert seen == [('v0-v1',), ('v1-v2',), ('v0-v1', 'v1-v2')]

    def test_ud_json(self, capsys, write):
        _, out, _ = run(capsys, 'ud', '--json', write('tri.graph', 'edge a b\nedge b c\nedge c a\n'))
        document = json.loads(out)
        assert document['kind'] == 'cube-complex'
        assert document['betti'] == [1, 1]

    def test_guard(self, capsys, write):
        text = ''.join(f'edge p{i} p{i + 1}\n' for i in range(40))
        code, out, err = run(capsys, 'ud', write('long.graph', text))
        assert code == 3
        assert out == ''
        assert err.splitlines()[-1].startswith('error[ud2_max_vertices]')


class TestErrors:

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, 'normalize', str(tmp_path / 'nope.grape'))
        assert code == 2
        assert err.splitlines()[-1].startswith('error[io]')

    def test_parse_error(self, capsys, write):
        code, _, err = run(capsys, 'normalize', write('bad.grape', 'stem a b\nloops a x\n'))
        assert code == 2
        assert err.splitlines()[-1].startswith('error[bad-count]: line 2, column 1')

    def test_malformed_json_meta(self, capsys, write):
        text = '{"stem": [["a", "b"]], "loops": {"a": 1, "b": 1}, "meta": []}'
        code, out, err = run(capsys, 'canon', write('bad.json', text))
        assert code == 2
        assert out == ''
        assert err.splitlines()[-1].startswith('error[bad-json]')

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_common_options(self):
        args = build_parser().parse_args(['ud', 'g.graph', '--n', '3', '--env', 'testing', '--json'])
        assert (args.n, args.env, args.json, args.subdivide) == (3, 'testing', True, 'auto')
