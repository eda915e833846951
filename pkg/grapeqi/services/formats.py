"""
Grape Format Service
Text, JSON and DOT formats for bunches of grapes, trees, graphs, cube complexes
and intersection complexes, plus the graph-to-bunch preprocessor
"""
import json
import logging
import re

import networkx as nx

from grapeqi.errors import FormatError, InvalidBunchError
from grapeqi.models import CubeComplex, GrapeBunch, ReducedIntersectionComplex, SimpleGraph, Stem, format_key

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

# a comment starts at a '#' that opens a token
_COMMENT = re.compile(r'(^|\s)#.*$')

_ARITY = {
    'format': 1,
    'stem': 2,
    'loops': 2,
    'vertex': 1,
    'edge': 2,
}


def _quote(name):
    return '"' + str(name).replace('\\', '\\\\').replace('"', '\\"') + '"'


def _attrs(**attrs):
    if not attrs:
        return ''
    return ' [' + ', '.join(f'{k}={_quote(v)}' for k, v in sorted(attrs.items())) + ']'


def dump_json(kind, payload):
    """Versioned JSON document with sorted keys"""
    document = {'format': FORMAT_VERSION, 'kind': kind}
    document.update(payload)
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


class GrapeFormatService:
    """
    Parses and serializes the line-oriented grape format and its JSON mirror
    """

    # Text format

    def _directives(self, text):
        """Yield (line, column, directive, args, raw rest) for every non-comment line"""
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = _COMMENT.sub('', raw).rstrip()
            if not line.strip():
                continue
            column = len(line) - len(line.lstrip()) + 1
            fields = line.split()
            rest = line.strip()[len(fields[0]):].strip()
            yield lineno, column, fields[0], fields[1:], rest

    def _check_arity(self, lineno, column, directive, args):
        expected = _ARITY[directive]
        if len(args) != expected:
            raise FormatError(
                f"'{directive}' takes {expected} argument(s), got {len(args)}",
                code='syntax', line=lineno, column=column,
            )

    def _check_version(self, lineno, column, args):
        if args[0] != str(FORMAT_VERSION):
            raise FormatError(f"unsupported format version {args[0]!r}",
                              code='syntax', line=lineno, column=column)

    def _count(self, lineno, column, value):
        if not re.fullmatch(r'\d+', value):
            raise FormatError(f"grape count {value!r} is not a non-negative integer",
                              code='bad-count', line=lineno, column=column)
        return int(value)

    def _read(self, text, allowed):
        """
        Collect vertices, edges, loops and metadata from a document

        Args:
            text: Document text
            allowed: Directives accepted besides 'format'

        Returns:
            (vertices, edges, loops, metadata)
        """
        vertices, edges, loops, metadata = [], [], {}, {}
        seen_edges = {}
        for lineno, column, directive, args, rest in self._directives(text):
            if directive == 'meta':
                if not args:
                    raise FormatError("'meta' needs a key", code='syntax', line=lineno, column=column)
                metadata[args[0]] = rest[len(args[0]):].strip()
                continue
            if directive == 'loops' and 'loops' not in allowed and 'stem' in allowed:
                raise FormatError("trees carry no grapes", code='loops-in-tree',
                                  line=lineno, column=column)
            if directive not in _ARITY or (directive != 'format' and directive not in allowed):
                raise FormatError(f"unknown directive {directive!r}", code='unknown-directive',
                                  line=lineno, column=column)
            self._check_arity(lineno, column, directive, args)

            if directive == 'format':
                self._check_version(lineno, column, args)
            elif directive in ('stem', 'edge'):
                u, v = args
                key = frozenset((u, v))
                if directive == 'stem' and key in seen_edges:
                    raise InvalidBunchError(
                        f"line {lineno}: stem edge {u!r}-{v!r} already given on line {seen_edges[key]}",
                        code='duplicate-edge',
                    )
                seen_edges.setdefault(key, lineno)
                edges.append((u, v))
            elif directive == 'loops':
                v, value = args
                if v in loops:
                    raise FormatError(f"loops for {v!r} given twice", code='duplicate-loops',
                                      line=lineno, column=column)
                loops[v] = self._count(lineno, column, value)
            elif directive == 'vertex':
                vertices.append(args[0])
        return vertices, edges, loops, metadata

    def parse_grape(self, text):
        """
        Parse a grape document

        Args:
            text: Lines of 'stem u v', 'loops v N', 'vertex v', 'meta key value', 'format 1'

        Returns:
            Validated GrapeBunch
        """
        vertices, edges, loops, metadata = self._read(text, {'stem', 'loops', 'vertex'})
        stem = Stem(set(vertices) | set(loops), edges)
        return GrapeBunch(stem, loops, metadata=metadata)

    def serialize_grape(self, g):
        """
        Canonical grape document: sorted stem edges, nonzero loops, metadata verbatim
        """
        lines = [f'# grapeqi bunch: {g.summary()}', f'format {FORMAT_VERSION}']
        lines += [f'meta {k} {v}'.rstrip() for k, v in sorted(g.metadata.items())]
        covered = {v for e in g.stem.edges for v in e} | set(g.grape_vertices())
        lines += [f'vertex {v}' for v in g.vertices if v not in covered]
        lines += [f'stem {u} {v}' for u, v in g.stem.edges]
        lines += [f'loops {v} {c}' for v, c in g.loops.items() if c]
        return '\n'.join(lines) + '\n'

    def parse_tree(self, text):
        """Parse a tree document: the grape grammar without 'loops'"""
        vertices, edges, _, _ = self._read(text, {'stem', 'vertex'})
        return Stem(vertices, edges)

    def serialize_tree(self, stem):
        lines = [f'# grapeqi tree: V={stem.number_of_vertices} E={stem.number_of_edges}',
                 f'format {FORMAT_VERSION}']
        if stem.number_of_edges == 0:
            lines += [f'vertex {v}' for v in sorted(stem.vertices)]
        lines += [f'stem {u} {v}' for u, v in stem.edges]
        return '\n'.join(lines) + '\n'

    def parse_multigraph(self, text):
        """
        Parse a graph document ('edge u v', 'vertex v'); loops and parallel edges allowed

        Returns:
            networkx MultiGraph
        """
        vertices, edges, _, _ = self._read(text, {'edge', 'vertex'})
        graph = nx.MultiGraph()
        graph.add_nodes_from(vertices)
        graph.add_edges_from(edges)
        return graph

    def parse_graph(self, text):
        """Parse a graph document into a simple graph"""
        return SimpleGraph.from_networkx(self.parse_multigraph(text))

    def serialize_graph(self, graph):
        lines = [f'# grapeqi graph: V={graph.number_of_vertices} E={graph.number_of_edges}',
                 f'format {FORMAT_VERSION}']
        covered = {v for e in graph.edges for v in e}
        lines += [f'vertex {v}' for v in graph.vertices if v not in covered]
        lines += [f'edge {u} {v}' for u, v in graph.edges]
        return '\n'.join(lines) + '\n'

    def is_graph_document(self, text):
        return any(directive == 'edge' for _, _, directive, _, _ in self._directives(text))

    def load_bunch(self, text):
        """Grape document, or a graph document run through graph_to_bunch"""
        if self.is_graph_document(text):
            return self.graph_to_bunch(self.parse_multigraph(text))
        return self.parse_grape(text)

    # Graphs of circumference <= 1

    def _simplify(self, graph):
        """Subdivide loops and parallel edges into a simple networkx graph"""
        simple = nx.Graph()
        simple.add_nodes_from(str(v) for v in graph.nodes)
        for u, v, k in sorted((str(u), str(v), k) for u, v, k in graph.edges(keys=True)):
            if u == v:
                a, b = f'{u}~l{k}a', f'{u}~l{k}b'
                simple.add_edges_from([(u, a), (a, b), (b, u)])
            elif simple.has_edge(u, v):
                mid = f'{u}~{v}~p{k}'
                simple.add_edges_from([(u, mid), (mid, v)])
            else:
                simple.add_edge(u, v)
        return simple

    def graph_to_bunch(self, graph):
        """
        Encode a connected graph of circumference <= 1 as a bunch of grapes

        Args:
            graph: SimpleGraph or networkx (multi)graph

        Returns:
            GrapeBunch; every cycle block becomes one grape at its attachment vertex
        """
        if isinstance(graph, SimpleGraph):
            graph = nx.MultiGraph(graph.graph)
        elif not graph.is_multigraph():
            graph = nx.MultiGraph(graph)
        if graph.number_of_nodes() == 0:
            raise InvalidBunchError("graph has no vertices", code='empty-stem')
        if not nx.is_connected(graph):
            raise InvalidBunchError("graph is disconnected", code='disconnected')

        simple = self._simplify(graph)
        loops = {}
        dropped = set()
        cycle_edges = []
        for block in nx.biconnected_components(simple):
            if len(block) < 3:
                continue
            sub = simple.subgraph(block)
            if sub.number_of_edges() != len(block):
                raise FormatError(f"cycles through {sorted(block)[:3]}... share an edge",
                                  code='circumference')
            attachments = sorted(v for v in block if simple.degree(v) > 2)
            if len(attachments) > 1:
                raise FormatError(
                    f"cycle attaches at {attachments[0]} and {attachments[1]}; "
                    f"the graph has circumference > 1",
                    code='circumference',
                )
            anchor = attachments[0] if attachments else min(block)
            loops[anchor] = loops.get(anchor, 0) + 1
            dropped |= set(block) - {anchor}
            cycle_edges.extend(sub.edges)

        tree = simple.copy()
        tree.remove_edges_from(cycle_edges)
        tree.remove_nodes_from(dropped)
        logger.debug("graph with %d vertices encoded as %d stem vertices and %d grapes",
                     graph.number_of_nodes(), tree.number_of_nodes(), sum(loops.values()))
        return GrapeBunch(Stem(tree.nodes, tree.edges), loops)

    # JSON

    def serialize_grape_json(self, g):
        return dump_json('bunch', g.to_dict())

    def parse_grape_json(self, text):
        """
        Parse the JSON mirror of the grape format

        Returns:
            GrapeBunch
        """
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(e.msg, code='bad-json', line=e.lineno, column=e.colno) from e
        if not isinstance(document, dict):
            raise FormatError("document is not a JSON object", code='bad-json')
        if document.get('format', FORMAT_VERSION) != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {document.get('format')!r}",
                              code='bad-json')

        stem_edges = document.get('stem', [])
        if not isinstance(stem_edges, list) or not all(
                isinstance(e, list) and len(e) == 2 for e in stem_edges):
            raise FormatError("'stem' must be a list of vertex pairs", code='bad-json')
        loops = document.get('loops', {})
        if not isinstance(loops, dict):
            raise FormatError("'loops' must be an object", code='bad-json')
        for v, count in loops.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise FormatError(f"grape count for {v!r} is not a non-negative integer",
                                  code='bad-count')

        seen = set()
        for u, v in stem_edges:
            key = frozenset((str(u), str(v)))
            if key in seen:
                raise InvalidBunchError(f"stem edge {u!r}-{v!r} given twice", code='duplicate-edge')
            seen.add(key)
        vertices = document.get('vertices', [])
        if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
            raise FormatError("'vertices' must be a list of vertex ids", code='bad-json')
        meta = document.get('meta', {})
        if not isinstance(meta, dict):
            raise FormatError("'meta' must be an object", code='bad-json')
        vertices = set(vertices) | set(loops)
        metadata = {str(k): str(v) for k, v in meta.items()}
        return GrapeBunch(Stem(vertices, stem_edges), loops, metadata=metadata)

    def complex_to_json(self, cc, report=None, links=None, betti=None, checks=None):
        """
        Cells of a cube complex with optional hyperplane, link and homology diagnostics
        """
        payload = cc.to_dict()
        if report is not None:
            payload['hyperplanes'] = report.to_dict()
        if links is not None:
            ok, problems = links
            payload['links'] = {
                'ok': ok,
                'problems': {format_key(v): msgs for v, msgs in sorted(problems.items())},
            }
        if betti is not None:
            payload['betti'] = list(betti)
        if checks:
            payload['verify'] = dict(checks)
        return dump_json('cube-complex', payload)

    def ri_to_json(self, ri):
        return dump_json('reduced-intersection-complex', ri.to_dict())

    # DOT

    def export_dot(self, x, name='G'):
        """
        Graphviz DOT for a simple graph, the 1-skeleton of a cube complex, or a
        labelled reduced intersection complex

        Returns:
            DOT text; an empty complex gives an empty graph
        """
        lines = [f'graph {_quote(name)} {{']
        if isinstance(x, SimpleGraph):
            lines += [f'  {_quote(v)};' for v in x.vertices]
            lines += [f'  {_quote(u)} -- {_quote(v)};' for u, v in x.edges]
        elif isinstance(x, CubeComplex):
            lines += [f'  {_quote(format_key(v))};' for v in x.vertices]
            lines += [
                f'  {_quote(format_key(tail))} -- {_quote(format_key(head))}'
                f'{_attrs(label=format_key(key))};'
                for key, (tail, head) in x.edges.items()
            ]
        elif isinstance(x, ReducedIntersectionComplex):
            lines += self._ri_dot(x)
        else:
            raise TypeError(f"cannot export {type(x).__name__} as DOT")
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def _ri_dot(self, ri):
        lines = []
        for s in ri.simplices_of_dim(0):
            low, high = s.rank_pair
            lines.append(f'  {_quote(s.twigs[0])}{_attrs(label=s.label, ranks=f"{low}×{high}")};')
        for s in ri.simplices_of_dim(1):
            low, high = s.rank_pair
            u, v = s.twigs
            lines.append(f'  {_quote(u)} -- {_quote(v)}{_attrs(label=s.label, ranks=f"{low}×{high}")};')
        higher = [s for s in ri.simplices if s.dim >= 2]
        for i, s in enumerate(higher):
            low, high = s.rank_pair
            for a in range(len(s.twigs)):
                for b in range(a + 1, len(s.twigs)):
                    lines.append(
                        f'  {_quote(s.twigs[a])} -- {_quote(s.twigs[b])}'
                        f'{_attrs(group=f"s{i}", label=s.label, ranks=f"{low}×{high}", style="dashed")};'
                    )
        return lines
