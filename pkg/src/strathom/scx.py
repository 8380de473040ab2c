"""The SCX fixture format: line-oriented declarations of complexes,
filtrations, sheet pairings, maps, cycles and expected results.

Grammar (one record per line, ``#`` starts a comment):

    complex <name> dim <n>
    top v1,v2,...                        # one maximal simplex
    skeleton <j> s1; s2; ...             # closed simplices generating X_j
    pair <d> face v1,... : a1,..|b1,..  a2,..|b2,..
    map <name> from <cx> to <cx> : v->w v->w ...
    exceptional v1,v2,...                # attaches to the last map
    cycle <name> in <cx> deg <k> : s1; s2; ...
    dualcycle <name> in <cx> deg <k> : s1; s2; ...
    dualpair <k> <cycle> <dualcycle>
    expect ...                           # see the expectation kinds below

``top``, ``skeleton`` and ``pair`` lines attach to the most recent complex
block; everything else may reference names declared anywhere in the file
(resolution happens after the whole file is read).

Expectation kinds:

    expect h <k> = <dim>
    expect ih c <k> = <dim>
    expect ih cl <k> = <dim> [open star <vertex>]
    expect small <map> = true|false
    expect smallres <map> = pass
    expect formulas = match [map <map>]
    expect pairrank <k> = <rank>
    expect mv = 0
    expect frontier = true
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .chains import Chain, SheetPairing, SimplicialMap
from .errors import MalformedFiltration, NonNestedSkeleton, ParseError, UnknownVertex
from .resolution import ResolutionDatum
from .scomplex import Simplex, SimplicialComplex, dim, faces
from .strat import Filtration


@dataclass
class ScxComplex:
    name: str
    declared_dim: int
    complex: SimplicialComplex
    filtration: Filtration
    pairing: SheetPairing
    skeleton_generators: Dict[int, List[Simplex]]
    pair_lines: List[Tuple[int, Simplex, List[Tuple[Simplex, Simplex]]]]


@dataclass
class ScxMap:
    name: str
    source: str
    target: str
    vertex_map: Dict[str, str]
    exceptional: List[str]


@dataclass
class ScxCycle:
    name: str
    complex: str
    k: int
    simplices: List[Simplex]
    dual: bool


@dataclass
class Expectation:
    kind: str
    line: int
    k: Optional[int] = None
    value: Optional[int] = None
    name: Optional[str] = None
    flag: Optional[str] = None


@dataclass
class ScxDocument:
    complexes: Dict[str, ScxComplex] = field(default_factory=dict)
    maps: Dict[str, ScxMap] = field(default_factory=dict)
    cycles: Dict[str, ScxCycle] = field(default_factory=dict)
    dualpairs: List[Tuple[int, str, str]] = field(default_factory=list)
    expectations: List[Expectation] = field(default_factory=list)

    @property
    def primary(self) -> ScxComplex:
        return next(iter(self.complexes.values()))

    def chain(self, name: str) -> Chain:
        c = self.cycles[name]
        return Chain.make(self.complexes[c.complex].complex, c.k, c.simplices)

    def resolution(self, name: str) -> ResolutionDatum:
        m = self.maps[name]
        src = self.complexes[m.source].complex
        tgt = self.complexes[m.target].complex
        pi = SimplicialMap(src, tgt, m.vertex_map)
        exc = set(m.exceptional)
        y = set()
        for s in src.simplices:
            if set(s) <= exc:
                y.update(faces(pi.apply(s)))
        return ResolutionDatum(pi, y)


def _simplex_token(tok: str, lineno: int) -> Simplex:
    vs = [v.strip() for v in tok.split(",") if v.strip()]
    if not vs:
        raise ParseError(lineno, f"empty simplex in {tok!r}")
    if len(set(vs)) != len(vs):
        raise ParseError(lineno, f"repeated vertex in simplex {tok!r}")
    return tuple(sorted(vs))


def _simplex_list(text: str, lineno: int) -> List[Simplex]:
    return [_simplex_token(part, lineno) for part in text.split(";") if part.strip()]


@dataclass
class _RawComplex:
    name: str
    declared_dim: int
    line: int
    tops: List[Simplex] = field(default_factory=list)
    skeleta: Dict[int, List[Simplex]] = field(default_factory=dict)
    skeleton_lines: Dict[int, int] = field(default_factory=dict)
    pairs: List[Tuple[int, int, Simplex, List[Tuple[Simplex, Simplex]]]] = field(default_factory=list)


def parse_scx(text: str) -> ScxDocument:
    """Parse an SCX document; raises ParseError with a line number on bad input."""
    raw_complexes: Dict[str, _RawComplex] = {}
    current_cx: Optional[_RawComplex] = None
    current_map: Optional[ScxMap] = None
    doc = ScxDocument()
    any_content = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        any_content = True
        words = line.split()
        head = words[0]

        if head == "complex":
            if len(words) != 4 or words[2] != "dim":
                raise ParseError(lineno, "expected: complex <name> dim <n>")
            name = words[1]
            if name in raw_complexes:
                raise ParseError(lineno, f"complex {name!r} declared twice")
            try:
                n = int(words[3])
            except ValueError:
                raise ParseError(lineno, f"bad dimension {words[3]!r}")
            current_cx = _RawComplex(name, n, lineno)
            raw_complexes[name] = current_cx
            current_map = None
        elif head == "top":
            if current_cx is None:
                raise ParseError(lineno, "top line outside a complex block")
            if len(words) != 2:
                raise ParseError(lineno, "expected: top v1,v2,...")
            current_cx.tops.append(_simplex_token(words[1], lineno))
        elif head == "skeleton":
            if current_cx is None:
                raise ParseError(lineno, "skeleton line outside a complex block")
            try:
                j = int(words[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "expected: skeleton <j> s1; s2; ...")
            rest = line.split(None, 2)[2] if len(words) > 2 else ""
            gens = _simplex_list(rest, lineno)
            if not gens:
                raise ParseError(lineno, "skeleton line lists no simplices")
            current_cx.skeleta.setdefault(j, []).extend(gens)
            current_cx.skeleton_lines[j] = lineno
        elif head == "pair":
            if current_cx is None:
                raise ParseError(lineno, "pair line outside a complex block")
            try:
                d = int(words[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "expected: pair <d> face <v,...> : sheets")
            if len(words) < 5 or words[2] != "face" or ":" not in line:
                raise ParseError(lineno, "expected: pair <d> face <v,...> : sheets")
            face = _simplex_token(words[3], lineno)
            _, _, sheets_part = line.partition(":")
            pairs = []
            for chunk in sheets_part.split():
                if "|" not in chunk:
                    raise ParseError(lineno, f"sheet pair {chunk!r} needs a '|'")
                a, b = chunk.split("|", 1)
                pairs.append((_simplex_token(a, lineno), _simplex_token(b, lineno)))
            if dim(face) != d - 1:
                raise ParseError(lineno, f"face {face} has dimension {dim(face)}, expected {d - 1}")
            current_cx.pairs.append((lineno, d, face, pairs))
        elif head == "map":
            if len(words) < 6 or words[2] != "from" or words[4] != "to" or ":" not in line:
                raise ParseError(lineno, "expected: map <name> from <cx> to <cx> : v->w ...")
            name = words[1]
            if name in doc.maps:
                raise ParseError(lineno, f"map {name!r} declared twice")
            _, _, assigns = line.partition(":")
            vm = {}
            for chunk in assigns.split():
                if "->" not in chunk:
                    raise ParseError(lineno, f"bad vertex assignment {chunk!r}")
                a, b = chunk.split("->", 1)
                if not a or not b:
                    raise ParseError(lineno, f"bad vertex assignment {chunk!r}")
                vm[a] = b
            current_map = ScxMap(name, words[3], words[5], vm, [])
            doc.maps[name] = current_map
        elif head == "exceptional":
            if current_map is None:
                raise ParseError(lineno, "exceptional line outside a map block")
            if len(words) != 2:
                raise ParseError(lineno, "expected: exceptional v1,v2,...")
            current_map.exceptional.extend(v.strip() for v in words[1].split(",") if v.strip())
        elif head in ("cycle", "dualcycle"):
            if (len(words) < 7 or words[2] != "in" or words[4] != "deg" or ":" not in line):
                raise ParseError(lineno, f"expected: {head} <name> in <cx> deg <k> : s1; ...")
            name = words[1]
            if name in doc.cycles:
                raise ParseError(lineno, f"cycle {name!r} declared twice")
            try:
                k = int(words[5])
            except ValueError:
                raise ParseError(lineno, f"bad degree {words[5]!r}")
            _, _, body = line.partition(":")
            doc.cycles[name] = ScxCycle(name, words[3], k, _simplex_list(body, lineno),
                                        dual=(head == "dualcycle"))
        elif head == "dualpair":
            if len(words) != 4:
                raise ParseError(lineno, "expected: dualpair <k> <cycle> <dualcycle>")
            try:
                k = int(words[1])
            except ValueError:
                raise ParseError(lineno, f"bad degree {words[1]!r}")
            doc.dualpairs.append((k, words[2], words[3]))
        elif head == "expect":
            doc.expectations.append(_parse_expect(words, line, lineno))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")

    if not any_content:
        raise ParseError(0, "empty input")
    if not raw_complexes:
        raise ParseError(0, "no complex declared")

    for name, rc in raw_complexes.items():
        doc.complexes[name] = _resolve_complex(rc)
    _resolve_references(doc, raw_complexes)
    return doc


def _parse_expect(words: List[str], line: str, lineno: int) -> Expectation:
    body = words[1:]
    if not body:
        raise ParseError(lineno, "empty expect line")
    kind = body[0]
    try:
        if kind == "h":
            return Expectation("h", lineno, k=int(body[1]), value=int(body[3]))
        if kind == "ih" and body[1] == "c":
            return Expectation("ih_c", lineno, k=int(body[2]), value=int(body[4]))
        if kind == "ih" and body[1] == "cl":
            exp = Expectation("ih_cl", lineno, k=int(body[2]), value=int(body[4]))
            if len(body) > 5:
                if body[5] != "open" or body[6] != "star":
                    raise ParseError(lineno, "expected: ... open star <vertex>")
                exp.name = body[7]
            return exp
        if kind == "small":
            return Expectation("small", lineno, name=body[1], flag=body[3])
        if kind == "smallres":
            return Expectation("smallres", lineno, name=body[1], flag=body[3])
        if kind == "formulas":
            exp = Expectation("formulas", lineno, flag=body[2])
            if len(body) > 3 and body[3] == "map":
                exp.name = body[4]
            return exp
        if kind == "pairrank":
            return Expectation("pairrank", lineno, k=int(body[1]), value=int(body[3]))
        if kind == "mv":
            return Expectation("mv", lineno, value=int(body[2]))
        if kind == "frontier":
            return Expectation("frontier", lineno, flag=body[2])
    except (IndexError, ValueError):
        raise ParseError(lineno, f"malformed expect line: {line!r}")
    raise ParseError(lineno, f"unknown expectation {kind!r}")


def _resolve_complex(rc: _RawComplex) -> ScxComplex:
    if not rc.tops:
        raise ParseError(rc.line, f"complex {rc.name!r} has no top lines")
    cx = SimplicialComplex.from_maximal(rc.tops)
    if cx.n != rc.declared_dim:
        raise ParseError(rc.line, f"complex {rc.name!r} has dimension {cx.n}, declared {rc.declared_dim}")
    for j, gens in rc.skeleta.items():
        lineno = rc.skeleton_lines[j]
        if not (0 <= j < cx.n):
            raise NonNestedSkeleton(lineno, f"skeleton level {j} outside 0..{cx.n - 1}")
        for g in gens:
            if g not in cx.simplices:
                raise UnknownVertex(lineno, f"skeleton simplex {g} is not in the complex")
            if dim(g) > j:
                raise NonNestedSkeleton(lineno, f"skeleton {j} lists a {dim(g)}-simplex {g}")
    try:
        filtration = Filtration.from_lower_skeleta(cx, rc.skeleta) if rc.skeleta \
            else Filtration.trivial(cx)
    except MalformedFiltration as exc:
        raise NonNestedSkeleton(max(rc.skeleton_lines.values(), default=rc.line), str(exc))
    explicit: Dict[Simplex, List[Tuple[Simplex, Simplex]]] = {}
    for lineno, d, face, pairs in rc.pairs:
        if face not in cx.simplices:
            raise UnknownVertex(lineno, f"pairing face {face} is not in the complex")
        for a, b in pairs:
            for s in (a, b):
                if s not in cx.simplices:
                    raise UnknownVertex(lineno, f"sheet {s} is not in the complex")
                if dim(s) != d:
                    raise ParseError(lineno, f"sheet {s} has dimension {dim(s)}, expected {d}")
        explicit.setdefault(face, []).extend(pairs)
    pairing = SheetPairing(cx, explicit)
    return ScxComplex(rc.name, rc.declared_dim, cx, filtration, pairing,
                      {j: sorted(set(g)) for j, g in rc.skeleta.items()},
                      [(d, face, pairs) for _, d, face, pairs in rc.pairs])


def _resolve_references(doc: ScxDocument, raw: Dict[str, _RawComplex]) -> None:
    for m in doc.maps.values():
        for cname in (m.source, m.target):
            if cname not in doc.complexes:
                raise ParseError(0, f"map {m.name!r} references unknown complex {cname!r}")
        src = doc.complexes[m.source].complex
        for v in m.vertex_map:
            if (v,) not in src.simplices:
                raise UnknownVertex(0, f"map {m.name!r} maps unknown vertex {v!r}")
        for v in m.exceptional:
            if (v,) not in src.simplices:
                raise UnknownVertex(0, f"map {m.name!r} lists unknown exceptional vertex {v!r}")
    for c in doc.cycles.values():
        if c.complex not in doc.complexes:
            raise ParseError(0, f"cycle {c.name!r} references unknown complex {c.complex!r}")
        cx = doc.complexes[c.complex].complex
        for s in c.simplices:
            if s not in cx.simplices:
                raise UnknownVertex(0, f"cycle {c.name!r} lists unknown simplex {s}")
    for k, a, b in doc.dualpairs:
        for name in (a, b):
            if name not in doc.cycles:
                raise ParseError(0, f"dualpair references unknown cycle {name!r}")


def emit_scx(doc: ScxDocument) -> str:
    """Canonical text for a document; parse(emit(doc)) reproduces it."""
    out: List[str] = []
    for cx in doc.complexes.values():
        out.append(f"complex {cx.name} dim {cx.declared_dim}")
        maximal = _maximal_simplices(cx.complex)
        for t in maximal:
            out.append(f"top {','.join(t)}")
        for j in sorted(cx.skeleton_generators):
            gens = "; ".join(",".join(s) for s in cx.skeleton_generators[j])
            out.append(f"skeleton {j} {gens}")
        for d, face, pairs in cx.pair_lines:
            chunk = " ".join(f"{','.join(a)}|{','.join(b)}" for a, b in pairs)
            out.append(f"pair {d} face {','.join(face)} : {chunk}")
    for m in doc.maps.values():
        assigns = " ".join(f"{a}->{b}" for a, b in sorted(m.vertex_map.items()))
        out.append(f"map {m.name} from {m.source} to {m.target} : {assigns}")
        if m.exceptional:
            out.append(f"exceptional {','.join(sorted(m.exceptional))}")
    for c in doc.cycles.values():
        head = "dualcycle" if c.dual else "cycle"
        body = "; ".join(",".join(s) for s in c.simplices)
        out.append(f"{head} {c.name} in {c.complex} deg {c.k} : {body}")
    for k, a, b in doc.dualpairs:
        out.append(f"dualpair {k} {a} {b}")
    for e in doc.expectations:
        out.append(_emit_expect(e))
    return "\n".join(out) + "\n"


def _maximal_simplices(cx: SimplicialComplex) -> List[Simplex]:
    out = []
    for s in sorted(cx.simplices, key=lambda t: (-len(t), t)):
        if not any(set(s) < set(t) for t in out):
            out.append(s)
    return sorted(out)


def _emit_expect(e: Expectation) -> str:
    if e.kind == "h":
        return f"expect h {e.k} = {e.value}"
    if e.kind == "ih_c":
        return f"expect ih c {e.k} = {e.value}"
    if e.kind == "ih_cl":
        tail = f" open star {e.name}" if e.name else ""
        return f"expect ih cl {e.k} = {e.value}{tail}"
    if e.kind == "small":
        return f"expect small {e.name} = {e.flag}"
    if e.kind == "smallres":
        return f"expect smallres {e.name} = {e.flag}"
    if e.kind == "formulas":
        tail = f" map {e.name}" if e.name else ""
        return f"expect formulas = {e.flag}{tail}"
    if e.kind == "pairrank":
        return f"expect pairrank {e.k} = {e.value}"
    if e.kind == "mv":
        return f"expect mv = {e.value}"
    if e.kind == "frontier":
        return f"expect frontier = {e.flag}"
    raise ValueError(f"unknown expectation kind {e.kind!r}")
