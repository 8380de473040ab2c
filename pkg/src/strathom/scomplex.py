"""Finite abstract simplicial complexes.

Simplices are sorted tuples of opaque string vertex ids.  Complexes are
immutable once built; every constructor returns a downward-closed simplex set.
Barycentric subdivision names each new vertex by the sorted vertex list of the
base simplex it subdivides, joined with '.', so output is stable and diffable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import ApexCollision, EmptyInput, NotASimplex, NotPure, StrathomWarning

Simplex = Tuple[str, ...]


def simplex(vertices: Iterable[str]) -> Simplex:
    vs = tuple(sorted(vertices))
    if not vs:
        raise NotASimplex("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise NotASimplex(f"repeated vertex in {vs}")
    return vs


def dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> List[Simplex]:
    """All nonempty faces of s, including s itself."""
    out = []
    for r in range(1, len(s) + 1):
        out.extend(combinations(s, r))
    return out


def boundary_faces(s: Simplex) -> List[Simplex]:
    """Codimension-1 faces; empty for a vertex."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def is_face(a: Simplex, b: Simplex) -> bool:
    return set(a) <= set(b)


class SimplicialComplex:
    """A finite, downward-closed set of simplices."""

    def __init__(self, simplices: Iterable[Simplex]):
        sset = frozenset(simplices)
        for s in sset:
            for f in boundary_faces(s):
                if f not in sset:
                    raise NotASimplex(f"complex not closed under faces: {f} missing under {s}")
        self.simplices: FrozenSet[Simplex] = sset
        self.n: int = max((dim(s) for s in sset), default=-1)
        self._by_dim: Dict[int, List[Simplex]] = {}
        for s in sset:
            self._by_dim.setdefault(dim(s), []).append(s)
        for lst in self._by_dim.values():
            lst.sort()
        self._cofaces: Optional[Dict[Simplex, List[Simplex]]] = None

    @classmethod
    def from_maximal(cls, maximal: Iterable[Iterable[str]]) -> "SimplicialComplex":
        tops = [simplex(m) for m in maximal]
        if not tops:
            raise EmptyInput("no maximal simplices given")
        tops_set = set(tops)
        if len(tops_set) != len(tops):
            warnings.warn("duplicate maximal simplices dropped", StrathomWarning)
        redundant = {s for s in tops_set for t in tops_set if s != t and is_face(s, t)}
        if redundant:
            warnings.warn(f"{len(redundant)} maximal simplices are faces of others", StrathomWarning)
        closure = set()
        for t in tops_set:
            closure.update(faces(t))
        return cls(closure)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.simplices

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    def simplices_of_dim(self, k: int) -> List[Simplex]:
        return list(self._by_dim.get(k, []))

    def counts(self) -> List[int]:
        return [len(self._by_dim.get(k, [])) for k in range(self.n + 1)]

    @property
    def vertices(self) -> List[str]:
        return [s[0] for s in self.simplices_of_dim(0)]

    def is_pure(self) -> bool:
        if self.is_empty:
            return True
        top = set()
        for s in self._by_dim.get(self.n, []):
            top.update(faces(s))
        return top == set(self.simplices)

    def cofaces(self, s: Simplex) -> List[Simplex]:
        """Codimension-1 cofaces of s."""
        if self._cofaces is None:
            table: Dict[Simplex, List[Simplex]] = {}
            for t in self.simplices:
                for f in boundary_faces(t):
                    table.setdefault(f, []).append(t)
            for lst in table.values():
                lst.sort()
            self._cofaces = table
        return list(self._cofaces.get(s, []))

    def link(self, s: Simplex) -> "SimplicialComplex":
        if s not in self.simplices:
            raise NotASimplex(f"{s} is not a simplex of the complex")
        sset = set(s)
        out = {t for t in self.simplices
               if not (set(t) & sset) and tuple(sorted(set(t) | sset)) in self.simplices}
        return SimplicialComplex(out)

    def euler_char(self) -> int:
        return sum((-1) ** k * len(self._by_dim.get(k, [])) for k in range(self.n + 1))

    def cone(self, apex: str) -> "SimplicialComplex":
        if (apex,) in self.simplices:
            raise ApexCollision(f"apex {apex!r} is already a vertex")
        out = set(self.simplices)
        out.add((apex,))
        for s in self.simplices:
            out.add(tuple(sorted(s + (apex,))))
        return SimplicialComplex(out)

    def barycentric(self) -> Tuple["SimplicialComplex", Dict[Simplex, Simplex]]:
        """First barycentric subdivision plus the carrier map.

        Subdivision simplices are flags s0 < s1 < ... of base simplices; the
        carrier of a flag simplex is its largest element (the smallest base
        simplex containing it).
        """
        bary = {s: ".".join(s) for s in self.simplices}
        strict_cofaces: Dict[Simplex, List[Simplex]] = {s: [] for s in self.simplices}
        for t in self.simplices:
            tset = set(t)
            for s in self.simplices:
                if s != t and set(s) < tset:
                    strict_cofaces[s].append(t)
        out = {}

        def extend(flag: Tuple[Simplex, ...]):
            sub = tuple(sorted(bary[s] for s in flag))
            out[sub] = flag[-1]
            for t in strict_cofaces[flag[-1]]:
                extend(flag + (t,))

        for s in sorted(self.simplices):
            extend((s,))
        sd = SimplicialComplex(out.keys())
        return sd, out

    def dual_blocks(self) -> "DualBlockDecomposition":
        if not self.is_pure():
            raise NotPure("dual blocks need a pure complex")
        sd, carrier = self.barycentric()
        # invert the subdivision naming to read a flag's minimal element
        name_to_base = {".".join(s): s for s in self.simplices}
        block_of: Dict[Simplex, set] = {s: set() for s in self.simplices}
        for sub in sd.simplices:
            least = min((name_to_base[v] for v in sub), key=lambda b: (len(b), b))
            block_of[least].add(sub)
        return DualBlockDecomposition(self, sd, carrier,
                                      {s: frozenset(v) for s, v in block_of.items()})

    def subcomplex(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        return SimplicialComplex(simplices)

    def deleted_subcomplex(self, vertices: Iterable[str]) -> "SimplicialComplex":
        """Simplices disjoint from the given vertices (the complement of their open stars)."""
        vs = set(vertices)
        return SimplicialComplex({s for s in self.simplices if not (set(s) & vs)})

    def open_star(self, s: Simplex) -> FrozenSet[Simplex]:
        """All simplices having s as a face (an open set of open simplices)."""
        sset = set(s)
        return frozenset(t for t in self.simplices if sset <= set(t))

    def closed_star(self, s: Simplex) -> "SimplicialComplex":
        out = set()
        for t in self.open_star(s):
            out.update(faces(t))
        return SimplicialComplex(out)


def suspension(x: SimplicialComplex, apex_a: str, apex_b: str) -> SimplicialComplex:
    """Two cones with distinct apexes over the same base."""
    if apex_a == apex_b:
        raise ApexCollision("suspension apexes must differ")
    ca = x.cone(apex_a)
    cb = x.cone(apex_b)
    return SimplicialComplex(ca.simplices | cb.simplices)


@dataclass(frozen=True)
class DualBlockDecomposition:
    """Dual blocks of a pure complex inside its barycentric subdivision.

    The block of a base simplex s is the set of subdivision flags whose
    minimal element is s; blocks partition the subdivision's simplices.
    """

    base: SimplicialComplex
    subdivision: SimplicialComplex
    carrier: Dict[Simplex, Simplex]
    block_of: Dict[Simplex, FrozenSet[Simplex]]

    def block_top(self, s: Simplex) -> List[Simplex]:
        """The (n - dim s)-dimensional simplices of the block of s."""
        d = self.base.n - dim(s)
        return sorted(t for t in self.block_of[s] if dim(t) == d)


def vertex_links_are_circles(x: SimplicialComplex) -> bool:
    """Certify a 2-complex as a closed surface: every vertex link is one cycle."""
    if x.n != 2:
        return False
    for v in x.simplices_of_dim(0):
        lk = x.link(v)
        if lk.is_empty or lk.n != 1:
            return False
        # single cycle: connected, every vertex has exactly two incident edges
        deg: Dict[Simplex, int] = {}
        for e in lk.simplices_of_dim(1):
            for u in boundary_faces(e):
                deg[u] = deg.get(u, 0) + 1
        if any(d != 2 for d in deg.values()):
            return False
        if len(deg) != len(lk.simplices_of_dim(0)) or lk.euler_char() != 0:
            return False
        if not _connected(lk):
            return False
    return True


def _connected(x: SimplicialComplex) -> bool:
    if x.is_empty:
        return True
    verts = x.simplices_of_dim(0)
    seen = {verts[0]}
    frontier = [verts[0]]
    while frontier:
        v = frontier.pop()
        for e in x.cofaces(v):
            for u in boundary_faces(e):
                if u != v and u not in seen:
                    seen.add(u)
                    frontier.append(u)
    return len(seen) == len(verts)
