"""GF(2) chains, boundary operators, sheet pairings and pushforward.

A chain is a set of k-simplices of a fixed ambient complex; addition is
symmetric difference.  The pseudoboundary of a chain is read off a sheet
pairing: at each codimension-1 face, incident top simplices of the chain
must split into matched pairs, otherwise the face enters the pseudoboundary.
Faces with exactly two incident sheets in the ambient complex are paired by
default (interior manifold points); everything else needs explicit pairs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import MismatchedComplex, NotASimplex, StrathomWarning
from .scomplex import Simplex, SimplicialComplex, boundary_faces, dim, faces, is_face
from .strat import Stratum


@dataclass(frozen=True)
class Chain:
    complex: SimplicialComplex
    k: int
    simplices: FrozenSet[Simplex]

    def __post_init__(self):
        for s in self.simplices:
            if dim(s) != self.k:
                raise NotASimplex(f"{s} has dimension {dim(s)}, chain has degree {self.k}")
            if s not in self.complex.simplices:
                raise NotASimplex(f"{s} is not in the ambient complex")

    @classmethod
    def make(cls, x: SimplicialComplex, k: int, simplices: Iterable[Iterable[str]] = ()) -> "Chain":
        return cls(x, k, frozenset(tuple(sorted(s)) for s in simplices))

    def __add__(self, other: "Chain") -> "Chain":
        if self.complex != other.complex or self.k != other.k:
            raise MismatchedComplex("chains must share complex and degree")
        return Chain(self.complex, self.k, self.simplices ^ other.simplices)

    def __bool__(self) -> bool:
        return bool(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def sorted(self) -> List[Simplex]:
        return sorted(self.simplices)


def boundary(c: Chain) -> Chain:
    """Odd-incidence boundary: the (k-1)-faces meeting an odd number of chain simplices."""
    if c.k == 0:
        warnings.warn("boundary of a 0-chain is zero by convention", StrathomWarning)
        return Chain(c.complex, -1, frozenset())
    counts: Dict[Simplex, int] = {}
    for s in c.simplices:
        for f in boundary_faces(s):
            counts[f] = counts.get(f, 0) + 1
    odd = frozenset(f for f, n in counts.items() if n & 1)
    return Chain(c.complex, c.k - 1, odd)


def boundary_via_link(c: Chain) -> Chain:
    """Boundary read from link parity: (k-1)-faces whose link inside the
    subcomplex generated by the chain has odd Euler characteristic."""
    if c.k == 0:
        warnings.warn("boundary of a 0-chain is zero by convention", StrathomWarning)
        return Chain(c.complex, -1, frozenset())
    gen: set = set()
    for s in c.simplices:
        gen.update(faces(s))
    sub = SimplicialComplex(gen)
    out = set()
    for f in sub.simplices_of_dim(c.k - 1):
        if sub.link(f).euler_char() % 2 == 1:
            out.add(f)
    return Chain(c.complex, c.k - 1, frozenset(out))


def support_dim_in(c: Chain, s: Stratum) -> int:
    """Max dimension of an open simplex of the stratum under the chain's support; -1 if none."""
    best = -1
    for t in s.open_simplices:
        if dim(t) <= best:
            continue
        for sim in c.simplices:
            if is_face(t, sim):
                best = dim(t)
                break
    return best


class SheetPairing:
    """Partial matchings of incident d-simplices across each (d-1)-face.

    ``explicit`` maps a face to a tuple of unordered sheet pairs and fully
    replaces the default rule at that face.  The default pairs the two
    incident sheets of any two-sheeted face and leaves everything else
    unmatched.
    """

    def __init__(self, x: SimplicialComplex,
                 explicit: Optional[Mapping[Simplex, Sequence[Tuple[Simplex, Simplex]]]] = None):
        self.complex = x
        table: Dict[Simplex, Tuple[Tuple[Simplex, Simplex], ...]] = {}
        for face, pairs in (explicit or {}).items():
            face = tuple(sorted(face))
            if face not in x.simplices:
                raise NotASimplex(f"pairing face {face} is not in the complex")
            seen: set = set()
            norm = []
            for a, b in pairs:
                a, b = tuple(sorted(a)), tuple(sorted(b))
                if a == b:
                    raise NotASimplex(f"pair at {face} repeats the sheet {a}")
                for s in (a, b):
                    if s not in x.simplices or dim(s) != dim(face) + 1 or not is_face(face, s):
                        raise NotASimplex(f"{s} is not a sheet incident to {face}")
                    if s in seen:
                        raise NotASimplex(f"sheet {s} appears in two pairs at {face}")
                    seen.add(s)
                norm.append((a, b) if a <= b else (b, a))
            table[face] = tuple(sorted(norm))
        self.explicit = table

    def matching_at(self, face: Simplex) -> Tuple[Tuple[Tuple[Simplex, Simplex], ...], Tuple[Simplex, ...]]:
        """(matched pairs, unmatched sheets) among all incident sheets of the face."""
        incident = self.complex.cofaces(face)
        if face in self.explicit:
            pairs = self.explicit[face]
            used = {s for p in pairs for s in p}
            return pairs, tuple(s for s in incident if s not in used)
        if len(incident) == 2:
            return ((incident[0], incident[1]),), ()
        return (), tuple(incident)

    def restrict(self, sub: SimplicialComplex) -> "SheetPairing":
        """Pairing induced on a subcomplex; pairs with a missing sheet are dropped."""
        table: Dict[Simplex, List[Tuple[Simplex, Simplex]]] = {}
        for face, pairs in self.explicit.items():
            if face not in sub.simplices:
                continue
            kept = [(a, b) for a, b in pairs if a in sub.simplices and b in sub.simplices]
            table[face] = kept
        return SheetPairing(sub, table)


def sigma(c: Chain, p: SheetPairing) -> Chain:
    """Pseudoboundary: (k-1)-faces where the chain's sheets are not a union of matched pairs."""
    if c.k == 0:
        warnings.warn("pseudoboundary of a 0-chain is zero by convention", StrathomWarning)
        return Chain(c.complex, -1, frozenset())
    if p.complex != c.complex:
        raise MismatchedComplex("pairing and chain live on different complexes")
    incident_faces: set = set()
    for s in c.simplices:
        incident_faces.update(boundary_faces(s))
    out = set()
    for f in sorted(incident_faces):
        pairs, unmatched = p.matching_at(f)
        bad = False
        for a, b in pairs:
            if (a in c.simplices) != (b in c.simplices):
                bad = True
                break
        if not bad:
            bad = any(s in c.simplices for s in unmatched)
        if bad:
            out.add(f)
    return Chain(c.complex, c.k - 1, frozenset(out))


class SimplicialMap:
    """A vertex map whose simplex images all span simplices of the target."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 vertex_map: Mapping[str, str]):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        for v in source.vertices:
            if v not in self.vertex_map:
                raise NotASimplex(f"vertex map misses {v!r}")
        for s in source.simplices:
            if self.apply(s) not in target.simplices:
                raise NotASimplex(f"image of {s} is not a simplex of the target")

    def apply(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))


def pushforward(f: SimplicialMap, c: Chain) -> Chain:
    """Odd-count image chain; simplices collapsed to lower dimension drop out."""
    if c.complex != f.source:
        raise MismatchedComplex("chain does not live on the map's source")
    counts: Dict[Simplex, int] = {}
    for s in c.simplices:
        t = f.apply(s)
        if dim(t) == c.k:
            counts[t] = counts.get(t, 0) + 1
    odd = frozenset(t for t, n in counts.items() if n & 1)
    return Chain(f.target, c.k, odd)


def image_closure(f: SimplicialMap, simplices: Iterable[Simplex]) -> FrozenSet[Simplex]:
    """Closure of the set-theoretic image: image simplices and all their faces."""
    out: set = set()
    for s in simplices:
        out.update(faces(f.apply(s)))
    return frozenset(out)
