"""Filtrations by subcomplexes and their strata.

A filtration is the combinatorial shadow of a filtration by closed
subvarieties: X_n = X, each X_j downward-closed, nested, with either
dim X_j = j or X_j = X_{j-1}.  Strata are connected components of the
differences X_j \\ X_{j-1}, viewed as sets of open simplices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .errors import MalformedFiltration, MismatchedComplex
from .scomplex import Simplex, SimplicialComplex, dim, faces


class Filtration:
    """Skeleta X_0 <= X_1 <= ... <= X_n = X, each a downward-closed simplex set."""

    def __init__(self, x: SimplicialComplex, skeleta: Iterable[Iterable[Simplex]]):
        self.x = x
        sk = [frozenset(s) for s in skeleta]
        if len(sk) != x.n + 1:
            raise MalformedFiltration(f"need {x.n + 1} skeleta for a {x.n}-complex, got {len(sk)}")
        if sk and sk[-1] != x.simplices:
            raise MalformedFiltration("top skeleton must be the whole complex")
        prev: FrozenSet[Simplex] = frozenset()
        for j, s in enumerate(sk):
            if not (prev <= s):
                raise MalformedFiltration(f"skeleton {j} does not contain skeleton {j - 1}")
            for t in s:
                if t not in x.simplices:
                    raise MalformedFiltration(f"skeleton {j} contains a foreign simplex {t}")
                for f in faces(t):
                    if f not in s:
                        raise MalformedFiltration(f"skeleton {j} is not closed under faces at {t}")
            d = max((dim(t) for t in s), default=-1)
            if d > j:
                raise MalformedFiltration(f"skeleton {j} has dimension {d} > {j}")
            if j > 0 and s != prev and d != j:
                raise MalformedFiltration(
                    f"skeleton {j} must either equal skeleton {j - 1} or have dimension {j}")
            prev = s
        self.skeleta: List[FrozenSet[Simplex]] = sk
        self._strata: Optional[List[Stratum]] = None

    @classmethod
    def trivial(cls, x: SimplicialComplex) -> "Filtration":
        return cls(x, [frozenset() for _ in range(x.n)] + [x.simplices])

    @classmethod
    def from_lower_skeleta(cls, x: SimplicialComplex,
                           lower: Dict[int, Iterable[Simplex]]) -> "Filtration":
        """Build skeleta from generators for the proper levels; level j closes
        level generators downward and accumulates lower levels."""
        sk: List[Set[Simplex]] = [set() for _ in range(x.n + 1)]
        for j, gens in lower.items():
            for g in gens:
                sk[j].update(faces(g))
        acc: Set[Simplex] = set()
        out = []
        for j in range(x.n + 1):
            acc |= sk[j]
            out.append(frozenset(acc))
        out[x.n] = x.simplices
        return cls(x, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Filtration) and self.x == other.x
                and self.skeleta == other.skeleta)

    def __hash__(self):
        return hash((self.x, tuple(self.skeleta)))


@dataclass(frozen=True)
class Stratum:
    """One connected component of X_level \\ X_{level-1}."""

    level: int
    dim: int
    codim: int
    open_simplices: FrozenSet[Simplex]
    component_id: str

    def __contains__(self, s: Simplex) -> bool:
        return s in self.open_simplices


def strata(f: Filtration) -> List[Stratum]:
    """Partition of all open simplices into strata."""
    if f._strata is not None:
        return f._strata
    out: List[Stratum] = []
    prev: FrozenSet[Simplex] = frozenset()
    n = f.x.n
    for j, sk in enumerate(f.skeleta):
        diff = sk - prev
        prev = sk
        if not diff:
            continue
        for comp in _components(diff):
            d = max(dim(s) for s in comp)
            cid = f"j{j}:{min(comp)}"
            out.append(Stratum(j, d, n - d, frozenset(comp), cid))
    out.sort(key=lambda s: (s.level, s.component_id))
    f._strata = out
    return out


def _components(simps: FrozenSet[Simplex]) -> List[Set[Simplex]]:
    """Connected components under 'one is a face of the other' within the set."""
    simps_list = sorted(simps)
    parent = {s: s for s in simps_list}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for s in simps_list:
        for g in faces(s):
            if g != s and g in simps:
                union(s, g)
    groups: Dict[Simplex, Set[Simplex]] = {}
    for s in simps_list:
        groups.setdefault(find(s), set()).add(s)
    return [groups[r] for r in sorted(groups)]


def stratum_of(f: Filtration) -> Dict[Simplex, Stratum]:
    table: Dict[Simplex, Stratum] = {}
    for st in strata(f):
        for s in st.open_simplices:
            table[s] = st
    return table


def closure(simps: Iterable[Simplex]) -> Set[Simplex]:
    out: Set[Simplex] = set()
    for s in simps:
        out.update(faces(s))
    return out


def check_frontier(f: Filtration) -> Tuple[bool, List[Tuple[str, str]]]:
    """Frontier condition: a stratum meeting another's closure lies inside it."""
    sts = strata(f)
    closures = {st.component_id: closure(st.open_simplices) for st in sts}
    violations = []
    for s1 in sts:
        for s2 in sts:
            if s1.component_id == s2.component_id:
                continue
            cl2 = closures[s2.component_id]
            meets = any(s in cl2 for s in s1.open_simplices)
            if meets and not all(s in cl2 for s in s1.open_simplices):
                violations.append((s1.component_id, s2.component_id))
    return (not violations, violations)


def refines(f1: Filtration, f2: Filtration) -> bool:
    """True iff every stratum of f1 lies inside a stratum of f2."""
    if f1.x != f2.x:
        raise MismatchedComplex("filtrations live on different complexes")
    table2 = stratum_of(f2)
    for st in strata(f1):
        targets = {table2[s].component_id for s in st.open_simplices}
        if len(targets) != 1:
            return False
    return True


def common_refinement(f1: Filtration, f2: Filtration) -> Filtration:
    """Skeleton-intersection refinement: level j collects every X_a n X'_b of
    dimension <= j."""
    if f1.x != f2.x:
        raise MismatchedComplex("filtrations live on different complexes")
    n = f1.x.n
    pieces = []
    for a in range(n + 1):
        for b in range(n + 1):
            inter = f1.skeleta[a] & f2.skeleta[b]
            d = max((dim(s) for s in inter), default=-1)
            pieces.append((d, inter))
    skeleta = []
    for j in range(n + 1):
        level: Set[Simplex] = set()
        for d, inter in pieces:
            if d <= j:
                level |= inter
        skeleta.append(frozenset(level))
    return Filtration(f1.x, skeleta)


def subcomplex_filtration(x: SimplicialComplex, y: Iterable[Simplex]) -> Filtration:
    """The filtration adapted to a closed subcomplex y: skeleta of y, then x."""
    yset = frozenset(y)
    d = max((dim(s) for s in yset), default=-1)
    skeleta = []
    for j in range(x.n):
        skeleta.append(frozenset(s for s in yset if dim(s) <= min(j, d)))
    skeleta.append(x.simplices)
    return Filtration(x, skeleta)


