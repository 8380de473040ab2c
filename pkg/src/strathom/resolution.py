"""Resolutions as simplicial maps with exceptional data.

A resolution datum carries a simplicial map X~ -> X, a closed discriminant
subcomplex y of the target and its full preimage e; off e the map must be a
bijection on open simplices (so every simplex outside y has exactly one
dimension-preserving lift).  Smallness compares fiber dimensions with half
the stratum codimension; the strict transform of a chain collects the lifts
of its simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from .chains import Chain, SheetPairing, SimplicialMap, boundary, pushforward
from .engine import AllowableComplex
from .errors import MalformedResolution, NonConstantFiberDim, NotSmall
from .perversity import PerversityPair
from .scomplex import Simplex, dim, faces
from .strat import Filtration, strata

COSET_SEARCH_LIMIT = 1 << 12


class ResolutionDatum:
    """A simplicial map with discriminant y and exceptional set e = preimage(y)."""

    def __init__(self, pi: SimplicialMap, y: Iterable[Simplex]):
        self.map = pi
        yset = frozenset(tuple(sorted(s)) for s in y)
        for s in yset:
            if s not in pi.target.simplices:
                raise MalformedResolution(f"discriminant simplex {s} is not in the target")
            for t in faces(s):
                if t not in yset:
                    raise MalformedResolution("discriminant must be a closed subcomplex")
        self.y = yset
        self.e = frozenset(s for s in pi.source.simplices if pi.apply(s) in yset)
        lifts: Dict[Simplex, List[Simplex]] = {}
        for s in pi.source.simplices:
            if s in self.e:
                continue
            image = pi.apply(s)
            if dim(image) != dim(s):
                raise MalformedResolution(
                    f"{s} is outside the exceptional set but collapses onto {image}")
            lifts.setdefault(image, []).append(s)
        outside = {s for s in pi.target.simplices if s not in yset}
        for s in sorted(outside):
            found = lifts.get(s, [])
            if len(found) != 1:
                raise MalformedResolution(
                    f"{s} has {len(found)} dimension-preserving lifts, expected exactly 1")
        extra = set(lifts) - outside
        if extra:  # pragma: no cover - excluded by e's definition
            raise MalformedResolution(f"lift table covers discriminant simplices: {extra}")
        for s in yset:
            if not any(pi.apply(t) == s for t in pi.source.simplices):
                raise MalformedResolution(f"discriminant simplex {s} has no preimage")
        self._lift = {s: ls[0] for s, ls in lifts.items()}


@dataclass(frozen=True)
class SmallnessReport:
    small: bool
    by_stratum: Tuple[Tuple[str, int, int, bool], ...]  # (stratum, fiber_dim, codim, ok)
    deep_fiber_rows: Tuple[Tuple[int, int, int, bool], ...]  # (i, dim locus, n - 2i, ok)

    def __bool__(self) -> bool:
        return self.small


def check_small(r: ResolutionDatum, f: Filtration) -> SmallnessReport:
    """Fiber-dimension test: over every stratum below top dimension the fiber
    dimension must be smaller than half the stratum codimension."""
    pi = r.map
    n = pi.target.n
    fiber_of: Dict[Simplex, int] = {}
    for s in pi.source.simplices:
        image = pi.apply(s)
        drop = dim(s) - dim(image)
        fiber_of[image] = max(fiber_of.get(image, 0), drop)
    rows = []
    small = True
    stratum_fiber: Dict[str, int] = {}
    for st in strata(f):
        dims = {fiber_of.get(t, 0) for t in st.open_simplices}
        missing = [t for t in st.open_simplices if t not in fiber_of]
        if missing:
            raise MalformedResolution(f"no preimage over {sorted(missing)[0]}")
        if len(dims) != 1:
            raise NonConstantFiberDim(
                f"fiber dimension varies over stratum {st.component_id}: {sorted(dims)}")
        fd = dims.pop()
        stratum_fiber[st.component_id] = fd
        if st.dim < n:
            ok = 2 * fd < st.codim
            small = small and ok
            rows.append((st.component_id, fd, st.codim, ok))
    deep_rows = []
    max_i = max(stratum_fiber.values(), default=0)
    for i in range(1, max_i + 1):
        locus = max((st.dim for st in strata(f) if stratum_fiber[st.component_id] >= i),
                    default=-1)
        deep_rows.append((i, locus, n - 2 * i, locus < n - 2 * i))
    return SmallnessReport(small, tuple(rows), tuple(deep_rows))


def strict_transform(r: ResolutionDatum, c: Chain) -> Chain:
    """Dimension-preserving lifts of the chain's simplices outside the exceptional set."""
    out = set()
    for s in c.simplices:
        lift = r._lift.get(s)
        if lift is not None:
            out.add(lift)
    return Chain(r.map.source, c.k, frozenset(out))


@dataclass
class DegreeRow:
    k: int
    dim_upstairs: int
    dim_ih: int
    push_allowable: List[bool] = field(default_factory=list)
    push_retried: List[bool] = field(default_factory=list)
    strict_cycles: List[bool] = field(default_factory=list)
    strict_boundary_law: List[bool] = field(default_factory=list)
    push_strict_identity: List[bool] = field(default_factory=list)
    strict_push_identity: List[bool] = field(default_factory=list)

    @property
    def dims_equal(self) -> bool:
        return self.dim_upstairs == self.dim_ih

    @property
    def passed(self) -> bool:
        return (self.dims_equal and all(self.push_allowable) and all(self.strict_cycles)
                and all(self.strict_boundary_law) and all(self.push_strict_identity)
                and all(self.strict_push_identity))


@dataclass
class SmallResReport:
    smallness: SmallnessReport
    rows: List[DegreeRow]
    not_generic: List[Tuple[int, int]]  # (degree, representative index)

    @property
    def passed(self) -> bool:
        return bool(self.smallness) and all(r.passed for r in self.rows) and not self.not_generic


def verify_smallres(r: ResolutionDatum, f: Filtration, pairing: SheetPairing,
                    pp: PerversityPair) -> SmallResReport:
    """Empirical check of the small-resolution comparison: equal dimensions,
    allowable pushforwards, strict transforms that are cycles, and the two
    compositions acting as the identity on homology classes."""
    smallness = check_small(r, f)
    if not smallness:
        raise NotSmall("resolution fails the fiber-dimension test")
    pi = r.map
    up = AllowableComplex(pi.source, constrained=False)
    up_h = up.homology("ordinary")
    down = AllowableComplex(pi.target, f, pairing, pp)
    down_ih = down.homology("compact")
    rows: List[DegreeRow] = []
    not_generic: List[Tuple[int, int]] = []
    for k in range(pi.target.n + 1):
        row = DegreeRow(k, up_h.dim(k), down_ih.dim(k))
        down_b = down.boundary_space(k)
        down_constraints = down.allowable_space(k)
        up_b = up.boundary_space(k)
        # pushforwards of upstairs cycle representatives must be allowable cycles
        # whose strict transforms recover the class; non-generic representatives
        # are retried across their homology coset (bounded search)
        for idx, rep in enumerate(up_h.representatives.get(k, [])):
            rep_vec = up.vector(rep)
            basis = up_b.basis[:12]
            ok = False
            retried = False
            pushed = pushforward(pi, rep)
            for mask in range(min(1 << len(basis), COSET_SEARCH_LIMIT)):
                alt = rep_vec
                for i, b in enumerate(basis):
                    if (mask >> i) & 1:
                        alt ^= b
                cand = pushforward(pi, up.chain(k, alt))
                if not down_constraints.contains(down.vector(cand)):
                    continue
                back = strict_transform(r, cand)
                if up_b.contains(up.vector(back) ^ rep_vec):
                    pushed, ok, retried = cand, True, mask != 0
                    break
            if not ok:
                not_generic.append((k, idx))
            row.push_allowable.append(ok)
            row.push_retried.append(retried)
            if ok:
                row.strict_push_identity.append(True)
        # strict transforms of IH representatives: cycles satisfying s(dC) = d s(C)
        for rep in down_ih.representatives.get(k, []):
            lifted = strict_transform(r, rep)
            if k >= 1:
                row.strict_cycles.append(not boundary(lifted).simplices)
                row.strict_boundary_law.append(
                    boundary(lifted).simplices == strict_transform(r, boundary(rep)).simplices)
            else:
                row.strict_cycles.append(True)
            pushed_back = pushforward(pi, lifted)
            row.push_strict_identity.append(
                down_b.contains(down.vector(pushed_back) ^ down.vector(rep)))
        rows.append(row)
    return SmallResReport(smallness, rows, not_generic)
