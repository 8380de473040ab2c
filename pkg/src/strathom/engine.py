"""Homology of allowable chain complexes.

A chain sits in the degree-k allowable group when it satisfies the compiled
constraints and its boundary satisfies the degree-(k-1) constraints.  Compact,
relative and closed-support variants share one core: the relative computation
works in the coordinates of the simplices outside the closed subcomplex y
(constraint rows never touch y-coordinates because y is a closed union of
strata, so the quotient is a plain coordinate projection).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import gf2
from .chains import Chain, SheetPairing
from .errors import ComplementNotClosed, NotClosed, NotUnionOfStrata
from .gf2 import Gf2Matrix, Subspace, nullspace, quotient_basis, vstack
from .perversity import AllowabilityContext, PerversityPair
from .scomplex import Simplex, SimplicialComplex, dim, faces
from .strat import Filtration, common_refinement, strata, subcomplex_filtration


@dataclass(frozen=True)
class IHResult:
    """Dimensions and canonical cycle representatives per degree 0..n."""

    complex: SimplicialComplex
    supports: str
    dims: Tuple[int, ...]
    representatives: Dict[int, List[Chain]]

    def dim(self, k: int) -> int:
        return self.dims[k] if 0 <= k < len(self.dims) else 0


class AllowableComplex:
    """Per-degree cycle and boundary subspaces of the relative allowable complex.

    Coordinates at degree k are the k-simplices outside ``y`` in sorted order.
    With ``y`` empty this is the compact-supports complex; with no constraints
    (``constrained=False``) it computes ordinary (relative) homology.
    """

    def __init__(self, x: SimplicialComplex, f: Optional[Filtration] = None,
                 pairing: Optional[SheetPairing] = None, pp: Optional[PerversityPair] = None,
                 y: FrozenSet[Simplex] = frozenset(), constrained: bool = True):
        self.x = x
        self.y = frozenset(y)
        self.constrained = constrained and f is not None
        self.basis: Dict[int, List[Simplex]] = {}
        self.index: Dict[int, Dict[Simplex, int]] = {}
        for k in range(x.n + 1):
            outside = [s for s in x.simplices_of_dim(k) if s not in self.y]
            self.basis[k] = outside
            self.index[k] = {s: i for i, s in enumerate(outside)}
        self._drel: Dict[int, Gf2Matrix] = {}
        self._amat: Dict[int, Gf2Matrix] = {}
        if self.constrained:
            active = [st for st in strata(f) if not (st.open_simplices & self.y)]
            self.ctx = AllowabilityContext(x, f, pairing, pp, active=active)
        else:
            self.ctx = None

    def rel_boundary(self, k: int) -> Gf2Matrix:
        """Boundary with rows and columns restricted to outside simplices."""
        if k not in self._drel:
            if k == 0:
                self._drel[0] = Gf2Matrix.zero(0, len(self.basis[0]))
            else:
                ridx = self.index[k - 1]
                rows = [0] * len(self.basis[k - 1])
                for j, s in enumerate(self.basis[k]):
                    for fc in (s[:i] + s[i + 1:] for i in range(len(s))):
                        if fc in ridx:
                            rows[ridx[fc]] ^= 1 << j
                self._drel[k] = Gf2Matrix.from_rows(rows, len(self.basis[k]))
        return self._drel[k]

    def constraint_matrix(self, k: int) -> Gf2Matrix:
        """Constraints for the outside strata, reindexed to outside coordinates."""
        if k not in self._amat:
            ncols = len(self.basis[k])
            if not self.constrained:
                self._amat[k] = Gf2Matrix.zero(0, ncols)
            else:
                full = self.ctx.compile(k)
                remap = {self.ctx.index[k][s]: i for s, i in self.index[k].items()}
                rows = []
                for row in full.row_bits:
                    out = 0
                    for b in gf2.indices_of(row):
                        if b not in remap:
                            raise AssertionError(
                                "constraint row touches a coordinate inside y")
                        out |= 1 << remap[b]
                    rows.append(out)
                self._amat[k] = Gf2Matrix.from_rows(rows, ncols)
        return self._amat[k]

    def allowable_space(self, k: int) -> Subspace:
        """Chains whose own and whose boundary's constraints hold."""
        if k > self.x.n or k < 0:
            return Subspace(0)
        mats = [self.constraint_matrix(k)]
        if k >= 1:
            mats.append(self.constraint_matrix(k - 1).mul_mat(self.rel_boundary(k)))
        return nullspace(vstack(mats))

    def cycle_space(self, k: int) -> Subspace:
        mats = [self.constraint_matrix(k), self.rel_boundary(k)]
        if k >= 1:
            mats.append(self.constraint_matrix(k - 1).mul_mat(self.rel_boundary(k)))
        return nullspace(vstack(mats))

    def boundary_space(self, k: int) -> Subspace:
        n_k = len(self.basis[k])
        if k + 1 > self.x.n:
            return Subspace.from_vectors([], n_k)
        d = self.rel_boundary(k + 1)
        vecs = [d.mul_vec(v) for v in self.allowable_space(k + 1).basis]
        return Subspace.from_vectors(vecs, n_k)

    def chain(self, k: int, v: int) -> Chain:
        simps = [s for i, s in enumerate(self.basis[k]) if (v >> i) & 1]
        return Chain(self.x, k, frozenset(simps))

    def vector(self, c: Chain) -> int:
        return gf2.vector_from_indices(self.index[c.k][s] for s in c.simplices)

    def homology(self, supports: str) -> IHResult:
        dims = []
        reps: Dict[int, List[Chain]] = {}
        for k in range(self.x.n + 1):
            z = self.cycle_space(k)
            b = self.boundary_space(k)
            vecs = quotient_basis(z, b)
            dims.append(z.dim - b.dim)
            if len(vecs) != dims[-1]:  # pragma: no cover - rank arithmetic cross-check
                raise AssertionError("representative count disagrees with rank arithmetic")
            reps[k] = [self.chain(k, v) for v in vecs]
        return IHResult(self.x, supports, tuple(dims), reps)


def homology(x: SimplicialComplex) -> IHResult:
    """Ordinary simplicial GF(2) homology."""
    return AllowableComplex(x, constrained=False).homology("ordinary")


def ih_compact(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
               pp: PerversityPair) -> IHResult:
    """Intersection homology with compact supports."""
    return AllowableComplex(x, f, pairing, pp).homology("compact")


def _check_relative_input(x: SimplicialComplex, f: Filtration, y: FrozenSet[Simplex]):
    for s in y:
        if s not in x.simplices:
            raise NotClosed(f"{s} is not a simplex of the complex")
        for t in faces(s):
            if t not in y:
                raise NotClosed(f"y is not closed: missing face {t} of {s}")
    for st in strata(f):
        inside = st.open_simplices & y
        if inside and inside != st.open_simplices:
            raise NotUnionOfStrata(f"stratum {st.component_id} straddles y")


def ih_relative(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
                pp: PerversityPair, y: Iterable[Simplex]) -> IHResult:
    """Relative intersection homology mod a closed union of strata y."""
    yset = frozenset(tuple(sorted(s)) for s in y)
    _check_relative_input(x, f, yset)
    return AllowableComplex(x, f, pairing, pp, y=yset).homology("relative")


def ih_closed(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
              pp: PerversityPair, v: Iterable[Simplex]) -> IHResult:
    """Closed-supports intersection homology of an open union of strata v,
    computed as relative homology mod the closed complement.

    When the complement is not a union of strata of f, the filtration is
    refined by the complement-adapted filtration first (the refined groups
    are the ones the definition intends; stratification independence is an
    empirical property checked on the corpus).
    """
    vset = frozenset(tuple(sorted(s)) for s in v)
    for s in vset:
        for t in x.cofaces(s):
            if t not in vset:
                raise ComplementNotClosed(
                    f"{s} is in v but its coface {t} is not; the complement is not closed")
    yset = x.simplices - vset
    try:
        _check_relative_input(x, f, yset)
        f_used = f
    except NotUnionOfStrata:
        f_used = common_refinement(f, subcomplex_filtration(x, yset))
        _check_relative_input(x, f_used, yset)
    result = AllowableComplex(x, f_used, pairing, pp, y=yset).homology("closed")
    return result
