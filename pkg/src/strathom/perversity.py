"""Loose perversities and compilation of allowability into GF(2) systems.

A pair (p, q) of integer sequences bounds how deeply a chain C, its boundary,
its pseudoboundary and the pseudoboundary of its boundary may dip into each
positive-codimension stratum.  For a fixed degree k the conditions compile to
a linear system over the k-simplex coordinates:

  (A) deep k-simplices are forbidden outright,
  (B) the boundary must vanish on deep (k-1)-faces,
  (C) sheets at deep (k-1)-faces must come in matched pairs,
  (D) condition (C) one level down, applied to the boundary's sheets.

The q-conditions on the pseudoboundary of the boundary (D) follow the primary
definition; the literal loose-perversity reading (bounding the boundary *of*
the pseudoboundary) is not linear in the chain coordinates and is offered as
a chain-level check through ``is_allowable(..., mode="literal")``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .chains import Chain, SheetPairing, boundary, sigma, support_dim_in
from .errors import DegreeOutOfRange, InvalidPair, LengthMismatch
from .gf2 import Gf2Matrix, vector_from_indices
from .scomplex import Simplex, SimplicialComplex, dim, faces
from .strat import Filtration, Stratum, strata, stratum_of


@dataclass(frozen=True)
class LoosePerversity:
    values: Tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 0:
            raise InvalidPair("a loose perversity starts with 0")

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PerversityPair:
    p: LoosePerversity
    q: LoosePerversity


def default_pair(n: int) -> PerversityPair:
    """The pair p = (0,0,0,1,1,2,2,...), q = (0,0,1,1,2,2,...), truncated at n."""
    p = tuple(max(0, (i - 1) // 2) for i in range(n + 1))
    q = tuple(i // 2 for i in range(n + 1))
    return PerversityPair(LoosePerversity(p), LoosePerversity(q))


def validate_pair(pp: PerversityPair) -> Tuple[bool, List[str]]:
    """Growth conditions p_i <= p_{i+1} <= p_i + 1, same for q, and p_i <= q_i <= p_i + 1."""
    p, q = pp.p.values, pp.q.values
    if len(p) != len(q):
        raise LengthMismatch(f"perversity lengths differ: {len(p)} vs {len(q)}")
    violations = []
    for i in range(len(p) - 1):
        if not (p[i] <= p[i + 1] <= p[i] + 1):
            violations.append(f"p[{i}]={p[i]}, p[{i + 1}]={p[i + 1]} breaks growth")
        if not (q[i] <= q[i + 1] <= q[i] + 1):
            violations.append(f"q[{i}]={q[i]}, q[{i + 1}]={q[i + 1]} breaks growth")
    for i in range(len(p)):
        if not (p[i] <= q[i] <= p[i] + 1):
            violations.append(f"q[{i}]={q[i]} not in [p[{i}], p[{i}]+1] = [{p[i]}, {p[i] + 1}]")
    return (not violations, violations)


class AllowabilityContext:
    """Shared indexing and cached constraint systems for one (x, f, pairing, pp)."""

    def __init__(self, x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
                 pp: PerversityPair, active: Optional[Sequence[Stratum]] = None):
        ok, violations = validate_pair(pp)
        if not ok:
            raise InvalidPair("; ".join(violations))
        if len(pp.p) < x.n + 1:
            raise InvalidPair(f"perversities must cover codimensions up to {x.n}")
        self.x = x
        self.f = f
        self.pairing = pairing
        self.pp = pp
        self.strata = list(strata(f)) if active is None else list(active)
        self.index: Dict[int, Dict[Simplex, int]] = {}
        self.basis: Dict[int, List[Simplex]] = {}
        for k in range(-1, x.n + 1):
            simps = x.simplices_of_dim(k) if k >= 0 else []
            self.basis[k] = simps
            self.index[k] = {s: i for i, s in enumerate(simps)}
        self._stratum_of = stratum_of(f)
        self._deep_cache: Dict[Tuple[Simplex, int], bool] = {}
        self._compiled: Dict[Tuple[int, bool], Gf2Matrix] = {}
        self._boundary: Dict[int, Gf2Matrix] = {}

    def chain_vector(self, c: Chain) -> int:
        idx = self.index[c.k]
        return vector_from_indices(idx[s] for s in c.simplices)

    def vector_chain(self, k: int, v: int) -> Chain:
        simps = [s for i, s in enumerate(self.basis[k]) if (v >> i) & 1]
        return Chain(self.x, k, frozenset(simps))

    def boundary_matrix(self, k: int) -> Gf2Matrix:
        """Rows = (k-1)-simplices, columns = k-simplices."""
        if k not in self._boundary:
            rows = [0] * len(self.basis[k - 1]) if k >= 1 else []
            if k >= 1:
                ridx = self.index[k - 1]
                for j, s in enumerate(self.basis[k]):
                    for fc in (s[:i] + s[i + 1:] for i in range(len(s))):
                        rows[ridx[fc]] ^= 1 << j
            self._boundary[k] = Gf2Matrix.from_rows(rows, len(self.basis[k]))
        return self._boundary[k]

    def _has_deep_face(self, s: Simplex, st: Stratum, bound: int) -> bool:
        """Does s carry a face in the stratum of dimension above the bound?"""
        for t in faces(s):
            if dim(t) > bound and t in st.open_simplices:
                return True
        return False

    def compile(self, k: int, sigma_constraints: bool = True) -> Gf2Matrix:
        key = (k, sigma_constraints)
        if key not in self._compiled:
            self._compiled[key] = self._compile(k, sigma_constraints)
        return self._compiled[key]

    def _compile(self, k: int, sigma_constraints: bool) -> Gf2Matrix:
        if not (0 <= k <= self.x.n):
            raise DegreeOutOfRange(f"degree {k} outside 0..{self.x.n}")
        idx = self.index[k]
        ncols = len(self.basis[k])
        rows: List[int] = []
        p, q = self.pp.p, self.pp.q
        for st in self.strata:
            i = st.codim
            if i <= 0:
                continue
            bound_a = k - i + p[i]
            bound_b = (k - 1) - i + p[i]
            bound_c = (k - 1) - i + q[i]
            bound_d = (k - 2) - i + q[i]
            # (A): forbid deep k-simplices
            for s in self.basis[k]:
                if self._has_deep_face(s, st, bound_a):
                    rows.append(1 << idx[s])
            # (B): boundary vanishes on deep (k-1)-faces
            for rho in self.basis[k - 1] if k >= 1 else []:
                if self._has_deep_face(rho, st, bound_b):
                    row = 0
                    for s in self.x.cofaces(rho):
                        if dim(s) == k:
                            row |= 1 << idx[s]
                    rows.append(row)
            if not sigma_constraints:
                continue
            # (C): matched sheets at deep (k-1)-faces
            for rho in self.basis[k - 1] if k >= 1 else []:
                if self._has_deep_face(rho, st, bound_c):
                    pairs, unmatched = self.pairing.matching_at(rho)
                    for a, b in pairs:
                        rows.append((1 << idx[a]) ^ (1 << idx[b]))
                    for s in unmatched:
                        rows.append(1 << idx[s])
            # (D): matched boundary sheets at deep (k-2)-faces,
            # with sheet variables replaced by boundary linear forms
            if k >= 2:
                y_form: Dict[Simplex, int] = {}

                def form(rho: Simplex) -> int:
                    if rho not in y_form:
                        row = 0
                        for s in self.x.cofaces(rho):
                            if dim(s) == k:
                                row |= 1 << idx[s]
                        y_form[rho] = row
                    return y_form[rho]

                for tau in self.basis[k - 2]:
                    if self._has_deep_face(tau, st, bound_d):
                        pairs, unmatched = self.pairing.matching_at(tau)
                        for a, b in pairs:
                            rows.append(form(a) ^ form(b))
                        for s in unmatched:
                            rows.append(form(s))
        # dedupe, keep deterministic order
        seen = set()
        uniq = []
        for r in rows:
            if r not in seen:
                seen.add(r)
                uniq.append(r)
        return Gf2Matrix.from_rows(uniq, ncols)


def compile_constraints(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
                        pp: PerversityPair, k: int,
                        sigma_constraints: bool = True) -> Gf2Matrix:
    """The GF(2) system over k-simplex coordinates whose nullspace is the
    set of chains satisfying (A)-(D) for every positive-codimension stratum."""
    return AllowabilityContext(x, f, pairing, pp).compile(k, sigma_constraints)


def is_allowable(c: Chain, f: Filtration, pairing: SheetPairing, pp: PerversityPair,
                 mode: str = "primary") -> bool:
    """Whether the chain satisfies the perversity conditions.

    mode="primary": membership in the compiled nullspace (conditions on C,
    boundary, pseudoboundary, and the boundary's pseudoboundary).
    mode="literal": the loose-perversity reading checked chain-wise, where the
    q-conditions apply to the pseudoboundary as a chain in its own right
    (bounding C, boundary, pseudoboundary, and the *boundary of* the
    pseudoboundary).  The literal reading is not linear, so it never feeds the
    engine; it exists to probe the equivalence the two definitions claim.
    """
    ctx = AllowabilityContext(c.complex, f, pairing, pp)
    if mode == "primary":
        m = ctx.compile(c.k)
        return m.mul_vec(ctx.chain_vector(c)) == 0
    if mode != "literal":
        raise ValueError(f"unknown mode {mode!r}")
    p, q = pp.p, pp.q
    k = c.k
    bc = boundary(c) if k >= 1 else None
    sc = sigma(c, pairing) if k >= 1 else None
    bsc = boundary(sc) if sc is not None and sc.k >= 1 else None
    for st in ctx.strata:
        i = st.codim
        if i <= 0:
            continue
        if support_dim_in(c, st) > k - i + p[i]:
            return False
        if bc is not None and support_dim_in(bc, st) > (k - 1) - i + p[i]:
            return False
        if sc is not None and support_dim_in(sc, st) > (k - 1) - i + q[i]:
            return False
        if bsc is not None and support_dim_in(bsc, st) > (k - 2) - i + q[i]:
            return False
    return True
