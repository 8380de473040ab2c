"""Local cone formulas, isolated-singularity formulas, intersection numbers
and duality/Mayer-Vietoris consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .chains import Chain, SheetPairing, boundary, pushforward
from .engine import AllowableComplex, IHResult, homology, ih_closed, ih_compact
from .errors import (LinkSingular, NotDualBlockCycle, NotIsolated, NotTransverse,
                     ResolutionMismatch, InvalidPair)
from .gf2 import Subspace
from .perversity import PerversityPair, default_pair
from .resolution import ResolutionDatum
from .scomplex import (DualBlockDecomposition, Simplex, SimplicialComplex, dim,
                       vertex_links_are_circles)
from .strat import Filtration, Stratum, strata, stratum_of
from .perversity import AllowabilityContext


def _link_is_nonsingular(link: SimplicialComplex) -> bool:
    """Combinatorial closed-manifold certificate for links of dimension <= 2."""
    if link.is_empty:
        return False
    if link.n == 0:
        return True
    if link.n == 1:
        if not link.is_pure():
            return False
        deg: Dict[Simplex, int] = {}
        for e in link.simplices_of_dim(1):
            for v in (e[:1], e[1:]):
                deg[v] = deg.get(v, 0) + 1
        return all(d == 2 for d in deg.values())
    if link.n == 2:
        return vertex_links_are_circles(link)
    raise LinkSingular(f"cannot certify a {link.n}-dimensional link")


@dataclass(frozen=True)
class LocalCone:
    """The cone neighborhood of a vertex: link, open star, closed star, complement."""

    ambient: SimplicialComplex
    x0: str
    link: SimplicialComplex
    star: FrozenSet[Simplex]
    closed_star: SimplicialComplex
    complement: SimplicialComplex

    @classmethod
    def at(cls, x: SimplicialComplex, x0: str) -> "LocalCone":
        v = (x0,)
        link = x.link(v)
        if not _link_is_nonsingular(link):
            raise LinkSingular(f"link of {x0!r} is not a closed manifold")
        return cls(x, x0, link, x.open_star(v), x.closed_star(v),
                   x.deleted_subcomplex([x0]))


def local_ih_oracle(c: LocalCone, pp: PerversityPair) -> Tuple[List[Tuple[int, int]],
                                                               List[Tuple[int, int]]]:
    """Cone-formula dimensions for the open cone: per degree a (lo, hi) range.

    Even ambient dimension n = 2m: compact supports give H_k(link) below m and
    zero from m up; closed supports give H_{k-1}(link) above m and zero up to m.
    Odd n = 2m+1: the same off the middle degrees; degree m (compact) is a
    quotient of H_m(link) and degree m+1 (closed) a subgroup of H_m(link), so
    those entries are reported as full ranges.  Stated for the default pair.
    """
    n = c.ambient.n
    if (pp.p.values[: n + 1], pp.q.values[: n + 1]) != (
            default_pair(n).p.values, default_pair(n).q.values):
        raise InvalidPair("the cone formulas are stated for the default pair")
    hl = homology(c.link).dims
    h = lambda k: hl[k] if 0 <= k < len(hl) else 0
    m = n // 2
    compact: List[Tuple[int, int]] = []
    closed: List[Tuple[int, int]] = []
    for k in range(n + 1):
        if n % 2 == 0:
            ck = h(k) if k <= m - 1 else 0
            lk = h(k - 1) if k >= m + 1 else 0
            compact.append((ck, ck))
            closed.append((lk, lk))
        else:
            if k <= m - 1:
                compact.append((h(k), h(k)))
            elif k == m:
                compact.append((0, h(m)))
            else:
                compact.append((0, 0))
            if k >= m + 2:
                closed.append((h(k - 1), h(k - 1)))
            elif k == m + 1:
                closed.append((0, h(m)))
            else:
                closed.append((0, 0))
    return compact, closed


def local_engine_dims(c: LocalCone, f: Filtration, pairing: SheetPairing,
                      pp: PerversityPair) -> Tuple[List[int], List[int]]:
    """Engine values the oracle is compared against: compact-support IH of the
    closed-star cone complex (apex marked singular), and closed-support IH of
    the open star inside the ambient complex."""
    k_complex = c.closed_star
    f_k = Filtration.from_lower_skeleta(k_complex, {0: [(c.x0,)]})
    compact = ih_compact(k_complex, f_k, pairing.restrict(k_complex), pp).dims
    closed = ih_closed(c.ambient, f, pairing, pp, c.star).dims
    return list(compact), list(closed)


def _singular_vertices(x: SimplicialComplex, f: Filtration) -> List[str]:
    """The isolated singular points: every positive-codimension stratum must
    be a single vertex with a closed-manifold link."""
    sing = []
    for st in strata(f):
        if st.codim <= 0:
            continue
        if st.dim != 0 or len(st.open_simplices) != 1:
            raise NotIsolated(f"stratum {st.component_id} is positive-dimensional")
        (v,) = next(iter(st.open_simplices))
        link = x.link((v,))
        if not _link_is_nonsingular(link):
            raise LinkSingular(f"link of {v!r} is not a closed manifold")
        sing.append(v)
    return sorted(sing)


def _image_rank(sub_cycles: Sequence[int], ambient_boundaries: Subspace) -> int:
    """dim of the image of a cycle family in homology: (Z + B)/B."""
    total = Subspace.from_vectors(list(sub_cycles) + list(ambient_boundaries.basis),
                                  ambient_boundaries.ambient_dim)
    return total.dim - ambient_boundaries.dim


def _embedded_cycles(sub: AllowableComplex, amb: AllowableComplex, k: int) -> List[int]:
    """Cycle basis of a subcomplex rewritten in the ambient coordinates."""
    out = []
    for v in sub.cycle_space(k).basis:
        chain = sub.chain(k, v)
        out.append(amb.vector(Chain(amb.x, k, chain.simplices)))
    return out


def ih_isolated_formula(x: SimplicialComplex, f: Filtration, pp: PerversityPair,
                        r: Optional[ResolutionDatum] = None,
                        sing: Optional[Iterable[str]] = None) -> List[int]:
    """Isolated-singularity dimensions from ordinary homology data.

    Even n = 2m:  H_k(X) above m, the image rank of H_m(X - N) -> H_m(X) at m,
    and H_k(X - N) below m.  Odd n = 2m+1: H_k(X) above m+1, the image rank of
    H_{m+1} of the resolution at m+1, the image rank of H_m of the resolution
    minus the exceptional neighborhood at m, and H_k(X - N) below m.
    """
    derived = _singular_vertices(x, f)
    if sing is not None and sorted(sing) != derived:
        raise NotIsolated(f"declared singular set {sorted(sing)} differs from {derived}")
    sing = derived
    n = x.n
    m = n // 2
    kprime = x.deleted_subcomplex(sing)
    amb = AllowableComplex(x, constrained=False)
    sub = AllowableComplex(kprime, constrained=False)
    h_x = amb.homology("ordinary").dims
    h_kp = sub.homology("ordinary").dims

    def h(dims, k):
        return dims[k] if 0 <= k < len(dims) else 0

    out: List[int] = []
    if n % 2 == 0:
        for k in range(n + 1):
            if k > m:
                out.append(h(h_x, k))
            elif k == m:
                out.append(_image_rank(_embedded_cycles(sub, amb, k), amb.boundary_space(k)))
            else:
                out.append(h(h_kp, k))
        return out
    if r is None:
        raise ResolutionMismatch("odd dimension needs a resolution datum")
    pi = r.map
    y_vertices = sorted({v for s in r.y for v in s})
    if y_vertices != sing:
        raise ResolutionMismatch(
            f"resolution discriminant {y_vertices} does not match the singular set {sing}")
    up = AllowableComplex(pi.source, constrained=False)
    e_vertices = {v for s in r.e for v in s}
    up_deleted = AllowableComplex(pi.source.deleted_subcomplex(e_vertices), constrained=False)
    for k in range(n + 1):
        if k > m + 1:
            out.append(h(h_x, k))
        elif k == m + 1:
            pushed = [amb.vector(pushforward(pi, up.chain(k, v)))
                      for v in up.cycle_space(k).basis]
            out.append(_image_rank(pushed, amb.boundary_space(k)))
        elif k == m:
            cycles = _embedded_cycles(up_deleted, up, k)
            out.append(_image_rank(cycles, up.boundary_space(k)))
        else:
            out.append(h(h_kp, k))
    return out


def intersection_number(c1: Chain, c2: Chain, d: DualBlockDecomposition,
                        f: Optional[Filtration] = None,
                        pairing: Optional[SheetPairing] = None,
                        pp: Optional[PerversityPair] = None) -> int:
    """Mod-2 count of the dual blocks of c1's simplices inside the dual-block
    cycle c2.  c2 must be a chain of the subdivision whose support is exactly
    a union of top parts of dual blocks of k-simplices; common carriers must
    sit in top-dimensional strata when a filtration is supplied."""
    n = d.base.n
    k = c1.k
    if c1.complex != d.base or c2.complex != d.subdivision or c2.k != n - k:
        raise NotDualBlockCycle("arguments do not fit the dual-block decomposition")
    if k >= 1 and boundary(c1).simplices:
        raise NotDualBlockCycle("the simplicial argument is not a cycle")
    if c2.k >= 1 and boundary(c2).simplices:
        raise NotDualBlockCycle("the dual-block argument is not a cycle")
    blocks = []
    covered: set = set()
    for s in d.base.simplices_of_dim(k):
        top = set(d.block_top(s))
        if top <= c2.simplices:
            blocks.append(s)
            covered |= top
    if covered != set(c2.simplices):
        raise NotDualBlockCycle("support is not a union of dual blocks of k-simplices")
    common = sorted(set(blocks) & c1.simplices)
    if f is not None:
        table = stratum_of(f)
        for s in common:
            if table[s].codim != 0:
                raise NotTransverse(f"carrier {s} lies in a positive-codimension stratum")
        if pairing is not None and pp is not None:
            ctx = AllowabilityContext(c1.complex, f, pairing, pp)
            if ctx.compile(k).mul_vec(ctx.chain_vector(c1)) != 0:
                raise NotTransverse("the simplicial cycle is not allowable")
    return len(common) & 1


@dataclass
class DualityReport:
    dims: Tuple[int, ...]
    dims_dual_ok: bool
    pairing_ranks: Dict[int, Tuple[int, int]]  # k -> (rank, expected)

    @property
    def passed(self) -> bool:
        return self.dims_dual_ok and all(r == e for r, e in self.pairing_ranks.values())


def duality_check(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
                  pp: PerversityPair,
                  declared_pairs: Optional[Dict[int, Tuple[Sequence[Chain], Sequence[Chain]]]]
                  = None) -> DualityReport:
    """Isolated-singularity duality: dim IH^c_k = dim IH^cl_{n-k} (the complex
    is compact, so closed equals compact supports), plus the rank of the
    intersection pairing on explicitly supplied representative pairs."""
    _singular_vertices(x, f)  # validates isolation
    res = ih_compact(x, f, pairing, pp)
    n = x.n
    dims_ok = all(res.dim(k) == res.dim(n - k) for k in range(n + 1))
    ranks: Dict[int, Tuple[int, int]] = {}
    if declared_pairs:
        d = x.dual_blocks()
        from .gf2 import Gf2Matrix, rank as gf2_rank
        for k, (cycles, duals) in sorted(declared_pairs.items()):
            rows = []
            for c1 in cycles:
                bits = 0
                for j, c2 in enumerate(duals):
                    if intersection_number(c1, c2, d, f, pairing, pp):
                        bits |= 1 << j
                rows.append(bits)
            m = Gf2Matrix.from_rows(rows, len(duals))
            ranks[k] = (gf2_rank(m), res.dim(k))
    return DualityReport(res.dims, dims_ok, ranks)


def mv_consistency(x: SimplicialComplex, f: Filtration, pairing: SheetPairing,
                   pp: PerversityPair) -> int:
    """Alternating-sum consistency of the Mayer-Vietoris cover by the deleted
    space and the cone neighborhoods; exactness forces the sum to vanish."""
    sing = _singular_vertices(x, f)
    dims_x = ih_compact(x, f, pairing, pp).dims
    dims_xp = homology(x.deleted_subcomplex(sing)).dims if sing else dims_x
    n_dims = [0] * (x.n + 1)
    np_dims = [0] * (x.n + 1)
    for v in sing:
        cone = LocalCone.at(x, v)
        local_compact, _ = local_engine_dims(cone, f, pairing, pp)
        for k, dk in enumerate(local_compact):
            n_dims[k] += dk
        for k, dk in enumerate(homology(cone.link).dims):
            np_dims[k] += dk
    total = 0
    for k in range(x.n + 1):
        term = (np_dims[k]
                - (dims_xp[k] if k < len(dims_xp) else 0)
                - n_dims[k]
                + dims_x[k])
        total += term if k % 2 == 0 else -term
    return total
