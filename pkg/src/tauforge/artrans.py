"""Minimal projective presentations and the translate tau.

For a module M with minimal presentation  P1 --(r_st)--> P0 --> M --> 0
(entries r_st of the middle map are algebra elements acting by right
composition), the translate is the kernel of the transported map between
the corresponding injectives; the inverse translate is computed by the
same transport over the opposite algebra, conjugated by duality.
"""

from dataclasses import dataclass

from .cartan import build_quiver, opposite_datum
from .linalg import Mat
from .modrep import (Morphism, Representation, direct_sum, dual_rep, end_analysis,
                     hom_dim, is_isomorphic, kernel_rep, local_free_rank, make_rep,
                     rank_vector, zero_rep, apply_monomial)
from .pathalg import (AlgebraElement, algebra_basis, build_injective,
                      build_projective, element_from_coords, mono_mul)
from .rootsys import classify_positive_root, coxeter_data


class NotIndecomposable(ValueError):
    pass


def is_zero_rep(rep):
    return all(d == 0 for d in rep.dims.values())


def _radical_complement(rep, v):
    """Columns of M_v completing the radical part to a basis (a lift of the
    top at v)."""
    quiver = build_quiver(rep.datum)
    pieces = [rep.eps[v]]
    for key in quiver.arrows_into(v):
        pieces.append(rep.arr[key])
    stacked = pieces[0]
    for p in pieces[1:]:
        stacked = stacked.hstack(p)
    rad = stacked.column_space_cols()
    dim = rep.dims[v]
    out = []
    current = rad
    rank = current.rank()
    for k in range(dim):
        e = Mat.from_dict(rep.field, (dim, 1), {(k, 0): 1})
        trial = current.hstack(e)
        if trial.rank() > rank:
            out.append(e)
            current = trial
            rank += 1
    return out


def _generators(rep):
    """(vertex, column) pairs spanning the top of rep."""
    gens = []
    for v in rep.datum.vertices:
        for col in _radical_complement(rep, v):
            gens.append((v, col))
    return gens


def projective_cover(M):
    """(P0, cover morphism, generator vertices)."""
    datum, field = M.datum, M.field
    gens = _generators(M)
    verts = tuple(v for v, _ in gens)
    if not gens:
        return zero_rep(datum, field), Morphism(zero_rep(datum, field), M,
                                                {v: Mat.zeros(field, M.dims[v], 0)
                                                 for v in datum.vertices}), verts
    basis = algebra_basis(datum)
    P0 = direct_sum([build_projective(datum, field, v) for v in verts])
    blocks = {}
    for w in datum.vertices:
        cols = []
        for b, u in gens:
            for p in basis.paths(b, w):
                cols.append(apply_monomial(M, p) @ u)
        if cols:
            acc = cols[0]
            for c in cols[1:]:
                acc = acc.hstack(c)
        else:
            acc = Mat.zeros(field, M.dims[w], 0)
        blocks[w] = acc
    cover = Morphism(P0, M, blocks)
    for v in datum.vertices:
        if blocks[v].rank() != M.dims[v]:
            raise RuntimeError("projective cover is not surjective (bad input module?)")
    return P0, cover, verts


@dataclass
class PresentationData:
    gens0: tuple              # projective indices of P0
    gens1: tuple              # projective indices of P1
    entries: dict             # (s, t) -> AlgebraElement in paths(gens0[t], gens1[s])
    cover: Morphism           # P0 -> M
    p0: Representation
    p1: Representation

    def p1_morphism(self):
        """The map P1 -> P0 realized on representations."""
        datum, field = self.p0.datum, self.p0.field
        basis = algebra_basis(datum)
        blocks = {}
        for v in datum.vertices:
            row_dims = [len(basis.paths(b, v)) for b in self.gens0]
            col_dims = [len(basis.paths(a, v)) for a in self.gens1]
            grid = {}
            for (s, t), elt in self.entries.items():
                if elt is None or elt.is_zero():
                    continue
                cells = {}
                for c, p in enumerate(basis.paths(self.gens1[s], v)):
                    for mono, coeff in elt.terms.items():
                        pm = mono_mul(datum, p, mono)   # p . rho in paths(gens0[t], v)
                        if pm is not None:
                            key = (basis.index[pm], c)
                            cells[key] = cells.get(key, 0) + coeff
                if cells:
                    grid[(t, s)] = Mat.from_dict(field, (row_dims[t], col_dims[s]), cells)
            blocks[v] = Mat.block(field, grid, row_dims, col_dims)
        return Morphism(self.p1, self.p0, blocks)


def minimal_presentation(M):
    datum, field = M.datum, M.field
    basis = algebra_basis(datum)
    P0, cover, gens0 = projective_cover(M)
    K, incl = kernel_rep(cover)
    kgens = _generators(K)
    gens1 = tuple(a for a, _ in kgens)
    if kgens:
        P1 = direct_sum([build_projective(datum, field, a) for a in gens1])
    else:
        P1 = zero_rep(datum, field)
    entries = {}
    for s, (a, w) in enumerate(kgens):
        x = incl.blocks[a] @ w            # generator image inside (P0)_a
        col = [row[0] for row in x.rows()]
        offset = 0
        for t, b in enumerate(gens0):
            paths = basis.paths(b, a)
            coords = [(r, col[offset + r]) for r in range(len(paths))]
            elt = element_from_coords(datum, b, a, coords)
            if not elt.is_zero():
                entries[(s, t)] = elt
            offset += len(paths)
    return PresentationData(gens0, gens1, entries, cover, P0, P1)


@dataclass
class TauResult:
    module: Representation
    direction: int

    @property
    def is_zero(self):
        return is_zero_rep(self.module)


def tau(M):
    """Kernel of the transported presentation map between injectives."""
    from .pathalg import transport_dual
    datum, field = M.datum, M.field
    pres = minimal_presentation(M)
    if not pres.gens1:
        return TauResult(zero_rep(datum, field), +1)
    I1 = direct_sum([build_injective(datum, field, a) for a in pres.gens1])
    if pres.gens0:
        I0 = direct_sum([build_injective(datum, field, b) for b in pres.gens0])
    else:
        I0 = zero_rep(datum, field)
    blocks = transport_dual(datum, field, list(pres.gens1), list(pres.gens0),
                            pres.entries)
    nu_map = Morphism(I1, I0, blocks)
    K, _ = kernel_rep(nu_map)
    return TauResult(K, +1)


def tau_inverse(M):
    """Dual of tau over the opposite algebra."""
    datum, field = M.datum, M.field
    dM = dual_rep(M)
    t = tau(dM)
    back = dual_rep(t.module)
    restored = make_rep(datum, field, dict(back.dims), dict(back.eps), dict(back.arr))
    return TauResult(restored, -1)


def tau_power(M, k):
    """tau^k for k >= 0, tau^{-|k|} for k < 0; stops at zero."""
    cur = M
    step = tau if k >= 0 else tau_inverse
    for _ in range(abs(k)):
        if is_zero_rep(cur):
            return cur
        cur = step(cur).module
    return cur


@dataclass
class OrbitEntry:
    k: int
    module: Representation
    rank: tuple               # or None when not locally free


@dataclass
class TauOrbit:
    entries: list             # OrbitEntry, sorted by k
    period: int = None        # smallest r with tau^r M == M certified, if found

    def member(self, k):
        for e in self.entries:
            if e.k == k:
                return e
        return None


def default_window(datum):
    cox = coxeter_data(datum)
    return 2 * cox.N if cox.N else 2 * datum.n


def tau_orbit(M, window=None):
    datum = M.datum
    if window is None:
        window = default_window(datum)
    entries = [OrbitEntry(0, M, rank_vector(M))]
    cur = M
    period = None
    for k in range(1, window + 1):
        cur = tau(cur).module
        if is_zero_rep(cur):
            break
        entries.append(OrbitEntry(k, cur, rank_vector(cur)))
        if period is None and is_isomorphic(cur, M).verdict == "yes":
            period = k
    cur = M
    for k in range(1, window + 1):
        cur = tau_inverse(cur).module
        if is_zero_rep(cur):
            break
        entries.append(OrbitEntry(-k, cur, rank_vector(cur)))
    entries.sort(key=lambda e: e.k)
    return TauOrbit(entries, period)


@dataclass
class FreenessReport:
    status: str               # 'verified' | 'verified_on_window' | 'fails'
    period: int = None
    terminated: bool = False
    fail_k: int = None
    fail_vertex: int = None


def is_tau_locally_free(M, window=None, check_indecomposable=True):
    """Walk the orbit both ways checking local freeness at every step."""
    datum = M.datum
    if window is None:
        window = default_window(datum)
    if check_indecomposable:
        if is_zero_rep(M):
            raise NotIndecomposable("zero module")
        if end_analysis(M).residue_dim != 1:
            raise NotIndecomposable("endomorphism residue dimension exceeds 1")

    def check(rep, k):
        for v in datum.vertices:
            if local_free_rank(rep, v) is None:
                return FreenessReport("fails", fail_k=k, fail_vertex=v)
        return None

    bad = check(M, 0)
    if bad:
        return bad
    forward_closed = False
    period = None
    cur = M
    for k in range(1, window + 1):
        cur = tau(cur).module
        if is_zero_rep(cur):
            forward_closed = True
            break
        bad = check(cur, k)
        if bad:
            return bad
        if is_isomorphic(cur, M).verdict == "yes":
            period = k
            forward_closed = True
            break
    if period is not None:
        return FreenessReport("verified", period=period)
    backward_closed = False
    cur = M
    for k in range(1, window + 1):
        cur = tau_inverse(cur).module
        if is_zero_rep(cur):
            backward_closed = True
            break
        bad = check(cur, -k)
        if bad:
            return bad
    if forward_closed and backward_closed:
        return FreenessReport("verified", terminated=True)
    return FreenessReport("verified_on_window")


def classify_module(M):
    """Trichotomy via the rank vector's position in the root system."""
    r = rank_vector(M)
    if r is None:
        raise ValueError("module is not locally free; rank vector undefined")
    return classify_positive_root(M.datum, r)


def tau_period(M, cap=None):
    """Smallest r with a certified isomorphism tau^r M = M, or None."""
    datum = M.datum
    if cap is None:
        cox = coxeter_data(datum)
        cap = cox.N if cox.N else 2 * datum.n
    cur = M
    for r in range(1, cap + 1):
        cur = tau(cur).module
        if is_zero_rep(cur):
            return None
        if is_isomorphic(cur, M).verdict == "yes":
            return r
    return None
