"""Root lattice combinatorics for a Cartan datum.

Rank vectors live in Z^n (plain int tuples).  The Coxeter transformation
is taken along the sink-first admissible sequence, so that it matches the
action of the translation functors on rank vectors: projective P_{i_k}
has rank beta_k, injective I_{i_k} has rank gamma_k.
"""

from dataclasses import dataclass
from functools import lru_cache

from .cartan import DatumError, admissible_sequence


class NotAffineError(DatumError):
    """An affine-only quantity was requested for a non-affine datum."""


def simple_reflection(datum, i, v):
    """s_i(v): subtract (sum_j c_ij v_j) from coordinate i."""
    pairing = sum(datum.c(i, j + 1) * v[j] for j in range(datum.n))
    w = list(v)
    w[i - 1] -= pairing
    return tuple(w)


def bilinear(datum, a, b):
    """Homological pairing <a, b>; equals dim Hom - dim Ext^1 on rank
    vectors of locally free modules."""
    total = sum(datum.d(i) * a[i - 1] * b[i - 1] for i in datum.vertices)
    for (i, j) in datum.orientation:
        total -= datum.d(i) * abs(datum.c(i, j)) * a[j - 1] * b[i - 1]
    return total


def height(v):
    return sum(v)


def _unit(n, i):
    return tuple(1 if t == i - 1 else 0 for t in range(n))


def _matvec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _reflection_matrix(datum, i):
    n = datum.n
    rows = []
    for r in range(1, n + 1):
        row = [1 if r == c else 0 for c in range(1, n + 1)]
        if r == i:
            for c in range(1, n + 1):
                row[c - 1] -= datum.c(i, c)
        rows.append(tuple(row))
    return tuple(rows)


def _iteration_cap(datum):
    # generous fail-safe for the N search and orbit walks
    maxd = max(datum.symmetriser)
    maxc = max(abs(x) for row in datum.cartan for x in row)
    return 10 * datum.n * maxd * maxc


@dataclass(frozen=True)
class CoxeterData:
    sequence: tuple
    c_matrix: tuple
    c_inv_matrix: tuple
    beta: tuple       # beta[k] = rank of P_{sequence[k]}
    gamma: tuple      # gamma[k] = rank of I_{sequence[k]}
    N: int            # None unless affine: smallest N with c^N = id + delta.nu^T
    nu: tuple         # None unless affine

    def c_apply(self, v, power=1):
        m = self.c_matrix if power >= 0 else self.c_inv_matrix
        for _ in range(abs(power)):
            v = _matvec(m, v)
        return tuple(v)

    def projective_rank(self, vertex):
        return self.beta[self.sequence.index(vertex)]

    def injective_rank(self, vertex):
        return self.gamma[self.sequence.index(vertex)]


@lru_cache(maxsize=None)
def coxeter_data(datum):
    seq = admissible_sequence(datum)
    n = datum.n
    refl = {i: _reflection_matrix(datum, i) for i in seq}

    ident = tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))
    c = ident
    for i in seq:                      # apply s_{i_1} first
        c = _matmul(refl[i], c)
    c_inv = ident
    for i in reversed(seq):
        c_inv = _matmul(refl[i], c_inv)

    beta = []
    for k, ik in enumerate(seq):
        v = _unit(n, ik)
        for i in reversed(seq[:k]):    # s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})
            v = _matvec(refl[i], v)
        beta.append(v)
    gamma = []
    for k, ik in enumerate(seq):
        v = _unit(n, ik)
        for i in seq[k + 1:]:          # s_{i_n} ... s_{i_{k+1}} (alpha_{i_k})
            v = _matvec(refl[i], v)
        gamma.append(v)

    N = nu = None
    if datum.affine_kernel is not None:
        dlt = datum.affine_kernel
        power = ident
        for step in range(1, _iteration_cap(datum) + 1):
            power = _matmul(c, power)
            cols_ok = True
            coeffs = []
            for j in range(n):
                col = [power[r][j] - (1 if r == j else 0) for r in range(n)]
                pivot = next((t for t in range(n) if dlt[t]), 0)
                q, rem = divmod(col[pivot], dlt[pivot])
                if rem != 0 or any(col[t] != q * dlt[t] for t in range(n)):
                    cols_ok = False
                    break
                coeffs.append(q)
            if cols_ok:
                N, nu = step, tuple(coeffs)
                break
        if N is None:
            raise DatumError("no Coxeter period found below the iteration cap")

    return CoxeterData(seq, c, c_inv, tuple(beta), tuple(gamma), N, nu)


@dataclass(frozen=True)
class RootStatus:
    kind: str          # 'real' | 'imaginary' | 'not_root'
    witness: tuple     # reflections applied, or (k,) for k.delta


def is_positive_root(datum, v):
    """Descent test: reflect towards the simples, tracking the witness."""
    v = tuple(int(x) for x in v)
    if len(v) != datum.n or all(x == 0 for x in v):
        return RootStatus("not_root", ())
    if any(x < 0 for x in v):
        return RootStatus("not_root", ())
    path = []
    while True:
        support = [i for i in datum.vertices if v[i - 1] != 0]
        if len(support) == 1 and v[support[0] - 1] == 1:
            return RootStatus("real", tuple(path))
        pairings = [sum(datum.c(i, j + 1) * v[j] for j in range(datum.n))
                    for i in datum.vertices]
        if all(p <= 0 for p in pairings):
            if all(p == 0 for p in pairings) and datum.affine_kernel is not None:
                dlt = datum.affine_kernel
                k, rem = divmod(v[0], dlt[0]) if dlt[0] else (0, 1)
                if rem == 0 and k > 0 and all(v[t] == k * dlt[t] for t in range(datum.n)):
                    return RootStatus("imaginary", (k,))
            return RootStatus("not_root", tuple(path))
        i = next(i for i in datum.vertices if pairings[i - 1] > 0)
        v = simple_reflection(datum, i, v)
        if any(x < 0 for x in v):
            return RootStatus("not_root", tuple(path))
        path.append(i)


@dataclass(frozen=True)
class RootClass:
    kind: str          # 'preprojective' | 'preinjective' | 'regular' | 'not_root'
    r: int = None      # translation exponent (preprojective/preinjective)
    vertex: int = None # which projective/injective
    period: int = None # Coxeter period (regular)


def c_period(datum, v, window=None):
    """Smallest t >= 1 with c^t v = v, searched up to the window (default N)."""
    cd = coxeter_data(datum)
    if window is None:
        window = cd.N if cd.N is not None else _iteration_cap(datum)
    w = tuple(v)
    for t in range(1, window + 1):
        w = cd.c_apply(w)
        if w == tuple(v):
            return t
    return None


def classify_positive_root(datum, v):
    status = is_positive_root(datum, v)
    if status.kind == "not_root":
        return RootClass("not_root")
    cd = coxeter_data(datum)
    if datum.affine_kernel is not None:
        per = c_period(datum, v)
        if per is not None:
            return RootClass("regular", period=per)
        cap = cd.N * (height(v) + 2)
    else:
        cap = _iteration_cap(datum)
    beta_index = {b: cd.sequence[k] for k, b in enumerate(cd.beta)}
    gamma_index = {g: cd.sequence[k] for k, g in enumerate(cd.gamma)}
    w = tuple(v)
    for r in range(cap + 1):
        if w in beta_index:
            return RootClass("preprojective", r=r, vertex=beta_index[w])
        if any(x < 0 for x in w):
            break
        w = cd.c_apply(w)
    w = tuple(v)
    for s in range(cap + 1):
        if w in gamma_index:
            return RootClass("preinjective", r=s, vertex=gamma_index[w])
        if any(x < 0 for x in w):
            break
        w = cd.c_apply(w, -1)
    return RootClass("not_root")


def enumerate_positive_roots(datum, max_height):
    """All positive roots of height <= max_height, by reflection closure of
    the simples plus the imaginary multiples of delta."""
    n = datum.n
    found = set()
    frontier = [_unit(n, i) for i in datum.vertices]
    for v in frontier:
        found.add(v)
    while frontier:
        nxt = []
        for v in frontier:
            for i in datum.vertices:
                w = simple_reflection(datum, i, v)
                if w in found or any(x < 0 for x in w) or height(w) > max_height:
                    continue
                found.add(w)
                nxt.append(w)
        frontier = nxt
    if datum.affine_kernel is not None:
        dlt = datum.affine_kernel
        k = 1
        while k * height(dlt) <= max_height:
            found.add(tuple(k * x for x in dlt))
            k += 1
    return sorted(found, key=lambda v: (height(v), v))
