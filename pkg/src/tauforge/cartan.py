"""Symmetrisable Cartan data and their quivers.

A datum is a triple (C, D, Omega): an n x n symmetrisable generalised
Cartan matrix C, a symmetriser D = diag(d_1..d_n) with positive integer
entries and DC symmetric, and an acyclic orientation Omega of the edges
{i,j} with c_ij < 0.  A pair (i, j) in Omega stands for arrows j -> i.

Vertices are 1-based everywhere, matching the file format.
"""

import json
from dataclasses import dataclass, field
from math import gcd

from .linalg import Field, Mat


class DatumError(ValueError):
    """Raised when a Cartan datum fails validation."""


@dataclass(frozen=True)
class CartanDatum:
    cartan: tuple
    symmetriser: tuple
    orientation: tuple
    affine_kernel: tuple = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    @property
    def n(self):
        return len(self.symmetriser)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def c(self, i, j):
        return self.cartan[i - 1][j - 1]

    def d(self, i):
        return self.symmetriser[i - 1]

    def g(self, i, j):
        """Number of parallel arrows on the edge {i, j}."""
        return abs(gcd(self.c(i, j), self.c(j, i)))

    def f(self, i, j):
        """|c_ij| / g_ij; the loop-exchange exponent attached to (i, j)."""
        return abs(self.c(i, j)) // self.g(i, j)

    def edges(self):
        return [(i, j) for i in self.vertices for j in self.vertices if i < j and self.c(i, j) < 0]

    def is_sink(self, k):
        return all(j != k for (_, j) in self.orientation)

    def is_source(self, k):
        return all(i != k for (i, _) in self.orientation)


@dataclass(frozen=True)
class QuiverSpec:
    """Vertices, one loop per vertex, and g_ij parallel arrows j -> i per
    orientation pair (i, j)."""

    vertices: tuple
    loops: tuple          # (i, ...) one loop eps_i per vertex
    arrows: tuple         # ((i, j, g), ...) arrow alpha^(g)_{ij} : j -> i

    def arrows_into(self, v):
        return [a for a in self.arrows if a[0] == v]

    def arrows_out_of(self, v):
        return [a for a in self.arrows if a[1] == v]


def _primitive_positive_kernel(cartan):
    """Primitive strictly positive integer kernel vector of C, or None."""
    n = len(cartan)
    F = Field.rational()
    C = Mat.from_rows(F, [list(r) for r in cartan])
    ker = C.nullspace_cols()
    if ker.ncols != 1:
        return None
    col = ker.col_vector(0)
    denoms = [x.denominator for x in col]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in col]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        return None
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def validate_datum(cartan, symmetriser, orientation, name=""):
    """Check (C, D, Omega) and return a frozen CartanDatum.

    Raises DatumError with a specific message on the first violated axiom.
    """
    n = len(cartan)
    if n == 0 or any(len(row) != n for row in cartan):
        raise DatumError("Cartan matrix must be square and non-empty")
    cartan = tuple(tuple(int(x) for x in row) for row in cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise DatumError(f"diagonal entry c_{i+1}{i+1} must be 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise DatumError(f"off-diagonal c_{i+1}{j+1} must be <= 0")
                if (cartan[i][j] < 0) != (cartan[j][i] < 0):
                    raise DatumError(f"c_{i+1}{j+1} and c_{j+1}{i+1} must vanish together")
    if len(symmetriser) != n:
        raise DatumError("symmetriser length must match matrix size")
    symmetriser = tuple(int(d) for d in symmetriser)
    if any(d <= 0 for d in symmetriser):
        raise DatumError("symmetriser entries must be positive integers")
    for i in range(n):
        for j in range(n):
            if symmetriser[i] * cartan[i][j] != symmetriser[j] * cartan[j][i]:
                raise DatumError(f"DC not symmetric at ({i+1},{j+1})")

    edges = {(min(i, j), max(i, j)) for i in range(1, n + 1) for j in range(1, n + 1)
             if i != j and cartan[i - 1][j - 1] < 0}
    pairs = [tuple(p) for p in orientation]
    seen = set()
    for (i, j) in pairs:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise DatumError(f"orientation pair ({i},{j}) out of range")
        if cartan[i - 1][j - 1] >= 0:
            raise DatumError(f"orientation pair ({i},{j}) is not an edge")
        e = (min(i, j), max(i, j))
        if e in seen:
            raise DatumError(f"edge {e} oriented twice")
        seen.add(e)
    if seen != edges:
        missing = sorted(edges - seen)
        raise DatumError(f"unoriented edges: {missing}")

    # acyclicity of the arrow quiver (arrows j -> i for each pair (i, j))
    succ = {v: [] for v in range(1, n + 1)}
    for (i, j) in pairs:
        succ[j].append(i)
    state = {}

    def dfs(v):
        state[v] = 1
        for w in succ[v]:
            if state.get(w) == 1:
                raise DatumError("orientation has an oriented cycle")
            if w not in state:
                dfs(w)
        state[v] = 2

    for v in range(1, n + 1):
        if v not in state:
            dfs(v)

    kernel = _primitive_positive_kernel(cartan)
    return CartanDatum(cartan, symmetriser, tuple(sorted(pairs)), kernel, name)


def delta(datum):
    """The primitive positive kernel vector for an affine datum."""
    if datum.affine_kernel is None:
        raise DatumError("datum is not affine: no strictly positive kernel vector")
    return datum.affine_kernel


def build_quiver(datum):
    arrows = []
    for (i, j) in datum.orientation:
        for g in range(1, datum.g(i, j) + 1):
            arrows.append((i, j, g))
    verts = tuple(datum.vertices)
    return QuiverSpec(verts, verts, tuple(arrows))


def admissible_sequence(datum):
    """Sink-first ordering: i_1 is a sink, each later i_k is a sink once the
    earlier vertices are removed.  Ties break to the smallest index."""
    remaining = set(datum.vertices)
    out_deg = {v: 0 for v in remaining}
    for (i, j) in datum.orientation:
        out_deg[j] += 1
    incoming = {v: [] for v in remaining}
    for (i, j) in datum.orientation:
        incoming[i].append(j)
    seq = []
    while remaining:
        sinks = sorted(v for v in remaining if out_deg[v] == 0)
        if not sinks:
            raise DatumError("no sink available; orientation not acyclic")
        k = sinks[0]
        seq.append(k)
        remaining.discard(k)
        for j in incoming[k]:
            if j in remaining:
                out_deg[j] -= 1
    return tuple(seq)


def reflect_orientation(datum, k):
    """Flip every orientation pair incident to vertex k.

    The result is anonymous even when the input is a named datum: the name
    denotes a fixed orientation, and keeping it would let a name-only
    serialization silently resolve back to the unreflected quiver.
    """
    if not (1 <= k <= datum.n):
        raise DatumError(f"vertex {k} out of range")
    flipped = []
    for (i, j) in datum.orientation:
        if k in (i, j):
            flipped.append((j, i))
        else:
            flipped.append((i, j))
    return CartanDatum(datum.cartan, datum.symmetriser, tuple(sorted(flipped)),
                       datum.affine_kernel, "")


def opposite_datum(datum):
    """Reverse every arrow; the path algebra of the result is the opposite
    algebra of the original one."""
    flipped = tuple(sorted((j, i) for (i, j) in datum.orientation))
    return CartanDatum(datum.cartan, datum.symmetriser, flipped,
                       datum.affine_kernel, datum.name + ".op" if datum.name else "")


def datum_to_json(datum):
    return {
        "name": datum.name,
        "cartan": [list(r) for r in datum.cartan],
        "symmetriser": list(datum.symmetriser),
        "orientation": [list(p) for p in datum.orientation],
    }


def datum_from_json(obj):
    if isinstance(obj, str):
        with open(obj) as fh:
            obj = json.load(fh)
    return validate_datum(obj["cartan"], obj["symmetriser"], obj["orientation"],
                          obj.get("name", ""))
