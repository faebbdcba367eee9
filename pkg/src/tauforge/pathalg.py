"""Paths in the quiver algebra of a datum, in canonical interleaved form.

A monomial path is stored as ``Monomial(src, arrows, exps)``: starting
vertex, the arrow keys (i, j, g) traversed in order of application, and one
loop exponent per visited vertex (``exps`` has length ``len(arrows) + 1``;
``exps[0]`` sits at the source).  In the algebra the word reads right to
left, e.g. ``eps[i]^exps[-1] . a_t . ... . a_1 . eps[src]^exps[0]``.

Canonical form: every exponent left of an arrow is smaller than the number
of source loops that arrow can absorb, and every exponent is below the
nilpotency degree of its vertex.  ``None`` plays the role of the zero path.
"""

import re
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import build_quiver
from .linalg import Mat
from .modrep import make_rep

Monomial = namedtuple("Monomial", ["src", "arrows", "exps"])


def mono_target(mono):
    return mono.arrows[-1][0] if mono.arrows else mono.src


def _vertex_at(mono, t):
    return mono.src if t == 0 else mono.arrows[t - 1][0]


def _absorb(datum, key):
    """Loops at the source that one rewrite of this arrow consumes."""
    i, j, _ = key
    return datum.f(i, j)


def _emit(datum, key):
    """Loops at the target that one rewrite of this arrow emits."""
    i, j, _ = key
    return datum.f(j, i)


def normalize(datum, src, arrows, exps):
    """Canonical form of a raw path, or None when it is zero."""
    arrows = tuple(arrows)
    exps = list(exps)
    if len(exps) != len(arrows) + 1:
        raise ValueError("exponent list must have one entry per visited vertex")
    for t, key in enumerate(arrows):
        a = _absorb(datum, key)
        packets, exps[t] = divmod(exps[t], a)
        exps[t + 1] += packets * _emit(datum, key)
    v = src
    for t in range(len(arrows) + 1):
        if t:
            v = arrows[t - 1][0]
        if exps[t] >= datum.d(v):
            return None
    return Monomial(src, arrows, tuple(exps))


def normalize_random(datum, src, arrows, exps, rng):
    """Same result as :func:`normalize`, applying one applicable rewrite at
    a time in random order.  Used to exercise confluence."""
    arrows = tuple(arrows)
    exps = list(exps)
    verts = [src] + [key[0] for key in arrows]
    while True:
        moves = []
        for t, v in enumerate(verts):
            if exps[t] >= datum.d(v):
                moves.append(("kill", t))
            if t < len(arrows) and exps[t] >= _absorb(datum, arrows[t]):
                moves.append(("push", t))
        if not moves:
            return Monomial(src, arrows, tuple(exps))
        kind, t = rng.choice(moves)
        if kind == "kill":
            return None
        exps[t] -= _absorb(datum, arrows[t])
        exps[t + 1] += _emit(datum, arrows[t])


def unit(datum, v):
    if v not in datum.vertices:
        raise ValueError(f"no vertex {v}")
    return Monomial(v, (), (0,))


def loop(datum, v, k=1):
    return normalize(datum, v, (), (k,))


def arrow(datum, i, j, g=1):
    quiver = build_quiver(datum)
    if (i, j, g) not in quiver.arrows:
        raise ValueError(f"no arrow a[{i}<-{j}]#{g}")
    return Monomial(j, ((i, j, g),), (0, 0))


def mono_mul(datum, p, q):
    """The product p.q (q acts first), or None if it is zero."""
    if p is None or q is None:
        return None
    if mono_target(q) != p.src:
        raise ValueError("paths do not compose")
    exps = q.exps[:-1] + (q.exps[-1] + p.exps[0],) + p.exps[1:]
    return normalize(datum, q.src, q.arrows + p.arrows, exps)


def format_mono(mono):
    if mono is None:
        return "0"
    parts = []
    v = mono.src
    if mono.exps[0]:
        parts.append(f"eps[{v}]" + (f"^{mono.exps[0]}" if mono.exps[0] > 1 else ""))
    for t, (i, j, g) in enumerate(mono.arrows):
        parts.append(f"a[{i}<-{j}]#{g}")
        e = mono.exps[t + 1]
        if e:
            parts.append(f"eps[{i}]" + (f"^{e}" if e > 1 else ""))
    if not parts:
        return f"e[{mono.src}]"
    return " ".join(reversed(parts))


_TOKEN = re.compile(
    r"e\[(?P<unit>\d+)\]"
    r"|eps\[(?P<loopv>\d+)\](?:\^(?P<exp>\d+))?"
    r"|a\[(?P<to>\d+)<-(?P<fr>\d+)\](?:#(?P<g>\d+))?")


def parse_path(datum, text):
    """Parse a path literal such as ``"a[2<-1]#1 eps[1]^3"`` (whitespace or
    ``*`` separated, rightmost letter acts first) into canonical form."""
    letters = []
    pos = 0
    cleaned = text.replace("*", " ")
    for chunk in cleaned.split():
        m = _TOKEN.fullmatch(chunk)
        if not m:
            raise ValueError(f"cannot parse path letter {chunk!r}")
        if m.group("unit"):
            letters.append(("unit", int(m.group("unit"))))
        elif m.group("loopv"):
            k = int(m.group("exp") or 1)
            letters.append(("loop", int(m.group("loopv")), k))
        else:
            g = int(m.group("g") or 1)
            letters.append(("arrow", int(m.group("to")), int(m.group("fr")), g))
    if not letters:
        raise ValueError("empty path literal")
    quiver = build_quiver(datum)
    mono = None
    for letter in reversed(letters):          # rightmost acts first
        if letter[0] == "unit":
            piece = unit(datum, letter[1])
        elif letter[0] == "loop":
            _, v, k = letter
            if v not in datum.vertices:
                raise ValueError(f"no vertex {v}")
            piece = normalize(datum, v, (), (k,))
            if piece is None:
                return None
        else:
            _, i, j, g = letter
            if (i, j, g) not in quiver.arrows:
                raise ValueError(f"no arrow a[{i}<-{j}]#{g}")
            piece = Monomial(j, ((i, j, g),), (0, 0))
        mono = piece if mono is None else mono_mul(datum, piece, mono)
        if mono is None:
            return None
    return mono


# ---------------------------------------------------------------------------
# the finite basis of the algebra

class AlgebraBasis:
    def __init__(self, datum):
        self.datum = datum
        quiver = build_quiver(datum)
        out_of = {v: sorted(quiver.arrows_out_of(v)) for v in quiver.vertices}
        by_pair = {(i, j): [] for i in quiver.vertices for j in quiver.vertices}

        def extend(src, arrow_path):
            at = arrow_path[-1][0] if arrow_path else src
            bounds = []
            for t, key in enumerate(arrow_path):
                v = src if t == 0 else arrow_path[t - 1][0]
                bounds.append(min(datum.d(v), _absorb(datum, key)))
            bounds.append(datum.d(at))

            def rec(t, exps):
                if t == len(bounds):
                    by_pair[(src, at)].append(Monomial(src, tuple(arrow_path), tuple(exps)))
                    return
                for e in range(bounds[t]):
                    rec(t + 1, exps + [e])

            rec(0, [])
            for key in out_of[at]:
                extend(src, arrow_path + [key])

        for i in quiver.vertices:
            extend(i, [])
        for lst in by_pair.values():
            lst.sort(key=lambda m: (len(m.arrows), m.arrows, m.exps))
        self.by_pair = by_pair
        self.index = {}
        for lst in by_pair.values():
            for t, m in enumerate(lst):
                self.index[m] = t

    def paths(self, src, tgt):
        return self.by_pair[(src, tgt)]

    def dim(self):
        return sum(len(v) for v in self.by_pair.values())


@lru_cache(maxsize=None)
def algebra_basis(datum):
    return AlgebraBasis(datum)


def algebra_dim(datum):
    return algebra_basis(datum).dim()


# ---------------------------------------------------------------------------
# linear combinations of parallel paths

@dataclass
class AlgebraElement:
    src: int
    tgt: int
    terms: dict            # Monomial -> Fraction/int coefficient

    @classmethod
    def from_mono(cls, mono, coeff=1):
        return cls(mono.src, mono_target(mono), {mono: Fraction(coeff)})

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, {})

    def is_zero(self):
        return not self.terms

    def add(self, other):
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValueError("cannot add paths between different vertices")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m, 0) + c
            if nc:
                terms[m] = nc
            else:
                terms.pop(m, None)
        return AlgebraElement(self.src, self.tgt, terms)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return AlgebraElement.zero(self.src, self.tgt)
        return AlgebraElement(self.src, self.tgt, {m: c * x for m, x in self.terms.items()})

    def mul(self, other, datum):
        """self . other (other acts first)."""
        if other.tgt != self.src:
            raise ValueError("elements do not compose")
        out = AlgebraElement.zero(other.src, self.tgt)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(datum, m1, m2)
                if m is not None:
                    out = out.add(AlgebraElement.from_mono(m, c1 * c2))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0].arrows), kv[0].arrows, kv[0].exps)):
            prefix = "" if c == 1 else f"({c})*"
            bits.append(prefix + format_mono(m))
        return " + ".join(bits)


def parse_element(datum, text):
    """Parse a sum of scaled path literals, e.g. ``"a[2<-1] - 2*eps[1] a[2<-1]"``."""
    out = None
    for sign, chunk in _split_sum(text):
        coeff = Fraction(sign)
        m = re.match(r"^\(?(-?\d+(?:/\d+)?)\)?\s*\*\s*(.*)$", chunk.strip())
        if m:
            coeff *= Fraction(m.group(1))
            chunk = m.group(2)
        mono = parse_path(datum, chunk)
        if mono is None:
            continue
        term = AlgebraElement.from_mono(mono, coeff)
        out = term if out is None else out.add(term)
    if out is None:
        raise ValueError(f"element {text!r} has no nonzero term with a determinable type")
    return out


def _split_sum(text):
    parts = []
    depth = 0
    cur = ""
    sign = 1
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            parts.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif depth == 0 and ch == "-" and not cur.strip():
            sign = -sign
        else:
            cur += ch
    if cur.strip():
        parts.append((sign, cur))
    return parts


# ---------------------------------------------------------------------------
# projective and injective representations

def build_projective(datum, field, i):
    """P_i: paths out of vertex i, arrows acting by left composition."""
    basis = algebra_basis(datum)
    quiver = build_quiver(datum)
    dims = {v: len(basis.paths(i, v)) for v in datum.vertices}
    eps = {}
    for v in datum.vertices:
        entries = {}
        lv = loop(datum, v)
        for c, m in enumerate(basis.paths(i, v)):
            lm = mono_mul(datum, lv, m) if lv is not None else None
            if lm is not None:
                entries[(basis.index[lm], c)] = 1
        eps[v] = Mat.from_dict(field, (dims[v], dims[v]), entries)
    arr = {}
    for key in quiver.arrows:
        a, b, g = key
        am = Monomial(b, (key,), (0, 0))
        entries = {}
        for c, m in enumerate(basis.paths(i, b)):
            lm = mono_mul(datum, am, m)
            if lm is not None:
                entries[(basis.index[lm], c)] = 1
        arr[key] = Mat.from_dict(field, (dims[a], dims[b]), entries)
    return make_rep(datum, field, dims, eps, arr)


def build_injective(datum, field, i):
    """I_i: dual of paths into vertex i, arrows acting by transposed right
    composition."""
    basis = algebra_basis(datum)
    quiver = build_quiver(datum)
    dims = {v: len(basis.paths(v, i)) for v in datum.vertices}
    eps = {}
    for v in datum.vertices:
        entries = {}
        lv = loop(datum, v)
        for c, m in enumerate(basis.paths(v, i)):
            rm = mono_mul(datum, m, lv) if lv is not None else None
            if rm is not None:
                entries[(c, basis.index[rm])] = 1   # transposed
        eps[v] = Mat.from_dict(field, (dims[v], dims[v]), entries)
    arr = {}
    for key in quiver.arrows:
        a, b, g = key
        am = Monomial(b, (key,), (0, 0))
        entries = {}
        for c, m in enumerate(basis.paths(a, i)):
            rm = mono_mul(datum, m, am)             # in paths(b, i)
            if rm is not None:
                entries[(c, basis.index[rm])] = 1   # transposed: rows paths(a,i)
        arr[key] = Mat.from_dict(field, (dims[a], dims[b]), entries)
    return make_rep(datum, field, dims, eps, arr)


def generator_coords(datum, i):
    """Index of the unit path inside the vertex-i component of P_i."""
    return algebra_basis(datum).index[unit(datum, i)]


def element_to_vector(datum, field, elt, rows):
    """Coordinates of an algebra element in the path basis ``rows``."""
    basis = algebra_basis(datum)
    entries = {}
    for m, c in elt.terms.items():
        entries[(basis.index[m], 0)] = c
    return Mat.from_dict(field, (len(rows), 1), entries)


def element_from_coords(datum, src, tgt, coords):
    """Inverse of the above: scalar coordinates over paths(src, tgt)."""
    basis = algebra_basis(datum)
    paths = basis.paths(src, tgt)
    terms = {}
    for idx, c in coords:
        if c:
            terms[paths[idx]] = c
    return AlgebraElement(src, tgt, terms)


def transport_dual(datum, field, sources, targets, entries):
    """Carry a matrix of algebra elements between sums of projectives over
    to the corresponding map between sums of injectives.

    ``entries[(s, t)]`` is an element of paths(targets[t], sources[s]), the
    component P_{sources[s]} -> P_{targets[t]} given by right composition.
    Returns the per-vertex blocks of the induced map on injectives
    (+I over sources -> +I over targets).
    """
    basis = algebra_basis(datum)
    blocks = {}
    for v in datum.vertices:
        row_dims = [len(basis.paths(v, b)) for b in targets]
        col_dims = [len(basis.paths(v, a)) for a in sources]
        grid = {}
        for (s, t), elt in entries.items():
            if elt is None or elt.is_zero():
                continue
            cells = {}
            for mono, coeff in elt.terms.items():
                # left multiplication by mono: paths(v, targets[t]) -> paths(v, sources[s])
                for c, y in enumerate(basis.paths(v, targets[t])):
                    my = mono_mul(datum, mono, y)
                    if my is not None:
                        key = (basis.index[my], c)
                        cells[key] = cells.get(key, 0) + coeff
            if cells:
                L = Mat.from_dict(field, (col_dims[s], row_dims[t]), cells)
                grid[(t, s)] = L.transpose()
        blocks[v] = Mat.block(field, grid, row_dims, col_dims)
    return blocks
