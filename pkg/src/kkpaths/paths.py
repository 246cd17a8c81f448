"""Piecewise-linear paths, LS paths and Littelmann's root operators.

Two representations live here.

``PLPath`` is a plain list of rational vertices.  It is the geometric
object: root operators are computed on vertex coordinates directly.

``SegPath`` stores a concatenation of LS paths as a list of segments
``(piece, k, a)``: the segment is ``a`` times the ``k``-th point of the
W-orbit of the shape of ``piece``.  Reflecting a segment is a table lookup,
which keeps crystal generation fast.  The two implementations are checked
against each other in the test-suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .coxeter import Coset, WeylElement, WeylGroup, coset_min, stabilizer, LEFT

ZERO = Fraction(0)
ONE = Fraction(1)


class PathError(ValueError):
    """Raised when a path is not in a crystal generated from straight paths."""


def _as_weight(v: Iterable) -> tuple:
    """Integral coordinates as ints, everything else kept as Fractions."""
    out = []
    for x in v:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def dominant_conjugate(group: WeylGroup, weight: Sequence) -> tuple:
    """(nu_bar, u) with nu_bar dominant and u minimal such that u(nu_bar) = weight."""
    v = tuple(weight)
    word = []
    reflect = group.cartan.reflect
    while True:
        for i, c in enumerate(v):
            if c < 0:
                word.append(i + 1)
                v = reflect(v, i + 1)
                break
        else:
            break
    return v, group.from_word(word)


class Orbit:
    """The W-orbit of a dominant weight, with simple-reflection tables.

    Orbit points are in bijection with W/W_shape; ``rep(k)`` is the minimal
    representative of the coset belonging to point ``k``.
    """

    def __init__(self, group: WeylGroup, shape: Sequence[int]):
        shape = tuple(int(x) for x in shape)
        if any(x < 0 for x in shape):
            raise ValueError(f"shape {shape} is not dominant")
        if len(shape) != group.rank:
            raise ValueError(f"shape {shape} has wrong length for rank {group.rank}")
        self.group = group
        self.shape = shape
        self.parabolic = stabilizer(shape)
        reflect = group.cartan.reflect
        self.weights = [shape]
        self.index = {shape: 0}
        queue = deque([shape])
        while queue:
            v = queue.popleft()
            for i in range(1, group.rank + 1):
                u = reflect(v, i)
                if u not in self.index:
                    self.index[u] = len(self.weights)
                    self.weights.append(u)
                    queue.append(u)
        # reflect_table[i][k] = index of s_{i+1}(weights[k])
        self.reflect_table = [
            [self.index[reflect(v, i + 1)] for v in self.weights]
            for i in range(group.rank)
        ]
        self._reps: dict = {}

    def __len__(self) -> int:
        return len(self.weights)

    def rep(self, k: int) -> WeylElement:
        out = self._reps.get(k)
        if out is None:
            _, out = dominant_conjugate(self.group, self.weights[k])
            self._reps[k] = out
        return out

    def coset(self, k: int) -> Coset:
        return Coset(self.rep(k), self.parabolic, LEFT)

    def point_of(self, w: WeylElement) -> int:
        return self.index[w.act(self.shape)]


def orbit(group: WeylGroup, shape: Sequence[int]) -> Orbit:
    cache = group.__dict__.setdefault("_orbits", {})
    key = tuple(int(x) for x in shape)
    out = cache.get(key)
    if out is None:
        out = Orbit(group, key)
        cache[key] = out
    return out


# ---------------------------------------------------------------------------
# Segment paths


def _num(x):
    """Integral values as int (fast arithmetic), the rest as Fraction."""
    t = type(x)
    if t is int:
        return x
    if t is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _div(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _num(Fraction(a) / b)


def _ratio(n: int, d: int):
    return n // d if n % d == 0 else Fraction(n, d)


def _canonical_segs(segs: Iterable) -> tuple:
    out = []
    for seg in segs:
        if seg[2] == 0:
            continue
        if out and out[-1][0] == seg[0] and out[-1][1] == seg[1]:
            p, k, a = out[-1]
            out[-1] = (p, k, _num(a + seg[2]))
        else:
            out.append((seg[0], seg[1], _num(seg[2])))
    return tuple(out)


def _h_values(segs, orbits, i0):
    h = 0
    values = [h]
    for p, k, a in segs:
        h = h + a * orbits[p].weights[k][i0]
        values.append(h)
    return values


def _scaled_heights(segs, orbits, i0):
    """(D, H) with H the height values times D, all integers."""
    D = 1
    for _, _, a in segs:
        if type(a) is not int:
            D = lcm(D, a.denominator)
    h = 0
    H = [0]
    for p, k, a in segs:
        n = a * D if type(a) is int else a.numerator * (D // a.denominator)
        h += n * orbits[p].weights[k][i0]
        H.append(h)
    return D, H


def _check_integral(m):
    if m.denominator != 1:
        raise PathError(f"minimum {m} of the height function is not an integer")


def _min_height(D, H) -> int:
    m = min(H)
    if m % D:
        raise PathError(f"minimum {Fraction(m, D)} of the height function is not an integer")
    return m


def _segs_f(segs, orbits, i):
    i0 = i - 1
    D, H = _scaled_heights(segs, orbits, i0)
    m = _min_height(D, H)
    if H[-1] - m < D:
        return None
    k0 = max(j for j, h in enumerate(H) if h == m)
    target = m + D
    j = k0
    while H[j + 1] < target:
        j += 1
    p, k, a = segs[j]
    b = _ratio(target - H[j], D * orbits[p].weights[k][i0])
    out = list(segs[:k0])
    for q, kk, c in segs[k0:j]:
        out.append((q, orbits[q].reflect_table[i0][kk], c))
    out.append((p, orbits[p].reflect_table[i0][k], b))
    if b < a:
        out.append((p, k, a - b))
    out.extend(segs[j + 1:])
    return _canonical_segs(out)


def _segs_e(segs, orbits, i):
    i0 = i - 1
    D, H = _scaled_heights(segs, orbits, i0)
    m = _min_height(D, H)
    if m > -D:
        return None
    k1 = H.index(m)
    target = m + D
    j = k1 - 1
    while H[j] < target:
        j -= 1
    p, k, a = segs[j]
    b = _ratio(H[j] - target, -D * orbits[p].weights[k][i0])
    out = list(segs[:j])
    if b > 0:
        out.append((p, k, b))
    out.append((p, orbits[p].reflect_table[i0][k], a - b))
    for q, kk, c in segs[j + 1:k1]:
        out.append((q, orbits[q].reflect_table[i0][kk], c))
    out.extend(segs[k1:])
    return _canonical_segs(out)


class SegPath:
    """Concatenation pi_1 * ... * pi_n of LS paths, stored segment-wise."""

    __slots__ = ("orbits", "segs", "_hash")

    def __init__(self, orbits: Sequence[Orbit], segs: Iterable):
        self.orbits = tuple(orbits)
        self.segs = _canonical_segs(segs)
        self._hash = None

    # identity ------------------------------------------------------------
    @property
    def group(self) -> WeylGroup:
        return self.orbits[0].group

    @property
    def shapes(self) -> tuple:
        return tuple(o.shape for o in self.orbits)

    def _key(self):
        return (self.shapes, self.segs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SegPath) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"

    def _new(self, segs):
        return type(self)(self.orbits, segs)

    # geometry ------------------------------------------------------------
    def vectors(self) -> list:
        return [tuple(a * x for x in self.orbits[p].weights[k]) for p, k, a in self.segs]

    def vertices(self) -> list:
        n = self.group.rank
        v = (ZERO,) * n
        out = [v]
        for seg in self.vectors():
            v = tuple(x + y for x, y in zip(v, seg))
            out.append(v)
        return out

    @property
    def endpoint(self) -> tuple:
        n = self.group.rank
        D = 1
        for _, _, a in self.segs:
            if type(a) is not int:
                D = lcm(D, a.denominator)
        total = [0] * n
        for p, k, a in self.segs:
            c = a * D if type(a) is int else a.numerator * (D // a.denominator)
            w = self.orbits[p].weights[k]
            for j in range(n):
                total[j] += c * w[j]
        return tuple(_ratio(x, D) for x in total)

    def to_plpath(self) -> "PLPath":
        return PLPath(self.vertices(), self.group.cartan)

    def height(self, i: int) -> list:
        """Values of t -> <pi(t), alpha_i^vee> at the vertices."""
        return _h_values(self.segs, self.orbits, i - 1)

    def pieces(self) -> list:
        """The factors pi_1, ..., pi_n as single-piece LS paths."""
        out = []
        for p, o in enumerate(self.orbits):
            out.append(LSPath((o,), [(0, k, a) for q, k, a in self.segs if q == p]))
        return out

    # crystal structure ---------------------------------------------------
    def root_f(self, i: int):
        out = _segs_f(self.segs, self.orbits, i)
        return None if out is None else self._new(out)

    def root_e(self, i: int):
        out = _segs_e(self.segs, self.orbits, i)
        return None if out is None else self._new(out)

    def phi(self, i: int) -> int:
        D, H = _scaled_heights(self.segs, self.orbits, i - 1)
        return (H[-1] - min(H)) // D

    def eps(self, i: int) -> int:
        D, H = _scaled_heights(self.segs, self.orbits, i - 1)
        return -min(H) // D

    def is_dominant(self, base: Sequence[int] | None = None) -> bool:
        return is_lambda_dominant(self, base if base is not None else (0,) * self.group.rank)

    def to_json(self) -> list:
        return [[_frac_str(x) for x in v] for v in self.vertices()]


class LSPath(SegPath):
    """An LS path of a single shape."""

    __slots__ = ()

    @property
    def shape(self) -> tuple:
        return self.orbits[0].shape

    @property
    def orbit(self) -> Orbit:
        return self.orbits[0]

    def directions(self) -> list:
        """Orbit indices of the directions tau_1 > ... > tau_r."""
        return [k for _, k, _ in self.segs]

    def cut_points(self) -> list:
        out = [ZERO]
        for _, _, a in self.segs:
            out.append(out[-1] + a)
        return out

    def initial_point(self) -> int:
        return self.segs[0][1] if self.segs else 0

    def final_point(self) -> int:
        return self.segs[-1][1] if self.segs else 0

    def initial_direction(self) -> Coset:
        return self.orbit.coset(self.initial_point())

    def final_direction(self) -> Coset:
        return self.orbit.coset(self.final_point())


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def straight_path(group: WeylGroup, shape: Sequence[int]) -> LSPath:
    o = orbit(group, shape)
    if not any(o.shape):
        return LSPath((o,), [])
    return LSPath((o,), [(0, 0, ONE)])


def straight_path_to(group: WeylGroup, shape: Sequence[int], w: WeylElement) -> LSPath:
    """The straight line from 0 to w(shape)."""
    o = orbit(group, shape)
    if not any(o.shape):
        return LSPath((o,), [])
    return LSPath((o,), [(0, o.point_of(w), ONE)])


def concat_paths(*paths: SegPath) -> SegPath:
    """Concatenation keeping the pieces apart (cf. ``concat`` for PLPath)."""
    orbits = []
    segs = []
    for path in paths:
        offset = len(orbits)
        orbits.extend(path.orbits)
        segs.extend((p + offset, k, a) for p, k, a in path.segs)
    return SegPath(orbits, segs)


# ---------------------------------------------------------------------------
# Crystals


class Crystal:
    """The crystal generated from a dominant path by the lowering operators.

    Elements are kept in breadth-first order; ``f[i][x]`` and ``e[i][x]``
    hold element indices (or -1).
    """

    def __init__(self, top: SegPath):
        group = top.group
        rank = group.rank
        self.top = top
        self.group = group
        self.paths = [top]
        self.index = {top: 0}
        self.f = [[] for _ in range(rank)]
        queue = deque([0])
        pending = []
        while queue:
            x = queue.popleft()
            path = self.paths[x]
            for i in range(1, rank + 1):
                y = path.root_f(i)
                if y is None:
                    pending.append((i, x, -1))
                    continue
                idx = self.index.get(y)
                if idx is None:
                    idx = len(self.paths)
                    self.index[y] = idx
                    self.paths.append(y)
                    queue.append(idx)
                pending.append((i, x, idx))
        size = len(self.paths)
        self.f = [[-1] * size for _ in range(rank)]
        self.e = [[-1] * size for _ in range(rank)]
        for i, x, y in pending:
            self.f[i - 1][x] = y
            if y >= 0:
                self.e[i - 1][y] = x
        self.phi = [[0] * size for _ in range(rank)]
        self.eps = [[0] * size for _ in range(rank)]
        for x, path in enumerate(self.paths):
            for i in range(rank):
                D, H = _scaled_heights(path.segs, path.orbits, i)
                m = min(H)
                self.phi[i][x] = (H[-1] - m) // D
                self.eps[i][x] = -m // D
        self.endpoints = [p.endpoint for p in self.paths]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __contains__(self, path) -> bool:
        return path in self.index

    def character(self) -> dict:
        out: dict = {}
        for v in self.endpoints:
            out[v] = out.get(v, 0) + 1
        return out


class LSCrystal(Crystal):
    """All LS paths of a given dominant shape."""

    def __init__(self, group: WeylGroup, shape: Sequence[int]):
        super().__init__(straight_path(group, shape))
        self.shape = tuple(shape)
        self.orbit = self.top.orbits[0]
        self.initial_points = [p.initial_point() for p in self.paths]
        self.final_points = [p.final_point() for p in self.paths]


def generate_crystal(group: WeylGroup, shape: Sequence[int]) -> LSCrystal:
    """The LS paths of shape ``shape``, closed under the root operators f_i."""
    cache = group.__dict__.setdefault("_crystals", {})
    key = tuple(int(x) for x in shape)
    out = cache.get(key)
    if out is None:
        out = LSCrystal(group, key)
        cache[key] = out
    return out


def initial_direction(path: LSPath) -> Coset:
    return path.initial_direction()


def final_direction(path: LSPath) -> Coset:
    return path.final_direction()


# ---------------------------------------------------------------------------
# Plain piecewise-linear paths


def _positively_parallel(u, v) -> bool:
    ratio = None
    for x, y in zip(u, v):
        if x == 0 and y == 0:
            continue
        if x == 0 or y == 0:
            return False
        r = Fraction(y) / Fraction(x)
        if r <= 0 or (ratio is not None and r != ratio):
            return False
        ratio = r
    return ratio is not None


def _canonical_vectors(vectors):
    out = []
    for v in vectors:
        if not any(v):
            continue
        if out and _positively_parallel(out[-1], v):
            out[-1] = tuple(x + y for x, y in zip(out[-1], v))
        else:
            out.append(tuple(v))
    return out


@dataclass(frozen=True)
class PLPath:
    """A piecewise-linear path from the origin, given by its vertices.

    Canonical form drops zero segments and merges consecutive positively
    parallel ones, so equality is equality up to reparametrization.
    """

    vertices: tuple
    cartan: object = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        verts = [tuple(Fraction(x) for x in v) for v in self.vertices]
        if not verts:
            raise ValueError("a path needs at least one vertex")
        if any(verts[0]):
            raise ValueError("paths start at the origin")
        vecs = [tuple(b - a for a, b in zip(p, q)) for p, q in zip(verts, verts[1:])]
        object.__setattr__(self, "vertices", _vertices_from(len(verts[0]), _canonical_vectors(vecs)))

    @classmethod
    def from_vectors(cls, vectors, cartan=None, rank=None) -> "PLPath":
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        if rank is None and not vectors:
            raise ValueError("rank is needed for an empty path")
        n = rank if rank is not None else len(vectors[0])
        return cls(_vertices_from(n, vectors), cartan)

    def vectors(self) -> list:
        return [tuple(b - a for a, b in zip(p, q)) for p, q in zip(self.vertices, self.vertices[1:])]

    @property
    def endpoint(self) -> tuple:
        return _as_weight(self.vertices[-1])

    def height(self, i: int) -> list:
        return [v[i - 1] for v in self.vertices]

    def root_f(self, i: int):
        return root_f(self, i)

    def root_e(self, i: int):
        return root_e(self, i)

    def to_json(self) -> list:
        return [[_frac_str(x) for x in v] for v in self.vertices]


def _vertices_from(n, vectors):
    v = (ZERO,) * n
    out = [v]
    for seg in vectors:
        v = tuple(x + y for x, y in zip(v, seg))
        out.append(v)
    return tuple(out)


def _reflect_vec(cartan, v, i):
    c = v[i - 1]
    if c == 0:
        return v
    col = cartan.simple_root(i)
    return tuple(x - c * a for x, a in zip(v, col))


def _pl_root(p: PLPath, i: int, lower: bool):
    if p.cartan is None:
        raise ValueError("root operators on a PLPath need its Cartan matrix")
    H = p.height(i)
    vecs = p.vectors()
    m = min(H)
    _check_integral(m)
    target = m + 1
    if lower:
        if H[-1] - m < 1:
            return None
        k0 = max(j for j, h in enumerate(H) if h == m)
        j = k0
        while H[j + 1] < target:
            j += 1
        c = _div(target - H[j], H[j + 1] - H[j])
        v = vecs[j]
        out = vecs[:k0] + [_reflect_vec(p.cartan, u, i) for u in vecs[k0:j]]
        out.append(_reflect_vec(p.cartan, tuple(c * x for x in v), i))
        out.append(tuple((1 - c) * x for x in v))
        out.extend(vecs[j + 1:])
    else:
        if m > -1:
            return None
        k1 = H.index(m)
        j = k1 - 1
        while H[j] < target:
            j -= 1
        c = _div(H[j] - target, H[j] - H[j + 1])
        v = vecs[j]
        out = vecs[:j] + [tuple(c * x for x in v)]
        out.append(_reflect_vec(p.cartan, tuple((1 - c) * x for x in v), i))
        out.extend(_reflect_vec(p.cartan, u, i) for u in vecs[j + 1:k1])
        out.extend(vecs[k1:])
    return PLPath.from_vectors(_canonical_vectors(out), p.cartan, rank=len(p.vertices[0]))


def root_f(p, i: int):
    """Littelmann's lowering operator f_i; None when it vanishes."""
    if isinstance(p, SegPath):
        return p.root_f(i)
    return _pl_root(p, i, lower=True)


def root_e(p, i: int):
    """Littelmann's raising operator e_i; None when it vanishes."""
    if isinstance(p, SegPath):
        return p.root_e(i)
    return _pl_root(p, i, lower=False)


def concat(p1, p2) -> PLPath:
    """Concatenation as a plain path: p2 translated to the end of p1."""
    a = p1.to_plpath() if isinstance(p1, SegPath) else p1
    b = p2.to_plpath() if isinstance(p2, SegPath) else p2
    cartan = a.cartan if a.cartan is not None else b.cartan
    return PLPath.from_vectors(a.vectors() + b.vectors(), cartan, rank=len(a.vertices[0]))


def pl_straight_path(cartan, shape: Sequence) -> PLPath:
    n = len(shape)
    return PLPath(((0,) * n, tuple(shape)), cartan)


def is_lambda_dominant(path, base: Sequence[int]) -> bool:
    """True iff base + path(t) is dominant for all t; vertices suffice."""
    verts = path.vertices() if isinstance(path, SegPath) else path.vertices
    for v in verts:
        for x, b in zip(v, base):
            if x + b < 0:
                return False
    return True


def raise_to_dominant(path):
    """Apply e_i (smallest i first) until every e_i vanishes.

    Returns (eta, log) where log lists the applied raising operators as
    (i, "e") pairs in order of application.
    """
    rank = path.group.rank if isinstance(path, SegPath) else len(path.vertices[0])
    log = []
    while True:
        for i in range(1, rank + 1):
            q = root_e(path, i)
            if q is not None:
                path = q
                log.append((i, "e"))
                break
        else:
            return path, log


def lowering_word(path) -> list:
    """Indices i_1, ..., i_k with path = f_{i_1} ... f_{i_k} eta(path)."""
    _, log = raise_to_dominant(path)
    return [i for i, _ in log]
