"""Type A combinatorics: tableaux, words, LR tableaux and key permutations.

Rows and columns are numbered from 1 in the public API.  A tableau of shape
mu with entries in [d] is read as a concatenation of straight LS paths for
sl_d: its right most column is the first piece, its left most column the
last one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .coxeter import WeylElement, WeylGroup, deodhar_min, coset_min, type_A, LEFT
from .kk import Decomposition
from .paths import straight_path_to
from .standard import ConcatPath, weyl_of


# ---------------------------------------------------------------------------
# Partitions, words, permutations


class Partition(tuple):
    """Weakly decreasing positive parts; trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a partition")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, j: int) -> int:
        """j-th part (1-based), zero past the end."""
        return self[j - 1] if j <= len(self) else 0

    def contains(self, other: Sequence[int]) -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def conjugate(self) -> "Partition":
        return Partition(sum(1 for p in self if p > c) for c in range(self.part(1)))

    def to_weight(self, d: int) -> tuple:
        """Fundamental coordinates of the sl_d weight (needs at most d parts)."""
        if len(self) > d:
            raise ValueError(f"{tuple(self)} has more than {d} parts")
        return tuple(self.part(j) - self.part(j + 1) for j in range(1, d))

    @classmethod
    def from_weight(cls, weight: Sequence[int]) -> "Partition":
        """The partition with fewer than d parts attached to a dominant sl_d weight."""
        parts = []
        total = 0
        for c in reversed(list(weight)):
            total += int(c)
            parts.append(total)
        return cls(reversed(parts))

    def __str__(self) -> str:
        return "+".join(map(str, self)) if self else "0"


def reduce_partition(nu: Sequence[int], d: int) -> Partition:
    """nu-bar: subtract the d-th part from the first d - 1 parts."""
    nu = Partition(nu)
    if len(nu) > d:
        raise ValueError(f"{tuple(nu)} has more than {d} parts")
    return Partition(nu.part(j) - nu.part(d) for j in range(1, d))


class Word(tuple):
    def __new__(cls, letters: Iterable[int] = ()):
        letters = [int(x) for x in letters]
        if any(x < 1 for x in letters):
            raise ValueError("letters must be positive integers")
        return super().__new__(cls, letters)

    def type(self) -> tuple:
        m = max(self, default=0)
        return tuple(self.count(j) for j in range(1, m + 1))

    def weight(self, d: int) -> tuple:
        """Fundamental coordinates of the sl_d weight of the word."""
        counts = [self.count(j) for j in range(1, d + 1)]
        return tuple(counts[j] - counts[j + 1] for j in range(d - 1))

    def __str__(self) -> str:
        return "".join(map(str, self)) if max(self, default=0) < 10 else " ".join(map(str, self))


def superstandard_word(p: Sequence[int]) -> Word:
    """p_1 ones, then p_2 twos, and so on."""
    out = []
    for j, c in enumerate(p, start=1):
        out.extend([j] * c)
    return Word(out)


def is_ballot(word: Sequence[int]) -> bool:
    counts: dict = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
        if x > 1 and counts[x] > counts.get(x - 1, 0):
            return False
    return True


def p_dominant(word: Sequence[int], p: Sequence[int]) -> bool:
    return is_ballot(tuple(superstandard_word(p)) + tuple(word))


def smallest_dominating_partition(word: Sequence[int]) -> Partition:
    """The least partition p for which the word is p-dominant.

    Prefixing word(p) adds p_{e-1} - p_e to the margin of e - 1 over e, so
    p_{e-1} - p_e must cover the worst deficit of the word at letter e.
    """
    word = list(word)
    m = max(word, default=0)
    deficit = [0] * (m + 2)
    counts = [0] * (m + 2)
    for x in word:
        if x > 1:
            deficit[x] = max(deficit[x], counts[x] + 1 - counts[x - 1])
        counts[x] += 1
    return Partition(sum(deficit[e] for e in range(j + 1, m + 1)) for j in range(1, m))


class Permutation(tuple):
    """One-line notation w(1) ... w(n) of a permutation of [n]."""

    def __new__(cls, values: Iterable[int]):
        values = [int(x) for x in values]
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values} is not a permutation of 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text or " " in text:
            return cls(int(t) for t in text.replace(",", " ").split())
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(int(c) for c in text)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def embed(self, n: int) -> "Permutation":
        if n < len(self):
            raise ValueError(f"cannot embed S_{len(self)} into S_{n}")
        return Permutation(tuple(self) + tuple(range(len(self) + 1, n + 1)))

    def inverse(self) -> "Permutation":
        out = [0] * len(self)
        for j, x in enumerate(self, start=1):
            out[x - 1] = j
        return Permutation(out)

    def length(self) -> int:
        return sum(1 for a in range(len(self)) for b in range(a + 1, len(self)) if self[a] > self[b])

    def bruhat_leq(self, other: Sequence[int]) -> bool:
        return perm_bruhat_leq(self, other)

    def to_weyl(self, group: WeylGroup | None = None) -> WeylElement:
        group = group or WeylGroup(type_A(len(self) - 1))
        return group.from_permutation(self.embed(group.rank + 1))

    @classmethod
    def from_weyl(cls, w: WeylElement) -> "Permutation":
        return cls(w.group.to_permutation(w))

    def __str__(self) -> str:
        return "".join(map(str, self)) if len(self) < 10 else ",".join(map(str, self))


def perm_bruhat_leq(x: Sequence[int], z: Sequence[int]) -> bool:
    """Tableau criterion: sorted prefixes of x are below those of z.

    Permutations of different sizes are compared after embedding.
    """
    n = max(len(x), len(z))
    x = list(x) + list(range(len(x) + 1, n + 1))
    z = list(z) + list(range(len(z) + 1, n + 1))
    for k in range(1, n):
        if any(a > b for a, b in zip(sorted(x[:k]), sorted(z[:k]))):
            return False
    return True


def truncate(x: Sequence[int], r: int) -> Permutation:
    """x^(r): keep the first r entries, sort the rest."""
    x = list(x)
    return Permutation(x[:r] + sorted(x[r:]))


def ltrunc(x: Sequence[int], r: int) -> Permutation:
    """Sort the first r entries, keep the rest."""
    x = list(x)
    return Permutation(sorted(x[:r]) + x[r:])


# ---------------------------------------------------------------------------
# Tableaux


def _check_semistandard(cells: dict) -> None:
    for (r, c), e in cells.items():
        if e < 1:
            raise ValueError(f"entry {e} at row {r}, column {c} is not positive")
        right = cells.get((r, c + 1))
        if right is not None and right < e:
            raise ValueError(f"row {r} decreases at column {c}")
        below = cells.get((r + 1, c))
        if below is not None and below <= e:
            raise ValueError(f"column {c} does not strictly increase at row {r}")


@dataclass(frozen=True)
class SSYT:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        while rows and not rows[-1]:
            rows = rows[:-1]
        Partition(len(row) for row in rows)
        object.__setattr__(self, "rows", rows)
        _check_semistandard(self.cells())

    @classmethod
    def parse(cls, text: str) -> "SSYT":
        """"[[1,3,6,8],[2,4],[7]]" or "1368/24/7"."""
        import json

        text = text.strip()
        if text.startswith("["):
            return cls(json.loads(text))
        rows = []
        for part in text.split("/"):
            part = part.strip()
            rows.append([int(t) for t in part.split()] if " " in part else [int(ch) for ch in part])
        return cls(rows)

    def cells(self) -> dict:
        return {(r, c): e for r, row in enumerate(self.rows, start=1) for c, e in enumerate(row, start=1)}

    @property
    def shape(self) -> Partition:
        return Partition(len(row) for row in self.rows)

    def max_entry(self) -> int:
        return max((e for row in self.rows for e in row), default=0)

    def columns(self) -> list:
        width = len(self.rows[0]) if self.rows else 0
        return [tuple(row[c] for row in self.rows if len(row) > c) for c in range(width)]

    def reverse_reading_word(self) -> Word:
        return Word(e for row in self.rows for e in reversed(row))

    def column_word(self) -> Word:
        return Word(e for col in reversed(self.columns()) for e in col)

    def weight(self, d: int) -> tuple:
        return self.reverse_reading_word().weight(d)

    def to_json(self) -> list:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, row)) for row in self.rows)


@dataclass(frozen=True)
class SkewTableau:
    """Entries of nu / inner; ``rows[r-1]`` lists row r left to right."""

    inner: Partition
    rows: tuple

    def __post_init__(self):
        inner = Partition(self.inner)
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        while rows and not rows[-1]:
            rows = rows[:-1]
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "rows", rows)
        nu = self.shape  # validates that nu is a partition
        if not nu.contains(inner):
            raise ValueError("inner shape is not contained in the outer shape")
        _check_semistandard(self.cells())

    @property
    def shape(self) -> Partition:
        n = max(len(self.rows), len(self.inner))
        return Partition(self.inner.part(r) + (len(self.rows[r - 1]) if r <= len(self.rows) else 0) for r in range(1, n + 1))

    def cells(self) -> dict:
        out = {}
        for r, row in enumerate(self.rows, start=1):
            for k, e in enumerate(row):
                out[(r, self.inner.part(r) + k + 1)] = e
        return out

    def reverse_reading_word(self) -> Word:
        return Word(e for row in self.rows for e in reversed(row))

    def column_word(self) -> Word:
        cells = self.cells()
        order = sorted(cells, key=lambda rc: (-rc[1], rc[0]))
        return Word(cells[rc] for rc in order)

    def row_words(self) -> list:
        """w_k(T): row numbers containing k, weakly decreasing, for k = 1..max."""
        m = max((e for row in self.rows for e in row), default=0)
        out = []
        for k in range(1, m + 1):
            found = [r for r, row in enumerate(self.rows, start=1) for e in row if e == k]
            out.append(Word(sorted(found, reverse=True)))
        return out

    def position_word(self) -> Word:
        return Word(x for w in self.row_words() for x in w)

    def is_lr(self) -> bool:
        return is_ballot(self.reverse_reading_word())

    def to_json(self) -> dict:
        return {"inner": list(self.inner), "rows": [list(row) for row in self.rows]}


def reverse_reading_word(T) -> Word:
    return T.reverse_reading_word()


def column_word(T) -> Word:
    return T.column_word()


# ---------------------------------------------------------------------------
# LR tableaux


def _horizontal_strips(shape: list, size: int, rows: int):
    """Ways to add ``size`` boxes to ``shape``, no two in one column, within ``rows`` rows."""
    shape = shape + [0] * (rows - len(shape))

    def rec(r, left):
        if r == rows:
            if left == 0:
                yield ()
            return
        cap = left if r == 0 else min(left, shape[r - 1] - shape[r])
        for n in range(cap, -1, -1):
            for rest in rec(r + 1, left - n):
                yield (n,) + rest

    yield from rec(0, size)


def lr_tableaux(lam: Sequence[int], mu: Sequence[int], d: int | None = None) -> list:
    """LR tableaux of shape nu / lam and type mu with nu having at most d rows.

    Sorted lexicographically by position word.
    """
    lam = Partition(lam)
    mu = Partition(mu)
    rows = d if d is not None else len(lam) + len(mu)
    if len(lam) > rows:
        return []
    out = []

    def rec(j, shape, counts):
        # counts[r][k]: number of k's in row r (both 0-based)
        if j == len(mu):
            tab_rows = []
            for r in range(rows):
                row = []
                for k in range(len(mu)):
                    row.extend([k + 1] * counts[r][k])
                tab_rows.append(row)
            T = SkewTableau(lam, tab_rows)
            if T.is_lr():
                out.append(T)
            return
        for strip in _horizontal_strips(shape, mu[j], rows):
            # entries j + 1 can only sit in rows >= j + 1
            if any(strip[r] for r in range(min(j, rows))):
                continue
            new_shape = [shape[r] + strip[r] for r in range(rows)]
            new_counts = [counts[r] + [strip[r]] for r in range(rows)]
            rec(j + 1, new_shape, new_counts)

    rec(0, list(lam) + [0] * (rows - len(lam)), [[] for _ in range(rows)])
    out.sort(key=lambda T: tuple(T.position_word()))
    return out


def lr_to_ssyt(T: SkewTableau) -> SSYT:
    """Row j lists the rows of T that contain j."""
    if not T.is_lr():
        raise ValueError("not an LR tableau")
    m = max((e for row in T.rows for e in row), default=0)
    out = []
    for j in range(1, m + 1):
        out.append(sorted(r for r, row in enumerate(T.rows, start=1) for e in row if e == j))
    return SSYT(out)


def ssyt_to_lr(S: SSYT, lam: Sequence[int]) -> SkewTableau:
    """Inverse of lr_to_ssyt for a given inner shape."""
    lam = Partition(lam)
    nrows = max([len(lam)] + [e for row in S.rows for e in row])
    rows = [[] for _ in range(nrows)]
    for j, row in enumerate(S.rows, start=1):
        for r in row:
            rows[r - 1].append(j)
    T = SkewTableau(lam, [sorted(row) for row in rows])
    if not T.is_lr():
        raise ValueError("the column word is not dominant for the inner shape")
    return T


def nu_of(T: SkewTableau) -> Partition:
    return T.shape


# ---------------------------------------------------------------------------
# Key permutations


def _depths(cells: dict, start: tuple) -> dict:
    """Longest chain start |> b1 |> ... |> b, b weakly NE with smaller entry."""
    depth = {start: 0}
    for b in sorted(cells, key=lambda rc: -cells[rc]):
        if b not in depth:
            continue
        r, c = b
        e = cells[b]
        for b2, e2 in cells.items():
            if e2 < e and b2[0] <= r and b2[1] >= c:
                if depth.get(b2, -1) < depth[b] + 1:
                    depth[b2] = depth[b] + 1
    return depth


def depth_sequence(S: SSYT, p: int) -> list:
    """y_1 < ... < y_p: largest entries at p-depth p - 1, ..., 0."""
    cells = S.cells()
    start = (p, len(S.rows[p - 1]))
    depth = _depths(cells, start)
    y = []
    for j in range(1, p + 1):
        y.append(max(cells[b] for b, dp in depth.items() if dp == p - j))
    return y


def ssyt_key_permutation(S: SSYT) -> Permutation:
    """The permutation of [m] attached to S by the depth-sequence procedure."""
    m = S.max_entry()
    u: list = []
    for p in range(1, len(S.rows) + 1):
        if p == 1:
            u.append(S.rows[0][-1])
            continue
        y = depth_sequence(S, p)
        a = sorted(u)
        k = max(k for k in range(1, p + 1) if k == 1 or a[k - 2] < y[k - 1])
        u.append(y[k - 1])
    rest = sorted(set(range(1, m + 1)) - set(u))
    return Permutation(u + rest)


def ssyt_from_permutation(r: int, x: Sequence[int]) -> SSYT:
    """S(r, x): column j holds the first n + 1 - j entries of x, j = 1..n - r + 1."""
    x = list(Permutation(x))
    n = len(x)
    if not 1 <= r <= n:
        raise ValueError(f"r = {r} out of range 1..{n}")
    cols = [sorted(x[: n + 1 - j]) for j in range(1, n - r + 2)]
    rows = [[col[i] for col in cols if len(col) > i] for i in range(n)]
    return SSYT(rows)


def truncate_ssyt(S: SSYT, r: int) -> SSYT:
    return SSYT(S.rows[:r])


def _column_path(group: WeylGroup, col: tuple):
    cache = group.__dict__.setdefault("_column_paths", {})
    path = cache.get(col)
    if path is None:
        d = group.rank + 1
        shape = tuple(int(k == len(col) - 1) for k in range(d - 1))
        rest = [v for v in range(1, d + 1) if v not in col]
        path = straight_path_to(group, shape, group.from_permutation(list(col) + rest))
        cache[col] = path
    return path


def ssyt_to_concat(S: SSYT, d: int, group: WeylGroup | None = None) -> ConcatPath:
    """S as a concatenation of straight paths for sl_d, right most column first.

    Columns of height d have weight zero and are dropped.
    """
    group = group or WeylGroup(type_A(d - 1))
    if S.max_entry() > d:
        raise ValueError(f"entries exceed {d}")
    pieces = []
    for col in reversed(S.columns()):
        if len(col) < d:
            pieces.append(_column_path(group, col))
    if not pieces:
        return ConcatPath.straight(group, [(0,) * (d - 1)])
    return ConcatPath.from_pieces(pieces)


def minimal_lift_permutation(S: SSYT, d: int, group: WeylGroup | None = None) -> Permutation:
    """Initial element of the minimal standard lift of S, in one-line notation."""
    theta = ssyt_to_concat(S, d, group)
    w = weyl_of(theta)
    return Permutation.from_weyl(w)


# ---------------------------------------------------------------------------
# Deodhar in S_n


def sn_deodhar_recipe(sigma: Sequence[int], r: int, w: Sequence[int]) -> Permutation:
    """min{v in sigma W_r : v >= w}, W_r fixing {1..r} setwise.

    Requires sigma minimal in its coset and w_1 < ... < w_r.
    """
    sigma = list(Permutation(sigma))
    w = list(Permutation(w))
    n = len(sigma)
    if len(w) != n:
        raise ValueError("sigma and w must have the same size")
    if not 1 <= r < n:
        raise ValueError(f"r = {r} out of range 1..{n - 1}")
    if sigma[:r] != sorted(sigma[:r]) or sigma[r:] != sorted(sigma[r:]):
        raise ValueError("sigma is not the minimal element of its coset")
    if w[:r] != sorted(w[:r]):
        raise ValueError("the first r entries of w must increase")
    if any(a > b for a, b in zip(w[:r], sigma[:r])):
        raise ValueError("no element of the coset lies above w")
    tau = sigma[:r]
    for j in range(r + 1, n + 1):
        t = sorted(tau)
        wj = sorted(w[:j])
        k = max(k for k in range(1, j + 1) if k == 1 or t[k - 2] < wj[k - 1])
        tau.append(wj[k - 1])
    return Permutation(tau)


def sn_deodhar_min(sigma: Sequence[int], r: int, w: Sequence[int]) -> Permutation | None:
    """The same minimum, computed in the Weyl group of type A."""
    n = len(sigma)
    group = WeylGroup(type_A(n - 1))
    J = [i for i in range(1, n) if i != r]
    coset = coset_min(group.from_permutation(sigma), J, LEFT)
    v = deodhar_min(coset, group.from_permutation(w))
    return None if v is None else Permutation.from_weyl(v)


# ---------------------------------------------------------------------------
# Refined LR coefficients and the tableau decomposition rule


def tableau_key(T: SkewTableau) -> Permutation:
    return ssyt_key_permutation(lr_to_ssyt(T))


def refined_lr_coefficient(lam, mu, nu, w: Sequence[int], d: int) -> int:
    nu = Partition(nu)
    return sum(1 for T in lr_tableaux(lam, mu, d) if T.shape == nu and perm_bruhat_leq(tableau_key(T), w))


def kk_decompose_tableaux(lam, mu, w: Sequence[int], d: int, gl: bool = False) -> Decomposition:
    """Highest weights of K(lam, w, mu) from LR tableaux with key <= w.

    Keys are partitions: nu for gl_d, nu-bar for sl_d.
    """
    out = Decomposition()
    for T in lr_tableaux(lam, mu, d):
        if perm_bruhat_leq(tableau_key(T), w):
            nu = T.shape if gl else reduce_partition(T.shape, d)
            out[tuple(nu)] = out.get(tuple(nu), 0) + 1
    return out


def decomposition_to_weights(dec: Decomposition, d: int) -> Decomposition:
    """Re-key a partition-keyed decomposition by fundamental coordinates."""
    out = Decomposition()
    for nu, m in dec.items():
        key = Partition(nu).to_weight(d) if len(Partition(nu)) <= d else None
        if key is None:
            continue
        out[key] = out.get(key, 0) + m
    return out


def all_ssyt(shape: Sequence[int], max_entry: int) -> list:
    """Every SSYT of the given shape with entries in [max_entry]."""
    shape = list(Partition(shape))
    out = []
    rows: list = []

    def rec(r):
        if r == len(shape):
            out.append(SSYT([tuple(x) for x in rows]))
            return
        above = rows[r - 1] if r else None
        for row in combinations_with_replacement(range(1, max_entry + 1), shape[r]):
            if above is not None and any(row[c] <= above[c] for c in range(len(row))):
                continue
            rows.append(row)
            rec(r + 1)
            rows.pop()

    rec(0)
    return out
