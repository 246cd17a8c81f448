"""Finite Weyl groups from Cartan matrices, Bruhat order and extremal elements.

An element ``w`` is stored through the integral weight ``w(rho)`` where
``rho`` is the all-ones vector in fundamental-weight coordinates.  The
coordinate ``i`` of ``w(rho)`` is negative exactly when ``s_i w < w``, which
makes reduced words, lengths and left descents cheap to recover.

Simple reflection indices are 1-based everywhere in the public API.
"""

from __future__ import annotations

import os
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Weight = tuple  # tuple of ints (or Fractions) in fundamental-weight coordinates

DEFAULT_MAX_GROUP = 10**6
LEFT = "left"
RIGHT = "right"


class InfiniteTypeError(ValueError):
    """The Weyl group of the Cartan matrix exceeds the configured size bound."""


class CartanError(ValueError):
    pass


def max_group_size() -> int:
    raw = os.environ.get("KKPATH_MAX_GROUP")
    if raw is None:
        return DEFAULT_MAX_GROUP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"KKPATH_MAX_GROUP must be an integer, got {raw!r}")


@dataclass(frozen=True)
class CartanMatrix:
    """Generalized Cartan matrix with ``a[i][j] = <alpha_j, alpha_i^vee>``.

    Column ``j`` is the simple root ``alpha_j`` in fundamental-weight
    coordinates.
    """

    a: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", rows)
        n = len(rows)
        if n == 0:
            raise CartanError("empty Cartan matrix")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CartanError(f"row {i + 1} has length {len(row)}, expected {n}")
            if row[i] != 2:
                raise CartanError(f"diagonal entry a[{i + 1}][{i + 1}] must be 2")
            for j, x in enumerate(row):
                if i == j:
                    continue
                if x > 0:
                    raise CartanError(f"off-diagonal entry a[{i + 1}][{j + 1}] is positive")
                if (x == 0) != (rows[j][i] == 0):
                    raise CartanError(f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] must vanish together")

    @property
    def rank(self) -> int:
        return len(self.a)

    def simple_root(self, i: int) -> tuple:
        """alpha_i (1-based) in fundamental-weight coordinates."""
        return tuple(row[i - 1] for row in self.a)

    def reflect(self, weight: Sequence, i: int) -> tuple:
        c = weight[i - 1]
        if c == 0:
            return tuple(weight)
        return tuple(x - c * row[i - 1] for x, row in zip(weight, self.a))

    def to_json(self) -> list:
        return [list(row) for row in self.a]


_BUILTIN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "A5": [[2, -1, 0, 0, 0], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0],
           [0, 0, -1, 2, -1], [0, 0, 0, -1, 2]],
    # alpha_1 short, alpha_2 long
    "B2": [[2, -2], [-1, 2]],
    # Bourbaki labelling: alpha_n short for B, long for C
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    # alpha_1 short
    "G2": [[2, -3], [-1, 2]],
}


def builtin_types() -> list:
    return sorted(_BUILTIN)


def type_A(n: int) -> CartanMatrix:
    """Cartan matrix of A_n (so the Weyl group is S_{n+1})."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i > 0:
            a[i][i - 1] = -1
        if i + 1 < n:
            a[i][i + 1] = -1
    return CartanMatrix(a)


def cartan_matrix(name: str) -> CartanMatrix:
    key = name.strip().upper()
    if key in _BUILTIN:
        return CartanMatrix(_BUILTIN[key])
    raise CartanError(f"unknown type {name!r}; built-in types are {', '.join(builtin_types())}")


@dataclass(frozen=True)
class WeylElement:
    """Element of a finite Weyl group, identified by its image of rho."""

    rho_image: tuple
    group: "WeylGroup" = field(compare=False, hash=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.reduced_word())

    def reduced_word(self) -> tuple:
        return self.group.reduced_word(self)

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def left_descents(self) -> frozenset:
        return frozenset(i + 1 for i, c in enumerate(self.rho_image) if c < 0)

    def right_descents(self) -> frozenset:
        return self.inverse().left_descents()

    def act(self, weight: Sequence) -> tuple:
        return self.group.act(self, weight)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.multiply(self, other)

    def __le__(self, other: "WeylElement") -> bool:
        return bruhat_leq(self, other)

    def __lt__(self, other: "WeylElement") -> bool:
        return self != other and bruhat_leq(self, other)

    def __ge__(self, other: "WeylElement") -> bool:
        return bruhat_leq(other, self)

    def __gt__(self, other: "WeylElement") -> bool:
        return self != other and bruhat_leq(other, self)

    def __str__(self) -> str:
        word = self.reduced_word()
        return ",".join(map(str, word)) if word else "e"

    def __repr__(self) -> str:
        return f"WeylElement({self})"


class WeylGroup:
    """The Weyl group of a finite-type Cartan matrix.

    Caches (reduced words, inverses, group enumeration, parabolic subgroups)
    are plain dicts filled with deterministic values, so concurrent readers
    can at worst compute an entry twice; enumeration is guarded by a lock.
    """

    def __init__(self, cartan: CartanMatrix, max_size: int | None = None):
        if not isinstance(cartan, CartanMatrix):
            cartan = CartanMatrix(cartan)
        self.cartan = cartan
        self.rank = cartan.rank
        self.max_size = max_group_size() if max_size is None else max_size
        self.rho = (1,) * self.rank
        self._words: dict = {}
        self._inverses: dict = {}
        self._elements: list | None = None
        self._parabolic: dict = {}
        self._deodhar: dict = {}
        self._type_A: bool | None = None
        self._lock = threading.Lock()
        self.elements()  # validates finite type

    def __repr__(self) -> str:
        return f"WeylGroup({self.cartan.to_json()})"

    # construction -------------------------------------------------------
    def element(self, rho_image: Sequence) -> WeylElement:
        return WeylElement(tuple(rho_image), self)

    @property
    def identity(self) -> WeylElement:
        return WeylElement(self.rho, self)

    def s(self, i: int) -> WeylElement:
        self._check_index(i)
        return WeylElement(self.cartan.reflect(self.rho, i), self)

    def from_word(self, word: Iterable[int]) -> WeylElement:
        """The product s_{i1} s_{i2} ... s_{ik} (need not be reduced)."""
        v = self.rho
        for i in reversed(list(word)):
            self._check_index(i)
            v = self.cartan.reflect(v, i)
        return WeylElement(v, self)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple reflection index {i} out of range 1..{self.rank}")

    # basic structure ----------------------------------------------------
    def reduced_word(self, w: WeylElement) -> tuple:
        """Reduced word by stripping the smallest left descent each step."""
        key = w.rho_image
        word = self._words.get(key)
        if word is None:
            out = []
            v = key
            reflect = self.cartan.reflect
            while True:
                for i, c in enumerate(v):
                    if c < 0:
                        out.append(i + 1)
                        v = reflect(v, i + 1)
                        break
                else:
                    break
            word = tuple(out)
            self._words[key] = word
        return word

    def act(self, w: WeylElement, weight: Sequence) -> tuple:
        v = tuple(weight)
        for i in reversed(self.reduced_word(w)):
            v = self.cartan.reflect(v, i)
        return v

    def inverse(self, w: WeylElement) -> WeylElement:
        key = w.rho_image
        inv = self._inverses.get(key)
        if inv is None:
            inv = self.from_word(reversed(self.reduced_word(w))).rho_image
            self._inverses[key] = inv
            self._inverses[inv] = key
        return WeylElement(inv, self)

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return WeylElement(self.act(u, v.rho_image), self)

    def left_mul_simple(self, i: int, w: WeylElement) -> WeylElement:
        return WeylElement(self.cartan.reflect(w.rho_image, i), self)

    def right_mul_simple(self, w: WeylElement, i: int) -> WeylElement:
        # w s_i (rho) = w(rho - alpha_i) = w(rho) - w(alpha_i)
        wa = self.act(w, self.cartan.simple_root(i))
        return WeylElement(tuple(x - y for x, y in zip(w.rho_image, wa)), self)

    def elements(self) -> list:
        """All elements, identity first, ordered by length then reduced word."""
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._elements = self._enumerate()
        return self._elements

    def _enumerate(self) -> list:
        seen = {self.rho}
        queue = deque([self.rho])
        reflect = self.cartan.reflect
        while queue:
            v = queue.popleft()
            for i in range(1, self.rank + 1):
                u = reflect(v, i)
                if u not in seen:
                    seen.add(u)
                    if len(seen) > self.max_size:
                        raise InfiniteTypeError(
                            f"Weyl group has more than {self.max_size} elements; "
                            "the Cartan matrix is not of finite type (or raise KKPATH_MAX_GROUP)")
                    queue.append(u)
        elems = [WeylElement(v, self) for v in seen]
        elems.sort(key=lambda w: (len(w.reduced_word()), w.reduced_word()))
        return elems

    def __len__(self) -> int:
        return len(self.elements())

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements())

    @property
    def longest(self) -> WeylElement:
        return WeylElement(tuple(-x for x in self.rho), self)

    def parabolic_subgroup(self, J: Iterable[int]) -> list:
        """Elements of W_J, identity first."""
        key = frozenset(J)
        out = self._parabolic.get(key)
        if out is None:
            seen = {self.rho}
            order = [self.rho]
            queue = deque([self.rho])
            while queue:
                v = queue.popleft()
                for i in sorted(key):
                    u = self.cartan.reflect(v, i)
                    if u not in seen:
                        seen.add(u)
                        order.append(u)
                        queue.append(u)
            out = [WeylElement(v, self) for v in order]
            self._parabolic[key] = out
        return out

    def longest_parabolic(self, J: Iterable[int]) -> WeylElement:
        return max(self.parabolic_subgroup(J), key=lambda w: w.length)

    # one-line notation (type A only) ------------------------------------
    def is_type_A(self) -> bool:
        if self._type_A is None:
            self._type_A = self.cartan == type_A(self.rank)
        return self._type_A

    def from_permutation(self, perm: Sequence[int]) -> WeylElement:
        """Element of S_{n} = W(A_{n-1}) from one-line notation w(1)..w(n)."""
        n = self.rank + 1
        if not self.is_type_A():
            raise ValueError("one-line notation is only available in type A")
        perm = list(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{n}")
        eps = [0] * (n + 1)
        for j, value in enumerate(perm, start=1):
            eps[value] = n - j  # w(rho) has n-j in position w(j)
        return WeylElement(tuple(eps[k] - eps[k + 1] for k in range(1, n)), self)

    def to_permutation(self, w: WeylElement) -> tuple:
        n = self.rank + 1
        eps = [0] * n
        for k in range(n - 2, -1, -1):
            eps[k] = eps[k + 1] + w.rho_image[k]
        shift = min(eps)
        position = {e - shift: k + 1 for k, e in enumerate(eps)}
        return tuple(position[n - j] for j in range(1, n + 1))

    def parse(self, text: str) -> WeylElement:
        """Parse "1,2,1", "e", or (type A) one-line notation such as "2413"."""
        text = text.strip()
        if text in ("", "e", "id"):
            return self.identity
        if "," in text or " " in text:
            try:
                word = [int(t) for t in text.replace(" ", ",").split(",") if t]
            except ValueError:
                raise ValueError(f"cannot parse reduced word {text!r}") from None
            return self.from_word(word)
        if self.is_type_A() and len(text) == self.rank + 1 and text.isdigit():
            return self.from_permutation([int(c) for c in text])
        if text.isdigit() and len(text) == 1:
            return self.from_word([int(text)])
        raise ValueError(f"cannot parse Weyl group element {text!r}")


# ---------------------------------------------------------------------------
# Bruhat order


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """u <= v via the lifting property: pick s with sv < v; then u <= v iff
    min(u, su) <= sv.  The recursion is linear in the length of v."""
    group = v.group
    reflect = group.cartan.reflect
    a, b = u.rho_image, v.rho_image
    la = len(group.reduced_word(u))
    lb = len(group.reduced_word(v))
    while True:
        if la > lb:
            return False
        if lb == la:
            return a == b
        if la == 0:
            return True
        for i, c in enumerate(b):
            if c < 0:
                break
        b = reflect(b, i + 1)
        lb -= 1
        if a[i] < 0:
            a = reflect(a, i + 1)
            la -= 1


def meet_simple(u: WeylElement, i: int, side: str = LEFT) -> WeylElement:
    """The smaller of u and s_i u (left) or u s_i (right)."""
    if side == LEFT:
        return u.group.left_mul_simple(i, u) if u.rho_image[i - 1] < 0 else u
    v = u.group.right_mul_simple(u, i)
    return v if v.length < u.length else u


def join_simple(u: WeylElement, i: int, side: str = LEFT) -> WeylElement:
    if side == LEFT:
        return u if u.rho_image[i - 1] < 0 else u.group.left_mul_simple(i, u)
    v = u.group.right_mul_simple(u, i)
    return v if v.length > u.length else u


def brmin_interval_act(sigma: WeylElement, w: WeylElement, side: str = LEFT) -> WeylElement:
    """Minimum of I(sigma) w (left) or of w I(sigma^{-1}) (right).

    With sigma = t_m ... t_1 reduced, u_0 = w and u_j = u_{j-1} meet t_j u_{j-1};
    u_m is the answer.
    """
    return brmin_interval_act_word(sigma.reduced_word(), w, side)


def brmin_interval_act_word(word: Sequence[int], w: WeylElement, side: str = LEFT) -> WeylElement:
    """Same as :func:`brmin_interval_act` using the given reduced word of sigma."""
    group = w.group
    if side == RIGHT:
        return brmin_interval_act_word(word, w.inverse(), LEFT).inverse()
    reflect = group.cartan.reflect
    v = w.rho_image
    for i in reversed(tuple(word)):
        if v[i - 1] < 0:
            v = reflect(v, i)
    return WeylElement(v, group)


def star(w: WeylElement, x: WeylElement) -> WeylElement:
    """Demazure product: the maximum of I(w) I(x)."""
    out = w
    for i in x.reduced_word():
        out = join_simple(out, i, RIGHT)
    return out


# ---------------------------------------------------------------------------
# Cosets


@dataclass(frozen=True)
class Coset:
    """wW_J (side="left", a left coset) or W_J w (side="right")."""

    min_rep: WeylElement
    parabolic: frozenset
    side: str = LEFT

    def elements(self) -> list:
        group = self.min_rep.group
        sub = group.parabolic_subgroup(self.parabolic)
        if self.side == LEFT:
            return [self.min_rep * x for x in sub]
        return [x * self.min_rep for x in sub]

    def max_rep(self) -> WeylElement:
        w0J = self.min_rep.group.longest_parabolic(self.parabolic)
        return self.min_rep * w0J if self.side == LEFT else w0J * self.min_rep

    def __contains__(self, w: WeylElement) -> bool:
        return coset_min(w, self.parabolic, self.side) == self

    def __str__(self) -> str:
        J = ",".join(map(str, sorted(self.parabolic)))
        return f"{self.min_rep}W_{{{J}}}" if self.side == LEFT else f"W_{{{J}}}{self.min_rep}"


@dataclass(frozen=True)
class DoubleCoset:
    min_rep: WeylElement
    left: frozenset
    right: frozenset

    def elements(self) -> list:
        group = self.min_rep.group
        out = {}
        for x in group.parabolic_subgroup(self.left):
            xw = x * self.min_rep
            for y in group.parabolic_subgroup(self.right):
                z = xw * y
                out[z.rho_image] = z
        return list(out.values())


def _strip_right(w: WeylElement, J: frozenset) -> WeylElement:
    # right descents of w are left descents of w^{-1}
    inv = w.inverse()
    group = w.group
    changed = True
    while changed:
        changed = False
        for i in sorted(J):
            if inv.rho_image[i - 1] < 0:
                inv = group.left_mul_simple(i, inv)
                changed = True
    return inv.inverse()


def _strip_left(w: WeylElement, J: frozenset) -> WeylElement:
    group = w.group
    changed = True
    while changed:
        changed = False
        for i in sorted(J):
            if w.rho_image[i - 1] < 0:
                w = group.left_mul_simple(i, w)
                changed = True
    return w


def _parabolic(group: WeylGroup, J: Iterable[int]) -> frozenset:
    J = frozenset(int(i) for i in J)
    bad = [i for i in J if not 1 <= i <= group.rank]
    if bad:
        raise ValueError(f"simple reflection index {min(bad)} out of range 1..{group.rank}")
    return J


def coset_min(w: WeylElement, J: Iterable[int], side: str = LEFT) -> Coset:
    J = _parabolic(w.group, J)
    rep = _strip_right(w, J) if side == LEFT else _strip_left(w, J)
    return Coset(rep, J, side)


def double_coset_min(w: WeylElement, Jl: Iterable[int], Jr: Iterable[int]) -> DoubleCoset:
    Jl, Jr = _parabolic(w.group, Jl), _parabolic(w.group, Jr)
    while True:
        v = _strip_right(_strip_left(w, Jl), Jr)
        if v == w:
            return DoubleCoset(w, Jl, Jr)
        w = v


def coset_leq(c1, c2) -> bool:
    if isinstance(c1, Coset) and isinstance(c2, Coset):
        if c1.parabolic != c2.parabolic or c1.side != c2.side:
            raise ValueError("cosets of different parabolic subgroups are not comparable")
    elif isinstance(c1, DoubleCoset) and isinstance(c2, DoubleCoset):
        if c1.left != c2.left or c1.right != c2.right:
            raise ValueError("double cosets of different parabolic subgroups are not comparable")
    else:
        raise TypeError("coset_leq needs two cosets or two double cosets of the same kind")
    return bruhat_leq(c1.min_rep, c2.min_rep)


def deodhar_min(coset: Coset, w: WeylElement) -> WeylElement | None:
    """min{v in sigma W_J : v >= w}, or None when that set is empty.

    Along a reduced word s_1 ... s_m of the minimal representative sigma,
    v_0 = w and v_j = v_{j-1} meet s_j v_{j-1}; the set is nonempty iff
    v_m lies in W_J, and then the minimum is sigma v_m.
    """
    if coset.side != LEFT:
        # W_J sigma: invert everything
        flipped = Coset(coset.min_rep.inverse(), coset.parabolic, LEFT)
        out = deodhar_min(flipped, w.inverse())
        return None if out is None else out.inverse()
    sigma = coset.min_rep
    group = sigma.group
    key = (sigma.rho_image, coset.parabolic, w.rho_image)
    cache = group._deodhar
    if key in cache:
        return cache[key]
    word = sigma.reduced_word()
    # v_m is the minimum of I(sigma^{-1}) w: sigma^{-1} = s_m ... s_1
    vm = brmin_interval_act_word(tuple(reversed(word)), w, LEFT)
    out = sigma * vm if set(vm.reduced_word()) <= coset.parabolic else None
    cache[key] = out
    return out


def coset_max_below(coset: Coset, w: WeylElement) -> WeylElement | None:
    """max{v in the coset : v <= w} by brute force over the coset."""
    below = [v for v in coset.elements() if bruhat_leq(v, w)]
    if not below:
        return None
    top = max(below, key=lambda v: v.length)
    return top


def kk_brmin(Jl: Iterable[int], tau: WeylElement, phi: WeylElement, Jr: Iterable[int]) -> WeylElement:
    """Minimum of W_{Jl} I(tau^{-1}) phi W_{Jr}."""
    v = brmin_interval_act_word(tuple(reversed(tau.reduced_word())), phi, LEFT)
    return double_coset_min(v, Jl, Jr).min_rep


def stabilizer(weight: Sequence) -> frozenset:
    """Indices J with W_J the stabilizer of a dominant weight."""
    return frozenset(i + 1 for i, c in enumerate(weight) if c == 0)


def double_coset_reps(group: WeylGroup, Jl: Iterable[int], Jr: Iterable[int]) -> list:
    """Minimal representatives of W_{Jl} \\ W / W_{Jr}, ordered by length."""
    Jl, Jr = frozenset(Jl), frozenset(Jr)
    out = []
    for w in group.elements():
        if not (w.left_descents() & Jl) and not (w.right_descents() & Jr):
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# Roots


@dataclass(frozen=True)
class Root:
    """A positive root, with coordinates in the simple-root basis and a pair
    (w, i) such that the root equals w(alpha_i)."""

    coords: tuple
    weight: tuple
    conj: WeylElement = field(compare=False, hash=False)
    simple_index: int = field(compare=False, hash=False)

    def coroot_pairing(self, weight: Sequence) -> int:
        """<weight, beta^vee> computed as (w^{-1} weight)_i."""
        return self.conj.inverse().act(weight)[self.simple_index - 1]

    def reflection(self) -> WeylElement:
        w = self.conj
        return w * w.group.s(self.simple_index) * w.inverse()


def positive_roots(group: WeylGroup) -> list:
    """Positive roots by closing the simple roots under simple reflections."""
    cache = getattr(group, "_positive_roots", None)
    if cache is not None:
        return cache
    A = group.cartan.a
    n = group.rank

    def reflect_root(c, i):
        pairing = sum(A[i - 1][j] * c[j] for j in range(n))
        out = list(c)
        out[i - 1] -= pairing
        return tuple(out)

    found = {}
    queue = deque()
    for i in range(1, n + 1):
        c = tuple(int(j == i - 1) for j in range(n))
        found[c] = (group.identity, i)
        queue.append(c)
    while queue:
        c = queue.popleft()
        w, k = found[c]
        for i in range(1, n + 1):
            d = reflect_root(c, i)
            if d in found or any(x < 0 for x in d):
                continue
            found[d] = (group.s(i) * w, k)
            queue.append(d)
    roots = []
    for c, (w, k) in found.items():
        weight = tuple(sum(A[r][j] * c[j] for j in range(n)) for r in range(n))
        roots.append(Root(c, weight, w, k))
    roots.sort(key=lambda r: (sum(r.coords), r.coords))
    group._positive_roots = roots
    return roots
