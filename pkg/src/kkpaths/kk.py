"""KK path sets, decompositions, characters and PRV components.

For dominant weights lambda, mu and w in W, the KK module K(lambda, w, mu)
is modelled by the set of concatenations pi * pi' (pi of shape lambda, pi'
of shape mu) whose associated element

    w(pi * pi') = min(W_lambda I(tau^{-1}) phi W_mu)

is <= w, where tau lifts the final direction of pi and phi lifts the
initial direction of pi'.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .coxeter import (
    LEFT,
    Root,
    WeylElement,
    WeylGroup,
    bruhat_leq,
    coset_min,
    double_coset_min,
    double_coset_reps,
    kk_brmin,
    positive_roots,
    stabilizer,
    star,
)
from .paths import (
    LSPath,
    SegPath,
    concat,
    concat_paths,
    dominant_conjugate,
    generate_crystal,
    is_lambda_dominant,
    raise_to_dominant,
    root_f,
    straight_path,
)


class FormalCharacter(dict):
    """Finitely supported map weight -> integer multiplicity (zeros dropped)."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            items = data.items() if hasattr(data, "items") else ((w, 1) for w in data)
            for w, m in items:
                self.add_term(tuple(w), m)

    def add_term(self, weight: tuple, mult: int) -> None:
        value = self.get(weight, 0) + mult
        if value:
            self[weight] = value
        else:
            self.pop(weight, None)

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = FormalCharacter(self)
        for w, m in other.items():
            out.add_term(w, m)
        return out

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = FormalCharacter(self)
        for w, m in other.items():
            out.add_term(w, -m)
        return out

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = FormalCharacter()
        for a, m in self.items():
            for b, n in other.items():
                out.add_term(tuple(x + y for x, y in zip(a, b)), m * n)
        return out

    def shift(self, weight: Sequence[int]) -> "FormalCharacter":
        return FormalCharacter({tuple(x + y for x, y in zip(w, weight)): m for w, m in self.items()})

    def dimension(self) -> int:
        return sum(self.values())

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self.values())

    def to_json(self) -> list:
        return [{"weight": list(w), "mult": m} for w, m in sorted(self.items())]


def monomial(weight: Sequence[int]) -> FormalCharacter:
    return FormalCharacter({tuple(weight): 1})


class Decomposition(dict):
    """Multiset of dominant weights: highest weight -> multiplicity."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            items = data.items() if hasattr(data, "items") else ((w, 1) for w in data)
            for w, m in items:
                if m:
                    self[tuple(w)] = self.get(tuple(w), 0) + m

    def sorted_items(self) -> list:
        return sorted(self.items())

    def total(self) -> int:
        return sum(self.values())

    def is_submultiset(self, other: "Decomposition") -> bool:
        return all(other.get(w, 0) >= m for w, m in self.items())

    def to_json(self) -> list:
        return [{"weight": list(w), "mult": m} for w, m in self.sorted_items()]


# ---------------------------------------------------------------------------
# Characters of irreducible modules and Demazure operators


def _root_lengths(group: WeylGroup) -> list:
    """Squared lengths (alpha_i, alpha_i) making (a_ij l_i) symmetric."""
    A = group.cartan.a
    n = group.rank
    lengths = [None] * n
    for start in range(n):
        if lengths[start] is not None:
            continue
        lengths[start] = Fraction(2)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] != 0 and lengths[j] is None:
                    lengths[j] = lengths[i] * A[i][j] / A[j][i]
                    stack.append(j)
    for i in range(n):
        for j in range(n):
            if A[i][j] * lengths[i] != A[j][i] * lengths[j]:
                raise ValueError("Cartan matrix is not symmetrizable")
    return lengths


def _inverse_matrix(A) -> list:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


class _Form:
    """The invariant symmetric form on weights in fundamental coordinates."""

    def __init__(self, group: WeylGroup):
        lengths = _root_lengths(group)
        inv = _inverse_matrix(group.cartan.a)
        n = group.rank
        # (w_i, w_j) = (A^{-1})_{ij} l_i / 2
        self.gram = [[inv[i][j] * lengths[i] / 2 for j in range(n)] for i in range(n)]
        self.inv = inv

    def __call__(self, x, y) -> Fraction:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])

    def root_coords(self, weight) -> tuple:
        """Coordinates of a weight in the basis of simple roots."""
        n = len(weight)
        return tuple(sum(self.inv[i][j] * weight[j] for j in range(n)) for i in range(n))


def _form(group: WeylGroup) -> _Form:
    f = group.__dict__.get("_form")
    if f is None:
        f = _Form(group)
        group._form = f
    return f


def is_below(group: WeylGroup, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lam in dominance order: lam - mu is a nonnegative integral root combination."""
    c = _form(group).root_coords(tuple(a - b for a, b in zip(lam, mu)))
    return all(x >= 0 and x.denominator == 1 for x in c)


def irreducible_character(group: WeylGroup, lam: Sequence[int]) -> FormalCharacter:
    """Character of V_lambda by Freudenthal's multiplicity formula."""
    cache = group.__dict__.setdefault("_irr_chars", {})
    lam = tuple(int(x) for x in lam)
    if lam in cache:
        return cache[lam]
    if any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not dominant")
    form = _form(group)
    cartan = group.cartan
    n = group.rank
    # all weights, by lowering with simple roots inside the saturated set
    weights = {lam}
    frontier = [lam]
    dom_cache: dict = {}

    def dom(v):
        d = dom_cache.get(v)
        if d is None:
            d = dominant_conjugate(group, v)[0]
            dom_cache[v] = d
        return d

    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, n + 1):
                u = tuple(x - a for x, a in zip(v, cartan.simple_root(i)))
                if u not in weights and is_below(group, dom(u), lam):
                    weights.add(u)
                    nxt.append(u)
        frontier = nxt
    dominant = [v for v in weights if all(x >= 0 for x in v)]
    height = lambda v: sum(form.root_coords(tuple(a - b for a, b in zip(lam, v))))
    dominant.sort(key=height)
    rho = group.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = form(lr, lr)
    roots = [r.weight for r in positive_roots(group)]
    mult = {lam: 1}
    dominant_set = set(dominant)
    for mu in dominant[1:]:
        total = Fraction(0)
        for alpha in roots:
            k = 1
            while True:
                nu = tuple(x + k * a for x, a in zip(mu, alpha))
                d = dom(nu)
                if d not in dominant_set:
                    break
                m = mult.get(d, 0)
                if m:
                    total += m * form(nu, alpha)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_lr - form(mr, mr)
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        mult[mu] = int(value)
    out = FormalCharacter({v: mult[dom(v)] for v in weights if mult.get(dom(v), 0)})
    cache[lam] = out
    return out


def weyl_dimension(group: WeylGroup, lam: Sequence[int]) -> int:
    """Weyl's dimension formula prod (lam+rho, beta^vee) / (rho, beta^vee)."""
    rho = group.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    num = Fraction(1)
    for r in positive_roots(group):
        num *= Fraction(r.coroot_pairing(lr), r.coroot_pairing(rho))
    return int(num)


def demazure_apply(group: WeylGroup, i: int, char: FormalCharacter) -> FormalCharacter:
    """Demazure operator D_i on a formal character (string formula)."""
    alpha = group.cartan.simple_root(i)
    out = FormalCharacter()
    for nu, c in char.items():
        m = nu[i - 1]
        if m >= 0:
            for j in range(m + 1):
                out.add_term(tuple(x - j * a for x, a in zip(nu, alpha)), c)
        elif m <= -2:
            for j in range(1, -m):
                out.add_term(tuple(x + j * a for x, a in zip(nu, alpha)), -c)
    return out


def demazure_word(group: WeylGroup, word: Sequence[int], char: FormalCharacter) -> FormalCharacter:
    """D_{i_1} ... D_{i_k} applied to char (rightmost first)."""
    for i in reversed(tuple(word)):
        char = demazure_apply(group, i, char)
    return char


def demazure_character(group: WeylGroup, w: WeylElement, weight: Sequence[int]) -> FormalCharacter:
    return demazure_word(group, w.reduced_word(), monomial(weight))


def kk_character_demazure(group: WeylGroup, lam, w: WeylElement, mu) -> FormalCharacter:
    """D_{w0}(e^lambda D_w(e^mu))."""
    inner = demazure_character(group, w, mu).shift(lam)
    return demazure_word(group, group.longest.reduced_word(), inner)


def decompose_character(group: WeylGroup, char: FormalCharacter) -> Decomposition:
    """Write a W-invariant character as a sum of irreducible characters by
    repeatedly peeling off a highest weight."""
    rest = FormalCharacter(char)
    out = Decomposition()
    form = _form(group)
    while rest:
        top = max(rest, key=lambda v: (sum(form.root_coords(v)), v))
        m = rest[top]
        if m < 0 or any(x < 0 for x in top):
            raise ValueError("character is not a nonnegative combination of irreducibles")
        out[top] = out.get(top, 0) + m
        for v, c in irreducible_character(group, top).items():
            rest.add_term(v, -m * c)
    return out


# ---------------------------------------------------------------------------
# The associated Weyl group element


@dataclass(frozen=True)
class KKIndex:
    """(lambda, w, mu) with w replaced by the minimum of W_lambda w W_mu."""

    lam: tuple
    w: WeylElement
    mu: tuple

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        mu = tuple(int(x) for x in self.mu)
        for name, v in (("lambda", lam), ("mu", mu)):
            if any(x < 0 for x in v):
                raise ValueError(f"{name} = {v} is not dominant")
            if len(v) != self.w.group.rank:
                raise ValueError(f"{name} = {v} has the wrong length")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "w", double_coset_min(self.w, stabilizer(lam), stabilizer(mu)).min_rep)

    @property
    def group(self) -> WeylGroup:
        return self.w.group


class KKTable:
    """w(pi * pi') for all pairs of crystal elements, through direction cosets."""

    def __init__(self, group: WeylGroup, lam, mu):
        self.group = group
        self.lam = tuple(lam)
        self.mu = tuple(mu)
        self.P_lam = generate_crystal(group, self.lam)
        self.P_mu = generate_crystal(group, self.mu)
        Jl, Jr = stabilizer(self.lam), stabilizer(self.mu)
        ol, om = self.P_lam.orbit, self.P_mu.orbit
        self._classes = None
        self.table = [
            [kk_brmin(Jl, ol.rep(a), om.rep(b), Jr) for b in range(len(om))]
            for a in range(len(ol))
        ]

    def weyl(self, x: int, y: int) -> WeylElement:
        """w(pi_x * pi'_y) for crystal indices x in P_lambda, y in P_mu."""
        return self.table[self.P_lam.final_points[x]][self.P_mu.initial_points[y]]

    def class_characters(self) -> dict:
        """Map element v -> character of {pi * pi' : w(pi * pi') = v}."""
        if self._classes is None:
            self._classes = self._class_characters()
        return self._classes

    def _class_characters(self) -> dict:
        by_final = defaultdict(lambda: defaultdict(int))
        for x, a in enumerate(self.P_lam.final_points):
            by_final[a][self.P_lam.endpoints[x]] += 1
        by_initial = defaultdict(lambda: defaultdict(int))
        for y, b in enumerate(self.P_mu.initial_points):
            by_initial[b][self.P_mu.endpoints[y]] += 1
        out: dict = {}
        for a, ca in by_final.items():
            for b, cb in by_initial.items():
                v = self.table[a][b]
                acc = out.setdefault(v, FormalCharacter())
                for u, m in ca.items():
                    for t, n in cb.items():
                        acc.add_term(tuple(p + q for p, q in zip(u, t)), m * n)
        return out


def kk_table(group: WeylGroup, lam, mu) -> KKTable:
    cache = group.__dict__.setdefault("_kk_tables", {})
    key = (tuple(lam), tuple(mu))
    out = cache.get(key)
    if out is None:
        out = KKTable(group, *key)
        cache[key] = out
    return out


def kk_weyl(p1: LSPath, p2: LSPath) -> WeylElement:
    """The element w(p1 * p2) attached to a concatenation."""
    Jl, Jr = stabilizer(p1.shape), stabilizer(p2.shape)
    tau = p1.final_direction().min_rep
    phi = p2.initial_direction().min_rep
    return kk_brmin(Jl, tau, phi, Jr)


def reversed_path(p: LSPath) -> LSPath:
    """The path with directions w0 tau_r > ... > w0 tau_1 and cuts 1 - a_j."""
    o = p.orbit
    w0 = p.group.longest
    segs = [(0, o.point_of(w0 * o.rep(k)), a) for _, k, a in reversed(p.segs)]
    return LSPath(p.orbits, segs)


def kk_weyl_via_star(p1: LSPath, p2: LSPath) -> WeylElement:
    """w(p1 * p2) as (phi(p1^dag)^{-1} w0 star phi(p2) w0) w0, phi = minimal
    lift of the initial direction."""
    w0 = p1.group.longest
    a = reversed_path(p1).initial_direction().min_rep.inverse()
    b = p2.initial_direction().min_rep
    return star(a * w0, b * w0) * w0


def kk_path_set(idx: KKIndex) -> list:
    """All pairs (pi, pi') with w(pi * pi') <= w."""
    t = kk_table(idx.group, idx.lam, idx.mu)
    out = []
    for x, p in enumerate(t.P_lam.paths):
        row = t.table[t.P_lam.final_points[x]]
        for y, q in enumerate(t.P_mu.paths):
            if bruhat_leq(row[t.P_mu.initial_points[y]], idx.w):
                out.append((p, q))
    return out


def kk_character_paths(idx: KKIndex) -> FormalCharacter:
    """Sum of e^{theta(1)} over the KK path set."""
    t = kk_table(idx.group, idx.lam, idx.mu)
    out = FormalCharacter()
    for v, ch in t.class_characters().items():
        if bruhat_leq(v, idx.w):
            out = out + ch
    return out


def lambda_dominant_paths(mu, lam, w: WeylElement) -> list:
    """LS paths pi of shape mu, lambda-dominant, with initial direction <= w W_mu."""
    group = w.group
    P = generate_crystal(group, mu)
    top = coset_min(w, stabilizer(mu), LEFT).min_rep
    o = P.orbit
    out = []
    for x, p in enumerate(P.paths):
        if all(P.eps[i][x] <= lam[i] for i in range(group.rank)):
            if bruhat_leq(o.rep(P.initial_points[x]), top):
                out.append(p)
    return out


def kk_decompose(idx: KKIndex) -> Decomposition:
    """Highest weights lambda + pi(1) over lambda-dominant paths pi."""
    out = Decomposition()
    for p in lambda_dominant_paths(idx.mu, idx.lam, idx.w):
        nu = tuple(a + b for a, b in zip(idx.lam, p.endpoint))
        out[nu] = out.get(nu, 0) + 1
    return out


def character_of_decomposition(group: WeylGroup, dec: Decomposition) -> FormalCharacter:
    out = FormalCharacter()
    for nu, m in dec.items():
        for v, c in irreducible_character(group, nu).items():
            out.add_term(v, m * c)
    return out


def demazure_crystal(path: SegPath, word: Sequence[int]) -> set:
    """{f_{b1}^{n1} ... f_{bk}^{nk} path} for a reduced word b1 ... bk."""
    group = path.group
    word = tuple(word)
    if group.from_word(word).length != len(word):
        raise ValueError(f"word {word} is not reduced")
    current = {path}
    for i in reversed(word):
        nxt = set()
        for p in current:
            while p is not None:
                nxt.add(p)
                p = root_f(p, i)
        current = nxt
    return current


# ---------------------------------------------------------------------------
# Geometry of double cosets and PRV components


def geometric_rep(lam, mu, coset) -> WeylElement:
    """The minimal representative w of W_lambda w W_mu, checked to make
    lambda + t w(mu) dominant for small t > 0."""
    w = coset.min_rep
    wm = w.act(mu)
    for i, c in enumerate(lam):
        if c == 0 and wm[i] < 0:
            raise AssertionError(f"{w} mu = {wm} is not W_lambda-dominant")
    return w


def prv_lower_bound(lam, mu, w: WeylElement, nu) -> int:
    """Number of double cosets tau <= W_lambda w W_mu with the dominant
    conjugate of lambda + tau mu equal to nu."""
    group = w.group
    Jl, Jr = stabilizer(lam), stabilizer(mu)
    top = double_coset_min(w, Jl, Jr).min_rep
    nu = tuple(nu)
    count = 0
    for tau in double_coset_reps(group, Jl, Jr):
        if not bruhat_leq(tau, top):
            continue
        v = tuple(a + b for a, b in zip(lam, tau.act(mu)))
        if dominant_conjugate(group, v)[0] == nu:
            count += 1
    return count


class PRVPreconditionError(ValueError):
    pass


def generalized_prv_check(lam, mu, v: WeylElement, u: WeylElement, beta, k: int) -> bool:
    """Check that nu = v lambda + u mu - k beta occurs in K(lambda, v^{-1} s_beta u, mu).

    beta is given by its coordinates in the basis of simple roots.
    """
    group = v.group
    roots = {r.coords: r for r in positive_roots(group)}
    beta = tuple(beta)
    if beta not in roots:
        raise PRVPreconditionError(f"{beta} is not a positive root")
    root: Root = roots[beta]
    simple = {group.cartan.simple_root(i) for i in range(1, group.rank + 1)}
    if v.inverse().act(root.weight) not in simple and u.inverse().act(root.weight) not in simple:
        raise PRVPreconditionError("neither v^{-1} beta nor u^{-1} beta is simple")
    vl = v.act(lam)
    um = u.act(mu)
    bound = min(root.coroot_pairing(vl), root.coroot_pairing(um))
    if not 0 <= k <= bound:
        raise PRVPreconditionError(f"k = {k} is outside 0..{bound}")
    nu = tuple(a + b - k * c for a, b, c in zip(vl, um, root.weight))
    if any(x < 0 for x in nu):
        raise PRVPreconditionError(f"nu = {nu} is not dominant")
    w = v.inverse() * root.reflection() * u
    dec = kk_decompose(KKIndex(lam, w, mu))
    return dec.get(nu, 0) > 0


def generalized_prv_tuples(group: WeylGroup, lam, mu) -> list:
    """All (v, u, beta, k, nu) satisfying the generalized PRV hypotheses."""
    simple = {group.cartan.simple_root(i) for i in range(1, group.rank + 1)}
    out = []
    roots = positive_roots(group)
    for root in roots:
        for v in group.elements():
            vl = v.act(lam)
            vb = v.inverse().act(root.weight) in simple
            for u in group.elements():
                if not vb and u.inverse().act(root.weight) not in simple:
                    continue
                um = u.act(mu)
                bound = min(root.coroot_pairing(vl), root.coroot_pairing(um))
                for k in range(0, bound + 1):
                    nu = tuple(a + b - k * c for a, b, c in zip(vl, um, root.weight))
                    if all(x >= 0 for x in nu):
                        out.append((v, u, root.coords, k, nu))
    return out


def is_extremal(p1: SegPath, p2: SegPath) -> bool:
    """The dominant conjugate of (p1 * p2)(1) equals eta(p1 * p2)(1)."""
    theta = concat_paths(p1, p2)
    eta, _ = raise_to_dominant(theta)
    end = theta.endpoint
    return dominant_conjugate(theta.group, end)[0] == eta.endpoint


# ---------------------------------------------------------------------------
# Root operators on pairs


def tensor_f(t: KKTable, x: int, y: int, i: int):
    """f_i(pi_x * pi'_y) as a pair of crystal indices, or None.

    f_i acts on the first factor when phi_i(pi) > eps_i(pi'), else on the second.
    """
    P, Q = t.P_lam, t.P_mu
    if P.phi[i - 1][x] > Q.eps[i - 1][y]:
        return (P.f[i - 1][x], y)
    y2 = Q.f[i - 1][y]
    return None if y2 < 0 else (x, y2)


def tensor_e(t: KKTable, x: int, y: int, i: int):
    """e_i(pi_x * pi'_y); e_i acts on the first factor when phi_i(pi) >= eps_i(pi')."""
    P, Q = t.P_lam, t.P_mu
    if P.phi[i - 1][x] >= Q.eps[i - 1][y]:
        x2 = P.e[i - 1][x]
        return None if x2 < 0 else (x2, y)
    return (x, Q.e[i - 1][y])


def pair_of(t: KKTable, theta: SegPath):
    """Crystal indices of the two pieces of a concatenation."""
    p, q = theta.pieces()
    return t.P_lam.index[p], t.P_mu.index[q]


def weyl_invariance_violations(t: KKTable) -> list:
    """Edges (x, y, i) of P_lambda * P_mu along which w(pi * pi') changes."""
    bad = []
    for x in range(len(t.P_lam)):
        for y in range(len(t.P_mu)):
            w = t.weyl(x, y)
            for i in range(1, t.group.rank + 1):
                nxt = tensor_f(t, x, y, i)
                if nxt is not None and t.weyl(*nxt) != w:
                    bad.append((x, y, i))
    return bad
