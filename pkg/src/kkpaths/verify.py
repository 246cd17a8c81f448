"""Self-check suites behind ``kkpaths verify``.

Each suite compares a library routine with a direct enumeration and returns
the number of checks made and a list of failure messages.  The character and
crystal suites stop at rank 2; their cost grows too fast beyond that.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from .coxeter import (
    LEFT,
    RIGHT,
    WeylGroup,
    brmin_interval_act,
    bruhat_leq,
    builtin_types,
    cartan_matrix,
    coset_max_below,
    coset_min,
    deodhar_min,
    double_coset_min,
    star,
)
from .kk import (
    KKIndex,
    character_of_decomposition,
    kk_character_demazure,
    kk_character_paths,
    kk_decompose,
    kk_table,
    weyl_invariance_violations,
)


def _groups(max_rank: int) -> list:
    return [WeylGroup(cartan_matrix(name)) for name in builtin_types() if cartan_matrix(name).rank <= max_rank]


def _subsets(rank: int):
    for k in range(rank + 1):
        yield from itertools.combinations(range(1, rank + 1), k)


def _lower_set(v) -> set:
    """Products of all subwords of a reduced word of v."""
    G = v.group
    word = v.reduced_word()
    out = set()
    for mask in range(1 << len(word)):
        out.add(G.from_word([a for j, a in enumerate(word) if mask >> j & 1]))
    return out


def suite_bruhat(max_rank: int, max_coord: int) -> tuple:
    n, bad = 0, []
    for G in _groups(max_rank):
        elems = G.elements()
        for v in elems:
            below = _lower_set(v)
            for u in elems:
                n += 1
                if bruhat_leq(u, v) != (u in below):
                    bad.append(f"{G.cartan.to_json()}: bruhat({u}, {v})")
    return n, bad


def suite_cosets(max_rank: int, max_coord: int) -> tuple:
    n, bad = 0, []
    for G in _groups(max_rank):
        elems = G.elements()
        for J in _subsets(G.rank):
            WJ = set(G.parabolic_subgroup(J))
            seen = set()
            for x in elems:
                c = coset_min(x, J, LEFT)
                if c.min_rep in seen:
                    continue
                seen.add(c.min_rep)
                members = [x * y for y in WJ]
                for w in elems:
                    n += 1
                    above = [v for v in members if bruhat_leq(w, v)]
                    expect = None
                    if above:
                        mins = [v for v in above if all(bruhat_leq(v, z) for z in above)]
                        expect = mins[0] if mins else "none"
                    if deodhar_min(c, w) != expect:
                        bad.append(f"deodhar_min({c}, {w})")
                    below = [v for v in members if bruhat_leq(v, w)]
                    expect = None
                    if below:
                        maxs = [v for v in below if all(bruhat_leq(z, v) for z in below)]
                        expect = maxs[0] if maxs else "none"
                    if coset_max_below(c, w) != expect:
                        bad.append(f"coset_max_below({c}, {w})")
        for Jl in _subsets(G.rank):
            for Jr in _subsets(min(G.rank, 2)):
                Wl, Wr = G.parabolic_subgroup(Jl), G.parabolic_subgroup(Jr)
                for w in elems:
                    n += 1
                    members = {a * w * b for a in Wl for b in Wr}
                    m = min(members, key=lambda v: v.length)
                    if double_coset_min(w, Jl, Jr).min_rep != m:
                        bad.append(f"double_coset_min({w}, {Jl}, {Jr})")
    return n, bad


def suite_star(max_rank: int, max_coord: int) -> tuple:
    n, bad = 0, []
    for G in _groups(max_rank):
        elems = G.elements()
        lower = {v: [u for u in elems if bruhat_leq(u, v)] for v in elems}
        for a in elems:
            for b in elems:
                n += 1
                prods = {x * y for x in lower[a] for y in lower[b]}
                top = max(prods, key=lambda v: v.length)
                if star(a, b) != top:
                    bad.append(f"star({a}, {b})")
                low = {x * b for x in lower[a]}
                m = min(low, key=lambda v: v.length)
                if brmin_interval_act(a, b, LEFT) != m:
                    bad.append(f"brmin_interval_act({a}, {b})")
                low = {b * x.inverse() for x in lower[a]}
                m = min(low, key=lambda v: v.length)
                if brmin_interval_act(a, b, RIGHT) != m:
                    bad.append(f"brmin_interval_act_right({a}, {b})")
        if len(elems) <= 24:
            for a, b, c in itertools.product(elems, repeat=3):
                n += 1
                if star(star(a, b), c) != star(a, star(b, c)):
                    bad.append(f"star associativity at {a}, {b}, {c}")
    return n, bad


def _weights(rank: int, max_coord: int) -> list:
    return list(itertools.product(range(max_coord + 1), repeat=rank))


def suite_characters(max_rank: int, max_coord: int) -> tuple:
    n, bad = 0, []
    for G in _groups(min(max_rank, 2)):
        for lam in _weights(G.rank, max_coord):
            for mu in _weights(G.rank, max_coord):
                seen = set()
                for w in G.elements():
                    idx = KKIndex(lam, w, mu)
                    if idx.w in seen:
                        continue
                    seen.add(idx.w)
                    n += 1
                    a = kk_character_paths(idx)
                    b = character_of_decomposition(G, kk_decompose(idx))
                    c = kk_character_demazure(G, lam, w, mu)
                    if not (a == b == c):
                        bad.append(f"characters disagree at lambda={lam}, w={w}, mu={mu}")
    return n, bad


def suite_invariance(max_rank: int, max_coord: int) -> tuple:
    n, bad = 0, []
    for G in _groups(min(max_rank, 2)):
        for lam in _weights(G.rank, max_coord):
            for mu in _weights(G.rank, max_coord):
                t = kk_table(G, lam, mu)
                n += len(t.P_lam) * len(t.P_mu)
                for x, y, i in weyl_invariance_violations(t)[:3]:
                    bad.append(f"w changes along f_{i} at lambda={lam}, mu={mu}, pair ({x}, {y})")
    return n, bad


def suite_keys(max_rank: int, max_coord: int) -> tuple:
    from .tableaux import Permutation, all_ssyt, minimal_lift_permutation, ssyt_key_permutation

    n, bad = 0, []
    d = min(max_rank + 1, 4)
    G = WeylGroup(cartan_matrix(f"A{d - 1}"))
    for shape in [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2), (3, 2, 1)]:
        if len(shape) > d:
            continue
        for S in all_ssyt(shape, d):
            n += 1
            if ssyt_key_permutation(S).embed(d) != minimal_lift_permutation(S, d, G):
                bad.append(f"key of {S}")
    return n, bad


SUITES = {
    "bruhat": suite_bruhat,
    "cosets": suite_cosets,
    "star": suite_star,
    "characters": suite_characters,
    "invariance": suite_invariance,
    "keys": suite_keys,
}


def run_suites(names: str, max_rank: int, max_coord: int, threads: int = 1) -> list:
    """Run the named suites ("all" or a comma separated list); results in a fixed order."""
    if names == "all":
        chosen = list(SUITES)
    else:
        chosen = [s.strip() for s in names.split(",") if s.strip()]
        unknown = [s for s in chosen if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")

    def run(name):
        checked, failures = SUITES[name](max_rank, max_coord)
        return {"suite": name, "checked": checked, "failures": failures}

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, chosen))
    return [run(name) for name in chosen]
