"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact (integers, multisets, group elements).
"""

import itertools

import pytest

from kkpaths.coxeter import (
    LEFT,
    RIGHT,
    Coset,
    WeylGroup,
    brmin_interval_act,
    bruhat_leq,
    cartan_matrix,
    coset_max_below,
    coset_min,
    deodhar_min,
    double_coset_min,
    double_coset_reps,
    meet_simple,
    stabilizer,
    star,
    type_A,
)
from kkpaths.kk import (
    KKIndex,
    character_of_decomposition,
    generalized_prv_check,
    generalized_prv_tuples,
    kk_character_demazure,
    kk_character_paths,
    kk_decompose,
    kk_table,
    prv_lower_bound,
    weyl_invariance_violations,
)
from kkpaths.paths import dominant_conjugate, generate_crystal
from kkpaths.standard import crystal_iso_table, fundamental_shapes, is_standard, weyl_of
from kkpaths.tableaux import (
    SSYT,
    Partition,
    Permutation,
    all_ssyt,
    decomposition_to_weights,
    kk_decompose_tableaux,
    lr_tableaux,
    minimal_lift_permutation,
    refined_lr_coefficient,
    sn_deodhar_min,
    sn_deodhar_recipe,
    ssyt_key_permutation,
    ssyt_to_concat,
    tableau_key,
)

import oracles


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}"
        if detail:
            line += f" [{detail}]"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def G(name):
    return WeylGroup(cartan_matrix(name))


def weights(rank, bound):
    return list(itertools.product(range(bound + 1), repeat=rank))


def test_criterion_1_b2_decompositions(report):
    g = G("B2")
    lam, mu = (2, 0), (2, 1)
    top = (4, 1)
    expected = {
        (): {top: 1},
        (1,): {top: 1, (2, 2): 1, (0, 3): 1},
        (1, 2): {top: 1, (2, 2): 1, (0, 3): 1, (4, 0): 1, (2, 1): 1},
        (1, 2, 1): {top: 1, (2, 2): 1, (0, 3): 1, (4, 0): 1, (2, 1): 2, (0, 1): 1, (0, 2): 1},
    }
    bad = []
    for word, want in expected.items():
        got = dict(kk_decompose(KKIndex(lam, g.from_word(word), mu)))
        if got != want:
            extra = {k: v - want.get(k, 0) for k, v in got.items() if v != want.get(k, 0)}
            bad.append(f"w={word or 'e'}: difference {extra}")
    report(1, "B2 decompositions for lambda=2w1, mu=2w1+w2", not bad, "; ".join(bad))


DECOMPEX = {
    "123": {(5, 2): 1},
    "213": {(4, 3): 1, (5, 2): 1},
    "132": {(4,): 1, (5, 2): 1},
    "231": {(3, 1): 1, (4,): 1, (4, 3): 1, (5, 2): 1},
    "312": {(2, 2): 1, (3, 1): 1, (4,): 1, (4, 3): 1, (5, 2): 1},
    "321": {(1,): 1, (2, 2): 1, (3, 1): 2, (4,): 1, (4, 3): 1, (5, 2): 1},
}


def test_criterion_2_a2_tableaux(report):
    d, lam, mu = 3, (2, 1), (3, 1)
    g = WeylGroup(type_A(d - 1))
    bad = []
    tabs = lr_tableaux(lam, mu, d)
    keys = sorted(str(tableau_key(T).embed(d)) for T in tabs)
    if len(tabs) != 7:
        bad.append(f"{len(tabs)} LR tableaux")
    if keys != ["123", "132", "213", "231", "312", "312", "321"]:
        bad.append(f"keys {keys}")
    lw, mw = Partition(lam).to_weight(d), Partition(mu).to_weight(d)
    for w, want in DECOMPEX.items():
        perm = Permutation.parse(w)
        by_tableaux = dict(kk_decompose_tableaux(lam, mu, perm, d))
        by_paths = dict(kk_decompose(KKIndex(lw, perm.to_weyl(g), mw)))
        if by_tableaux != want:
            bad.append(f"tableaux w={w}: {by_tableaux}")
        if by_paths != dict(decomposition_to_weights(want, d)):
            bad.append(f"paths w={w}: {by_paths}")
    report(2, "A2 LR tableaux, keys and both decomposition routes", not bad, "; ".join(bad))


def test_criterion_3_deodhar_recipe(report):
    sigma, r, w = (2, 4, 6, 1, 3, 5), 3, (1, 4, 5, 3, 6, 2)
    recipe = sn_deodhar_recipe(sigma, r, w)
    group_min = sn_deodhar_min(sigma, r, w)
    golden = "246153"
    bad = []
    if str(recipe) != golden:
        bad.append(f"recipe gives {recipe}, golden {golden}")
    if recipe != group_min:
        bad.append(f"recipe {recipe} != deodhar_min {group_min}")
    report(3, "Deodhar recipe in S_6", not bad, "; ".join(bad))


def test_criterion_4_key_examples(report):
    a = ssyt_key_permutation(SSYT.parse("[[1,3,6,8],[2,4],[7]]"))
    b = ssyt_key_permutation(SSYT.parse("[[1,1,1,3,5],[2,3],[3,4],[4]]"))
    ok = str(a) == "83612457" and str(b) == "51324"
    report(4, "key permutations of the two example tableaux", ok, f"{a}, {b}")


CHAR_GROUPS = ("A2", "B2", "G2")


def test_criterion_5_character_identity(report):
    checked, bad = 0, []
    for name in CHAR_GROUPS:
        g = G(name)
        for lam in weights(2, 2):
            for mu in weights(2, 2):
                for w in g.elements():
                    idx = KKIndex(lam, w, mu)
                    a = kk_character_paths(idx)
                    b = character_of_decomposition(g, kk_decompose(idx))
                    c = kk_character_demazure(g, lam, w, mu)
                    checked += 1
                    if not a == b == c:
                        bad.append(f"{name} lambda={lam} w={w.reduced_word()} mu={mu}")
    report(5, "three character routes agree", not bad, f"{checked} cases, {len(bad)} failures")


RANK3 = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")


def _subsets(n):
    return [J for k in range(n + 1) for J in itertools.combinations(range(1, n + 1), k)]


def test_criterion_6_oracle_suites(report):
    checked, bad = 0, []

    def check(cond, msg):
        nonlocal checked
        checked += 1
        if not cond:
            bad.append(msg)

    for name in RANK3:
        g = G(name)
        elems = g.elements()
        lower = {v: oracles.subword_lower_set(v) for v in elems}
        for u in elems:
            for v in elems:
                check(bruhat_leq(u, v) == (u in lower[v]), f"{name} bruhat {u} {v}")
        leq = lambda x, y: x in lower[y]
        for J in _subsets(g.rank):
            reps = {coset_min(x, J).min_rep for x in elems}
            for x in reps:
                c = Coset(x, frozenset(J), LEFT)
                for w in elems:
                    check(deodhar_min(c, w) == oracles.brute_deodhar(g, x, J, w, leq), f"{name} deodhar {x} {J} {w}")
                    check(coset_max_below(c, w) == oracles.brute_max_below(g, x, J, w, leq), f"{name} max_below {x} {J} {w}")
        for Jl in _subsets(g.rank):
            for Jr in _subsets(g.rank):
                for w in elems:
                    check(double_coset_min(w, Jl, Jr).min_rep == oracles.brute_double_coset_min(g, w, Jl, Jr),
                          f"{name} double coset {w} {Jl} {Jr}")
        lists = {v: list(s) for v, s in lower.items()}
        for a in elems:
            for b in elems:
                check(star(a, b) == oracles.brute_star(lists, a, b), f"{name} star {a} {b}")
                check(brmin_interval_act(a, b, LEFT) == oracles.brute_interval_min(lists, a, b), f"{name} brmin {a} {b}")
                right = min({b * x.inverse() for x in lists[a]}, key=lambda v: v.length)
                check(brmin_interval_act(a, b, RIGHT) == right, f"{name} brmin right {a} {b}")
        table = {(a, b): star(a, b) for a in elems for b in elems}
        for a, b, c in itertools.product(elems, repeat=3):
            check(table[table[a, b], c] == table[a, table[b, c]], f"{name} associativity {a} {b} {c}")
        A = g.cartan.a
        for i, j in itertools.combinations(range(1, g.rank + 1), 2):
            m = {0: 2, 1: 3, 2: 4, 3: 6}[A[i - 1][j - 1] * A[j - 1][i - 1]]
            for u in elems:
                x, y = u, u
                for k in range(m):
                    x = meet_simple(x, (i, j)[k % 2])
                    y = meet_simple(y, (j, i)[k % 2])
                check(x == y, f"{name} braid {i} {j} at {u}")
    report(6, "Coxeter routines against enumeration, ranks <= 3", not bad, f"{checked} checks, {len(bad)} failures")


def test_criterion_7_weyl_invariance(report):
    pairs, bad = 0, []
    for name in CHAR_GROUPS:
        g = G(name)
        for lam in weights(2, 2):
            for mu in weights(2, 2):
                t = kk_table(g, lam, mu)
                pairs += len(t.P_lam) * len(t.P_mu)
                v = weyl_invariance_violations(t)
                if v:
                    bad.append(f"{name} lambda={lam} mu={mu}: {len(v)} edges")
    report(7, "w(pi * pi') constant along root operators", not bad, f"{pairs} pairs, {len(bad)} failures")


def _partitions(n, maxpart, maxlen):
    if n == 0:
        yield ()
        return
    if maxlen == 0:
        return
    for p in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - p, p, maxlen - 1):
            yield (p,) + rest


def test_criterion_8_key_is_minimal_lift(report):
    d = 5
    g = WeylGroup(type_A(d - 1))
    count, bad = 0, []
    for n in range(13):
        for shape in _partitions(n, n, d):
            for S in all_ssyt(shape, d):
                count += 1
                key = ssyt_key_permutation(S).embed(d)
                if key != minimal_lift_permutation(S, d, g):
                    bad.append(str(S))
    report(8, "key permutation equals initial element of the minimal lift", not bad,
           f"{count} tableaux, {len(bad)} failures")


def test_criterion_9_crystal_isomorphism(report):
    total, bad = 0, []
    for rank in range(1, 5):
        g = WeylGroup(type_A(rank))
        d = rank + 1
        for mu in weights(rank, 2):
            P = generate_crystal(g, mu)
            image = crystal_iso_table(g, mu, fundamental_shapes(mu))
            total += len(P)
            tag = f"A{rank} mu={mu}"
            if len(set(image)) != len(P) or None in image:
                bad.append(f"{tag}: not injective")
                continue
            from_ssyt = {ssyt_to_concat(S, d, g) for S in all_ssyt(Partition.from_weight(mu), d)}
            if set(image) != from_ssyt:
                bad.append(f"{tag}: image is not the set of standard concatenations")
            o = P.orbit
            for x, theta in enumerate(image):
                if theta.endpoint != P.endpoints[x]:
                    bad.append(f"{tag}: endpoint at {x}")
                if weyl_of(theta) != o.rep(P.initial_points[x]):
                    bad.append(f"{tag}: initial direction at {x}")
                for i in range(rank):
                    if theta.eps(i + 1) != P.eps[i][x]:
                        bad.append(f"{tag}: dominance at {x}")
                    y = P.f[i][x]
                    f = theta.root_f(i + 1)
                    if (f is not None) if y < 0 else f != image[y]:
                        bad.append(f"{tag}: f_{i + 1} at {x}")
            if bad:
                break
    report(9, "crystal isomorphism onto standard concatenations, d <= 5", not bad,
           f"{total} paths, {len(bad)} failures")


def test_criterion_10_prv(report):
    checked, bad = 0, []
    for name in CHAR_GROUPS:
        g = G(name)
        for lam in weights(2, 2):
            for mu in weights(2, 2):
                reps = double_coset_reps(g, stabilizer(lam), stabilizer(mu))
                targets = {dominant_conjugate(g, tuple(a + b for a, b in zip(lam, t.act(mu))))[0] for t in reps}
                for w in g.elements():
                    dec = kk_decompose(KKIndex(lam, w, mu))
                    for nu in targets:
                        checked += 1
                        if dec.get(nu, 0) < prv_lower_bound(lam, mu, w, nu):
                            bad.append(f"PRV {name} {lam} {w} {mu} {nu}")
                    kprv = dominant_conjugate(g, tuple(a + b for a, b in zip(lam, w.act(mu))))[0]
                    checked += 1
                    if dec.get(kprv, 0) != 1:
                        bad.append(f"KPRV {name} {lam} {w} {mu}")
    for name in ("A2", "B2"):
        g = G(name)
        for lam in weights(2, 2):
            for mu in weights(2, 2):
                for v, u, beta, k, nu in generalized_prv_tuples(g, lam, mu):
                    checked += 1
                    if not generalized_prv_check(lam, mu, v, u, beta, k):
                        bad.append(f"generalized {name} {lam} {mu} {v} {u} {beta} {k}")
    report(10, "PRV bound, KPRV multiplicity one, generalized PRV", not bad, f"{checked} checks, {len(bad)} failures")


def test_criterion_11_classical_limit(report):
    box = [p for p in oracles.partitions_in_box(3, 3)]
    checked, bad = 0, []
    for d in (2, 3, 4):
        g = WeylGroup(type_A(d - 1))
        w0 = Permutation(range(d, 0, -1))
        usable = [p for p in box if len(p) <= d]
        for lam in usable:
            for mu in usable:
                checked += 1
                lw, mw = Partition(lam).to_weight(d), Partition(mu).to_weight(d)
                paths = dict(kk_decompose(KKIndex(lw, g.longest, mw)))
                if paths != oracles.tensor_decomposition_sl(lam, mu, d):
                    bad.append(f"paths d={d} {lam} {mu}")
                lr = oracles.lr_coefficients(lam, mu, d)
                refined = dict(kk_decompose_tableaux(lam, mu, w0, d, gl=True))
                if refined != lr:
                    bad.append(f"refined d={d} {lam} {mu}")
    report(11, "w0 recovers the tensor product and LR coefficients", not bad,
           f"{checked} pairs, {len(bad)} failures")
