"""Standard concatenations of LS paths and their minimal standard lifts.

A concatenation theta = pi_1 * ... * pi_n determines the tuple of its
direction cosets, piece by piece.  theta is standard when that tuple admits
a weakly decreasing lift to W; the initial element of the minimal such lift
is w(theta).  Standard concatenations form a crystal isomorphic to the LS
paths of shape lambda_1 + ... + lambda_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coxeter import Coset, WeylElement, WeylGroup, bruhat_leq, deodhar_min
from .paths import (
    Crystal,
    LSPath,
    SegPath,
    concat_paths,
    generate_crystal,
    lowering_word,
    raise_to_dominant,
    straight_path,
)


class ConcatPath(SegPath):
    """pi_1 * ... * pi_n, keeping track of the pieces."""

    __slots__ = ()

    @classmethod
    def from_pieces(cls, pieces: Sequence[LSPath]) -> "ConcatPath":
        theta = concat_paths(*pieces)
        return cls(theta.orbits, theta.segs)

    @classmethod
    def straight(cls, group: WeylGroup, shapes: Sequence[Sequence[int]]) -> "ConcatPath":
        return cls.from_pieces([straight_path(group, s) for s in shapes])

    def assembled(self):
        return self.to_plpath()


@dataclass(frozen=True)
class FlattenedChain:
    """Direction cosets of all pieces, in order; ``sizes[j]`` entries per piece."""

    entries: tuple
    sizes: tuple

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class StandardLift:
    chain: tuple

    @property
    def initial(self) -> WeylElement:
        return self.chain[0]


def flatten(theta: SegPath) -> FlattenedChain:
    entries = []
    sizes = []
    for piece in theta.pieces():
        o = piece.orbit
        ks = piece.directions() if piece.segs else [0]
        sizes.append(len(ks))
        entries.extend(o.coset(k) for k in ks)
    return FlattenedChain(tuple(entries), tuple(sizes))


def minimal_standard_lift(chain) -> StandardLift | None:
    """sigma_m = min(entry m), sigma_j = min{v in entry j : v >= sigma_{j+1}}."""
    entries = chain.entries if isinstance(chain, FlattenedChain) else tuple(chain)
    if not entries:
        return None
    out = [entries[-1].min_rep]
    for coset in reversed(entries[:-1]):
        nxt = deodhar_min(coset, out[-1])
        if nxt is None:
            return None
        out.append(nxt)
    out.reverse()
    return StandardLift(tuple(out))


def is_standard(theta: SegPath) -> bool:
    return minimal_standard_lift(flatten(theta)) is not None


def weyl_of(theta: SegPath) -> WeylElement | None:
    """Initial element of the minimal standard lift (None if not standard)."""
    lift = minimal_standard_lift(flatten(theta))
    return None if lift is None else lift.initial


def eta_of(theta: SegPath) -> SegPath:
    eta, _ = raise_to_dominant(theta)
    return eta


def is_standard_lift(chain, lift: Sequence[WeylElement]) -> bool:
    entries = chain.entries if isinstance(chain, FlattenedChain) else tuple(chain)
    if len(lift) != len(entries):
        return False
    for coset, x in zip(entries, lift):
        if x not in coset:
            return False
    return all(bruhat_leq(b, a) for a, b in zip(lift, lift[1:]))


def standard_crystal(group: WeylGroup, shapes: Sequence[Sequence[int]]) -> Crystal:
    """The crystal generated from pi_{lambda_1} * ... * pi_{lambda_n}."""
    return Crystal(ConcatPath.straight(group, shapes))


def crystal_iso(pi: LSPath, shapes: Sequence[Sequence[int]]) -> ConcatPath:
    """Image of pi under the crystal isomorphism onto standard concatenations.

    Replays the lowering operators that produce pi from the straight path.
    """
    shapes = [tuple(int(x) for x in s) for s in shapes]
    total = tuple(sum(col) for col in zip(*shapes))
    if total != tuple(pi.shape):
        raise ValueError(f"shapes sum to {total}, not to the shape {tuple(pi.shape)} of the path")
    theta = ConcatPath.straight(pi.group, shapes)
    for i in reversed(lowering_word(pi)):
        theta = theta.root_f(i)
        if theta is None:
            raise AssertionError("lowering operator vanished on the standard side")
    return theta


def crystal_iso_table(group: WeylGroup, shape: Sequence[int], shapes: Sequence[Sequence[int]]) -> list:
    """crystal_iso for every LS path of the given shape, in crystal order,
    built along the f-edges of the LS crystal."""
    P = generate_crystal(group, shape)
    image = [None] * len(P)
    image[0] = ConcatPath.straight(group, shapes)
    for x in range(len(P)):
        src = image[x]
        for i in range(group.rank):
            y = P.f[i][x]
            if y >= 0 and image[y] is None:
                image[y] = src.root_f(i + 1)
    return image


def fundamental_shapes(mu: Sequence[int]) -> list:
    """mu written as a sum of fundamental weights, w_1's first, then w_2's, ...

    The zero weight gets a single zero piece.
    """
    n = len(mu)
    out = []
    for j, c in enumerate(mu):
        for _ in range(c):
            out.append(tuple(int(k == j) for k in range(n)))
    return out or [(0,) * n]
