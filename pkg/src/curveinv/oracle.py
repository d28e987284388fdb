"""Brute-force reference counts for cross-checking the table engine.

Deliberately naive: every k-subset of diagram chords is tested against the
pattern by searching for a chord bijection whose induced endpoint map is
strictly increasing (or, for arrow patterns, becomes so after some rotation
of the pattern). No code is shared with counting.py.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .diagrams import ArrowDiagram, SignedChordDiagram
from .patterns import ANY, EvalMode, Pattern, PatternKind


def _monotone(assignment: dict[int, int]) -> bool:
    ordered = [assignment[s] for s in sorted(assignment)]
    return all(a < b for a, b in zip(ordered, ordered[1:]))


def _chord_subset_matches(
    p: Pattern, subset: tuple[tuple[int, int, int], ...]
) -> bool:
    for perm in permutations(subset):
        assignment: dict[int, int] = {}
        ok = True
        for (a, b, constraint), (lo, hi, sign) in zip(p.chords, perm):
            if constraint != ANY and sign != constraint:
                ok = False
                break
            assignment[a] = lo
            assignment[b] = hi
        if ok and _monotone(assignment):
            return True
    return False


def count_embeddings_oracle(
    p: Pattern, d: SignedChordDiagram, mode: EvalMode
) -> int:
    assert p.kind is PatternKind.CHORD
    total = 0
    for subset in combinations(d.chords, p.k):
        if not _chord_subset_matches(p, subset):
            continue
        if mode is EvalMode.WEIGHTED:
            w = 1
            for _, _, sign in subset:
                w *= sign
            total += w
        else:
            total += 1
    return total


def _arrow_subset_matches(
    p: Pattern, subset: tuple[tuple[int, int, int], ...]
) -> bool:
    m = 2 * p.k
    for shift in range(m):
        shifted = [
            ((t - 1 + shift) % m + 1, (h - 1 + shift) % m + 1, c)
            for t, h, c in p.chords
        ]
        for perm in permutations(subset):
            assignment: dict[int, int] = {}
            ok = True
            for (t, h, constraint), (tail, head, sign) in zip(shifted, perm):
                if constraint != ANY and sign != constraint:
                    ok = False
                    break
                assignment[t] = tail
                assignment[h] = head
            if ok and _monotone(assignment):
                return True
    return False


def count_arrow_pattern_oracle(p: Pattern, d: ArrowDiagram) -> int:
    assert p.kind is PatternKind.ARROW
    total = 0
    for subset in combinations(d.arrows, p.k):
        if not _arrow_subset_matches(p, subset):
            continue
        w = 1
        for _, _, sign in subset:
            w *= sign
        total += w
    return total
