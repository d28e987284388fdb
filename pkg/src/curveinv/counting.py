"""Optimized pattern counting and formula evaluation.

The engine classifies every pair of diagram chords as sequential, nested,
or crossed (in base-point order), packs the three relations into integer
matrices, and evaluates degree <= 3 terms with one matrix product each.
Counts are exact integers throughout. An independent brute-force oracle
lives in oracle.py and shares no code with this path.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .diagrams import (
    ArrowDiagram,
    Convention,
    Orientation,
    SignedChordDiagram,
    arrows_to_chords,
)
from .patterns import (
    ANY,
    EvalMode,
    Formula,
    Pattern,
    PatternKind,
    mirror_formula,
    mirror_pattern,
)

SEQ, NEST, CROSS = 0, 1, 2


class KindMismatchError(TypeError):
    """Pattern kind does not fit the diagram or counting routine."""


def _relation(lo1: int, hi1: int, lo2: int, hi2: int) -> int:
    """Relation of two chords with lo1 < lo2 in base-point order."""
    if hi1 < lo2:
        return SEQ
    if hi2 < hi1:
        return NEST
    return CROSS


def _perfect_matchings(k: int):
    """All perfect matchings of slots 1..2k as lo-sorted (a, b) tuples."""
    def rec(rem: tuple[int, ...]):
        if not rem:
            yield ()
            return
        a = rem[0]
        for i in range(1, len(rem)):
            b = rem[i]
            rest = rem[1:i] + rem[i + 1:]
            for tail in rec(rest):
                yield ((a, b),) + tail

    return list(rec(tuple(range(1, 2 * k + 1))))


def _signature(matching: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    """Pairwise relation vector of a lo-sorted matching."""
    return tuple(
        _relation(*matching[i], *matching[j])
        for i, j in combinations(range(len(matching)), 2)
    )


def _check_signature_injectivity():
    # The counting path identifies a configuration by its pairwise relation
    # vector; that is only sound if the vector determines the matching.
    for k in (2, 3):
        sigs = [_signature(m) for m in _perfect_matchings(k)]
        assert len(sigs) == len(set(sigs))


_check_signature_injectivity()


def pattern_signature(p: Pattern) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(relation vector, per-role sign constraints) of a pattern.

    Roles are the pattern chords sorted by smaller endpoint, matching the
    lo-order of any embedded diagram chords.
    """
    matching = tuple((min(a, b), max(a, b)) for a, b, _ in p.chords)
    constraints = tuple(c for _, _, c in p.chords)
    return _signature(matching), constraints


class DiagramTables:
    """Packed pairwise-relation tables for one diagram, reused across terms."""

    def __init__(self, d: SignedChordDiagram):
        self.n = d.n
        lo = np.fromiter((c[0] for c in d.chords), dtype=np.int64, count=d.n)
        hi = np.fromiter((c[1] for c in d.chords), dtype=np.int64, count=d.n)
        self.signs = np.fromiter(
            (c[2] for c in d.chords), dtype=np.int64, count=d.n
        )
        upper = np.triu(np.ones((d.n, d.n), dtype=bool), 1)
        seq = hi[:, None] < lo[None, :]
        nest = hi[None, :] < hi[:, None]
        self.rel = {
            SEQ: (seq & upper).astype(np.int64),
            NEST: (nest & upper).astype(np.int64),
            CROSS: (upper & ~seq & ~nest).astype(np.int64),
        }
        # Forward flag per arrow, present only for tables over arrow diagrams.
        self.forward: np.ndarray | None = None

    def role_vector(
        self, constraint: int, weighted: bool, forward: int | None = None
    ) -> np.ndarray:
        u = np.ones(self.n, dtype=np.int64)
        if constraint != ANY:
            u = u * (self.signs == constraint)
        if forward is not None:
            assert self.forward is not None
            u = u * (self.forward == forward)
        if weighted:
            u = u * self.signs
        return u

    def count(
        self,
        signature: tuple[int, ...],
        vectors: list[np.ndarray],
    ) -> int:
        """Sum of products of role vectors over index tuples i1<i2<...<ik
        whose pairwise relations equal the signature."""
        k = len(vectors)
        if k > self.n:
            return 0
        if k == 1:
            return int(vectors[0].sum())
        if k == 2:
            (r,) = signature
            return int(vectors[0] @ self.rel[r] @ vectors[1])
        if k == 3:
            r12, r13, r23 = signature
            u1, u2, u3 = vectors
            inner = (self.rel[r12] * u1[:, None]).T @ self.rel[r13]
            return int(
                np.sum(inner * self.rel[r23] * u2[:, None] * u3[None, :])
            )
        raise NotImplementedError("table path handles k <= 3")


def _tables_for_arrows(d: ArrowDiagram) -> DiagramTables:
    # Both chord and arrow normalizations sort by the smaller endpoint, and
    # smaller endpoints are distinct in a valid diagram, so index i below
    # refers to the same arrow in both orderings.
    as_chords = SignedChordDiagram(
        n=d.n,
        chords=tuple((min(t, h), max(t, h), s) for t, h, s in d.arrows),
    )
    tables = DiagramTables(as_chords)
    tables.forward = np.fromiter(
        (1 if t < h else 0 for t, h, _ in d.arrows), dtype=np.int64, count=d.n
    )
    return tables


def _count_general(p: Pattern, d: SignedChordDiagram, mode: EvalMode) -> int:
    """Degree >= 4 chord counting by direct subset classification."""
    shape = tuple((a, b) for a, b, _ in p.chords)
    total = 0
    for subset in combinations(d.chords, p.k):
        slots = sorted(x for a, b, _ in subset for x in (a, b))
        rank = {s: i + 1 for i, s in enumerate(slots)}
        relabeled = tuple((rank[a], rank[b], s) for a, b, s in subset)
        if tuple((a, b) for a, b, _ in relabeled) != shape:
            continue
        if any(
            c != ANY and c != s
            for (_, _, s), (_, _, c) in zip(relabeled, p.chords)
        ):
            continue
        w = 1
        if mode is EvalMode.WEIGHTED:
            for _, _, s in relabeled:
                w *= s
        total += w
    return total


def count_embeddings(
    p: Pattern, d: SignedChordDiagram, mode: EvalMode
) -> int:
    """Count base-respecting embeddings of a chord pattern into a diagram.

    An embedding is an injective map from pattern chords to diagram chords
    under which the 2k matched endpoints, read from the base point, realize
    exactly the pattern's configuration. Sign constraints filter embeddings;
    the mode sets each embedding's weight (1, or the product of matched
    diagram signs).
    """
    if p.kind is not PatternKind.CHORD:
        raise KindMismatchError("count_embeddings needs a chord pattern")
    if not isinstance(d, SignedChordDiagram):
        raise KindMismatchError("count_embeddings needs a signed chord diagram")
    if p.k > 3:
        return _count_general(p, d, mode)
    tables = DiagramTables(d)
    return _count_from_tables(tables, p, mode)


def _count_from_tables(
    tables: DiagramTables, p: Pattern, mode: EvalMode
) -> int:
    sig, cons = pattern_signature(p)
    weighted = mode is EvalMode.WEIGHTED
    vectors = [tables.role_vector(c, weighted) for c in cons]
    return tables.count(sig, vectors)


def _rotations(p: Pattern) -> list[Pattern]:
    """Distinct based patterns in the cyclic rotation orbit of p."""
    out = []
    seen = set()
    m = 2 * p.k
    for shift in range(m):
        rotated = Pattern(
            k=p.k,
            kind=p.kind,
            chords=tuple(
                ((a - 1 + shift) % m + 1, (b - 1 + shift) % m + 1, c)
                for a, b, c in p.chords
            ),
        )
        if rotated.chords not in seen:
            seen.add(rotated.chords)
            out.append(rotated)
    return out


def count_arrow_pattern(p: Pattern, d: ArrowDiagram) -> int:
    """Count sub-arrow-diagrams of the pattern's type, ignoring the base point.

    Matching is up to rotation of the circle: a k-subset of arrows counts
    when its cyclic endpoint order and arrow directions realize the pattern.
    Each match weighs the product of the matched arrow signs; sign
    constraints, when present, filter matches.
    """
    if p.kind is not PatternKind.ARROW:
        raise KindMismatchError("count_arrow_pattern needs an arrow pattern")
    if not isinstance(d, ArrowDiagram):
        raise KindMismatchError("count_arrow_pattern needs an arrow diagram")
    if p.k > 3:
        return sum(
            _count_arrow_based_general(rot, d) for rot in _rotations(p)
        )
    tables = _tables_for_arrows(d)
    total = 0
    for rot in _rotations(p):
        sig, cons = pattern_signature(rot)
        directions = tuple(1 if t < h else 0 for t, h, _ in rot.chords)
        vectors = [
            tables.role_vector(c, weighted=True, forward=f)
            for c, f in zip(cons, directions)
        ]
        total += tables.count(sig, vectors)
    return total


def _count_arrow_based_general(p: Pattern, d: ArrowDiagram) -> int:
    shape = tuple(
        (min(t, h), max(t, h), t < h) for t, h, _ in p.chords
    )
    total = 0
    for subset in combinations(d.arrows, p.k):
        slots = sorted(x for t, h, _ in subset for x in (t, h))
        rank = {s: i + 1 for i, s in enumerate(slots)}
        relabeled = sorted(
            ((rank[t], rank[h], s) for t, h, s in subset),
            key=lambda arrow: min(arrow[0], arrow[1]),
        )
        key = tuple(
            (min(t, h), max(t, h), t < h) for t, h, _ in relabeled
        )
        if key != shape:
            continue
        if any(
            c != ANY and c != s
            for (_, _, s), (_, _, c) in zip(relabeled, p.chords)
        ):
            continue
        w = 1
        for _, _, s in relabeled:
            w *= s
        total += w
    return total


def evaluate(
    f: Formula,
    d: SignedChordDiagram | ArrowDiagram,
    mode: EvalMode | None = None,
) -> int:
    """Evaluate a formula: the coefficient-weighted sum of its term counts."""
    if f.kind is PatternKind.CHORD:
        if not isinstance(d, SignedChordDiagram):
            raise KindMismatchError("chord formula needs a signed chord diagram")
        if mode is None:
            raise ValueError("chord formulas need an explicit EvalMode")
        tables = DiagramTables(d)
        total = 0
        for coeff, p in f.terms:
            if p.k > 3:
                total += coeff * _count_general(p, d, mode)
            else:
                total += coeff * _count_from_tables(tables, p, mode)
        return total
    if not isinstance(d, ArrowDiagram):
        raise KindMismatchError("arrow formula needs an arrow diagram")
    return sum(coeff * count_arrow_pattern(p, d) for coeff, p in f.terms)


def evaluate_with_convention(
    f: Formula,
    d: SignedChordDiagram | ArrowDiagram,
    conv: Convention,
) -> int:
    """Evaluate under a full convention.

    Clockwise orientation reads the formula's templates mirrored; chord
    formulas applied to arrow diagrams first switch arrows to signed chords
    per the convention's arrow rule.
    """
    if conv.orientation is Orientation.CW:
        f = mirror_formula(f)
    if f.kind is PatternKind.CHORD and isinstance(d, ArrowDiagram):
        d = arrows_to_chords(d, conv)
    return evaluate(f, d, conv.eval_mode)


def count_arrow_with_convention(
    p: Pattern, d: ArrowDiagram, conv: Convention
) -> int:
    if conv.orientation is Orientation.CW:
        p = mirror_pattern(p)
    return count_arrow_pattern(p, d)


def evaluate_all(
    formulas: tuple[Formula, ...] | list[Formula],
    d: SignedChordDiagram | ArrowDiagram,
    conv: Convention,
) -> tuple[int, ...]:
    """Evaluate several chord formulas under one convention, sharing tables.

    Equivalent to evaluate_with_convention per formula but converts the
    diagram and packs the relation matrices only once; the fuzz loop calls
    this once per move.
    """
    if conv.orientation is Orientation.CW:
        formulas = [mirror_formula(f) for f in formulas]
    if isinstance(d, ArrowDiagram):
        d = arrows_to_chords(d, conv)
    tables = DiagramTables(d)
    out = []
    for f in formulas:
        if f.kind is not PatternKind.CHORD:
            raise KindMismatchError("evaluate_all handles chord formulas")
        total = 0
        for coeff, p in f.terms:
            if p.k > 3:
                total += coeff * _count_general(p, d, conv.eval_mode)
            else:
                total += coeff * _count_from_tables(tables, p, conv.eval_mode)
        out.append(total)
    return tuple(out)
