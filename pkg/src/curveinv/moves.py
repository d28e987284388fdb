"""Tangency and triple-point rewriting on based arrow diagrams.

Inverse-tangency inserts add a nested arrow pair with opposite directions;
the direct-tangency variant (the negative control) adds a crossed pair.
Triple-point moves swap the contents of three adjacent slot pairs joined
pairwise by three arrows. All slot relabeling is order-preserving, so an
insert followed by its delete restores the original diagram exactly, and a
triple-point move is its own inverse.

The base point sits between the top slot and slot 1 and is never crossed:
arcs are indexed 0..2n, where arc g lies between slot g and slot g+1 (arc 0
starts at the base point, arc 2n ends at it).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .counting import evaluate_all
from .diagrams import ArrowDiagram, Convention, CurveDiagram, serialize_diagram
from .patterns import Formula


class MoveKind(Enum):
    IR2_INSERT = "iR2_insert"
    IR2_DELETE = "iR2_delete"
    R3 = "R3"
    DR2_INSERT = "dR2_insert"
    DR2_DELETE = "dR2_delete"


class Variant(Enum):
    UP = "up"
    DOWN = "down"


# Canonical kind order; site sampling and logs follow it.
KIND_ORDER = (
    MoveKind.IR2_INSERT,
    MoveKind.IR2_DELETE,
    MoveKind.R3,
    MoveKind.DR2_INSERT,
    MoveKind.DR2_DELETE,
)

INVARIANCE_KINDS = (MoveKind.IR2_INSERT, MoveKind.IR2_DELETE, MoveKind.R3)

_INSERT_KINDS = (MoveKind.IR2_INSERT, MoveKind.DR2_INSERT)
_DELETE_KINDS = (MoveKind.IR2_DELETE, MoveKind.DR2_DELETE)


class StaleSiteError(ValueError):
    """Site does not apply to the diagram it was handed."""


@dataclass(frozen=True)
class MoveSite:
    """One applicable move.

    data layout: inserts (arc1, arc2, Variant) with arc1 <= arc2; deletes
    (p,) with p the smaller slot of the first arrow of the pair; triple
    points (p, q, r), the starts of the three swapped slot pairs.
    """

    kind: MoveKind
    data: tuple

    def format(self) -> str:
        parts = [self.kind.value]
        for x in self.data:
            parts.append(x.value if isinstance(x, Variant) else str(x))
        return " ".join(parts)


_BY_VALUE = {k.value: k for k in MoveKind}


def parse_move_line(text: str) -> MoveSite:
    parts = text.split()
    if not parts or parts[0] not in _BY_VALUE:
        raise ValueError(f"bad move line: {text!r}")
    kind = _BY_VALUE[parts[0]]
    args = parts[1:]
    try:
        if kind in _INSERT_KINDS:
            if len(args) != 3:
                raise ValueError
            data = (int(args[0]), int(args[1]), Variant(args[2]))
        elif kind in _DELETE_KINDS:
            if len(args) != 1:
                raise ValueError
            data = (int(args[0]),)
        else:
            if len(args) != 3:
                raise ValueError
            data = (int(args[0]), int(args[1]), int(args[2]))
    except ValueError:
        raise ValueError(f"bad move line: {text!r}") from None
    return MoveSite(kind, data)


def _slot_maps(d: ArrowDiagram):
    partner: dict[int, int] = {}
    forward: dict[int, bool] = {}
    sign: dict[int, int] = {}
    for t, h, s in d.arrows:
        partner[t] = h
        partner[h] = t
        forward[t] = forward[h] = t < h
        sign[t] = sign[h] = s
    return partner, forward, sign


# Triple-point decorations seen on diagrams of plane curves, keyed by the
# pairwise-relation word (S/N/X) of the three arrows sorted by smaller slot.
# A decoration entry is (d12, d13, d23): whether the arrow joining slot
# pairs i and j points from the lower pair to the higher one.
_T, _F = True, False
_REALIZABLE: dict[str, frozenset[tuple[bool, bool, bool]]] = {
    "XSX": frozenset({(_T, _T, _T), (_F, _F, _F)}),
    "NNX": frozenset({(_T, _T, _T), (_F, _F, _F)}),
    "XSN": frozenset({(_T, _F, _F), (_F, _T, _T)}),
    "NXX": frozenset({(_T, _F, _F), (_F, _T, _T)}),
    "XXX": frozenset({(_F, _T, _F), (_T, _F, _T)}),
    "NNS": frozenset({(_F, _T, _F), (_T, _F, _T)}),
    "XXN": frozenset({(_F, _F, _T), (_T, _T, _F)}),
    "NXS": frozenset({(_F, _F, _T), (_T, _T, _F)}),
}


def _rel_letter(c1: tuple[int, int], c2: tuple[int, int]) -> str:
    # c1, c2 are (lo, hi) with c1[0] < c2[0].
    if c1[1] < c2[0]:
        return "S"
    if c2[1] < c1[1]:
        return "N"
    return "X"


def _r3_shape(d, partner, forward, trip):
    """(relation word, decoration) of a candidate triple, or None if the
    three slot pairs are not joined pairwise by three arrows."""
    p, q, r = trip
    pairs = ((p, p + 1), (q, q + 1), (r, r + 1))
    slots = [x for pair in pairs for x in pair]
    if len(set(slots)) != 6 or slots[0] < 1 or max(slots) > 2 * d.n:
        return None
    decor = []
    for i in range(3):
        for j in range(i + 1, 3):
            x0, x1 = pairs[i]
            if partner.get(x0) in pairs[j]:
                decor.append(forward[x0])
            elif partner.get(x1) in pairs[j]:
                decor.append(forward[x1])
            else:
                return None
    chords = sorted(
        {(min(x, partner[x]), max(x, partner[x])) for x in slots}
    )
    if len(chords) != 3:
        return None
    word = (
        _rel_letter(chords[0], chords[1])
        + _rel_letter(chords[0], chords[2])
        + _rel_letter(chords[1], chords[2])
    )
    return word, (decor[0], decor[1], decor[2])


def _r3_admissible(shape, r3_variants: str) -> bool:
    if shape is None:
        return False
    if r3_variants == "all":
        return True
    word, decor = shape
    allowed = _REALIZABLE.get(word)
    return allowed is not None and decor in allowed


def _r3_sites(d, partner, forward, r3_variants: str) -> list[MoveSite]:
    m = 2 * d.n
    found: set[tuple[int, int, int]] = set()
    for p in range(1, m):
        a = partner[p]
        b = partner[p + 1]
        if a == p + 1:
            continue
        for sa in (a - 1, a):
            if sa < 1 or sa + 1 > m:
                continue
            a2 = sa + 1 if a == sa else sa
            for sb in (b - 1, b):
                if sb < 1 or sb + 1 > m:
                    continue
                if len({p, p + 1, sa, sa + 1, sb, sb + 1}) != 6:
                    continue
                b2 = sb + 1 if b == sb else sb
                if partner.get(a2) != b2:
                    continue
                found.add(tuple(sorted((p, sa, sb))))
    sites = []
    for trip in sorted(found):
        shape = _r3_shape(d, partner, forward, trip)
        if _r3_admissible(shape, r3_variants):
            sites.append(MoveSite(MoveKind.R3, trip))
    return sites


def _delete_sites(d, partner, forward, sign, kind) -> list[MoveSite]:
    m = 2 * d.n
    sites = []
    for t, h, s in d.arrows:
        p, q = min(t, h), max(t, h)
        if s != 1:
            continue
        if kind is MoveKind.IR2_DELETE:
            mate_lo, mate_hi = p + 1, q - 1
            if q < p + 3:
                continue
        else:
            mate_lo, mate_hi = p + 1, q + 1
            if q < p + 2 or q + 1 > m:
                continue
        if partner.get(mate_lo) != mate_hi:
            continue
        if sign[mate_lo] != 1 or forward[p] == forward[mate_lo]:
            continue
        sites.append(MoveSite(kind, (p,)))
    return sites


def insert_site_count(d: ArrowDiagram) -> int:
    """Number of insert sites of one insert kind: arc pairs times variants."""
    arcs = 2 * d.n + 1
    return arcs * (arcs + 1)


def _unrank_insert(kind: MoveKind, d: ArrowDiagram, index: int) -> MoveSite:
    # Inverse of the find_sites ordering: arc1 asc, arc2 asc, up then down.
    pair_rank, vi = divmod(index, 2)
    arcs = 2 * d.n + 1
    g1 = 0
    while pair_rank >= arcs - g1:
        pair_rank -= arcs - g1
        g1 += 1
    return MoveSite(kind, (g1, g1 + pair_rank, (Variant.UP, Variant.DOWN)[vi]))


def find_sites(
    d: ArrowDiagram, kind: MoveKind, r3_variants: str = "realizable"
) -> list[MoveSite]:
    """All sites of one kind, duplicate-free, in canonical order.

    r3_variants is "realizable" (only decorations plane curves produce) or
    "all" (any pairwise-joined triple).
    """
    if kind in _INSERT_KINDS:
        return [
            _unrank_insert(kind, d, i) for i in range(insert_site_count(d))
        ]
    partner, forward, sign = _slot_maps(d)
    if kind in _DELETE_KINDS:
        return _delete_sites(d, partner, forward, sign, kind)
    return _r3_sites(d, partner, forward, r3_variants)


def _apply_insert(d: ArrowDiagram, site: MoveSite) -> ArrowDiagram:
    g1, g2, variant = site.data
    m = 2 * d.n
    if not (0 <= g1 <= g2 <= m) or not isinstance(variant, Variant):
        raise StaleSiteError(f"insert arcs out of range: {site.format()}")
    relabeled = [
        (
            t + 2 * (t > g1) + 2 * (t > g2),
            h + 2 * (h > g1) + 2 * (h > g2),
            s,
        )
        for t, h, s in d.arrows
    ]
    s1, s2 = g1 + 1, g2 + 3
    up = variant is Variant.UP
    if site.kind is MoveKind.IR2_INSERT:
        # Nested pair, opposite directions.
        outer = (s1, s2 + 1, 1) if up else (s2 + 1, s1, 1)
        inner = (s2, s1 + 1, 1) if up else (s1 + 1, s2, 1)
    else:
        # Crossed pair, opposite directions.
        outer = (s1, s2, 1) if up else (s2, s1, 1)
        inner = (s2 + 1, s1 + 1, 1) if up else (s1 + 1, s2 + 1, 1)
    return ArrowDiagram(n=d.n + 2, arrows=tuple(relabeled) + (outer, inner))


def _apply_delete(d: ArrowDiagram, site: MoveSite) -> ArrowDiagram:
    if site not in find_sites(d, site.kind):
        raise StaleSiteError(f"stale delete site: {site.format()}")
    (p,) = site.data
    partner, _, _ = _slot_maps(d)
    q = partner[p]
    if site.kind is MoveKind.IR2_DELETE:
        removed = sorted((p, q, p + 1, q - 1))
    else:
        removed = sorted((p, q, p + 1, q + 1))
    gone = set(removed)
    kept = []
    for t, h, s in d.arrows:
        if t in gone:
            continue
        shift_t = sum(1 for x in removed if x < t)
        shift_h = sum(1 for x in removed if x < h)
        kept.append((t - shift_t, h - shift_h, s))
    return ArrowDiagram(n=d.n - 2, arrows=tuple(kept))


def _apply_r3(
    d: ArrowDiagram, site: MoveSite, r3_variants: str
) -> ArrowDiagram:
    trip = site.data
    p, q, r = trip
    if not (p + 2 <= q and q + 2 <= r):
        raise StaleSiteError(f"stale triple-point site: {site.format()}")
    partner, forward, _ = _slot_maps(d)
    shape = _r3_shape(d, partner, forward, trip)
    if not _r3_admissible(shape, r3_variants):
        raise StaleSiteError(f"stale triple-point site: {site.format()}")
    swap = {p: p + 1, p + 1: p, q: q + 1, q + 1: q, r: r + 1, r + 1: r}
    arrows = tuple(
        (swap.get(t, t), swap.get(h, h), s) for t, h, s in d.arrows
    )
    return ArrowDiagram(n=d.n, arrows=arrows)


def apply_move(
    d: ArrowDiagram, site: MoveSite, r3_variants: str = "realizable"
) -> ArrowDiagram:
    """Apply one move; raises StaleSiteError if the site does not fit d."""
    if site.kind in _INSERT_KINDS:
        return _apply_insert(d, site)
    if site.kind in _DELETE_KINDS:
        return _apply_delete(d, site)
    return _apply_r3(d, site, r3_variants)


def random_site(
    d: ArrowDiagram,
    rng: random.Random,
    kinds=INVARIANCE_KINDS,
    r3_variants: str = "realizable",
) -> MoveSite | None:
    """Uniform site over all enabled kinds; None when nothing applies.

    Insert sites are counted analytically and decoded by rank, so a step
    never materializes the quadratic insert-site list.
    """
    enabled = [k for k in KIND_ORDER if k in kinds]
    counts: list[int] = []
    listed: dict[MoveKind, list[MoveSite]] = {}
    for k in enabled:
        if k in _INSERT_KINDS:
            counts.append(insert_site_count(d))
        else:
            listed[k] = find_sites(d, k, r3_variants)
            counts.append(len(listed[k]))
    total = sum(counts)
    if total == 0:
        return None
    index = rng.randrange(total)
    for k, c in zip(enabled, counts):
        if index < c:
            if k in _INSERT_KINDS:
                return _unrank_insert(k, d, index)
            return listed[k][index]
        index -= c
    raise AssertionError("unreachable")


def random_site_balanced(
    d: ArrowDiagram,
    rng: random.Random,
    kinds=INVARIANCE_KINDS,
    r3_variants: str = "realizable",
) -> MoveSite | None:
    """Uniform kind among kinds with sites, then uniform site within it.

    Site-uniform sampling weights inserts by their quadratic site count, so
    long walks grow without bound; this sampler keeps inserts and deletes
    balanced and diagram size near the start size.
    """
    enabled = [k for k in KIND_ORDER if k in kinds]
    available: list[tuple[MoveKind, int, list[MoveSite] | None]] = []
    for k in enabled:
        if k in _INSERT_KINDS:
            c = insert_site_count(d)
            sites = None
        else:
            sites = find_sites(d, k, r3_variants)
            c = len(sites)
        if c:
            available.append((k, c, sites))
    if not available:
        return None
    k, c, sites = available[rng.randrange(len(available))]
    index = rng.randrange(c)
    if sites is None:
        return _unrank_insert(k, d, index)
    return sites[index]


def replay(
    d: ArrowDiagram, lines, r3_variants: str = "realizable"
) -> ArrowDiagram:
    """Re-run a move log (an iterable of lines; blanks and # notes skipped)."""
    for raw in lines:
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        d = apply_move(d, parse_move_line(text), r3_variants=r3_variants)
    return d


@dataclass(frozen=True)
class FuzzViolation:
    seed_index: int
    seed_text: str
    trial: int
    names: tuple[str, ...]
    before: tuple[int, ...]
    after: tuple[int, ...]
    log: tuple[str, ...]

    def format(self) -> str:
        lines = [f"violation seed={self.seed_index} trial={self.trial}"]
        for name, x, y in zip(self.names, self.before, self.after):
            if x != y:
                lines.append(f"  {name}: before={x} after={y}")
        lines.append(f"  seed diagram: {self.seed_text}")
        lines.append("  moves:")
        lines.extend(f"    {step}" for step in self.log)
        return "\n".join(lines)


@dataclass
class FuzzReport:
    seeds: int
    trials: int
    depth: int
    violations: list[FuzzViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        if self.ok:
            return (
                f"OK trials={self.trials} depth={self.depth}"
                f" seeds={self.seeds}"
            )
        blocks = [v.format() for v in self.violations]
        blocks.append(f"{len(self.violations)} violation(s)")
        return "\n".join(blocks)


def fuzz_invariance(
    formulas,
    seeds,
    trials: int,
    depth: int,
    rng_seed,
    convention: Convention,
    kinds=INVARIANCE_KINDS,
    r3_variants: str = "realizable",
    max_violations: int | None = None,
) -> FuzzReport:
    """Random move walks; report every endpoint value change.

    Each (seed, trial) pair draws from its own RNG stream, so reports are
    reproducible independently of execution order, and every violation
    carries a log that replay() accepts.
    """
    names = tuple(f.name for f in formulas)
    violations: list[FuzzViolation] = []
    for si, seed in enumerate(seeds):
        d0 = seed.diagram if isinstance(seed, CurveDiagram) else seed
        base = evaluate_all(formulas, d0, convention)
        for trial in range(trials):
            rng = random.Random(f"{rng_seed}:{si}:{trial}")
            d = d0
            log: list[str] = []
            for _ in range(depth):
                site = random_site(d, rng, kinds, r3_variants)
                if site is None:
                    log.append("# stopped early: no applicable sites")
                    break
                log.append(site.format())
                d = apply_move(d, site, r3_variants=r3_variants)
            after = evaluate_all(formulas, d, convention)
            if after != base:
                violations.append(
                    FuzzViolation(
                        seed_index=si,
                        seed_text=serialize_diagram(d0),
                        trial=trial,
                        names=names,
                        before=base,
                        after=after,
                        log=tuple(log),
                    )
                )
                if max_violations and len(violations) >= max_violations:
                    return FuzzReport(len(seeds), trials, depth, violations)
    return FuzzReport(len(seeds), trials, depth, violations)
