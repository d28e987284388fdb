"""Based diagram data model: signed chords, directed arrows, text form.

Slots 1..2n sit on an oriented circle, numbered from the position right
after the base point. A signed chord diagram is a perfect matching of the
slots with a sign per chord; an arrow diagram is the directed variant with
a sign per arrow. Both have a stable one-line text form.

All types are immutable values; construction canonicalizes chord order so
equal diagrams compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .patterns import EvalMode, ParseError


class Orientation(Enum):
    CCW = "ccw"
    CW = "cw"


class ArrowRule(Enum):
    """How arrow direction turns into a chord sign.

    An arrow is "forward" when its tail comes before its head in base-point
    order. FORWARD_PLUS keeps the arrow sign on forward arrows and flips it
    on backward ones; FORWARD_MINUS is the opposite.
    """

    FORWARD_PLUS = "forward_plus"
    FORWARD_MINUS = "forward_minus"


@dataclass(frozen=True)
class Convention:
    """The finite set of reading conventions left open by the source figures.

    Fixed once by calibration and then frozen in configuration; nothing in
    the library silently picks a value.
    """

    orientation: Orientation = Orientation.CCW
    arrow_rule: ArrowRule = ArrowRule.FORWARD_PLUS
    eval_mode: EvalMode = EvalMode.WEIGHTED


class InvalidDiagramError(ValueError):
    """A diagram violating the perfect-matching invariants was refused."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class SignedChordDiagram:
    """Perfect matching of slots 1..2n, one sign per chord."""

    n: int
    chords: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        fixed = sorted(
            (min(a, b), max(a, b), s) for a, b, s in self.chords
        )
        object.__setattr__(self, "chords", tuple(fixed))


@dataclass(frozen=True)
class ArrowDiagram:
    """Perfect matching of slots 1..2n by directed (tail, head, sign) arrows."""

    n: int
    arrows: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        fixed = sorted(self.arrows, key=lambda ar: (min(ar[0], ar[1]), ar))
        object.__setattr__(self, "arrows", tuple(fixed))


@dataclass(frozen=True)
class CurveDiagram:
    """An arrow diagram plus construction metadata.

    rot and jplus are carried, never recomputed silently; provenance is
    always set by the generators.
    """

    diagram: ArrowDiagram
    rot: int | None = None
    jplus: int | None = None
    provenance: str = ""


Diagram = SignedChordDiagram | ArrowDiagram


def _items(d: Diagram) -> tuple[tuple[int, int, int], ...]:
    return d.chords if isinstance(d, SignedChordDiagram) else d.arrows


def validate(d: Diagram) -> list[str]:
    """Return every violated invariant (empty list means the diagram is ok).

    Violations are data, not failures: callers that must refuse invalid
    diagrams raise InvalidDiagramError with this list.
    """
    problems = []
    items = _items(d)
    noun = "chord" if isinstance(d, SignedChordDiagram) else "arrow"
    if d.n < 0:
        problems.append(f"negative {noun} count {d.n}")
        return problems
    if len(items) != d.n:
        problems.append(f"n={d.n} but {len(items)} {noun}s present")
    total = 2 * d.n
    seen: set[int] = set()
    reused: list[int] = []
    for idx, (a, b, s) in enumerate(items):
        if a == b:
            problems.append(f"{noun} {idx}: endpoints equal at slot {a}")
        if s not in (1, -1):
            problems.append(f"{noun} {idx}: bad sign {s!r}")
        for slot in (a, b):
            if not 1 <= slot <= total:
                problems.append(
                    f"{noun} {idx}: slot {slot} out of range 1..{total}"
                )
            elif slot in seen:
                reused.append(slot)
            seen.add(slot)
    for slot in sorted(set(reused)):
        problems.append(f"slot {slot} reused")
    for slot in sorted(set(range(1, total + 1)) - seen):
        problems.append(f"slot {slot} unused")
    return problems


def parse_diagram(text: str, line: int = 1) -> Diagram:
    """Parse one diagram record.

    Grammar: ``kind ";" "n=" INT ";" item*`` with kind in {chords, arrows},
    chord items ``A-B:S`` and arrow items ``T>H:S``, whitespace between
    fields being any run of spaces. Raises ParseError with line/column on
    syntax errors and InvalidDiagramError when the matching is broken.
    """
    raw = text.rstrip("\n")
    i = 0

    def fail(message: str, col: int):
        raise ParseError(message, line, col)

    def skip_ws():
        nonlocal i
        while i < len(raw) and raw[i] == " ":
            i += 1

    skip_ws()
    kind = None
    for word in ("chords", "arrows"):
        if raw.startswith(word, i):
            kind = word
            i += len(word)
            break
    if kind is None:
        fail("expected 'chords' or 'arrows'", i + 1)
    if not raw.startswith(";", i):
        fail("expected ';' after kind", i + 1)
    i += 1
    skip_ws()
    if not raw.startswith("n=", i):
        fail("expected 'n='", i + 1)
    i += 2
    start = i
    while i < len(raw) and raw[i].isdigit():
        i += 1
    if i == start:
        fail("expected chord count", i + 1)
    n = int(raw[start:i])
    if not raw.startswith(";", i):
        fail("expected ';' after chord count", i + 1)
    i += 1

    sep = "-" if kind == "chords" else ">"
    items: list[tuple[int, int, int]] = []
    while True:
        skip_ws()
        if i >= len(raw):
            break
        start = i
        while i < len(raw) and raw[i].isdigit():
            i += 1
        if i == start:
            fail("expected slot number", i + 1)
        a = int(raw[start:i])
        if i >= len(raw) or raw[i] != sep:
            fail(f"expected {sep!r} between endpoints", i + 1)
        i += 1
        start = i
        while i < len(raw) and raw[i].isdigit():
            i += 1
        if i == start:
            fail("expected slot number", i + 1)
        b = int(raw[start:i])
        if i >= len(raw) or raw[i] != ":":
            fail("expected ':' before sign", i + 1)
        i += 1
        if i >= len(raw) or raw[i] not in "+-":
            fail("expected sign '+' or '-'", i + 1)
        s = 1 if raw[i] == "+" else -1
        i += 1
        if a == b:
            fail(f"chord endpoints equal at slot {a}", start + 1)
        items.append((a, b, s))

    d: Diagram
    if kind == "chords":
        d = SignedChordDiagram(n=n, chords=tuple(items))
    else:
        d = ArrowDiagram(n=n, arrows=tuple(items))
    problems = validate(d)
    if problems:
        raise InvalidDiagramError(problems)
    return d


def serialize_diagram(d: Diagram) -> str:
    """Canonical one-line record; refuses invalid diagrams."""
    problems = validate(d)
    if problems:
        raise InvalidDiagramError(problems)
    if isinstance(d, SignedChordDiagram):
        kind, sep = "chords", "-"
    else:
        kind, sep = "arrows", ">"
    head = f"{kind}; n={d.n};"
    items = [
        f"{a}{sep}{b}:{'+' if s > 0 else '-'}" for a, b, s in _items(d)
    ]
    return head if not items else head + " " + " ".join(items)


def iter_diagram_records(text: str):
    """Yield (line_number, record) for each non-comment line of a file."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def arrows_to_chords(a: ArrowDiagram, conv: Convention) -> SignedChordDiagram:
    """Switch each arrow to a signed chord per the convention's arrow rule.

    The chord sign is a function of the arrow's direction relative to
    base-point order and of the arrow's own sign. On all-positive arrow
    diagrams (the ones plane curves produce) the map is a bijection onto
    signed diagrams; the arrow sign can be recovered by inverting the rule.
    """
    chords = []
    for t, h, s in a.arrows:
        forward = t < h
        if conv.arrow_rule is ArrowRule.FORWARD_PLUS:
            sign = s if forward else -s
        else:
            sign = -s if forward else s
        chords.append((min(t, h), max(t, h), sign))
    return SignedChordDiagram(n=a.n, chords=tuple(chords))
