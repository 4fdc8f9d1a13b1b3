"""Rod geometries, their graduation marks, and the values they can read.

Positions are in fingers, measured from the right end of the graduated
scale: finger ``i`` (1-based) spans ``[i - 1, i]``. A notch sits at every
integer position ``0..finger_count``; an incision ``j`` of a finger split in
``q`` parts sits at ``(i - 1) + j/q``.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .numerics import QuantityError, format_rational, parse_quantity


class RodSpecError(ValueError):
    """A rod document or RodSpec violates the rod invariants."""


class MarkKind(enum.Enum):
    NOTCH = "notch"
    INCISION = "incision"


@dataclass(frozen=True, order=False)
class Mark:
    kind: MarkKind
    position: Fraction
    finger: int | None = None
    parts: int | None = None
    index: int | None = None

    @classmethod
    def notch(cls, position: int) -> Mark:
        return cls(MarkKind.NOTCH, Fraction(position))

    @classmethod
    def incision(cls, finger: int, parts: int, index: int) -> Mark:
        return cls(MarkKind.INCISION, (finger - 1) + Fraction(index, parts), finger, parts, index)

    @property
    def is_notch(self) -> bool:
        return self.kind is MarkKind.NOTCH

    def sort_key(self):
        # notches before incisions at a shared position, then coarser scales first
        return (self.position, not self.is_notch, self.parts or 0, self.index or 0)

    def __str__(self) -> str:
        if self.is_notch:
            return f"notch {self.position}"
        return f"incision {self.index}/{self.parts} of finger {self.finger}"


@dataclass(frozen=True)
class RodSpec:
    """Geometry of one graduated rod.

    ``subdivisions`` maps a 1-based finger index to the part-counts engraved
    on that finger (more than one when a finger carries several scales).
    """

    name: str
    finger_length_mm: Fraction
    finger_count: int
    subdivisions: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    has_ungraduated_extension: bool = False

    def __post_init__(self):
        try:
            length = Fraction(self.finger_length_mm)
        except (TypeError, ValueError) as exc:
            raise RodSpecError(f"finger length must be rational: {exc}") from None
        if isinstance(self.finger_length_mm, float):
            raise RodSpecError("finger length must be an exact rational, not a float")
        if length <= 0:
            raise RodSpecError("finger length must be positive")
        if isinstance(self.finger_count, bool) or not isinstance(self.finger_count, int):
            raise RodSpecError("finger count must be an integer")
        if self.finger_count < 1:
            raise RodSpecError("finger count must be positive")
        subs = {}
        for finger, parts in dict(self.subdivisions).items():
            if not 1 <= finger <= self.finger_count:
                raise RodSpecError(
                    f"subdivided finger {finger} outside 1..{self.finger_count}"
                )
            parts = tuple(parts)
            if not parts:
                raise RodSpecError(f"finger {finger} declares no part-counts")
            if any(q < 2 for q in parts):
                raise RodSpecError(f"finger {finger}: every part-count must be >= 2")
            if len(set(parts)) != len(parts):
                raise RodSpecError(f"finger {finger}: repeated part-count")
            subs[finger] = parts
        object.__setattr__(self, "finger_length_mm", length)
        object.__setattr__(self, "subdivisions", MappingProxyType(dict(sorted(subs.items()))))

    def __eq__(self, other):
        if not isinstance(other, RodSpec):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (
            RodSpec,
            (
                self.name,
                self.finger_length_mm,
                self.finger_count,
                dict(self.subdivisions),
                self.has_ungraduated_extension,
            ),
        )

    def _key(self):
        return (
            self.name,
            self.finger_length_mm,
            self.finger_count,
            tuple(self.subdivisions.items()),
            self.has_ungraduated_extension,
        )

    def __repr__(self):
        return (
            f"RodSpec(name={self.name!r}, finger_length_mm={self.finger_length_mm}, "
            f"finger_count={self.finger_count}, subdivisions={dict(self.subdivisions)}, "
            f"has_ungraduated_extension={self.has_ungraduated_extension})"
        )

    @property
    def length_mm(self) -> Fraction:
        return self.finger_count * self.finger_length_mm

    def scales(self):
        """Yield ``(finger, parts)`` for every engraved scale."""
        for finger, parts in self.subdivisions.items():
            for q in parts:
                yield finger, q


def royal_cubit() -> RodSpec:
    """28 fingers of 18.75 mm; finger ``i`` (1..15) split into ``i + 1`` parts."""
    return RodSpec(
        name="royal",
        finger_length_mm=Fraction(75, 4),
        finger_count=28,
        subdivisions={i: (i + 1,) for i in range(1, 16)},
        has_ungraduated_extension=True,
    )


def short_cubit() -> RodSpec:
    return RodSpec(name="short", finger_length_mm=Fraction(75, 4), finger_count=24)


def gudea_rule() -> RodSpec:
    """16 fingers of 16.8 mm, alternate fingers split 2..6, finger 9 also in 12 and 18."""
    return RodSpec(
        name="gudea",
        finger_length_mm=Fraction(84, 5),
        finger_count=16,
        subdivisions={1: (2,), 3: (3,), 5: (4,), 7: (5,), 9: (6, 12, 18)},
    )


BUILTIN_RODS = {
    "royal": royal_cubit,
    "short": short_cubit,
    "gudea": gudea_rule,
}


def builtin(name: str) -> RodSpec:
    try:
        return BUILTIN_RODS[name]()
    except KeyError:
        raise RodSpecError(
            f"unknown rod {name!r}; choose from {', '.join(BUILTIN_RODS)}"
        ) from None


_FIELDS = {"name", "finger_length_mm", "finger_count", "subdivisions", "ungraduated_extension"}


def load_spec(document: str | Mapping) -> RodSpec:
    """Build a RodSpec from a JSON rod document (text or already-decoded)."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise RodSpecError(f"malformed rod document: {exc}") from None
    else:
        data = document
    if not isinstance(data, Mapping):
        raise RodSpecError("rod document must be an object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise RodSpecError(f"unknown fields: {', '.join(sorted(unknown))}")
    missing = {"name", "finger_length_mm", "finger_count"} - set(data)
    if missing:
        raise RodSpecError(f"missing fields: {', '.join(sorted(missing))}")

    name = data["name"]
    if not isinstance(name, str):
        raise RodSpecError("name must be a string")
    raw_len = data["finger_length_mm"]
    if isinstance(raw_len, str):
        try:
            length = parse_quantity(raw_len)
        except QuantityError as exc:
            raise RodSpecError(str(exc)) from None
    elif isinstance(raw_len, int) and not isinstance(raw_len, bool):
        length = Fraction(raw_len)
    else:
        raise RodSpecError("finger_length_mm must be a rational string")
    count = data["finger_count"]
    if isinstance(count, bool) or not isinstance(count, int):
        raise RodSpecError("finger_count must be an integer")
    extension = data.get("ungraduated_extension", False)
    if not isinstance(extension, bool):
        raise RodSpecError("ungraduated_extension must be a boolean")

    subs = {}
    entries = data.get("subdivisions", [])
    if not isinstance(entries, list):
        raise RodSpecError("subdivisions must be a list")
    for entry in entries:
        if not isinstance(entry, Mapping) or set(entry) != {"finger", "parts"}:
            raise RodSpecError("each subdivision needs exactly 'finger' and 'parts'")
        finger, parts = entry["finger"], entry["parts"]
        if isinstance(finger, bool) or not isinstance(finger, int):
            raise RodSpecError("subdivision finger must be an integer")
        if not isinstance(parts, list) or not all(
            isinstance(q, int) and not isinstance(q, bool) for q in parts
        ):
            raise RodSpecError("subdivision parts must be a list of integers")
        if finger in subs:
            raise RodSpecError(f"finger {finger} listed twice")
        subs[finger] = tuple(parts)

    return RodSpec(name, length, count, subs, extension)


def dump_spec(rod: RodSpec) -> str:
    """Serialise ``rod`` as a rod document; ``load_spec`` inverts it."""
    subs = ",\n".join(
        "    " + json.dumps({"finger": finger, "parts": list(parts)})
        for finger, parts in rod.subdivisions.items()
    )
    lines = [
        "{",
        f'  "name": {json.dumps(rod.name)},',
        f'  "finger_length_mm": "{format_rational(rod.finger_length_mm, "fraction")}",',
        f'  "finger_count": {rod.finger_count},',
        f'  "subdivisions": [\n{subs}\n  ],' if subs else '  "subdivisions": [],',
        f'  "ungraduated_extension": {json.dumps(rod.has_ungraduated_extension)}',
        "}",
    ]
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=64)
def _marks(rod: RodSpec) -> tuple[Mark, ...]:
    out = [Mark.notch(a) for a in range(rod.finger_count + 1)]
    for finger, q in rod.scales():
        out.extend(Mark.incision(finger, q, j) for j in range(1, q))
    out.sort(key=Mark.sort_key)
    return tuple(out)


def marks(rod: RodSpec) -> list[Mark]:
    """Every notch and incision of ``rod``, ascending by position.

    Coincident incisions from different scales on one finger are all kept.
    """
    return list(_marks(rod))


@lru_cache(maxsize=64)
def _achievable(rod: RodSpec) -> tuple[Fraction, ...]:
    positions = {m.position for m in _marks(rod)}
    values = {abs(p - a) for p in positions for a in range(rod.finger_count + 1)}
    return tuple(sorted(values))


def achievable_values(rod: RodSpec) -> list[Fraction]:
    """All distances between a notch and any mark, deduplicated and sorted."""
    return list(_achievable(rod))


def mirror(rod: RodSpec) -> RodSpec:
    """The same rod with its graduation reversed end for end."""
    n = rod.finger_count
    return RodSpec(
        name=rod.name,
        finger_length_mm=rod.finger_length_mm,
        finger_count=n,
        subdivisions={n + 1 - i: parts for i, parts in rod.subdivisions.items()},
        has_ungraduated_extension=rod.has_ungraduated_extension,
    )
