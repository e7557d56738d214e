"""Finite groupoids and Haar systems with exhaustive axiom validation.

A groupoid is stored as explicit finite tables: an ordered unit list, an
ordered arrow list (kept sorted by arrow id, which fixes every matrix
indexing downstream), a composition table on composable pairs, an
inverse table, and the identity arrow of each unit.  Arrows compose like
functions: ``mul(a, b)`` is defined exactly when ``s(a) == r(b)``, with
``r(ab) == r(a)`` and ``s(ab) == s(b)``.

A Haar system assigns a strictly positive mass to every arrow, read as
the mass of the singleton ``{a}`` inside the range fiber over ``r(a)``.
Left invariance takes the discrete form ``w(b) == w(ab)`` for every
composable pair; equivalently the mass depends only on the source unit.
The source-fiber measure over a unit is represented implicitly by
``w(inverse(a))``, the image of the range-fiber measure under inversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping

from .errors import UnknownIdError

if TYPE_CHECKING:  # pragma: no cover
    from .algebra import AlgebraElement

__all__ = [
    "Arrow",
    "FiniteGroupoid",
    "HaarSystem",
    "Violation",
    "ValidationReport",
    "validate_groupoid",
    "validate_haar",
    "r_fiber",
    "s_fiber",
    "i_norm",
]


@dataclass(frozen=True)
class Arrow:
    """One arrow: ``src`` is the source unit s(a), ``dst`` the range unit r(a)."""

    id: str
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    units: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    compose: dict[tuple[str, str], str]
    inverse: dict[str, str]
    unit_arrow: dict[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "units", tuple(sorted(self.units)))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows, key=lambda a: a.id)))
        by_id: dict[str, Arrow] = {}
        for a in self.arrows:
            by_id.setdefault(a.id, a)
        index = {a.id: i for i, a in enumerate(self.arrows)}
        r_fibers: dict[str, list[str]] = {u: [] for u in self.units}
        s_fibers: dict[str, list[str]] = {u: [] for u in self.units}
        for a in self.arrows:
            if a.dst in r_fibers:
                r_fibers[a.dst].append(a.id)
            if a.src in s_fibers:
                s_fibers[a.src].append(a.id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_r_fibers", {u: tuple(v) for u, v in r_fibers.items()})
        object.__setattr__(self, "_s_fibers", {u: tuple(v) for u, v in s_fibers.items()})

    # --- table lookups -------------------------------------------------

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise UnknownIdError(f"unknown arrow id {arrow_id!r}") from None

    def r(self, arrow_id: str) -> str:
        return self.arrow(arrow_id).dst

    def s(self, arrow_id: str) -> str:
        return self.arrow(arrow_id).src

    def inv(self, arrow_id: str) -> str:
        try:
            return self.inverse[arrow_id]
        except KeyError:
            raise UnknownIdError(f"no inverse recorded for arrow {arrow_id!r}") from None

    def mul(self, a: str, b: str) -> str:
        try:
            return self.compose[(a, b)]
        except KeyError:
            raise UnknownIdError(f"no composition recorded for ({a!r}, {b!r})") from None

    def unit(self, u: str) -> str:
        """Identity arrow sitting at unit ``u``."""
        try:
            return self.unit_arrow[u]
        except KeyError:
            raise UnknownIdError(f"unknown unit id {u!r}") from None

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._by_id

    def has_unit(self, u: str) -> bool:
        return u in self._r_fibers

    def composable(self, a: str, b: str) -> bool:
        return self.s(a) == self.r(b)

    def arrow_index(self, arrow_id: str) -> int:
        try:
            return self._index[arrow_id]
        except KeyError:
            raise UnknownIdError(f"unknown arrow id {arrow_id!r}") from None

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)


@dataclass(frozen=True, eq=False)
class HaarSystem:
    """Strictly positive mass per arrow, left invariant along range fibers."""

    weights: dict[str, float]

    @classmethod
    def counting(cls, groupoid: FiniteGroupoid) -> "HaarSystem":
        return cls({a.id: 1.0 for a in groupoid.arrows})

    def weight(self, arrow_id: str) -> float:
        try:
            return self.weights[arrow_id]
        except KeyError:
            raise UnknownIdError(f"no Haar weight for arrow {arrow_id!r}") from None

    def __getitem__(self, arrow_id: str) -> float:
        return self.weight(arrow_id)


# --- validation reports ------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    offenders: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"rule": self.rule, "message": self.message, "offenders": list(self.offenders)}


@dataclass
class ValidationReport:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, message: str, *offenders: str) -> None:
        self.violations.append(Violation(rule, message, tuple(offenders)))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  [{v.rule}] {v.message}" for v in self.violations]
        return "\n".join(lines)


# --- validators --------------------------------------------------------


def validate_groupoid(groupoid: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom exhaustively; empty report iff all hold.

    Malformed table references (unknown arrow or unit ids) are reported
    with their own rules rather than raised, so a single run surfaces
    every defect in a fixture.
    """
    rep = ValidationReport(subject="groupoid")
    seen_units: set[str] = set()
    for u in groupoid.units:
        if u in seen_units:
            rep.add("unique-ids", f"duplicate unit id {u!r}", u)
        seen_units.add(u)
    seen_arrows: set[str] = set()
    for a in groupoid.arrows:
        if a.id in seen_arrows:
            rep.add("unique-ids", f"duplicate arrow id {a.id!r}", a.id)
        seen_arrows.add(a.id)

    units = set(groupoid.units)
    known = groupoid._by_id
    for a in groupoid.arrows:
        if a.src not in units:
            rep.add("unknown-unit", f"arrow {a.id!r} has unknown source unit {a.src!r}", a.id)
        if a.dst not in units:
            rep.add("unknown-unit", f"arrow {a.id!r} has unknown range unit {a.dst!r}", a.id)

    # unit arrows
    for u in groupoid.units:
        uid = groupoid.unit_arrow.get(u)
        if uid is None:
            rep.add("unit-arrow", f"unit {u!r} has no identity arrow", u)
        elif uid not in known:
            rep.add("unknown-arrow", f"identity arrow {uid!r} of unit {u!r} is unknown", uid, u)
        else:
            a = known[uid]
            if a.src != u or a.dst != u:
                rep.add("unit-arrow", f"identity arrow {uid!r} does not sit at unit {u!r}", uid, u)
    for u in groupoid.unit_arrow:
        if u not in units:
            rep.add("unit-arrow", f"identity arrow listed for unknown unit {u!r}", u)

    # inverse table
    for a in groupoid.arrows:
        ia = groupoid.inverse.get(a.id)
        if ia is None:
            rep.add("inverse-domain", f"arrow {a.id!r} has no inverse entry", a.id)
            continue
        if ia not in known:
            rep.add("unknown-arrow", f"inverse of {a.id!r} is unknown arrow {ia!r}", a.id, ia)
            continue
        if groupoid.inverse.get(ia) != a.id:
            rep.add("inverse-involution", f"inverse(inverse({a.id!r})) != {a.id!r}", a.id, ia)
        b = known[ia]
        if b.dst != a.src or b.src != a.dst:
            rep.add(
                "inverse-endpoints",
                f"inverse of {a.id!r} must swap source and range, got {ia!r}",
                a.id,
                ia,
            )
    for aid in groupoid.inverse:
        if aid not in known:
            rep.add("inverse-domain", f"inverse listed for unknown arrow {aid!r}", aid)

    # composition table: definedness both ways, endpoint consistency
    for (a, b), c in groupoid.compose.items():
        if a not in known or b not in known:
            rep.add("unknown-arrow", f"composition entry ({a!r}, {b!r}) references unknown arrows", a, b)
            continue
        if known[a].src != known[b].dst:
            rep.add(
                "compose-definedness",
                f"composition defined for non-composable pair ({a!r}, {b!r})",
                a,
                b,
            )
        if c not in known:
            rep.add("unknown-arrow", f"composition ({a!r}, {b!r}) yields unknown arrow {c!r}", a, b, c)
            continue
        if known[c].dst != known[a].dst:
            rep.add(
                "compose-range",
                f"range of ({a!r} {b!r}) is {known[c].dst!r}, expected {known[a].dst!r}",
                a,
                b,
                c,
            )
        if known[c].src != known[b].src:
            rep.add(
                "compose-source",
                f"source of ({a!r} {b!r}) is {known[c].src!r}, expected {known[b].src!r}",
                a,
                b,
                c,
            )
    for a in groupoid.arrows:
        for b in groupoid._r_fibers.get(a.src, ()):
            if (a.id, b) not in groupoid.compose:
                rep.add(
                    "compose-definedness",
                    f"composable pair ({a.id!r}, {b!r}) missing from composition table",
                    a.id,
                    b,
                )

    def mul(a: str, b: str) -> str | None:
        return groupoid.compose.get((a, b))

    # identity and inverse laws (guarded, earlier rules cover missing refs)
    for a in groupoid.arrows:
        us = groupoid.unit_arrow.get(a.src)
        ur = groupoid.unit_arrow.get(a.dst)
        if us is not None and mul(a.id, us) != a.id:
            rep.add("unit-identity", f"{a.id!r} * unit({a.src!r}) != {a.id!r}", a.id, us)
        if ur is not None and mul(ur, a.id) != a.id:
            rep.add("unit-identity", f"unit({a.dst!r}) * {a.id!r} != {a.id!r}", ur, a.id)
        ia = groupoid.inverse.get(a.id)
        if ia is None or ia not in known:
            continue
        if ur is not None and mul(a.id, ia) != ur:
            rep.add("inverse-law", f"{a.id!r} * {ia!r} != unit({a.dst!r})", a.id, ia)
        if us is not None and mul(ia, a.id) != us:
            rep.add("inverse-law", f"{ia!r} * {a.id!r} != unit({a.src!r})", ia, a.id)

    # associativity on every composable triple
    for a in groupoid.arrows:
        for b in groupoid._r_fibers.get(a.src, ()):
            ab = mul(a.id, b)
            for c in groupoid._r_fibers.get(known[b].src, ()):
                bc = mul(b, c)
                left = mul(ab, c) if ab is not None else None
                right = mul(a.id, bc) if bc is not None else None
                if left != right or left is None:
                    rep.add(
                        "associativity",
                        f"({a.id!r} {b!r}) {c!r} != {a.id!r} ({b!r} {c!r})",
                        a.id,
                        b,
                        c,
                    )
    return rep


def validate_haar(groupoid: FiniteGroupoid, haar: HaarSystem) -> ValidationReport:
    """Check full support and exact left invariance of a Haar system."""
    rep = ValidationReport(subject="haar")
    for a in groupoid.arrows:
        w = haar.weights.get(a.id)
        if w is None:
            rep.add("haar-domain", f"arrow {a.id!r} has no Haar weight", a.id)
        elif not (w > 0.0):
            rep.add("haar-support", f"arrow {a.id!r} has non-positive weight {w!r}", a.id)
    for aid in haar.weights:
        if not groupoid.has_arrow(aid):
            rep.add("haar-domain", f"Haar weight listed for unknown arrow {aid!r}", aid)
    if not rep.ok:
        return rep
    # left invariance, exact: w(eta) == w(gamma * eta) on every composable pair
    for gamma in groupoid.arrows:
        for eta in groupoid._r_fibers.get(gamma.src, ()):
            prod = groupoid.compose.get((gamma.id, eta))
            if prod is None or not groupoid.has_arrow(prod):
                continue  # structural defect, validate_groupoid reports it
            if haar.weights[eta] != haar.weights[prod]:
                rep.add(
                    "haar-invariance",
                    f"w({eta!r}) = {haar.weights[eta]!r} but w({gamma.id!r} {eta!r}) = "
                    f"{haar.weights[prod]!r}",
                    gamma.id,
                    eta,
                    prod,
                )
    return rep


# --- fibers and the I-norm ----------------------------------------------


def r_fiber(groupoid: FiniteGroupoid, u: str) -> list[str]:
    """Arrows with range ``u``, in canonical order."""
    try:
        return list(groupoid._r_fibers[u])
    except KeyError:
        raise UnknownIdError(f"unknown unit id {u!r}") from None


def s_fiber(groupoid: FiniteGroupoid, u: str) -> list[str]:
    """Arrows with source ``u``, in canonical order."""
    try:
        return list(groupoid._s_fibers[u])
    except KeyError:
        raise UnknownIdError(f"unknown unit id {u!r}") from None


def i_norm(f: "AlgebraElement | Mapping[str, complex]", groupoid: FiniteGroupoid, haar: HaarSystem) -> float:
    """Hahn I-norm of a function on the arrows.

    Defined as the larger of the two fiberwise sup-of-sums::

        max( max_u sum_{r(a)=u} |f(a)| w(a),
             max_u sum_{s(a)=u} |f(a)| w(inverse(a)) )

    This is the standard convention; treat it as imported rather than
    forced by anything else in this package (other normalizations occur
    in the literature).
    """
    values: Mapping[str, complex] = getattr(f, "values", f)  # type: ignore[assignment]
    for aid in values:
        if not groupoid.has_arrow(aid):
            raise UnknownIdError(f"function value on unknown arrow {aid!r}")
    best_r = 0.0
    best_s = 0.0
    for u in groupoid.units:
        sr = sum(abs(values.get(a, 0.0)) * haar.weight(a) for a in groupoid._r_fibers[u])
        ss = sum(
            abs(values.get(a, 0.0)) * haar.weight(groupoid.inv(a))
            for a in groupoid._s_fibers[u]
        )
        best_r = max(best_r, sr)
        best_s = max(best_s, ss)
    return max(best_r, best_s)
