"""Canonical fixtures and parameterized fixture families.

Ids follow fixed schemes so generated fixtures are reproducible:

* pair groupoid on n points: units ``1..n``, arrows ``(i,j)`` from j to i,
* cyclic group of order n: unit ``e``, arrows ``g0..g{n-1}``,
* trivial group: unit ``*``, arrow ``id_*``,
* transitive groupoid: pair groupoid with cyclic isotropy, arrows ``(i,j,g)``,
* trivializing bispace of the pair groupoid: points ``z1..zn`` over a
  trivial right group,
* self equivalence of a group: the group acting on its own arrow set on
  both sides,
* transitive equivalence: points ``z(i,g)`` linking the transitive
  groupoid with its isotropy group.
"""

from __future__ import annotations

from .equivalence import Bispace, GSpace
from .groupoid import Arrow, FiniteGroupoid, HaarSystem

__all__ = [
    "pair_groupoid",
    "cyclic_group",
    "trivial_group",
    "transitive_groupoid",
    "source_weighted_haar",
    "pair_trivialization",
    "group_self_equivalence",
    "cyclic_self_equivalence",
    "transitive_equivalence",
    "left_translation_space",
    "disjoint_union",
]


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows (i,j) compose like matrix units: (i,j)(j,k) = (i,k)."""
    if n < 1:
        raise ValueError(f"pair groupoid needs at least one point, got {n}")
    units = [str(i) for i in range(1, n + 1)]
    arrows = [
        Arrow(f"({i},{j})", src=str(j), dst=str(i))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    ]
    compose = {
        (f"({i},{j})", f"({j},{k})"): f"({i},{k})"
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for k in range(1, n + 1)
    }
    inverse = {f"({i},{j})": f"({j},{i})" for i in range(1, n + 1) for j in range(1, n + 1)}
    unit_arrow = {str(i): f"({i},{i})" for i in range(1, n + 1)}
    return FiniteGroupoid(tuple(units), tuple(arrows), compose, inverse, unit_arrow)


def cyclic_group(n: int) -> FiniteGroupoid:
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    arrows = [Arrow(f"g{k}", src="e", dst="e") for k in range(n)]
    compose = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    inverse = {f"g{k}": f"g{(-k) % n}" for k in range(n)}
    return FiniteGroupoid(("e",), tuple(arrows), compose, inverse, {"e": "g0"})


def trivial_group() -> FiniteGroupoid:
    return FiniteGroupoid(
        ("*",),
        (Arrow("id_*", src="*", dst="*"),),
        {("id_*", "id_*"): "id_*"},
        {"id_*": "id_*"},
        {"*": "id_*"},
    )


def transitive_groupoid(n: int, m: int) -> FiniteGroupoid:
    """Pair groupoid on n points with cyclic isotropy of order m."""
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got ({n}, {m})")
    units = [str(i) for i in range(1, n + 1)]
    arrows = [
        Arrow(f"({i},{j},{g})", src=str(j), dst=str(i))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for g in range(m)
    ]
    compose = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for g in range(m):
                    for h in range(m):
                        compose[(f"({i},{j},{g})", f"({j},{k},{h})")] = (
                            f"({i},{k},{(g + h) % m})"
                        )
    inverse = {
        f"({i},{j},{g})": f"({j},{i},{(-g) % m})"
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for g in range(m)
    }
    unit_arrow = {str(i): f"({i},{i},0)" for i in range(1, n + 1)}
    return FiniteGroupoid(tuple(units), tuple(arrows), compose, inverse, unit_arrow)


def source_weighted_haar(groupoid: FiniteGroupoid, unit_weights: dict[str, float]) -> HaarSystem:
    """Left-invariant weights from a positive mass per unit: w(a) = mass(s(a))."""
    for u in groupoid.units:
        if u not in unit_weights:
            raise ValueError(f"missing weight for unit {u!r}")
        if not (unit_weights[u] > 0):
            raise ValueError(f"weight for unit {u!r} must be positive")
    return HaarSystem({a.id: float(unit_weights[a.src]) for a in groupoid.arrows})


def pair_trivialization(n: int) -> Bispace:
    """The pair groupoid trivialized against the trivial group.

    Points ``z1..zn`` with left anchor i, right anchor ``*``; the left
    action is ``(i,j) * zj = zi`` and the right action fixes everything.
    """
    G = pair_groupoid(n)
    H = trivial_group()
    points = [f"z{i}" for i in range(1, n + 1)]
    r_map = {f"z{i}": str(i) for i in range(1, n + 1)}
    s_map = {z: "*" for z in points}
    left_action = {
        (f"({i},{j})", f"z{j}"): f"z{i}"
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    right_action = {(z, "id_*"): z for z in points}
    return Bispace(G, H, tuple(points), r_map, s_map, left_action, right_action)


def group_self_equivalence(group: FiniteGroupoid) -> Bispace:
    """A group acting on its own arrow set by multiplication on both sides."""
    if len(group.units) != 1:
        raise ValueError("self equivalence by translation needs a group (one unit)")
    unit = group.units[0]
    points = group.arrow_ids
    anchor = {z: unit for z in points}
    left_action = {(g, z): group.mul(g, z) for g in points for z in points}
    right_action = {(z, g): group.mul(z, g) for z in points for g in points}
    return Bispace(group, group, points, dict(anchor), dict(anchor), left_action, right_action)


def cyclic_self_equivalence(n: int) -> Bispace:
    return group_self_equivalence(cyclic_group(n))


def transitive_equivalence(n: int, m: int) -> Bispace:
    """Equivalence between the transitive groupoid and its isotropy group.

    Points ``z(i,g)``; the groupoid acts by ``(i,j,g) * z(j,h) = z(i,g+h)``
    and the cyclic group translates the second coordinate.
    """
    G = transitive_groupoid(n, m)
    H = cyclic_group(m)
    points = [f"z({i},{g})" for i in range(1, n + 1) for g in range(m)]
    r_map = {f"z({i},{g})": str(i) for i in range(1, n + 1) for g in range(m)}
    s_map = {z: "e" for z in points}
    left_action = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for g in range(m):
                for h in range(m):
                    left_action[(f"({i},{j},{g})", f"z({j},{h})")] = f"z({i},{(g + h) % m})"
    right_action = {}
    for i in range(1, n + 1):
        for g in range(m):
            for h in range(m):
                right_action[(f"z({i},{g})", f"g{h}")] = f"z({i},{(g + h) % m})"
    return Bispace(G, H, tuple(points), r_map, s_map, left_action, right_action)


def left_translation_space(groupoid: FiniteGroupoid) -> GSpace:
    """The groupoid acting on its own arrow set by left multiplication.

    Free, with one orbit per unit (the source fibers); the orbit
    representation on it reproduces the atomic direct sums.
    """
    points = groupoid.arrow_ids
    anchor = {a: groupoid.r(a) for a in points}
    action = {}
    for g in points:
        for a in groupoid._r_fibers[groupoid.s(g)]:
            action[(g, a)] = groupoid.mul(g, a)
    return GSpace(groupoid, points, anchor, action)


def disjoint_union(
    a: FiniteGroupoid, b: FiniteGroupoid, tags: tuple[str, str] = ("A", "B")
) -> FiniteGroupoid:
    """Side-by-side union with namespaced ids; nothing composes across."""
    ta, tb = tags
    units = [f"{ta}:{u}" for u in a.units] + [f"{tb}:{u}" for u in b.units]
    arrows = [Arrow(f"{ta}:{x.id}", f"{ta}:{x.src}", f"{ta}:{x.dst}") for x in a.arrows]
    arrows += [Arrow(f"{tb}:{x.id}", f"{tb}:{x.src}", f"{tb}:{x.dst}") for x in b.arrows]
    compose = {
        (f"{ta}:{x}", f"{ta}:{y}"): f"{ta}:{z}" for (x, y), z in a.compose.items()
    }
    compose.update(
        {(f"{tb}:{x}", f"{tb}:{y}"): f"{tb}:{z}" for (x, y), z in b.compose.items()}
    )
    inverse = {f"{ta}:{x}": f"{ta}:{y}" for x, y in a.inverse.items()}
    inverse.update({f"{tb}:{x}": f"{tb}:{y}" for x, y in b.inverse.items()})
    unit_arrow = {f"{ta}:{u}": f"{ta}:{x}" for u, x in a.unit_arrow.items()}
    unit_arrow.update({f"{tb}:{u}": f"{tb}:{x}" for u, x in b.unit_arrow.items()})
    return FiniteGroupoid(tuple(units), tuple(arrows), compose, inverse, unit_arrow)
