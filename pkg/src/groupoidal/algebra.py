"""Convolution algebras and the bimodule structure on an equivalence.

Functions are finitely supported complex maps on the arrows of a
groupoid or the points of a bispace, tagged with a carrier label
(``G``, ``H``, ``Z``, ``Zop`` or ``L``).  All products are discrete
sums against the relevant Haar masses:

* ``(f * g)(c) = sum_{a: r(a) = r(c)} f(a) g(inverse(a) c) w(a)``
* ``f^*(a) = conj(f(inverse(a)))``
* ``(f . phi)(z) = sum_{gamma: r(gamma) = r(z)} f(gamma) phi(inverse(gamma) z) w(gamma)``
* ``(phi . b)(z) = sum_{eta: r(eta) = s(z)} phi(z eta) b(inverse(eta)) w(eta)``
* ``rip(phi, psi)(eta) = sum_gamma conj(phi(inverse(gamma) z)) psi(inverse(gamma) z eta) w(gamma)``
  for any ``z`` over ``r(eta)``,
* ``lip(phi, psi)(gamma) = sum_eta phi(gamma w eta) conj(psi(w eta)) w(eta)``
  for any ``w`` over ``s(gamma)``.

The two inner products are recomputed from every admissible base point
and must agree; a mismatch aborts because it signals a broken Haar
system, not a rounding problem.  The mirrored module operations (acting
on the opposite carrier) are these same four maps applied to
``opposite_space(Z)``; ``op_star`` transports functions between the two
carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CarrierMismatchError, StructureBrokenError, UnknownIdError
from .equivalence import Bispace, base_point, opposite_point
from .groupoid import FiniteGroupoid, HaarSystem
from .linking import LinkingGroupoid, block_compose, block_decompose, build_linking_haar

__all__ = [
    "AlgebraElement",
    "convolve",
    "involution",
    "left_action",
    "right_action",
    "rip",
    "lip",
    "op_star",
    "blockwise_residual",
    "convolve_linking_blockwise",
]


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A finitely supported complex function on one carrier (absent key = 0)."""

    carrier: str
    values: dict[str, complex] = field(default_factory=dict)

    @classmethod
    def zero(cls, carrier: str) -> "AlgebraElement":
        return cls(carrier, {})

    @classmethod
    def delta(cls, carrier: str, key: str, value: complex = 1.0) -> "AlgebraElement":
        return cls(carrier, {key: complex(value)})

    def get(self, key: str) -> complex:
        return self.values.get(key, 0.0 + 0.0j)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.carrier != other.carrier:
            raise CarrierMismatchError(f"cannot add carriers {self.carrier!r} and {other.carrier!r}")
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, 0.0) + v
        return AlgebraElement(self.carrier, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "AlgebraElement":
        return AlgebraElement(self.carrier, {k: scalar * v for k, v in self.values.items()})

    def __neg__(self) -> "AlgebraElement":
        return (-1.0) * self

    def norm_inf(self) -> float:
        return max((abs(v) for v in self.values.values()), default=0.0)

    def distance(self, other: "AlgebraElement") -> float:
        keys = set(self.values) | set(other.values)
        return max((abs(self.get(k) - other.get(k)) for k in keys), default=0.0)

    def allclose(self, other: "AlgebraElement", tol: float = 1e-12) -> bool:
        return self.carrier == other.carrier and self.distance(other) <= tol


def _expect(element: AlgebraElement, carrier: str, role: str) -> None:
    if element.carrier != carrier:
        raise CarrierMismatchError(
            f"{role} must live on carrier {carrier!r}, got {element.carrier!r}"
        )


# --- the convolution algebra ----------------------------------------------


def convolve(
    f: AlgebraElement, g: AlgebraElement, groupoid: FiniteGroupoid, haar: HaarSystem
) -> AlgebraElement:
    if f.carrier != g.carrier:
        raise CarrierMismatchError(
            f"cannot convolve carriers {f.carrier!r} and {g.carrier!r}"
        )
    out: dict[str, complex] = {}
    for a, fa in f.values.items():
        if fa == 0:
            continue
        wa = haar.weight(a)
        for b in groupoid._r_fibers[groupoid.s(a)]:
            gb = g.values.get(b)
            if not gb:
                continue
            c = groupoid.mul(a, b)
            out[c] = out.get(c, 0.0) + fa * gb * wa
    return AlgebraElement(f.carrier, out)


def involution(f: AlgebraElement, groupoid: FiniteGroupoid) -> AlgebraElement:
    return AlgebraElement(
        f.carrier, {groupoid.inv(a): v.conjugate() for a, v in f.values.items()}
    )


# --- bimodule actions -------------------------------------------------------


def left_action(
    f: AlgebraElement, phi: AlgebraElement, Z: Bispace, left_haar: HaarSystem
) -> AlgebraElement:
    _expect(f, Z.labels[0], "left factor")
    _expect(phi, Z.labels[2], "module element")
    G = Z.left_groupoid
    out: dict[str, complex] = {}
    for z in Z.points:
        acc = 0.0 + 0.0j
        for gamma in G._r_fibers[Z.r_of(z)]:
            y = Z.left_act(G.inv(gamma), z)
            v = phi.values.get(y)
            if v:
                fv = f.values.get(gamma)
                if fv:
                    acc += fv * v * left_haar.weight(gamma)
        if acc != 0:
            out[z] = acc
    return AlgebraElement(phi.carrier, out)


def right_action(
    phi: AlgebraElement, b: AlgebraElement, Z: Bispace, right_haar: HaarSystem
) -> AlgebraElement:
    _expect(phi, Z.labels[2], "module element")
    _expect(b, Z.labels[1], "right factor")
    H = Z.right_groupoid
    out: dict[str, complex] = {}
    for z in Z.points:
        acc = 0.0 + 0.0j
        for eta in H._r_fibers[Z.s_of(z)]:
            v = phi.values.get(Z.right_act(z, eta))
            if v:
                bv = b.values.get(H.inv(eta))
                if bv:
                    acc += v * bv * right_haar.weight(eta)
        if acc != 0:
            out[z] = acc
    return AlgebraElement(phi.carrier, out)


# --- inner products ----------------------------------------------------------


def _assert_base_point_free(values: list[complex], context: str) -> complex:
    ref = values[0]
    for v in values[1:]:
        if abs(v - ref) > 1e-12 * max(1.0, abs(ref)):
            raise StructureBrokenError(
                f"inner product at {context} depends on the base point "
                f"({ref!r} vs {v!r}); Haar invariance is broken"
            )
    return ref


def rip(
    phi: AlgebraElement, psi: AlgebraElement, Z: Bispace, left_haar: HaarSystem
) -> AlgebraElement:
    """Right inner product, valued in functions on the right groupoid."""
    _expect(phi, Z.labels[2], "first factor")
    _expect(psi, Z.labels[2], "second factor")
    G, H = Z.left_groupoid, Z.right_groupoid
    out: dict[str, complex] = {}
    for eta in H.arrow_ids:
        base_points = Z.s_fiber_points(H.r(eta))
        if not base_points:
            raise UnknownIdError(f"no point lies over right unit {H.r(eta)!r}")
        samples = []
        for z in base_points:
            acc = 0.0 + 0.0j
            for gamma in G._r_fibers[Z.r_of(z)]:
                y = Z.left_act(G.inv(gamma), z)
                a = phi.values.get(y)
                if not a:
                    continue
                b = psi.values.get(Z.right_act(y, eta))
                if b:
                    acc += a.conjugate() * b * left_haar.weight(gamma)
            samples.append(acc)
        value = _assert_base_point_free(samples, f"right arrow {eta!r}")
        if value != 0:
            out[eta] = value
    return AlgebraElement(Z.labels[1], out)


def lip(
    phi: AlgebraElement, psi: AlgebraElement, Z: Bispace, right_haar: HaarSystem
) -> AlgebraElement:
    """Left inner product, valued in functions on the left groupoid."""
    _expect(phi, Z.labels[2], "first factor")
    _expect(psi, Z.labels[2], "second factor")
    G, H = Z.left_groupoid, Z.right_groupoid
    out: dict[str, complex] = {}
    for gamma in G.arrow_ids:
        base_points = Z.r_fiber_points(G.s(gamma))
        if not base_points:
            raise UnknownIdError(f"no point lies over left unit {G.s(gamma)!r}")
        samples = []
        for w in base_points:
            acc = 0.0 + 0.0j
            for eta in H._r_fibers[Z.s_of(w)]:
                we = Z.right_act(w, eta)
                b = psi.values.get(we)
                a = phi.values.get(Z.left_act(gamma, we))
                if a and b:
                    acc += a * b.conjugate() * right_haar.weight(eta)
            samples.append(acc)
        value = _assert_base_point_free(samples, f"left arrow {gamma!r}")
        if value != 0:
            out[gamma] = value
    return AlgebraElement(Z.labels[0], out)


# --- the mirrored module ------------------------------------------------------


def op_star(psi: AlgebraElement) -> AlgebraElement:
    """Conjugate transport between a carrier and its mirror: ``psi*(z) = conj(psi(~z))``."""
    if psi.carrier == "Zop":
        return AlgebraElement(
            "Z", {base_point(k): v.conjugate() for k, v in psi.values.items()}
        )
    if psi.carrier == "Z":
        return AlgebraElement(
            "Zop", {opposite_point(k): v.conjugate() for k, v in psi.values.items()}
        )
    raise CarrierMismatchError(f"op_star expects carrier 'Z' or 'Zop', got {psi.carrier!r}")


# --- block convolution on the linking groupoid --------------------------------


def _blockwise(F, K, link: LinkingGroupoid, w_left: HaarSystem, w_right: HaarSystem):
    Z, zop = link.bispace, link.opposite
    G, H = Z.left_groupoid, Z.right_groupoid
    f11, f12, f21, f22 = block_decompose(F, link)
    k11, k12, k21, k22 = block_decompose(K, link)
    c11 = convolve(f11, k11, G, w_left) + rip(op_star(f12), k21, zop, w_right)
    c12 = left_action(f11, k12, Z, w_left) + right_action(f12, k22, Z, w_right)
    c21 = right_action(f21, k11, zop, w_left) + left_action(f22, k21, zop, w_right)
    c22 = rip(op_star(f21), k12, Z, w_left) + convolve(f22, k22, H, w_right)
    return block_compose(link, c11, c12, c21, c22)


def blockwise_residual(
    F: AlgebraElement,
    K: AlgebraElement,
    link: LinkingGroupoid,
    w_left: HaarSystem,
    w_right: HaarSystem,
    linking_haar: HaarSystem | None = None,
) -> tuple[AlgebraElement, float, str | None]:
    """Blockwise product, the worst per-arrow gap to the direct product, and where."""
    blockwise = _blockwise(F, K, link, w_left, w_right)
    haar = linking_haar if linking_haar is not None else build_linking_haar(link, w_left, w_right)
    direct = convolve(F, K, link.groupoid, haar)
    worst = None
    residual = 0.0
    for lid in set(blockwise.values) | set(direct.values):
        gap = abs(blockwise.get(lid) - direct.get(lid))
        if gap > residual:
            residual, worst = gap, lid
    return blockwise, residual, worst


def convolve_linking_blockwise(
    F: AlgebraElement,
    K: AlgebraElement,
    link: LinkingGroupoid,
    w_left: HaarSystem,
    w_right: HaarSystem,
    linking_haar: HaarSystem | None = None,
    tol: float = 1e-12,
) -> AlgebraElement:
    """Convolve on the linking groupoid through the four sector blocks.

    The same product is also computed directly against the assembled
    Haar system; the two must agree within ``tol`` on every arrow,
    otherwise the deepest self-check of this module fails and the call
    aborts naming the worst offender.
    """
    blockwise, residual, worst = blockwise_residual(F, K, link, w_left, w_right, linking_haar)
    if residual > tol:
        raise StructureBrokenError(
            f"blockwise and direct products disagree by {residual:.3e} at arrow {worst!r}"
        )
    return blockwise
