"""Geometry of the unit disc: invariant distances and Möbius automorphisms."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoAutomorphism

#: points with modulus at or above ``1 - DISC_MARGIN`` are rejected
DISC_MARGIN = 1e-15
FIT_TOL = 1e-10


class DiscPoint(complex):
    """A complex number strictly inside the unit disc."""

    def __new__(cls, value):
        value = complex(value)
        if not abs(value) < 1 - DISC_MARGIN:
            raise ValueError(f"{value!r} is not strictly inside the unit disc")
        return super().__new__(cls, value.real, value.imag)

    def __repr__(self):
        return f"DiscPoint({complex(self)!r})"


def pseudo_distance(w, z):
    """Möbius (pseudo-hyperbolic) distance ``|w - z| / |1 - conj(w) z|``.

    Vectorized over numpy arrays.
    """
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = np.abs(w - z) / np.abs(1 - np.conj(w) * z)
    return out if out.ndim else float(out)


def poincare_distance(w, z):
    return np.arctanh(pseudo_distance(w, z))


@dataclass(frozen=True)
class MobiusMap:
    """Disc automorphism ``lam -> rotation * (lam - center) / (1 - conj(center) * lam)``."""

    rotation: complex = 1.0
    center: complex = 0.0

    def __post_init__(self):
        rot = complex(self.rotation)
        if abs(abs(rot) - 1) > 1e-14:
            raise ValueError(f"rotation {rot!r} is not unimodular")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "center", complex(DiscPoint(self.center)))

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=complex)
        c = self.center
        out = self.rotation * (lam - c) / (1 - np.conj(c) * lam)
        return out if out.ndim else complex(out)

    def inverse(self) -> "MobiusMap":
        # solving mu = r (lam - c)/(1 - c* lam) for lam gives center -r c, rotation conj(r)
        return MobiusMap(np.conj(self.rotation), -self.rotation * self.center)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """``self o other`` as a single automorphism."""
        mat = self.matrix() @ other.matrix()
        return MobiusMap.from_matrix(mat)

    def matrix(self) -> np.ndarray:
        c = self.center
        return np.array([[self.rotation, -self.rotation * c], [-np.conj(c), 1.0]], dtype=complex)

    @classmethod
    def from_matrix(cls, mat, tol: float = FIT_TOL) -> "MobiusMap":
        """Recover an automorphism from a 2x2 matrix, up to scale.

        Raises ``NoAutomorphism`` unless the matrix is proportional to
        ``[[a, b], [conj(b), conj(a)]]`` with ``|a| > |b|``.
        """
        mat = np.asarray(mat, dtype=complex)
        det = np.linalg.det(mat)
        if abs(det) == 0:
            raise NoAutomorphism("singular transformation")
        mat = mat / np.sqrt(det)
        (a, b), (c, d) = mat
        # after det-normalization a disc automorphism is +-[[a, b], [conj b, conj a]]
        for sign in (1, -1):
            a_, b_, c_, d_ = sign * a, sign * b, sign * c, sign * d
            if abs(d_ - np.conj(a_)) < tol * max(1, abs(a_)) and abs(c_ - np.conj(b_)) < tol * max(1, abs(a_)):
                break
        else:
            raise NoAutomorphism("transformation does not preserve the unit circle")
        if not abs(b_) < abs(a_):
            raise NoAutomorphism("transformation swaps the disc and its exterior")
        return cls(a_ / np.conj(a_), -b_ / a_)

    def describe(self) -> dict:
        return {"rotation": [self.rotation.real, self.rotation.imag],
                "center": [self.center.real, self.center.imag]}


IDENTITY = MobiusMap()


def mobius_apply(a: MobiusMap, lam):
    return a(lam)


def mobius_inverse(a: MobiusMap) -> MobiusMap:
    return a.inverse()


def to_origin(c) -> MobiusMap:
    """The involution-free automorphism sending ``c`` to 0 with positive derivative."""
    return MobiusMap(1.0, c)


def _three_point_matrix(xs, ys):
    """Matrix of the Möbius map sending xs[i] -> ys[i] (cross-ratio construction)."""
    (p1, p2, p3), (q1, q2, q3) = xs, ys

    def det3(rows):
        return np.linalg.det(np.array(rows, dtype=complex))

    a = det3([[p1 * q1, q1, 1], [p2 * q2, q2, 1], [p3 * q3, q3, 1]])
    b = det3([[p1 * q1, p1, q1], [p2 * q2, p2, q2], [p3 * q3, p3, q3]])
    c = det3([[p1, q1, 1], [p2, q2, 1], [p3, q3, 1]])
    d = det3([[p1 * q1, p1, 1], [p2 * q2, p2, 1], [p3 * q3, p3, 1]])
    return np.array([[a, b], [c, d]])


def mobius_fit(pairs, tol: float = FIT_TOL) -> MobiusMap:
    """Fit the disc automorphism mapping three inputs to three outputs.

    Points may lie on the closed disc.  When some pair is interior the map is
    pinned by that pair, its rotation is read off a second pair, and the
    third pair is used only for verification.  With all three pairs on the
    circle a general three-point Möbius fit is tested for unitarity instead.

    Raises
    ------
    NoAutomorphism
        If no automorphism sends every input within ``tol`` of its output.
    """
    pairs = [(complex(x), complex(y)) for x, y in pairs]
    if len(pairs) != 3:
        raise ValueError("exactly three pairs are required")
    xs = [x for x, _ in pairs]
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(xs[i] - xs[j]) < 1e-14:
                raise ValueError("inputs must be pairwise distinct")
    for x, y in pairs:
        if abs(x) > 1 + 1e-12 or abs(y) > 1 + 1e-12:
            raise NoAutomorphism("points must lie in the closed unit disc")

    interior = [k for k, (x, y) in enumerate(pairs) if abs(x) < 1 - 1e-12 and abs(y) < 1 - 1e-12]
    if interior:
        k = interior[0]
        rest = [pairs[i] for i in range(3) if i != k]
        (x1, y1), (x2, y2), (x3, y3) = pairs[k], rest[0], rest[1]
        phi_x, phi_y = to_origin(x1), to_origin(y1)
        u, w = phi_x(x2), phi_y(y2)
        if abs(abs(u) - abs(w)) > tol:
            raise NoAutomorphism(
                f"pseudo-distance not preserved: {abs(u):.3e} vs {abs(w):.3e}")
        rot = w / u
        rot /= abs(rot)
        fitted = phi_y.inverse().compose(MobiusMap(rot, 0.0)).compose(phi_x)
    else:
        fitted = MobiusMap.from_matrix(_three_point_matrix(xs, [y for _, y in pairs]), tol=1e-8)

    dev = max(abs(fitted(x) - y) for x, y in pairs)
    if dev > tol:
        raise NoAutomorphism(f"fitted map misses a pair by {dev:.3e}")
    return fitted
