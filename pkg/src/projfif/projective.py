"""Points of the projective plane with one line removed, and their arithmetic.

Homogeneous triples (x : y : z) with z != 0 describe the chart of the real
projective plane that stays away from the removed line {z = 0}.  Rescaling
a triple by any nonzero factor gives the same point, and dividing out z
yields the canonical representative (x/z : y/z : 1).  On this chart the
affine-plane vector operations have exact homogeneous counterparts, which
is what this module provides:

* addition        (x:y:z) + (x':y':z') = (xz' + x'z : yz' + y'z : zz')
* scalar action   a * (x:y:z) = (ax : ay : z)
* subtraction     (x:y:z) - (x':y':z') = (xz' - x'z : yz' - y'z : zz')
* slot product    (x:y:z) .hadamard (x':y':z') = (xx' : yy' : zz')

together with the norm sqrt(x^2 + y^2)/|z|, the flat distance between
canonical coordinate pairs, a weighted anisotropic variant, and the round
metric the plane inherits from the unit sphere.

Every arithmetic result is returned in canonical form (z == 1).  Raw,
non-canonical triples are accepted on input so that representative
invariance can be exercised and exported verbatim.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .errors import HyperplaneError, ValidationError

#: Representatives whose last coordinate is smaller than this in absolute
#: value are rejected as numerically indistinguishable from the removed line.
Z_FLOOR = 1e-12

#: Default absolute tolerance for comparisons of canonical coordinates.
COORD_TOL = 1e-12


class ProjPoint:
    """A point (x : y : z) with z != 0, stored as a raw homogeneous triple.

    Instances are cheap value objects and must be treated as immutable.
    The constructor keeps the representative exactly as given; use
    :meth:`canonical` for the z == 1 form.  All binary operations return
    canonical results.
    """

    __slots__ = ("x", "y", "z")

    def __init__(self, x: float, y: float, z: float):
        z = float(z)
        # The double comparison also traps NaN.
        if not (z <= -Z_FLOOR or z >= Z_FLOOR):
            raise HyperplaneError(
                f"last coordinate {z!r} is within {Z_FLOOR} of the removed line"
            )
        self.x = float(x)
        self.y = float(y)
        self.z = z

    def __repr__(self) -> str:
        return f"ProjPoint({self.x!r}, {self.y!r}, {self.z!r})"

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y
        yield self.z

    @property
    def u(self) -> float:
        """First canonical coordinate x/z."""
        return self.x / self.z

    @property
    def v(self) -> float:
        """Second canonical coordinate y/z."""
        return self.y / self.z

    def canonical(self) -> "ProjPoint":
        """The representative of this point with last coordinate 1."""
        z = self.z
        return ProjPoint(self.x / z, self.y / z, 1.0)

    def __add__(self, other: "ProjPoint") -> "ProjPoint":
        if not isinstance(other, ProjPoint):
            return NotImplemented
        zz = self.z * other.z
        return ProjPoint(
            (self.x * other.z + other.x * self.z) / zz,
            (self.y * other.z + other.y * self.z) / zz,
            1.0,
        )

    def __neg__(self) -> "ProjPoint":
        return ProjPoint(-self.x / self.z, -self.y / self.z, 1.0)

    def __sub__(self, other: "ProjPoint") -> "ProjPoint":
        if not isinstance(other, ProjPoint):
            return NotImplemented
        zz = self.z * other.z
        return ProjPoint(
            (self.x * other.z - other.x * self.z) / zz,
            (self.y * other.z - other.y * self.z) / zz,
            1.0,
        )

    def __mul__(self, other):
        if isinstance(other, ProjPoint):
            return self.hadamard(other)
        if isinstance(other, (int, float)):
            return self._scaled(float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self._scaled(float(other))
        return NotImplemented

    def _scaled(self, a: float) -> "ProjPoint":
        # a * (x:y:z) = (ax : ay : z), canonicalized
        return ProjPoint(a * self.x / self.z, a * self.y / self.z, 1.0)

    def hadamard(self, other: "ProjPoint") -> "ProjPoint":
        """Slot-wise product (xx' : yy' : zz'), canonicalized."""
        zz = self.z * other.z
        return ProjPoint(self.x * other.x / zz, self.y * other.y / zz, 1.0)

    def norm(self) -> float:
        """sqrt(x^2 + y^2) / |z|, the distance to the zero point."""
        return math.hypot(self.x, self.y) / abs(self.z)

    def split(self) -> "tuple[AbscissaPoint, OrdinatePoint]":
        """Decompose into the horizontal part (u:0:1) and vertical part (0:v:1).

        The two parts add back to the point exactly: lifting both and
        summing reproduces the canonical representative.
        """
        return AbscissaPoint(self.x / self.z, 1.0), OrdinatePoint(self.y / self.z, 1.0)


#: The additive identity (0 : 0 : 1).
ZERO = ProjPoint(0.0, 0.0, 1.0)


class AbscissaPoint:
    """A point (x : 0 : z) on the horizontal coordinate line.

    Ordered by the representative-independent relation x1*z2 <= x2*z1
    after normalizing both last coordinates to be positive.
    """

    __slots__ = ("x", "z")

    def __init__(self, x: float, z: float):
        z = float(z)
        if not (z <= -Z_FLOOR or z >= Z_FLOOR):
            raise HyperplaneError(
                f"last coordinate {z!r} is within {Z_FLOOR} of the removed line"
            )
        self.x = float(x)
        self.z = z

    def __repr__(self) -> str:
        return f"AbscissaPoint({self.x!r}, {self.z!r})"

    @property
    def value(self) -> float:
        """Canonical coordinate x/z."""
        return self.x / self.z

    def canonical(self) -> "AbscissaPoint":
        return AbscissaPoint(self.x / self.z, 1.0)

    def lift(self) -> ProjPoint:
        """Embed as the full point (x : 0 : z)."""
        return ProjPoint(self.x, 0.0, self.z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbscissaPoint):
            return NotImplemented
        return compare_abscissa(self, other) == 0

    def __hash__(self) -> int:
        return hash(self.x / self.z)

    def __lt__(self, other: "AbscissaPoint") -> bool:
        return compare_abscissa(self, other) < 0

    def __le__(self, other: "AbscissaPoint") -> bool:
        return compare_abscissa(self, other) <= 0

    def __gt__(self, other: "AbscissaPoint") -> bool:
        return compare_abscissa(self, other) > 0

    def __ge__(self, other: "AbscissaPoint") -> bool:
        return compare_abscissa(self, other) >= 0


class OrdinatePoint:
    """A point (0 : y : z) on the vertical coordinate line."""

    __slots__ = ("y", "z")

    def __init__(self, y: float, z: float):
        z = float(z)
        if not (z <= -Z_FLOOR or z >= Z_FLOOR):
            raise HyperplaneError(
                f"last coordinate {z!r} is within {Z_FLOOR} of the removed line"
            )
        self.y = float(y)
        self.z = z

    def __repr__(self) -> str:
        return f"OrdinatePoint({self.y!r}, {self.z!r})"

    @property
    def value(self) -> float:
        """Canonical coordinate y/z."""
        return self.y / self.z

    def canonical(self) -> "OrdinatePoint":
        return OrdinatePoint(self.y / self.z, 1.0)

    def lift(self) -> ProjPoint:
        """Embed as the full point (0 : y : z)."""
        return ProjPoint(0.0, self.y, self.z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrdinatePoint):
            return NotImplemented
        return compare_ordinate(self, other) == 0

    def __hash__(self) -> int:
        return hash(self.y / self.z)

    def __lt__(self, other: "OrdinatePoint") -> bool:
        return compare_ordinate(self, other) < 0

    def __le__(self, other: "OrdinatePoint") -> bool:
        return compare_ordinate(self, other) <= 0

    def __gt__(self, other: "OrdinatePoint") -> bool:
        return compare_ordinate(self, other) > 0

    def __ge__(self, other: "OrdinatePoint") -> bool:
        return compare_ordinate(self, other) >= 0


def compare_abscissa(p: AbscissaPoint, q: AbscissaPoint) -> int:
    """Three-way order of two horizontal-line points: -1, 0, or +1.

    The raw inequality x1*z2 <= x2*z1 flips when a representative is
    rescaled by a negative factor, so both points are first normalized
    to z > 0.  With that convention the relation coincides with the
    order of the canonical coordinates and is a total order.
    """
    x1, z1 = p.x, p.z
    if z1 < 0.0:
        x1, z1 = -x1, -z1
    x2, z2 = q.x, q.z
    if z2 < 0.0:
        x2, z2 = -x2, -z2
    lhs = x1 * z2
    rhs = x2 * z1
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


def compare_ordinate(p: OrdinatePoint, q: OrdinatePoint) -> int:
    """Three-way order of two vertical-line points; see compare_abscissa."""
    y1, z1 = p.y, p.z
    if z1 < 0.0:
        y1, z1 = -y1, -z1
    y2, z2 = q.y, q.z
    if z2 < 0.0:
        y2, z2 = -y2, -z2
    lhs = y1 * z2
    rhs = y2 * z1
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


def equiv(p: ProjPoint, q: ProjPoint, tol: float = COORD_TOL) -> bool:
    """Whether two triples describe the same point, up to absolute
    tolerance on the canonical coordinates."""
    return abs(p.x / p.z - q.x / q.z) <= tol and abs(p.y / p.z - q.y / q.z) <= tol


def dist(p: ProjPoint, q: ProjPoint) -> float:
    """Flat distance: the Euclidean distance between the canonical
    coordinate pairs.

    Equal (up to rounding) to the norm of the difference p - q, but
    computed directly from the canonical coordinates so it is exactly
    the planar Euclidean distance, independent of representatives.
    """
    return math.hypot(p.x / p.z - q.x / q.z, p.y / p.z - q.y / q.z)


def dist_theta(p: ProjPoint, q: ProjPoint, theta: float) -> float:
    """Weighted distance |du| + theta*|dv| on canonical coordinates.

    The weight must be positive.  For theta >= 1 this lies between
    dist(p, q) and (1 + theta) * dist(p, q); for 0 < theta < 1 between
    theta * dist(p, q) and (1 + theta) * dist(p, q).
    """
    if not theta > 0.0:
        raise ValidationError(f"weight must be positive, got {theta!r}")
    return abs(p.x / p.z - q.x / q.z) + theta * abs(p.y / p.z - q.y / q.z)


def dist_round(p: ProjPoint, q: ProjPoint) -> float:
    """Round metric inherited from the unit sphere.

    sqrt(2 - 2|<p, q>| / (|p| |q|)) on the raw triples; antipodal
    representatives of one point are at distance zero.
    """
    dot = p.x * q.x + p.y * q.y + p.z * q.z
    np_ = math.sqrt(p.x * p.x + p.y * p.y + p.z * p.z)
    nq = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    c = abs(dot) / (np_ * nq)
    return math.sqrt(max(0.0, 2.0 - 2.0 * min(c, 1.0)))


def axis_dist(p, q) -> float:
    """Flat distance between two points of the same coordinate line."""
    return abs(p.value - q.value)


def is_orthogonal(p: Sequence[float], q: Sequence[float], tol: float = COORD_TOL) -> bool:
    """Whether two homogeneous triples are orthogonal as 3-vectors.

    Accepts raw triples (including ones on the removed line, such as
    direction triples with z = 0); each must be nonzero.
    """
    x1, y1, z1 = p
    x2, y2, z2 = q
    if x1 == 0.0 and y1 == 0.0 and z1 == 0.0:
        raise ValidationError("first triple is zero")
    if x2 == 0.0 and y2 == 0.0 and z2 == 0.0:
        raise ValidationError("second triple is zero")
    return abs(x1 * x2 + y1 * y2 + z1 * z2) <= tol
