from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

TAU = 2 * math.pi


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("Point coordinates must be finite")

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def scaled(self, factor: float) -> Point2:
        return Point2(self.x * factor, self.y * factor)

    def dot(self, other: Point2) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point2) -> float:
        return self.x * other.y - self.y * other.x

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def distance_to(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class TurnAngle:
    """An angle measured in full turns.

    When ``exact`` is set it is authoritative and ``radians_value`` is derived
    from it; otherwise the angle is a measured radian value. Values are not
    normalized, so a TurnAngle can hold an opening, a gap or a direction; use
    ``normalized()`` for directions.
    """
    exact: Fraction | None
    radians_value: float

    def __post_init__(self) -> None:
        if self.exact is not None:
            object.__setattr__(self, "radians_value", float(self.exact) * TAU)
        elif not math.isfinite(self.radians_value):
            raise ValueError("Angle must be finite")

    @classmethod
    def of_turns(cls, turns: Fraction | int | str) -> TurnAngle:
        return cls(Fraction(turns), 0.0)

    @classmethod
    def of_radians(cls, value: float) -> TurnAngle:
        return cls(None, float(value))

    @classmethod
    def of_vector(cls, dx: float, dy: float) -> TurnAngle:
        if dx == 0 and dy == 0:
            raise ValueError("Direction vector must not be zero")
        return cls(None, math.atan2(dy, dx) % TAU)

    @classmethod
    def zero(cls) -> TurnAngle:
        return cls(Fraction(0), 0.0)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def turns(self) -> float:
        return self.radians_value / TAU

    @property
    def unit(self) -> Point2:
        return Point2(math.cos(self.radians_value), math.sin(self.radians_value))

    def normalized(self) -> TurnAngle:
        if self.exact is not None:
            return TurnAngle(self.exact % 1, 0.0)
        return TurnAngle(None, self.radians_value % TAU)

    def __add__(self, other: TurnAngle) -> TurnAngle:
        if self.exact is not None and other.exact is not None:
            return TurnAngle(self.exact + other.exact, 0.0)
        return TurnAngle(None, self.radians_value + other.radians_value)

    def __sub__(self, other: TurnAngle) -> TurnAngle:
        return self + (-other)

    def __neg__(self) -> TurnAngle:
        if self.exact is not None:
            return TurnAngle(-self.exact, 0.0)
        return TurnAngle(None, -self.radians_value)

    def __mul__(self, factor: int | Fraction) -> TurnAngle:
        if self.exact is not None:
            return TurnAngle(self.exact * Fraction(factor), 0.0)
        return TurnAngle(None, self.radians_value * float(factor))

    __rmul__ = __mul__

    def __truediv__(self, divisor: int) -> TurnAngle:
        return self * Fraction(1, divisor)

    def is_zero(self, eps: float) -> bool:
        if self.exact is not None:
            return self.exact == 0
        return abs(self.radians_value) < eps

    def __str__(self) -> str:
        if self.exact is not None:
            return f"{self.exact.numerator}/{self.exact.denominator} turn"
        return f"{self.radians_value!r} rad"


class Orientation(enum.Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.PRESERVING else -1

    def __mul__(self, other: Orientation) -> Orientation:
        if self is other:
            return Orientation.PRESERVING
        return Orientation.REVERSING


@dataclass(frozen=True)
class Isometry2:
    """p -> R(rotation) * S * p + translation, S the x-axis mirror when reversing."""
    orientation: Orientation
    rotation: TurnAngle
    translation: tuple[float, float]

    @classmethod
    def identity(cls) -> Isometry2:
        return cls(Orientation.PRESERVING, TurnAngle.zero(), (0.0, 0.0))

    @property
    def is_reversing(self) -> bool:
        return self.orientation is Orientation.REVERSING

    def linear(self, p: Point2) -> Point2:
        x, y = p.x, p.y
        if self.is_reversing:
            y = -y
        c = math.cos(self.rotation.radians_value)
        s = math.sin(self.rotation.radians_value)
        return Point2(c * x - s * y, s * x + c * y)

    def apply(self, p: Point2) -> Point2:
        q = self.linear(p)
        return Point2(q.x + self.translation[0], q.y + self.translation[1])

    def apply_direction(self, direction: TurnAngle) -> TurnAngle:
        if self.is_reversing:
            return (self.rotation - direction).normalized()
        return (self.rotation + direction).normalized()

    def then(self, other: Isometry2) -> Isometry2:
        """Return self ∘ other."""
        rotation = self.rotation + other.rotation * self.orientation.sign
        moved = self.linear(Point2(*other.translation))
        return Isometry2(
            orientation=self.orientation * other.orientation,
            rotation=rotation.normalized(),
            translation=(moved.x + self.translation[0], moved.y + self.translation[1]),
        )

    def inverse(self) -> Isometry2:
        if self.is_reversing:
            rotation = self.rotation
        else:
            rotation = (-self.rotation).normalized()
        linear_only = Isometry2(self.orientation, rotation, (0.0, 0.0))
        back = linear_only.linear(Point2(*self.translation))
        return Isometry2(self.orientation, rotation, (-back.x, -back.y))

    def approx_equal(self, other: Isometry2, eps_len: float, eps_ang: float) -> bool:
        if self.orientation is not other.orientation:
            return False
        delta = (self.rotation - other.rotation).normalized()
        if delta.exact is not None:
            if delta.exact != 0:
                return False
        else:
            r = delta.radians_value
            if min(r, TAU - r) >= eps_ang:
                return False
        dx = self.translation[0] - other.translation[0]
        dy = self.translation[1] - other.translation[1]
        return math.hypot(dx, dy) < eps_len


@dataclass(frozen=True)
class Wedge:
    apex: Point2
    start_dir: TurnAngle
    opening: TurnAngle

    def __post_init__(self) -> None:
        if self.opening.turns <= 0:
            raise ValueError("Wedge opening must be positive")

    @property
    def end_dir(self) -> TurnAngle:
        return (self.start_dir + self.opening).normalized()

    @property
    def bisector(self) -> TurnAngle:
        return (self.start_dir + self.opening / 2).normalized()


@dataclass(frozen=True)
class Lune:
    """Intersection of the disk about u through q and the disk about v through q."""
    u: Point2
    v: Point2
    q: Point2

    @property
    def radius_u(self) -> float:
        return self.u.distance_to(self.q)

    @property
    def radius_v(self) -> float:
        return self.v.distance_to(self.q)
