"""Model domains and boundary grids.

Two model geometries carry every closed form in the package: the interval
(-R, R) in one dimension and the disk of radius R in two.  The interval
boundary is the two-point set {-R, +R} with counting measure (so a boundary
integral is just f(-R) + f(R)); the circle carries n equispaced nodes with
trapezoidal weights 2*pi*R/n, which is spectrally accurate for smooth
periodic integrands.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridMismatchError

INTERVAL = "interval"
DISK = "disk"


@dataclass(frozen=True)
class ModelDomain:
    """Interval (-R, R) or disk of radius R, centered at the origin."""

    kind: str
    R: float = 1.0

    def __post_init__(self):
        if self.kind not in (INTERVAL, DISK):
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if not self.R > 0.0:
            raise DomainError(f"radius must be positive, got {self.R}")

    @property
    def N(self):
        return 1 if self.kind == INTERVAL else 2

    @property
    def boundary_measure(self):
        # counting measure on {-R, R} for the interval
        return 2.0 if self.kind == INTERVAL else 2.0 * math.pi * self.R

    def point(self, p):
        """Coerce p to a float (interval) or a length-2 array (disk)."""
        if self.kind == INTERVAL:
            arr = np.asarray(p, dtype=float)
            if arr.ndim == 1 and arr.size == 1:
                arr = arr[0]
            if arr.ndim != 0:
                raise DomainError(f"interval points are scalars, got shape {arr.shape}")
            return float(arr)
        arr = np.asarray(p, dtype=float)
        if arr.shape != (2,):
            raise DomainError(f"disk points are 2-vectors, got shape {arr.shape}")
        return arr

    def norm(self, p):
        if self.kind == INTERVAL:
            return abs(self.point(p))
        return float(np.hypot(*self.point(p)))

    def distance_to_boundary(self, p):
        d = self.R - self.norm(p)
        if d < 0.0:
            raise DomainError(f"point {p} lies outside the domain")
        return d

    def is_interior(self, p):
        return self.norm(p) < self.R

    def require_interior(self, p, margin=0.0):
        d = self.R - self.norm(p)
        if d <= margin:
            raise DomainError(
                f"point {p} is not interior to the {self.kind} of radius {self.R}"
                + (f" (required clearance {margin})" if margin > 0.0 else "")
            )
        return self.point(p)

    def scaled(self, factor):
        """The dilated domain factor * Omega."""
        return ModelDomain(self.kind, self.R * factor)


def ray_exit(domain, x, direction):
    """Distance from an interior disk point to the boundary along a unit ray."""
    if domain.kind != DISK:
        raise DomainError("ray_exit is defined on the disk")
    x = domain.point(x)
    direction = np.asarray(direction, dtype=float)
    b = float(x @ direction)
    c = float(x @ x) - domain.R**2
    return -b + math.sqrt(b * b - c)


def interval(R=1.0):
    return ModelDomain(INTERVAL, R)


def disk(R=1.0):
    return ModelDomain(DISK, R)


@dataclass(frozen=True)
class BoundaryGrid:
    """Quadrature nodes and weights on the boundary of a model domain."""

    domain: ModelDomain
    n: int = 256

    def __post_init__(self):
        if self.domain.kind == INTERVAL:
            if self.n != 2:
                raise DomainError("the interval boundary has exactly 2 nodes")
        else:
            if self.n < 8 or self.n % 2 != 0:
                raise DomainError("circle grids need an even node count >= 8")

    @property
    def angles(self):
        if self.domain.kind != DISK:
            raise DomainError("angles are defined for circle grids only")
        return 2.0 * math.pi * np.arange(self.n) / self.n

    @property
    def nodes(self):
        """(n,) array for the interval, (n, 2) array for the circle."""
        R = self.domain.R
        if self.domain.kind == INTERVAL:
            return np.array([-R, R])
        th = self.angles
        return R * np.column_stack([np.cos(th), np.sin(th)])

    @property
    def weights(self):
        if self.domain.kind == INTERVAL:
            return np.ones(2)
        return np.full(self.n, 2.0 * math.pi * self.domain.R / self.n)

    def field(self, values):
        return BoundaryField(self, np.asarray(values, dtype=float))

    def constant_field(self, c):
        return BoundaryField(self, np.full(self.n, float(c)))

    def field_from_function(self, fn):
        """Sample fn over the nodes; fn takes an angle (circle) or node (interval)."""
        if self.domain.kind == DISK:
            values = np.array([fn(theta) for theta in self.angles], dtype=float)
        else:
            values = np.array([fn(x) for x in self.nodes], dtype=float)
        return BoundaryField(self, values)


@dataclass
class BoundaryField:
    """Real samples of a function on a boundary grid."""

    grid: BoundaryGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n,):
            raise GridMismatchError(
                f"expected {self.grid.n} samples, got shape {self.values.shape}"
            )

    def same_grid(self, other):
        if self.grid != other.grid:
            raise GridMismatchError("boundary fields live on different grids")

    def __add__(self, other):
        self.same_grid(other)
        return BoundaryField(self.grid, self.values + other.values)

    def __sub__(self, other):
        self.same_grid(other)
        return BoundaryField(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        return BoundaryField(self.grid, self.values * float(scalar))

    __rmul__ = __mul__

    def pointwise_product(self, other):
        self.same_grid(other)
        return BoundaryField(self.grid, self.values * other.values)

    def resample(self, n_new):
        """Band-limited upsampling onto a finer circle grid (exact for
        trigonometric polynomials of degree < n/2).

        The interval field (two nodes) is returned unchanged.
        """
        if self.grid.domain.kind == INTERVAL:
            if n_new != 2:
                raise DomainError("interval grids always have 2 nodes")
            return self
        n = self.grid.n
        if n_new == n:
            return self
        if n_new < n or n_new % 2 != 0:
            raise DomainError("resample only refines circle grids (even n_new > n)")
        new_grid = BoundaryGrid(self.grid.domain, n_new)
        spec = np.fft.fft(self.values)
        out = np.zeros(n_new, dtype=complex)
        half = n // 2
        out[:half] = spec[:half]
        # Nyquist bin splits evenly between +n/2 and -n/2 on the fine grid
        out[half] = 0.5 * spec[half]
        out[n_new - half] = 0.5 * spec[half]
        out[n_new - half + 1 :] = spec[half + 1 :]
        values = np.fft.ifft(out).real * (n_new / n)
        return BoundaryField(new_grid, values)
