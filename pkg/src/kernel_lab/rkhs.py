"""Poisson extensions and two-point reproducing kernels.

The order-s harmonic extension and its fractional counterpart are
isometries from multiplier-weighted boundary Sobolev spaces into the
interior.  Point evaluation of the extensions is reproduced by the
two-point kernels

  K_s(x,y)     = int (M^{-s/2} P_x)(M^{-s/2} P_y) dsigma,
  K_{a,s}(x,y) = Gamma(a)^2 Gamma(a+1)^2
                 int (M^{-theta} psi_x)(M^{-theta} psi_y) dsigma,

with theta = s/2 + a/2 + 1/4, P_x the classical Poisson kernel and
psi_x the weighted boundary trace of the fractional Green function.

Every extension value is computed by two routes, the plain boundary
integral and the multiplier pairing; their agreement rests on the exact
cancellation <f, M^{-t} g>_t = <f, g>_0, so any disagreement beyond
roundoff indicates a broken transform and raises ConsistencyError.

As a -> 1 the weighted trace collapses onto the Poisson kernel and
K_{a,s} -> K_{s+3/2}.  kernel_fractional accepts a = 1 as that formal
limit, which makes the trend checkable end to end.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import apply_M_power, boundary_integrate, sobolev_inner
from .domains import DISK, INTERVAL, BoundaryGrid
from .errors import ConsistencyError, DomainError, GridMismatchError
from .green import fractional_trace_green, poisson_kernel_classical
from .report import Report, check, flag
from .specfun import FracParams, gamma_fn

# default circle quadrature resolution for kernel assembly; acceptance
# runs a second resolution to bound the quadrature error empirically
DEFAULT_NODES = 256

_ROUTE_TOL = 1e-12


def _route_guard(name, direct, spectral):
    # scale-guarded: traces blow up near the boundary, so a raw 1e-12
    # absolute gap would misfire on perfectly healthy large values
    if abs(direct - spectral) > _ROUTE_TOL * max(1.0, abs(direct)):
        raise ConsistencyError(
            f"{name}: boundary-integral and multiplier routes disagree",
            route_a=direct,
            route_b=spectral,
        )


def _check_field_domain(f, domain):
    if f.grid.domain != domain:
        raise GridMismatchError("boundary field lives on a different domain")


def _gamma_factor(a):
    return gamma_fn(a) * gamma_fn(a + 1.0)


def poisson_extend_classical(domain, s, g, x):
    """Value at x of the harmonic extension of boundary data g.

    Computed as <g, M^{-s} P(x,.)>_s and as int g P(x,.) dsigma; the two
    must agree to roundoff and the direct value is returned.
    """
    _check_field_domain(g, domain)
    P = poisson_kernel_classical(g.grid, x)
    direct = boundary_integrate(g.pointwise_product(P))
    spectral = sobolev_inner(g, apply_M_power(P, -s), s)
    _route_guard("poisson_extend_classical", direct, spectral)
    return direct


def poisson_extend_fractional(domain, a, s, phi, x):
    """Value at x of the a-harmonic extension of weighted trace data phi.

    u(x) = Gamma(a)Gamma(a+1) <phi, M^{-2 theta} psi_x>_{2 theta}
         = Gamma(a)Gamma(a+1) int phi psi_x dsigma,

    psi_x = gamma_0^a G_a(x,.).  On the interval with phi constant equal
    to (2R)^{a-1} this reproduces the singular a-harmonic profile
    (R^2-|x|^2)^{a-1} exactly, which pins the Gamma normalization.
    """
    _check_field_domain(phi, domain)
    params = FracParams(a, s)
    psi = fractional_trace_green(phi.grid, a, x)
    front = _gamma_factor(a)
    direct = front * boundary_integrate(phi.pointwise_product(psi))
    spectral = front * sobolev_inner(
        phi, apply_M_power(psi, -2.0 * params.theta), 2.0 * params.theta
    )
    _route_guard("poisson_extend_fractional", direct, spectral)
    return direct


def _kernel_grid(domain, n_nodes):
    if domain.kind == INTERVAL:
        return BoundaryGrid(domain, 2)
    return BoundaryGrid(domain, n_nodes)


def _trace_field(grid, a, x):
    # a = 1 is the formal limit of the weighted trace: G_1 vanishes on the
    # boundary, so gamma_0^1 G_1 = -gamma_N G_1 = P(x,.)
    if a == 1.0:
        return poisson_kernel_classical(grid, x)
    return fractional_trace_green(grid, a, x)


def kernel_classical(domain, s, x, y, n_nodes=DEFAULT_NODES):
    """Two-point kernel of the order-s harmonic extension isometry."""
    grid = _kernel_grid(domain, n_nodes)
    fx = apply_M_power(poisson_kernel_classical(grid, x), -0.5 * s)
    fy = apply_M_power(poisson_kernel_classical(grid, y), -0.5 * s)
    return boundary_integrate(fx.pointwise_product(fy))


def kernel_classical_spectral_oracle(domain, s, x, y):
    """Fourier-series evaluation of the classical disk kernel.

    K_s(x,y) = (1/2piR) [1 + 2 sum_{k>=1} (1+k^2/R^2)^{-s} rho^k cos(k D)]
    with rho = r1 r2/R^2 and D the angle between x and y; the series is
    truncated once the term magnitude (cosine bounded away) drops below
    1e-16.  Independent of the grid machinery, hence an oracle for it.
    """
    if domain.kind != DISK:
        raise DomainError("the spectral oracle is defined on the disk")
    x = domain.require_interior(x)
    y = domain.require_interior(y)
    R = domain.R
    rho = domain.norm(x) * domain.norm(y) / R**2
    delta = math.atan2(y[1], y[0]) - math.atan2(x[1], x[0])
    total = 1.0
    k = 1
    while True:
        mag = (1.0 + (k / R) ** 2) ** (-s) * rho**k
        if mag < 1e-16 or k > 200_000:
            break
        total += 2.0 * mag * math.cos(k * delta)
        k += 1
    return total / (2.0 * math.pi * R)


def kernel_fractional(domain, a, s, x, y, n_nodes=DEFAULT_NODES):
    """Two-point kernel of the (a, s) fractional extension isometry."""
    params = FracParams(a, s)
    grid = _kernel_grid(domain, n_nodes)
    front = _gamma_factor(a) ** 2
    fx = apply_M_power(_trace_field(grid, a, x), -params.theta)
    fy = apply_M_power(_trace_field(grid, a, y), -params.theta)
    return front * boundary_integrate(fx.pointwise_product(fy))


@dataclass
class KernelMatrix:
    """Gram matrix of kernel representers at a fixed point set.

    params is the classical order s (a float) or a FracParams; entries is
    exactly symmetric because each unordered pair is computed once.
    """

    params: object
    points: np.ndarray
    entries: np.ndarray
    has_duplicates: bool = False

    def eigenvalues(self):
        """Dense symmetric eigensolve, ascending."""
        return np.linalg.eigvalsh(self.entries)

    def is_psd(self, tol=1e-10):
        """Min eigenvalue above -tol times the max; scale-free."""
        lam = self.eigenvalues()
        return lam[0] >= -tol * max(lam[-1], 0.0)


def gram_matrix(domain, kind, params, points, n_nodes=DEFAULT_NODES):
    """Assemble the Gram matrix K(x_i, x_j) over interior points.

    kind selects the kernel: "classical" (params = order s) or
    "fractional" (params = FracParams).  Duplicate points are allowed and
    flagged; they make the matrix singular, which is not an error.
    """
    pts = [domain.point(p) for p in points]
    if not pts:
        raise DomainError("gram_matrix needs at least one point")
    grid = _kernel_grid(domain, n_nodes)
    if kind == "classical":
        s = float(params)
        front = 1.0
        fields = [
            apply_M_power(poisson_kernel_classical(grid, p), -0.5 * s) for p in pts
        ]
    elif kind == "fractional":
        front = _gamma_factor(params.a) ** 2
        fields = [
            apply_M_power(_trace_field(grid, params.a, p), -params.theta) for p in pts
        ]
    else:
        raise ValueError(f"unknown kernel selector {kind!r}")

    m = len(pts)
    w = grid.weights
    vals = [f.values for f in fields]
    entries = np.empty((m, m))
    for i in range(m):
        for j in range(i + 1):
            entries[i, j] = entries[j, i] = front * float(np.dot(w * vals[i], vals[j]))

    dup = False
    for i in range(m):
        for j in range(i):
            if np.max(np.abs(np.asarray(pts[i]) - np.asarray(pts[j]))) < 1e-14 * domain.R:
                dup = True
    return KernelMatrix(params, np.array(pts), entries, has_duplicates=dup)


def reproducing_residual(domain, a, s, phi, x, fine_factor=2):
    """|<phi, K_x> - u(x)| with the representer built on an independent grid.

    u(x) comes from poisson_extend_fractional on phi's own grid; the
    pairing rebuilds psi_x at fine_factor times the resolution, so the
    residual bounds the quadrature error of the kernel machinery.
    """
    params = FracParams(a, s)
    u = poisson_extend_fractional(domain, a, s, phi, x)
    if phi.grid.domain.kind == INTERVAL:
        phi_fine = phi
    else:
        phi_fine = phi.resample(fine_factor * phi.grid.n)
    psi = fractional_trace_green(phi_fine.grid, a, x)
    pairing = _gamma_factor(a) * sobolev_inner(
        phi_fine, apply_M_power(psi, -2.0 * params.theta), 2.0 * params.theta
    )
    return abs(pairing - u)


def limit_consistency(domain, s, x, y, a_list):
    """Report on K_{a,s} -> K_{s+3/2} as a increases toward 1.

    Records the error sequence against the classical kernel of order
    s + 3/2, a strict-monotonicity flag, the formal a=1 agreement, and a
    final-error bound of 1e-2 times the classical value.
    """
    a_list = [float(a) for a in a_list]
    if sorted(a_list) != a_list:
        raise DomainError("a_list must increase toward 1")
    for a in a_list:
        FracParams(a, s)
    ref = kernel_classical(domain, s + 1.5, x, y)
    errors = [abs(kernel_fractional(domain, a, s, x, y) - ref) for a in a_list]
    formal = kernel_fractional(domain, 1.0, s, x, y)

    rep = Report(
        "limit",
        scenario={
            "domain": domain.kind,
            "R": domain.R,
            "s": s,
            "x": np.asarray(x).tolist(),
            "y": np.asarray(y).tolist(),
            "a_values": a_list,
        },
        metadata={"errors": errors, "classical_reference": ref},
    )
    decreasing = all(e1 > e2 for e1, e2 in zip(errors, errors[1:]))
    rep.add(flag("kernel errors strictly decreasing", decreasing))
    rep.add(check("formal a=1 matches classical order s+3/2", formal, ref, 1e-10))
    rep.add(
        check(
            "final error within trend bound",
            errors[-1],
            0.0,
            1e-2 * abs(ref),
        )
    )
    return rep
