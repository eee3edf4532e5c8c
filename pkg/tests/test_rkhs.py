import math

import numpy as np
import pytest

import kernel_lab.rkhs as rkhs
from kernel_lab.domains import BoundaryGrid, disk, interval
from kernel_lab.errors import ConsistencyError, GridMismatchError
from kernel_lab.rkhs import (
    gram_matrix,
    kernel_classical,
    kernel_classical_spectral_oracle,
    kernel_fractional,
    limit_consistency,
    poisson_extend_classical,
    poisson_extend_fractional,
    reproducing_residual,
)
from kernel_lab.specfun import FracParams

IV = interval(1.0)
DK = disk(1.0)


def _circle_pt(r, th):
    return r * np.array([math.cos(th), math.sin(th)])


def test_classical_extension_constant_and_mode():
    grid = BoundaryGrid(DK, 128)
    ones = grid.constant_field(1.0)
    assert poisson_extend_classical(DK, 0.0, ones, _circle_pt(0.3, 1.1)) == pytest.approx(
        1.0, abs=1e-13
    )
    # the harmonic extension of cos(theta) is x_1
    g = grid.field(np.cos(grid.angles))
    assert poisson_extend_classical(DK, 0.7, g, np.array([0.5, 0.0])) == pytest.approx(
        0.5, abs=1e-13
    )
    assert poisson_extend_classical(DK, 0.7, g, np.array([0.0, 0.25])) == pytest.approx(
        0.0, abs=1e-13
    )


@pytest.mark.parametrize("domain", [IV, DK], ids=["interval", "disk"])
@pytest.mark.parametrize("a", [0.3, 0.5, 0.8])
def test_fractional_extension_constant_data(domain, a):
    # data 2^(a-1) extends to (R^2-|x|^2)^(a-1) on the unit-radius domain
    grid = BoundaryGrid(domain, 2 if domain.kind == "interval" else 128)
    phi = grid.constant_field(2.0 ** (a - 1.0))
    for xr in (0.0, 0.3, -0.6):
        x = xr if domain.kind == "interval" else _circle_pt(abs(xr), 0.4)
        u = poisson_extend_fractional(domain, a, 0.0, phi, x)
        r2 = xr * xr
        assert u == pytest.approx((1.0 - r2) ** (a - 1.0), rel=1e-12)


def test_route_guard_trips(monkeypatch):
    grid = BoundaryGrid(DK, 64)
    g = grid.field(np.cos(grid.angles))
    monkeypatch.setattr(rkhs, "sobolev_inner", lambda f, h, s: 123.0)
    with pytest.raises(ConsistencyError):
        poisson_extend_classical(DK, 0.0, g, np.array([0.2, 0.1]))


def test_field_domain_guard():
    grid = BoundaryGrid(IV, 2)
    phi = grid.constant_field(1.0)
    with pytest.raises(GridMismatchError):
        poisson_extend_fractional(DK, 0.5, 0.0, phi, np.array([0.1, 0.0]))


def test_kernel_anchor_interval():
    assert kernel_fractional(IV, 0.5, 0.0, 0.0, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_kernel_anchor_disk_center():
    # s = 0 kernel at the center is the boundary measure inverse 1/(2 pi R)
    assert kernel_classical(DK, 0.0, np.zeros(2), np.zeros(2)) == pytest.approx(
        1.0 / (2.0 * math.pi), abs=1e-14
    )


def test_kernel_symmetry():
    x, y = _circle_pt(0.5, 0.3), _circle_pt(0.2, 2.1)
    assert kernel_classical(DK, 0.6, x, y) == pytest.approx(
        kernel_classical(DK, 0.6, y, x), rel=1e-14
    )
    assert kernel_fractional(DK, 0.7, 0.3, x, y) == pytest.approx(
        kernel_fractional(DK, 0.7, 0.3, y, x), rel=1e-14
    )


@pytest.mark.parametrize("s", [-1.0, 0.0, 1.0])
def test_classical_kernel_matches_spectral_oracle(s):
    pts = [_circle_pt(0.3, 0.0), _circle_pt(0.6, math.pi / 3.0), np.zeros(2)]
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            grid_route = kernel_classical(DK, s, pts[i], pts[j], n_nodes=256)
            oracle = kernel_classical_spectral_oracle(DK, s, pts[i], pts[j])
            assert abs(grid_route - oracle) < 1e-10 * max(1.0, abs(oracle))


def test_oracle_monotone_in_s():
    x = _circle_pt(0.5, 0.0)
    vals = [kernel_classical_spectral_oracle(DK, s, x, x) for s in (-1.0, 0.0, 1.0)]
    assert vals[0] > vals[1] > vals[2]


def test_formal_limit_matches_classical():
    x, y = _circle_pt(0.4, 0.2), _circle_pt(0.1, 1.0)
    lhs = kernel_fractional(DK, 1.0, 0.25, x, y)
    rhs = kernel_classical(DK, 1.75, x, y)
    assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_gram_psd_and_shapes():
    rng = np.random.default_rng(21)
    for size in (1, 4, 9, 17):
        r = 0.9 * np.sqrt(rng.uniform(size=size))
        th = rng.uniform(0.0, 2.0 * math.pi, size=size)
        pts = [_circle_pt(r[k], th[k]) for k in range(size)]
        km = gram_matrix(DK, "classical", 0.5, pts, n_nodes=64)
        assert km.entries.shape == (size, size)
        assert km.is_psd()
        assert not km.has_duplicates
        lam = km.eigenvalues()
        assert lam[-1] > 0.0


def test_gram_duplicate_flagged_degenerate():
    pts = [0.3, 0.3, -0.5]
    km = gram_matrix(IV, "fractional", FracParams(0.5, 0.0), pts, n_nodes=2)
    assert km.has_duplicates
    lam = km.eigenvalues()
    # a repeated point makes the matrix exactly rank deficient
    assert lam[0] < 1e-12 * lam[-1]
    assert km.is_psd()


def test_gram_selector_validation():
    with pytest.raises(ValueError):
        gram_matrix(IV, "sobolev", 0.5, [0.0], n_nodes=2)


def test_cauchy_schwarz_sampled():
    rng = np.random.default_rng(33)
    a, s = 0.5, 0.0
    worst = 0.0
    for _ in range(50):
        r = 0.9 * np.sqrt(rng.uniform(size=2))
        th = rng.uniform(0.0, 2.0 * math.pi, size=2)
        x, y = _circle_pt(r[0], th[0]), _circle_pt(r[1], th[1])
        kxy = kernel_fractional(DK, a, s, x, y, n_nodes=64)
        kxx = kernel_fractional(DK, a, s, x, x, n_nodes=64)
        kyy = kernel_fractional(DK, a, s, y, y, n_nodes=64)
        worst = min(worst, kxx * kyy - kxy * kxy)
    assert worst >= -1e-12


@pytest.mark.parametrize("domain", [IV, DK], ids=["interval", "disk"])
def test_reproducing_residual_small(domain):
    grid = BoundaryGrid(domain, 2 if domain.kind == "interval" else 256)
    if domain.kind == "interval":
        phi = grid.field([0.8, -0.3])
    else:
        phi = grid.field(np.cos(grid.angles) + 0.5 * np.cos(3.0 * grid.angles))
    x = 0.25 if domain.kind == "interval" else _circle_pt(0.35, 0.9)
    assert reproducing_residual(domain, 0.5, 0.0, phi, x) < 1e-10


def test_classical_reproduction_two_routes():
    # u(x) = <g, P_x>_0 = <g, M^{-s} P_x>_s for band-limited data
    from kernel_lab.boundary import apply_M_power, sobolev_inner
    from kernel_lab.green import poisson_kernel_classical

    grid = BoundaryGrid(DK, 128)
    g = grid.field(np.cos(2.0 * grid.angles) - 0.4 * np.sin(5.0 * grid.angles))
    x = _circle_pt(0.45, 0.7)
    P = poisson_kernel_classical(grid, x)
    s = 0.8
    direct = sobolev_inner(g, P, 0.0)
    dual = sobolev_inner(g, apply_M_power(P, -s), s)
    assert abs(direct - dual) < 1e-10 * max(1.0, abs(direct))
    assert poisson_extend_classical(DK, s, g, x) == pytest.approx(direct, rel=1e-12)


def test_limit_consistency_report():
    rep = limit_consistency(DK, 0.0, np.zeros(2), np.array([0.5, 0.0]), [0.9, 0.99, 0.999])
    assert rep.overall_pass
    errs = rep.metadata["errors"]
    assert errs[0] > errs[1] > errs[2]
    ref = rep.metadata["classical_reference"]
    assert ref == pytest.approx(
        kernel_classical_spectral_oracle(DK, 1.5, np.zeros(2), np.array([0.5, 0.0])),
        rel=1e-10,
    )


def test_limit_consistency_input_validation():
    from kernel_lab.errors import DomainError

    with pytest.raises(DomainError):
        limit_consistency(DK, 0.0, np.zeros(2), np.array([0.5, 0.0]), [0.99, 0.9])
    with pytest.raises(DomainError):
        limit_consistency(DK, 0.0, np.zeros(2), np.array([0.5, 0.0]), [0.5, 1.2])


def test_interval_trace_recovery():
    a, s = 0.5, 0.0
    grid = BoundaryGrid(IV, 2)
    phi = grid.field([2.0, -1.0])
    errs = []
    for d in (1e-1, 1e-2, 1e-3):
        worst = 0.0
        for sgn, target in ((-1.0, 2.0), (1.0, -1.0)):
            u = poisson_extend_fractional(IV, a, s, phi, sgn * (1.0 - d))
            worst = max(worst, abs(u * d ** (1.0 - a) - target))
        errs.append(worst)
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-2 * 2.0
