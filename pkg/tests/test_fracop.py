import math

import numpy as np
import pytest

from kernel_lab.domains import disk, interval
from kernel_lab.errors import DomainError, ToleranceError
from kernel_lab.fracop import (
    MollifierSpec,
    SampledInteriorField,
    boundary_singular_field,
    frac_laplacian_apply,
    getoor_field,
    getoor_reference,
    mollified_green,
    mollified_green_value,
    residual_check,
)
from kernel_lab.green import green_classical, green_fractional
from kernel_lab.quadrature import QuadratureSpec, panel_integrate
from kernel_lab.specfun import green_constant

IV = interval(1.0)
DK = disk(1.0)


@pytest.mark.parametrize("a", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("x", [0.0, 0.4])
def test_getoor_identity_interval(a, x):
    u = getoor_field(IV, a)
    ref = getoor_reference(1, a)
    got = frac_laplacian_apply(u, a, x)
    assert abs(got - ref) < 1e-3 * ref


def test_getoor_identity_disk():
    u = getoor_field(DK, 0.5)
    ref = getoor_reference(2, 0.5)
    got = frac_laplacian_apply(u, 0.5, np.array([0.3, -0.2]))
    assert abs(got - ref) < 1e-6 * ref


def test_getoor_a09_exceeds_quadrature_grading():
    # at a = 0.9 the distance-squared grading leaves an edge error decaying
    # like m^(-0.4); the operator must refuse rather than return it quietly
    u = getoor_field(IV, 0.9)
    with pytest.raises(ToleranceError) as exc:
        frac_laplacian_apply(u, 0.9, 0.0)
    assert exc.value.estimate == pytest.approx(getoor_reference(1, 0.9), rel=0.2)


def test_a_harmonic_profile():
    v = boundary_singular_field(IV, 0.5)
    quad = QuadratureSpec(rel_tol=1e-3, abs_tol=1e-4, resolution=64, budget=10**6)
    got = frac_laplacian_apply(v, 0.5, 0.2, quad)
    assert abs(got) < 1e-3


def test_linearity_via_superposition():
    # (-Delta)^a (u + 2v) = ref + 0 when u is the Getoor profile and v is
    # the a-harmonic one
    a = 0.5
    R2 = IV.R**2
    combo = SampledInteriorField(
        IV,
        lambda y: (R2 - y * y) ** a + 2.0 * (R2 - y * y) ** (a - 1.0),
        "boundary-singular",
    )
    quad = QuadratureSpec(rel_tol=1e-3, abs_tol=1e-3, resolution=64, budget=10**6)
    got = frac_laplacian_apply(combo, a, 0.1, quad)
    assert abs(got - getoor_reference(1, a)) < 5e-3


@pytest.mark.parametrize("a", [0.6, 0.75])
def test_near_field_refinement_converges(a):
    u = getoor_field(IV, a)
    ref = getoor_reference(1, a)
    errs = []
    for res in (8, 16, 32):
        quad = QuadratureSpec(rel_tol=0.5, abs_tol=0.5, resolution=res, budget=10**6)
        errs.append(abs(frac_laplacian_apply(u, a, 0.0, quad) - ref))
    assert errs[0] > errs[1] > errs[2]
    assert errs[0] / errs[2] > 2.5


def test_apply_budget_exhaustion():
    u = getoor_field(IV, 0.5)
    quad = QuadratureSpec(rel_tol=1e-3, abs_tol=1e-6, resolution=64, budget=100)
    with pytest.raises(ToleranceError):
        frac_laplacian_apply(u, 0.5, 0.0, quad)


def test_evaluable_margin_guards():
    v = boundary_singular_field(IV, 0.5)
    with pytest.raises(DomainError):
        v.require_evaluable(0.99)  # singular tag keeps a 0.2 R margin
    u = getoor_field(IV, 0.5)
    assert u.require_evaluable(0.9) == pytest.approx(0.1, abs=1e-15)


def test_sampled_field_from_grid():
    nodes = np.linspace(-1.0, 1.0, 513)
    field = SampledInteriorField.from_grid(
        IV, nodes, np.sin(3.0 * nodes), "smooth-compact"
    )
    probe = np.array([-0.41, 0.07, 0.66])
    assert np.max(np.abs(field(probe) - np.sin(3.0 * probe))) < 1e-9


@pytest.mark.parametrize("domain", [IV, DK], ids=["interval", "disk"])
def test_mollifier_unit_mass(domain):
    if domain.kind == "interval":
        moll = MollifierSpec(domain, 0.1, 0.35)
        mass = panel_integrate(
            moll.density, np.linspace(0.1 - 0.35, 0.1 + 0.35, 65), 12
        )
    else:
        c = np.array([0.2, -0.1])
        moll = MollifierSpec(domain, c, 0.3)

        def ring(r):
            out = np.zeros_like(r)
            for k, rk in enumerate(r):
                ang = 2.0 * math.pi * np.arange(256) / 256.0
                pts = c[None, :] + rk * np.stack([np.cos(ang), np.sin(ang)], axis=1)
                out[k] = rk * np.mean(moll.density(pts)) * 2.0 * math.pi
            return out

        mass = panel_integrate(ring, np.linspace(0.0, 0.3, 33), 12)
    assert mass == pytest.approx(1.0, abs=1e-12)


def test_mollifier_validation():
    with pytest.raises(DomainError):
        MollifierSpec(IV, 0.8, 0.3)  # support pokes through the boundary
    with pytest.raises(DomainError):
        MollifierSpec(IV, 0.0, -0.1)
    with pytest.raises(DomainError):
        MollifierSpec(DK, np.array([1.2, 0.0]), 0.1)


@pytest.mark.parametrize("domain", [IV, DK], ids=["interval", "disk"])
def test_mollified_value_shrinks_to_green(domain):
    a = 0.5
    if domain.kind == "interval":
        c, z = 0.1, -0.5
    else:
        c, z = np.array([0.1, 0.0]), np.array([-0.5, 0.2])
    exact = green_fractional(domain, a, z, c)
    errs = []
    for w in (0.4, 0.2, 0.1):
        moll = MollifierSpec(domain, c, w)
        errs.append(abs(mollified_green_value(domain, a, moll, z) - exact))
    # smooth Green function away from the bump: O(eps^2) averaging error
    assert errs[0] > errs[1] > errs[2]
    assert errs[0] / errs[1] > 2.5 and errs[1] / errs[2] > 2.5


@pytest.fixture(scope="module")
def interval_mollified():
    moll = MollifierSpec(IV, 0.0, 0.4)
    return moll, mollified_green(IV, 0.5, moll)


def test_mollified_green_spline_matches_direct(interval_mollified):
    moll, field = interval_mollified
    for z in (-0.63, 0.11, 0.4):
        direct = mollified_green_value(IV, 0.5, moll, z)
        assert abs(field(z) - direct) < 1e-6 * max(1.0, abs(direct))


def test_residual_check_report(interval_mollified):
    moll, _ = interval_mollified
    rep = residual_check(IV, 0.5, moll, [0.0, 0.2, 0.55], tolerance=1e-2)
    assert rep.overall_pass
    assert len(rep.records) == 3
    # x = 0.55 sits outside the bump support, so the target there is zero
    assert rep.records[-1].reference == 0.0


def test_disk_mollified_weighted_trace():
    # v = int G(., y) rho(y) dy has weighted trace int psi_y(z) rho(y) dy;
    # extrapolate v((1-d) z)/d^a in d with exponents {1, 3/2}
    a = 0.5
    c = np.array([0.2, -0.1])
    moll = MollifierSpec(DK, c, 0.3)
    theta = 0.7
    zhat = np.array([math.cos(theta), math.sin(theta)])

    kappa = green_constant(2, a)

    def trace_integrand(r):
        out = np.zeros_like(r)
        for k, rk in enumerate(r):
            ang = 2.0 * math.pi * np.arange(128) / 128.0
            pts = c[None, :] + rk * np.stack([np.cos(ang), np.sin(ang)], axis=1)
            front = (kappa / a) * 2.0**a * (1.0 - np.sum(pts * pts, axis=1)) ** a
            d2 = np.sum((pts - zhat[None, :]) ** 2, axis=1)
            out[k] = rk * np.mean(front / d2 * moll.density(pts)) * 2.0 * math.pi
        return out

    target = panel_integrate(trace_integrand, np.linspace(0.0, 0.3, 17), 12)

    ds = np.array([0.1, 0.05, 0.025])
    vals = np.array(
        [mollified_green_value(DK, a, moll, (1.0 - d) * zhat) / d**a for d in ds]
    )
    A = np.stack([np.ones(3), ds, ds**1.5], axis=1)
    fit = np.linalg.solve(A, vals)
    assert abs(fit[0] - target) < 1e-3 * max(1.0, abs(target))


def test_mollified_value_bounds():
    # sanity bracket: averaging a unit-mass bump around 0 cannot exceed the
    # maximum of G(z, .) over the support by much at z far away
    moll = MollifierSpec(IV, 0.0, 0.2)
    val = mollified_green_value(IV, 0.5, moll, 0.6)
    assert 0.0 < val < green_fractional(IV, 0.5, 0.6, 0.0) * 1.5
