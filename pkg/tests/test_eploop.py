"""Tests for branch-point continuation, Puiseux fits, and loop verdicts."""

import cmath
import math

import numpy as np
import pytest

from csmres.eploop import (
    LoopSpec,
    PuiseuxFit,
    boundary_crossings,
    case_asymptotic_phase,
    fit_puiseux,
    run_berry_loop,
    trace_resonance,
)
from csmres.errors import BranchCollision, PreconditionViolation
from csmres.model import ModelParams, branch_point_coupling

TH = math.pi / 6
LBP = branch_point_coupling(TH)
P = ModelParams(lam=1.0, theta=TH)


def circle(center, radius, n=257, turns=1.0):
    phis = np.linspace(0.0, turns * 2.0 * math.pi, int(n * turns) + 1)
    return center + radius * np.exp(1j * phis)


class TestTraceResonance:
    def test_loop_not_enclosing_closes(self):
        es = trace_resonance(P, circle(LBP + 0.01, 1e-3))
        assert abs(es[-1, 0] - es[0, 0]) < 1e-10
        assert abs(es[-1, 1] - es[0, 1]) < 1e-10

    def test_enclosing_loop_swaps_sheets(self):
        es = trace_resonance(P, circle(LBP, 1e-3))
        assert abs(es[-1, 0] - es[0, 1]) < 1e-12
        assert abs(es[-1, 1] - es[0, 0]) < 1e-12
        assert abs(es[-1, 0] - es[0, 0]) > 1e-3

    def test_double_loop_closes(self):
        es = trace_resonance(P, circle(LBP, 1e-3, turns=2.0))
        assert abs(es[-1, 0] - es[0, 0]) < 1e-8

    def test_coarse_path_raises(self):
        # two-point jump across the branch point is ambiguous
        path = [LBP + 1e-3, LBP - 1e-3 + 1e-9j]
        with pytest.raises(BranchCollision):
            trace_resonance(P, path)


class TestFitPuiseux:
    def test_exponent_and_alpha(self):
        fit = fit_puiseux(P)
        assert isinstance(fit, PuiseuxFit)
        assert 0.48 <= fit.exponent <= 0.52
        assert fit.residual < 1e-3
        expect = P.hbar**2 * cmath.exp(-1j * TH) / (2.0 * P.m)
        assert abs(fit.alpha - expect) < 0.01 * abs(expect)

    def test_window_doubling_stability(self):
        a1 = fit_puiseux(P, (1e-6, 1e-4)).alpha
        a2 = fit_puiseux(P, (2e-6, 2e-4)).alpha
        assert abs(a2 - a1) < 0.01 * abs(a1)

    def test_three_angles(self):
        for th in (math.pi / 8, math.pi / 6, math.pi / 5):
            fit = fit_puiseux(ModelParams(lam=1.0, theta=th))
            assert 0.48 <= fit.exponent <= 0.52

    def test_window_validation(self):
        with pytest.raises(PreconditionViolation):
            fit_puiseux(P, (1e-10, 1e-4))


class TestBoundaryCrossings:
    def test_two_crossings_per_turn(self):
        phis = boundary_crossings(P, 1e-5 * LBP)
        assert len(phis) == 2
        # crossings of the analytic resonance trajectory with the ray sit
        # opposite each other on the circle (up to O(R) curvature)
        assert abs(abs(phis[1] - phis[0]) - math.pi) < 1e-4

    def test_functional_vanishes_at_crossing(self):
        from csmres.wavefun import classification_functional
        for phi in boundary_crossings(P, 1e-5 * LBP):
            lam = LBP + 1e-5 * LBP * cmath.exp(1j * phi)
            assert abs(classification_functional(P, lam)) < 1e-12


class TestBerryLoop:
    def setup_method(self):
        self.spec = LoopSpec(radius=1e-5 * LBP, windings=4)
        self.trace, self.verdicts = run_berry_loop(P, self.spec)

    def test_monodromy_verdicts(self):
        v = self.verdicts
        assert abs(v["ratio_2pi"] - 1j) < 1e-3
        assert abs(v["overlap_4pi"] - (-1.0)) < 1e-3
        assert abs(v["overlap_8pi"] - 1.0) < 1e-3
        assert v["monodromy_order"] == 4

    def test_connection_factors_match_readout(self):
        assert self.verdicts["connection_consistency"] < 1e-3
        # one connection per 2 pi turn
        assert len(self.trace.connection_phis) == self.spec.windings

    def test_node_spacing_identity(self):
        assert self.verdicts["delta_k_defect"] < 1e-14

    def test_starts_on_boundary_and_alternates(self):
        assert self.trace.region[0] == "ScatteringBoundary"
        interior = [r for r in self.trace.region if r != "ScatteringBoundary"]
        flips = sum(1 for a, b in zip(interior, interior[1:]) if a != b)
        # two geometric crossings per 2 pi turn; the first and last touch
        # the boundary exactly at the loop endpoints
        assert flips == 2 * self.spec.windings - 1

    def test_unwrapped_phase_grows_linearly(self):
        ph = self.trace.unwrapped_phase
        total = ph[-1] - ph[0]
        # pi/2 per 2 pi turn
        expect = self.spec.windings * math.pi / 2.0
        assert abs(total - expect) < 1e-3

    def test_r_independence(self):
        for radius in (1e-6 * LBP, 1e-4 * LBP):
            _, v = run_berry_loop(P, LoopSpec(radius=radius, windings=4))
            assert abs(v["ratio_2pi"] - 1j) < 1e-3
            assert abs(v["overlap_4pi"] - (-1.0)) < 1e-3
            assert v["monodromy_order"] == 4

    def test_quarter_root_magnitude_scaling(self):
        spec16 = LoopSpec(radius=self.spec.radius / 16.0, windings=1,
                          start_phase=self.trace.phi[0])
        t16, _ = run_berry_loop(P, spec16)
        ratio = abs(self.trace.readout[0]) / abs(t16.readout[0])
        assert abs(ratio - 2.0) < 0.04

    def test_orientation_reversal_conjugates(self):
        spec = LoopSpec(radius=self.spec.radius, windings=4, orientation=-1)
        _, v = run_berry_loop(P, spec)
        assert abs(v["ratio_2pi"] - (-1j)) < 1e-3
        assert abs(v["overlap_4pi"] - (-1.0)) < 1e-3
        assert v["monodromy_order"] == 4

    def test_sheet_convention_swap_keeps_factor(self):
        # starting half a sheet later tracks the partner sheet; the loop
        # orientation is unchanged, so the per-2pi factor stays i
        spec = LoopSpec(radius=self.spec.radius, windings=4,
                        start_phase=self.trace.phi[0] + 2.0 * math.pi)
        _, v = run_berry_loop(P, spec)
        assert abs(v["ratio_2pi"] - 1j) < 1e-3

    def test_taylor_bound_enforced(self):
        with pytest.raises(PreconditionViolation):
            run_berry_loop(P, LoopSpec(radius=0.05, windings=1))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            LoopSpec(radius=-1.0)
        with pytest.raises(ValueError):
            LoopSpec(radius=1e-5, n_steps=16)
        with pytest.raises(ValueError):
            LoopSpec(radius=1e-5, alphas=(1.0, 0.0))


class TestCaseAsymptoticPhase:
    def test_factor_is_i_both_directions(self):
        spec = LoopSpec(radius=1e-5 * LBP, windings=1)
        for direction in (1, -1):
            f = case_asymptotic_phase(direction, P, spec)
            assert abs(f - 1j) < 1e-3

    def test_invalid_direction(self):
        spec = LoopSpec(radius=1e-5 * LBP, windings=1)
        with pytest.raises(ValueError):
            case_asymptotic_phase(0, P, spec)
