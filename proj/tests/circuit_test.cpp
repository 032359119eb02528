#include "sqw/circuit.hpp"
#include "sqw/circuit_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sqw;
using namespace sqw::circuit;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double chi_c_ref = 0.5e-3;
constexpr double chi_l_max_ref = 0.3059;

ModeSolution fixed_mode(double kL, double A) { return {kL, 1.0, A, 1}; }

bool contains(const std::vector<std::string> &v, const std::string &needle) {
    for (const auto &s : v) {
        if (s.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST(JosephsonCoefficient, Examples) {
    const auto p = CircuitParams::reference();
    const double max = 4 * pi * pi / (p.Phi0 * p.Phi0) * p.E_J;
    EXPECT_NEAR(josephson_coefficient(0.5, p) / max, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(josephson_coefficient(1.0, p), -max);
    EXPECT_NEAR(chi_from_params(p, josephson_coefficient(0.4801, p)).chi_l, 0.0191, 2e-4);
}

TEST(JosephsonCoefficient, EvenAndTwoPeriodic) {
    const auto p = CircuitParams::reference();
    for (double f = -2.0; f <= 2.0; f += 0.05) {
        const double e = josephson_coefficient(f, p);
        EXPECT_NEAR(josephson_coefficient(-f, p), e, 1e-12 * std::abs(josephson_coefficient(0, p)));
        EXPECT_NEAR(josephson_coefficient(f + 2.0, p), e,
                    1e-12 * std::abs(josephson_coefficient(0, p)));
    }
}

TEST(ChiFromParams, ReferenceConstants) {
    const auto p = CircuitParams::reference();
    EXPECT_NEAR(chi_from_params(p, 0.0).chi_c, 0.5e-3, 1e-18);
    EXPECT_NEAR(chi_from_params(p, josephson_coefficient(1.0, p)).chi_l, -0.3059, 5e-5);
    EXPECT_EQ(chi_from_params(p, 0.0).chi_l, 0.0);
    EXPECT_NEAR(chi_l_max(p), 0.3059, 5e-5);
}

TEST(SolveMode, BothCouplingsOn) {
    auto m = solve_mode(chi_c_ref, -chi_l_max_ref, -chi_l_max_ref, 1);
    EXPECT_NEAR(m.kL, 3.0351, 5e-4);
    EXPECT_LT(std::abs(mode_residual(m.kL, chi_c_ref, -2 * chi_l_max_ref)), 1e-10);
}

TEST(SolveMode, OneOnOneOff) {
    auto m = solve_mode(chi_c_ref, -chi_l_max_ref, 0.0191, 1);
    EXPECT_NEAR(m.kL, 3.089, 1e-3);
}

TEST(SolveMode, BareResonatorIsPi) {
    EXPECT_NEAR(solve_mode(0.0, 0.0, 0.0, 1).kL, pi, 1e-12);
    EXPECT_NEAR(solve_mode(0.0, 0.0, 0.0, 3).kL, 3 * pi, 1e-11);
}

TEST(SolveMode, PositiveInductiveSumAddsLowMode) {
    // tan x = 0.1 / x has a root below pi/2; it is the first mode
    auto low = solve_mode(0.0, 0.1, 0.1, 1);
    EXPECT_GT(low.kL, 0.0);
    EXPECT_LT(low.kL, pi / 2);
    EXPECT_NEAR(std::tan(low.kL) * low.kL, 0.1, 1e-12);
    auto next = solve_mode(0.0, 0.1, 0.1, 2);
    EXPECT_GT(next.kL, pi / 2);
    EXPECT_LT(next.kL, 3 * pi / 2);
}

TEST(SolveMode, RootsSatisfyEquationAndIncrease) {
    for (double chi_c : {0.0, 1e-4, 0.5e-3, 5e-3, 0.05}) {
        for (double sum : {-1.2, -0.6118, -0.1, 0.0, 0.05, 0.4}) {
            double prev = 0.0;
            for (std::size_t mode = 1; mode <= 6; ++mode) {
                auto m = solve_mode(chi_c, sum / 2, sum / 2, mode);
                EXPECT_LT(std::abs(mode_residual(m.kL, chi_c, sum)), 1e-10)
                    << chi_c << " " << sum << " " << mode;
                EXPECT_GT(m.kL, prev);
                prev = m.kL;
            }
        }
    }
}

TEST(SolveMode, RejectsBadInput) {
    EXPECT_THROW(solve_mode(chi_c_ref, 0.0, 0.0, 0), DomainError);
    EXPECT_THROW(solve_mode(NAN, 0.0, 0.0, 1), DomainError);
    EXPECT_THROW(solve_mode(-1.0, 0.0, 0.0, 1), DomainError);
}

TEST(SolveMode, OmegaFromParams) {
    const auto p = CircuitParams::reference();
    auto m = solve_mode(p, -chi_l_max(p), -chi_l_max(p), 1);
    EXPECT_NEAR(m.omega, m.kL * 2e8 / 1e-2, 1e-6 * m.omega);
}

TEST(NormalizationAmplitude, ReferenceModeIsAboutOnePointZeroOne) {
    const double sum = -2 * chi_l_max_ref;
    auto m = solve_mode(chi_c_ref, sum / 2, sum / 2, 1);
    const double a = normalization_amplitude(m.kL, chi_c_ref);
    EXPECT_GE(a, 1.005);
    EXPECT_LE(a, 1.015);
    EXPECT_NEAR(a, fixtures::quadrature_amplitude(m.kL, chi_c_ref, sum), 1e-8);
    EXPECT_EQ(m.A, a);
}

TEST(NormalizationAmplitude, MatchesOpenEndQuadratureAtFixedKL) {
    EXPECT_NEAR(normalization_amplitude(3.0351, chi_c_ref),
                fixtures::quadrature_amplitude_open_end(3.0351, chi_c_ref), 1e-8);
    for (double kL : {0.4, 1.3, 2.2, 3.0351, 4.0, 6.2, 9.1}) {
        for (double chi_c : {0.0, 0.5e-3, 0.01}) {
            EXPECT_NEAR(normalization_amplitude(kL, chi_c),
                        fixtures::quadrature_amplitude_open_end(kL, chi_c), 1e-8)
                << kL << " " << chi_c;
        }
    }
}

TEST(NormalizationAmplitude, PureCosineMode) {
    const double quad = fixtures::quadrature_amplitude(pi, 0.0, 0.0);
    EXPECT_NEAR(quad, 1.0, 1e-10);
    EXPECT_NEAR(normalization_amplitude(pi, 0.0), quad, 1e-8);
}

TEST(NormalizationAmplitude, AgreesWithQuadratureAcrossModes) {
    for (double chi_c : {0.0, 0.5e-3, 2e-3, 0.02}) {
        for (double sum : {-0.6118, -0.2868, 0.0, 0.3}) {
            for (std::size_t mode = 1; mode <= 4; ++mode) {
                auto m = solve_mode(chi_c, sum / 2, sum / 2, mode);
                EXPECT_NEAR(m.A, fixtures::quadrature_amplitude(m.kL, chi_c, sum), 1e-8)
                    << chi_c << " " << sum << " " << mode;
            }
        }
    }
}

TEST(NormalizationAmplitude, DecreasesWhenJunctionCapacitanceDoubles) {
    const double sum = -2 * chi_l_max_ref;
    double prev = fixtures::quadrature_amplitude(solve_mode(0.125e-3, sum / 2, sum / 2, 1).kL,
                                                 0.125e-3, sum);
    for (double chi_c = 0.25e-3; chi_c <= 8e-3; chi_c *= 2) {
        auto m = solve_mode(chi_c, sum / 2, sum / 2, 1);
        const double a = fixtures::quadrature_amplitude(m.kL, chi_c, sum);
        EXPECT_LT(a, prev) << chi_c;
        EXPECT_LT(normalization_amplitude(m.kL, chi_c), normalization_amplitude(m.kL, chi_c / 2));
        prev = a;
    }
    EXPECT_THROW(normalization_amplitude(0.0, chi_c_ref), DomainError);
}

TEST(Couplings, CapacitiveRatio) {
    auto m = fixed_mode(3.0351, 1.01);
    EXPECT_NEAR(couplings(m, m, chi_c_ref, -chi_l_max_ref).kappa_cap, 1.0201e-3, 1e-6);
}

TEST(Couplings, InductiveRatio) {
    auto m = fixed_mode(3.0351, 1.01);
    auto k = couplings(m, m, chi_c_ref, -chi_l_max_ref);
    EXPECT_NEAR(k.kappa_ind, -1.6939e-2, 2e-5);
    EXPECT_EQ(k.kappa_total, -k.kappa_ind + k.kappa_cap);
}

TEST(Couplings, CancelAtSwitchOffCondition) {
    auto m = fixed_mode(3.089, 1.0051);
    auto k = couplings(m, m, chi_c_ref, 4 * chi_c_ref * m.kL * m.kL);
    EXPECT_NEAR(k.kappa_total, 0.0, 1e-16);
}

TEST(Couplings, RatiosAreScaleFree) {
    const auto p = CircuitParams::reference();
    for (double f : {0.5, 3.0, 17.0}) {
        // scale c and l together; C_J and E_J compensate so the chi values stay put
        CircuitParams q{p.c * f, p.l * f, p.L, p.C_J * f, p.E_J / f, p.Phi0};
        auto a = solve_operating_point(p);
        auto b = solve_operating_point(q);
        EXPECT_NEAR(b.on_coupling.kappa_total / b.switched.omega,
                    a.on_coupling.kappa_total / a.switched.omega, 1e-12);
        EXPECT_NEAR(b.all_on_coupling.kappa_ind / b.all_on.omega,
                    a.all_on_coupling.kappa_ind / a.all_on.omega, 1e-12);
        EXPECT_NEAR(b.switched.omega * f, a.switched.omega, 1e-9 * a.switched.omega);
    }
}

TEST(SolveFluxOff, ReferenceConstants) {
    const double f = solve_flux_off(chi_c_ref, 3.089, chi_l_max(CircuitParams::reference()));
    EXPECT_NEAR(f, 0.4801, 5e-4);
}

TEST(SolveFluxOff, EdgeCases) {
    EXPECT_EQ(solve_flux_off(0.0, 3.1, 0.3), 0.5);
    const double kL = 3.089;
    EXPECT_EQ(solve_flux_off(chi_c_ref, kL, 4 * chi_c_ref * kL * kL), 0.0);
    try {
        solve_flux_off(chi_c_ref, kL, 0.01);
        FAIL() << "expected UnreachableFlux";
    } catch (const UnreachableFlux &e) {
        EXPECT_NEAR(e.required_chi_l_max(), 4 * chi_c_ref * kL * kL, 1e-15);
        EXPECT_NE(std::string(e.what()).find("raise E_J"), std::string::npos);
    }
}

TEST(PulseDuration, Examples) {
    EXPECT_EQ(pulse_duration(0.0, 1e9), 0.0);
    EXPECT_NEAR(pulse_duration(pi / 4, 1e9) / pulse_duration(pi / 3, 1e9), 0.75, 1e-15);
    EXPECT_THROW(pulse_duration(1.0, 0.0), DomainError);
}

TEST(PulseDuration, ReducedToSmallestPositiveInterval) {
    const double kappa = 2.0;
    EXPECT_NEAR(pulse_duration(pi / 3 + 4 * pi, kappa, true), pi / 6, 1e-12);
    EXPECT_NEAR(pulse_duration(-pi / 2, kappa, true), 3 * pi / 4, 1e-12);
    EXPECT_NEAR(pulse_duration(0.0, kappa, true), pi, 1e-15);
    // negative coupling: kappa * tau must still equal theta mod 2 pi
    const double tau = pulse_duration(pi / 3, -kappa, true);
    EXPECT_GT(tau, 0.0);
    EXPECT_NEAR(std::remainder(-kappa * tau - pi / 3, 2 * pi), 0.0, 1e-12);
}

TEST(OperatingPoint, ReferenceConstants) {
    const auto op = solve_operating_point(CircuitParams::reference());
    EXPECT_NEAR(op.all_on.kL, 3.0351, 5e-4);
    EXPECT_NEAR(op.switched.kL, 3.089, 1e-3);
    EXPECT_NEAR(op.chi_l_off, 0.0191, 2e-4);
    EXPECT_NEAR(op.cos_off, 0.0624, 5e-4);
    EXPECT_NEAR(op.flux_off, 0.4801, 5e-4);
    EXPECT_EQ(op.flux_on, 1.0);
    // switched configuration ratios: 0.6242 / 617.8077 and -10.0054 / 617.8077
    EXPECT_NEAR(op.on_coupling.kappa_cap / op.switched.omega, 0.6242 / 617.8077, 2e-6);
    EXPECT_NEAR(op.on_coupling.kappa_ind / op.switched.omega, -10.0054 / 617.8077, 2e-5);
    EXPECT_LT(std::abs(op.off_coupling.kappa_total) / op.switched.omega, 1e-10);
    EXPECT_GT(op.on_coupling.kappa_total, 0.0);
}

TEST(OperatingPoint, MoreSquidsShiftTheSwitchedMode) {
    const auto p = CircuitParams::reference();
    const auto two = solve_operating_point(p, 2);
    const auto four = solve_operating_point(p, 4);
    EXPECT_GT(four.switched.kL, two.switched.kL);
    EXPECT_LT(std::abs(four.off_coupling.kappa_total) / four.switched.omega, 1e-10);
    EXPECT_NO_THROW(solve_operating_point(p, 1));
    EXPECT_THROW(solve_operating_point(p, 0), DomainError);
}

TEST(OperatingPoint, WeakJunctionCannotSwitchOff) {
    auto p = CircuitParams::reference();
    p.E_J *= 0.01;
    EXPECT_THROW(solve_operating_point(p), UnreachableFlux);
}

TEST(Feasibility, ReferenceConstantsTriggerSwitchingWarning) {
    const auto op = solve_operating_point(CircuitParams::reference());
    const double kappa = op.on_coupling.kappa_total;
    const double tau = pulse_duration(pi / 3, kappa, true);
    auto w = feasibility_warnings(tau, 2 * tau, kappa);
    EXPECT_TRUE(contains(w, "0.1 us flux switching budget"));
    EXPECT_FALSE(contains(w, "lifetime"));
    EXPECT_TRUE(contains(feasibility_warnings(1e-6, 1e-3, 2 * pi * 10e6), "100 us single-photon lifetime"));
    EXPECT_TRUE(feasibility_warnings(1e-6, 1e-5, 2 * pi * 10e6).empty());
}

TEST(ParamsJson, RoundTripAndValidation) {
    const auto p = CircuitParams::reference();
    const auto q = parse_params_json(emit_params_json(p));
    EXPECT_EQ(q.c, p.c);
    EXPECT_EQ(q.E_J, p.E_J);
    EXPECT_EQ(q.Phi0, p.Phi0);
    EXPECT_THROW(parse_params_json(R"({"c": 1e-10})"), DomainError);
    EXPECT_THROW(parse_params_json(
                     R"({"c":1e-10,"l":2.5e-7,"L":-1,"C_J":1e-15,"E_J":6.6e-24,"Phi0":2e-15})"),
                 DomainError);
    EXPECT_THROW(parse_params_json("{"), DomainError);
}
