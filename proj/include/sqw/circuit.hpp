#pragma once

#include "sqw/error.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace sqw::circuit {

/// Transmission-line resonators coupled through flux-tunable SQUIDs at their
/// centres. All fields in SI units.
struct CircuitParams {
    double c = 0.0;      ///< capacitance per length (F/m)
    double l = 0.0;      ///< inductance per length (H/m)
    double L = 0.0;      ///< resonator half-length (m)
    double C_J = 0.0;    ///< junction capacitance (F)
    double E_J = 0.0;    ///< Josephson energy (J)
    double Phi0 = 0.0;   ///< flux quantum (Wb)

    /// 50 Ohm line (c = 1e-10 F/m, l = 2.5e-7 H/m), 1 cm half-length, 1 fF junction.
    static CircuitParams reference() {
        return {1e-10, 2.5e-7, 1e-2, 1e-15, 6.6262e-24, 2.0679e-15};
    }

    void validate() const {
        const double fields[] = {c, l, L, C_J, E_J, Phi0};
        const char *names[] = {"c", "l", "L", "C_J", "E_J", "Phi0"};
        for (std::size_t i = 0; i < 6; ++i) {
            // C_J = 0 is a bare resonator pair with no capacitive coupling
            const bool allow_zero = i == 3;
            if (!std::isfinite(fields[i]) || fields[i] < 0.0 || (fields[i] == 0.0 && !allow_zero)) {
                throw DomainError(std::string("circuit parameter ") + names[i] +
                                  (allow_zero ? " must be finite and >= 0" : " must be finite and > 0"));
            }
        }
    }

    /// Phase velocity 1/sqrt(lc) in m/s.
    [[nodiscard]] double wave_speed() const { return 1.0 / std::sqrt(l * c); }
};

struct ChiPair {
    double chi_c = 0.0; ///< C_J / (2Lc)
    double chi_l = 0.0; ///< E_n * (2Ll), signed
};

/// kL is dimensionless; omega is in rad/s when solved with CircuitParams and
/// in units of v/L (so omega == kL) otherwise. u(0) = A.
struct ModeSolution {
    double kL = 0.0;
    double omega = 0.0;
    double A = 0.0;
    std::size_t mode_index = 0;
};

struct CouplingResult {
    double kappa_cap = 0.0;
    double kappa_ind = 0.0;
    double kappa_total = 0.0; ///< -kappa_ind + kappa_cap
};

/// E_n = (4 pi^2 / Phi0^2) E_J cos(pi Phi_ext / Phi0).
inline double josephson_coefficient(double flux_ratio, const CircuitParams &p) {
    constexpr double pi = std::numbers::pi;
    return 4.0 * pi * pi / (p.Phi0 * p.Phi0) * p.E_J * std::cos(pi * flux_ratio);
}

inline ChiPair chi_from_params(const CircuitParams &p, double josephson_coeff) {
    return {p.C_J / (2.0 * p.L * p.c), josephson_coeff * (2.0 * p.L * p.l)};
}

/// |chi_l|_max, reached at Phi_ext = 0 or Phi0.
inline double chi_l_max(const CircuitParams &p) {
    return chi_from_params(p, josephson_coefficient(0.0, p)).chi_l;
}

/// E_J needed for |chi_l|_max to reach @p target_chi_l.
inline double required_josephson_energy(const CircuitParams &p, double target_chi_l) {
    return p.E_J * target_chi_l / chi_l_max(p);
}

/// tan(kL) + 4 chi_c kL - (chi_l_left + chi_l_right) / (2kL); zero at a mode.
inline double mode_residual(double kL, double chi_c, double chi_l_sum) {
    return std::tan(kL) + 4.0 * chi_c * kL - chi_l_sum / (2.0 * kL);
}

/**
 * @brief Normalisation amplitude A = u(0) of a resonator mode.
 *
 * The mode is u(x) = A (cos kx + t sin k|x|) with t = B/A = tan(kL), and A is
 * fixed by (c/2) int_{-L}^{L} u^2 dx + 2 C_J u(0)^2 = Lc/2. Divided by Lc/2
 * this reads A^2 [ (2/L) int_0^L (cos kx + t sin kx)^2 dx + 8 chi_c ] = 1.
 */
inline double normalization_amplitude(double kL, double chi_c) {
    if (!(kL > 0.0)) {
        throw DomainError("normalization needs kL > 0");
    }
    const double t = std::tan(kL);
    const double s2 = std::sin(2.0 * kL);
    const double c2 = std::cos(2.0 * kL);
    const double overlap =
        1.0 + s2 / (2.0 * kL) + t * t * (1.0 - s2 / (2.0 * kL)) + t * (1.0 - c2) / kL;
    const double denom = overlap + 8.0 * chi_c;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw NumericError("normalization integral is not positive at kL = " +
                           std::to_string(kL));
    }
    return 1.0 / std::sqrt(denom);
}

namespace detail {

inline constexpr std::size_t samples_per_branch = 256;
inline constexpr double bisect_width = 1e-6;
inline constexpr double polish_tolerance = 1e-12;
inline constexpr double residual_limit = 1e-10;

inline double mode_residual_slope(double kL, double chi_c, double chi_l_sum) {
    const double sec = 1.0 / std::cos(kL);
    return sec * sec + 4.0 * chi_c + chi_l_sum / (2.0 * kL * kL);
}

/// Bisect [a, b] (sign change) to bisect_width, then Newton-polish inside the bracket.
inline double refine_root(double a, double b, double chi_c, double sum) {
    double fa = mode_residual(a, chi_c, sum);
    while (b - a > bisect_width) {
        const double m = 0.5 * (a + b);
        const double fm = mode_residual(m, chi_c, sum);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 100; ++it) {
        const double fx = mode_residual(x, chi_c, sum);
        if (std::abs(fx) < polish_tolerance) {
            break;
        }
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        double next = x - fx / mode_residual_slope(x, chi_c, sum);
        if (!(next > a && next < b)) {
            next = 0.5 * (a + b);
        }
        if (next == x) {
            break;
        }
        x = next;
    }
    return x;
}

/// Roots of the mode equation inside (lo, hi), in increasing order.
inline std::vector<double> branch_roots(double lo, double hi, double chi_c, double sum) {
    std::vector<double> roots;
    const double margin = 1e-10 * (hi - lo);
    double prev_x = lo + margin;
    double prev_f = mode_residual(prev_x, chi_c, sum);
    for (std::size_t i = 1; i <= samples_per_branch; ++i) {
        const double x = lo + margin + (hi - lo - 2.0 * margin) * static_cast<double>(i) /
                                           static_cast<double>(samples_per_branch);
        const double f = mode_residual(x, chi_c, sum);
        if (f == 0.0) {
            roots.push_back(x);
        } else if (prev_f != 0.0 && (f < 0.0) != (prev_f < 0.0)) {
            roots.push_back(refine_root(prev_x, x, chi_c, sum));
        }
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

} // namespace detail

/**
 * @brief The @p mode_index-th positive root of
 * tan(kL) = -4 chi_c kL + (chi_l_left + chi_l_right) / (2kL).
 *
 * Each tan-branch ((m - 1/2) pi, (m + 1/2) pi) is scanned for sign changes,
 * bisected to 1e-6 and polished to |f| < 1e-12 with safeguarded Newton
 * steps. When chi_l_left + chi_l_right > 0 an extra low mode lives in
 * (0, pi/2) and is counted first.
 */
inline ModeSolution solve_mode(double chi_c, double chi_l_left, double chi_l_right,
                               std::size_t mode_index) {
    constexpr double pi = std::numbers::pi;
    if (mode_index < 1) {
        throw DomainError("mode index must be >= 1");
    }
    if (!std::isfinite(chi_c) || !std::isfinite(chi_l_left) || !std::isfinite(chi_l_right) ||
        chi_c < 0.0) {
        throw DomainError("mode equation needs finite chi values with chi_c >= 0");
    }
    const double sum = chi_l_left + chi_l_right;
    std::size_t found = 0;
    for (std::size_t branch = 0; branch <= mode_index + 1; ++branch) {
        const double lo = branch == 0 ? 0.0 : (static_cast<double>(branch) - 0.5) * pi;
        const double hi = (static_cast<double>(branch) + 0.5) * pi;
        for (double root : detail::branch_roots(lo, hi, chi_c, sum)) {
            if (++found == mode_index) {
                const double res = mode_residual(root, chi_c, sum);
                if (!(std::abs(res) < detail::residual_limit)) {
                    std::ostringstream msg;
                    msg << "mode " << mode_index << " in branch " << branch << " (" << lo << ", "
                        << hi << ") did not converge: kL = " << root << ", residual = " << res;
                    throw NumericError(msg.str());
                }
                return {root, root, normalization_amplitude(root, chi_c), mode_index};
            }
        }
    }
    std::ostringstream msg;
    msg << "no root for mode " << mode_index << " (chi_c = " << chi_c
        << ", chi_l sum = " << sum << "); found " << found << " roots in the first "
        << mode_index + 2 << " branches";
    throw NumericError(msg.str());
}

/// As above, with omega = kL / (L sqrt(lc)) in rad/s.
inline ModeSolution solve_mode(const CircuitParams &p, double chi_l_left, double chi_l_right,
                               std::size_t mode_index) {
    p.validate();
    auto m = solve_mode(chi_from_params(p, 0.0).chi_c, chi_l_left, chi_l_right, mode_index);
    m.omega = m.kL * p.wave_speed() / p.L;
    return m;
}

/// Capacitive and inductive couplings through one SQUID linking two modes.
inline CouplingResult couplings(const ModeSolution &n, const ModeSolution &m, double chi_c,
                                double chi_l_link) {
    const double scale = n.A * m.A * std::sqrt(n.omega * m.omega);
    CouplingResult r;
    r.kappa_cap = 2.0 * chi_c * scale;
    r.kappa_ind = chi_l_link / (2.0 * n.kL * m.kL) * scale;
    r.kappa_total = -r.kappa_ind + r.kappa_cap;
    return r;
}

/// Raised when the off-state chi_l exceeds what the junction can reach.
class UnreachableFlux : public DomainError {
  public:
    UnreachableFlux(double target_chi_l, double chi_l_max)
        : DomainError(message(target_chi_l, chi_l_max)), target_chi_l_(target_chi_l),
          chi_l_max_(chi_l_max) {}

    /// |chi_l|_max needed to switch the coupling off.
    [[nodiscard]] double required_chi_l_max() const noexcept { return target_chi_l_; }
    [[nodiscard]] double available_chi_l_max() const noexcept { return chi_l_max_; }

  private:
    static std::string message(double target, double max) {
        std::ostringstream s;
        s << "off-state needs chi_l = " << target << " but |chi_l|_max = " << max
          << "; raise E_J by a factor of at least " << target / max;
        return s.str();
    }

    double target_chi_l_;
    double chi_l_max_;
};

/// Phi_off / Phi0 at which the inductive coupling cancels the capacitive one,
/// i.e. chi_l = 4 chi_c (kL)^2.
inline double solve_flux_off(double chi_c, double kL, double chi_l_max_value) {
    if (!(chi_l_max_value > 0.0)) {
        throw DomainError("chi_l_max must be > 0");
    }
    const double target = 4.0 * chi_c * kL * kL;
    if (target > chi_l_max_value) {
        throw UnreachableFlux(target, chi_l_max_value);
    }
    return std::acos(target / chi_l_max_value) / std::numbers::pi;
}

/**
 * @brief Interval tau with kappa * tau = theta.
 *
 * With @p reduce the smallest positive tau with kappa * tau = theta (mod 2pi)
 * is returned instead; theta = 0 (mod 2pi) then maps to one full period.
 */
inline double pulse_duration(double theta, double kappa_total, bool reduce = false) {
    if (kappa_total == 0.0 || !std::isfinite(kappa_total)) {
        throw DomainError("pulse duration undefined for zero coupling");
    }
    if (!reduce) {
        return theta / kappa_total;
    }
    const double period = 2.0 * std::numbers::pi / std::abs(kappa_total);
    double tau = std::fmod(theta / kappa_total, period);
    if (tau <= 0.0) {
        tau += period;
    }
    return tau;
}

/**
 * @brief Frequencies, couplings and switching fluxes for identical resonators
 * with @p squids resonator-to-resonator couplers each.
 *
 * all_on: every SQUID at Phi_on = Phi0. switched: one SQUID on and the rest
 * at Phi_off, solved self-consistently because the off-state chi_l depends on
 * kL of the switched mode.
 */
struct OperatingPoint {
    std::size_t squids = 2;
    double chi_c = 0.0;
    double chi_l_max = 0.0;

    ModeSolution all_on;
    CouplingResult all_on_coupling;

    ModeSolution switched;
    double chi_l_off = 0.0;
    double cos_off = 0.0;   ///< cos(pi Phi_off / Phi0)
    double flux_on = 1.0;   ///< Phi_on / Phi0
    double flux_off = 0.5;  ///< Phi_off / Phi0
    CouplingResult on_coupling;
    CouplingResult off_coupling;
};

inline OperatingPoint solve_operating_point(const CircuitParams &p, std::size_t squids = 2) {
    p.validate();
    if (squids < 1) {
        throw DomainError("each resonator needs at least one SQUID");
    }
    OperatingPoint op;
    op.squids = squids;
    const double max = chi_l_max(p);
    op.chi_c = chi_from_params(p, 0.0).chi_c;
    op.chi_l_max = max;
    const double chi_on = chi_from_params(p, josephson_coefficient(op.flux_on, p)).chi_l;
    const double others = static_cast<double>(squids - 1);

    op.all_on = solve_mode(p, chi_on * others, chi_on, 1);
    op.all_on_coupling = couplings(op.all_on, op.all_on, op.chi_c, chi_on);

    double kL = op.all_on.kL;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double off = 4.0 * op.chi_c * kL * kL;
        if (off > max) {
            throw UnreachableFlux(off, max);
        }
        const double next = solve_mode(p, others * off, chi_on, 1).kL;
        if (std::abs(next - kL) < 1e-14) {
            kL = next;
            converged = true;
            break;
        }
        kL = next;
    }
    if (!converged) {
        throw NumericError("switched operating point did not converge");
    }
    op.chi_l_off = 4.0 * op.chi_c * kL * kL;
    op.switched = solve_mode(p, others * op.chi_l_off, chi_on, 1);
    op.flux_off = solve_flux_off(op.chi_c, op.switched.kL, max);
    op.cos_off = std::cos(std::numbers::pi * op.flux_off);
    op.on_coupling = couplings(op.switched, op.switched, op.chi_c, chi_on);
    const double chi_off_at_flux =
        chi_from_params(p, josephson_coefficient(op.flux_off, p)).chi_l;
    op.off_coupling = couplings(op.switched, op.switched, op.chi_c, chi_off_at_flux);
    return op;
}

inline constexpr double switching_budget_s = 0.1e-6;
inline constexpr double photon_lifetime_s = 100e-6;
inline constexpr double nominal_coupling_hz = 10e6;

/// Human-readable notes where a run departs from the hardware timescales
/// (0.1 us switching, ~100 us photon lifetime, ~10 MHz coupling).
inline std::vector<std::string> feasibility_warnings(double tau_s, double total_s,
                                                     double kappa_rad_s) {
    std::vector<std::string> out;
    std::ostringstream s;
    if (tau_s < switching_budget_s) {
        s << "pulse interval tau = " << tau_s
          << " s is shorter than the 0.1 us flux switching budget";
        out.push_back(s.str());
        s.str("");
    }
    if (total_s > photon_lifetime_s) {
        s << "total evolution time " << total_s
          << " s exceeds the ~100 us single-photon lifetime";
        out.push_back(s.str());
        s.str("");
    }
    const double hz = std::abs(kappa_rad_s) / (2.0 * std::numbers::pi);
    if (hz > 10.0 * nominal_coupling_hz || hz < 0.1 * nominal_coupling_hz) {
        s << "coupling kappa/2pi = " << hz / 1e6
          << " MHz is far from the ~10 MHz coupling scale";
        out.push_back(s.str());
    }
    return out;
}

} // namespace sqw::circuit
