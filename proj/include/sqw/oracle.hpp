#pragma once

// Brute-force reference implementations. Nothing here calls into the
// analytic 2x2 rotation used by the walk; tests compare the two.

#include "sqw/error.hpp"
#include "sqw/graph.hpp"
#include "sqw/walk.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace sqw::oracle {

inline constexpr std::size_t max_dense_dimension = 256;
inline constexpr std::size_t max_evolve_dimension = 64;

class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, Amplitude{0.0, 0.0}) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    Amplitude &operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const Amplitude &operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    friend DenseMatrix operator*(const DenseMatrix &x, const DenseMatrix &y) {
        DenseMatrix z(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i) {
            for (std::size_t k = 0; k < x.n_; ++k) {
                const Amplitude xik = x(i, k);
                if (xik == Amplitude{}) {
                    continue;
                }
                for (std::size_t j = 0; j < x.n_; ++j) {
                    z(i, j) += xik * y(k, j);
                }
            }
        }
        return z;
    }

    friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix &y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) {
            x.a_[i] += y.a_[i];
        }
        return x;
    }

    friend DenseMatrix operator*(Amplitude s, DenseMatrix x) {
        for (auto &v : x.a_) {
            v *= s;
        }
        return x;
    }

    [[nodiscard]] std::vector<Amplitude> apply(const std::vector<Amplitude> &v) const {
        std::vector<Amplitude> out(n_, Amplitude{0.0, 0.0});
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                out[i] += (*this)(i, j) * v[j];
            }
        }
        return out;
    }

    /// Maximum absolute column sum.
    [[nodiscard]] double norm1() const {
        double best = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                s += std::abs((*this)(i, j));
            }
            best = std::max(best, s);
        }
        return best;
    }

    [[nodiscard]] double max_abs_diff(const DenseMatrix &o) const {
        double d = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            d = std::max(d, std::abs(a_[i] - o.a_[i]));
        }
        return d;
    }

  private:
    std::size_t n_ = 0;
    std::vector<Amplitude> a_;
};

inline DenseMatrix dense_hamiltonian(const HamiltonianSpec &h) {
    if (h.dimension > max_dense_dimension) {
        throw DomainError("dense oracle limited to N <= " + std::to_string(max_dense_dimension));
    }
    DenseMatrix m(h.dimension);
    // 2|a><a| - I with |a> = (|i> + |j>)/sqrt(2) is sigma_x on {i, j}
    for (const auto &[i, j] : h.pairs) {
        m(i, j) = 1.0;
        m(j, i) = 1.0;
    }
    // |a> = |i>  gives  2|i><i| - |i><i| = |i><i|
    for (Node v : h.singletons) {
        m(v, v) = 1.0;
    }
    return m;
}

/// Generator G with U = exp(i theta G). Under the physical convention the
/// singleton diagonal is dropped.
inline DenseMatrix dense_generator(const HamiltonianSpec &h, Convention convention) {
    DenseMatrix m = dense_hamiltonian(h);
    if (convention == Convention::physical) {
        for (Node v : h.singletons) {
            m(v, v) = 0.0;
        }
    }
    return m;
}

/**
 * @brief exp(scalar * m) by scaling and squaring around a truncated Taylor
 * series.
 *
 * The argument is scaled by 2^-s until its 1-norm is at most 1/2; the series
 * then stops once the next-term tail bound |t_k| * r / (1 - r) falls below
 * 1e-16, which keeps the total error well under 1e-13 after squaring.
 */
inline DenseMatrix taylor_expm(const DenseMatrix &m, Amplitude scalar,
                               std::size_t max_terms = 64) {
    if (m.size() > max_dense_dimension) {
        throw DomainError("dense oracle limited to N <= " + std::to_string(max_dense_dimension));
    }
    DenseMatrix a = scalar * m;
    const double norm = a.norm1();
    if (!std::isfinite(norm)) {
        throw NumericError("matrix exponential of non-finite matrix");
    }
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    a = Amplitude{std::ldexp(1.0, -squarings), 0.0} * a;

    const std::size_t n = m.size();
    DenseMatrix result = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    bool converged = false;
    for (std::size_t k = 1; k <= max_terms; ++k) {
        term = Amplitude{1.0 / static_cast<double>(k), 0.0} * (term * a);
        result = result + term;
        const double tail = term.norm1() * scaled / (1.0 - scaled);
        if (tail < 1e-16) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericError("Taylor series did not converge within " + std::to_string(max_terms) +
                           " terms");
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

/// Full one-step operator exp(i theta G_{d-1}) ... exp(i theta G_0).
inline DenseMatrix step_operator(std::size_t n, const TessellationSet &ts, double theta,
                                 Convention convention) {
    DenseMatrix u = DenseMatrix::identity(n);
    for (const auto &t : ts.tessellations) {
        const auto h = hamiltonian_from_partition(n, t);
        u = taylor_expm(dense_generator(h, convention), Amplitude{0.0, theta}) * u;
    }
    return u;
}

inline StateVector brute_force_evolve(const StateVector &state, const TessellationSet &ts,
                                      double theta, std::size_t steps,
                                      Convention convention = Convention::physical) {
    const std::size_t n = state.size();
    if (n > max_evolve_dimension) {
        throw DomainError("brute-force evolution limited to N <= " +
                          std::to_string(max_evolve_dimension));
    }
    const DenseMatrix u = step_operator(n, ts, theta, convention);
    std::vector<Amplitude> v(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t s = 0; s < steps; ++s) {
        v = u.apply(v);
    }
    return StateVector::adopt(std::move(v));
}

} // namespace sqw::oracle
