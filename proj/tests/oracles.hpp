// oracles.hpp — independent reference computations used only by the tests

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Bright-mode solution for K = 0, uniform r and a = b = c = 1/sqrt(3): the
// symmetric atomic combination B obeys B'' + lambda B' + R^2 B = 0 with B(0) = 1,
// B'(0) = 0, and each atom carries B / sqrt(3).
struct BrightMode {
    double rabi;
    double lambda;

    cplx bright(double t) const {
        const cplx d = std::sqrt(cplx(lambda * lambda - 4.0 * rabi * rabi, 0.0));
        const double env = std::exp(-lambda * t / 2.0);
        if (std::abs(d) < 1e-12) return env * (1.0 + lambda * t / 2.0);
        return env * (std::cosh(d * t / 2.0) + (lambda / d) * std::sinh(d * t / 2.0));
    }
    cplx atom(double t) const { return bright(t) / std::sqrt(3.0); }
    // b = i B' / R.
    cplx pseudomode(double t) const {
        const cplx d = std::sqrt(cplx(lambda * lambda - 4.0 * rabi * rabi, 0.0));
        const double env = std::exp(-lambda * t / 2.0);
        if (std::abs(d) < 1e-12) return cplx(0.0, -1.0) * rabi * t * env;
        return cplx(0.0, -2.0) * rabi * env * std::sinh(d * t / 2.0) / d;
    }
};

// Eq. form with the (d.r)(r.d)/r^2 contraction, straight vector arithmetic.
inline double dipole_constant(const std::array<double, 3>& d, const std::array<double, 3>& r) {
    double dd = 0, dr = 0, rr = 0;
    for (int i = 0; i < 3; ++i) {
        dd += d[i] * d[i];
        dr += d[i] * r[i];
        rr += r[i] * r[i];
    }
    return std::pow(rr, -1.5) * (dd - 3.0 * dr * dr / rr);
}

// Characteristic polynomial coefficients (monic, highest first) by Faddeev-LeVerrier.
inline std::vector<cplx> char_poly(const Eigen::MatrixXcd& a) {
    const auto n = a.rows();
    std::vector<cplx> c(n + 1);
    c[0] = 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[k - 1] * id;
        c[k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx v = 0.0;
    for (const auto& x : c) v = v * z + x;
    return v;
}

// Polynomial roots by Durand-Kerner iteration followed by Newton polishing.
inline std::vector<cplx> roots(const std::vector<cplx>& c) {
    const std::size_t n = c.size() - 1;
    double bound = 0.0;
    for (std::size_t i = 1; i <= n; ++i) bound = std::max(bound, std::abs(c[i]));
    bound += 1.0;
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = bound * std::pow(cplx(0.4, 0.9), static_cast<double>(i));
    for (int it = 0; it < 2000; ++it) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const cplx dz = horner(c, z[i]) / den;
            z[i] -= dz;
            change = std::max(change, std::abs(dz));
        }
        if (change < 1e-15 * bound) break;
    }
    std::vector<cplx> dc(n);
    for (std::size_t i = 0; i < n; ++i) dc[i] = c[i] * static_cast<double>(n - i);
    for (auto& r : z) {
        for (int it = 0; it < 5; ++it) {
            const cplx d = horner(dc, r);
            if (std::abs(d) < 1e-300) break;
            r -= horner(c, r) / d;
        }
    }
    return z;
}

inline std::vector<double> hermitian_eigs_by_char_poly(const Eigen::MatrixXcd& a) {
    auto z = roots(char_poly(a));
    std::vector<double> ev;
    for (const auto& r : z) ev.push_back(r.real());
    std::sort(ev.begin(), ev.end());
    return ev;
}

template <int N>
Eigen::Matrix<cplx, N, N> random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::Matrix<cplx, N, N> m;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = cplx(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

// Pure-state bipartite negativity from Schmidt coefficients: for a pure state
// with one-atom reduced state of eigenvalues s1, s2, N = sqrt(s1 s2).
// psi is indexed 4*q1 + 2*q2 + q3.
inline double pure_state_negativity(const Eigen::Matrix<cplx, 8, 1>& psi, int atom) {
    const int bit = 1 << (3 - atom);
    Eigen::Matrix2cd red = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if ((i & ~bit) == (j & ~bit)) {
                red((i & bit) ? 1 : 0, (j & bit) ? 1 : 0) += psi(i) * std::conj(psi(j));
            }
    const double tr = red.trace().real();
    const double det = (red(0, 0) * red(1, 1) - red(0, 1) * red(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double s1 = tr / 2.0 + disc;
    const double s2 = std::max(0.0, tr / 2.0 - disc);
    return std::sqrt(s1 * s2);
}

}  // namespace oracle
