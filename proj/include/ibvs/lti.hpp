#pragma once

// Rational transfer-function algebra, controllable-canonical realization,
// fixed-step RK4 integration of realized blocks, and 6x6 SVD. Everything the
// controller blocks are built from.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/SVD>

#include "ibvs/common.hpp"

namespace ibvs {

using Complex = std::complex<double>;

namespace poly {

// Coefficients ascending in powers of s: p[0] + p[1] s + p[2] s^2 + ...

inline std::vector<double> trim(std::vector<double> p) {
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    return p;
}

inline std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline Complex eval(const std::vector<double>& p, Complex s) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * s + p[i];
    return acc;
}

// Real-coefficient polynomial with the given roots (complex roots must come
// in conjugate pairs). Used by tests to build random stable denominators.
inline std::vector<double> from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> acc{Complex(1.0, 0.0)};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] -= r * acc[i];
            next[i + 1] += acc[i];
        }
        acc = std::move(next);
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].real();
    return out;
}

} // namespace poly

// Proper scalar transfer function num(s)/den(s), coefficients ascending in
// powers of s. Canonical form: denominator leading coefficient is 1.
class RationalSiso {
public:
    RationalSiso() : num_{0.0}, den_{1.0} {}

    RationalSiso(std::vector<double> num, std::vector<double> den)
        : num_(poly::trim(std::move(num))), den_(poly::trim(std::move(den))) {
        if (den_.empty() || (den_.size() == 1 && den_[0] == 0.0))
            throw ConfigError("RationalSiso: zero denominator");
        for (double c : num_)
            if (!std::isfinite(c)) throw ConfigError("RationalSiso: non-finite numerator coefficient");
        for (double c : den_)
            if (!std::isfinite(c)) throw ConfigError("RationalSiso: non-finite denominator coefficient");
        if (num_.size() > den_.size())
            throw ConfigError("RationalSiso: improper transfer function (deg num > deg den)");
        const double lead = den_.back();
        for (double& c : num_) c /= lead;
        for (double& c : den_) c /= lead;
        den_.back() = 1.0;
    }

    static RationalSiso constant(double k) { return RationalSiso({k}, {1.0}); }

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }
    int degree_num() const { return static_cast<int>(num_.size()) - 1; }
    int degree_den() const { return static_cast<int>(den_.size()) - 1; }

    double dc_gain() const { return num_[0] / den_[0]; }

private:
    std::vector<double> num_;
    std::vector<double> den_;
};

// Product of two transfer functions. No pole-zero cancellation is performed;
// cancellations are checked by frequency-response tests instead.
inline RationalSiso series(const RationalSiso& a, const RationalSiso& b) {
    return RationalSiso(poly::mul(a.num(), b.num()), poly::mul(a.den(), b.den()));
}

// Closed loop L/(1+L) of a loop transfer function under unity negative feedback.
inline RationalSiso unity_feedback(const RationalSiso& loop) {
    return RationalSiso(loop.num(), poly::add(loop.den(), loop.num()));
}

// num(jw)/den(jw).
inline Complex freq_response(const RationalSiso& tf, double omega) {
    const Complex s(0.0, omega);
    const Complex d = poly::eval(tf.den(), s);
    if (std::abs(d) == 0.0)
        throw NumericError("freq_response: pole on the imaginary axis at omega=" + std::to_string(omega));
    return poly::eval(tf.num(), s) / d;
}

// Controllable-canonical realization of a proper transfer function, stepped
// with classical RK4 under zero-order-held input.
class StateSpaceBlock {
public:
    StateSpaceBlock() : D_(0.0) {}

    StateSpaceBlock(Eigen::MatrixXd A, Eigen::VectorXd B, Eigen::VectorXd C, double D)
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(D),
          x_(Eigen::VectorXd::Zero(A_.rows())) {}

    int order() const { return static_cast<int>(A_.rows()); }
    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& B() const { return B_; }
    const Eigen::VectorXd& C() const { return C_; }
    double D() const { return D_; }
    const Eigen::VectorXd& state() const { return x_; }
    void set_state(const Eigen::VectorXd& x) { x_ = x; }

    double output(double u) const {
        return (order() == 0 ? 0.0 : C_.dot(x_)) + D_ * u;
    }

    // One RK4 step of x' = Ax + Bu with u held over [t, t+dt]; returns the
    // output evaluated at the new state.
    double step(double u, double dt) {
        if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
        if (!std::isfinite(u)) throw NumericError("step: non-finite input");
        if (order() > 0) {
            const Eigen::VectorXd bu = B_ * u;
            const Eigen::VectorXd k1 = A_ * x_ + bu;
            const Eigen::VectorXd k2 = A_ * (x_ + 0.5 * dt * k1) + bu;
            const Eigen::VectorXd k3 = A_ * (x_ + 0.5 * dt * k2) + bu;
            const Eigen::VectorXd k4 = A_ * (x_ + dt * k3) + bu;
            x_ += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!x_.allFinite()) throw NumericError("step: state diverged");
        }
        return output(u);
    }

    // Puts the block at the equilibrium for constant input u0 (x = -A^{-1}Bu0),
    // so the next outputs hold dc_gain*u0 until the input changes.
    void init_steady_state(double u0) {
        if (order() == 0) return;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A_);
        if (!lu.isInvertible())
            throw ConfigError("init_steady_state: block has a pole at s=0");
        x_ = -lu.solve(B_ * u0);
    }

    // C (jwI - A)^{-1} B + D.
    Complex freq_response(double omega) const {
        if (order() == 0) return Complex(D_, 0.0);
        Eigen::MatrixXcd M = Complex(0.0, omega) * Eigen::MatrixXcd::Identity(order(), order())
                             - A_.cast<Complex>();
        Eigen::VectorXcd sol = M.fullPivLu().solve(B_.cast<Complex>());
        return C_.cast<Complex>().dot(sol.conjugate()) + D_;
    }

private:
    Eigen::MatrixXd A_;
    Eigen::VectorXd B_;
    Eigen::VectorXd C_;
    double D_;
    Eigen::VectorXd x_;
};

// Controllable canonical form; state initialized to zero. Rejects improper
// transfer functions (already enforced by RationalSiso construction).
inline StateSpaceBlock realize(const RationalSiso& tf) {
    const int n = tf.degree_den();
    const std::vector<double>& a = tf.den(); // a[n] == 1 after canonicalization
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t i = 0; i < tf.num().size(); ++i) b[i] = tf.num()[i];

    const double D = b[static_cast<std::size_t>(n)];
    if (n == 0) return StateSpaceBlock(Eigen::MatrixXd(0, 0), Eigen::VectorXd(0), Eigen::VectorXd(0), D);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) A(n - 1, j) = -a[static_cast<std::size_t>(j)];
    Eigen::VectorXd B = Eigen::VectorXd::Zero(n);
    B(n - 1) = 1.0;
    Eigen::VectorXd C(n);
    for (int j = 0; j < n; ++j) C(j) = b[static_cast<std::size_t>(j)] - D * a[static_cast<std::size_t>(j)];
    return StateSpaceBlock(std::move(A), std::move(B), std::move(C), D);
}

struct SvdResult {
    Matrix6 U;
    Vector6 sigma; // descending, all >= 0
    Matrix6 V;
};

// Full SVD of a 6x6 matrix, M = U diag(sigma) V^T. Deterministic sign
// convention: the largest-magnitude entry of each U column is non-negative.
inline SvdResult svd6(const Matrix6& m) {
    if (!m.allFinite()) throw NumericError("svd6: non-finite entries");
    Eigen::JacobiSVD<Matrix6> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult r{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    for (int j = 0; j < 6; ++j) {
        int imax = 0;
        r.U.col(j).cwiseAbs().maxCoeff(&imax);
        if (r.U(imax, j) < 0.0) {
            r.U.col(j) = -r.U.col(j);
            r.V.col(j) = -r.V.col(j);
        }
    }
    return r;
}

} // namespace ibvs
