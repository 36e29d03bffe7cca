#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace capwhitham {

/**
 * Real 2pi-periodic trigonometric polynomial sum_{|k|<=n} c_k e^{ikx}, stored by
 * its nonnegative modes; c_{-k} = conj(c_k) and c_0 is real.
 */
template <class Real>
class TrigSeries {
public:
    using Complex = std::complex<Real>;

    TrigSeries() : modes_(1) {}
    explicit TrigSeries(int degree) : modes_(static_cast<std::size_t>(degree < 0 ? 0 : degree) + 1) {}

    int degree() const noexcept { return static_cast<int>(modes_.size()) - 1; }

    /// Coefficient of e^{ikx} for any integer k.
    Complex operator[](int k) const noexcept {
        if (k < 0) return std::conj((*this)[-k]);
        return k <= degree() ? modes_[static_cast<std::size_t>(k)] : Complex{};
    }
    Complex& mode(int k) { return modes_.at(static_cast<std::size_t>(k)); }
    const std::vector<Complex>& modes() const noexcept { return modes_; }

    Real evaluate(Real x) const {
        Real s = modes_[0].real();
        for (int k = 1; k <= degree(); ++k) {
            const Complex e(std::cos(k * x), std::sin(k * x));
            s += 2 * (modes_[static_cast<std::size_t>(k)] * e).real();
        }
        return s;
    }

    TrigSeries derivative() const {
        TrigSeries d(degree());
        for (int k = 1; k <= degree(); ++k) d.mode(k) = Complex(0, k) * (*this)[k];
        return d;
    }

    TrigSeries truncated(int n) const {
        TrigSeries t(n);
        for (int k = 0; k <= n && k <= degree(); ++k) t.mode(k) = (*this)[k];
        return t;
    }

    TrigSeries& operator+=(const TrigSeries& o) {
        if (o.degree() > degree()) modes_.resize(o.modes_.size());
        for (int k = 0; k <= o.degree(); ++k) modes_[static_cast<std::size_t>(k)] += o[k];
        return *this;
    }
    TrigSeries& operator-=(const TrigSeries& o) {
        if (o.degree() > degree()) modes_.resize(o.modes_.size());
        for (int k = 0; k <= o.degree(); ++k) modes_[static_cast<std::size_t>(k)] -= o[k];
        return *this;
    }

    /// sqrt((1/2pi) int f^2).
    Real norm2() const {
        Real s = std::norm(modes_[0]);
        for (int k = 1; k <= degree(); ++k) s += 2 * std::norm(modes_[static_cast<std::size_t>(k)]);
        return std::sqrt(s);
    }

    /// Upper bound sum_k |c_k| for the sup norm.
    Real abs_sum() const {
        Real s = std::abs(modes_[0]);
        for (int k = 1; k <= degree(); ++k) s += 2 * std::abs(modes_[static_cast<std::size_t>(k)]);
        return s;
    }

private:
    std::vector<Complex> modes_;
};

/// Exact product; the result has degree deg(a) + deg(b), so nothing aliases.
template <class Real>
TrigSeries<Real> product(const TrigSeries<Real>& a, const TrigSeries<Real>& b) {
    const int na = a.degree(), nb = b.degree();
    TrigSeries<Real> out(na + nb);
    for (int k = 0; k <= na + nb; ++k) {
        std::complex<Real> s{};
        const int jlo = std::max(-na, k - nb);
        const int jhi = std::min(na, k + nb);
        for (int j = jlo; j <= jhi; ++j) s += a[j] * b[k - j];
        out.mode(k) = s;
    }
    out.mode(0) = std::complex<Real>(out[0].real(), 0);
    return out;
}

/// (1/2pi) int_0^{2pi} f g dx.
template <class Real>
Real inner(const TrigSeries<Real>& f, const TrigSeries<Real>& g) {
    const int n = std::min(f.degree(), g.degree());
    Real s = (f[0] * std::conj(g[0])).real();
    for (int k = 1; k <= n; ++k) s += 2 * (f[k] * std::conj(g[k])).real();
    return s;
}

/// Modes of r cos(k(x + theta)).
template <class Real>
void add_cosine(TrigSeries<Real>& s, int k, Real r, Real theta) {
    s.mode(k) += std::polar(r / 2, k * theta);
}

} // namespace capwhitham
