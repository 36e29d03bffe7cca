#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "capwhitham/errors.hpp"

namespace capwhitham {

/// Sorted multiset of |wavenumbers| labelling a product of ell factors.
using Factors = std::vector<int>;

/// Integer-weighted sums of monomials in ell(n); the exact value algebra of the recursion.
class EllPolynomial {
public:
    using Terms = std::map<Factors, std::int64_t>;

    EllPolynomial() = default;

    static EllPolynomial constant(std::int64_t c) {
        EllPolynomial p;
        if (c != 0) p.terms_.emplace(Factors{}, c);
        return p;
    }
    static EllPolynomial ell(int n) {
        EllPolynomial p;
        p.terms_.emplace(Factors{n < 0 ? -n : n}, 1);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    EllPolynomial& operator+=(const EllPolynomial& o) {
        for (const auto& [f, c] : o.terms_) add_term(f, c);
        return *this;
    }

    friend EllPolynomial operator*(const EllPolynomial& a, const EllPolynomial& b) {
        EllPolynomial out;
        Factors merged;
        for (const auto& [fa, ca] : a.terms_) {
            for (const auto& [fb, cb] : b.terms_) {
                merged.resize(fa.size() + fb.size());
                std::merge(fa.begin(), fa.end(), fb.begin(), fb.end(), merged.begin());
                std::int64_t c;
                if (__builtin_mul_overflow(ca, cb, &c))
                    throw ResourceError("integer overflow in symbolic coefficient");
                out.add_term(merged, c);
            }
        }
        return out;
    }

    /// Sum of coefficients, i.e. the value at ell == 1.
    std::int64_t weight() const {
        std::int64_t s = 0;
        for (const auto& [f, c] : terms_)
            if (__builtin_add_overflow(s, c, &s)) throw ResourceError("integer overflow in symbolic weight");
        return s;
    }

private:
    void add_term(const Factors& f, std::int64_t c) {
        auto [it, inserted] = terms_.try_emplace(f, c);
        if (inserted) return;
        if (__builtin_add_overflow(it->second, c, &it->second))
            throw ResourceError("integer overflow in symbolic coefficient");
        if (it->second == 0) terms_.erase(it);
    }

    Terms terms_;
};

inline bool is_zero(const EllPolynomial& p) { return p.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

} // namespace capwhitham
