#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "specband/space.hpp"

namespace specband {

/// Trailing coefficients below this relative threshold are chopped when a Fun
/// is constructed.
inline constexpr double kFunChopRelTol = 1e-14;

/// A function as a space tag plus a finite coefficient vector; slot j (1-based)
/// multiplies basis element j-1. The empty vector is the zero function.
template <class S>
class Fun {
  public:
    Fun() : space_(Space::chebyshev()) {}

    Fun(Space space, std::vector<S> coefficients)
        : space_(space), coeffs_(std::move(coefficients)) {
        chop();
    }

    const Space& space() const { return space_; }
    const std::vector<S>& coefficients() const { return coeffs_; }
    Index size() const { return static_cast<Index>(coeffs_.size()); }
    bool is_zero() const { return coeffs_.empty(); }

    S coefficient(Index j) const {  // 1-based, zero beyond length
        return (j >= 1 && j <= size()) ? coeffs_[static_cast<std::size_t>(j - 1)] : S{};
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const S& c : coeffs_) m = std::max(m, ScalarTraits<S>::abs(c));
        return m;
    }

    S operator()(double x) const { return evaluate(*this, x); }

  private:
    void chop() {
        double m = max_abs_coefficient();
        if (m == 0.0) {
            coeffs_.clear();
            return;
        }
        std::size_t len = coeffs_.size();
        while (len > 0 && ScalarTraits<S>::abs(coeffs_[len - 1]) < kFunChopRelTol * m) --len;
        coeffs_.resize(len);
    }

    Space space_;
    std::vector<S> coeffs_;
};

/// Clenshaw/Horner evaluation of a coefficient series at x.
template <class S>
S evaluate_series(const Space& space, std::span<const S> c, double x) {
    if (!space.in_domain(x)) {
        throw DomainError("evaluation point outside domain");
    }
    const Index n = static_cast<Index>(c.size());
    if (n == 0) return S{};
    switch (space.kind()) {
        case SpaceKind::Taylor: {
            S acc = c[n - 1];
            for (Index k = n - 2; k >= 0; --k) acc = acc * x + c[k];
            return acc;
        }
        case SpaceKind::Chebyshev: {
            S b1{}, b2{};
            for (Index k = n - 1; k >= 1; --k) {
                S b = c[k] + 2.0 * x * b1 - b2;
                b2 = b1;
                b1 = b;
            }
            return c[0] + x * b1 - b2;
        }
        case SpaceKind::Ultraspherical: {
            // p_{k+1} = alpha_k(x) p_k + beta_k p_{k-1},
            // alpha_k = 2(k+lam)x/(k+1), beta_k = -(k+2lam-1)/(k+1).
            const double lam = space.order();
            S b1{}, b2{};
            for (Index k = n - 1; k >= 1; --k) {
                const double kk = static_cast<double>(k);
                const double alpha_k = 2.0 * (kk + lam) * x / (kk + 1.0);
                const double beta_k1 = -(kk + 2.0 * lam) / (kk + 2.0);
                S b = c[k] + alpha_k * b1 + beta_k1 * b2;
                b2 = b1;
                b1 = b;
            }
            return c[0] + (2.0 * lam * x) * b1 - lam * b2;
        }
    }
    return S{};
}

template <class S>
S evaluate(const Fun<S>& f, double x) {
    return evaluate_series<S>(f.space(), f.coefficients(), x);
}

namespace detail {
template <class S>
std::vector<S>& pad_to(std::vector<S>& v, std::size_t n) {
    if (v.size() < n) v.resize(n, S{});
    return v;
}
}  // namespace detail

template <class S>
Fun<S> operator+(const Fun<S>& a, const Fun<S>& b) {
    if (!a.is_zero() && !b.is_zero() && a.space() != b.space()) {
        throw NoConversionError("Fun addition requires matching spaces");
    }
    std::vector<S> c = a.coefficients();
    detail::pad_to(c, b.coefficients().size());
    for (std::size_t i = 0; i < b.coefficients().size(); ++i) c[i] += b.coefficients()[i];
    return Fun<S>(a.is_zero() ? b.space() : a.space(), std::move(c));
}

template <class S>
Fun<S> operator-(const Fun<S>& a, const Fun<S>& b) {
    return a + (S{-1.0} * b);
}

template <class S, class T>
Fun<S> operator*(T s, const Fun<S>& f) {
    std::vector<S> c = f.coefficients();
    for (auto& v : c) v = static_cast<S>(s * v);
    return Fun<S>(f.space(), std::move(c));
}

}  // namespace specband
