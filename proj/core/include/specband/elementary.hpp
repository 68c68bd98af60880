#pragma once

#include <cmath>

#include "specband/operator.hpp"

namespace specband {

/// Evaluation of a Taylor series at z: the row [1, z, z^2, ...].
template <class S>
class TaylorEvaluationImpl final : public FunctionalImpl<S> {
  public:
    explicit TaylorEvaluationImpl(double z) : z_(z) {}
    Space domainspace() const override { return Space::taylor(); }
    void entries(IndexRange cols, S* out) const override {
        for (Index j = cols.first; j <= cols.last; ++j) {
            out[j - cols.first] = static_cast<S>(std::pow(z_, static_cast<double>(j - 1)));
        }
    }

  private:
    double z_;
};

/// Point evaluation in any supported space: entries are basis values at x.
template <class S>
class EvaluationFunctionalImpl final : public FunctionalImpl<S> {
  public:
    EvaluationFunctionalImpl(Space space, double x) : space_(space), x_(x) {
        if (!space.in_domain(x)) throw DomainError("evaluation point outside domain");
    }
    Space domainspace() const override { return space_; }
    void entries(IndexRange cols, S* out) const override {
        std::vector<double> v = basis_values(space_, x_, cols.last);
        for (Index j = cols.first; j <= cols.last; ++j) {
            out[j - cols.first] = static_cast<S>(v[j - 1]);
        }
    }

  private:
    Space space_;
    double x_;
};

template <class S = double>
Functional<S> taylor_evaluation(double z) {
    return make_functional<S, TaylorEvaluationImpl<S>>(z);
}

template <class S = double>
Functional<S> evaluation_functional(Space space, double x) {
    if (space.kind() == SpaceKind::Taylor) return taylor_evaluation<S>(x);
    return make_functional<S, EvaluationFunctionalImpl<S>>(space, x);
}

/// d/dz on Taylor coefficients: entry (k, k+1) = k, band 0:1.
template <class S>
class TaylorDerivativeImpl final : public BandedOperatorImpl<S> {
  public:
    BandRange bandinds() const override { return {0, 1}; }
    Space domainspace() const override { return Space::taylor(); }
    Space rangespace() const override { return Space::taylor(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        for (Index k = rows.first; k <= rows.last; ++k) {
            block.add(k, k + 1, static_cast<S>(static_cast<double>(k)));
        }
    }
};

template <class S = double>
BandedOperator<S> taylor_derivative() {
    return make_operator<S, TaylorDerivativeImpl<S>>();
}

/// Multiplication by a degree m-1 polynomial on Taylor coefficients: the
/// Toeplitz operator entry (k, j) = a[k-j] for 0 <= k-j <= m-1, band (1-m):0.
template <class S>
class TaylorMultiplicationImpl final : public BandedOperatorImpl<S> {
  public:
    explicit TaylorMultiplicationImpl(std::vector<S> a) : a_(std::move(a)) {
        if (a_.empty()) throw InvalidArgumentError("multiplication needs a nonempty coefficient vector");
    }
    BandRange bandinds() const override { return {1 - static_cast<Index>(a_.size()), 0}; }
    Space domainspace() const override { return Space::taylor(); }
    Space rangespace() const override { return Space::taylor(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        const Index m = static_cast<Index>(a_.size());
        for (Index k = rows.first; k <= rows.last; ++k) {
            for (Index d = 0; d < m; ++d) {
                const Index j = k - d;
                if (j >= 1) block.add(k, j, a_[d]);
            }
        }
    }

  private:
    std::vector<S> a_;
};

template <class S = double>
BandedOperator<S> taylor_multiplication(std::vector<S> a) {
    return make_operator<S, TaylorMultiplicationImpl<S>>(std::move(a));
}

template <class S>
class IdentityOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    explicit IdentityOperatorImpl(Space space) : space_(space) {}
    BandRange bandinds() const override { return {0, 0}; }
    Space domainspace() const override { return space_; }
    Space rangespace() const override { return space_; }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        for (Index k = rows.first; k <= rows.last; ++k) block.add(k, k, S{1.0});
    }

  private:
    Space space_;
};

template <class S = double>
BandedOperator<S> identity_operator(Space space) {
    return make_operator<S, IdentityOperatorImpl<S>>(space);
}

/// One rung of the conversion ladder (band 0:2).
///
/// level 0 (Chebyshev -> C^(1)):   T_0 = C_0, T_1 = C_1/2,
///                                 T_k = (C_k - C_{k-2})/2 for k >= 2.
/// level l >= 1 (C^(l) -> C^(l+1)): C^(l)_k = l/(l+k) (C^(l+1)_k - C^(l+1)_{k-2}).
template <class S>
class ConversionStepImpl final : public BandedOperatorImpl<S> {
  public:
    explicit ConversionStepImpl(int level) : level_(level) {
        if (level < 0) throw InvalidArgumentError("conversion level must be >= 0");
    }
    BandRange bandinds() const override { return {0, 2}; }
    Space domainspace() const override {
        return level_ == 0 ? Space::chebyshev() : Space::ultraspherical(level_);
    }
    Space rangespace() const override { return Space::ultraspherical(level_ + 1); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        for (Index k = rows.first; k <= rows.last; ++k) {
            if (level_ == 0) {
                block.add(k, k, S{k == 1 ? 1.0 : 0.5});
                block.add(k, k + 2, S{-0.5});
            } else {
                const double lam = level_;
                block.add(k, k, S{lam / (lam + static_cast<double>(k - 1))});
                block.add(k, k + 2, S{-lam / (lam + static_cast<double>(k + 1))});
            }
        }
    }

  private:
    int level_;
};

template <class S = double>
BandedOperator<S> conversion_step(int level) {
    return make_operator<S, ConversionStepImpl<S>>(level);
}

/// lambda-th derivative in the ultraspherical method: maps Chebyshev
/// coefficients to C^(lambda) coefficients of the lambda-th derivative.
/// Single superdiagonal at offset lambda:
///   entry (k, k+lambda) = 2^(lambda-1) (lambda-1)! (k + lambda - 1).
template <class S>
class UltrasphericalDerivativeImpl final : public BandedOperatorImpl<S> {
  public:
    explicit UltrasphericalDerivativeImpl(int lambda) : lambda_(lambda) {
        if (lambda < 1) throw InvalidArgumentError("derivative order must be >= 1");
        scale_ = 1.0;
        for (int i = 1; i < lambda; ++i) scale_ *= 2.0 * i;  // 2^(l-1) (l-1)!
    }
    BandRange bandinds() const override { return {0, lambda_}; }
    Space domainspace() const override { return Space::chebyshev(); }
    Space rangespace() const override { return Space::ultraspherical(lambda_); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        for (Index k = rows.first; k <= rows.last; ++k) {
            block.add(k, k + lambda_, S{scale_ * static_cast<double>(k + lambda_ - 1)});
        }
    }

  private:
    int lambda_;
    double scale_;
};

template <class S = double>
BandedOperator<S> ultraspherical_derivative(int lambda) {
    return make_operator<S, UltrasphericalDerivativeImpl<S>>(lambda);
}

}  // namespace specband
