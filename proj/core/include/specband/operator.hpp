#pragma once

#include <memory>
#include <span>
#include <vector>

#include "specband/block.hpp"
#include "specband/fun.hpp"
#include "specband/space.hpp"

namespace specband {

/// Contract for a 1 x infinity row operator: a column-range entry generator
/// plus the space its argument lives in.
template <class S>
class FunctionalImpl {
  public:
    virtual ~FunctionalImpl() = default;
    virtual Space domainspace() const = 0;
    /// Write entries for the 1-based columns `cols` into out[0..cols.size()).
    virtual void entries(IndexRange cols, S* out) const = 0;
};

template <class S>
class Functional {
  public:
    explicit Functional(std::shared_ptr<const FunctionalImpl<S>> impl) : impl_(std::move(impl)) {}

    Space domainspace() const { return impl_->domainspace(); }

    std::vector<S> entries(IndexRange cols) const {
        if (cols.empty() || cols.first < 1) {
            throw InvalidArgumentError("functional entries: invalid column range");
        }
        std::vector<S> out(static_cast<std::size_t>(cols.size()));
        impl_->entries(cols, out.data());
        return out;
    }

    S entry(Index j) const {
        S v;
        impl_->entries({j, j}, &v);
        return v;
    }

    /// Apply to a finite coefficient vector: sum_j F[j] c[j].
    S dot(std::span<const S> coeffs) const {
        if (coeffs.empty()) return S{};
        std::vector<S> row = entries({1, static_cast<Index>(coeffs.size())});
        S acc{};
        for (std::size_t i = 0; i < coeffs.size(); ++i) acc += row[i] * coeffs[i];
        return acc;
    }

    S operator()(const Fun<S>& f) const { return dot(f.coefficients()); }

    const std::shared_ptr<const FunctionalImpl<S>>& impl() const { return impl_; }

  private:
    std::shared_ptr<const FunctionalImpl<S>> impl_;
};

/// Contract for an infinity x infinity banded operator: a row-block entry
/// generator, a band range, and domain/range spaces. Row k has support only
/// in columns bandinds().lower + k .. bandinds().upper + k.
template <class S>
class BandedOperatorImpl {
  public:
    virtual ~BandedOperatorImpl() = default;
    virtual BandRange bandinds() const = 0;
    virtual Space domainspace() const = 0;
    virtual Space rangespace() const = 0;
    /// ADD (not overwrite) this operator's entries for `rows` into `block`.
    virtual void add_entries(BandedBlock<S>& block, IndexRange rows) const = 0;
};

template <class S>
class BandedOperator {
  public:
    explicit BandedOperator(std::shared_ptr<const BandedOperatorImpl<S>> impl)
        : impl_(std::move(impl)) {}

    BandRange bandinds() const { return impl_->bandinds(); }
    Space domainspace() const { return impl_->domainspace(); }
    Space rangespace() const { return impl_->rangespace(); }

    void add_entries(BandedBlock<S>& block, IndexRange rows) const {
        if (rows.empty() || rows.first < 1) {
            throw InvalidArgumentError("add_entries: invalid row range");
        }
        if (!block.rows().contains(rows.first) || !block.rows().contains(rows.last)) {
            throw InvalidArgumentError("add_entries: rows outside block");
        }
        if (!block.bands().contains(bandinds())) {
            throw BandMismatchError("block bands cannot hold operator bands");
        }
        impl_->add_entries(block, rows);
    }

    /// Assemble a fresh block holding exactly these rows.
    BandedBlock<S> block(IndexRange rows, BandRange bands) const {
        BandedBlock<S> b(rows, bands);
        add_entries(b, rows);
        return b;
    }
    BandedBlock<S> block(IndexRange rows) const { return block(rows, bandinds()); }

    /// Scalar entry access via a one-row block.
    S entry(Index k, Index j) const {
        if (k < 1 || j < 1) throw InvalidArgumentError("entry: indices are 1-based");
        if (!bandinds().contains_offset(j - k)) return S{};
        return block({k, k}).at(k, j);
    }

    /// Apply to a finite coefficient vector (rows 1 .. len - bandinds().lower).
    std::vector<S> apply(std::span<const S> coeffs) const {
        const BandRange bd = bandinds();
        const Index len = static_cast<Index>(coeffs.size());
        const Index nrows = std::max<Index>(0, len - bd.lower);
        std::vector<S> out(static_cast<std::size_t>(nrows), S{});
        if (nrows == 0) return out;
        BandedBlock<S> blk = block({1, nrows});
        for (Index k = 1; k <= nrows; ++k) {
            S acc{};
            const Index j0 = std::max<Index>(1, k + bd.lower);
            const Index j1 = std::min<Index>(len, k + bd.upper);
            for (Index j = j0; j <= j1; ++j) acc += blk.at(k, j) * coeffs[j - 1];
            out[k - 1] = acc;
        }
        return out;
    }

    const std::shared_ptr<const BandedOperatorImpl<S>>& impl() const { return impl_; }

  private:
    std::shared_ptr<const BandedOperatorImpl<S>> impl_;
};

/// Operator applied to a function: spaces must line up.
template <class S>
Fun<S> operator*(const BandedOperator<S>& A, const Fun<S>& u) {
    if (!u.is_zero() && u.space() != A.domainspace()) {
        throw NoConversionError("operator applied to Fun in wrong space: " + u.space().name() +
                                " vs " + A.domainspace().name());
    }
    return Fun<S>(A.rangespace(), A.apply(u.coefficients()));
}

template <class S, class ImplT, class... Args>
BandedOperator<S> make_operator(Args&&... args) {
    return BandedOperator<S>(std::make_shared<const ImplT>(std::forward<Args>(args)...));
}

template <class S, class ImplT, class... Args>
Functional<S> make_functional(Args&&... args) {
    return Functional<S>(std::make_shared<const ImplT>(std::forward<Args>(args)...));
}

}  // namespace specband
