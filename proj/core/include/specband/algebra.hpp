#pragma once


#include "specband/elementary.hpp"

namespace specband {

namespace detail {

/// C += A_block * B_block restricted to C's rows; bands of C must contain
/// A.bands + B.bands.
template <class S>
void add_block_product(BandedBlock<S>& C, const BandedBlock<S>& A, const BandedBlock<S>& B,
                       IndexRange rows) {
    const BandRange prod = A.bands() + B.bands();
    for (Index k = rows.first; k <= rows.last; ++k) {
        const Index m0 = std::max<Index>(B.rows().first, k + A.bands().lower);
        const Index m1 = std::min<Index>(B.rows().last, k + A.bands().upper);
        for (Index j = std::max<Index>(1, k + prod.lower); j <= k + prod.upper; ++j) {
            S acc{};
            for (Index m = m0; m <= m1; ++m) {
                if (!B.bands().contains_offset(j - m)) continue;
                acc += A.at(k, m) * B.at(m, j);
            }
            if (acc != S{}) C.add(k, j, acc);
        }
    }
}

}  // namespace detail

/// Sum of banded operators sharing domain and range spaces.
template <class S>
class PlusOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    explicit PlusOperatorImpl(std::vector<BandedOperator<S>> summands)
        : summands_(std::move(summands)) {
        if (summands_.empty()) throw InvalidArgumentError("empty operator sum");
        bands_ = summands_.front().bandinds();
        for (const auto& a : summands_) {
            if (a.domainspace() != summands_.front().domainspace() ||
                a.rangespace() != summands_.front().rangespace()) {
                throw NoConversionError("summands must share spaces");
            }
            bands_ = bands_.merged(a.bandinds());
        }
    }
    BandRange bandinds() const override { return bands_; }
    Space domainspace() const override { return summands_.front().domainspace(); }
    Space rangespace() const override { return summands_.front().rangespace(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        for (const auto& a : summands_) a.add_entries(block, rows);
    }
    const std::vector<BandedOperator<S>>& summands() const { return summands_; }

  private:
    std::vector<BandedOperator<S>> summands_;
    BandRange bands_;
};

/// Product of banded operators; factors are stored flattened, left to right.
/// Rows r of the product need rows r widened by the cumulative upper band of
/// each factor to its right-hand neighbour.
template <class S>
class TimesOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    explicit TimesOperatorImpl(std::vector<BandedOperator<S>> factors)
        : factors_(std::move(factors)) {
        if (factors_.empty()) throw InvalidArgumentError("empty operator product");
        bands_ = {0, 0};
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            bands_ = bands_ + factors_[i].bandinds();
            if (i + 1 < factors_.size() &&
                factors_[i].domainspace() != factors_[i + 1].rangespace()) {
                throw NoConversionError("adjacent factors are not space-compatible");
            }
        }
    }
    BandRange bandinds() const override { return bands_; }
    Space domainspace() const override { return factors_.back().domainspace(); }
    Space rangespace() const override { return factors_.front().rangespace(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        // rows needed of factor i+1 = rows of factor i plus factor i's bands
        std::vector<IndexRange> need(factors_.size());
        need[0] = rows;
        for (std::size_t i = 0; i + 1 < factors_.size(); ++i) {
            const BandRange b = factors_[i].bandinds();
            need[i + 1] = {std::max<Index>(1, need[i].first + b.lower), need[i].last + b.upper};
        }
        // accumulate right to left
        BandedBlock<S> acc = factors_.back().block(need.back());
        for (std::size_t i = factors_.size() - 1; i-- > 0;) {
            BandedBlock<S> left = factors_[i].block(need[i]);
            BandedBlock<S> next(need[i], left.bands() + acc.bands());
            detail::add_block_product(next, left, acc, need[i]);
            acc = std::move(next);
        }
        for (Index k = rows.first; k <= rows.last; ++k) {
            for (Index j = std::max<Index>(1, k + bands_.lower); j <= k + bands_.upper; ++j) {
                const S v = acc.at(k, j);
                if (v != S{}) block.add(k, j, v);
            }
        }
    }
    const std::vector<BandedOperator<S>>& factors() const { return factors_; }

  private:
    std::vector<BandedOperator<S>> factors_;
    BandRange bands_;
};

template <class S>
class ScaledOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    ScaledOperatorImpl(S factor, BandedOperator<S> inner)
        : factor_(factor), inner_(std::move(inner)) {}
    BandRange bandinds() const override { return inner_.bandinds(); }
    Space domainspace() const override { return inner_.domainspace(); }
    Space rangespace() const override { return inner_.rangespace(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        BandedBlock<S> tmp = inner_.block(rows);
        for (Index k = rows.first; k <= rows.last; ++k) {
            for (Index j = std::max<Index>(1, k + tmp.bands().lower); j <= k + tmp.bands().upper;
                 ++j) {
                const S v = tmp.at(k, j);
                if (v != S{}) block.add(k, j, factor_ * v);
            }
        }
    }

  private:
    S factor_;
    BandedOperator<S> inner_;
};

/// Wraps an operator and keeps every row computed so far. Not thread-safe
/// during growth; callers synchronize or stay single-threaded.
template <class S>
class SavedOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    explicit SavedOperatorImpl(BandedOperator<S> inner)
        : inner_(std::move(inner)), cache_({1, 0}, inner_.bandinds()) {}
    BandRange bandinds() const override { return inner_.bandinds(); }
    Space domainspace() const override { return inner_.domainspace(); }
    Space rangespace() const override { return inner_.rangespace(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        if (rows.last > cached_rows_) {
            Index target = std::max<Index>(rows.last, 2 * cached_rows_);
            cache_.extend_rows(target);
            inner_.add_entries(cache_, {cached_rows_ + 1, target});
            rows_generated_ += target - cached_rows_;
            cached_rows_ = target;
        }
        const BandRange b = inner_.bandinds();
        for (Index k = rows.first; k <= rows.last; ++k) {
            for (Index j = std::max<Index>(1, k + b.lower); j <= k + b.upper; ++j) {
                const S v = cache_.at(k, j);
                if (v != S{}) block.add(k, j, v);
            }
        }
    }
    Index rows_generated() const { return rows_generated_; }

  private:
    BandedOperator<S> inner_;
    mutable BandedBlock<S> cache_;
    mutable Index cached_rows_ = 0;
    mutable Index rows_generated_ = 0;
};

/// Handle that keeps typed access to the cache statistics.
template <class S>
class SavedOperator : public BandedOperator<S> {
  public:
    explicit SavedOperator(BandedOperator<S> inner)
        : BandedOperator<S>(std::make_shared<const SavedOperatorImpl<S>>(std::move(inner))) {}
    Index rows_generated() const {
        return static_cast<const SavedOperatorImpl<S>*>(this->impl().get())->rows_generated();
    }
};

template <class S>
SavedOperator<S> saved(BandedOperator<S> op) {
    return SavedOperator<S>(std::move(op));
}

/// Round-robin interlace of p banded operators: row r is row ceil(r/p) of
/// part ((r-1) mod p)+1 with its columns spread to the same residue class.
template <class S>
class InterlaceOperatorImpl final : public BandedOperatorImpl<S> {
  public:
    explicit InterlaceOperatorImpl(std::vector<BandedOperator<S>> parts)
        : parts_(std::move(parts)) {
        if (parts_.size() < 2) throw InvalidArgumentError("interlace needs at least 2 parts");
        const Index p = static_cast<Index>(parts_.size());
        Index lo = 0, hi = 0;
        for (const auto& a : parts_) {
            if (a.domainspace() != parts_.front().domainspace() ||
                a.rangespace() != parts_.front().rangespace()) {
                throw NoConversionError("interlaced parts must share spaces");
            }
            lo = std::min(lo, a.bandinds().lower);
            hi = std::max(hi, a.bandinds().upper);
        }
        bands_ = {p * lo, p * hi};
    }
    BandRange bandinds() const override { return bands_; }
    Space domainspace() const override { return parts_.front().domainspace(); }
    Space rangespace() const override { return parts_.front().rangespace(); }
    void add_entries(BandedBlock<S>& block, IndexRange rows) const override {
        const Index p = static_cast<Index>(parts_.size());
        for (Index r = rows.first; r <= rows.last; ++r) {
            const Index part = (r - 1) % p;
            const Index q = (r - 1) / p + 1;
            const auto& A = parts_[part];
            BandedBlock<S> one = A.block({q, q});
            const BandRange b = A.bandinds();
            for (Index jq = std::max<Index>(1, q + b.lower); jq <= q + b.upper; ++jq) {
                const S v = one.at(q, jq);
                if (v != S{}) block.add(r, p * (jq - 1) + part + 1, v);
            }
        }
    }

  private:
    std::vector<BandedOperator<S>> parts_;
    BandRange bands_;
};

template <class S>
BandedOperator<S> interlace(std::vector<BandedOperator<S>> parts) {
    return BandedOperator<S>(std::make_shared<const InterlaceOperatorImpl<S>>(std::move(parts)));
}

/// Entrywise sum of functionals over a shared domain space.
template <class S>
class PlusFunctionalImpl final : public FunctionalImpl<S> {
  public:
    explicit PlusFunctionalImpl(std::vector<Functional<S>> summands)
        : summands_(std::move(summands)) {
        if (summands_.empty()) throw InvalidArgumentError("empty functional sum");
        for (const auto& f : summands_) {
            if (f.domainspace() != summands_.front().domainspace()) {
                throw NoConversionError("functional sum: domain spaces differ");
            }
        }
    }
    Space domainspace() const override { return summands_.front().domainspace(); }
    void entries(IndexRange cols, S* out) const override {
        std::fill(out, out + cols.size(), S{});
        for (const auto& f : summands_) {
            std::vector<S> part = f.entries(cols);
            for (std::size_t i = 0; i < part.size(); ++i) out[i] += part[i];
        }
    }

  private:
    std::vector<Functional<S>> summands_;
};

/// A functional composed with a banded operator: (F A)[j] = sum_k F[k] A[k, j].
template <class S>
class TimesFunctionalImpl final : public FunctionalImpl<S> {
  public:
    TimesFunctionalImpl(Functional<S> f, BandedOperator<S> a) : f_(std::move(f)), a_(std::move(a)) {
        if (f_.domainspace() != a_.rangespace()) {
            throw NoConversionError("functional/operator composition: space mismatch");
        }
    }
    Space domainspace() const override { return a_.domainspace(); }
    void entries(IndexRange cols, S* out) const override {
        const BandRange b = a_.bandinds();
        const Index k0 = std::max<Index>(1, cols.first - b.upper);
        const Index k1 = std::max<Index>(k0, cols.last - b.lower);
        const std::vector<S> fk = f_.entries({k0, k1});
        BandedBlock<S> blk = a_.block({k0, k1});
        for (Index j = cols.first; j <= cols.last; ++j) {
            S acc{};
            const Index m0 = std::max<Index>(k0, j - b.upper);
            const Index m1 = std::min<Index>(k1, j - b.lower);
            for (Index m = m0; m <= m1; ++m) acc += fk[m - k0] * blk.at(m, j);
            out[j - cols.first] = acc;
        }
    }

  private:
    Functional<S> f_;
    BandedOperator<S> a_;
};

/// Round-robin interlace of functionals: entry c is entry ceil(c/p) of
/// part ((c-1) mod p)+1.
template <class S>
class InterlaceFunctionalImpl final : public FunctionalImpl<S> {
  public:
    explicit InterlaceFunctionalImpl(std::vector<Functional<S>> parts) : parts_(std::move(parts)) {
        if (parts_.size() < 2) throw InvalidArgumentError("interlace needs at least 2 parts");
    }
    Space domainspace() const override { return parts_.front().domainspace(); }
    void entries(IndexRange cols, S* out) const override {
        const Index p = static_cast<Index>(parts_.size());
        for (Index c = cols.first; c <= cols.last; ++c) {
            const Index part = (c - 1) % p;
            const Index q = (c - 1) / p + 1;
            out[c - cols.first] = parts_[part].entry(q);
        }
    }

  private:
    std::vector<Functional<S>> parts_;
};

template <class S>
Functional<S> interlace(std::vector<Functional<S>> parts) {
    return Functional<S>(std::make_shared<const InterlaceFunctionalImpl<S>>(std::move(parts)));
}

// ---- conversion and space promotion ---------------------------------------

/// Banded conversion between spaces where a ladder exists; single rungs stay
/// elementary, longer climbs compose rungs.
template <class S = double>
BandedOperator<S> conversion_operator(const Space& from, const Space& to) {
    if (from == to) return identity_operator<S>(from);
    if (!convertible(from, to)) {
        throw NoConversionError("no conversion from " + from.name() + " to " + to.name());
    }
    const int lo = from.ladder_level();
    const int hi = to.ladder_level();
    std::vector<BandedOperator<S>> steps;
    for (int l = hi - 1; l >= lo; --l) steps.push_back(conversion_step<S>(l));
    if (steps.size() == 1) return steps.front();
    return BandedOperator<S>(std::make_shared<const TimesOperatorImpl<S>>(std::move(steps)));
}

/// Wrap `op` so its range becomes `target` (conversion applied on the left).
template <class S>
BandedOperator<S> promote_rangespace(const BandedOperator<S>& op, const Space& target) {
    if (op.rangespace() == target) return op;
    std::vector<BandedOperator<S>> factors{conversion_operator<S>(op.rangespace(), target), op};
    return BandedOperator<S>(std::make_shared<const TimesOperatorImpl<S>>(std::move(factors)));
}

/// Wrap `op` so its domain becomes `source` (conversion applied on the right).
template <class S>
BandedOperator<S> promote_domainspace(const BandedOperator<S>& op, const Space& source) {
    if (op.domainspace() == source) return op;
    std::vector<BandedOperator<S>> factors{op, conversion_operator<S>(source, op.domainspace())};
    return BandedOperator<S>(std::make_shared<const TimesOperatorImpl<S>>(std::move(factors)));
}

namespace detail {

inline Space higher_space(const Space& a, const Space& b) {
    if (a == b) return a;
    if (convertible(a, b)) return b;
    if (convertible(b, a)) return a;
    throw NoConversionError("spaces cannot be reconciled: " + a.name() + " vs " + b.name());
}

inline Space lower_space(const Space& a, const Space& b) {
    if (a == b) return a;
    if (convertible(a, b)) return a;
    if (convertible(b, a)) return b;
    throw NoConversionError("spaces cannot be reconciled: " + a.name() + " vs " + b.name());
}

}  // namespace detail

/// Sum with automatic promotion: ranges climb to the higher space, domains
/// settle on the lower (conversions only exist up the ladder).
template <class S>
BandedOperator<S> plus(const BandedOperator<S>& a, const BandedOperator<S>& b) {
    const Space range = detail::higher_space(a.rangespace(), b.rangespace());
    const Space domain = detail::lower_space(a.domainspace(), b.domainspace());
    auto fix = [&](const BandedOperator<S>& op) {
        return promote_domainspace(promote_rangespace(op, range), domain);
    };
    std::vector<BandedOperator<S>> summands;
    auto push = [&](const BandedOperator<S>& op) {
        if (const auto* p = dynamic_cast<const PlusOperatorImpl<S>*>(op.impl().get())) {
            for (const auto& s : p->summands()) summands.push_back(s);
        } else {
            summands.push_back(op);
        }
    };
    push(fix(a));
    push(fix(b));
    return BandedOperator<S>(std::make_shared<const PlusOperatorImpl<S>>(std::move(summands)));
}

/// Product with automatic promotion: a conversion is inserted between factors
/// when the right factor's range sits below the left factor's domain.
template <class S>
BandedOperator<S> times(const BandedOperator<S>& a, const BandedOperator<S>& b) {
    std::vector<BandedOperator<S>> factors;
    auto push = [&](const BandedOperator<S>& op) {
        if (const auto* t = dynamic_cast<const TimesOperatorImpl<S>*>(op.impl().get())) {
            for (const auto& f : t->factors()) factors.push_back(f);
        } else {
            factors.push_back(op);
        }
    };
    push(a);
    if (a.domainspace() != b.rangespace()) {
        factors.push_back(conversion_operator<S>(b.rangespace(), a.domainspace()));
    }
    push(b);
    return BandedOperator<S>(std::make_shared<const TimesOperatorImpl<S>>(std::move(factors)));
}

template <class S>
BandedOperator<S> operator+(const BandedOperator<S>& a, const BandedOperator<S>& b) {
    return plus(a, b);
}

template <class S>
BandedOperator<S> operator*(const BandedOperator<S>& a, const BandedOperator<S>& b) {
    return times(a, b);
}

template <class S>
BandedOperator<S> operator*(S factor, const BandedOperator<S>& op) {
    return BandedOperator<S>(std::make_shared<const ScaledOperatorImpl<S>>(factor, op));
}

template <class S>
BandedOperator<S> operator-(const BandedOperator<S>& a, const BandedOperator<S>& b) {
    return plus(a, S{-1.0} * b);
}

template <class S>
Functional<S> plus_functionals(const Functional<S>& f, const Functional<S>& g) {
    std::vector<Functional<S>> parts{f, g};
    return Functional<S>(std::make_shared<const PlusFunctionalImpl<S>>(std::move(parts)));
}

template <class S>
Functional<S> operator+(const Functional<S>& f, const Functional<S>& g) {
    return plus_functionals(f, g);
}

template <class S>
Functional<S> functional_times_operator(const Functional<S>& f, const BandedOperator<S>& a) {
    return Functional<S>(std::make_shared<const TimesFunctionalImpl<S>>(f, a));
}

template <class S>
Functional<S> operator*(const Functional<S>& f, const BandedOperator<S>& a) {
    return functional_times_operator(f, a);
}

}  // namespace specband
