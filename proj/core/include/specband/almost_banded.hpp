#pragma once

#include <cmath>

#include "specband/algebra.hpp"

namespace specband {

/// A linear system in stacked form: K boundary functionals over a banded
/// operator, with right-hand sides for both parts. Viewed as one operator it
/// is banded except for the first K dense rows.
template <class S>
struct AlmostBandedSystem {
    std::vector<Functional<S>> functionals;
    BandedOperator<S> op;
    Fun<S> rhs;                 // right-hand side for the operator rows (range space of op)
    std::vector<S> bc_values;   // one per functional
};

template <class S>
struct GivensRotation {
    Index row1 = 0, row2 = 0;  // row1 < row2
    S alpha{}, beta{};         // unitary [alpha, beta; -conj(beta), conj(alpha)]
};

struct EliminationStats {
    long long rotations = 0;
    long long flops = 0;  // scalar multiply-adds in row updates
};

/// Mutable workspace for QR on an almost-banded operator. Rows are stored as
/// a dense window plus fill coefficients: beyond its window, row k equals
/// sum_i fill[k][i] * F_i. Fresh boundary rows have identity fill and fresh
/// operator rows have zero fill and their banded window, so the represented
/// operator equals the stacked system exactly; Givens row operations keep the
/// representation exact while introducing zeros column by column.
template <class S>
class MutableAlmostBandedOperator {
  public:
    MutableAlmostBandedOperator(std::vector<Functional<S>> functionals, BandedOperator<S> op)
        : funcs_(std::move(functionals)),
          op_(std::move(op)),
          K_(static_cast<Index>(funcs_.size())),
          band_(op_.bandinds()) {
        for (const auto& f : funcs_) {
            if (f.domainspace() != op_.domainspace()) {
                throw NoConversionError("boundary functionals must act on the operator's domain");
            }
        }
        // boundary rows: dense prefix of width b-a+K, fill = identity row
        const Index m = band_.upper - band_.lower + K_;
        for (Index i = 1; i <= K_; ++i) {
            Row r;
            r.lo = 1;
            if (m > 0) {
                r.dense = funcs_[i - 1].entries({1, m});
            }
            r.fill.assign(static_cast<std::size_t>(K_), S{});
            r.fill[i - 1] = S{1.0};
            rows_.push_back(std::move(r));
        }
        materialized_ = K_;
    }

    Index boundary_count() const { return K_; }
    BandRange operator_band() const { return band_; }
    Index eliminated_columns() const { return eliminated_; }
    const std::vector<GivensRotation<S>>& rotations() const { return log_; }
    const EliminationStats& stats() const { return stats_; }

    /// Entry of the represented infinite operator. Rows at or below the
    /// materialized depth come from the mutable storage (dense window or fill
    /// branch); rows beyond replicate the wrapped operator shifted by K.
    S entry(Index k, Index j) {
        if (k < 1 || j < 1) throw InvalidArgumentError("entries are 1-based");
        if (k <= materialized_) {
            const Row& r = rows_[k - 1];
            if (j < r.lo) return S{};
            if (j <= r.hi()) return r.dense[j - r.lo];
            S acc{};
            for (Index i = 0; i < K_; ++i) {
                if (r.fill[i] != S{}) acc += r.fill[i] * funcs_[i].entry(j);
            }
            return acc;
        }
        return op_.entry(k - K_, j);
    }

    /// Zero the subdiagonal entries of column `col`; columns must be processed
    /// in order. The same rotations are applied to `rhs` (extended as needed).
    void eliminate_column(Index col, std::vector<S>& rhs) {
        if (col != eliminated_ + 1) {
            throw InvalidArgumentError("columns must be eliminated left to right");
        }
        const Index last_row = col + K_ - band_.lower;
        materialize_through(last_row);
        if (rhs.size() < static_cast<std::size_t>(last_row)) rhs.resize(last_row, S{});
        bool any_nonzero = value_at(col, col) != S{};
        for (Index r2 = col + 1; r2 <= last_row; ++r2) {
            const S g = value_at(r2, col);
            if (g == S{}) continue;
            any_nonzero = true;
            const S f = value_at(col, col);
            const double d = std::sqrt(ScalarTraits<S>::abs(f) * ScalarTraits<S>::abs(f) +
                                       ScalarTraits<S>::abs(g) * ScalarTraits<S>::abs(g));
            const S alpha = ScalarTraits<S>::conj(f) / d;
            const S beta = ScalarTraits<S>::conj(g) / d;
            const Index h = std::max(rows_[col - 1].hi(), rows_[r2 - 1].hi());
            extend_row(col, h);
            extend_row(r2, h);
            rotate_rows(col, col, r2, alpha, beta, rhs);
            log_.push_back({col, r2, alpha, beta});
            ++stats_.rotations;
        }
        if (!any_nonzero) {
            throw SingularError("pivot column " + std::to_string(col) +
                                " is identically zero through all affected rows");
        }
        ++eliminated_;
    }

    void eliminate_through(Index col, std::vector<S>& rhs) {
        while (eliminated_ < col) eliminate_column(eliminated_ + 1, rhs);
    }

    /// Solve the upper-triangular leading n x n system. Rows' tails beyond
    /// their dense windows are linear combinations of the functionals; those
    /// contributions are accumulated through suffix sums so the cost stays
    /// O(n K) on top of the banded windows.
    std::vector<S> back_substitute(std::span<const S> rhs, Index n) const {
        if (eliminated_ < n || static_cast<Index>(rhs.size()) < n) {
            throw InvalidArgumentError("back substitution needs n eliminated columns and rhs");
        }
        std::vector<std::vector<S>> fentries(static_cast<std::size_t>(K_));
        for (Index i = 0; i < K_; ++i) fentries[i] = funcs_[i].entries({1, n});
        std::vector<std::vector<S>> tails(static_cast<std::size_t>(K_),
                                          std::vector<S>(static_cast<std::size_t>(n + 2), S{}));
        std::vector<S> u(static_cast<std::size_t>(n), S{});
        for (Index r = n; r >= 1; --r) {
            const Row& row = rows_[r - 1];
            S acc = rhs[r - 1];
            const Index hi = std::min(row.hi(), n);
            for (Index j = r + 1; j <= hi; ++j) acc -= row.dense[j - row.lo] * u[j - 1];
            if (row.hi() < n) {
                for (Index i = 0; i < K_; ++i) {
                    if (row.fill[i] != S{}) acc -= row.fill[i] * tails[i][row.hi() + 1 - 1];
                }
            }
            const S diag = (r >= row.lo && r <= row.hi()) ? row.dense[r - row.lo] : S{};
            if (diag == S{}) {
                throw SingularError("zero diagonal at row " + std::to_string(r));
            }
            u[r - 1] = acc / diag;
            for (Index i = 0; i < K_; ++i) {
                tails[i][r - 1] = fentries[i][r - 1] * u[r - 1] + tails[i][r - 1 + 1];
            }
        }
        return u;
    }

  private:
    struct Row {
        Index lo = 1;
        std::vector<S> dense;  // columns [lo, lo + dense.size() - 1]
        std::vector<S> fill;   // tail beyond hi(): sum_i fill[i] * F_i
        Index hi() const { return lo + static_cast<Index>(dense.size()) - 1; }
    };

    S value_at(Index r, Index j) const {
        const Row& row = rows_[r - 1];
        if (j < row.lo || j > row.hi()) return S{};
        return row.dense[j - row.lo];
    }

    void materialize_through(Index r) {
        if (r <= materialized_) return;
        const Index first_op_row = materialized_ + 1 - K_;  // in operator indexing
        const Index last_op_row = r - K_;
        BandedBlock<S> blk = op_.block({first_op_row, last_op_row});
        for (Index k = first_op_row; k <= last_op_row; ++k) {
            Row row;
            row.lo = std::max<Index>(1, k + band_.lower);
            const Index hi = k + band_.upper;
            row.dense.resize(static_cast<std::size_t>(hi - row.lo + 1), S{});
            for (Index j = row.lo; j <= hi; ++j) row.dense[j - row.lo] = blk.at(k, j);
            row.fill.assign(static_cast<std::size_t>(K_), S{});
            rows_.push_back(std::move(row));
        }
        materialized_ = r;
    }

    /// Materialize fill values into the dense window so it reaches `h`.
    void extend_row(Index r, Index h) {
        Row& row = rows_[r - 1];
        const Index old_hi = row.hi();
        if (h <= old_hi) return;
        row.dense.resize(static_cast<std::size_t>(h - row.lo + 1), S{});
        for (Index i = 0; i < K_; ++i) {
            if (row.fill[i] == S{}) continue;
            std::vector<S> vals = funcs_[i].entries({old_hi + 1, h});
            for (Index j = old_hi + 1; j <= h; ++j) {
                row.dense[j - row.lo] += row.fill[i] * vals[j - old_hi - 1];
            }
        }
    }

    void rotate_rows(Index col, Index r1, Index r2, S alpha, S beta, std::vector<S>& rhs) {
        Row& a = rows_[r1 - 1];
        Row& b = rows_[r2 - 1];
        const S nca = ScalarTraits<S>::conj(alpha);
        const S ncb = ScalarTraits<S>::conj(beta);
        // entries before `col` are already zero in both rows; both rows have
        // been extended to a common window end
        for (Index j = col; j <= a.hi(); ++j) {
            const S x = a.dense[j - a.lo];
            const S y = b.dense[j - b.lo];
            a.dense[j - a.lo] = alpha * x + beta * y;
            b.dense[j - b.lo] = -ncb * x + nca * y;
            stats_.flops += 4;
        }
        for (Index i = 0; i < K_; ++i) {
            const S x = a.fill[i];
            const S y = b.fill[i];
            a.fill[i] = alpha * x + beta * y;
            b.fill[i] = -ncb * x + nca * y;
        }
        const S x = rhs[r1 - 1];
        const S y = rhs[r2 - 1];
        rhs[r1 - 1] = alpha * x + beta * y;
        rhs[r2 - 1] = -ncb * x + nca * y;
        // the target's pivot-column entry is now exactly zero
        b.dense[col - b.lo] = S{};
    }

    std::vector<Functional<S>> funcs_;
    BandedOperator<S> op_;
    Index K_;
    BandRange band_;
    std::vector<Row> rows_;
    Index materialized_ = 0;
    Index eliminated_ = 0;
    std::vector<GivensRotation<S>> log_;
    EliminationStats stats_;
};

struct AdaptiveQROptions {
    double tol = 1e-14;
    Index max_n = 100000;
};

template <class S>
struct AdaptiveQRResult {
    Fun<S> solution;
    Index n_opt = 0;
    EliminationStats stats;
};

/// Adaptive QR solve of an almost-banded system: eliminate columns left to
/// right, rotating the right-hand side along, until every rotated right-hand
/// side entry in the trailing window (n - (b-a+K), n] and everything beyond n
/// falls below tol * (1 + max |rhs|); then truncate and back substitute.
template <class S>
AdaptiveQRResult<S> adaptive_qr_solve(const AlmostBandedSystem<S>& sys,
                                      const AdaptiveQROptions& opts = {}) {
    const Index K = static_cast<Index>(sys.functionals.size());
    if (static_cast<Index>(sys.bc_values.size()) != K) {
        throw InvalidArgumentError("one boundary value per functional required");
    }
    BandedOperator<S> op = sys.op;
    Fun<S> rhs_fun = sys.rhs;
    if (!rhs_fun.is_zero() && rhs_fun.space() != op.rangespace()) {
        rhs_fun = conversion_operator<S>(rhs_fun.space(), op.rangespace()) * rhs_fun;
    }
    MutableAlmostBandedOperator<S> work(sys.functionals, op);
    const BandRange band = op.bandinds();
    const Index window = band.upper - band.lower + K;

    std::vector<S> rhs(sys.bc_values.begin(), sys.bc_values.end());
    rhs.insert(rhs.end(), rhs_fun.coefficients().begin(), rhs_fun.coefficients().end());
    double rhs_scale = 0.0;
    for (const S& v : rhs) rhs_scale = std::max(rhs_scale, ScalarTraits<S>::abs(v));
    const double threshold = opts.tol * (1.0 + rhs_scale);

    for (Index n = 1; n <= opts.max_n; ++n) {
        work.eliminate_column(n, rhs);
        if (n < K) continue;
        // trailing window (n - window, n] plus everything beyond n must be
        // negligible; entries beyond the tracked vector are exact zeros
        bool converged = true;
        for (Index j = std::max<Index>(1, n - window + 1);
             j <= static_cast<Index>(rhs.size()) && converged; ++j) {
            if (ScalarTraits<S>::abs(rhs[j - 1]) > threshold) converged = false;
        }
        if (!converged) continue;
        std::vector<S> coeffs = work.back_substitute(rhs, n);
        AdaptiveQRResult<S> out{Fun<S>(op.domainspace(), std::move(coeffs)), n, work.stats()};
        return out;
    }
    throw NoConvergenceError("adaptive QR did not meet the truncation criterion by n = " +
                                 std::to_string(opts.max_n),
                             opts.max_n);
}

}  // namespace specband
