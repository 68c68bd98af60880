#pragma once

#include <algorithm>
#include <vector>

#include "specband/errors.hpp"
#include "specband/scalar.hpp"

namespace specband {

/// Closed 1-based index range [first, last].
struct IndexRange {
    Index first = 1;
    Index last = 0;

    Index size() const { return last >= first ? last - first + 1 : 0; }
    bool contains(Index i) const { return i >= first && i <= last; }
    bool empty() const { return size() == 0; }
};

/// Band range a:b with a <= 0 <= b: row k has support in columns a+k .. b+k.
struct BandRange {
    Index lower = 0;  // a
    Index upper = 0;  // b

    Index width() const { return upper - lower + 1; }
    bool contains_offset(Index off) const { return off >= lower && off <= upper; }
    bool contains(const BandRange& other) const {
        return lower <= other.lower && upper >= other.upper;
    }
    BandRange merged(const BandRange& other) const {
        return {std::min(lower, other.lower), std::max(upper, other.upper)};
    }
    BandRange operator+(const BandRange& other) const {
        return {lower + other.lower, upper + other.upper};
    }
    bool operator==(const BandRange& other) const {
        return lower == other.lower && upper == other.upper;
    }
};

/// Rectangular storage for a row block of a banded operator: row k keeps the
/// entries of columns a+k .. b+k only. Reads outside the band give zero,
/// writes outside throw.
template <class S>
class BandedBlock {
  public:
    BandedBlock(IndexRange rows, BandRange bands)
        : rows_(rows), bands_(bands),
          data_(static_cast<std::size_t>(std::max<Index>(rows.size(), 0) * bands.width()), S{}) {}

    const IndexRange& rows() const { return rows_; }
    const BandRange& bands() const { return bands_; }

    S at(Index k, Index j) const {
        check_row(k);
        if (!bands_.contains_offset(j - k) || j < 1) return S{};
        return data_[slot(k, j)];
    }

    S& ref(Index k, Index j) {
        check_row(k);
        if (j < 1 || !bands_.contains_offset(j - k)) {
            throw BandMismatchError("write outside block band at (" + std::to_string(k) + "," +
                                    std::to_string(j) + ")");
        }
        return data_[slot(k, j)];
    }

    void add(Index k, Index j, S v) { ref(k, j) += v; }

    /// Append storage for more rows (same bands), zero-initialized.
    void extend_rows(Index new_last) {
        if (new_last <= rows_.last) return;
        rows_.last = new_last;
        data_.resize(static_cast<std::size_t>(rows_.size() * bands_.width()), S{});
    }

  private:
    void check_row(Index k) const {
        if (!rows_.contains(k)) {
            throw InvalidArgumentError("row " + std::to_string(k) + " outside block rows");
        }
    }
    std::size_t slot(Index k, Index j) const {
        return static_cast<std::size_t>((k - rows_.first) * bands_.width() + (j - k - bands_.lower));
    }

    IndexRange rows_;
    BandRange bands_;
    std::vector<S> data_;
};

}  // namespace specband
