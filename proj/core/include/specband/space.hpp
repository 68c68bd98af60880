#pragma once

#include <string>
#include <vector>

#include "specband/errors.hpp"
#include "specband/scalar.hpp"

namespace specband {

enum class SpaceKind { Taylor, Chebyshev, Ultraspherical };

/// A coefficient-space tag: which polynomial basis an infinite coefficient
/// vector expands in. Value slot j (1-based) multiplies basis element j-1.
///
/// Chebyshev and Ultraspherical(lambda) form a one-way conversion ladder
/// (Chebyshev -> C^(1) -> C^(2) -> ...); Taylor is its own family.
class Space {
  public:
    static Space taylor() { return Space(SpaceKind::Taylor, 0); }
    static Space chebyshev() { return Space(SpaceKind::Chebyshev, 0); }
    static Space ultraspherical(int order);

    SpaceKind kind() const { return kind_; }

    /// Ultraspherical order lambda (>= 1); 0 for Chebyshev.
    int order() const { return order_; }

    /// True for Chebyshev/ultraspherical, whose domain is [-1, 1].
    bool on_interval() const { return kind_ != SpaceKind::Taylor; }

    /// Position on the conversion ladder: Chebyshev = 0, Ultraspherical(l) = l.
    int ladder_level() const;

    bool in_domain(double x) const { return x >= -1.0 && x <= 1.0; }

    bool operator==(const Space& other) const {
        return kind_ == other.kind_ && order_ == other.order_;
    }
    bool operator!=(const Space& other) const { return !(*this == other); }

    std::string name() const;

  private:
    Space(SpaceKind kind, int order) : kind_(kind), order_(order) {}
    SpaceKind kind_;
    int order_;
};

/// Values of basis elements 0..count-1 of `space` at x (three-term recurrences;
/// powers of x for Taylor).
std::vector<double> basis_values(const Space& space, double x, Index count);

/// True when a banded conversion exists from `from` to `to`.
bool convertible(const Space& from, const Space& to);

}  // namespace specband
