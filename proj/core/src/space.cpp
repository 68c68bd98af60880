#include "specband/space.hpp"

#include <cmath>

namespace specband {

Space Space::ultraspherical(int order) {
    if (order < 1) {
        throw InvalidArgumentError("ultraspherical order must be >= 1");
    }
    return Space(SpaceKind::Ultraspherical, order);
}

int Space::ladder_level() const {
    if (kind_ == SpaceKind::Taylor) {
        throw NoConversionError("Taylor space is not on the Chebyshev ladder");
    }
    return order_;
}

std::string Space::name() const {
    switch (kind_) {
        case SpaceKind::Taylor:
            return "Taylor";
        case SpaceKind::Chebyshev:
            return "Chebyshev";
        case SpaceKind::Ultraspherical:
            return "Ultraspherical(" + std::to_string(order_) + ")";
    }
    return "?";
}

std::vector<double> basis_values(const Space& space, double x, Index count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 0) return v;
    switch (space.kind()) {
        case SpaceKind::Taylor: {
            for (Index j = 0; j < count; ++j) {
                v[j] = std::pow(x, static_cast<double>(j));
            }
            break;
        }
        case SpaceKind::Chebyshev: {
            v[0] = 1.0;
            if (count > 1) v[1] = x;
            for (Index j = 2; j < count; ++j) {
                v[j] = 2.0 * x * v[j - 1] - v[j - 2];
            }
            break;
        }
        case SpaceKind::Ultraspherical: {
            const double lam = space.order();
            v[0] = 1.0;
            if (count > 1) v[1] = 2.0 * lam * x;
            for (Index j = 1; j + 1 < count; ++j) {
                const double k = static_cast<double>(j);
                v[j + 1] = (2.0 * (k + lam) * x * v[j] - (k + 2.0 * lam - 1.0) * v[j - 1]) / (k + 1.0);
            }
            break;
        }
    }
    return v;
}

bool convertible(const Space& from, const Space& to) {
    if (from == to) return true;
    if (from.on_interval() && to.on_interval()) {
        return from.ladder_level() <= to.ladder_level();
    }
    return false;
}

}  // namespace specband
