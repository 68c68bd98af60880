#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace specband {

using Index = std::int64_t;
using Complex = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    using Real = double;
    static constexpr bool is_complex = false;
    static double conj(double x) { return x; }
    static double abs(double x) { return std::abs(x); }
};

template <>
struct ScalarTraits<Complex> {
    using Real = double;
    static constexpr bool is_complex = true;
    static Complex conj(Complex x) { return std::conj(x); }
    static double abs(Complex x) { return std::abs(x); }
};

}  // namespace specband
