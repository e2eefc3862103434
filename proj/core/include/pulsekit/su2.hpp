#pragma once

// 2x2 complex matrices. SU(2) propagators, Hamiltonians and basis rotations
// all live here; the footprint is small enough that a dedicated type beats a
// general linear-algebra dependency.

#include <array>
#include <cmath>
#include <complex>

namespace pulsekit {

using cxd = std::complex<double>;

struct Mat2c {
    // row-major: [ m[0] m[1] ; m[2] m[3] ]
    std::array<cxd, 4> m{};

    static Mat2c identity() { return {{cxd(1), cxd(0), cxd(0), cxd(1)}}; }

    cxd u11() const { return m[0]; }
    cxd u12() const { return m[1]; }
    cxd u21() const { return m[2]; }
    cxd u22() const { return m[3]; }

    Mat2c transpose() const { return {{m[0], m[2], m[1], m[3]}}; }
    Mat2c adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    cxd det() const { return m[0] * m[3] - m[1] * m[2]; }

    friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
        return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                 a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    friend Mat2c operator-(const Mat2c& a, const Mat2c& b) {
        return {{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
    }

    double max_abs() const {
        double v = 0.0;
        for (const auto& e : m) v = std::max(v, std::abs(e));
        return v;
    }

    // max-norm deviation of U†U from the identity
    double unitarity_error() const {
        return ((adjoint() * *this) - identity()).max_abs();
    }
};

// Cayley-Klein parameterized SU(2) matrix [[a, b], [-b*, a*]].
inline Mat2c su2_from_cayley_klein(cxd a, cxd b) {
    return {{a, b, -std::conj(b), std::conj(a)}};
}

// Nearest-unitary (polar) correction, closed form for 2x2.
Mat2c polar_unitarize(const Mat2c& u);

} // namespace pulsekit
