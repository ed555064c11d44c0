// geometry.hpp - complex 3-vectors, 3x3 dyadics, and the fixed geometric
// building blocks of dipole radiation: the spherical dipole basis, a
// deterministic transverse polarization basis, and the transverse/traceless
// projectors.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace lumen {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr complexd iu{0.0, 1.0};

// ---------------------------------------------------------------------------
// Real 3-vector
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    Vec3 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("Vec3::normalized: zero vector");
        return {x / n, y / n, z / n};
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// ---------------------------------------------------------------------------
// Complex 3-vector
// ---------------------------------------------------------------------------

struct Vec3c {
    complexd x{}, y{}, z{};

    Vec3c() = default;
    Vec3c(complexd cx, complexd cy, complexd cz) : x(cx), y(cy), z(cz) {}
    explicit Vec3c(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    complexd operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3c operator+(const Vec3c& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3c operator-(const Vec3c& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3c operator*(complexd s) const { return {x * s, y * s, z * s}; }
    Vec3c& operator+=(const Vec3c& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
};

inline Vec3c operator*(complexd s, const Vec3c& v) { return v * s; }

// Hermitian inner product <a, b> = sum conj(a_i) b_i.
inline complexd hdot(const Vec3c& a, const Vec3c& b) {
    return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}
inline complexd hdot(const Vec3& a, const Vec3c& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double hnorm(const Vec3c& a) { return std::sqrt(std::real(hdot(a, a))); }
inline double max_abs(const Vec3c& a) {
    return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}

// ---------------------------------------------------------------------------
// Complex 3x3 dyadic, row-major
// ---------------------------------------------------------------------------

struct Mat3c {
    std::array<complexd, 9> m{};

    complexd& operator()(int i, int j) { return m[3 * i + j]; }
    complexd operator()(int i, int j) const { return m[3 * i + j]; }

    static Mat3c identity() {
        Mat3c r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    Mat3c operator+(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3c operator-(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3c operator*(complexd s) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }
    Mat3c& operator+=(const Mat3c& o) {
        for (int i = 0; i < 9; ++i) m[i] += o.m[i];
        return *this;
    }

    Vec3c apply(const Vec3c& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Vec3c apply(const Vec3& v) const { return apply(Vec3c(v)); }

    Mat3c matmul(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                complexd s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3c transposed() const {
        Mat3c r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    complexd trace() const { return m[0] + m[4] + m[8]; }

    double max_abs() const {
        double v = 0.0;
        for (const auto& c : m) v = std::max(v, std::abs(c));
        return v;
    }
};

inline Mat3c operator*(complexd s, const Mat3c& a) { return a * s; }

// a b^T for real vectors (symmetric when a == b)
inline Mat3c outer(const Vec3& a, const Vec3& b) {
    Mat3c r;
    const double av[3] = {a.x, a.y, a.z};
    const double bv[3] = {b.x, b.y, b.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = av[i] * bv[j];
    return r;
}

// a b^dagger for complex vectors
inline Mat3c outer_h(const Vec3c& a, const Vec3c& b) {
    Mat3c r;
    const complexd av[3] = {a.x, a.y, a.z};
    const complexd bv[3] = {b.x, b.y, b.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = av[i] * std::conj(bv[j]);
    return r;
}

// ---------------------------------------------------------------------------
// Spherical dipole basis xi_{m2}, m2 in {-1, 0, +1}:
//   xi_0 = e_z,  xi_{+-1} = -+ (e_x +- i e_y) / sqrt(2)
// Orthonormal under the Hermitian inner product.
// ---------------------------------------------------------------------------

inline Vec3c xi(int m2) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (m2) {
        case 0:
            return {0.0, 0.0, 1.0};
        case +1:
            return {-inv_sqrt2, complexd(0.0, -inv_sqrt2), 0.0};
        case -1:
            return {inv_sqrt2, complexd(0.0, -inv_sqrt2), 0.0};
        default:
            throw std::invalid_argument("xi: m2 must be -1, 0 or +1");
    }
}

// ---------------------------------------------------------------------------
// Transverse polarization pair for a propagation direction k_hat.
// Convention: eps1 along z_hat x k_hat (normalized), eps2 = k_hat x eps1;
// at k_hat = +-z_hat the pair degenerates to (x_hat, +-y_hat).
// Any smooth transverse basis gives the same physics; this one is fixed so
// outputs are reproducible.
// ---------------------------------------------------------------------------

inline std::pair<Vec3, Vec3> polarization_basis(const Vec3& k_hat_in) {
    const double n = k_hat_in.norm();
    if (n == 0.0) throw std::invalid_argument("polarization_basis: zero direction");
    const Vec3 k_hat = k_hat_in * (1.0 / n);

    const Vec3 zxk = cross(Vec3{0.0, 0.0, 1.0}, k_hat);
    const double s = zxk.norm();
    if (s < 1e-12) {
        const double sign = k_hat.z >= 0.0 ? 1.0 : -1.0;
        return {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, sign, 0.0}};
    }
    const Vec3 eps1 = zxk * (1.0 / s);
    const Vec3 eps2 = cross(k_hat, eps1);
    return {eps1, eps2};
}

// ---------------------------------------------------------------------------
// Radiation projectors for an observation direction x_hat:
//   P_T = I - x x   (transverse; idempotent, trace 2)
//   P_S = I - 3 x x (traceless static-dipole shape)
// ---------------------------------------------------------------------------

inline std::pair<Mat3c, Mat3c> projectors(const Vec3& x_hat_in) {
    const double n = x_hat_in.norm();
    if (n == 0.0) throw std::invalid_argument("projectors: zero direction");
    const Vec3 x_hat = x_hat_in * (1.0 / n);
    const Mat3c xx = outer(x_hat, x_hat);
    const Mat3c id = Mat3c::identity();
    return {id - xx, id - xx * 3.0};
}

inline Mat3c transverse_projector(const Vec3& x_hat) { return projectors(x_hat).first; }
inline Mat3c traceless_projector(const Vec3& x_hat) { return projectors(x_hat).second; }

}  // namespace lumen
