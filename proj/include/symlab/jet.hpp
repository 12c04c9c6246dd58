#pragma once

#include <cmath>

namespace symlab {

/// Value plus first partials in two chart directions.
template <class T>
struct Jet1 {
    T v{};
    T du{};
    T dv{};

    friend Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.du + b.du, a.dv + b.dv}; }
    friend Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.du - b.du, a.dv - b.dv}; }
    friend Jet1 operator-(const Jet1& a) { return {-a.v, -a.du, -a.dv}; }
    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        return {a.v * b.v, a.du * b.v + a.v * b.du, a.dv * b.v + a.v * b.dv};
    }
    friend Jet1 operator*(const T& s, const Jet1& a) { return {s * a.v, s * a.du, s * a.dv}; }
    friend Jet1 operator*(const Jet1& a, const T& s) { return s * a; }
    friend Jet1 operator/(const Jet1& a, const Jet1& b) {
        T iv = T(1) / b.v;
        T q = a.v * iv;
        return {q, (a.du - q * b.du) * iv, (a.dv - q * b.dv) * iv};
    }

    static Jet1 constant(const T& c) { return {c, T{}, T{}}; }
};

inline Jet1<double> sqrt(const Jet1<double>& a) {
    double s = std::sqrt(a.v);
    double h = 0.5 / s;
    return {s, h * a.du, h * a.dv};
}

/// Value plus first and second partials.
template <class T>
struct Jet2 {
    T v{};
    T du{};
    T dv{};
    T duu{};
    T duv{};
    T dvv{};

    static Jet2 seed_u(const T& value) { return {value, T(1), T(0), T(0), T(0), T(0)}; }
    static Jet2 seed_v(const T& value) { return {value, T(0), T(1), T(0), T(0), T(0)}; }
    static Jet2 constant(const T& c) { return {c, T(0), T(0), T(0), T(0), T(0)}; }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
    }
    friend Jet2 operator-(const Jet2& a) { return {-a.v, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        return {a.v * b.v,
                a.du * b.v + a.v * b.du,
                a.dv * b.v + a.v * b.dv,
                a.duu * b.v + 2 * a.du * b.du + a.v * b.duu,
                a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
                a.dvv * b.v + 2 * a.dv * b.dv + a.v * b.dvv};
    }
    friend Jet2 operator*(const T& s, const Jet2& a) {
        return {s * a.v, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
    }
    friend Jet2 operator*(const Jet2& a, const T& s) { return s * a; }
};

/// Composes a scalar function through a jet: needs f(g), f'(g), f''(g).
template <class T>
Jet2<T> jet2_chain(const Jet2<T>& g, const T& f, const T& f1, const T& f2) {
    return {f,
            f1 * g.du,
            f1 * g.dv,
            f2 * g.du * g.du + f1 * g.duu,
            f2 * g.du * g.dv + f1 * g.duv,
            f2 * g.dv * g.dv + f1 * g.dvv};
}

inline Jet2<double> sin(const Jet2<double>& g) {
    return jet2_chain(g, std::sin(g.v), std::cos(g.v), -std::sin(g.v));
}
inline Jet2<double> cos(const Jet2<double>& g) {
    return jet2_chain(g, std::cos(g.v), -std::sin(g.v), -std::cos(g.v));
}
inline Jet2<double> sqrt(const Jet2<double>& g) {
    double s = std::sqrt(g.v);
    return jet2_chain(g, s, 0.5 / s, -0.25 / (s * g.v));
}

template <class T>
struct Vec3 {
    T x{};
    T y{};
    T z{};

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(const T& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
};

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

} // namespace symlab
