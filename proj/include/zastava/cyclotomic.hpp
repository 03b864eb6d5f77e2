// Exact arithmetic in the cyclotomic field Q(zeta_n): elements are
// polynomials in zeta reduced mod the n-th cyclotomic polynomial. A value
// with no attached field is a plain rational constant compatible with any
// order; that keeps MatT<Cyc> usable without threading field handles.
#pragma once

#include "zastava/matrix.hpp"
#include "zastava/rational.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace zastava {

class CycField {
public:
    explicit CycField(int order);

    int order() const { return n_; }
    int degree() const { return static_cast<int>(phi_.size()) - 1; }
    // table of zeta^j in the power basis, j in [0, n)
    const std::vector<Rational>& zeta_power(int j) const { return zeta_pow_[((j % n_) + n_) % n_]; }
    const std::vector<Rational>& modulus() const { return phi_; }

    // shared instances keyed by order
    static const CycField* get(int order);

private:
    int n_;
    std::vector<Rational> phi_;                    // monic, coefficient i of x^i
    std::vector<std::vector<Rational>> zeta_pow_;  // reduced coordinates, length = degree
};

class Cyc {
public:
    Cyc() : f_(nullptr), c_(1, Rational(0)) {}
    Cyc(int v) : f_(nullptr), c_(1, rat(v)) {}
    Cyc(const Rational& v) : f_(nullptr), c_(1, v) {}
    Cyc(const CycField* f, std::vector<Rational> coords) : f_(f), c_(std::move(coords)) {
        if (f_ && static_cast<int>(c_.size()) != f_->degree())
            throw std::invalid_argument("cyclotomic coordinate length mismatch");
        trim();
    }

    static Cyc zeta_pow(const CycField* f, int j) { return Cyc(f, f->zeta_power(j)); }

    const CycField* field() const { return f_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_part() const {
        if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
        return c_[0];
    }
    const std::vector<Rational>& coords() const { return c_; }

    friend Cyc operator+(const Cyc& a, const Cyc& b) { return combine(a, b, false); }
    friend Cyc operator-(const Cyc& a, const Cyc& b) { return combine(a, b, true); }
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    friend Cyc operator/(const Cyc& a, const Cyc& b);
    friend bool operator==(const Cyc& a, const Cyc& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    Cyc inverse() const;

    std::string str() const;

private:
    static const CycField* join_field(const Cyc& a, const Cyc& b) {
        if (a.f_ && b.f_ && a.f_ != b.f_) throw std::invalid_argument("mixed cyclotomic fields");
        return a.f_ ? a.f_ : b.f_;
    }
    static Cyc promote(const Cyc& a, const CycField* f) {
        if (a.f_ == f) return a;
        if (a.f_) throw std::invalid_argument("mixed cyclotomic fields");
        std::vector<Rational> c(f ? f->degree() : 1, Rational(0));
        c[0] = a.c_[0];
        Cyc r;
        r.f_ = f;
        r.c_ = std::move(c);
        return r;
    }
    static Cyc combine(const Cyc& a, const Cyc& b, bool sub) {
        const CycField* f = join_field(a, b);
        Cyc x = promote(a, f), y = promote(b, f);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (sub)
                x.c_[i] -= y.c_[i];
            else
                x.c_[i] += y.c_[i];
        }
        return x;
    }
    void trim() {}

    const CycField* f_;
    std::vector<Rational> c_;
};

using CycMat = MatT<Cyc>;

// Entry-wise promotion of a rational matrix into Q(zeta_n).
CycMat to_cyc(const Mat& m, const CycField* f);
// Entry-wise demotion; throws if any entry is irrational.
Mat to_rational(const CycMat& m);

} // namespace zastava
