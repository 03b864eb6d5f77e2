#include "zastava/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace zastava {

namespace {

using Poly = std::vector<Rational>; // coefficient i of x^i, no trailing zeros enforced

void strip(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    strip(r);
    return r;
}

// exact division, remainder must come out zero when exact=true
Poly poly_divmod(Poly a, const Poly& b, Poly* rem) {
    Poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        strip(a);
    }
    if (rem) *rem = a;
    strip(q);
    return q;
}

Poly cyclotomic_poly(int n) {
    // x^n - 1 divided by all lower cyclotomic factors
    Poly num(n + 1, Rational(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly rem;
        num = poly_divmod(num, cyclotomic_poly(d), &rem);
        if (!rem.empty()) throw std::logic_error("cyclotomic polynomial division not exact");
    }
    return num;
}

// extended gcd over Q[x]: g = u*a + v*b with g monic
void poly_xgcd(Poly a, Poly b, Poly& g, Poly& u, Poly& v) {
    Poly u0 = {Rational(1)}, v0 = {}, u1 = {}, v1 = {Rational(1)};
    while (!b.empty()) {
        Poly rem;
        Poly q = poly_divmod(a, b, &rem);
        Poly u2 = u0, v2 = v0;
        // u2 -= q*u1 ; v2 -= q*v1
        Poly qu = poly_mul(q, u1), qv = poly_mul(q, v1);
        u2.resize(std::max(u2.size(), qu.size()), Rational(0));
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        strip(u2);
        v2.resize(std::max(v2.size(), qv.size()), Rational(0));
        for (std::size_t i = 0; i < qv.size(); ++i) v2[i] -= qv[i];
        strip(v2);
        a = b; u0 = u1; v0 = v1;
        b = rem; u1 = u2; v1 = v2;
    }
    if (a.empty()) throw std::domain_error("xgcd of zero polynomials");
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
    for (auto& c : u0) c /= lead;
    for (auto& c : v0) c /= lead;
    g = a; u = u0; v = v0;
}

} // namespace

CycField::CycField(int order) : n_(order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    phi_ = cyclotomic_poly(order);
    int deg = static_cast<int>(phi_.size()) - 1;
    zeta_pow_.resize(order);
    // x^j mod phi, computed by repeated multiplication
    Poly cur = {Rational(1)};
    for (int j = 0; j < order; ++j) {
        std::vector<Rational> coords(deg, Rational(0));
        for (std::size_t i = 0; i < cur.size(); ++i) coords[i] = cur[i];
        zeta_pow_[j] = coords;
        cur = poly_mul(cur, Poly{Rational(0), Rational(1)});
        Poly rem;
        poly_divmod(cur, phi_, &rem);
        cur = rem;
    }
}

const CycField* CycField::get(int order) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, std::make_unique<CycField>(order)).first;
    return it->second.get();
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    const CycField* f = Cyc::join_field(a, b);
    if (!f) return Cyc(a.c_[0] * b.c_[0]);
    Cyc x = Cyc::promote(a, f), y = Cyc::promote(b, f);
    Poly pa(x.c_.begin(), x.c_.end()), pb(y.c_.begin(), y.c_.end());
    strip(pa);
    strip(pb);
    Poly prod = poly_mul(pa, pb);
    Poly rem;
    poly_divmod(prod, f->modulus(), &rem);
    std::vector<Rational> coords(f->degree(), Rational(0));
    for (std::size_t i = 0; i < rem.size(); ++i) coords[i] = rem[i];
    return Cyc(f, coords);
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    if (!f_) return Cyc(Rational(1) / c_[0]);
    Poly a(c_.begin(), c_.end());
    strip(a);
    Poly g, u, v;
    poly_xgcd(a, f_->modulus(), g, u, v);
    if (g.size() != 1) throw std::logic_error("cyclotomic modulus not coprime to element");
    // u*a = g = const mod phi
    Poly rem;
    poly_divmod(u, f_->modulus(), &rem);
    std::vector<Rational> coords(f_->degree(), Rational(0));
    for (std::size_t i = 0; i < rem.size(); ++i) coords[i] = rem[i] / g[0];
    return Cyc(f_, coords);
}

Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

std::string Cyc::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << rational_to_string(c_[i]);
        if (i > 0) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycMat to_cyc(const Mat& m, const CycField* f) {
    CycMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::vector<Rational> coords(f->degree(), Rational(0));
            coords[0] = m.at(i, j);
            r.at(i, j) = Cyc(f, coords);
        }
    return r;
}

Mat to_rational(const CycMat& m) {
    Mat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).rational_part();
    return r;
}

} // namespace zastava
