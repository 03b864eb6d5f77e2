// Block matrices whose entries are polynomials in a finite set of commuting
// section symbols with rational-matrix coefficients. Each block row/column
// carries a multi-degree label and every symbol a degree vector, so a
// grading audit can confirm that each monomial matches its block's degree
// difference. No relations are imposed among the symbols: identities are
// verified in the free commutative model.
#pragma once

#include "zastava/matrix.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace zastava {

struct SymbolTable {
    std::vector<std::string> names;
    std::vector<std::vector<int>> degrees; // one degree vector per symbol
    int degree_rank = 0;

    int add(const std::string& name, const std::vector<int>& degree) {
        if (names.empty()) degree_rank = static_cast<int>(degree.size());
        if (static_cast<int>(degree.size()) != degree_rank)
            throw std::invalid_argument("symbol degree rank mismatch");
        names.push_back(name);
        degrees.push_back(degree);
        return static_cast<int>(names.size()) - 1;
    }
    int count() const { return static_cast<int>(names.size()); }
};

using Monomial = std::vector<int>; // exponent per symbol

inline std::vector<int> monomial_degree(const SymbolTable& t, const Monomial& m) {
    std::vector<int> deg(t.degree_rank, 0);
    for (int s = 0; s < t.count(); ++s)
        for (int c = 0; c < t.degree_rank; ++c) deg[c] += m[s] * t.degrees[s][c];
    return deg;
}

inline std::string monomial_str(const SymbolTable& t, const Monomial& m) {
    std::ostringstream os;
    bool any = false;
    for (int s = 0; s < t.count(); ++s) {
        if (m[s] == 0) continue;
        if (any) os << "*";
        os << t.names[s];
        if (m[s] > 1) os << "^" << m[s];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

// polynomial with matrix coefficients
struct MatPoly {
    int rows = 0, cols = 0;
    int nsyms = 0;
    std::map<Monomial, Mat> terms;

    MatPoly() = default;
    MatPoly(int r, int c, int ns) : rows(r), cols(c), nsyms(ns) {}

    static MatPoly monomial_term(int nsyms, const Monomial& mono, const Mat& coeff) {
        MatPoly p(coeff.rows(), coeff.cols(), nsyms);
        if (!coeff.is_zero()) p.terms[mono] = coeff;
        return p;
    }
    static MatPoly constant(int nsyms, const Mat& coeff) {
        return monomial_term(nsyms, Monomial(nsyms, 0), coeff);
    }
    static MatPoly single(int nsyms, int sym, const Mat& coeff) {
        Monomial m(nsyms, 0);
        m[sym] = 1;
        return monomial_term(nsyms, m, coeff);
    }

    void add_term(const Monomial& mono, const Mat& coeff) {
        if (coeff.is_zero()) return;
        auto it = terms.find(mono);
        if (it == terms.end()) {
            terms[mono] = coeff;
        } else {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    MatPoly operator+(const MatPoly& o) const {
        MatPoly r = *this;
        for (const auto& [mono, c] : o.terms) r.add_term(mono, c);
        return r;
    }
    MatPoly operator-() const {
        MatPoly r = *this;
        for (auto& [mono, c] : r.terms) c = -c;
        return r;
    }
    MatPoly operator-(const MatPoly& o) const { return *this + (-o); }
    MatPoly operator*(const MatPoly& o) const {
        MatPoly r(rows, o.cols, nsyms);
        for (const auto& [m1, c1] : terms)
            for (const auto& [m2, c2] : o.terms) {
                Monomial m(nsyms);
                for (int s = 0; s < nsyms; ++s) m[s] = m1[s] + m2[s];
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    bool is_zero() const { return terms.empty(); }
};

// block matrix of polynomials with degree-labelled summands
struct PolyMat {
    struct Summand {
        std::string name;
        std::vector<int> degree;
        int dim = 0;
    };

    const SymbolTable* syms = nullptr;
    std::vector<Summand> src, dst;
    std::map<std::pair<int, int>, MatPoly> blocks; // (dst index, src index)

    void set_block(int di, int si, const MatPoly& p) {
        if (p.is_zero()) return;
        auto key = std::make_pair(di, si);
        auto it = blocks.find(key);
        if (it == blocks.end())
            blocks[key] = p;
        else {
            it->second = it->second + p;
            if (it->second.is_zero()) blocks.erase(key);
        }
    }

    const MatPoly* block(int di, int si) const {
        auto it = blocks.find({di, si});
        return it == blocks.end() ? nullptr : &it->second;
    }

    bool is_zero() const {
        for (const auto& [k, b] : blocks)
            if (!b.is_zero()) return false;
        return true;
    }

    // every monomial's symbol degree must equal dst.degree - src.degree
    void grading_audit() const {
        for (const auto& [key, b] : blocks) {
            const auto& [di, si] = key;
            for (const auto& [mono, c] : b.terms) {
                std::vector<int> d = monomial_degree(*syms, mono);
                for (int t = 0; t < syms->degree_rank; ++t)
                    if (d[t] != dst[di].degree[t] - src[si].degree[t])
                        throw std::logic_error("grading violation at block (" + dst[di].name + " <- " +
                                               src[si].name + ") monomial " + monomial_str(*syms, mono));
            }
        }
    }

    std::string dump() const {
        std::ostringstream os;
        for (const auto& [key, b] : blocks) {
            const auto& [di, si] = key;
            os << dst[di].name << " <- " << src[si].name << ":\n";
            for (const auto& [mono, c] : b.terms) {
                os << "  " << monomial_str(*syms, mono) << " * [";
                for (int i = 0; i < c.rows(); ++i) {
                    if (i) os << "; ";
                    for (int j = 0; j < c.cols(); ++j) {
                        if (j) os << ",";
                        os << rational_to_string(c.at(i, j));
                    }
                }
                os << "]\n";
            }
        }
        if (blocks.empty()) os << "(zero)\n";
        return os.str();
    }
};

// D * C with summand matching (C.dst must equal D.src)
inline PolyMat poly_mat_mul(const PolyMat& d, const PolyMat& c) {
    if (d.src.size() != c.dst.size()) throw std::invalid_argument("block product: summand count mismatch");
    PolyMat r;
    r.syms = d.syms;
    r.src = c.src;
    r.dst = d.dst;
    for (const auto& [dk, db] : d.blocks)
        for (const auto& [ck, cb] : c.blocks) {
            if (dk.second != ck.first) continue;
            r.set_block(dk.first, ck.second, db * cb);
        }
    return r;
}

} // namespace zastava
