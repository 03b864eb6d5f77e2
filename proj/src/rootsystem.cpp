#include "zastava/rootsystem.hpp"

#include "zastava/errors.hpp"
#include "zastava/matrix.hpp"

namespace zastava {

RootSystem RootSystem::simply_laced(char family, int rank) {
    RootSystem rs;
    rs.family = family;
    rs.rank = rank;
    if (rank < 1) throw DataError("rank must be >= 1");
    rs.cartan.assign(rank, std::vector<long>(rank, 0));
    auto bond = [&](int i, int j) {
        rs.cartan[i][j] = -1;
        rs.cartan[j][i] = -1;
    };
    for (int i = 0; i < rank; ++i) rs.cartan[i][i] = 2;
    switch (family) {
        case 'A':
            for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
            rs.marks.assign(rank, 1);
            break;
        case 'D': {
            if (rank < 4) throw DataError("type D needs rank >= 4");
            for (int i = 0; i + 2 < rank; ++i) bond(i, i + 1);
            bond(rank - 3, rank - 1);
            rs.marks.assign(rank, 2);
            rs.marks[0] = 1;
            rs.marks[rank - 2] = 1;
            rs.marks[rank - 1] = 1;
            break;
        }
        case 'E': {
            if (rank < 6 || rank > 8) throw DataError("type E needs rank 6..8");
            // chain 0-1-2-3-(4-..), with the extra node attached at position 2
            for (int i = 0; i + 2 < rank; ++i) bond(i, i + 1);
            bond(2, rank - 1);
            if (rank == 6) rs.marks = {1, 2, 3, 2, 1, 2};
            if (rank == 7) rs.marks = {2, 3, 4, 3, 2, 1, 2};
            if (rank == 8) rs.marks = {2, 4, 6, 5, 4, 3, 2, 3};
            break;
        }
        default: throw DataError("unsupported family (A, D, E only)");
    }
    return rs;
}

bool is_dominant(const WeightCoords& a) {
    for (long x : a)
        if (x < 0) return false;
    return true;
}

long highest_root_pairing(const RootSystem& rs, const WeightCoords& a) {
    if (static_cast<int>(a.size()) != rs.rank) throw DataError("weight has wrong rank");
    long s = 0;
    for (int i = 0; i < rs.rank; ++i) s += rs.marks[i] * a[i];
    return s;
}

WeightCoords reflect(const RootSystem& rs, int i, const WeightCoords& a) {
    WeightCoords out = a;
    for (int j = 0; j < rs.rank; ++j) out[j] -= a[i] * rs.cartan[i][j];
    return out;
}

WeightCoords translate(const RootSystem& rs, const WeightCoords& a, const std::vector<long>& m, long k) {
    WeightCoords out = a;
    for (int j = 0; j < rs.rank; ++j) {
        long add = 0;
        for (int i = 0; i < rs.rank; ++i) add += rs.cartan[i][j] * m[i];
        out[j] += k * add;
    }
    return out;
}

std::vector<Rational> coroot_coords(const RootSystem& rs, const WeightCoords& a) {
    Mat c(rs.rank, rs.rank), b(rs.rank, 1);
    for (int i = 0; i < rs.rank; ++i) {
        b.at(i, 0) = rat(a[i]);
        for (int j = 0; j < rs.rank; ++j) c.at(i, j) = rat(rs.cartan[j][i]);
    }
    auto sol = solve_linear(c, b);
    if (!sol || !sol->kernel.empty()) throw std::logic_error("Cartan matrix is singular");
    std::vector<Rational> out(rs.rank);
    for (int i = 0; i < rs.rank; ++i) out[i] = sol->particular.at(i, 0);
    return out;
}

Rational form_inner(const RootSystem& rs, const WeightCoords& a1, const WeightCoords& a2) {
    std::vector<Rational> m1 = coroot_coords(rs, a1);
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i) s += m1[i] * a2[i];
    return s;
}

Rational pairing_two_rho(const RootSystem& rs, const WeightCoords& a) {
    std::vector<Rational> m = coroot_coords(rs, a);
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i) s += m[i];
    return s * 2;
}

} // namespace zastava
