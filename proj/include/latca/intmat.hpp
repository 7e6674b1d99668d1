#pragma once

// Exact integer matrix algorithms: column Hermite form, Smith form with
// transforms, and linear solving modulo m. Everything is overflow-checked;
// sizes here are desk scale (dimensions in the tens).

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "checked.hpp"

namespace latca {

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;  // row-major: a[r][c]

inline Mat mat_identity(int n) {
    Mat m(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    int n = (int)a.size(), k = (int)b.size(), p = k ? (int)b[0].size() : 0;
    Mat r(n, Vec(p, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (int c = 0; c < p; ++c)
                r[i][c] = checked_add(r[i][c], checked_mul(a[i][j], b[j][c]));
        }
    return r;
}

inline Vec mat_apply(const Mat& a, const Vec& x) {
    Vec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0) r[i] = checked_add(r[i], checked_mul(a[i][j], x[j]));
    return r;
}

struct HermiteForm {
    std::vector<Vec> cols;       // canonical basis columns, pivot rows strictly increasing
    std::vector<int> pivot_rows; // pivot_rows[j] = row of column j's first nonzero entry
};

// Column Hermite form of the lattice generated by the given columns.
// Pivots are positive; in each pivot row the entries of earlier columns lie
// in [0, pivot). Unique per lattice, so usable as a canonical form.
inline HermiteForm column_hermite(std::vector<Vec> cols, int dim) {
    for (const auto& c : cols) require((int)c.size() == dim, "generator dimension mismatch");
    int n = (int)cols.size();
    int r = 0;
    std::vector<int> pivot_rows;
    for (int row = 0; row < dim && r < n; ++row) {
        // Euclid on this row's entries across the active columns
        for (;;) {
            int best = -1;
            for (int j = r; j < n; ++j)
                if (cols[j][row] != 0 &&
                    (best < 0 || std::llabs(cols[j][row]) < std::llabs(cols[best][row])))
                    best = j;
            if (best < 0) break;
            std::swap(cols[r], cols[best]);
            bool clean = true;
            for (int j = r + 1; j < n; ++j) {
                if (cols[j][row] == 0) continue;
                i64 q = cols[j][row] / cols[r][row];  // truncated: Euclid still terminates
                for (int i = 0; i < dim; ++i)
                    cols[j][i] = checked_sub(cols[j][i], checked_mul(q, cols[r][i]));
                if (cols[j][row] != 0) clean = false;
            }
            if (clean) break;
        }
        if (cols[r][row] != 0) {
            if (cols[r][row] < 0)
                for (int i = 0; i < dim; ++i) cols[r][i] = checked_mul(cols[r][i], -1);
            pivot_rows.push_back(row);
            ++r;
        }
    }
    cols.resize(r);
    // normalize entries left of each pivot into [0, pivot)
    for (int j = 0; j < r; ++j) {
        int p = pivot_rows[j];
        for (int k = 0; k < j; ++k) {
            i64 q = floor_div(cols[k][p], cols[j][p]);
            if (q == 0) continue;
            for (int i = 0; i < dim; ++i)
                cols[k][i] = checked_sub(cols[k][i], checked_mul(q, cols[j][i]));
        }
    }
    return {std::move(cols), std::move(pivot_rows)};
}

struct SmithForm {
    Mat u, d, v;  // u * a * v == d, u and v unimodular, d diagonal with d1 | d2 | ...
};

inline SmithForm smith_form(Mat a) {
    int m = (int)a.size(), n = m ? (int)a[0].size() : 0;
    Mat u = mat_identity(m), v = mat_identity(n);
    auto row_sub = [&](int dst, int src, i64 q) {
        for (int c = 0; c < n; ++c) a[dst][c] = checked_sub(a[dst][c], checked_mul(q, a[src][c]));
        for (int c = 0; c < m; ++c) u[dst][c] = checked_sub(u[dst][c], checked_mul(q, u[src][c]));
    };
    auto col_sub = [&](int dst, int src, i64 q) {
        for (int r = 0; r < m; ++r) a[r][dst] = checked_sub(a[r][dst], checked_mul(q, a[r][src]));
        for (int r = 0; r < n; ++r) v[r][dst] = checked_sub(v[r][dst], checked_mul(q, v[r][src]));
    };
    int t = 0;
    while (t < std::min(m, n)) {
        // locate minimal nonzero entry in the remaining block
        int pr = -1, pc = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (a[i][j] != 0 &&
                    (pr < 0 || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) { pr = i; pc = j; }
        if (pr < 0) break;
        std::swap(a[t], a[pr]);
        std::swap(u[t], u[pr]);
        for (int r = 0; r < m; ++r) std::swap(a[r][t], a[r][pc]);
        for (int r = 0; r < n; ++r) std::swap(v[r][t], v[r][pc]);
        bool dirty = false;
        for (int i = t + 1; i < m; ++i)
            if (a[i][t] != 0) { row_sub(i, t, a[i][t] / a[t][t]); dirty |= a[i][t] != 0; }
        for (int j = t + 1; j < n; ++j)
            if (a[t][j] != 0) { col_sub(j, t, a[t][j] / a[t][t]); dirty |= a[t][j] != 0; }
        if (dirty) continue;  // remainders left, pick a smaller pivot next round
        // pivot must divide the rest of the block; if not, fold the offender in
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i)
            for (int j = t + 1; j < n && divides; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_sub(t, i, -1);  // adds row i to row t
                    divides = false;
                }
        if (!divides) continue;
        if (a[t][t] < 0) {
            for (int j = 0; j < n; ++j) a[t][j] = -a[t][j];
            for (int j = 0; j < m; ++j) u[t][j] = -u[t][j];
        }
        ++t;
    }
    return {std::move(u), std::move(a), std::move(v)};
}

inline i64 gcd_ll(i64 a, i64 b) { return std::gcd(a, b); }

// extended gcd: returns g and x,y with a*x + b*y = g
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = (a < 0 ? -1 : 1); y = 0; return a < 0 ? -a : a; }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline i64 mod_inverse(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(pos_mod(a, m), m, x, y);
    require(g == 1, "element not invertible modulo m");
    return pos_mod(x, m);
}

// One solution of A u = b (mod m), entries canonical in [0, m), or nullopt.
// A canonical solution of a*u = b modulo m, if one exists. The matrix is
// diagonalized with row and column operations carried out in Z/m throughout,
// which keeps every entry below m and avoids the coefficient growth of an
// integer Smith form.
inline std::optional<Vec> solve_mod(const Mat& a0, const Vec& b0, i64 m) {
    size_t rows = a0.size(), cols = rows ? a0[0].size() : 0;
    require(b0.size() == rows, "rhs size mismatch");
    require(m >= 2, "modulus must be at least 2");
    require(m <= kCoordBound, "modulus too large for exact arithmetic");
    Mat a = a0;
    Vec b = b0;
    for (auto& row : a) {
        require(row.size() == cols, "ragged matrix");
        for (i64& x : row) x = pos_mod(x, m);
    }
    for (i64& x : b) x = pos_mod(x, m);
    Mat v = mat_identity((int)cols);
    size_t diag = std::min(rows, cols);
    bool exhausted = false;
    for (size_t k = 0; k < diag && !exhausted; ++k) {
        for (;;) {
            size_t bi = rows, bj = cols;
            i64 best = 0;
            for (size_t i = k; i < rows; ++i)
                for (size_t j = k; j < cols; ++j)
                    if (a[i][j] != 0 && (best == 0 || a[i][j] < best)) {
                        best = a[i][j];
                        bi = i;
                        bj = j;
                    }
            if (best == 0) {
                exhausted = true;
                break;
            }
            if (bi != k) {
                std::swap(a[bi], a[k]);
                std::swap(b[bi], b[k]);
            }
            if (bj != k)
                for (size_t i = 0; i < rows; ++i) std::swap(a[i][bj], a[i][k]);
            if (bj != k)
                for (size_t i = 0; i < cols; ++i) std::swap(v[i][bj], v[i][k]);
            i64 p = a[k][k];
            bool clean = true;
            for (size_t i = 0; i < rows; ++i) {
                if (i == k || a[i][k] == 0) continue;
                i64 q = a[i][k] / p;
                for (size_t j = 0; j < cols; ++j) a[i][j] = pos_mod(a[i][j] - q * a[k][j], m);
                b[i] = pos_mod(b[i] - q * b[k], m);
                if (a[i][k] != 0) clean = false;
            }
            for (size_t j = 0; j < cols; ++j) {
                if (j == k || a[k][j] == 0) continue;
                i64 q = a[k][j] / p;
                for (size_t i = 0; i < rows; ++i) a[i][j] = pos_mod(a[i][j] - q * a[i][k], m);
                for (size_t i = 0; i < cols; ++i) v[i][j] = pos_mod(v[i][j] - q * v[i][k], m);
                if (a[k][j] != 0) clean = false;
            }
            if (clean) break;
        }
    }
    Vec w(cols, 0);
    for (size_t i = 0; i < rows; ++i) {
        i64 d = (i < diag) ? a[i][i] : 0;
        i64 g = std::gcd(d, m);  // gcd(0, m) == m
        if (b[i] % g != 0) return std::nullopt;
        if (d != 0) {
            i64 mg = m / g;
            w[i] = (mg == 1) ? 0 : pos_mod((b[i] / g) * mod_inverse(d / g, mg), mg);
        }
    }
    Vec u(cols, 0);
    for (size_t i = 0; i < cols; ++i) {
        i64 acc = 0;
        for (size_t j = 0; j < cols; ++j) acc = pos_mod(acc + v[i][j] * w[j], m);
        u[i] = acc;
    }
    return u;
}

}  // namespace latca
