#include "iwa/linalg.hpp"

#include <utility>

namespace iwa {

namespace {

// pick the row >= from whose entry in `col` has minimal valuation
long pick_pivot(const PadicMatrix& m, long from, long col) {
    long piv = -1, best = 0;
    for (long r = from; r < (long)m.size(); ++r) {
        const PadicScalar& e = m[(size_t)r][(size_t)col];
        if (e.is_zero()) continue;
        long v = e.valuation().first;
        if (piv < 0 || v < best) { piv = r; best = v; }
    }
    return piv;
}

}  // namespace

long padic_rank(PadicMatrix m) {
    if (m.empty()) return 0;
    long rows = (long)m.size(), cols = (long)m[0].size();
    long rank = 0;
    for (long col = 0; col < cols && rank < rows; ++col) {
        long piv = pick_pivot(m, rank, col);
        if (piv < 0) continue;
        std::swap(m[(size_t)piv], m[(size_t)rank]);
        PadicScalar inv = m[(size_t)rank][(size_t)col].inv();
        for (long r = rank + 1; r < rows; ++r) {
            if (m[(size_t)r][(size_t)col].is_zero()) continue;
            PadicScalar f = m[(size_t)r][(size_t)col] * inv;
            for (long j = col; j < cols; ++j)
                m[(size_t)r][(size_t)j] = m[(size_t)r][(size_t)j] - f * m[(size_t)rank][(size_t)j];
        }
        ++rank;
    }
    return rank;
}

PadicMatrix padic_inv(PadicMatrix a) {
    long d = (long)a.size();
    if (d == 0 || (long)a[0].size() != d) throw domain_error("padic_inv: square matrix required");
    long p = a[0][0].prime();
    long prec = a[0][0].rel_prec() + 32;
    PadicMatrix inv((size_t)d, std::vector<PadicScalar>((size_t)d, PadicScalar::zero_at(p, prec)));
    for (long i = 0; i < d; ++i) inv[(size_t)i][(size_t)i] = PadicScalar::from_long(p, 1, prec);
    for (long col = 0; col < d; ++col) {
        long piv = pick_pivot(a, col, col);
        if (piv < 0) throw domain_error("matrix not invertible at working precision");
        std::swap(a[(size_t)piv], a[(size_t)col]);
        std::swap(inv[(size_t)piv], inv[(size_t)col]);
        PadicScalar s = a[(size_t)col][(size_t)col].inv();
        for (long j = 0; j < d; ++j) {
            a[(size_t)col][(size_t)j] = a[(size_t)col][(size_t)j] * s;
            inv[(size_t)col][(size_t)j] = inv[(size_t)col][(size_t)j] * s;
        }
        for (long r = 0; r < d; ++r) {
            if (r == col || a[(size_t)r][(size_t)col].is_zero()) continue;
            PadicScalar f = a[(size_t)r][(size_t)col];
            for (long j = 0; j < d; ++j) {
                a[(size_t)r][(size_t)j] = a[(size_t)r][(size_t)j] - f * a[(size_t)col][(size_t)j];
                inv[(size_t)r][(size_t)j] = inv[(size_t)r][(size_t)j] - f * inv[(size_t)col][(size_t)j];
            }
        }
    }
    return inv;
}

std::optional<std::vector<PadicScalar>> padic_solve(PadicMatrix m, std::vector<PadicScalar> b) {
    long rows = (long)m.size();
    if (rows == 0 || b.size() != (size_t)rows) throw domain_error("padic_solve: shape mismatch");
    long cols = (long)m[0].size();
    long p = m[0][0].prime();
    long prec = m[0][0].rel_prec() + 32;
    std::vector<long> pivot_col;
    long rank = 0;
    for (long col = 0; col < cols && rank < rows; ++col) {
        long piv = pick_pivot(m, rank, col);
        if (piv < 0) continue;
        std::swap(m[(size_t)piv], m[(size_t)rank]);
        std::swap(b[(size_t)piv], b[(size_t)rank]);
        PadicScalar s = m[(size_t)rank][(size_t)col].inv();
        for (long j = col; j < cols; ++j) m[(size_t)rank][(size_t)j] = m[(size_t)rank][(size_t)j] * s;
        b[(size_t)rank] = b[(size_t)rank] * s;
        for (long r = 0; r < rows; ++r) {
            if (r == rank || m[(size_t)r][(size_t)col].is_zero()) continue;
            PadicScalar f = m[(size_t)r][(size_t)col];
            for (long j = col; j < cols; ++j)
                m[(size_t)r][(size_t)j] = m[(size_t)r][(size_t)j] - f * m[(size_t)rank][(size_t)j];
            b[(size_t)r] = b[(size_t)r] - f * b[(size_t)rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (long r = rank; r < rows; ++r)
        if (!b[(size_t)r].is_zero()) return std::nullopt;
    std::vector<PadicScalar> x((size_t)cols, PadicScalar::zero_at(p, prec));
    for (long r = 0; r < rank; ++r) x[(size_t)pivot_col[(size_t)r]] = b[(size_t)r];
    return x;
}

}  // namespace iwa
