#pragma once

#include <vector>

#include "cmod/series.hpp"

namespace cmod {

/// Small dense matrix over the truncated series ring (sizes here are at most
/// the module rank, i.e. 1..4).
class SMat {
public:
    SMat() : rows_(0), cols_(0), trunc_(1) {}
    SMat(int rows, int cols, int trunc)
        : rows_(rows), cols_(cols), trunc_(trunc),
          e_(static_cast<size_t>(rows * cols), Series::zero(trunc)) {}

    static SMat identity(int n, int trunc);
    static SMat scalar(int n, const Series& s);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int trunc() const { return trunc_; }

    Series& at(int r, int c) { return e_[static_cast<size_t>(r * cols_ + c)]; }
    const Series& at(int r, int c) const { return e_[static_cast<size_t>(r * cols_ + c)]; }

    SMat operator*(const SMat& o) const;
    SMat operator+(const SMat& o) const;
    SMat operator-(const SMat& o) const;
    SMat scaled(const Rat& r) const;
    SMat scaled(const Series& s) const;
    SMat divide_by_t_pow(int a) const;

    Series det() const;
    /// Adjugate: adj(A) * A = det(A) * id. For 1x1 matrices this is [1].
    SMat adjugate() const;

    bool identical(const SMat& o) const;
    bool agrees_within_watermark(const SMat& o) const;
    bool is_known_zero() const;

    /// Block-diagonal direct sum.
    static SMat block_diag(const SMat& a, const SMat& b);

private:
    SMat minor_matrix(int r, int c) const;

    int rows_, cols_, trunc_;
    std::vector<Series> e_;
};

} // namespace cmod
