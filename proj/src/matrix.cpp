#include "cmod/matrix.hpp"

#include "cmod/errors.hpp"

namespace cmod {

SMat SMat::identity(int n, int trunc) {
    SMat m(n, n, trunc);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::one(trunc);
    return m;
}

SMat SMat::scalar(int n, const Series& s) {
    SMat m(n, n, s.trunc());
    for (int i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
}

SMat SMat::operator*(const SMat& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch in product");
    SMat r(rows_, o.cols_, trunc_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Series& a = at(i, k);
            if (a.is_known_zero() && a.watermark() == a.trunc()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j).add_mul(a, o.at(k, j));
        }
    return r;
}

SMat SMat::operator+(const SMat& o) const {
    SMat r(rows_, cols_, trunc_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

SMat SMat::operator-(const SMat& o) const {
    SMat r(rows_, cols_, trunc_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

SMat SMat::scaled(const Rat& s) const {
    SMat r(rows_, cols_, trunc_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].scaled(s);
    return r;
}

SMat SMat::scaled(const Series& s) const {
    SMat r(rows_, cols_, trunc_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

SMat SMat::divide_by_t_pow(int a) const {
    SMat r(rows_, cols_, trunc_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].divide_by_t_pow(a);
    return r;
}

SMat SMat::minor_matrix(int r, int c) const {
    SMat m(rows_ - 1, cols_ - 1, trunc_);
    for (int i = 0, mi = 0; i < rows_; ++i) {
        if (i == r) continue;
        for (int j = 0, mj = 0; j < cols_; ++j) {
            if (j == c) continue;
            m.at(mi, mj) = at(i, j);
            ++mj;
        }
        ++mi;
    }
    return m;
}

Series SMat::det() const {
    if (rows_ != cols_) throw Error("determinant of non-square matrix");
    if (rows_ == 1) return at(0, 0);
    if (rows_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    Series acc = Series::zero(trunc_);
    for (int j = 0; j < cols_; ++j) {
        Series term = at(0, j) * minor_matrix(0, j).det();
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

SMat SMat::adjugate() const {
    if (rows_ != cols_) throw Error("adjugate of non-square matrix");
    if (rows_ == 1) {
        SMat m(1, 1, trunc_);
        m.at(0, 0) = Series::one(trunc_);
        return m;
    }
    SMat adj(rows_, cols_, trunc_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            Series cof = minor_matrix(i, j).det();
            adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

bool SMat::identical(const SMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].identical(o.e_[i])) return false;
    return true;
}

bool SMat::agrees_within_watermark(const SMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].agrees_within_watermark(o.e_[i])) return false;
    return true;
}

bool SMat::is_known_zero() const {
    for (const auto& s : e_)
        if (!s.is_known_zero()) return false;
    return true;
}

SMat SMat::block_diag(const SMat& a, const SMat& b) {
    SMat m(a.rows_ + b.rows_, a.cols_ + b.cols_, a.trunc_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return m;
}

} // namespace cmod
