#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmod/rational.hpp"

namespace cmod {

/// Valuation of a truncated series: a nonnegative integer, or infinite for the
/// series that is zero at the working truncation.
struct Valuation {
    bool infinite = false;
    int value = 0;

    static Valuation inf() { return Valuation{true, 0}; }
    static Valuation at(int v) { return Valuation{false, v}; }

    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator!=(const Valuation& o) const { return !(*this == o); }
    /// true if this valuation is >= a (infinite compares above everything).
    bool at_least(int a) const { return infinite || value >= a; }
};

/// Element of Q[t]/(t^N) with a per-value precision watermark.
///
/// Coefficients at degrees < watermark() are exact; degrees >= watermark()
/// are unknown (stored as zero). A freshly made series has watermark N.
/// Division by t^a lowers the watermark by a; every divisibility test that
/// would have to read past the watermark raises PrecisionExhausted instead of
/// guessing.
class Series {
public:
    Series() : trunc_(1), wm_(1), c_(1, Rat(0)) {}

    /// make_series: zero-pads to length N. Rejects N == 0 and oversize input.
    Series(std::vector<Rat> coeffs, int trunc);

    static Series zero(int trunc) { return Series(std::vector<Rat>{}, trunc); }
    static Series one(int trunc) { return constant(Rat(1), trunc); }
    static Series t(int trunc) { return monomial(Rat(1), 1, trunc); }
    static Series constant(const Rat& r, int trunc) { return monomial(r, 0, trunc); }
    static Series monomial(const Rat& r, int deg, int trunc);

    int trunc() const { return trunc_; }
    int watermark() const { return wm_; }
    const Rat& coeff(int d) const { return c_[static_cast<size_t>(d)]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o) { return *this = *this * o; }
    /// In-place fused accumulate: *this += a * b.
    void add_mul(const Series& a, const Series& b);

    Series scaled(const Rat& r) const;
    /// Multiplication by t^a.
    Series shifted_up(int a) const;

    /// Multiplicative inverse; requires a unit (nonzero constant term).
    Series inverse() const;

    bool is_unit() const { return wm_ >= 1 && !cmod::is_zero(c_[0]); }
    /// All stored coefficients vanish (zero as far as this value is known).
    bool is_known_zero() const;
    /// Smallest degree with a nonzero stored coefficient, if any.
    std::optional<int> known_valuation() const;

    /// min { d : coeff(d) != 0 }; infinite for the (fully known) zero series.
    /// Raises PrecisionExhausted when the answer would depend on coefficients
    /// past the watermark.
    Valuation valuation() const;

    /// divides: true iff valuation >= a. A nonzero coefficient below
    /// min(a, watermark) refutes immediately; otherwise certification needs
    /// a <= watermark and a < N.
    bool divisible_by_t_pow(int a) const;

    /// divide_exact: the v with *this == t^a * v. Watermark drops by a.
    Series divide_by_t_pow(int a) const;

    /// Exact equality of stored coefficients (ignores watermarks).
    bool identical(const Series& o) const;
    /// Coefficients agree at all degrees < upto.
    bool agrees_up_to(const Series& o, int upto) const;
    /// Coefficients agree on the common watermark.
    bool agrees_within_watermark(const Series& o) const;

    /// Degree of the stored polynomial part (-1 for zero).
    int stored_degree() const;

    /// Series literal, e.g. "-2", "1+3t", "t^2-1/2t^3".
    std::string str() const;
    static Series parse(const std::string& text, int trunc);

private:
    struct Raw {};
    Series(Raw, int trunc, int wm)
        : trunc_(trunc), wm_(wm), c_(static_cast<size_t>(trunc), Rat(0)) {}

    int trunc_;
    int wm_;
    std::vector<Rat> c_;
};

} // namespace cmod
