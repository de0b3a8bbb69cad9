#include "cmod/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cmod {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class num(s);
            return Rat(num);
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rat> rat_sqrt(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    mpz_class num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat out(sn, sd);
    out.canonicalize();
    return out;
}

Series::Series(std::vector<Rat> coeffs, int trunc) : trunc_(trunc), wm_(trunc) {
    if (trunc < 1) throw InputError("truncation order must be >= 1");
    if (static_cast<int>(coeffs.size()) > trunc)
        throw InputError("coefficient list longer than truncation order");
    c_ = std::move(coeffs);
    c_.resize(static_cast<size_t>(trunc), Rat(0));
}

Series Series::monomial(const Rat& r, int deg, int trunc) {
    Series s = Series::zero(trunc);
    if (deg < 0) throw InputError("negative degree");
    if (deg >= trunc) throw InputError("monomial degree exceeds truncation order");
    s.c_[static_cast<size_t>(deg)] = r;
    return s;
}


Series Series::operator+(const Series& o) const {
    Series r(Raw{}, trunc_, std::min(wm_, o.wm_));
    for (int d = 0; d < r.wm_; ++d) r.c_[d] = c_[d] + o.c_[d];
    return r;
}

Series Series::operator-(const Series& o) const {
    Series r(Raw{}, trunc_, std::min(wm_, o.wm_));
    for (int d = 0; d < r.wm_; ++d) r.c_[d] = c_[d] - o.c_[d];
    return r;
}

Series Series::operator-() const {
    Series r(Raw{}, trunc_, wm_);
    for (int d = 0; d < wm_; ++d) r.c_[d] = -c_[d];
    return r;
}

Series& Series::operator+=(const Series& o) {
    int wm = std::min(wm_, o.wm_);
    for (int d = 0; d < wm; ++d) c_[static_cast<size_t>(d)] += o.c_[static_cast<size_t>(d)];
    for (int d = wm; d < wm_; ++d) c_[static_cast<size_t>(d)] = 0;
    wm_ = wm;
    return *this;
}

Series& Series::operator-=(const Series& o) {
    int wm = std::min(wm_, o.wm_);
    for (int d = 0; d < wm; ++d) c_[static_cast<size_t>(d)] -= o.c_[static_cast<size_t>(d)];
    for (int d = wm; d < wm_; ++d) c_[static_cast<size_t>(d)] = 0;
    wm_ = wm;
    return *this;
}

void Series::add_mul(const Series& a, const Series& b) {
    auto lb = [](const Series& s) {
        auto v = s.known_valuation();
        return v ? *v : s.wm_;
    };
    int wm = std::min({trunc_, a.wm_ + lb(b), b.wm_ + lb(a), wm_});
    for (int d = wm; d < wm_; ++d) c_[static_cast<size_t>(d)] = 0;
    wm_ = wm;
    for (int i = 0; i < a.wm_ && i < wm; ++i) {
        if (cmod::is_zero(a.c_[static_cast<size_t>(i)])) continue;
        int jmax = std::min(b.wm_, wm - i);
        for (int j = 0; j < jmax; ++j) {
            if (cmod::is_zero(b.c_[static_cast<size_t>(j)])) continue;
            c_[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
        }
    }
}

Series Series::operator*(const Series& o) const {
    // Unknown tails contribute only beyond wm + (lower bound on the other
    // factor's valuation), so the product stays exact further than min(wm).
    auto lb = [](const Series& s) {
        auto v = s.known_valuation();
        return v ? *v : s.wm_;
    };
    int wm = std::min({trunc_, wm_ + lb(o), o.wm_ + lb(*this)});
    Series r(Raw{}, trunc_, wm);
    for (int i = 0; i < wm_ && i < wm; ++i) {
        if (cmod::is_zero(c_[i])) continue;
        int jmax = std::min(o.wm_, wm - i);
        for (int j = 0; j < jmax; ++j) {
            if (cmod::is_zero(o.c_[j])) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

Series Series::scaled(const Rat& r) const {
    if (cmod::is_zero(r)) return Series::zero(trunc_);
    Series out(Raw{}, trunc_, wm_);
    for (int d = 0; d < wm_; ++d) out.c_[d] = c_[d] * r;
    return out;
}

Series Series::shifted_up(int a) const {
    if (a == 0) return *this;
    Series out(Raw{}, trunc_, std::min(trunc_, wm_ + a));
    for (int d = 0; d + a < out.wm_; ++d) out.c_[d + a] = c_[d];
    return out;
}

Series Series::inverse() const {
    if (!is_unit()) throw NotDivisible("cannot invert a non-unit series");
    Series out(Raw{}, trunc_, wm_);
    Rat inv0 = Rat(1) / c_[0];
    out.c_[0] = inv0;
    for (int d = 1; d < wm_; ++d) {
        Rat acc(0);
        for (int i = 1; i <= d; ++i) {
            if (cmod::is_zero(c_[i])) continue;
            acc += c_[i] * out.c_[d - i];
        }
        out.c_[d] = -acc * inv0;
    }
    return out;
}

bool Series::is_known_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return cmod::is_zero(r); });
}

std::optional<int> Series::known_valuation() const {
    for (int d = 0; d < trunc_; ++d)
        if (!cmod::is_zero(c_[d])) return d;
    return std::nullopt;
}

Valuation Series::valuation() const {
    if (auto v = known_valuation()) return Valuation::at(*v);
    if (wm_ == trunc_) return Valuation::inf();
    throw PrecisionExhausted("valuation undecidable: series is zero up to watermark " +
                             std::to_string(wm_) + " < truncation " + std::to_string(trunc_));
}

bool Series::divisible_by_t_pow(int a) const {
    if (a <= 0) return true;
    int scan = std::min(a, wm_);
    for (int d = 0; d < scan; ++d)
        if (!cmod::is_zero(c_[d])) return false;
    if (a <= wm_ && a < trunc_) return true;
    // Not refuted and not certifiable: a >= N, or the test reads past the
    // watermark.
    throw PrecisionExhausted("divisibility by t^" + std::to_string(a) +
                             " not decidable (watermark " + std::to_string(wm_) +
                             ", truncation " + std::to_string(trunc_) + ")");
}

Series Series::divide_by_t_pow(int a) const {
    if (a == 0) return *this;
    if (a < 0) return shifted_up(-a);
    int scan = std::min(a, wm_);
    for (int d = 0; d < scan; ++d)
        if (!cmod::is_zero(c_[d]))
            throw NotDivisible("t^" + std::to_string(a) + " does not divide " + str());
    if (a > wm_)
        throw PrecisionExhausted("exact division by t^" + std::to_string(a) +
                                 " reads past watermark " + std::to_string(wm_));
    Series out(Raw{}, trunc_, wm_ - a);
    for (int d = 0; d < out.wm_; ++d) out.c_[d] = c_[d + a];
    return out;
}

bool Series::identical(const Series& o) const {
    return trunc_ == o.trunc_ && c_ == o.c_;
}

bool Series::agrees_up_to(const Series& o, int upto) const {
    for (int d = 0; d < upto; ++d)
        if (c_[d] != o.c_[d]) return false;
    return true;
}

bool Series::agrees_within_watermark(const Series& o) const {
    return agrees_up_to(o, std::min(wm_, o.wm_));
}

int Series::stored_degree() const {
    for (int d = trunc_ - 1; d >= 0; --d)
        if (!cmod::is_zero(c_[d])) return d;
    return -1;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d < trunc_; ++d) {
        const Rat& r = c_[d];
        if (cmod::is_zero(r)) continue;
        Rat mag = abs(r);
        if (first) {
            if (sgn(r) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(r) < 0 ? "-" : "+");
        }
        bool unit_coeff = (mag == 1);
        if (d == 0) {
            os << rat_to_string(mag);
        } else {
            if (!unit_coeff) os << rat_to_string(mag);
            os << "t";
            if (d > 1) os << "^" << d;
        }
    }
    if (first) os << "0";
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
};

mpz_class parse_integer(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw InputError("expected digits in series literal '" + c.s + "'");
    return mpz_class(c.s.substr(start, c.i - start));
}

} // namespace

Series Series::parse(const std::string& text, int trunc) {
    Cursor c{text};
    Series out = Series::zero(trunc);
    bool any_term = false;
    int sign = 1;
    if (!c.done() && (c.peek() == '+' || c.peek() == '-')) {
        sign = (c.peek() == '-') ? -1 : 1;
        ++c.i;
    }
    bool pending_term = true;
    while (true) {
        if (c.done()) {
            if (!any_term || pending_term) throw InputError("dangling operator in series literal");
            break;
        }
        Rat coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            mpz_class num = parse_integer(c);
            mpz_class den = 1;
            if (!c.done() && c.peek() == '/') {
                ++c.i;
                den = parse_integer(c);
                if (den == 0) throw InputError("zero denominator in series literal");
            }
            coeff = Rat(num, den);
            coeff.canonicalize();
            have_coeff = true;
        }
        int deg = 0;
        if (!c.done() && (c.peek() == 't' || c.peek() == 'T')) {
            ++c.i;
            deg = 1;
            if (!c.done() && c.peek() == '^') {
                ++c.i;
                mpz_class e = parse_integer(c);
                if (!e.fits_sint_p()) throw InputError("exponent out of range");
                deg = static_cast<int>(e.get_si());
            }
        } else if (!have_coeff) {
            throw InputError("expected term in series literal '" + text + "'");
        }
        if (deg >= trunc)
            throw InputError("term t^" + std::to_string(deg) +
                             " exceeds truncation order " + std::to_string(trunc));
        out += Series::monomial(sign < 0 ? Rat(-coeff) : coeff, deg, trunc);
        any_term = true;
        pending_term = false;
        if (c.done()) break;
        char op = c.peek();
        if (op != '+' && op != '-')
            throw InputError("unexpected character '" + std::string(1, op) +
                             "' in series literal '" + text + "'");
        sign = (op == '-') ? -1 : 1;
        pending_term = true;
        ++c.i;
    }
    return out;
}

} // namespace cmod
