#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "cmod/errors.hpp"

namespace cmod {

/// Exact rational scalar. All coefficient arithmetic in the library is exact;
/// there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
Rat rat_from_string(const std::string& s);

/// Canonical form: "p" or "p/q" with q > 0 and gcd(p, q) = 1.
std::string rat_to_string(const Rat& r);

/// Exact square root if r is a square of a rational, nullopt otherwise.
std::optional<Rat> rat_sqrt(const Rat& r);

} // namespace cmod
