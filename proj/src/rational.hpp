#pragma once

#include <gmpxx.h>
#include <string>

namespace lasso {

// Exact arbitrary-precision rational; the only coefficient type in the
// whole toolkit.  No floating point takes part in any algebraic check.
using Rational = mpq_class;

// Accepts "3", "-7", "1/4", "-1/4" and decimal forms like "2.5" or "1.0".
Rational rational_from_string(const std::string& text);

std::string rational_to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace lasso
