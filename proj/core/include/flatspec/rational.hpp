#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatspec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or a finite decimal such as "-0.25" into an exact rational.
/// Anything else (including "sqrt(3)/2") is rejected.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise, always reduced.
std::string to_string(const Rational& value);

/// Fractional part in [0, 1).
Rational fractional_part(const Rational& value);

Integer floor(const Rational& value);

}  // namespace flatspec
