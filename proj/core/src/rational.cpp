#include "seqcontract/rational.hpp"

#include <cctype>

#include "seqcontract/errors.hpp"

namespace seqcontract {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ValidationError("malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational out(negative ? mpz_class(-n) : n, d);
  out.canonicalize();
  return out;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Rational ratio(long num, long den) {
  Rational out{mpz_class(num), mpz_class(den)};
  out.canonicalize();
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

std::string ExtendedRational::to_string() const {
  return infinite_ ? std::string("inf") : format_rational(value_);
}

}  // namespace seqcontract
