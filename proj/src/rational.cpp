#include "vmp/rational.hpp"

#include <cctype>
#include <cmath>

#include "vmp/errors.hpp"

namespace vmp {

const mpz_class& default_max_denominator() {
  static const mpz_class value("1000000000000");
  return value;
}

Rational rationalize(double x, const mpz_class& max_den) {
  if (!std::isfinite(x)) throw InputError("cannot rationalize a non-finite value");
  if (max_den < 1) throw InputError("max denominator must be positive");
  Rational exact(x);  // exact binary value of the double
  if (exact.get_den() <= max_den) return exact;

  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) break;
    mpz_class p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = num - a * den;
    num = den;
    den = rem;
  }
  Rational best(p1, q1);
  best.canonicalize();
  mpz_class k = (max_den - q0) / q1;
  if (k > 0) {
    Rational semi(p0 + k * p1, q0 + k * q1);
    semi.canonicalize();
    if (abs(semi - exact) < abs(best - exact)) return semi;
  }
  return best;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

Rational parse_decimal(std::string_view text) {
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  long exponent = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InputError("malformed number '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') {
      throw InputError("malformed number '" + std::string(text) + "'");
    }
    std::string exp_text(text.substr(i + 1));
    if (exp_text.empty()) throw InputError("malformed exponent in '" + std::string(text) + "'");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw InputError("malformed exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size()) throw InputError("malformed exponent in '" + std::string(text) + "'");
    exponent += e;
  }
  mpz_class mantissa(digits);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale, 1);
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty number");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

}  // namespace vmp
