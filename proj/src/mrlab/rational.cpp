#include "mrlab/rational.hpp"

#include <charconv>

#include "mrlab/error.hpp"

namespace mrlab {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    fail(ErrorCode::kInvalidArgument,
         "not a rational number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::kInvalidArgument, "empty rational number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), text);
    const std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::kInvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15)
      fail(ErrorCode::kInvalidArgument, "too many decimals in '" + std::string(text) + "'");
    std::string digits(text.substr(0, dot));
    const bool negative = !digits.empty() && digits.front() == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    const std::int64_t whole = parse_int(digits, text);
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac, text);
    if (part < 0) fail(ErrorCode::kInvalidArgument, "not a rational number: '" + std::string(text) + "'");
    Rational r(whole);
    r += Rational(negative ? -part : part, scale);
    return r;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_of(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator();  // always positive
  auto q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::int64_t ceil_of(const Rational& r) {
  return -floor_of(-r);
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace mrlab
