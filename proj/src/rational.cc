#include "memlang/rational.h"

#include <cctype>

namespace memlang {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> parse_rat(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  Rat out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    out = Rat(mpz_class(std::string(num), 10), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num(std::string(whole) + std::string(frac), 10);
    out = Rat(num, scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    out = Rat(mpz_class(std::string(text), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string rat_to_fraction(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

}  // namespace memlang
