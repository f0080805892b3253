// Exact rational numbers used for every probability in memlang.

#ifndef MEMLANG_RATIONAL_H_
#define MEMLANG_RATIONAL_H_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace memlang {

// Arbitrary precision rational, always kept in lowest terms.
using Rat = mpq_class;

// Parses "p/q", an integer, or a decimal literal such as "0.125" exactly.
// Returns nullopt on malformed input or a zero denominator.
std::optional<Rat> parse_rat(std::string_view text);

// "p/q" form, also for integers ("1/1", "0/1"). Used by every JSON writer.
std::string rat_to_fraction(const Rat& r);

// Shortest human form: "1/3", "1", "0".
std::string rat_to_string(const Rat& r);

inline bool is_probability(const Rat& r) { return r >= 0 && r <= 1; }

}  // namespace memlang

#endif  // MEMLANG_RATIONAL_H_
