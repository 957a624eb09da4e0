#pragma once

#include <string>
#include <vector>

#include "drkofn/instance.hpp"

namespace drkofn {

// Strict schema: {"n": int, "k": int, "tests": [{"cost": x, "lo": x, "hi": x}, ...]}.
// Unknown or missing fields are errors; the instance is validated before
// return.  Throws std::invalid_argument with the reason.
Instance parse_instance(const std::string& text);

// Writes the schema above with fields in fixed order.  Doubles round-trip
// bit-exactly through parse_instance.
std::string serialize_instance(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Comma-separated 1-based test numbers, e.g. "3,1,2"; returns 0-based.
Permutation parse_order(const std::string& text, int n);
std::string format_order(const Permutation& perm);

// Comma-separated reals, e.g. "0.2,0.5,0.7".
std::vector<double> parse_reals(const std::string& text);

}  // namespace drkofn
