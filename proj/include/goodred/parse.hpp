#pragma once

#include <string>

#include "goodred/ratmap.hpp"

namespace goodred {

// Field specs: "F5((t))", "F2^3((t))", "Q((t))".
const FieldConfig* parse_field(const std::string& src);

// Rational expressions in z over element literals; "+ - * / ^" and
// parentheses; exponents are integers or parenthesized rationals. The
// generator of a residue extension is written "g".
RationalMap parse_map(const std::string& src, const FieldConfig* cfg);
RationalMap parse_map(const std::string& src, const std::string& field);

// Element syntax: the same grammar without z, plus a trailing O(t^q)
// truncation term, e.g. "2*t^(1/3) + t + O(t^2)".
PuiseuxElement parse_element(const std::string& src, const FieldConfig* cfg);

std::string print_field(const FieldConfig* cfg);

}  // namespace goodred
