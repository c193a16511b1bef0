#pragma once

#include <string>

#include <json.hpp>

#include "heavenly/moyal.hpp"
#include "heavenly/polyfield.hpp"

namespace heavenly {

// Canonical text form: terms in descending graded-lex order joined by " + ",
// each "c * p^a q^b pb^c qb^d" with the rational coefficient always printed,
// zero exponents omitted, and exponent 1 written without the caret.  The zero
// polynomial prints as "0".
std::string poly_str(const PolyField& f);

// Parse the same grammar (plus harmless variations: '-' term separators,
// omitted coefficient or '*', explicit ^1/^0).  Throws ParseError.
PolyField poly_parse(const std::string& text);

nlohmann::json poly_to_json(const PolyField& f);
PolyField poly_from_json(const nlohmann::json& j);

// Series serialize as a list of order-tagged polynomials plus the truncation
// order and exactness flag.
nlohmann::json series_to_json(const ThetaSeries& s);
ThetaSeries series_from_json(const nlohmann::json& j);

std::string series_str(const ThetaSeries& s);

}  // namespace heavenly
