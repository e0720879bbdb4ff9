#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "epdlog/attack.hpp"
#include "epdlog/bergman.hpp"

namespace epdlog {

// Text form: decimal coefficients joined by commas, no spaces.
//   E_p:      "a,b,c,u,v"
//   E-bar_p:  "a,b,c,v"
std::string to_text(const EpElement& g);
std::string to_text(const EbarElement& g);

// Strict parsers for the text form. Throw InvalidInput on any deviation
// from the grammar or when a coefficient is not below p.
Natural parse_natural(std::string_view text);
EpElement parse_ep(std::string_view text, const Natural& p);
EbarElement parse_ebar(std::string_view text, const Natural& p);

// Integers go to JSON as numbers while they fit in 64 bits and as decimal
// strings beyond that; both spellings are accepted back.
nlohmann::json natural_to_json(const Natural& n);
Natural natural_from_json(const nlohmann::json& j);

// Flat record {"p", "a", "b", "c", "u", "v"}.
nlohmann::json to_json(const EpElement& g);
EpElement ep_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AttackTranscript& t);

}  // namespace epdlog
