#pragma once

#include <json.hpp>

#include "mirrorgamma/series.hpp"

namespace mirrorgamma {

/// {nvars, order, terms: [{exponents: [...], coeff: "..."}]}, terms in graded-lex order.
template <CoefficientRing C>
nlohmann::json series_to_json(const TruncSeries<C>& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"exponents", e}, {"coeff", c.to_string()}});
  return {{"nvars", s.nvars()}, {"order", s.order()}, {"terms", terms}};
}

template <CoefficientRing C>
TruncSeries<C> series_from_json(const nlohmann::json& j) {
  try {
    TruncSeries<C> s(j.at("nvars").get<std::size_t>(), j.at("order").get<int>());
    for (const auto& t : j.at("terms")) s.add_term(t.at("exponents").get<Exponents>(), C::parse(t.at("coeff").get<std::string>()));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("series", e.what());
  }
}

}  // namespace mirrorgamma
