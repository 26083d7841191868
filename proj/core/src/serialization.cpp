#include "nleig/serialization.hpp"

#include <stdexcept>

#include <json.hpp>

namespace nleig {
namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw std::invalid_argument("problem document: key \"" + key + "\" " + why);
}

std::vector<double> coeff_list(const json& j, const std::string& key) {
  if (!j.contains(key)) bad_key(key, "is missing");
  const json& v = j.at(key);
  if (!v.is_array()) bad_key(key, "must be an array of numbers");
  std::vector<double> c;
  c.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) bad_key(key, "must be an array of numbers");
    c.push_back(e.get<double>());
  }
  return c;
}

}  // namespace

EquationSpec equation_from_json_text(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("problem document: not valid JSON");
  if (!j.is_object()) throw std::invalid_argument("problem document: must be a JSON object");
  if (!j.contains("family")) bad_key("family", "is missing");
  if (!j.at("family").is_string()) bad_key("family", "must be a string");
  const std::string family = j.at("family").get<std::string>();

  if (family == "ince") return InceEquation{Polynomial(coeff_list(j, "q"))};
  if (family == "master") return MasterEquation{PotentialSpec{Polynomial(coeff_list(j, "V"))}};
  if (family == "riccati") {
    if (!j.contains("E")) bad_key("E", "is missing");
    if (!j.at("E").is_number()) bad_key("E", "must be a number");
    return RiccatiEquation{PotentialSpec{Polynomial(coeff_list(j, "V"))}, j.at("E").get<double>()};
  }
  if (family == "extended") {
    if (!j.contains("n")) bad_key("n", "is missing");
    if (!j.at("n").is_number_integer()) bad_key("n", "must be an integer");
    ExtendedEquation eq;
    eq.n = j.at("n").get<int>();
    if (eq.n < 2) bad_key("n", "must be >= 2 (n = 1 is the master family)");
    if (!j.contains("forcing")) bad_key("forcing", "is missing");
    if (!j.at("forcing").is_array()) bad_key("forcing", "must be an array of [m, k, a] triples");
    for (const json& t : j.at("forcing")) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
          !t[1].is_number_integer() || !t[2].is_number())
        bad_key("forcing", "must be an array of [m, k, a] triples");
      const int m = t[0].get<int>();
      const int k = t[1].get<int>();
      if (m < 0 || k < 0) bad_key("forcing", "powers must be nonnegative");
      eq.forcing.push_back({m, k, t[2].get<double>()});
    }
    return eq;
  }
  bad_key("family", "must be one of ince|master|riccati|extended");
}

std::string equation_to_json_text(const EquationSpec& eq) {
  json j;
  if (const auto* i = std::get_if<InceEquation>(&eq)) {
    j["family"] = "ince";
    j["q"] = i->q.coefficients();
  } else if (const auto* m = std::get_if<MasterEquation>(&eq)) {
    j["family"] = "master";
    j["V"] = m->potential.poly.coefficients();
  } else if (const auto* r = std::get_if<RiccatiEquation>(&eq)) {
    j["family"] = "riccati";
    j["V"] = r->potential.poly.coefficients();
    j["E"] = r->energy;
  } else {
    const auto& x = std::get<ExtendedEquation>(eq);
    j["family"] = "extended";
    j["n"] = x.n;
    j["forcing"] = json::array();
    for (const ForcingTerm& t : x.forcing)
      j["forcing"].push_back({t.x_power, t.y_power, t.coefficient});
  }
  return j.dump();
}

}  // namespace nleig
