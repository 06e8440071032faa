#include "bankio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace numra {

using nlohmann::json;

namespace {

double number_field(const json& j) {
  if (j.is_string()) return std::stod(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw Error(Errc::io_failure, "expected a number or decimal string");
}

PeriodicFunction parse_mask(const json& j, const Spectrum& s) {
  std::string type = j.value("type", "");
  if (type == "trigpoly") {
    TrigPoly tp;
    for (const auto& c : j.at("coeffs")) {
      TranslationIndex t{c.at("k").get<int>(), c.at("n").get<long>()};
      if (t.k != 0 && t.k != 1)
        throw Error(Errc::io_failure, "coefficient k must be 0 or 1");
      tp.coeffs.emplace_back(
          t, cplx{number_field(c.at("re")),
                  c.contains("im") ? number_field(c.at("im")) : 0.0});
    }
    return tp;
  }
  if (type == "sampled") {
    SampledPeriodic sp;
    sp.period = number_field(j.at("period"));
    double step = number_field(j.at("step"));
    double den = 1.0 / step;
    sp.den = static_cast<std::int64_t>(std::llround(den));
    if (std::abs(den - static_cast<double>(sp.den)) > 1e-6)
      throw Error(Errc::step_not_aligned, "mask step must divide 1");
    for (const auto& v : j.at("samples")) {
      if (v.is_array())
        sp.v.emplace_back(number_field(v.at(0)), number_field(v.at(1)));
      else
        sp.v.emplace_back(number_field(v), 0.0);
    }
    if (sp.v.size() != static_cast<std::size_t>(sp.period_extent()))
      throw Error(Errc::io_failure, "sample count does not match period/step");
    return sp;
  }
  throw Error(Errc::io_failure, "unknown mask type: " + type);
}

json mask_to_json(const PeriodicFunction& m) {
  json j;
  if (const auto* tp = std::get_if<TrigPoly>(&m)) {
    j["type"] = "trigpoly";
    j["coeffs"] = json::array();
    for (const auto& [t, a] : tp->coeffs)
      j["coeffs"].push_back(
          {{"k", t.k}, {"n", t.n}, {"re", a.real()}, {"im", a.imag()}});
  } else {
    const auto& sp = std::get<SampledPeriodic>(m);
    j["type"] = "sampled";
    j["period"] = sp.period;
    j["step"] = 1.0 / static_cast<double>(sp.den);
    j["samples"] = json::array();
    for (const auto& z : sp.v) j["samples"].push_back({z.real(), z.imag()});
  }
  return j;
}

}  // namespace

FilterBank parse_bank(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::io_failure, std::string("bank parse error: ") + e.what());
  }
  try {
    const auto& sj = j.at("spectrum");
    FilterBank bank;
    bank.spectrum =
        validate_spectrum(sj.at("N").get<long>(), sj.at("r").get<long>());
    for (const auto& m : j.at("synthesis"))
      bank.synthesis.push_back(parse_mask(m, bank.spectrum));
    for (const auto& m : j.at("analysis"))
      bank.analysis.push_back(parse_mask(m, bank.spectrum));
    auto d = static_cast<std::size_t>(2 * bank.spectrum.N);
    if (bank.synthesis.size() != d || bank.analysis.size() != d)
      throw Error(Errc::wrong_channel_count,
                  "bank must carry 2N masks per side");
    return bank;
  } catch (const json::exception& e) {
    throw Error(Errc::io_failure, std::string("bank layout error: ") + e.what());
  }
}

FilterBank load_bank(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open bank file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (ss.str().empty())
    throw Error(Errc::io_failure, "bank file is empty: " + path);
  return parse_bank(ss.str());
}

std::string bank_to_json(const FilterBank& bank) {
  json j;
  j["spectrum"] = {{"N", bank.spectrum.N}, {"r", bank.spectrum.r}};
  j["synthesis"] = json::array();
  for (const auto& m : bank.synthesis) j["synthesis"].push_back(mask_to_json(m));
  j["analysis"] = json::array();
  for (const auto& m : bank.analysis) j["analysis"].push_back(mask_to_json(m));
  return j.dump(2);
}

}  // namespace numra
