#include "fuzzyest/fis_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fuzzyest/errors.hpp"

namespace fuzzyest {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "fuzzyest-fis";

Json variable_to_json(const LinguisticVariable& v) {
  Json terms = Json::array();
  for (const auto& t : v.terms()) {
    Json params = Json::array();
    for (double p : t.mf.params()) params.push_back(p);
    terms.push_back({{"name", t.name}, {"shape", std::string(to_string(t.mf.shape()))}, {"params", params}});
  }
  return {{"name", v.name()}, {"universe", {v.universe().lo, v.universe().hi}}, {"terms", terms}};
}

LinguisticVariable variable_from_json(const Json& j) {
  const auto& u = j.at("universe");
  if (!u.is_array() || u.size() != 2) throw ParseError(0, "universe must be a [lo, hi] pair");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto params = t.at("params").get<std::vector<double>>();
    terms.push_back(
        {t.at("name").get<std::string>(), MembershipFunction::make(shape_from_string(t.at("shape").get<std::string>()), params)});
  }
  return {j.at("name").get<std::string>(), {u[0].get<double>(), u[1].get<double>()}, std::move(terms)};
}

// 1-based line of a byte offset, for parse diagnostics.
std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string tool_version() { return fmt::format("fuzzyest {}", FUZZYEST_VERSION); }

std::string serialize_fis(const FuzzyInferenceSystem& fis, const FisFileHeader& header) {
  const auto& ops = fis.operators();
  Json inputs = Json::array();
  for (const auto& v : fis.inputs()) inputs.push_back(variable_to_json(v));
  Json rules = Json::array();
  for (const auto& r : fis.rules()) {
    Json antecedent = Json::object();
    for (const auto& [var, term] : r.antecedents) antecedent[var] = term;
    rules.push_back({{"if", antecedent}, {"then", r.consequent}});
  }
  Json j = {
      {"format", kFormat},
      {"schema_version", kFisSchemaVersion},
      {"header", {{"tool", header.tool}, {"seed", header.seed}, {"config", header.config}}},
      {"name", fis.name()},
      {"operators",
       {{"and", to_string(ops.conjunction)},
        {"implication", to_string(ops.implication)},
        {"aggregation", to_string(ops.aggregation)},
        {"defuzzification", to_string(ops.defuzzifier)}}},
      {"defuzz_resolution", fis.resolution()},
      {"inputs", inputs},
      {"output", variable_to_json(fis.output())},
      {"rules", rules},
  };
  return j.dump(2) + "\n";
}

LoadedFis deserialize_fis(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(line_of(text, e.byte), fmt::format("malformed FIS file: {}", e.what()));
  }
  try {
    if (!j.is_object() || j.value("format", "") != kFormat) throw ParseError(0, "not a fuzzyest FIS file");
    const int version = j.at("schema_version").get<int>();
    if (version != kFisSchemaVersion) {
      throw ParseError(0, fmt::format("unsupported schema version {} (expected {})", version, kFisSchemaVersion));
    }
    const auto& h = j.at("header");
    FisFileHeader header{h.at("tool").get<std::string>(), h.at("seed").get<std::uint64_t>(),
                         h.at("config").get<std::string>()};

    const auto& o = j.at("operators");
    const auto ops = operators_from_strings(o.at("and").get<std::string>(), o.at("implication").get<std::string>(),
                                            o.at("aggregation").get<std::string>(),
                                            o.at("defuzzification").get<std::string>());
    std::vector<LinguisticVariable> inputs;
    for (const auto& v : j.at("inputs")) inputs.push_back(variable_from_json(v));
    std::vector<Rule> rules;
    for (const auto& r : j.at("rules")) {
      Rule rule;
      for (const auto& [var, term] : r.at("if").items()) rule.antecedents.emplace_back(var, term.get<std::string>());
      rule.consequent = r.at("then").get<std::string>();
      rules.push_back(std::move(rule));
    }
    return {FuzzyInferenceSystem(j.at("name").get<std::string>(), std::move(inputs), variable_from_json(j.at("output")),
                                 std::move(rules), ops, j.at("defuzz_resolution").get<std::size_t>()),
            std::move(header)};
  } catch (const Json::exception& e) {
    throw ParseError(0, fmt::format("malformed FIS file: {}", e.what()));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(fmt::format("invalid FIS definition: {}", e.what()));
  }
}

void save_fis(const std::string& path, const FuzzyInferenceSystem& fis, const FisFileHeader& header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write FIS file '{}'", path));
  out << serialize_fis(fis, header);
  if (!out.flush()) throw Error(fmt::format("failed writing FIS file '{}'", path));
}

LoadedFis load_fis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open FIS file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize_fis(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(0, fmt::format("{}: {}", path, e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace fuzzyest
