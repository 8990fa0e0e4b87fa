#include <algorithm>
#include <fstream>

#include "judgebench/cli.hpp"
#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::cli {

namespace {

using nlohmann::json;

const json& field(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) throw SchemaError(path + key, "missing");
  return doc.at(key);
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto convert(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParameterError& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw SchemaError("$", "scenario must be a JSON object");
  Scenario s;
  s.source = doc;
  if (doc.contains("schema") && doc["schema"] != "judgebench/1") {
    throw SchemaError("schema", "unsupported schema version");
  }
  const auto protocol = string_at(field(doc, "protocol", ""), "protocol");
  s.protocol = convert("protocol", [&] { return protocols::protocol_from_string(protocol); });

  const auto& n = field(doc, "n", "");
  if (!n.is_number_unsigned() || n.get<std::uint64_t>() < 1 || n.get<std::uint64_t>() > 20) {
    throw SchemaError("n", "expected an integer in 1..20");
  }
  s.n = n.get<std::size_t>();
  const auto judges = 2 * s.n + 1;

  if (doc.contains("decisions")) {
    const auto& d = doc["decisions"];
    if (d.is_string() && d == "all") {
      s.decisions.reset();
    } else if (d.is_array()) {
      std::vector<int> bits;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_number_integer() || (d[i] != 0 && d[i] != 1)) {
          throw SchemaError("decisions[" + std::to_string(i) + "]", "expected 0 or 1");
        }
        bits.push_back(d[i].get<int>());
      }
      if (bits.size() != judges) {
        throw SchemaError("decisions", "expected " + std::to_string(judges) + " entries, got " +
                                           std::to_string(bits.size()));
      }
      s.decisions = core::DecisionVector(bits);
    } else {
      throw SchemaError("decisions", "expected \"all\" or a list of bits");
    }
  }

  if (doc.contains("randomness")) {
    const auto& r = doc["randomness"];
    if (r.is_string() && r == "exhaustive") {
      s.sampled.reset();
    } else if (r.is_object()) {
      const auto& count = field(r, "sampled", "randomness.");
      if (!count.is_number_unsigned() || count.get<std::uint64_t>() == 0) {
        throw SchemaError("randomness.sampled", "expected a positive integer");
      }
      protocols::Sampled sm;
      sm.count = count.get<std::size_t>();
      if (r.contains("seed")) {
        if (!r["seed"].is_number_unsigned()) throw SchemaError("randomness.seed", "expected an unsigned integer");
        sm.seed = r["seed"].get<std::uint64_t>();
      }
      s.sampled = sm;
    } else {
      throw SchemaError("randomness", "expected \"exhaustive\" or {\"sampled\": k, \"seed\": s}");
    }
  }

  if (doc.contains("obs_mode")) {
    const auto m = string_at(doc["obs_mode"], "obs_mode");
    s.obs_mode = convert("obs_mode", [&] { return kripke::obs_mode_from_string(m); });
  }
  if (doc.contains("ot")) {
    const auto m = string_at(doc["ot"], "ot");
    s.ot = convert("ot", [&] { return protocols::ot_mode_from_string(m); });
  }

  if (doc.contains("formulas")) {
    const auto& fs = doc["formulas"];
    if (!fs.is_array()) throw SchemaError("formulas", "expected a list");
    const auto ids = anonspec::builtin_suite_ids();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto path = "formulas[" + std::to_string(i) + "]";
      const auto& f = fs[i];
      if (!f.is_object()) throw SchemaError(path, "expected an object");
      FormulaSpec spec;
      const bool has_text = f.contains("text");
      const bool has_suite = f.contains("suite");
      if (has_text == has_suite) throw SchemaError(path, "needs exactly one of \"text\" and \"suite\"");
      if (has_text) {
        spec.text = string_at(f["text"], path + ".text");
        try {
          mck::parse_formula(*spec.text);
        } catch (const ParseError& e) {
          throw SchemaError(path + ".text", e.what());
        }
      } else {
        spec.suite = string_at(f["suite"], path + ".suite");
        if (std::find(ids.begin(), ids.end(), *spec.suite) == ids.end()) {
          throw SchemaError(path + ".suite", "unknown suite '" + *spec.suite + "'");
        }
      }
      if (f.contains("name")) {
        spec.name = string_at(f["name"], path + ".name");
      } else {
        spec.name = has_suite ? *spec.suite : "formula" + std::to_string(i);
      }
      if (f.contains("expected")) {
        const auto e = string_at(f["expected"], path + ".expected");
        spec.expected = convert(path + ".expected", [&] { return anonspec::expected_from_string(e); });
      }
      s.formulas.push_back(std::move(spec));
    }
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object()) throw SchemaError("output", "expected an object");
    if (o.contains("report")) s.report_path = string_at(o["report"], "output.report");
    if (o.contains("traces")) s.traces_path = string_at(o["traces"], "output.traces");
    if (o.contains("model")) s.model_path = string_at(o["model"], "output.model");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

std::vector<anonspec::SuiteEntry> resolve_formulas(const Scenario& s) {
  std::vector<anonspec::SuiteEntry> out;
  for (std::size_t i = 0; i < s.formulas.size(); ++i) {
    const auto& spec = s.formulas[i];
    if (spec.text) {
      out.push_back({spec.name, mck::parse_formula(*spec.text), spec.expected.value_or(anonspec::Expected::Unknown)});
      continue;
    }
    std::vector<anonspec::SuiteEntry> suite;
    try {
      suite = anonspec::builtin_suite(*spec.suite, s.protocol, s.n);
    } catch (const ParameterError& e) {
      throw SchemaError("formulas[" + std::to_string(i) + "].suite", e.what());
    }
    for (auto& e : suite) {
      e.name = spec.name + "/" + e.name;
      if (spec.expected) e.expected = *spec.expected;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace judgebench::cli
