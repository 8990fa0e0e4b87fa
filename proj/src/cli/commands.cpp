#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <new>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "judgebench/avnet.hpp"
#include "judgebench/cli.hpp"
#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json header(const char* command) {
  json doc;
  doc["schema"] = "judgebench/1";
  doc["command"] = command;
  return doc;
}

protocols::EnumerationRequest request_for(const Scenario& s, const Settings& settings) {
  protocols::EnumerationRequest req;
  req.protocol = s.protocol;
  req.n = s.n;
  req.decisions = s.decisions;
  req.sampled = s.sampled;
  if (req.sampled && settings.seed) req.sampled->seed = *settings.seed;
  req.options.ot = s.ot;
  return req;
}

kripke::BuildOptions build_options(const Scenario& s, const Settings& settings) {
  const auto req = request_for(s, settings);
  kripke::BuildOptions opt;
  opt.obs = s.obs_mode;
  opt.ot = s.ot;
  opt.decisions = req.decisions;
  opt.sampled = req.sampled;
  opt.state_cap = settings.state_cap;
  return opt;
}

std::size_t worker_count(std::size_t jobs, std::size_t items) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(jobs, items));
}

json state_json(const kripke::KripkeModel& m, kripke::StateId s) {
  return {{"id", s}, {"round", m.state(s).round}, {"labels", m.labels(s)}};
}

json evidence_json(const kripke::KripkeModel& m, const mck::Evidence& ev) {
  static const char* kinds[] = {"none", "failing-init", "counterexample", "lasso"};
  json out;
  out["kind"] = kinds[static_cast<int>(ev.kind)];
  out["explanation"] = ev.explanation;
  json path = json::array();
  for (auto s : ev.path) path.push_back(state_json(m, s));
  out["path"] = std::move(path);
  if (ev.kind == mck::Evidence::Kind::Lasso) out["loop_start"] = ev.loop_start;
  if (ev.state) out["state"] = state_json(m, *ev.state);
  if (ev.knowing_agent) {
    out["knowing_agent"] = *ev.knowing_agent;
    out["known"] = ev.known->str();
    out["knowledge_class_size"] = ev.knowledge_class.size();
    const auto shown = std::min<std::size_t>(ev.knowledge_class.size(), 16);
    out["knowledge_class"] = std::vector<kripke::StateId>(ev.knowledge_class.begin(), ev.knowledge_class.begin() + shown);
  }
  return out;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write to " + path.string() + " failed");
}

json model_stats(const kripke::KripkeModel& m) {
  json classes = json::array();
  for (std::size_t a = 0; a < m.num_agents(); ++a) classes.push_back(m.num_classes(a));
  return {{"states", m.size()}, {"edges", m.num_edges()}, {"initial", m.init().size()}, {"obs_classes", classes}};
}

}  // namespace

Outcome cmd_simulate(const Scenario& s, const Settings& settings) {
  const auto t0 = Clock::now();
  const auto req = request_for(s, settings);
  const auto expected_runs = protocols::count_runs(req);

  std::optional<std::ofstream> traces;
  if (s.traces_path) {
    traces.emplace(*s.traces_path, std::ios::binary);
    if (!*traces) throw IoError("cannot open " + s.traces_path->string() + " for writing");
  }

  struct PerVector {
    std::uint64_t runs = 0;
    std::map<int, std::uint64_t> outcomes;
    std::map<std::string, std::uint64_t> verdicts;
  };
  std::map<std::uint64_t, PerVector> per_vector;
  std::map<std::string, std::uint64_t> verdicts;
  std::uint64_t runs = 0, failures = 0;
  std::mutex mu;

  auto visit = [&](const protocols::RunRecord& run) {
    const int majority = core::majority(run.decisions);
    bool ok = run.verdict == core::verdict_from_bit(majority);
    if (run.protocol == protocols::ProtocolId::DcpSum) ok = ok && run.outcome == static_cast<int>(run.decisions.ones());
    std::string trace;
    if (traces) trace = protocols::run_to_json(run).dump();
    std::lock_guard lock(mu);
    ++runs;
    failures += !ok;
    const auto verdict = std::string(core::to_string(run.verdict));
    ++verdicts[verdict];
    auto& pv = per_vector[run.decisions.mask()];
    ++pv.runs;
    ++pv.outcomes[run.outcome];
    ++pv.verdicts[verdict];
    if (traces) *traces << trace << '\n';
  };
  // Traces must come out in enumeration order.
  if (traces || settings.jobs == 1) {
    protocols::enumerate_runs(req, visit);
  } else {
    protocols::enumerate_runs_parallel(req, worker_count(settings.jobs, 1u << (2 * s.n + 1)), visit);
  }
  if (traces && !*traces) throw IoError("write to " + s.traces_path->string() + " failed");

  json report = header("simulate");
  report["scenario"] = s.source;
  report["runs"] = runs;
  report["expected_runs"] = expected_runs;
  report["verdicts"] = verdicts;
  std::map<std::string, std::uint64_t> classes;
  json vectors = json::array();
  const auto judges = 2 * s.n + 1;
  for (const auto& [mask, pv] : per_vector) {
    const auto dv = core::DecisionVector::from_mask(judges, mask);
    ++classes[pv.verdicts.size() == 1 ? pv.verdicts.begin()->first : "mixed"];
    json outcomes = json::object();
    for (const auto& [o, c] : pv.outcomes) outcomes[std::to_string(o)] = c;
    vectors.push_back({{"decisions", dv.str()}, {"runs", pv.runs}, {"outcomes", outcomes}, {"verdicts", pv.verdicts}});
  }
  report["decision_classes"] = classes;
  report["per_decision_vector"] = std::move(vectors);
  report["functional"] = failures == 0;
  report["failures"] = failures;
  report["volatile"] = {{"elapsed_ms", ms_since(t0)}};
  if (s.report_path) write_json(*s.report_path, report);
  return {failures == 0 ? kOk : kMismatch, std::move(report)};
}

Outcome cmd_check(const Scenario& s, const Settings& settings) {
  const auto entries = resolve_formulas(s);
  const auto t0 = Clock::now();
  const auto model = kripke::build_model(s.protocol, s.n, build_options(s, settings));
  const double build_ms = ms_since(t0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    try {
      mck::validate(model, entries[i].formula);
    } catch (const ValidationError& e) {
      throw SchemaError("formulas: " + entries[i].name, e.what());
    }
  }
  if (s.model_path) kripke::export_model(model, *s.model_path);

  std::vector<json> results(entries.size());
  std::vector<double> timings(entries.size());
  std::vector<bool> matched(entries.size());
  const auto workers = worker_count(settings.jobs, entries.size());
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      mck::Checker checker(model);
      for (std::size_t i = w; i < entries.size(); i += workers) {
        const auto t = Clock::now();
        const auto& e = entries[i];
        const auto r = checker.check(e.formula);
        json out{{"name", e.name},
                 {"formula", e.formula.str()},
                 {"holds_on_init", r.holds_on_init},
                 {"satisfying_states", r.count()},
                 {"expected", std::string(anonspec::to_string(e.expected))}};
        const bool match = e.expected == anonspec::Expected::Unknown ||
                           (e.expected == anonspec::Expected::Hold) == r.holds_on_init;
        out["match"] = match;
        if (!r.holds_on_init) out["counterexample"] = evidence_json(model, mck::explain(model, e.formula, r));
        results[i] = std::move(out);
        matched[i] = match;
        timings[i] = ms_since(t);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return entries[a].name < entries[b].name; });

  json report = header("check");
  report["scenario"] = s.source;
  report["model"] = model_stats(model);
  json formulas = json::array();
  json timing = json::object();
  std::size_t mismatches = 0;
  for (auto i : order) {
    formulas.push_back(results[i]);
    timing[entries[i].name] = timings[i];
    mismatches += !matched[i];
  }
  report["formulas"] = std::move(formulas);
  report["summary"] = {{"formulas", entries.size()}, {"matched", entries.size() - mismatches}, {"mismatched", mismatches}};
  report["volatile"] = {{"build_ms", build_ms}, {"total_ms", ms_since(t0)}, {"formula_ms", timing}};
  if (s.report_path) write_json(*s.report_path, report);
  return {mismatches == 0 ? kOk : kMismatch, std::move(report)};
}

Outcome cmd_export_model(const Scenario& s, const std::filesystem::path& out, const Settings& settings) {
  const auto t0 = Clock::now();
  const auto model = kripke::build_model(s.protocol, s.n, build_options(s, settings));
  kripke::export_model(model, out);
  json report = header("export-model");
  report["scenario"] = s.source;
  report["model"] = model_stats(model);
  report["out"] = out.string();
  report["volatile"] = {{"elapsed_ms", ms_since(t0)}};
  return {kOk, std::move(report)};
}

Outcome cmd_avnet(const std::string& preset, std::size_t n, const std::vector<int>& votes, bool all,
                  std::uint64_t seed) {
  const auto gp = avnet::setup_group(preset);
  if (all == !votes.empty()) throw ParameterError("give either --votes or --all");
  if (n < 1) throw ParameterError("n must be at least 1");
  const auto judges = 2 * n + 1;
  if (judges > 20) throw ParameterError("n too large for a sweep");
  json report = header("avnet");
  report["group"] = {{"p", gp.p}, {"q", gp.q}, {"g", gp.g}};
  if (auto w = avnet::group_warning(gp)) report["warning"] = *w;
  report["n"] = n;
  const auto t0 = Clock::now();
  if (!all) {
    if (votes.size() != judges) {
      throw ParameterError("expected " + std::to_string(judges) + " votes, got " + std::to_string(votes.size()));
    }
    std::mt19937_64 rng(seed);
    const auto t = avnet::run(gp, votes, rng);
    const int majority = core::majority(core::DecisionVector(votes));
    report["transcript"] = avnet::transcript_to_json(t);
    report["verdict"] = std::string(core::to_string(core::verdict_from_bit(t.verdict)));
    report["majority"] = majority;
    report["match"] = t.verdict == majority;
    report["volatile"] = {{"elapsed_ms", ms_since(t0)}};
    return {t.verdict == majority ? kOk : kMismatch, std::move(report)};
  }
  json sweep = json::array();
  std::size_t matched = 0;
  const auto vectors = core::all_decision_vectors(judges);
  for (const auto& dv : vectors) {
    std::mt19937_64 rng(seed ^ (dv.mask() * 0x9E3779B97F4A7C15ULL));
    const auto t = avnet::run(gp, dv.bits(), rng);
    const int majority = core::majority(dv);
    matched += t.verdict == majority;
    sweep.push_back({{"votes", dv.str()}, {"verdict", t.verdict}, {"majority", majority}, {"match", t.verdict == majority}});
  }
  report["sweep"] = std::move(sweep);
  report["matched"] = matched;
  report["total"] = vectors.size();
  report["volatile"] = {{"elapsed_ms", ms_since(t0)}};
  return {matched == vectors.size() ? kOk : kMismatch, std::move(report)};
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"judgebench: anonymous majority protocols and their epistemic properties"};
  app.require_subcommand(1);
  Settings settings;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampled randomness and AV-net draws");
  app.add_option("--jobs", settings.jobs, "worker threads (0 = all cores)");
  app.add_option("--state-cap", settings.state_cap, "abort model building beyond this many states");

  std::string scenario_path, out_path, preset = "small";
  std::size_t n = 1;
  std::vector<std::string> vote_tokens;
  bool all = false;

  auto* simulate = app.add_subcommand("simulate", "run the protocol over a scenario's run space");
  simulate->add_option("file", scenario_path, "scenario JSON")->required();
  auto* check = app.add_subcommand("check", "build the model and check the scenario's formulas");
  check->add_option("file", scenario_path, "scenario JSON")->required();
  auto* exporter = app.add_subcommand("export-model", "build the model and write it as JSON");
  exporter->add_option("file", scenario_path, "scenario JSON")->required();
  exporter->add_option("--out", out_path, "output path")->required();
  auto* av = app.add_subcommand("avnet", "run the discrete-log majority protocol");
  av->add_option("--preset", preset, "group preset name or p:q:g");
  av->add_option("--n", n, "judges = 2n+1");
  av->add_option("--votes", vote_tokens, "one bit per judge, e.g. 10110 or 1 0 1 1 0")->expected(-1);
  av->add_flag("--all", all, "sweep every vote vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (*seed_opt) settings.seed = seed;

  try {
    Outcome result;
    if (*av) {
      std::vector<int> votes;
      for (const auto& tok : vote_tokens) {
        for (char c : tok) {
          if (c != '0' && c != '1') throw ParameterError("votes must be bits, got '" + tok + "'");
          votes.push_back(c - '0');
        }
      }
      result = cmd_avnet(preset, n, votes, all, seed);
    } else {
      const auto scenario = load_scenario(scenario_path);
      if (*simulate) result = cmd_simulate(scenario, settings);
      else if (*check) result = cmd_check(scenario, settings);
      else result = cmd_export_model(scenario, out_path, settings);
    }
    out << result.report.dump(2) << '\n';
    return result.exit_code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace judgebench::cli
