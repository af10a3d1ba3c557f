#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "config.hpp"
#include "qdr/error.hpp"
#include "report.hpp"

using nlohmann::json;
using namespace qdr;
using namespace qdr::cli;

namespace {

struct Args {
  std::string command;
  std::string model;
  std::vector<std::string> reports;  // compare
  std::optional<int> max_degree, r_max, p, jobs;
  std::optional<std::string> format;
  std::vector<std::string> flips;
};

struct Outcome {
  json report;
  int code = 0;
};

json base_report(const std::string& command, const std::string& hash, int D) {
  json r{{"command", command}, {"model_hash", hash}, {"witnesses", json::array()}, {"stabilized", true},
         {"notes", json::array()}};
  json deg = json::array();
  for (int t = 0; t <= D; ++t) deg.push_back(t);
  r["degrees"] = deg;
  return r;
}

void add_notes(json& rep, bool stabilized, const std::vector<std::string>& notes) {
  rep["stabilized"] = rep["stabilized"].get<bool>() && stabilized;
  for (const auto& n : notes) rep["notes"].push_back(n);
}

TruncationPolicy suite_policy(const RunOptions& o) { return {o.engine.policy.window, std::max(1, o.engine.policy.torus_box)}; }

Outcome run_validate(const ModelPtr& m, const RunOptions& o, json rep) {
  FlatnessResult fl = check_flatness(*m);
  rep["flat"] = fl.flat;
  if (!fl.flat) {
    rep["witnesses"].push_back(witness("flatness", 1, fl.witness));
    return {rep, 1};
  }
  SuiteOptions so;
  so.max_degree = o.max_degree;
  so.policy = suite_policy(o);
  so.jobs = o.engine.jobs;
  try {
    add_suite(rep, run_identity_suite(m, so));
  } catch (const ModelError& e) {
    // no sector grading for this model; structure identities only
    rep["notes"].push_back(std::string("identity suite skipped: ") + e.what());
    ValidationReport v = validate_structure(*m, 3);
    SuiteReport s;
    s.model = m->name();
    IdentityResult r{"structure", static_cast<int>(v.checked.size()), static_cast<int>(v.violations.size()), ""};
    if (!v.ok()) r.witness = v.violations[0].identity + " violated at n=" + std::to_string(v.violations[0].n) + ": " +
                             v.violations[0].witness;
    s.results.push_back(r);
    add_suite(rep, s);
  }
  return {rep, rep["witnesses"].empty() ? 0 : 1};
}

// Differential identities on low degrees before trusting any dims.
bool self_check(const ModelPtr& m, const RunOptions& o, json& rep) {
  SuiteOptions so;
  so.max_degree = std::min(o.max_degree, 3);
  so.policy = suite_policy(o);
  so.structure_levels = -1;
  so.jobs = o.engine.jobs;
  SuiteReport s = run_differential_identities(m, so);
  if (const auto* f = s.first_failure()) {
    rep["witnesses"].push_back(witness(f->name, -1, f->witness));
    return false;
  }
  return true;
}

Outcome run_cohomology(const std::string& cmd, const ModelPtr& m, const RunOptions& o, json rep) {
  if (cmd == "cohomology" && !self_check(m, o, rep)) return {rep, 1};
  CohomologyReport c = cmd == "cohomology" ? total_cohomology(m, o.max_degree, o.engine)
                       : cmd == "oracle"   ? oracle_total(m, o.max_degree, o.engine)
                                           : cartan_total(m, o.max_degree, o.engine);
  rep["dims"] = c.dims;
  add_notes(rep, c.stabilized, c.notes);
  return {rep, 0};
}

Outcome run_pages(const std::string& cmd, const ModelPtr& m, const RunOptions& o, json rep) {
  PagesReport p = cmd == "pages" ? spectral_pages(m, o.max_degree, o.r_max, o.engine)
                                 : fixed_p_pages(m, o.max_degree, o.p, o.r_max, o.engine);
  if (cmd == "fixed-p") rep["p"] = o.p;
  rep["r_max"] = o.r_max;
  rep["r_infinity"] = p.pages.r_infinity;
  rep["pages"] = pages_json(p.pages);
  rep["dims"] = pages_total_dims(p.pages, o.max_degree);
  add_notes(rep, p.stabilized, p.notes);
  return {rep, 0};
}

Outcome run_natural(const ModelMorphism& f, const RunOptions& o, json rep) {
  NaturalityReport n = check_naturality(f, o.max_degree, o.engine);
  rep["morphism"] = f.name;
  rep["checked"] = n.checked;
  rep["dims"] = n.target_dims;
  rep["source_dims"] = n.source_dims;
  rep["induced_rank"] = n.induced_rank;
  rep["iso"] = n.iso;
  for (const auto& v : n.violations) rep["witnesses"].push_back(witness(v));
  add_notes(rep, n.stabilized, n.notes);
  return {rep, n.ok() ? 0 : 1};
}

void emit(const json& rep, const std::string& format) {
  if (format == "csv") {
    std::cout << to_csv(rep);
    for (const auto& w : rep["witnesses"]) std::cerr << w.dump() << '\n';
  } else {
    std::cout << rep.dump(2) << '\n';
  }
}

std::optional<std::filesystem::path> cache_path(const json& key) {
  const char* dir = std::getenv("QDR_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / (fingerprint(key) + ".json");
}

Outcome run_model_command(const Args& a, const std::string& format_flag, std::string& format) {
  json cfg = load_json(a.model);
  RunOptions o = read_options(cfg);
  if (a.max_degree) o.max_degree = *a.max_degree;
  if (a.r_max) o.r_max = *a.r_max;
  if (a.p) o.p = *a.p;
  if (a.jobs) o.engine.jobs = *a.jobs;
  if (!format_flag.empty()) o.format = format_flag;
  format = o.format;
  if (o.format != "json" && o.format != "csv") throw ConfigError("format must be json or csv");
  if (o.max_degree < 0) throw ConfigError("max degree must be >= 0");
  if (o.r_max < 1) throw ConfigError("r must be >= 1");
  if (o.p < 0) throw ConfigError("p must be >= 0");
  if (o.engine.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (o.engine.policy.window < 0 || o.engine.policy.torus_box < 0) throw ConfigError("window and torus_box must be >= 0");

  SignConventions signs;
  for (const auto& f : a.flips) {
    bool* b = signs.flag(f);
    if (!b) throw ConfigError("unknown sign convention '" + f + "'");
    *b = !*b;
  }

  std::string hash = fingerprint(cfg);
  json rep = base_report(a.command, hash, o.max_degree);
  if (!a.flips.empty()) rep["unsafe_sign_flips"] = a.flips;

  json key{{"command", a.command}, {"config", cfg},          {"D", o.max_degree}, {"r", o.r_max},
           {"p", o.p},             {"window", o.engine.policy.window}, {"box", o.engine.policy.torus_box},
           {"flips", a.flips}};
  auto cached = cache_path(key);
  if (cached && std::filesystem::exists(*cached)) {
    std::ifstream in(*cached);
    return {json::parse(in), 0};
  }

  Outcome out;
  if (a.command == "natural") {
    out = run_natural(build_morphism(cfg, signs), o, rep);
  } else {
    ModelPtr m = build_model(cfg, signs);
    rep["model"] = m->name();
    if (a.command == "validate") out = run_validate(m, o, rep);
    else if (a.command == "pages" || a.command == "fixed-p") out = run_pages(a.command, m, o, rep);
    else out = run_cohomology(a.command, m, o, rep);
  }
  if (cached && out.code == 0) {
    std::error_code ec;
    std::filesystem::create_directories(cached->parent_path(), ec);
    std::ofstream(*cached) << out.report.dump(2) << '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact de Rham complexes of quotient stacks"};
  app.require_subcommand(1);
  Args a;
  std::string format_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", a.model, "model configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-degree", a.max_degree, "total degree bound D");
    sub->add_option("--r", a.r_max, "last page to report");
    sub->add_option("--p", a.p, "form degree for fixed-p");
    sub->add_option("--format", format_flag, "json or csv");
    sub->add_option("--jobs", a.jobs, "worker threads");
    sub->add_option("--unsafe-flip-sign", a.flips, "flip a sign convention (mutation testing only)")
        ->group("Unsafe");
  };
  for (const char* c : {"validate", "cohomology", "pages", "fixed-p", "oracle", "cartan", "natural"})
    add_common(app.add_subcommand(c));
  auto* cmp = app.add_subcommand("compare", "diff two reports");
  cmp->add_option("reports", a.reports, "report A and report B")->required()->expected(2)->check(CLI::ExistingFile);
  cmp->add_option("--format", format_flag, "json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cout << json{{"command", ""}, {"witnesses", {witness("usage", -1, e.what())}}}.dump(2) << '\n';
    return 2;
  }
  a.command = app.get_subcommands().front()->get_name();

  std::string format = format_flag.empty() ? "json" : format_flag;
  Outcome out;
  try {
    if (a.command == "compare") {
      if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
      CompareResult c = compare_reports(load_json(a.reports[0]), load_json(a.reports[1]));
      out = {c.diff, c.exit_code};
    } else {
      out = run_model_command(a, format_flag, format);
    }
  } catch (const ComplexViolation& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness(e.what(), -1, e.witness()));
    out.code = 1;
  } catch (const SectorLeak& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness("sector", -1, e.what()));
    out.code = 1;
  } catch (const ConfigError& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness("config", -1, e.what()));
    out.code = 2;
  } catch (const ModelError& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness("refused", -1, e.what()));
    out.code = 2;
  } catch (const StructuralError& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness("config", -1, e.what()));
    out.code = 2;
  } catch (const json::exception& e) {
    out.report = base_report(a.command, "", -1);
    out.report["witnesses"].push_back(witness("config", -1, e.what()));
    out.code = 2;
  }
  if (format != "json" && format != "csv") format = "json";
  emit(out.report, format);
  return out.code;
}
