#include "report.hpp"

#include <map>
#include <set>
#include <sstream>

namespace qdr::cli {

using nlohmann::json;

json witness(const std::string& identity, int n, const std::string& text) {
  return json{{"identity", identity}, {"n", n}, {"witness", text}};
}

json witness(const Violation& v) { return witness(v.identity, v.n, v.witness); }

json pages_json(const SpectralPages& p) {
  auto entries = [](const std::vector<PageEntry>& v, bool with_d) {
    json a = json::array();
    for (const auto& e : v) {
      json o{{"m", e.m}, {"n", e.n}, {"dim", e.dim}};
      if (with_d) o["d_rank"] = e.d_rank;
      a.push_back(o);
    }
    return a;
  };
  json out = json::object();
  for (size_t r = 0; r < p.pages.size(); ++r) out["E" + std::to_string(r + 1)] = entries(p.pages[r], true);
  out["Einf"] = entries(p.e_infinity, false);
  return out;
}

std::vector<int> pages_total_dims(const SpectralPages& p, int D) {
  std::vector<int> dims(static_cast<size_t>(D + 1), 0);
  for (const auto& e : p.e_infinity)
    if (e.m + e.n >= 0 && e.m + e.n <= D) dims[static_cast<size_t>(e.m + e.n)] += e.dim;
  return dims;
}

void add_suite(json& rep, const SuiteReport& s) {
  json ids = json::array();
  for (const auto& r : s.results) {
    json o{{"identity", r.name}, {"checked", r.checked}, {"failures", r.failures}};
    if (r.failures) {
      o["witness"] = r.witness;
      rep["witnesses"].push_back(witness(r.name, -1, r.witness));
    }
    ids.push_back(o);
  }
  rep["identities"] = ids;
}

namespace {

using Spot = std::pair<int, int>;

std::map<Spot, int> page_map(const json& entries) {
  std::map<Spot, int> m;
  for (const auto& e : entries) m[{e.at("m").get<int>(), e.at("n").get<int>()}] = e.at("dim").get<int>();
  return m;
}

json nonzero_differentials(const json& pages) {
  json out = json::array();
  for (const auto& [name, entries] : pages.items())
    for (const auto& e : entries)
      if (e.value("d_rank", 0) != 0) out.push_back({{"page", name}, {"m", e["m"]}, {"n", e["n"]}, {"d_rank", e["d_rank"]}});
  return out;
}

}  // namespace

CompareResult compare_reports(const json& a, const json& b) {
  CompareResult res;
  json& d = res.diff;
  d = {{"command", "compare"},
       {"a", {{"command", a.value("command", "")}, {"model_hash", a.value("model_hash", "")}}},
       {"b", {{"command", b.value("command", "")}, {"model_hash", b.value("model_hash", "")}}},
       {"witnesses", json::array()}};
  auto range_error = [&](const std::string& why) {
    d["witnesses"].push_back(witness("compare", -1, why));
    res.exit_code = 2;
    return res;
  };
  if (!a.contains("degrees") || !b.contains("degrees")) return range_error("both reports need a degree range");
  if (a.at("degrees") != b.at("degrees"))
    return range_error("degree ranges differ: " + a.at("degrees").dump() + " vs " + b.at("degrees").dump());
  d["degrees"] = a.at("degrees");

  json dims_diff = json::array();
  if (a.contains("dims") != b.contains("dims")) return range_error("only one report has dims");
  if (a.contains("dims")) {
    const auto& da = a.at("dims");
    const auto& db = b.at("dims");
    if (da.size() != db.size()) return range_error("dims tables have different lengths");
    for (size_t i = 0; i < da.size(); ++i)
      if (da[i] != db[i]) dims_diff.push_back({{"degree", d["degrees"][i]}, {"a", da[i]}, {"b", db[i]}});
  }
  d["dims_diff"] = dims_diff;

  json pages_diff = json::array(), compared = json::array();
  if (a.contains("pages") && b.contains("pages")) {
    std::set<std::string> common;
    for (const auto& [k, v] : a.at("pages").items())
      if (b.at("pages").contains(k)) common.insert(k);
    for (const auto& k : common) {
      compared.push_back(k);
      auto ma = page_map(a.at("pages").at(k)), mb = page_map(b.at("pages").at(k));
      std::set<Spot> spots;
      for (const auto& [s, v] : ma) spots.insert(s);
      for (const auto& [s, v] : mb) spots.insert(s);
      for (const auto& s : spots) {
        int va = ma.count(s) ? ma[s] : 0, vb = mb.count(s) ? mb[s] : 0;
        if (va != vb) pages_diff.push_back({{"page", k}, {"m", s.first}, {"n", s.second}, {"a", va}, {"b", vb}});
      }
    }
    d["nonzero_differentials"] = {{"a", nonzero_differentials(a.at("pages"))},
                                  {"b", nonzero_differentials(b.at("pages"))}};
  }
  d["notes"] = json::array();
  if (!compared.empty() && a.value("model_hash", "") != b.value("model_hash", ""))
    d["notes"].push_back("different presentations: agreement of pages here is evidence on this example only, "
                         "not a proof that the pages do not depend on the presentation");
  d["pages_compared"] = compared;
  d["pages_diff"] = pages_diff;
  d["empty"] = dims_diff.empty() && pages_diff.empty();
  if (!d["empty"].get<bool>()) {
    res.exit_code = 1;
    json first = !dims_diff.empty() ? dims_diff[0] : pages_diff[0];
    d["witnesses"].push_back(witness("compare", -1, "reports differ at " + first.dump()));
  }
  return res;
}

std::string to_csv(const json& rep) {
  std::ostringstream os;
  if (rep.contains("pages")) {
    os << "page,m,n,dim,d_rank\n";
    for (const auto& [name, entries] : rep.at("pages").items())
      for (const auto& e : entries)
        os << name << ',' << e["m"] << ',' << e["n"] << ',' << e["dim"] << ',' << e.value("d_rank", 0) << '\n';
  } else if (rep.contains("identities")) {
    os << "identity,checked,failures\n";
    for (const auto& r : rep.at("identities"))
      os << '"' << r["identity"].get<std::string>() << "\"," << r["checked"] << ',' << r["failures"] << '\n';
  } else if (rep.contains("dims_diff")) {
    os << "kind,page,degree_or_m,n,a,b\n";
    for (const auto& e : rep.at("dims_diff")) os << "dims,," << e["degree"] << ",," << e["a"] << ',' << e["b"] << '\n';
    for (const auto& e : rep.at("pages_diff"))
      os << "page," << e["page"].get<std::string>() << ',' << e["m"] << ',' << e["n"] << ',' << e["a"] << ',' << e["b"]
         << '\n';
  } else if (rep.contains("dims")) {
    os << "degree,dim\n";
    for (size_t i = 0; i < rep.at("dims").size(); ++i) os << rep["degrees"][i] << ',' << rep["dims"][i] << '\n';
  }
  return os.str();
}

}  // namespace qdr::cli
