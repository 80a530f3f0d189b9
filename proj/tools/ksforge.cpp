// ksforge command-line front-end.
//
// Exit codes: 0 success or verified, 1 verification failed or count mismatch,
// 2 usage error, 3 internal oracle disagreement.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ksforge/ksforge.hpp"

namespace {

using namespace ksforge;
using io::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kOracle = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "json";
  std::string output;
  int jobs = 0;
  int workers() const { return jobs > 0 ? jobs : default_workers(); }
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw Usage("cannot write " + g.output);
  out << text;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  emit(g, g.format == "json" ? j.dump(2) + "\n" : text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_pair(const std::string& s) {
  int a = 0, b = 0;
  char comma = 0, extra = 0;
  std::istringstream in(s);
  if (!(in >> a >> comma >> b) || comma != ',' || (in >> extra)) throw Usage("expected i,j but got '" + s + "'");
  return {a, b};
}

const RaySystem& system() {
  static const RaySystem sys = RaySystem::build();
  return sys;
}

const RelabelMap& fixture_map() {
  static const RelabelMap map = match_fixture(fixtures::table2_bases(), system().bases);
  return map;
}

/// "fixture:<name>" or a path to a KS-set JSON file.
KSSet load_set(const std::string& source) {
  if (source.rfind("fixture:", 0) == 0) {
    const auto name = source.substr(8);
    if (name != "table1" && name != "table2") throw Usage("unknown fixture '" + name + "'");
    return fixtures::fixture_data(name);
  }
  return io::ksset_from_json(io::parse(read_file(source)));
}

RayGeometry geometry_for(const KSSet& s, const std::string& numbering) {
  bool fixture = fixtures::uses_fixture_numbering(s);
  if (numbering == "fixture") fixture = true;
  if (numbering == "generated") fixture = false;
  return fixture ? RayGeometry::relabeled(system(), fixture_map()) : RayGeometry::generated(system());
}

ParentKSSet load_parent(const std::string& which, const Globals& g, std::string& name) {
  if (which == "fixture:table2") {
    name = which;
    return fixtures::table2_parent();
  }
  std::size_t index = 0;
  try {
    std::size_t used = 0;
    index = std::stoul(which, &used);
    if (used != which.size()) throw std::invalid_argument(which);
  } catch (const std::logic_error&) {
    throw Usage("--parent takes an index or fixture:table2");
  }
  const auto parents = enumerate_parents(system(), g.workers());
  if (index >= parents.size()) throw Usage("parent index out of range 0.." + std::to_string(parents.size() - 1));
  name = parent_name(index);
  return parents[index];
}

// ---------------------------------------------------------------------------

int cmd_rays(const Globals& g) {
  const auto& sys = system();
  emit(g, io::rays_to_json(sys.rays), io::to_text(sys.rays));
  return kOk;
}

int cmd_bases(const Globals& g) {
  const auto& sys = system();
  std::vector<std::array<int, 8>> constructive;
  for (const auto& b : sys.bases) constructive.push_back(b.rays);
  std::sort(constructive.begin(), constructive.end());
  if (constructive != enumerate_bases_clique_oracle(sys.graph)) {
    std::cerr << "constructive and clique enumerations disagree\n";
    return kOracle;
  }
  emit(g, io::bases_to_json(sys.bases), io::to_text(sys.bases));
  return kOk;
}

int cmd_parents(const Globals& g, std::optional<int> expect) {
  const auto parents = enumerate_parents(system(), g.workers());
  std::ostringstream text;
  text << parents.size() << " sets of type " << kParentSignature << '\n';
  for (std::size_t i = 0; i < parents.size(); ++i) {
    text << std::setw(4) << i << " |";
    for (const auto& b : parents[i].bases) text << ' ' << b.id;
    text << '\n';
  }
  emit(g, io::parents_to_json(parents), text.str());
  if (expect && static_cast<int>(parents.size()) != *expect) {
    std::cerr << "expected " << *expect << " parents, found " << parents.size() << '\n';
    return kFailed;
  }
  return kOk;
}

int cmd_classify(const Globals& g, int max_bases) {
  if (max_bases != 11 && max_bases != 13 && max_bases != 15) throw Usage("--max-bases must be 11, 13 or 15");
  const auto counts = classify_parity_proofs(system(), max_bases, g.workers());
  json j = json::object();
  std::ostringstream text;
  for (const auto& [sig, n] : counts) {
    j[sig] = n;
    text << std::setw(8) << n << "  " << sig << '\n';
  }
  emit(g, j, text.str());
  return kOk;
}

int cmd_transform(const Globals& g, const std::string& parent, bool all, bool failures, std::optional<int> expect) {
  if (all) {
    CatalogOptions opt;
    opt.workers = g.workers();
    opt.keep_failures = failures;
    const auto cat = enumerate_all_children(enumerate_parents(system(), g.workers()), opt);
    std::ostringstream text;
    text << cat.per_parent.size() << " parents, " << cat.distinct_children << " distinct children, per-parent "
         << (cat.per_parent_equal ? "equal" : "unequal") << " (" << (cat.per_parent.empty() ? 0 : cat.per_parent[0])
         << ")\n";
    emit(g, io::to_json(cat), text.str());
    if (expect)
      for (int n : cat.per_parent)
        if (n != *expect) {
          std::cerr << "expected " << *expect << " children per parent, found " << n << '\n';
          return kFailed;
        }
    return kOk;
  }
  if (parent.empty()) throw Usage("transform needs --parent or --all");
  std::string name;
  const auto p = load_parent(parent, g, name);
  auto run = enumerate_children(p, name);
  bool has_table1 = false;
  if (name == "fixture:table2") {
    const auto target = fixtures::table1().canonical();
    for (const auto& c : run.children) has_table1 = has_table1 || c.canonical() == target;
  }
  if (!failures) run.certificate.failures.clear();
  json j = {{"certificate", io::to_json(run.certificate)}, {"children", json::array()}};
  for (const auto& c : run.children) j["children"].push_back(io::to_json(c));
  if (name == "fixture:table2") j["contains_table1"] = has_table1;
  std::ostringstream text;
  const auto& c = run.certificate;
  text << name << ": " << c.successes << " of " << c.total << " configurations give valid children\n";
  text << "division I ways " << c.division_i_ways << ", IV-V ways " << c.iv_v_ways << '\n';
  for (const auto& [kind, n] : c.failures_by_kind) text << "  " << kind << ": " << n << '\n';
  if (name == "fixture:table2") text << "table1 reproduced: " << (has_table1 ? "yes" : "no") << '\n';
  emit(g, j, text.str());
  if (expect && c.successes != *expect) {
    std::cerr << "expected " << *expect << " children, found " << c.successes << '\n';
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& source, bool exhaustive, const std::string& numbering) {
  const KSSet s = load_set(source);
  json j = {{"signature", signature_of(s).str()}};
  std::string text = "signature: " + signature_of(s).str() + "\n";
  bool ok = true;
  try {
    const auto rep = parity_contradiction(s);
    j["parity"] = io::to_json(rep);
    text += io::to_text(rep);
    ok = ok && rep.contradiction;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotParityForm) throw;
    j["parity"] = nullptr;
    text += std::string("parity: ") + e.what() + "\n";
    ok = false;
  }
  const auto geo = geometry_for(s, numbering);
  const auto rays = s.rays();
  const bool covered = std::all_of(rays.begin(), rays.end(), [&](int r) { return geo.has(r); });
  if (covered) {
    const bool sums = all_bases_sum_to_identity(s, geo);
    j["identity_sums"] = sums;
    text += std::string("identity sums: ") + (sums ? "exact" : "FAILED") + "\n";
    ok = ok && sums;
  }
  if (exhaustive) {
    const auto rep = exhaustive_report(s);
    j["exhaustive"] = io::to_json(rep);
    text += io::to_text(rep);
    ok = ok && rep.contradiction;
  }
  j["verified"] = ok;
  emit(g, j, text);
  return ok ? kOk : kFailed;
}

int cmd_statedep(const Globals& g, const std::string& source, const std::string& split, int pre, int post,
                 const std::string& numbering) {
  KSSet s = load_set(source);
  if (!split.empty()) {
    const auto [i, j] = parse_pair(split);
    s = split_rank2(s, i, j);
  }
  const auto rep = state_dependent_proof(s, pre, post, geometry_for(s, numbering));
  json j = io::to_json(rep);
  j["signature"] = signature_of(s).str();
  emit(g, j, "signature: " + signature_of(s).str() + "\n" + io::to_text(rep));
  return rep.contradiction ? kOk : kFailed;
}

int cmd_statedep_search(const Globals& g, bool all, std::size_t limit) {
  std::vector<KSSet> children;
  RayGeometry geo;
  if (all) {
    CatalogOptions opt;
    opt.workers = g.workers();
    opt.keep_children = true;
    children = enumerate_all_children(enumerate_parents(system(), g.workers()), opt).children;
    geo = RayGeometry::generated(system());
  } else {
    children = enumerate_children(fixtures::table2_parent(), "fixture:table2").children;
    geo = RayGeometry::relabeled(system(), fixture_map());
  }
  const auto hits = search_state_dependent(children, geo, g.workers());
  int min_used = 0;
  for (const auto& h : hits) min_used = min_used == 0 ? h.used : std::min(min_used, h.used);
  json best = json::array();
  std::ostringstream text;
  text << children.size() << " children, " << hits.size() << " state-dependent proofs, fewest projectors used "
       << min_used << '\n';
  for (const auto& h : hits) {
    if (h.used != min_used || best.size() >= limit) continue;
    json hj = io::to_json(h);
    hj["parent"] = children[h.child].provenance.parent;
    best.push_back(hj);
    text << "  child " << h.child << " split (" << h.split.first << "," << h.split.second << ") pre " << h.pre
         << " post " << h.post << " used " << h.used << " p=" << h.probability.str() << '\n';
  }
  json j = {{"children", children.size()}, {"hits", hits.size()}, {"min_used", min_used}, {"best", best}};
  emit(g, j, text.str());
  return hits.empty() ? kFailed : kOk;
}

int cmd_fixtures(const Globals& g, const std::string& name, const std::string& split) {
  if (name != "table1" && name != "table2") throw Usage("--name must be table1 or table2");
  KSSet s = fixtures::fixture_data(name);
  if (!split.empty()) {
    const auto [i, j] = parse_pair(split);
    s = split_rank2(s, i, j);
  }
  emit(g, io::to_json(s), io::to_text(s));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kochen-Specker sets from the three-qubit Pauli pentagram"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", g.output, "Write to a file instead of stdout");
  app.add_option("-j,--jobs", g.jobs, "Worker threads (default: KSFORGE_JOBS or hardware)")->check(CLI::PositiveNumber);

  auto* rays = app.add_subcommand("rays", "List the 40 generated rays");
  auto* bases = app.add_subcommand("bases", "List the 25 bases, cross-checked against clique search");

  std::optional<int> expect;
  auto* parents = app.add_subcommand("parents", "Enumerate the 11-basis parity proofs of type 28_2 8_4 - 11_8");
  parents->add_option("--expect", expect, "Exit 1 unless this many are found");

  int max_bases = 11;
  auto* classify = app.add_subcommand("classify", "Count parity proofs by signature");
  classify->add_option("--max-bases", max_bases, "11, 13 or 15")->required();

  std::string parent;
  bool all = false, failures = false;
  auto* transform = app.add_subcommand("transform", "Derive mixed-rank children with a count certificate");
  transform->add_option("--parent", parent, "Parent index or fixture:table2");
  transform->add_flag("--all", all, "Run on every parent");
  transform->add_flag("--failures", failures, "Include every rejected configuration");
  transform->add_option("--expect", expect, "Exit 1 unless every parent gives this many children");

  std::string source, numbering = "auto";
  bool exhaustive = false;
  auto* verify = app.add_subcommand("verify", "Check a KS set");
  verify->add_option("set", source, "JSON file or fixture:<name>")->required();
  verify->add_flag("--exhaustive", exhaustive, "Also search all 0/1 colorings");
  verify->add_option("--numbering", numbering, "Ray ids of the set")->check(CLI::IsMember({"auto", "fixture", "generated"}));

  std::string split;
  int pre = 0, post = 0;
  auto* statedep = app.add_subcommand("statedep", "Run the pre/post-selection proof on a set");
  statedep->add_option("--set", source, "JSON file or fixture:<name>")->required();
  statedep->add_option("--split", split, "Split a rank-2 projector i,j first");
  statedep->add_option("--pre", pre, "Pre-selected ray")->required();
  statedep->add_option("--post", post, "Post-selected ray")->required();
  statedep->add_option("--numbering", numbering, "Ray ids of the set")->check(CLI::IsMember({"auto", "fixture", "generated"}));

  std::size_t limit = 50;
  auto* search = app.add_subcommand("statedep-search", "Search children for state-dependent proofs");
  search->add_flag("--all", all, "Use the children of all parents instead of the table2 fixture");
  search->add_option("--limit", limit, "Maximum number of minimal hits listed");

  std::string name;
  auto* fixture = app.add_subcommand("fixtures", "Print an embedded table");
  fixture->add_option("--name", name, "table1 or table2")->required();
  fixture->add_option("--split", split, "Split a rank-2 projector i,j");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*rays) return cmd_rays(g);
    if (*bases) return cmd_bases(g);
    if (*parents) return cmd_parents(g, expect);
    if (*classify) return cmd_classify(g, max_bases);
    if (*transform) return cmd_transform(g, parent, all, failures, expect);
    if (*verify) return cmd_verify(g, source, exhaustive, numbering);
    if (*statedep) return cmd_statedep(g, source, split, pre, post, numbering);
    if (*search) return cmd_statedep_search(g, all, limit);
    if (*fixture) return cmd_fixtures(g, name, split);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::NotPresent:
      case ErrorKind::OverlapZero:
        return kUsage;
      default:
        return kFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kOracle;
  }
  return kUsage;
}
