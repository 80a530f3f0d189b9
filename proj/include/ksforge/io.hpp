#pragma once

// JSON and aligned-text renderings of rays, bases, KS sets, certificates and
// proof reports. JSON arrays are written in canonical order so that equal
// entities serialize to identical bytes.

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksforge/errors.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/proof.hpp"
#include "ksforge/ray_system.hpp"
#include "ksforge/transform.hpp"

namespace ksforge::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Schema-checked reading with JSON-pointer locations in errors.

class Reader {
 public:
  Reader(const json& j, std::string path = "") : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "at " + (path_.empty() ? std::string("/") : path_) + ": " + msg);
  }

  Reader operator[](const char* key) const {
    if (!j_.is_object()) fail("expected object");
    auto it = j_.find(key);
    if (it == j_.end()) fail(std::string("missing field '") + key + "'");
    return Reader(*it, path_ + "/" + key);
  }
  Reader at(std::size_t i) const { return Reader(array().at(i), path_ + "/" + std::to_string(i)); }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }
  bool is_null() const { return j_.is_null(); }

  const json& array(std::size_t min = 0, std::size_t max = SIZE_MAX) const {
    if (!j_.is_array()) fail("expected array");
    if (j_.size() < min || j_.size() > max) fail("array of length " + std::to_string(j_.size()) + " out of range");
    return j_;
  }
  std::size_t size() const { return array().size(); }

  long long integer() const {
    if (!j_.is_number_integer()) fail("expected integer");
    return j_.get<long long>();
  }
  int ray_id() const {
    const auto v = integer();
    if (v < 1 || v > kNumRays) fail("ray id " + std::to_string(v) + " out of range 1..40");
    return static_cast<int>(v);
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected string");
    return j_.get<std::string>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected boolean");
    return j_.get<bool>();
  }
  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }

 private:
  const json& j_;
  std::string path_;
};

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Rays and bases.

inline json to_json(const Ray& r) {
  json v = json::array();
  for (const auto& z : r.v) v.push_back({z.re, z.im});
  return {{"id", r.id}, {"octad", r.octad}, {"v", v}};
}

inline Ray ray_from(const Reader& in) {
  Ray r;
  r.id = in["id"].ray_id();
  r.octad = static_cast<int>(in["octad"].integer());
  const auto v = in["v"];
  v.array(kDim, kDim);
  for (std::size_t k = 0; k < kDim; ++k) {
    const auto z = v.at(k);
    z.array(2, 2);
    r.v[k] = GaussInt{z.at(0).integer(), z.at(1).integer()};
  }
  return r;
}

inline json rays_to_json(const std::vector<Ray>& rays) {
  json out = json::array();
  for (const auto& r : rays) out.push_back(to_json(r));
  return out;
}

inline std::vector<Ray> rays_from_json(const json& j) {
  Reader in(j);
  std::vector<Ray> out;
  for (std::size_t i = 0; i < in.size(); ++i) out.push_back(ray_from(in.at(i)));
  return out;
}

inline json to_json(const Basis& b) {
  return {{"id", b.id}, {"kind", b.kind == BasisKind::Pure ? "pure" : "hybrid"}, {"rays", b.rays}};
}

inline json bases_to_json(const std::vector<Basis>& bases) {
  json out = json::array();
  for (const auto& b : bases) out.push_back(to_json(b));
  return out;
}

inline std::vector<Basis> bases_from_json(const json& j) {
  Reader in(j);
  std::vector<Basis> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto b = in.at(i);
    Basis basis;
    basis.id = static_cast<int>(b["id"].integer());
    const auto kind = b["kind"].string();
    if (kind != "pure" && kind != "hybrid") b["kind"].fail("kind must be 'pure' or 'hybrid'");
    basis.kind = kind == "pure" ? BasisKind::Pure : BasisKind::Hybrid;
    const auto rays = b["rays"];
    rays.array(8, 8);
    for (std::size_t k = 0; k < 8; ++k) basis.rays[k] = rays.at(k).ray_id();
    out.push_back(basis);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projectors and KS sets.

inline json to_json(const Projector& p) { return {{"rays", p.rays()}}; }

inline Projector projector_from(const Reader& in) {
  const auto rays = in["rays"];
  rays.array(1, 2);
  if (rays.size() == 1) return Projector::rank1(rays.at(0).ray_id());
  const int i = rays.at(0).ray_id(), j = rays.at(1).ray_id();
  if (i >= j) rays.fail("rank-2 projector rays must be ascending and distinct");
  return Projector::rank2(i, j);
}

inline Projector projector_from_json(const json& j) { return projector_from(Reader(j)); }

inline json pairs_to_json(const std::vector<std::pair<int, int>>& v) {
  json out = json::array();
  for (auto [a, b] : v) out.push_back({a, b});
  return out;
}

inline std::vector<std::pair<int, int>> pairs_from(const Reader& in) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto p = in.at(i);
    p.array(2, 2);
    out.push_back({p.at(0).ray_id(), p.at(1).ray_id()});
  }
  return out;
}

inline json to_json(const MergeConfig& c) {
  return {{"i_matching", pairs_to_json(c.i_matching)}, {"v_choice", pairs_to_json(c.v_choice)}};
}

inline MergeConfig config_from(const Reader& in) {
  return MergeConfig{pairs_from(in["i_matching"]), pairs_from(in["v_choice"])};
}

inline json to_json(const Provenance& p) {
  if (p.empty()) return nullptr;
  json out = json::object();
  if (!p.parent.empty()) out["parent"] = p.parent;
  if (p.config) out["config"] = to_json(*p.config);
  if (p.split) out["split"] = {p.split->first, p.split->second};
  return out;
}

inline Provenance provenance_from(const Reader& in) {
  Provenance p;
  if (in.is_null()) return p;
  if (in.has("parent")) p.parent = in["parent"].string();
  if (in.has("config")) p.config = config_from(in["config"]);
  if (in.has("split")) {
    const auto s = in["split"];
    s.array(2, 2);
    p.split = std::pair{s.at(0).ray_id(), s.at(1).ray_id()};
  }
  return p;
}

inline json to_json(const KSSet& s) {
  json bases = json::array();
  for (const auto& b : s.canonical()) {
    json row = json::array();
    for (const auto& p : b) row.push_back(to_json(p));
    bases.push_back(row);
  }
  return {{"bases", bases}, {"signature", signature_of(s).str()}, {"provenance", to_json(s.provenance)}};
}

/// Reads a KS set; the stored signature must match the recomputed one.
inline KSSet ksset_from(const Reader& in) {
  KSSet s;
  const auto bases = in["bases"];
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto row = bases.at(i);
    ProjectorBasis b;
    for (std::size_t k = 0; k < row.size(); ++k) b.push_back(projector_from(row.at(k)));
    s.bases.push_back(std::move(b));
  }
  if (in.has("provenance")) s.provenance = provenance_from(in["provenance"]);
  if (in.has("signature") && in["signature"].string() != signature_of(s).str())
    in["signature"].fail("signature does not match the bases");
  return s;
}

inline KSSet ksset_from_json(const json& j) { return ksset_from(Reader(j)); }

// ---------------------------------------------------------------------------
// Parents, classification, certificates, catalogs, reports.

inline json to_json(const ParentKSSet& p, std::size_t index) {
  json ids = json::array();
  int pure = 0;
  for (const auto& b : p.bases) {
    ids.push_back(b.id);
    if (b.kind == BasisKind::Pure) pure = b.id;
  }
  return {{"index", index}, {"mask", p.mask}, {"bases", ids}, {"pure", pure},
          {"signature", signature_of(p).str()}};
}

inline json parents_to_json(const std::vector<ParentKSSet>& parents) {
  json list = json::array();
  for (std::size_t i = 0; i < parents.size(); ++i) list.push_back(to_json(parents[i], i));
  return {{"count", parents.size()}, {"parents", list}};
}

inline json to_json(const Violation& v) {
  json out = {{"kind", to_string(v.kind)}, {"detail", v.str()}};
  if (v.kind == ErrorKind::AmbiguityError) {
    out["delta"] = v.delta;
    out["bases"] = v.bases;
    out["common"] = v.common;
  } else {
    out["projector"] = to_json(v.projector);
    out["multiplicity"] = v.multiplicity;
    if (!v.bases.empty()) out["bases"] = v.bases;
  }
  return out;
}

inline Violation violation_from(const Reader& in) {
  Violation v;
  const auto kind = in["kind"].string();
  if (kind == "AmbiguityError") v.kind = ErrorKind::AmbiguityError;
  else if (kind == "ForbiddenPairError") v.kind = ErrorKind::ForbiddenPairError;
  else if (kind == "MultiplicityError") v.kind = ErrorKind::MultiplicityError;
  else in["kind"].fail("unknown violation kind");
  auto ints = [](const Reader& r) {
    std::vector<int> out;
    for (std::size_t i = 0; i < r.size(); ++i) out.push_back(static_cast<int>(r.at(i).integer()));
    return out;
  };
  if (v.kind == ErrorKind::AmbiguityError) {
    v.delta = static_cast<int>(in["delta"].integer());
    v.bases = ints(in["bases"]);
    v.common = ints(in["common"]);
  } else {
    v.projector = projector_from(in["projector"]);
    v.multiplicity = static_cast<int>(in["multiplicity"].integer());
    if (in.has("bases")) v.bases = ints(in["bases"]);
  }
  return v;
}

inline json to_json(const CountCertificate& c) {
  json failures = json::array();
  for (const auto& f : c.failures) {
    json cfg = to_json(f.config);
    cfg["violation"] = to_json(f.violation);
    failures.push_back(cfg);
  }
  return {{"parent", c.parent},
          {"total", c.total},
          {"successes", c.successes},
          {"failures_by_kind", c.failures_by_kind},
          {"division_i_ways", c.division_i_ways},
          {"iv_v_ways", c.iv_v_ways},
          {"claims",
           {{"division_i_ways", CountCertificate::kClaimedDivisionIWays},
            {"iv_v_ways", CountCertificate::kClaimedIvVWays},
            {"children", CountCertificate::kClaimedChildren}}},
          {"matches_claims", c.matches_claims()},
          {"failures", failures}};
}

inline CountCertificate certificate_from(const Reader& in) {
  CountCertificate c;
  c.parent = in["parent"].string();
  c.total = static_cast<int>(in["total"].integer());
  c.successes = static_cast<int>(in["successes"].integer());
  const auto kinds = in["failures_by_kind"];
  if (!kinds.raw().is_object()) kinds.fail("expected object");
  for (const auto& [k, v] : kinds.raw().items()) c.failures_by_kind[k] = static_cast<int>(kinds[k.c_str()].integer());
  c.division_i_ways = static_cast<int>(in["division_i_ways"].integer());
  c.iv_v_ways = static_cast<int>(in["iv_v_ways"].integer());
  const auto failures = in["failures"];
  for (std::size_t i = 0; i < failures.size(); ++i)
    c.failures.push_back({config_from(failures.at(i)), violation_from(failures.at(i)["violation"])});
  return c;
}

inline json to_json(const ChildCatalog& cat) {
  json certs = json::array();
  for (const auto& c : cat.certificates) certs.push_back(to_json(c));
  json children = json::array();
  for (const auto& c : cat.children) children.push_back(to_json(c));
  return {{"parents", cat.per_parent.size()},
          {"per_parent", cat.per_parent},
          {"per_parent_equal", cat.per_parent_equal},
          {"distinct_children", cat.distinct_children},
          {"certificates", certs},
          {"children", children}};
}

inline ChildCatalog catalog_from_json(const json& j) {
  Reader in(j);
  ChildCatalog cat;
  const auto per = in["per_parent"];
  for (std::size_t i = 0; i < per.size(); ++i) cat.per_parent.push_back(static_cast<int>(per.at(i).integer()));
  cat.per_parent_equal = in["per_parent_equal"].boolean();
  cat.distinct_children = static_cast<std::size_t>(in["distinct_children"].integer());
  const auto certs = in["certificates"];
  for (std::size_t i = 0; i < certs.size(); ++i) cat.certificates.push_back(certificate_from(certs.at(i)));
  const auto children = in["children"];
  for (std::size_t i = 0; i < children.size(); ++i) cat.children.push_back(ksset_from(children.at(i)));
  return cat;
}

inline json projectors_to_json(const std::vector<Projector>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_json(p));
  return out;
}

inline std::vector<Projector> projectors_from(const Reader& in) {
  std::vector<Projector> out;
  for (std::size_t i = 0; i < in.size(); ++i) out.push_back(projector_from(in.at(i)));
  return out;
}

inline json to_json(const ProofReport& r) {
  json out = {{"kind", to_string(r.kind)},
              {"contradiction", r.contradiction},
              {"witness", r.witness},
              {"used_projectors", projectors_to_json(r.used_projectors)}};
  if (r.kind != ProofKind::Parity) out["satisfying_assignments"] = r.satisfying_assignments;
  if (r.kind == ProofKind::StateDependent) {
    json residual = json::array();
    for (const auto& e : r.residual) residual.push_back(projectors_to_json(e));
    out["pre"] = r.pre;
    out["post"] = r.post;
    out["orthogonal_to_pre"] = projectors_to_json(r.orthogonal_to_pre);
    out["orthogonal_to_post"] = projectors_to_json(r.orthogonal_to_post);
    out["residual"] = residual;
    out["residual_projectors"] = projectors_to_json(r.residual_projectors);
    if (r.probability) out["probability"] = {{"num", r.probability->num}, {"den", r.probability->den}};
  }
  return out;
}

inline ProofReport report_from_json(const json& j) {
  Reader in(j);
  ProofReport r;
  const auto kind = in["kind"].string();
  if (kind == "parity") r.kind = ProofKind::Parity;
  else if (kind == "exhaustive") r.kind = ProofKind::Exhaustive;
  else if (kind == "state-dependent") r.kind = ProofKind::StateDependent;
  else in["kind"].fail("unknown proof kind");
  r.contradiction = in["contradiction"].boolean();
  r.witness = in["witness"].string();
  r.used_projectors = projectors_from(in["used_projectors"]);
  if (in.has("satisfying_assignments")) r.satisfying_assignments = static_cast<long>(in["satisfying_assignments"].integer());
  if (r.kind == ProofKind::StateDependent) {
    r.pre = in["pre"].ray_id();
    r.post = in["post"].ray_id();
    r.orthogonal_to_pre = projectors_from(in["orthogonal_to_pre"]);
    r.orthogonal_to_post = projectors_from(in["orthogonal_to_post"]);
    const auto residual = in["residual"];
    for (std::size_t i = 0; i < residual.size(); ++i) r.residual.push_back(projectors_from(residual.at(i)));
    r.residual_projectors = projectors_from(in["residual_projectors"]);
    if (in.has("probability"))
      r.probability = Rational{in["probability"]["num"].integer(), in["probability"]["den"].integer()};
  }
  return r;
}

inline json to_json(const StateDependentHit& h) {
  return {{"child", h.child}, {"split", {h.split.first, h.split.second}}, {"pre", h.pre}, {"post", h.post},
          {"used", h.used}, {"probability", h.probability.str()}};
}

// ---------------------------------------------------------------------------
// Text renderings.

/// One row per basis: label, rank-2 projectors in parentheses, then rank-1 rays.
inline std::string basis_row(const ProjectorBasis& b) {
  ProjectorBasis sorted = b;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Projector& x, const Projector& y) {
    if (x.rank() != y.rank()) return x.rank() > y.rank();
    return x < y;
  });
  std::string s;
  for (const auto& p : sorted) {
    if (!s.empty()) s += ' ';
    s += p.str();
  }
  return s;
}

inline std::string to_text(const KSSet& s) {
  std::ostringstream os;
  os << "signature: " << signature_of(s).str() << '\n';
  for (std::size_t i = 0; i < s.bases.size(); ++i) {
    const std::string label = i < s.labels.size() ? std::to_string(s.labels[i]) : std::to_string(i + 1);
    os << std::setw(4) << label << " | " << basis_row(s.bases[i]) << '\n';
  }
  return os.str();
}

inline std::string to_text(const std::vector<Ray>& rays) {
  std::ostringstream os;
  for (const auto& r : rays) {
    os << std::setw(3) << r.id << "  octad " << r.octad << "  (";
    for (int k = 0; k < kDim; ++k) {
      const auto& z = r.v[k];
      std::string c = z.im == 0 ? std::to_string(z.re) : z.re == 0 ? (z.im == 1 ? "i" : z.im == -1 ? "-i" : std::to_string(z.im) + "i")
                                                                    : std::to_string(z.re) + (z.im > 0 ? "+" : "") + std::to_string(z.im) + "i";
      os << (k ? "," : "") << std::setw(3) << c;
    }
    os << ")\n";
  }
  return os.str();
}

inline std::string to_text(const std::vector<Basis>& bases) {
  std::ostringstream os;
  for (const auto& b : bases) {
    os << std::setw(3) << b.id << "  " << (b.kind == BasisKind::Pure ? "pure  " : "hybrid") << " ";
    for (int r : b.rays) os << std::setw(3) << r;
    os << '\n';
  }
  return os.str();
}

inline std::string to_text(const ProofReport& r) {
  std::ostringstream os;
  os << to_string(r.kind) << ": " << (r.contradiction ? "contradiction" : "no contradiction") << " (" << r.witness << ")\n";
  os << "used projectors: " << r.used_projectors.size() << '\n';
  if (r.kind == ProofKind::StateDependent) {
    auto list = [&](const std::vector<Projector>& ps) {
      std::string s;
      for (const auto& p : ps) s += (s.empty() ? "" : " ") + p.str();
      return s;
    };
    os << "pre " << r.pre << ", post " << r.post;
    if (r.probability) os << ", post-selection probability " << r.probability->str();
    os << '\n';
    os << "orthogonal to pre:  " << list(r.orthogonal_to_pre) << '\n';
    os << "orthogonal to post: " << list(r.orthogonal_to_post) << '\n';
    os << "residual:\n";
    for (const auto& e : r.residual) {
      std::string lhs;
      for (const auto& p : e) lhs += (lhs.empty() ? "" : " + ") + ("v(" + p.str() + ")");
      os << "  " << (lhs.empty() ? "0" : lhs) << " = 1\n";
    }
  }
  return os.str();
}

}  // namespace ksforge::io
