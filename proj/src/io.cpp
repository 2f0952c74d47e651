#include "tcm/io.hpp"

#include "tcm/flatsampler.hpp"
#include "tcm/rng.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace tcm {

namespace {

Vec vec_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw std::invalid_argument("expected an array of " + std::to_string(n) + " numbers");
  }
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::vector<Halfspace> halfspaces_from_json(const Json& j, int n) {
  std::vector<Halfspace> hs;
  for (const Json& h : j) hs.push_back({vec_from_json(h.at("normal"), n), h.at("offset").get<double>()});
  return hs;
}

Json beta_to_json(const MultiIndex& beta, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(static_cast<int>(beta[i]));
  return a;
}

}  // namespace

Polytope polytope_from_json(const Json& j) {
  const int n = j.at("dim").get<int>();
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("polytope: dim must be in 1..4");
  if (j.contains("vertices")) {
    std::vector<Vec> pts;
    for (const Json& v : j.at("vertices")) pts.push_back(vec_from_json(v, n));
    return Polytope::from_vertices(pts);
  }
  if (j.contains("halfspaces")) return Polytope::from_halfspaces(halfspaces_from_json(j.at("halfspaces"), n), n);
  throw std::invalid_argument("polytope: need \"vertices\" or \"halfspaces\"");
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["dim"] = p.ambient_dim();
  Json verts = Json::array();
  for (const Vec& v : p.vertices()) verts.push_back(vec_to_json(v));
  j["vertices"] = verts;
  return j;
}

Polytope builtin_polytope(const std::string& name) {
  static const std::regex re(R"((cube|simplex|cross|random)([1-4])(?::(\d+))?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown builtin polytope: " + name);
  const std::string kind = m[1];
  const int n = std::stoi(m[2]);
  if ((kind == "random") != m[3].matched) throw std::invalid_argument("unknown builtin polytope: " + name);
  std::vector<Vec> pts;
  if (kind == "cube") {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
      pts.push_back(v);
    }
  } else if (kind == "simplex") {
    pts.push_back(Vec::Zero(n));
    for (int i = 0; i < n; ++i) pts.push_back(Vec::Unit(n, i));
  } else if (kind == "cross") {
    for (int i = 0; i < n; ++i) {
      pts.push_back(Vec::Unit(n, i));
      pts.push_back(-Vec::Unit(n, i));
    }
  } else {
    CounterRng rng(std::stoull(m[3]), 0x706f6c79ULL);
    std::normal_distribution<double> gauss;
    for (;;) {
      pts.clear();
      for (int v = 0; v < 2 * n + 2; ++v) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = gauss(rng);
        pts.push_back(x);
      }
      Polytope p = Polytope::from_vertices(pts);
      if (p.full_dimensional()) return p;
    }
  }
  return Polytope::from_vertices(pts);
}

Region region_from_json(const Json& j, int n) {
  if (j.contains("universe") && j.at("universe").get<bool>()) return Region::universe();
  if (j.contains("box")) {
    return Region::box(vec_from_json(j.at("box").at("lo"), n), vec_from_json(j.at("box").at("hi"), n));
  }
  if (j.contains("halfspaces")) {
    return Region::from_halfspaces(halfspaces_from_json(j.at("halfspaces"), n), n,
                                   j.value("allow_unbounded", false));
  }
  throw std::invalid_argument("region: need \"universe\", \"box\" or \"halfspaces\"");
}

Json region_to_json(const Region& r) {
  Json j;
  if (r.is_universe()) {
    j["universe"] = true;
    return j;
  }
  Json hs = Json::array();
  for (const Halfspace& h : r.halfspaces()) hs.push_back({{"normal", vec_to_json(h.normal)}, {"offset", h.offset}});
  j["halfspaces"] = hs;
  j["allow_unbounded"] = true;
  return j;
}

Json tensor_to_json(const SymTensor& t) {
  Json j;
  j["dim"] = t.dim();
  j["rank"] = t.rank();
  Json entries = Json::array();
  const auto mons = t.monomials();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double c = t.coordinate_at(k);
    if (c != 0.0) entries.push_back(Json::array({beta_to_json(mons[k], t.dim()), c}));
  }
  j["entries"] = entries;
  return j;
}

SymTensor tensor_from_json(const Json& j) {
  const int n = j.at("dim").get<int>();
  const int rank = j.at("rank").get<int>();
  SymTensor t(n, rank);
  for (const Json& e : j.at("entries")) {
    MultiIndex beta{};
    int total = 0;
    const Json& b = e.at(0);
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("tensor: multi-index length mismatch");
    for (int i = 0; i < n; ++i) {
      beta[i] = static_cast<std::uint8_t>(b[i].get<int>());
      total += beta[i];
    }
    if (total != rank) throw std::invalid_argument("tensor: multi-index order mismatch");
    t.set_coeff(beta, e.at(1).get<double>() * multinomial(rank, beta));
  }
  return t;
}

Json measure_value_to_json(const MeasureValue& v) {
  Json j;
  j["tensor"] = tensor_to_json(v.tensor);
  j["std_error"] = tensor_to_json(v.std_error);
  j["exact"] = v.exact;
  j["faces"] = v.faces;
  j["mc_samples"] = v.mc_samples;
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["theorem"] = r.theorem;
  j["indices"] = {{"n", r.n}, {"j", r.j}, {"k", r.k}, {"r", r.r}, {"s", r.s}, {"l", r.l}};
  j["pass"] = r.pass;
  j["max_z"] = std::isfinite(r.max_z) ? Json(r.max_z) : Json(nullptr);
  j["samples"] = r.samples;
  j["rejections"] = r.rejections;
  j["hits"] = r.hits;
  Json coords = Json::array();
  for (const CoordinateCheck& c : r.coords) {
    coords.push_back({{"beta", beta_to_json(c.beta, r.n)},
                      {"lhs", c.lhs},
                      {"lhs_stderr", c.lhs_se},
                      {"rhs", c.rhs},
                      {"rhs_stderr", c.rhs_se},
                      {"z", std::isfinite(c.z) ? Json(c.z) : Json(nullptr)},
                      {"pass", c.pass}});
  }
  j["coordinates"] = coords;
  j["notes"] = r.notes;
  j["wall_time"] = r.wall_time;
  return j;
}

Json rank_to_json(const RankResult& r) {
  Json idx = Json::array();
  for (const MeasureIndex& i : r.indices) idx.push_back({{"j", i.j}, {"m", i.m}, {"r", i.r}, {"s", i.s}, {"l", i.l}});
  Json j;
  j["rank"] = r.rank;
  j["expected"] = r.expected;
  j["rows"] = r.rows;
  j["pass"] = r.rank == r.expected;
  j["singular_values"] = r.singular_values;
  j["indices"] = idx;
  return j;
}

Json steiner_to_json(const SteinerReport& r) {
  Json rows = Json::array();
  for (const SteinerRow& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"monte_carlo", row.mc},
                    {"stderr", row.std_error},
                    {"steiner", row.exact},
                    {"rel_error", row.rel_error},
                    {"pass", row.pass}});
  }
  Json j;
  j["intrinsic_volumes"] = r.intrinsic_volumes;
  j["samples"] = r.samples;
  j["pass"] = r.pass;
  j["rows"] = rows;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace tcm
