#include "tcm/cli.hpp"

#include "tcm/coeffs.hpp"
#include "tcm/io.hpp"
#include "tcm/measures.hpp"
#include "tcm/parallel.hpp"
#include "tcm/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tcm::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TCM_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("TCM_SEED must be a non-negative integer");
    }
  }
  return 1;
}

struct PolytopeArg {
  std::string builtin;
  std::string path;

  void add(CLI::App* app, const std::string& prefix, bool required) {
    auto* b = app->add_option("--" + prefix + "builtin", builtin, "cube<n>, simplex<n>, cross<n>, random<n>:<seed>");
    auto* p = app->add_option("--" + prefix + "polytope", path, "polytope JSON file");
    b->excludes(p);
    if (required) app->callback([this, prefix] {
      if (builtin.empty() && path.empty()) throw CLI::ValidationError("--" + prefix + "builtin or --" + prefix + "polytope is required");
    });
  }
  bool given() const { return !builtin.empty() || !path.empty(); }
  Polytope load() const { return builtin.empty() ? polytope_from_json(read_json_file(path)) : builtin_polytope(builtin); }
  Json describe() const { return builtin.empty() ? Json{{"polytope", path}} : Json{{"builtin", builtin}}; }
};

Region load_region(const std::string& path, int n) {
  return path.empty() ? Region::universe() : region_from_json(read_json_file(path), n);
}

Json base_report(const std::string& command, Json config) {
  Json r;
  r["schema_version"] = kReportSchemaVersion;
  r["command"] = command;
  r["config"] = std::move(config);
  return r;
}

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string beta_label(const MultiIndex& b, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s;
}

void print_report_table(const VerificationReport& r, std::ostream& out) {
  out << r.theorem << "  n=" << r.n << " j=" << r.j << " k=" << r.k << " r=" << r.r << " s=" << r.s
      << " l=" << r.l << "  samples=" << r.samples << " rejected=" << r.rejections << "\n";
  out << std::left << std::setw(14) << "coordinate" << std::setw(20) << "lhs" << std::setw(20) << "stderr"
      << std::setw(20) << "rhs" << std::setw(16) << "z" << "ok\n";
  for (const CoordinateCheck& c : r.coords) {
    out << std::left << std::setw(14) << beta_label(c.beta, r.n) << std::setw(20) << fmt(c.lhs) << std::setw(20)
        << fmt(std::hypot(c.lhs_se, c.rhs_se)) << std::setw(20) << fmt(c.rhs) << std::setw(16) << fmt(c.z)
        << (c.pass ? "yes" : "NO") << "\n";
  }
  out << (r.pass ? "PASS" : "FAIL") << "  max z = " << fmt(r.max_z) << "\n";
}

std::string report_csv(const VerificationReport& r) {
  std::ostringstream s;
  s << std::setprecision(17) << "beta,lhs,lhs_stderr,rhs,rhs_stderr,z,pass\n";
  for (const CoordinateCheck& c : r.coords) {
    s << '"' << beta_label(c.beta, r.n) << "\"," << c.lhs << ',' << c.lhs_se << ',' << c.rhs << ',' << c.rhs_se
      << ',' << c.z << ',' << (c.pass ? 1 : 0) << '\n';
  }
  return s.str();
}

// "a" or "a:b" (inclusive)
std::vector<int> parse_range(const std::string& spec, const std::string& name) {
  try {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {std::stoi(spec)};
    const int a = std::stoi(spec.substr(0, colon)), b = std::stoi(spec.substr(colon + 1));
    if (b < a) throw UsageError("empty range for --" + name);
    std::vector<int> v;
    for (int x = a; x <= b; ++x) v.push_back(x);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad value for --" + name + ": " + spec);
  }
}

struct CoeffFamily {
  std::vector<std::string> params;
  std::function<double(const std::map<std::string, int>&)> eval;
};

const std::map<std::string, CoeffFamily>& coeff_families() {
  static const std::map<std::string, CoeffFamily> fam = {
      {"alpha", {{"n", "j", "k"}, [](auto& p) { return alpha(p.at("n"), p.at("j"), p.at("k")); }}},
      {"c", {{"n", "j", "r", "s", "l"}, [](auto& p) { return c_norm(p.at("n"), p.at("j"), p.at("r"), p.at("s"), p.at("l")); }}},
      {"d", {{"n", "j", "k", "s", "l", "i", "m"}, [](auto& p) {
               return d_coeff(p.at("n"), p.at("j"), p.at("k"), p.at("s"), p.at("l"), p.at("i"), p.at("m"));
             }}},
      {"equal", {{"n", "k", "s"}, [](auto& p) { return equal_dim_coeff(p.at("n"), p.at("k"), p.at("s")); }}},
      {"iota", {{"n", "k", "s", "m"}, [](auto& p) { return iota(p.at("n"), p.at("k"), p.at("s"), p.at("m")); }}},
      {"lambda", {{"n", "k", "s", "m"}, [](auto& p) { return lambda_coeff(p.at("n"), p.at("k"), p.at("s"), p.at("m")); }}},
      {"kappa", {{"n", "k", "s", "m"}, [](auto& p) { return kappa_coeff(p.at("n"), p.at("k"), p.at("s"), p.at("m")); }}},
      {"line", {{"n", "s"}, [](auto& p) { return line_coeff(p.at("n"), p.at("s")); }}},
  };
  return fam;
}

int run_coeff(const std::string& family, const std::map<std::string, std::string>& given,
              const std::string& out_path, std::ostream& out) {
  const auto it = coeff_families().find(family);
  if (it == coeff_families().end()) throw UsageError("unknown coefficient family: " + family);
  const CoeffFamily& fam = it->second;
  for (const auto& [name, spec] : given) {
    if (std::find(fam.params.begin(), fam.params.end(), name) == fam.params.end()) {
      throw UsageError("--" + name + " is not a parameter of " + family);
    }
  }
  // i defaults to 0..m, so m is expanded first
  std::vector<std::string> order = fam.params;
  if (auto i = std::find(order.begin(), order.end(), "i"); i != order.end()) std::rotate(i, i + 1, order.end());
  std::vector<std::map<std::string, int>> rows{{}};
  for (const std::string& name : order) {
    std::vector<std::map<std::string, int>> next;
    for (const auto& row : rows) {
      std::vector<int> values;
      if (auto g = given.find(name); g != given.end()) {
        values = parse_range(g->second, name);
      } else if (name == "m" && row.count("s")) {
        const int top = family == "lambda" ? row.at("s") / 2 + 1 : row.at("s") / 2;
        for (int v = 0; v <= top; ++v) values.push_back(v);
      } else if (name == "i" && row.count("m")) {
        for (int v = 0; v <= row.at("m"); ++v) values.push_back(v);
      } else {
        throw UsageError("--" + name + " is required for " + family);
      }
      for (int v : values) {
        auto r = row;
        r[name] = v;
        next.push_back(std::move(r));
      }
    }
    rows = std::move(next);
  }
  std::ostringstream csv;
  csv << std::setprecision(17);
  for (const std::string& name : fam.params) csv << name << ',';
  csv << "value\n";
  int written = 0;
  std::string last_error;
  for (const auto& row : rows) {
    double v;
    try {
      v = fam.eval(row);
    } catch (const std::domain_error& e) {
      last_error = e.what();
      continue;
    }
    for (const std::string& name : fam.params) csv << row.at(name) << ',';
    csv << v << '\n';
    ++written;
  }
  if (written == 0) throw UsageError("no valid index tuple: " + last_error);
  out << csv.str();
  if (!out_path.empty()) write_text_file(out_path, csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensorial curvature measures of polytopes and Monte-Carlo checks of their integral formulae", "tcm"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path, csv_path;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (default: $TCM_SEED or 1)")->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads, "worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_path, "JSON report path (default: stdout)");
  };

  // measure
  auto* measure = app.add_subcommand("measure", "evaluate Q^m phi_j^{r,s,l}(P, beta)");
  PolytopeArg m_poly;
  m_poly.add(measure, "", true);
  int mj = 0, mr = 0, ms = 0, ml = 0, mm = 0;
  std::uint64_t budget = MomentBudget{}.samples;
  std::string beta_path;
  measure->add_option("--j", mj, "face dimension")->required();
  measure->add_option("--r", mr, "position rank");
  measure->add_option("--s", ms, "normal rank");
  measure->add_option("--l", ml, "power of the face metric");
  measure->add_option("--m", mm, "power of the metric tensor");
  measure->add_option("--beta", beta_path, "region JSON (default: whole space)");
  measure->add_option("--budget", budget, "Monte-Carlo samples per cone moment");
  add_common(measure);

  // coeff
  auto* coeff = app.add_subcommand("coeff", "tabulate coefficients as CSV");
  std::string family;
  std::map<std::string, std::string> coeff_args;
  coeff->add_option("family", family, "alpha | c | d | equal | iota | lambda | kappa | line")->required();
  for (const char* p : {"n", "j", "k", "r", "s", "l", "i", "m"}) {
    coeff->add_option(std::string("--") + p, coeff_args[p], "value or inclusive range a:b");
  }
  coeff->add_option("--out", out_path, "also write the CSV here");

  // crofton-verify
  auto* crofton = app.add_subcommand("crofton-verify", "check the Crofton formula by sampling flats");
  PolytopeArg c_poly;
  c_poly.add(crofton, "", true);
  int cj = 0, ck = 1, cr = 0, cs = 0, cl = 0;
  std::uint64_t samples = 100000;
  double margin = 0.05;
  crofton->add_option("--j", cj)->required();
  crofton->add_option("--k", ck)->required();
  crofton->add_option("--r", cr);
  crofton->add_option("--s", cs);
  crofton->add_option("--l", cl);
  crofton->add_option("--beta", beta_path, "region JSON (default: whole space)");
  crofton->add_option("--samples", samples, "number of flats");
  crofton->add_option("--margin", margin, "added to the circumradius of the sampling ball");
  crofton->add_option("--budget", budget, "Monte-Carlo samples per cone moment");
  crofton->add_option("--csv", csv_path, "per-coordinate CSV");
  add_common(crofton);

  // kinematic-verify
  auto* kinematic = app.add_subcommand("kinematic-verify", "check the kinematic formula by sampling rigid motions");
  PolytopeArg k_poly, k_other;
  k_poly.add(kinematic, "", true);
  k_other.add(kinematic, "other-", false);
  std::string other_beta_path;
  int kj = 0, kr = 0, ks = 0, kl = 0;
  kinematic->add_option("--j", kj)->required();
  kinematic->add_option("--r", kr);
  kinematic->add_option("--s", ks);
  kinematic->add_option("--l", kl);
  kinematic->add_option("--beta", beta_path, "region JSON for P");
  kinematic->add_option("--other-beta", other_beta_path, "region JSON for the moving polytope");
  kinematic->add_option("--samples", samples, "number of motions");
  kinematic->add_option("--margin", margin);
  kinematic->add_option("--budget", budget);
  kinematic->add_option("--csv", csv_path, "per-coordinate CSV");
  add_common(kinematic);

  // independence
  auto* indep = app.add_subcommand("independence", "rank test of the enumerated valuations");
  int in_n = 2, in_p = 2, trials = 6;
  indep->add_option("--n", in_n)->required();
  indep->add_option("--p", in_p)->required();
  indep->add_option("--trials", trials, "random polytopes")->check(CLI::PositiveNumber);
  add_common(indep);

  // steiner-check
  auto* steiner = app.add_subcommand("steiner-check", "parallel volume against the Steiner polynomial");
  PolytopeArg s_poly;
  s_poly.add(steiner, "", true);
  std::vector<double> eps{0.25, 0.5, 1.0};
  double tol = 0.005;
  std::uint64_t points = 1000000;
  steiner->add_option("--eps", eps, "radii")->delimiter(',');
  steiner->add_option("--samples", points, "Monte-Carlo points per radius");
  steiner->add_option("--tol", tol, "relative tolerance");
  add_common(steiner);

  if (args.empty()) {
    err << app.help();
    return kUsage;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

    if (*coeff) {
      std::map<std::string, std::string> given;
      for (const auto& [k, v] : coeff_args) {
        if (!v.empty()) given[k] = v;
      }
      return run_coeff(family, given, out_path, out);
    }

    if (*measure) {
      const Polytope p = m_poly.load();
      const Region beta = load_region(beta_path, p.ambient_dim());
      MomentBudget b;
      b.samples = budget;
      b.seed = seed;
      Json config = m_poly.describe();
      config.update(Json{{"j", mj}, {"r", mr}, {"s", ms}, {"l", ml}, {"m", mm}, {"beta", region_to_json(beta)},
                         {"budget", budget}, {"seed", seed}});
      const MeasureValue v = tensorial_measure(p, {mj, mr, ms, ml, mm}, beta, b);
      Json rep = base_report("measure", config);
      rep["result"] = measure_value_to_json(v);
      rep["wall_time"] = elapsed();
      emit(rep, out_path, out);
      if (!out_path.empty()) {
        const auto mons = v.tensor.monomials();
        for (std::size_t q = 0; q < v.tensor.size(); ++q) {
          out << beta_label(mons[q], p.ambient_dim()) << "  " << fmt(v.tensor.coordinate_at(q));
          if (!v.exact) out << " +- " << fmt(v.std_error.coordinate_at(q));
          out << "\n";
        }
      }
      return kOk;
    }

    if (*crofton || *kinematic) {
      SamplingOptions opt;
      opt.samples = samples;
      opt.seed = seed;
      opt.margin = margin;
      opt.threads = threads;
      opt.budget.samples = budget;
      opt.budget.seed = seed;
      VerificationReport r;
      Json config;
      if (*crofton) {
        const Polytope p = c_poly.load();
        const Region beta = load_region(beta_path, p.ambient_dim());
        config = c_poly.describe();
        config.update(Json{{"j", cj}, {"k", ck}, {"r", cr}, {"s", cs}, {"l", cl}, {"beta", region_to_json(beta)}});
        r = crofton_verify(p, beta, cj, ck, cr, cs, cl, opt);
      } else {
        const Polytope p = k_poly.load();
        const Polytope other = k_other.given() ? k_other.load() : p;
        const Region beta = load_region(beta_path, p.ambient_dim());
        const Region other_beta = load_region(other_beta_path, p.ambient_dim());
        config = k_poly.describe();
        config["other"] = k_other.given() ? k_other.describe() : k_poly.describe();
        config.update(Json{{"j", kj}, {"r", kr}, {"s", ks}, {"l", kl}, {"beta", region_to_json(beta)},
                           {"other_beta", region_to_json(other_beta)}});
        r = kinematic_verify(p, other, beta, other_beta, kj, kr, ks, kl, opt);
      }
      config.update(Json{{"samples", samples}, {"seed", seed}, {"margin", margin}, {"budget", budget}, {"threads", threads}});
      Json rep = base_report(*crofton ? "crofton-verify" : "kinematic-verify", config);
      rep["result"] = report_to_json(r);
      rep["pass"] = r.pass;
      rep["wall_time"] = r.wall_time;
      if (!out_path.empty()) emit(rep, out_path, out);
      if (!csv_path.empty()) write_text_file(csv_path, report_csv(r));
      print_report_table(r, out);
      return r.pass ? kOk : kCheckFailed;
    }

    if (*indep) {
      const RankResult r = independence_rank(in_n, in_p, trials, seed);
      Json rep = base_report("independence", {{"n", in_n}, {"p", in_p}, {"trials", trials}, {"seed", seed}});
      rep["result"] = rank_to_json(r);
      rep["pass"] = r.rank == r.expected;
      rep["wall_time"] = elapsed();
      if (!out_path.empty()) emit(rep, out_path, out);
      out << "n=" << in_n << " p=" << in_p << "  valuations=" << r.expected << "  rank=" << r.rank
          << "  rows=" << r.rows << "\n"
          << (r.rank == r.expected ? "PASS" : "FAIL") << "\n";
      return r.rank == r.expected ? kOk : kCheckFailed;
    }

    if (*steiner) {
      const Polytope p = s_poly.load();
      const SteinerReport r = steiner_check(p, eps, points, seed, threads, tol);
      Json config = s_poly.describe();
      config.update(Json{{"eps", eps}, {"samples", points}, {"tol", tol}, {"seed", seed}, {"threads", threads}});
      Json rep = base_report("steiner-check", config);
      rep["result"] = steiner_to_json(r);
      rep["pass"] = r.pass;
      rep["wall_time"] = elapsed();
      if (!out_path.empty()) emit(rep, out_path, out);
      out << std::left << std::setw(8) << "eps" << std::setw(16) << "monte-carlo" << std::setw(16) << "steiner"
          << std::setw(16) << "rel.error" << "ok\n";
      for (const SteinerRow& row : r.rows) {
        out << std::left << std::setw(8) << fmt(row.eps) << std::setw(16) << fmt(row.mc) << std::setw(16)
            << fmt(row.exact) << std::setw(16) << fmt(row.rel_error) << (row.pass ? "yes" : "NO") << "\n";
      }
      out << (r.pass ? "PASS" : "FAIL") << "\n";
      return r.pass ? kOk : kCheckFailed;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace tcm::cli
