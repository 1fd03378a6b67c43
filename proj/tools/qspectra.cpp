// qspectra command line: evaluators and identity checks for the q-series,
// spectral-product, and symmetric-function layers, with machine-readable
// reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspectra/bell.hpp"
#include "qspectra/csgen.hpp"
#include "qspectra/hierarchy.hpp"
#include "qspectra/multipartite.hpp"
#include "qspectra/report.hpp"
#include "qspectra/suite.hpp"
#include "qspectra/symmfunc.hpp"

using namespace qspectra;
using json = nlohmann::ordered_json;

namespace {

json complex_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json report_json(const IdentityReport& r) {
  json j;
  j["identity"] = r.identity;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["tail_bound"] = r.tail_bound;
  json trunc = json::object();
  for (const auto& [k, v] : r.truncation) trunc[k] = v;
  j["truncation"] = trunc;
  j["status"] = to_string(r.status);
  j["pass"] = r.pass;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json series_json(const SeriesD& s) {
  json j;
  j["vars"] = s.vars();
  j["order"] = s.order();
  json coeffs = json::array();
  s.for_each_nonzero([&](const std::vector<int>& e, const Complex& c) {
    coeffs.push_back(json::array({e, c.real(), c.imag()}));
  });
  j["coeffs"] = coeffs;
  return j;
}

std::string reports_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  os << "identity,status,pass,residual,tolerance,tail_bound,lhs_re,lhs_im,rhs_re,rhs_im\n";
  for (const auto& r : reports)
    os << r.identity << ',' << to_string(r.status) << ',' << (r.pass ? 1 : 0) << ','
       << format_real(r.residual) << ',' << format_real(r.tolerance) << ','
       << format_real(r.tail_bound) << ',' << format_real(r.lhs.real()) << ','
       << format_real(r.lhs.imag()) << ',' << format_real(r.rhs.real()) << ','
       << format_real(r.rhs.imag()) << '\n';
  return os.str();
}

std::string reports_plain(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-14s residual=%-12.4e tail=%-10.2e", r.identity.c_str(),
                  to_string(r.status), r.residual, r.tail_bound);
    os << line;
    if (!r.notes.empty()) os << "  " << r.notes;
    os << '\n';
  }
  return os.str();
}

std::string series_csv(const SeriesD& s) {
  std::ostringstream os;
  os << "exponents,re,im\n";
  s.for_each_nonzero([&](const std::vector<int>& e, const Complex& c) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << ',' << format_real(c.real()) << ',' << format_real(c.imag()) << '\n';
  });
  return os.str();
}

struct OutputSink {
  std::string format = "json";
  std::string path;

  void write(const std::string& text) const {
    if (!path.empty()) {
      std::ofstream f(path, std::ios::binary);
      f << text;
    }
    std::cout << text;
  }

  void emit_json(const json& j) const { write(j.dump(2) + "\n"); }

  void emit_reports(const std::vector<IdentityReport>& reports) const {
    if (format == "csv") {
      write(reports_csv(reports));
    } else if (format == "plain") {
      write(reports_plain(reports));
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_json(r));
      emit_json(arr);
    }
  }

  void emit_series(const SeriesD& s, json wrapper = json::object()) const {
    if (format == "csv") {
      write(series_csv(s));
    } else if (format == "plain") {
      std::ostringstream os;
      s.for_each_nonzero([&](const std::vector<int>& e, const Complex& c) {
        os << "[";
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << "]  " << format_complex(c) << '\n';
      });
      write(os.str());
    } else {
      wrapper["series"] = series_json(s);
      emit_json(wrapper);
    }
  }
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

Partition parse_partition(const std::string& text) {
  if (text.empty()) return Partition();
  auto v = parse_int_list(text);
  return Partition(v);
}

cs::LinkData load_link(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--input", "cannot open " + path);
  json j = json::parse(f);
  cs::LinkData link;
  link.L = j.value("L", 1);
  for (const auto& e : j.at("entries")) {
    cs::PartitionTuple A;
    for (const auto& part : e.at("A")) A.push_back(Partition(part.get<std::vector<int>>()));
    Complex v = e.at("value").is_string() ? parse_complex(e.at("value").get<std::string>())
                                          : Complex(e.at("value").get<double>(), 0);
    link.P[A] = v;
  }
  return link;
}

cs::InvariantTable load_invariants(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--table", "cannot open " + path);
  json j = json::parse(f);
  cs::InvariantTable t;
  t.L = j.value("L", 1);
  for (const auto& e : j.at("entries")) {
    cs::PartitionTuple mu;
    for (const auto& part : e.at("mu")) mu.push_back(Partition(part.get<std::vector<int>>()));
    int g = e.value("g", 0);
    double Q = e.at("Q").get<double>();
    int twoQ = int(std::llround(2 * Q));
    t.entries[{mu, g, twoQ}] += e.at("n").get<long long>();
  }
  return t;
}

struct GlobalOpts {
  std::string q_str, theta_str;
  double alpha = 0, beta = 0;
  bool has_alpha = false, has_beta = false;
  int order = 12;
  double tol = 1e-7;
  std::string precision;
  unsigned seed = 12345;
  bool strict = false;

  suite::SuiteConfig to_config() const {
    suite::SuiteConfig cfg;
    cfg.tolerance = tol;
    cfg.order = order;
    cfg.seed = seed;
    cfg.strict = strict;
    if (!theta_str.empty()) cfg.theta = parse_complex(theta_str);
    if (has_alpha || has_beta) cfg.alpha_beta = {alpha, beta};
    if (!q_str.empty()) cfg.q = parse_complex(q_str);
    cfg.precision = precision;
    return cfg;
  }

  template <class Real>
  spectral::SpectralParams<Real> spectral_params() const {
    return suite::params_from<Real>(to_config());
  }
};

int reports_exit(const std::vector<IdentityReport>& reports, bool strict) {
  return suite::exit_code(reports, strict);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"qspectra: q-series, spectral products, and quantum-invariant generating functions"};
  app.require_subcommand(1);

  GlobalOpts g;
  OutputSink sink;
  app.add_option("--q", g.q_str, "nome q as a complex literal a+bi");
  app.add_option("--theta", g.theta_str, "upper-half-plane parameter instead of --q");
  auto* oa = app.add_option("--alpha", g.alpha, "group parameter alpha > 0");
  auto* ob = app.add_option("--beta", g.beta, "group parameter beta");
  auto* oq = app.get_option("--q");
  auto* ot = app.get_option("--theta");
  oa->excludes(oq)->excludes(ot);
  ob->excludes(oq)->excludes(ot);
  app.add_option("--order", g.order, "series truncation order")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "check tolerance");
  app.add_option("--precision", g.precision, "scalar class: double or long-double");
  app.add_option("--format", sink.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--seed", g.seed, "seed for randomized property checks");
  app.add_flag("--strict", g.strict, "domain failures become exit code 3");
  app.add_option("--out", sink.path, "also write output to this file");
  app.fallthrough();

  // partitions
  auto* cmd_parts = app.add_subcommand("partitions", "multipartite partition counts");
  int parts_m = 1;
  std::string parts_target;
  bool parts_distinct = false, parts_witnesses = false;
  cmd_parts->add_option("--m", parts_m, "number of components");
  cmd_parts->add_option("--target", parts_target, "target tuple, e.g. 1,1")->required();
  cmd_parts->add_flag("--distinct", parts_distinct, "distinct parts only");
  cmd_parts->add_flag("--witnesses", parts_witnesses, "list the decompositions");

  // bell
  auto* cmd_bell = app.add_subcommand("bell", "complete Bell polynomials");
  int bell_n = 0;
  std::string bell_g;
  cmd_bell->add_option("--n", bell_n, "highest index")->required();
  cmd_bell->add_option("--g", bell_g, "inputs g_1..g_n, comma separated")->required();

  // prodexp
  auto* cmd_prodexp = app.add_subcommand("prodexp", "coefficients of prod (1-q^k)^{-a_k}");
  std::string prodexp_a;
  cmd_prodexp->add_option("--a", prodexp_a, "exponent sequence a_1,a_2,...")->required();

  // zeta
  auto* cmd_zeta = app.add_subcommand("zeta", "lattice spectral function");
  std::string zeta_s;
  cmd_zeta->add_option("--s", zeta_s, "argument as complex literal")->required();

  // ruelle-check
  auto* cmd_rc = app.add_subcommand("ruelle-check", "identity checks on the Ruelle layer");
  std::string rc_identity;
  cmd_rc->add_option("--identity", rc_identity, "R1|R2|RU1|RU2|beta|F1|G1|DE3")
      ->required()
      ->check(CLI::IsMember({"R1", "R2", "RU1", "RU2", "beta", "F1", "G1", "DE3"}));
  double rc_a = 1.0;
  std::string rc_eps = "0", rc_b = "1", rc_z = "0.5";
  int rc_ell = 1, rc_m = 1, rc_n = 1;
  long rc_zint = 1, rc_bint = 0;
  std::string rc_reading = "validated";
  cmd_rc->add_option("--a", rc_a, "step parameter");
  cmd_rc->add_option("--eps", rc_eps, "offset epsilon");
  cmd_rc->add_option("--ell", rc_ell, "product start index");
  cmd_rc->add_option("--b", rc_b, "weight exponent (RU1/RU2)");
  cmd_rc->add_option("--z", rc_z, "argument z (F1/G1)");
  cmd_rc->add_option("--m", rc_m, "number of components");
  cmd_rc->add_option("--n", rc_n, "beta index");
  cmd_rc->add_option("--z-int", rc_zint, "integer z (DE3)");
  cmd_rc->add_option("--b-int", rc_bint, "integer b (DE3)");
  cmd_rc->add_option("--reading", rc_reading, "DE3 reading")
      ->check(CLI::IsMember({"validated", "printed"}));

  // elliptic
  auto* cmd_ell = app.add_subcommand("elliptic", "elliptic gamma functions");
  std::string ell_fn = "gamma1", ell_z, ell_q, ell_p, ell_t;
  cmd_ell->add_option("--fn", ell_fn, "gamma1|gamma2")
      ->check(CLI::IsMember({"gamma1", "gamma2"}));
  cmd_ell->add_option("--z", ell_z)->required();
  cmd_ell->add_option("--nome-q", ell_q, "first nome (defaults to --q)");
  cmd_ell->add_option("--p", ell_p, "second nome");
  cmd_ell->add_option("--t", ell_t, "third nome (gamma2)");

  // check
  auto* cmd_check = app.add_subcommand("check", "hierarchy identity checks");
  std::string ck_identity;
  cmd_check
      ->add_option("--identity", ck_identity,
                   "G21|G22|gamma2-modularity|G1-spectral|gamma1-reflection|"
                   "gamma1-qq|gamma2-qqq|factorized")
      ->required()
      ->check(CLI::IsMember({"G21", "G22", "gamma2-modularity", "G1-spectral",
                             "gamma1-reflection", "gamma1-qq", "gamma2-qqq",
                             "factorized"}));
  std::string ck_omega = "0.3", ck_p = "0.25", ck_z = "0.4";
  std::string ck_pa = "0+0.9i", ck_pb = "0+1i", ck_pc = "0+1.1i";
  int ck_m = 1;
  cmd_check->add_option("--Omega", ck_omega, "shift-equation argument");
  cmd_check->add_option("--p", ck_p, "second nome");
  cmd_check->add_option("--z", ck_z, "function argument");
  cmd_check->add_option("--per-a", ck_pa, "modularity period a");
  cmd_check->add_option("--per-b", ck_pb, "modularity period b");
  cmd_check->add_option("--per-c", ck_pc, "modularity period c");
  cmd_check->add_option("--m", ck_m, "components (factorized)");

  // chars
  auto* cmd_chars = app.add_subcommand("chars", "symmetric group character table");
  int chars_n = 4;
  cmd_chars->add_option("--n", chars_n)->required()->check(CLI::Range(1, 10));

  // schur
  auto* cmd_schur = app.add_subcommand("schur", "Schur polynomial from the character expansion");
  std::string schur_shape;
  int schur_vars = 2;
  cmd_schur->add_option("--shape", schur_shape)->required();
  cmd_schur->add_option("--vars", schur_vars)->check(CLI::Range(1, 8));

  // cs
  auto* cmd_cs = app.add_subcommand("cs", "quantum-invariant generating series");
  cmd_cs->require_subcommand(1);
  auto* cs_part = cmd_cs->add_subcommand("partition", "partition function from a P table");
  std::string csp_input, csp_basis = "both";
  int csp_letters = 2;
  cs_part->add_option("--input", csp_input)->required();
  cs_part->add_option("--basis", csp_basis)->check(CLI::IsMember({"schur", "powersum", "both"}));
  cs_part->add_option("--letters", csp_letters, "alphabet size per component");
  auto* cs_lmov = cmd_cs->add_subcommand("lmov", "collapsed infinite product from a table");
  std::string csl_table, csl_t = "0.5";
  int csl_letters = 1, csl_kmax = 64;
  cs_lmov->add_option("--table", csl_table)->required();
  cs_lmov->add_option("--t", csl_t, "second parameter t");
  cs_lmov->add_option("--letters", csl_letters, "alphabet size per component");
  cs_lmov->add_option("--kmax", csl_kmax, "bilateral tail cap");

  // suite
  auto* cmd_suite = app.add_subcommand("suite", "run the identity battery");
  bool suite_all = false;
  std::vector<std::string> suite_ids;
  std::string suite_config;
  cmd_suite->add_flag("--all", suite_all, "run every default check");
  cmd_suite->add_option("--identity", suite_ids, "run only the named identities");
  cmd_suite->add_option("--config", suite_config, "JSON file with suite settings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  if (g.tol <= 0) {
    std::cerr << "error: tolerance must be positive\n";
    return 2;
  }
  if (g.precision.empty()) {
    const char* env = std::getenv("QSPECTRA_PRECISION");
    g.precision = env ? env : "double";
  }
  if (g.precision != "double" && g.precision != "long-double") {
    std::cerr << "error: unknown precision class '" << g.precision << "'\n";
    return 2;
  }
  const bool extended = g.precision == "long-double";

  try {
    if (*cmd_parts) {
      auto target = parse_int_list(parts_target);
      if (int(target.size()) != parts_m) {
        std::cerr << "error: --target arity does not match --m\n";
        return 2;
      }
      auto counts = mp::count_multipartitions(target);
      json j;
      j["target"] = target;
      j["count"] = parts_distinct ? counts.distinct : counts.unrestricted;
      j["unrestricted"] = counts.unrestricted;
      j["distinct"] = counts.distinct;
      json byj = json::object();
      for (auto& [k, v] : parts_distinct ? counts.by_num_parts_distinct : counts.by_num_parts)
        byj[std::to_string(k)] = v;
      j["by_num_parts"] = byj;
      if (parts_witnesses) {
        json w = json::array();
        for (const auto& ps : mp::enumerate_multipartitions(target, parts_distinct)) {
          json one = json::array();
          for (const auto& part : ps) one.push_back(part);
          w.push_back(one);
        }
        j["witnesses"] = w;
      }
      sink.emit_json(j);
      return 0;
    }

    if (*cmd_bell) {
      auto gs = parse_complex_list(bell_g);
      auto y = bell::bell_recurrence(gs, bell_n);
      json j;
      j["n"] = bell_n;
      json arr = json::array();
      for (const auto& v : y) arr.push_back(complex_json(v));
      j["Y"] = arr;
      sink.emit_json(j);
      return 0;
    }

    if (*cmd_prodexp) {
      auto a = parse_complex_list(prodexp_a);
      auto b = bell::product_expansion<double>(a, g.order);
      json j;
      j["order"] = g.order;
      json arr = json::array();
      for (const auto& v : b) arr.push_back(complex_json(v));
      j["B"] = arr;
      sink.emit_json(j);
      return 0;
    }

    if (*cmd_zeta) {
      Complex s = parse_complex(zeta_s);
      auto run = [&](auto real_tag) {
        using Real = decltype(real_tag);
        auto p = g.spectral_params<Real>();
        auto rep = spectral::check_zeta_cross<Real>(
            Cplx<Real>(Real(s.real()), Real(s.imag())), p, g.tol);
        rep.identity = "zeta-cross-representation";
        sink.emit_reports({rep});
        return reports_exit({rep}, g.strict);
      };
      return extended ? run((long double)0) : run((double)0);
    }

    if (*cmd_rc) {
      auto run = [&](auto real_tag) {
        using Real = decltype(real_tag);
        auto p = g.spectral_params<Real>();
        Complex epsc = parse_complex(rc_eps);
        Cplx<Real> eps(Real(epsc.real()), Real(epsc.imag()));
        std::vector<IdentityReport> reports;
        if (rc_identity == "R1" || rc_identity == "R2") {
          reports.push_back(spectral::check_r_product<Real>(rc_identity == "R2", p,
                                                            Real(rc_a), eps, rc_ell, g.tol));
        } else if (rc_identity == "RU1" || rc_identity == "RU2") {
          Complex bc = parse_complex(rc_b);
          reports.push_back(spectral::check_ru_product<Real>(
              rc_identity == "RU2", p, Real(rc_a), eps,
              Cplx<Real>(Real(bc.real()), Real(bc.imag())), rc_ell, g.tol));
        } else if (rc_identity == "beta") {
          reports.push_back(spectral::check_beta_ratio<Real>(rc_n, rc_m, p, g.tol));
        } else if (rc_identity == "DE3") {
          reports.push_back(spectral::check_de3<Real>(rc_zint, rc_bint, p, g.tol,
                                                      rc_reading == "printed"));
        } else { // F1 / G1
          Complex zc = parse_complex(rc_z);
          Cplx<Real> z(Real(zc.real()), Real(zc.imag()));
          auto gs = spectral::gf_spectral_form<Real>(z, rc_m, p, Real(g.tol) * Real(1e-3));
          auto dv = mp::gf_specialized_value<Real>(z, p.q, rc_m, rc_identity == "G1",
                                                   mp::BetaConvention::distinct_powers);
          Cplx<Real> lhs = rc_identity == "G1" ? gs.G : gs.F;
          reports.push_back(make_report(
              rc_identity, {{"z", rc_z}, {"m", std::to_string(rc_m)}},
              Complex(double(lhs.real()), double(lhs.imag())),
              Complex(double(dv.product_value.real()), double(dv.product_value.imag())),
              g.tol, double(gs.tail_bound)));
        }
        sink.emit_reports(reports);
        return reports_exit(reports, g.strict);
      };
      return extended ? run((long double)0) : run((double)0);
    }

    if (*cmd_ell) {
      Complex z = parse_complex(ell_z);
      Complex qn = ell_q.empty() ? (g.q_str.empty() ? Complex(0.2, 0) : parse_complex(g.q_str))
                                 : parse_complex(ell_q);
      Complex pn = ell_p.empty() ? qn : parse_complex(ell_p);
      json j;
      j["fn"] = ell_fn;
      if (ell_fn == "gamma1") {
        auto r = hier::elliptic_gamma1<double>(z, qn, pn, g.tol * 1e-3);
        j["value"] = complex_json(r.value);
        j["tail_bound"] = double(r.tail_bound);
        j["terms"] = r.terms;
      } else {
        Complex tn = ell_t.empty() ? pn : parse_complex(ell_t);
        auto r = hier::elliptic_gamma2<double>(z, qn, pn, tn, g.tol * 1e-3);
        j["value"] = complex_json(r.value);
        j["tail_bound"] = double(r.tail_bound);
        j["terms"] = r.terms;
      }
      sink.emit_json(j);
      return 0;
    }

    if (*cmd_check) {
      auto run = [&](auto real_tag) {
        using Real = decltype(real_tag);
        using CR = Cplx<Real>;
        auto lift = [](const Complex& c) { return CR(Real(c.real()), Real(c.imag())); };
        Complex omega = parse_complex(ck_omega);
        Complex qn = g.q_str.empty() ? Complex(0.2, 0) : parse_complex(g.q_str);
        Complex pn = parse_complex(ck_p);
        Complex z = parse_complex(ck_z);
        std::vector<IdentityReport> reports;
        if (ck_identity == "G21") {
          reports.push_back(hier::check_g21<Real>(lift(omega), lift(qn), lift(pn), false, g.tol));
          reports.push_back(hier::check_g21<Real>(lift(omega), lift(qn), lift(pn), true, g.tol));
        } else if (ck_identity == "G22") {
          reports.push_back(hier::check_g22<Real>(lift(omega), lift(qn), lift(pn), false, g.tol));
          reports.push_back(hier::check_g22<Real>(lift(omega), lift(qn), lift(pn), true, g.tol));
        } else if (ck_identity == "gamma2-modularity") {
          auto tri = hier::NomeTriple<Real>::from_periods(
              lift(parse_complex(ck_pa)), lift(parse_complex(ck_pb)), lift(parse_complex(ck_pc)));
          reports.push_back(hier::gamma2_modularity_check<Real>(lift(z), tri, g.tol));
        } else if (ck_identity == "G1-spectral") {
          reports.push_back(hier::check_g1_spectral<Real>(lift(z), g.spectral_params<Real>(), g.tol));
        } else if (ck_identity == "gamma1-reflection") {
          reports.push_back(hier::check_gamma1_reflection<Real>(lift(z), lift(qn), lift(pn), g.tol));
        } else if (ck_identity == "gamma1-qq") {
          reports.push_back(hier::check_gamma1_qq_spectral<Real>(lift(z), g.spectral_params<Real>(), g.tol));
        } else if (ck_identity == "gamma2-qqq") {
          reports.push_back(hier::check_gamma2_qqq_spectral<Real>(lift(z), g.spectral_params<Real>(), g.tol));
        } else { // factorized
          reports.push_back(hier::check_factorized_hierarchy<Real>(lift(z), ck_m, lift(qn), g.tol));
        }
        sink.emit_reports(reports);
        return reports_exit(reports, g.strict);
      };
      return extended ? run((long double)0) : run((double)0);
    }

    if (*cmd_chars) {
      auto t = symm::character_table(chars_n);
      json j;
      j["n"] = chars_n;
      json shapes = json::array();
      for (const auto& s : t.shapes) shapes.push_back(s.parts);
      j["shapes"] = shapes;
      j["classes"] = shapes;
      json zs = json::array();
      for (const auto& mu : t.classes) zs.push_back(symm::z_mu(mu));
      j["z_mu"] = zs;
      j["table"] = t.chi;
      sink.emit_json(j);
      return 0;
    }

    if (*cmd_schur) {
      Partition shape = parse_partition(schur_shape);
      auto poly = symm::schur_exact(shape, schur_vars);
      json j;
      j["shape"] = shape.parts;
      j["vars"] = schur_vars;
      json terms = json::array();
      for (const auto& [e, c] : poly.coeffs) terms.push_back(json::array({e, c.num}));
      j["terms"] = terms;
      sink.emit_json(j);
      return 0;
    }

    if (*cs_part) {
      auto link = load_link(csp_input);
      std::vector<int> sizes(link.L, csp_letters);
      json j;
      j["L"] = link.L;
      if (csp_basis == "schur" || csp_basis == "both") {
        auto zs = cs::partition_function(link, sizes, g.order, cs::Basis::schur);
        j["schur"] = series_json(zs);
        if (csp_basis == "both") {
          auto zp = cs::partition_function(link, sizes, g.order, cs::Basis::powersum);
          j["powersum"] = series_json(zp);
          j["basis_residual"] = double(max_abs_diff(zs, zp));
        }
      } else {
        auto zp = cs::partition_function(link, sizes, g.order, cs::Basis::powersum);
        j["powersum"] = series_json(zp);
      }
      sink.emit_json(j);
      return 0;
    }

    if (*cs_lmov) {
      auto table = load_invariants(csl_table);
      std::vector<int> sizes(table.L, csl_letters);
      Complex qn = g.q_str.empty() ? Complex(0.2, 0) : parse_complex(g.q_str);
      cs::LmovOptions opt;
      opt.kmax = csl_kmax;
      auto z = cs::lmov_product(table, sizes, qn, parse_complex(csl_t), g.order, opt);
      json wrapper;
      wrapper["q"] = complex_json(qn);
      wrapper["t"] = complex_json(parse_complex(csl_t));
      sink.emit_series(z, wrapper);
      return 0;
    }

    if (*cmd_suite) {
      suite::SuiteConfig cfg = g.to_config();
      cfg.identities = suite_ids;
      if (!suite_config.empty()) {
        std::ifstream f(suite_config);
        if (!f) {
          std::cerr << "error: cannot open config " << suite_config << '\n';
          return 2;
        }
        json jc = json::parse(f);
        if (jc.contains("tolerance")) cfg.tolerance = jc["tolerance"].get<double>();
        if (jc.contains("q")) cfg.q = parse_complex(jc["q"].get<std::string>());
        if (jc.contains("order")) cfg.order = jc["order"].get<int>();
        if (jc.contains("seed")) cfg.seed = jc["seed"].get<unsigned>();
        if (jc.contains("strict")) g.strict = jc["strict"].get<bool>();
        if (jc.contains("identities"))
          cfg.identities = jc["identities"].get<std::vector<std::string>>();
        if (cfg.tolerance <= 0) {
          std::cerr << "error: tolerance must be positive\n";
          return 2;
        }
        suite_all = suite_all || cfg.identities.empty();
      }
      if (!suite_all && cfg.identities.empty()) {
        std::cerr << "error: pass --all, --identity, or --config\n";
        return 2;
      }
      std::vector<IdentityReport> reports;
      if (extended)
        reports = suite::run_suite<long double>(cfg);
      else
        reports = suite::run_suite<double>(cfg);
      sink.emit_reports(reports);
      return reports_exit(reports, g.strict);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return g.strict ? 3 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
