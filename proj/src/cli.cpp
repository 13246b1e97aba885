#include "shiftsum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shiftsum/char_arith.hpp"
#include "shiftsum/config.hpp"
#include "shiftsum/convolution.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/eisenstein.hpp"
#include "shiftsum/lfun.hpp"
#include "shiftsum/series.hpp"
#include "shiftsum/verify.hpp"

namespace shiftsum {

using json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s, const std::string& text) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(!s.empty() && used == s.size(), "cannot parse complex number '" + text + "'");
  return v;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json policy_json(const PrecisionPolicy& p) {
  return {{"epsilon_abs", p.epsilon_abs},       {"epsilon_rel", p.epsilon_rel},
          {"quadrature_nodes", p.quadrature_nodes}, {"cutoff_csum", p.cutoff_csum},
          {"cutoff_qseries", p.cutoff_qseries}, {"smoothing_scale", p.smoothing_scale}};
}

json report_json(const VerificationReport& r, bool timing) {
  return {{"schema", 1},
          {"identity_id", r.identity_id},
          {"route_a", cjson(r.route_a)},
          {"route_b", cjson(r.route_b)},
          {"abs_diff", r.abs_diff},
          {"rel_diff", r.rel_diff},
          {"tolerance", r.tolerance},
          {"rel_tolerance", r.rel_tolerance},
          {"status", r.pass ? "pass" : "fail"},
          {"runtime_ms", timing ? r.runtime_ms : 0},
          {"truncation", policy_json(r.truncation)},
          {"detail", r.detail}};
}

struct Globals {
  std::string config_path;
  std::optional<int64_t> level, char_index, c_max, q_max;
  std::optional<double> epsilon;
};

struct Session {
  Config cfg;
  PrecisionPolicy policy;
  DirichletCharacter chi;

  std::shared_ptr<const CuspFormCoefficients> form(int64_t terms) const {
    require(cfg.level == 11, "the cusp form is only available at level 11");
    if (terms > cfg.q_max)
      throw BudgetError("needs " + std::to_string(terms) + " coefficients, q_max is " + std::to_string(cfg.q_max));
    return std::make_shared<const CuspFormCoefficients>(eta_product_coeffs(std::max<int64_t>(terms, 1)));
  }
  int64_t lambda_terms(int64_t c, cplx t) const { return lambda_twist_terms(c, t, policy.epsilon_abs) + 1; }
  int64_t smoothed_terms() const { return smoothed_length(policy.smoothing_scale) + 1; }
  int64_t full_terms() const {
    return std::min(cfg.q_max, std::max(smoothed_terms(), lambda_terms(cfg.c_max, 1.0)));
  }
};

Session make_session(const Globals& g, std::ostream& err) {
  std::vector<std::string> warnings;
  Config cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path, cfg, &warnings);
  if (g.level) cfg.level = *g.level;
  if (g.char_index) cfg.char_index = *g.char_index;
  if (g.epsilon) cfg.epsilon = *g.epsilon;
  if (g.c_max) cfg.c_max = *g.c_max;
  if (g.q_max) cfg.q_max = *g.q_max;
  if (!(cfg.epsilon > 0)) throw UsageError("epsilon must be positive");
  if (cfg.c_max <= 0 || cfg.q_max <= 0) throw UsageError("c_max and q_max must be positive");
  if (cfg.level < 1) throw UsageError("level must be positive");
  const PrecisionPolicy policy = cfg.policy(&warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return {cfg, policy, make_character(cfg.level, cfg.char_index)};
}

json coefficient_json(const EisensteinCoefficient& e, const std::string& kind, const std::string& route) {
  return {{"schema", 1},      {"kind", kind},          {"n", e.n},
          {"s", cjson(e.s)},  {"value", cjson(e.value)}, {"err_est", e.error_estimate},
          {"route", route},   {"c_max", e.c_max}};
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  require(!s.empty(), "empty complex number");
  const auto comma = s.find(',');
  if (comma != std::string::npos)
    return {parse_real(s.substr(0, comma), text), parse_real(s.substr(comma + 1), text)};
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& p) {
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    return parse_real(p, text);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split), text), imag_part(s.substr(split))};
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shifted convolution sums of a level 11 newform and twisted Eisenstein series", "shiftsum"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "key=value configuration file");
  app.add_option("--level", g.level, "Level N of the newform and character modulus");
  app.add_option("--char-index", g.char_index, "Index of the Dirichlet character mod N");
  app.add_option("--epsilon", g.epsilon, "Absolute error target (floor 1e-14)");
  app.add_option("--c-max", g.c_max, "Largest modulus in c-sums");
  app.add_option("--q-max", g.q_max, "Cap on q-series and Dirichlet series length");

  std::function<json(Session&)> action;
  bool print_json = true;
  int verify_status = 0;

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients a(1..upto) of the newform");
  int64_t upto = 0;
  std::string format = "json";
  coeffs->add_option("--upto", upto, "Number of coefficients")->required()->check(CLI::PositiveNumber);
  coeffs->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  coeffs->callback([&] {
    action = [&](Session& ses) {
      auto a = ses.form(upto);
      if (format == "csv") {
        print_json = false;
        write_coefficients_csv(out, *a);
        return json();
      }
      json list = json::array();
      for (int64_t n = 1; n <= upto; ++n) list.push_back((*a)(n));
      return json{{"schema", 1}, {"level", a->level()}, {"upto", upto}, {"coefficients", list}};
    };
  });

  // lambda-twist
  auto* lt = app.add_subcommand("lambda-twist", "Lambda(f, t, -d/c)");
  std::string t_text = "1";
  int64_t lc = 0, ld = 0;
  lt->add_option("--t", t_text, "Complex argument t");
  lt->add_option("--c", lc, "Denominator c >= 1")->required();
  lt->add_option("--d", ld, "Numerator d, coprime to c")->required();
  lt->callback([&] {
    action = [&](Session& ses) {
      const cplx t = parse_complex(t_text);
      require(lc >= 1, "lambda-twist: c must be positive");
      auto a = ses.form(ses.lambda_terms(lc, t));
      const SeriesResult r = lambda_twist(*a, TwistParams{t, lc, ld}, ses.policy);
      return json{{"schema", 1}, {"t", cjson(t)},         {"c", lc},
                  {"d", ld},     {"lambda", cjson(r.value)}, {"err_est", r.error_estimate},
                  {"terms", r.terms}};
    };
  });

  // kloosterman
  auto* kl = app.add_subcommand("kloosterman", "Twisted Kloosterman sums S(n, m, chi; c) or S*(n, m, chi; c)");
  int64_t kn = 0, km = 0, kc = 0;
  bool star = false;
  kl->add_option("--n", kn)->required();
  kl->add_option("--m", km)->required();
  kl->add_option("--c", kc, "Modulus, a multiple of N")->required();
  kl->add_flag("--star", star, "Sum weighted by Lambda(f, 1, -d/c)");
  kl->callback([&] {
    action = [&](Session& ses) {
      cplx v;
      if (star) {
        require(kc >= 1, "kloosterman: c must be positive");
        auto a = ses.form(ses.lambda_terms(kc, 1.0));
        TwistTable table(a, ses.policy);
        v = kloosterman_star(kn, km, ses.chi, kc, table);
      } else {
        v = kloosterman_chi(kn, km, ses.chi, kc);
      }
      return json{{"schema", 1}, {"n", kn}, {"m", km}, {"c", kc}, {"star", star}, {"value", cjson(v)}};
    };
  });

  // eisenstein-coeff
  auto* ec = app.add_subcommand("eisenstein-coeff", "Fourier coefficient of E*(z, s, chi) or E(z, s, chi)");
  int64_t en = 0;
  std::string es_text, route = "csum";
  double ey = 0.5;
  bool classical = false;
  ec->add_option("--n", en, "Frequency; 0 is the constant term")->required();
  ec->add_option("--s", es_text, "Complex s")->required();
  ec->add_option("--route", route, "csum, extract or closed")->check(CLI::IsMember({"csum", "extract", "closed"}));
  ec->add_option("--y", ey, "Height for the extract route")->check(CLI::PositiveNumber);
  ec->add_flag("--classical", classical, "Coefficient of E instead of E*");
  ec->callback([&] {
    action = [&](Session& ses) {
      const cplx s = parse_complex(es_text);
      if (classical) {
        const CoefficientRoute r = route == "csum"    ? CoefficientRoute::kloosterman_sum
                                   : route == "closed" ? CoefficientRoute::closed_form
                                                       : CoefficientRoute::quadrature_extraction;
        return coefficient_json(phi_classical(en, s, ses.chi, r, ses.policy, ey), "classical", route);
      }
      if (route == "closed") throw UsageError("route 'closed' needs --classical");
      auto a = ses.form(ses.full_terms());
      TwistTable table(a, ses.policy);
      if (route == "csum") {
        const auto e = en == 0 ? phi_star_constant(s, ses.chi, table, ses.cfg.c_max)
                               : phi_star(en, s, ses.chi, table, ses.cfg.c_max);
        return coefficient_json(e, "star", route);
      }
      require(en != 0, "eisenstein-coeff: the extract route needs n != 0");
      return coefficient_json(
          phi_star_extracted(en, s, ses.chi, ey, ses.policy.quadrature_nodes, ses.cfg.c_max, table), "star", route);
    };
  });

  // shifted-sum
  auto* ss = app.add_subcommand("shifted-sum", "Shifted convolution sum L(n, chi; s) and its variants");
  int64_t sn = -1;
  std::string ss_text, st_text = "1", sx_text;
  std::string sroute = "csum";
  ss->add_option("--n", sn, "Shift n != 0")->required();
  ss->add_option("--s", ss_text, "Complex s")->required();
  ss->add_option("--t", st_text, "Complex t (default 1)");
  ss->add_option("--x", sx_text, "Weight exponent x; selects the weighted sum (n < 0)");
  ss->add_option("--route", sroute, "direct or csum")->check(CLI::IsMember({"direct", "csum"}));
  ss->callback([&] {
    action = [&](Session& ses) {
      ConvolutionQuery q;
      q.n = sn;
      q.s = parse_complex(ss_text);
      q.t = parse_complex(st_text);
      json j{{"schema", 1}, {"n", sn}, {"s", cjson(q.s)}, {"t", cjson(q.t)}, {"route", sroute}};
      auto a = ses.form(ses.full_terms());
      if (!sx_text.empty()) {
        q.x = parse_complex(sx_text);
        if (sroute != "csum") throw UsageError("the weighted sum is only available on the csum route");
        require(q.t == cplx(1.0, 0.0), "shifted-sum: the weighted sum is defined at t = 1");
        TwistTable table(a, ses.policy);
        const WeightedSum w = L_weighted(sn, q.x, q.s, ses.chi, table, ses.cfg.c_max);
        j["x"] = cjson(q.x);
        j["value"] = cjson(w.value);
        j["shifted"] = cjson(w.shifted);
        j["tail"] = cjson(w.tail);
        j["err_est"] = w.error_estimate;
        j["c_max"] = ses.cfg.c_max;
        return j;
      }
      if (sroute == "direct") {
        const SeriesResult r = dds_direct(q, *a, ses.chi, ses.policy);
        j["value"] = cjson(r.value);
        j["err_est"] = r.error_estimate;
        j["terms"] = r.terms;
        j["smoothed"] = r.smoothed;
        return j;
      }
      TwistTable table(a, ses.policy);
      const CsumResult r = dds_csum(q, ses.chi, table, ses.cfg.c_max);
      j["value"] = cjson(r.value);
      j["err_est"] = r.error_estimate;
      j["c_max"] = r.c_max;
      return j;
    };
  });

  // verify
  auto* vf = app.add_subcommand("verify", "Cross-check identities by independent routes");
  std::string suite = "all";
  bool no_timing = false;
  vf->add_option("--suite", suite, "Suite name or 'all'");
  vf->add_flag("--no-timing", no_timing, "Report runtime_ms as 0 for reproducible output");
  vf->callback([&] {
    action = [&](Session& ses) {
      if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
      VerifyContext ctx = VerifyContext::make(ses.cfg.level, ses.cfg.char_index, ses.policy, ses.full_terms());
      std::vector<VerificationReport> reports;
      const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      for (const auto& name : names) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto part = run_suite(name, ctx);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        const auto failed = std::count_if(part.begin(), part.end(), [](const auto& r) { return !r.pass; });
        err << "verify: " << name << ": " << part.size() - failed << "/" << part.size() << " pass (" << ms
            << " ms)\n";
        reports.insert(reports.end(), part.begin(), part.end());
      }
      std::stable_sort(reports.begin(), reports.end(),
                       [](const auto& x, const auto& y) { return x.identity_id < y.identity_id; });
      json arr = json::array();
      for (const auto& r : reports) {
        if (!r.pass) verify_status = 1;
        arr.push_back(report_json(r, !no_timing));
      }
      return arr;
    };
  });

  std::vector<std::string> argv_store{"shiftsum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    Session ses = make_session(g, err);
    json result = action(ses);
    if (result.is_object()) result["truncation"] = policy_json(ses.policy);
    if (print_json) out << result.dump(2) << "\n";
    return verify_status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_command(args, out, err);
}

}  // namespace shiftsum
