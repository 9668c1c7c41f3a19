// Command-line surface for the r-reach engines: exact transfer-matrix
// constants, exact finite-n propagation, seeded Monte Carlo, brute-force
// oracles, and the summary tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rreach/rreach.hpp"

namespace {

using namespace rreach;

struct WindowSpec {
  long lo = 0, hi = 0;
};

WindowSpec parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("window", "expected A:B, got '" + text + "'");
  WindowSpec w;
  try {
    w.lo = std::stol(text.substr(0, colon));
    w.hi = std::stol(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("window", "expected integers A:B, got '" + text + "'");
  }
  if (w.lo < 1 || w.lo >= w.hi)
    throw CLI::ValidationError("window", "need 1 <= A < B, got '" + text + "'");
  return w;
}

std::string stationary_to_string(const std::vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_fraction_string(v[i]);
  }
  return out + "]";
}

void print_fit(const FitResult& fit) {
  std::cout << "gamma_hat = " << to_decimal_string(Rational(fit.gamma_hat), 10)
            << "  a_hat = " << to_decimal_string(Rational(fit.a_hat), 10) << "  (window "
            << fit.n_min << ":" << fit.n_max << ")\n";
}

int run_exact_gamma(const std::string& model, int k, int r, bool augmented,
                    const std::string& json_path, unsigned threads) {
  TransitionPair pair = [&] {
    if (model == "string") {
      if (k != 2 || r != 1)
        throw std::invalid_argument("string model supports k=2, r=1 only");
      return build_string_matrices();
    }
    if (augmented) return build_augmented_matrices(k, r);
    return build_transition_matrices(k, r, threads);
  }();
  const GammaExact result = gamma_exact(pair, threads);

  std::cout << "model=" << chain_model_name(pair.model) << " k=" << k << " r=" << r << "\n";
  std::cout << "gamma = " << to_fraction_string(result.gamma) << " ≈ "
            << to_decimal_string(result.gamma, 12) << "\n";
  std::cout << "e*(1) = " << stationary_to_string(result.stationary) << "\n";
  if (model == "bernoulli")
    std::cout << "conjectured unrestricted limit 2/(1+sqrt(k)) = "
              << to_decimal_string(Rational(conjectured_unrestricted_gamma(k)), 10)
              << " (comparison only)\n";

  if (!json_path.empty()) {
    Json out = matrices_to_json(pair);
    out["gamma"] = Json::array({numerator(result.gamma).str(), denominator(result.gamma).str()});
    Json stat = Json::array();
    for (const auto& q : result.stationary)
      stat.push_back(Json::array({numerator(q).str(), denominator(q).str()}));
    out["stationary"] = std::move(stat);
    for (const char* key : {"g_lambda_at_b1", "g_b_at_lambda1"}) {
      const UniPolynomial& p =
          key[2] == 'l' ? result.char_slice_lambda : result.char_slice_b;
      Json coeffs = Json::array();
      for (const auto& c : p.coefficients())
        coeffs.push_back(Json::array({numerator(c).str(), denominator(c).str()}));
      out[key] = std::move(coeffs);
    }
    RunManifest manifest;
    manifest.command = "exact-gamma";
    manifest.parameters = {{"model", model}, {"k", k}, {"r", r}, {"augmented", augmented}};
    write_with_manifest(json_path, out.dump(2) + "\n", manifest);
  }
  return 0;
}

int run_propagate(const std::string& model, int k, int r, long n_max,
                  const std::string& window_text, const std::string& csv_path,
                  const std::string& fit_json_path, unsigned threads) {
  if (n_max < r)
    throw std::invalid_argument("n-max must be at least r (the first propagated section)");
  const ChainModel chain =
      model == "string" ? ChainModel::string_augmented : ChainModel::bernoulli;
  if (chain == ChainModel::string_augmented && (k != 2 || r != 1))
    throw std::invalid_argument("string model supports k=2, r=1 only");

  WindowSpec window{std::min<long>(50, std::max<long>(1, n_max - 2)), n_max};
  if (!window_text.empty()) window = parse_window(window_text);
  if (window.hi > n_max) throw std::invalid_argument("fit window extends past n-max");

  const ExactCurve curve = exact_curve(chain, k, r, n_max, threads);
  const FitResult fit = affine_tail_fit(curve, window.lo, window.hi);

  RunManifest manifest;
  manifest.command = "propagate";
  manifest.parameters = {{"model", model}, {"k", k},
                         {"r", r},         {"n_max", n_max},
                         {"fit_n_min", window.lo}, {"fit_n_max", window.hi}};
  if (!csv_path.empty()) write_with_manifest(csv_path, curve_to_csv(curve), manifest);
  print_fit(fit);
  if (!fit_json_path.empty())
    write_with_manifest(fit_json_path, fit_to_json(model, k, r, fit).dump(2) + "\n", manifest);
  return 0;
}

int run_mc(const std::string& model, int k, int r, long n_max, long trials, std::uint64_t seed,
           const std::string& window_text, const std::string& csv_path,
           const std::string& fit_json_path, unsigned threads) {
  McConfig config;
  config.model = model == "string" ? McModel::random_string : McModel::bernoulli;
  config.k = k;
  config.r = r;
  config.n_max = n_max;
  config.trials = trials;
  config.seed = seed;
  WindowSpec window{std::min<long>(50, std::max<long>(1, n_max - 2)), n_max};
  if (!window_text.empty()) window = parse_window(window_text);
  if (window.hi > n_max) throw std::invalid_argument("fit window extends past n-max");
  config.fit_n_min = window.lo;
  config.fit_n_max = window.hi;

  const McCurve curve = run_trials(config, threads);
  const FitResult fit = fit_extrapolation(curve, window.lo, window.hi);

  RunManifest manifest;
  manifest.command = "mc";
  manifest.parameters = {{"model", model},   {"k", k},
                         {"r", r},           {"n_max", n_max},
                         {"trials", trials}, {"fit_n_min", window.lo},
                         {"fit_n_max", window.hi}};
  manifest.seed = seed;
  if (!csv_path.empty()) write_with_manifest(csv_path, mc_to_csv(curve), manifest);
  print_fit(fit);
  if (!fit_json_path.empty())
    write_with_manifest(fit_json_path, fit_to_json(model, k, r, fit, seed).dump(2) + "\n",
                        manifest);
  return 0;
}

int run_fit(const std::string& in_path, const std::string& window_text,
            const std::string& json_path) {
  std::ifstream in(in_path);
  if (!in) throw std::invalid_argument("cannot open " + in_path);
  std::string header;
  std::getline(in, header);
  if (header != "model,k,r,n,trials,sum_length,mean,stderr")
    throw std::invalid_argument("unrecognized CSV header in " + in_path);

  std::string model;
  int k = 0, r = 0;
  std::vector<long> ns;
  std::vector<double> u;
  std::optional<std::uint64_t> seed;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw std::invalid_argument("malformed CSV row: " + line);
    model = fields[0];
    k = std::stoi(fields[1]);
    r = std::stoi(fields[2]);
    const long n = std::stol(fields[3]);
    ns.push_back(n);
    u.push_back(std::stod(fields[6]) / static_cast<double>(n));
  }

  const WindowSpec window = parse_window(window_text);
  std::vector<long> wins;
  std::vector<double> wu;
  for (std::size_t t = 0; t < ns.size(); ++t)
    if (ns[t] >= window.lo && ns[t] <= window.hi) {
      wins.push_back(ns[t]);
      wu.push_back(u[t]);
    }
  const FitResult fit = fit_affine(wins, wu);
  print_fit(fit);
  if (!json_path.empty()) {
    RunManifest manifest;
    manifest.command = "fit";
    manifest.parameters = {{"in", in_path}, {"window", window_text}};
    write_with_manifest(json_path, fit_to_json(model, k, r, fit, seed).dump(2) + "\n", manifest);
  }
  return 0;
}

int run_oracle(const std::string& mode, int k, long n, std::optional<int> r, unsigned threads) {
  if (mode == "strings") {
    const OracleResult result = string_expectation(k, n, r, threads);
    std::cout << to_fraction_string(result.expectation) << " ≈ "
              << to_decimal_string(result.expectation, 10) << "  ("
              << result.enumeration_count << " string pairs)\n";
    return 0;
  }
  if (mode == "bernoulli") {
    if (!r) throw std::invalid_argument("bernoulli oracle needs --r");
    const OracleResult result = bernoulli_expectation(k, n, *r, threads);
    std::cout << to_fraction_string(result.expectation) << " ≈ "
              << to_decimal_string(result.expectation, 10) << "  ("
              << result.enumeration_count << " banded configurations)\n";
    if (*r <= max_reach()) {
      const ExactCurve curve = exact_curve(ChainModel::bernoulli, k, *r, n, threads);
      if (curve.at(n) != result.expectation)
        throw InternalCheckError("exact propagation disagrees with the enumeration oracle");
      std::cout << "matches exact propagation at n=" << n << "\n";
    }
    return 0;
  }
  if (mode == "realizability") {
    const CensusSummary census = realizability_census(n, threads);
    if (!census.consistent) throw InternalCheckError("realizability census inconsistent");
    std::cout << "all configurations have weight 0 or 2: OK (" << census.weight2
              << " of weight 2, " << census.weight0 << " of weight 0)\n";
    return 0;
  }
  throw std::invalid_argument("unknown oracle mode: " + mode);
}

int run_table(const std::string& which, const std::vector<int>& rs, long trials, long n_max_mc,
              long n_max_exact, std::uint64_t seed, const std::string& csv_path,
              unsigned threads) {
  std::ostringstream csv;
  if (which == "gamma-exact") {
    csv << "model,k,r,gamma_fraction,gamma_decimal\n";
    for (int r = 1; r <= 3; ++r) {
      const GammaExact g = gamma_exact(build_transition_matrices(2, r, threads), threads);
      csv << "bernoulli,2," << r << ',' << to_fraction_string(g.gamma) << ','
          << to_decimal_string(g.gamma, 10) << '\n';
    }
    const GammaExact gs = gamma_string_exact();
    csv << "string,2,1," << to_fraction_string(gs.gamma) << ','
        << to_decimal_string(gs.gamma, 10) << '\n';
  } else if (which == "mc-summary") {
    csv << "model,k,r,trials,seed,gamma_hat,a_hat\n";
    for (const char* model : {"bernoulli", "string"}) {
      for (int r : rs) {
        McConfig config;
        config.model =
            std::string(model) == "bernoulli" ? McModel::bernoulli : McModel::random_string;
        config.k = 2;
        config.r = r;
        config.n_max = n_max_mc;
        config.trials = trials;
        config.seed = seed;
        const McCurve curve = run_trials(config, threads);
        const FitResult fit =
            fit_extrapolation(curve, std::min<long>(50, n_max_mc - 2), n_max_mc);
        csv << model << ",2," << r << ',' << trials << ',' << seed << ','
            << to_decimal_string(Rational(fit.gamma_hat), 10) << ','
            << to_decimal_string(Rational(fit.a_hat), 10) << '\n';
      }
    }
  } else if (which == "comparison") {
    csv << "r,mc_gamma,propagated_gamma,exact_fraction_gamma,s_statistic\n";
    for (int r : rs) {
      McConfig config;
      config.model = McModel::bernoulli;
      config.k = 2;
      config.r = r;
      config.n_max = n_max_mc;
      config.trials = trials;
      config.seed = seed;
      const McCurve mc = run_trials(config, threads);
      const FitResult mc_fit =
          fit_extrapolation(mc, std::min<long>(50, n_max_mc - 2), n_max_mc);
      const ExactCurve curve =
          exact_curve(ChainModel::bernoulli, 2, r, std::max(n_max_exact, n_max_mc), threads);
      const FitResult exact_fit =
          affine_tail_fit(curve, std::min<long>(50, n_max_exact - 2), n_max_exact);
      std::string fraction = "-";
      if (r <= 3) {
        const GammaExact g = gamma_exact(build_transition_matrices(2, r, threads), threads);
        fraction = to_fraction_string(g.gamma);
      }
      csv << r << ',' << to_decimal_string(Rational(mc_fit.gamma_hat), 10) << ','
          << to_decimal_string(Rational(exact_fit.gamma_hat), 10) << ',' << fraction << ','
          << detail::format_double(s_statistic(mc, curve)) << '\n';
    }
  } else {
    throw std::invalid_argument("unknown table: " + which);
  }

  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    RunManifest manifest;
    manifest.command = "table";
    manifest.parameters = {{"which", which},       {"trials", trials},
                           {"n_max_mc", n_max_mc}, {"n_max_exact", n_max_exact},
                           {"rs", rs}};
    manifest.seed = seed;
    write_with_manifest(csv_path, csv.str(), manifest);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-reach longest-common-subsequence constants: exact transfer-matrix "
               "computation, exact propagation, Monte Carlo, and brute-force oracles"};
  app.require_subcommand(1);
  app.footer("Resource caps (env overrides): RREACH_MAX_R (default 6) bounds the reach of\n"
             "transition-matrix construction; RREACH_MAX_ENUM (default 1e8) bounds k^(2n) in\n"
             "the all-string-pairs oracle; RREACH_MAX_BAND_CELLS (default 25) bounds the\n"
             "banded epsilon enumeration. Exit codes: 0 ok, 2 usage, 3 resource cap,\n"
             "4 internal cross-check failure.");

  std::string model = "bernoulli", window, csv_path, json_path, fit_json_path, in_path, which;
  std::string mode;
  int k = 2, r = 1;
  long n = 1, n_max = 1000, trials = 10000, n_max_exact = 2000;
  std::uint64_t seed = 12345;
  bool augmented = false;
  unsigned threads = default_thread_count();
  std::vector<int> rs;
  bool r_given = false;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads (default: hardware concurrency)");
  };

  auto* eg = app.add_subcommand("exact-gamma", "exact gamma and e*(1) from transfer matrices");
  eg->add_option("--model", model, "bernoulli or string")
      ->check(CLI::IsMember({"bernoulli", "string"}));
  eg->add_option("--k", k, "alphabet size");
  eg->add_option("--r", r, "reach");
  eg->add_flag("--augmented", augmented, "use the 8x8 on/off-augmented Bernoulli chain");
  eg->add_option("--json", json_path, "dump matrices, gamma, e*(1) and slices as JSON");
  add_threads(eg);

  auto* pr = app.add_subcommand("propagate", "exact EL_n curve and affine tail fit");
  pr->add_option("--model", model, "bernoulli or string")
      ->check(CLI::IsMember({"bernoulli", "string"}));
  pr->add_option("--k", k, "alphabet size");
  pr->add_option("--r", r, "reach");
  pr->add_option("--n-max", n_max, "largest n")->required();
  pr->add_option("--fit-window", window, "fit window A:B (default 50:n-max)");
  pr->add_option("--csv", csv_path, "curve CSV output path");
  pr->add_option("--fit-json", fit_json_path, "fit JSON output path");
  add_threads(pr);

  auto* mc = app.add_subcommand("mc", "seeded Monte Carlo curve and extrapolation");
  mc->add_option("--model", model, "bernoulli or string")
      ->check(CLI::IsMember({"bernoulli", "string"}));
  mc->add_option("--k", k, "alphabet size");
  mc->add_option("--r", r, "reach");
  mc->add_option("--n-max", n_max, "largest n");
  mc->add_option("--trials", trials, "number of trials");
  mc->add_option("--seed", seed, "64-bit stream seed");
  mc->add_option("--fit-window", window, "fit window A:B (default 50:n-max)");
  mc->add_option("--csv", csv_path, "curve CSV output path");
  mc->add_option("--fit-json", fit_json_path, "fit JSON output path");
  add_threads(mc);

  auto* ft = app.add_subcommand("fit", "refit a Monte Carlo CSV over a window");
  ft->add_option("--in", in_path, "mc CSV input")->required();
  ft->add_option("--window", window, "fit window A:B")->required();
  ft->add_option("--json", json_path, "fit JSON output path");

  auto* orc = app.add_subcommand("oracle", "brute-force enumeration ground truth");
  orc->add_option("--mode", mode, "strings, bernoulli, or realizability")
      ->required()
      ->check(CLI::IsMember({"strings", "bernoulli", "realizability"}));
  orc->add_option("--k", k, "alphabet size");
  orc->add_option("--n", n, "lattice side")->required();
  orc->add_option("--r", r, "reach (omit for unrestricted strings mode)")
      ->each([&](const std::string&) { r_given = true; });
  add_threads(orc);

  auto* tb = app.add_subcommand("table", "summary tables (k=2)");
  tb->add_option("--which", which, "gamma-exact, mc-summary, or comparison")
      ->required()
      ->check(CLI::IsMember({"gamma-exact", "mc-summary", "comparison"}));
  tb->add_option("--rs", rs, "reach values for the MC-backed tables");
  tb->add_option("--trials", trials, "Monte Carlo trials per configuration");
  tb->add_option("--n-max-mc", n_max, "Monte Carlo n-max");
  tb->add_option("--n-max-exact", n_max_exact, "exact-propagation n-max");
  tb->add_option("--seed", seed, "Monte Carlo seed");
  tb->add_option("--csv", csv_path, "CSV output path (default: stdout)");
  add_threads(tb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (eg->parsed()) return run_exact_gamma(model, k, r, augmented, json_path, threads);
    if (pr->parsed())
      return run_propagate(model, k, r, n_max, window, csv_path, fit_json_path, threads);
    if (mc->parsed())
      return run_mc(model, k, r, n_max, trials, seed, window, csv_path, fit_json_path, threads);
    if (ft->parsed()) return run_fit(in_path, window, json_path);
    if (orc->parsed())
      return run_oracle(mode, k, n, r_given ? std::optional<int>(r) : std::nullopt, threads);
    if (tb->parsed()) {
      if (rs.empty()) rs = which == "comparison" ? std::vector<int>{1, 2, 3, 4}
                                                 : std::vector<int>{1, 2, 3, 4, 5, 10};
      return run_table(which, rs, trials, n_max, n_max_exact, seed, csv_path, threads);
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const InternalCheckError& e) {
    std::cerr << "internal cross-check failed: " << e.what() << "\n";
    return 4;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
