#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rreach/config.hpp"
#include "rreach/montecarlo.hpp"
#include "rreach/propagation.hpp"
#include "rreach/transfer.hpp"

namespace rreach {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline Json fraction_json(const Rational& q) {
  return Json::array({numerator(q).str(), denominator(q).str()});
}

}  // namespace detail

// {"k":..., "r":..., "M": [[["num","den"],...],...], "N": [...]}
inline Json matrices_to_json(const TransitionPair& pair) {
  Json out;
  out["k"] = pair.k;
  out["r"] = pair.r;
  for (const char* key : {"M", "N"}) {
    const RationalMatrix& m = key[0] == 'M' ? pair.M : pair.N;
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(detail::fraction_json(m.at(i, j)));
      rows.push_back(std::move(row));
    }
    out[key] = std::move(rows);
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// columns: model,k,r,n,el_exact_num,el_exact_den,el_float
inline std::string curve_to_csv(const ExactCurve& curve) {
  std::ostringstream out;
  out << "model,k,r,n,el_exact_num,el_exact_den,el_float\n";
  for (long n = 1; n <= curve.n_max(); ++n) {
    const Rational& v = curve.at(n);
    out << chain_model_name(curve.model) << ',' << curve.k << ',' << curve.r << ',' << n << ','
        << numerator(v).str() << ',' << denominator(v).str() << ','
        << detail::format_double(to_double(v)) << '\n';
  }
  return out.str();
}

// columns: model,k,r,n,trials,sum_length,mean,stderr
inline std::string mc_to_csv(const McCurve& curve) {
  std::ostringstream out;
  out << "model,k,r,n,trials,sum_length,mean,stderr\n";
  for (long n = 1; n <= curve.config.n_max; ++n) {
    out << mc_model_name(curve.config.model) << ',' << curve.config.k << ',' << curve.config.r
        << ',' << n << ',' << curve.config.trials << ','
        << curve.sum_lengths[static_cast<std::size_t>(n - 1)] << ','
        << detail::format_double(curve.mean(n)) << ','
        << detail::format_double(curve.stderr_mean(n)) << '\n';
  }
  return out.str();
}

inline Json fit_to_json(const std::string& model, int k, int r, const FitResult& fit,
                        const std::optional<std::uint64_t>& seed = std::nullopt) {
  Json out;
  out["model"] = model;
  out["k"] = k;
  out["r"] = r;
  out["gamma_hat"] = fit.gamma_hat;
  out["a_hat"] = fit.a_hat;
  out["n_min"] = fit.n_min;
  out["n_max"] = fit.n_max;
  if (seed) out["seed"] = *seed;
  return out;
}

// Every output file is accompanied by <path>.manifest.json describing the
// command that produced it; outputs themselves contain only bytes that are
// reproducible from the manifest's parameters.
struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;

  Json to_json() const {
    Json out;
    out["command"] = command;
    out["parameters"] = parameters;
    if (seed) out["seed"] = *seed;
    out["artifact_version"] = kVersion;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    out["timestamp"] = buf;
    out["outputs"] = outputs;
    return out;
  }
};

inline void write_with_manifest(const std::string& path, const std::string& content,
                                RunManifest manifest) {
  write_text_file(path, content);
  manifest.outputs.push_back(path);
  write_text_file(path + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

}  // namespace rreach
