#include "frozen_constants.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "io_util.hpp"
#include "logsplit.hpp"
#include "nonlinearity.hpp"
#include "rng.hpp"

#ifndef NLSLAB_CONSTANTS_FILE
#define NLSLAB_CONSTANTS_FILE "data/frozen_constants.txt"
#endif

namespace nlslab {

FrozenConstants parse_constants_text(const std::string& text) {
  FrozenConstants c;
  bool seen_lip = false, seen_a = false, seen_b = false, seen_h = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    double val = std::stod(line.substr(eq + 1));
    if (key == "lip24_c") c.lip24_c = val, seen_lip = true;
    else if (key == "log35a_c") c.log35a_c = val, seen_a = true;
    else if (key == "log35b_c") c.log35b_c = val, seen_b = true;
    else if (key == "holder_damp_c") c.holder_damp_c = val, seen_h = true;
  }
  if (!(seen_lip && seen_a && seen_b && seen_h))
    throw std::runtime_error("frozen constants file is missing a required key");
  return c;
}

const FrozenConstants& frozen_constants() {
  static FrozenConstants c = [] {
    const char* env = std::getenv("NLSLAB_CONSTANTS_FILE");
    std::string path = env && *env ? env : NLSLAB_CONSTANTS_FILE;
    return parse_constants_text(read_file(path));
  }();
  return c;
}

FrozenConstants estimate_constants(std::uint64_t seed, std::uint64_t samples) {
  Rng rng(seed);
  FrozenConstants est{};

  auto sample_pair = [&](double lo, double hi) {
    cplx u = rng.log_uniform_complex(lo, hi);
    cplx v = rng.log_uniform_complex(lo, hi);
    return std::pair<cplx, cplx>(u, v);
  };

  // (2.4): truncated cubic; the constant must work across truncation levels.
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto [u, v] = sample_pair(1e-6, 1e3);
    double m = std::floor(rng.log_uniform(1.0, 32768.0));
    auto fam = NonlinearityFamily::power(1.0, 2.0);
    double duv = std::abs(u - v);
    if (duv == 0.0) continue;
    double lhs = std::abs(eval_g_trunc(fam, m, u) - eval_g_trunc(fam, m, v));
    double denom = (1.0 + std::norm(u) + std::norm(v)) * duv;
    est.lip24_c = std::max(est.lip24_c, lhs / denom);
  }

  // Lemma 3.5, one constant across n
  for (int e = 5; e <= 15; ++e) {
    double n = std::ldexp(1.0, e);
    for (std::uint64_t i = 0; i < samples / 10; ++i) {
      auto [u, v] = sample_pair(1e-9, 1e3);
      double duv2 = std::norm(u - v);
      if (duv2 == 0.0) continue;
      LogPair pu = eval_log_pair(n, u);
      LogPair pv = eval_log_pair(n, v);
      double la = std::abs(std::imag((pu.a - pv.a) * std::conj(u - v)));
      double lb = std::abs(std::imag((pu.b - pv.b) * std::conj(u - v)));
      est.log35a_c = std::max(est.log35a_c, la / duv2);
      est.log35b_c = std::max(est.log35b_c, lb / duv2);
    }
  }

  // Hoelder-type damping inequality; one constant over the alpha range
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto [u, v] = sample_pair(1e-9, 1e3);
    double alpha = rng.uniform(0.05, 0.95);
    double duv = std::abs(u - v);
    if (duv == 0.0) continue;
    auto fam = NonlinearityFamily::damping(alpha);
    double lhs = std::abs(eval_g(fam, u) - eval_g(fam, v));
    est.holder_damp_c = std::max(est.holder_damp_c, lhs / std::pow(duv, 1.0 - alpha));
  }

  return est;
}

}  // namespace nlslab
