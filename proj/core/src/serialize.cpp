#include "heavytail/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace heavytail::serialize {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json params_object(const FamilySpec& spec) {
  nlohmann::json p = nlohmann::json::object();
  switch (spec.family) {
    case Family::MittagLeffler:
    case Family::TwoSidedML:
    case Family::PositiveStable:
    case Family::HDelta:
      p["delta"] = spec.delta();
      break;
    case Family::Linnik:
    case Family::OneSidedLinnik:
    case Family::SymmetricStable:
    case Family::StableRatio:
      p["alpha"] = spec.alpha();
      break;
    case Family::Weibull:
      p["gamma"] = spec.gamma();
      break;
    case Family::KozubowskiK:
      p["rho"] = spec.rho();
      break;
    case Family::RatioQ:
      p["alpha"] = spec.alpha();
      p["alpha_prime"] = spec.alpha_prime();
      break;
    case Family::Geometric:
      p["p"] = spec.p();
      break;
    case Family::Exponential:
    case Family::Rayleigh:
    case Family::Laplace:
    case Family::Normal:
    case Family::HalfNormal:
      break;
  }
  return p;
}

}  // namespace

std::string to_csv(const samplers::SampleBatch& batch) {
  std::string out;
  out.reserve(32 * batch.values.size() + 256);
  out += "# family=" + family_name(batch.target.family) + "\n";
  out += "# params=" + batch.target.to_string() + "\n";
  out += "# recipe=" + batch.recipe_id + "\n";
  out += "# seed=" + std::to_string(batch.seed) + "\n";
  out += "# stream=" + std::to_string(batch.stream) + "\n";
  out += "# n=" + std::to_string(batch.values.size()) + "\n";
  out += "value\n";
  for (double v : batch.values) {
    out += fmt17(v);
    out += '\n';
  }
  return out;
}

std::string to_json(const samplers::SampleBatch& batch, bool include_values) {
  nlohmann::json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "samples";
  doc["family"] = family_name(batch.target.family);
  doc["params"] = params_object(batch.target);
  doc["recipe"] = batch.recipe_id;
  doc["seed"] = batch.seed;
  doc["stream"] = batch.stream;
  doc["n"] = batch.values.size();
  if (include_values) {
    doc["values"] = batch.values;
  } else {
    double mean = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : batch.values) {
      mean += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double n = static_cast<double>(batch.values.size());
    mean = batch.values.empty() ? 0.0 : mean / n;
    double ss = 0.0;
    for (double v : batch.values) ss += (v - mean) * (v - mean);
    const double sd = batch.values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    doc["summary"] = {{"count", batch.values.size()},
                      {"mean", mean},
                      {"stdev", sd},
                      {"min", batch.values.empty() ? 0.0 : lo},
                      {"max", batch.values.empty() ? 0.0 : hi}};
  }
  return doc.dump(2);
}

std::string params_json(const FamilySpec& spec) {
  return params_object(spec).dump();
}

}  // namespace heavytail::serialize
