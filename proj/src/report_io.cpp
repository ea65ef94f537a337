#include "qree/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qree {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw std::runtime_error(origin + ": " + message);
}

Complex read_complex(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(origin, field + ": expected a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<int> read_dims(const json& j, const std::string& origin) {
  if (!j.contains("dims")) fail(origin, "missing field \"dims\"");
  const json& dims = j["dims"];
  if (!dims.is_array() || dims.empty()) fail(origin, "dims: expected a nonempty array");
  std::vector<int> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].is_number_integer() || dims[i].get<int>() < 2) {
      fail(origin, "dims[" + std::to_string(i) + "]: expected an integer >= 2");
    }
    out.push_back(dims[i].get<int>());
  }
  return out;
}

ordered_json complex_json(const Complex& z) {
  return ordered_json::array({round_sig(z.real()), round_sig(z.imag())});
}

ordered_json number_or_inf(double v) {
  if (!std::isfinite(v)) return ordered_json("inf");
  return ordered_json(round_sig(v));
}

ordered_json bits_json(const Bits& b) {
  return b.is_finite() ? ordered_json(round_sig(b.value())) : ordered_json("inf");
}

std::string csv_bits(const Bits& b) { return b.is_finite() ? format_sig(b.value()) : "inf"; }

ordered_json ensemble_json(const SeparableEnsemble& ensemble) {
  ordered_json out;
  out["dims"] = ensemble.structure().dims();
  ordered_json terms = ordered_json::array();
  for (const ProductTerm& term : ensemble.terms()) {
    ordered_json t;
    t["weight"] = round_sig(term.weight);
    ordered_json factors = ordered_json::array();
    for (const Vector& f : term.factors) {
      ordered_json factor = ordered_json::array();
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        factor.push_back(complex_json(f(i)));
      }
      factors.push_back(std::move(factor));
    }
    t["factors"] = std::move(factors);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

ordered_json bounds_fields(const BoundsReport& r) {
  ordered_json row;
  row["state_label"] = r.state_label;
  row["e3_estimate"] = bits_json(r.e3_estimate);
  row["gap_estimate"] = round_sig(r.gap_estimate);
  row["lower_thm1"] = bits_json(r.lower_thm1);
  row["lower_witness"] = r.lower_witness;
  row["upper_thm1"] = bits_json(r.upper_thm1);
  row["upper_witness"] = r.upper_witness;
  row["corollary_lower"] = bits_json(r.corollary_lower);
  row["corollary_upper"] = bits_json(r.corollary_upper);
  row["conjecture_half_sum"] = bits_json(r.conjecture_half_sum);
  row["slack_lower"] = round_sig(r.slack_lower);
  row["slack_upper"] = round_sig(r.slack_upper);
  row["saturated_lower"] = r.saturated_lower;
  row["saturated_upper"] = r.saturated_upper;
  return row;
}

constexpr const char* kBoundsCsvHeader =
    "state_label,e3_estimate,gap_estimate,lower_thm1,lower_witness,upper_thm1,"
    "upper_witness,corollary_lower,corollary_upper,conjecture_half_sum,"
    "slack_lower,slack_upper,saturated_lower,saturated_upper";

std::string bounds_csv_row(const BoundsReport& r) {
  std::ostringstream out;
  out << r.state_label << ',' << csv_bits(r.e3_estimate) << ',' << format_sig(r.gap_estimate)
      << ',' << csv_bits(r.lower_thm1) << ',' << r.lower_witness << ','
      << csv_bits(r.upper_thm1) << ',' << r.upper_witness << ',' << csv_bits(r.corollary_lower)
      << ',' << csv_bits(r.corollary_upper) << ',' << csv_bits(r.conjecture_half_sum) << ','
      << format_sig(r.slack_lower) << ',' << format_sig(r.slack_upper) << ','
      << (r.saturated_lower ? "true" : "false") << ','
      << (r.saturated_upper ? "true" : "false");
  return out.str();
}

}  // namespace

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

LoadedState load_state_json(const json& j, const std::string& origin) {
  if (!j.is_object()) fail(origin, "expected a JSON object");
  const PartyStructure structure(read_dims(j, origin));
  const int d = structure.total_dim();

  const bool has_amplitudes = j.contains("amplitudes");
  const bool has_density = j.contains("density");
  if (has_amplitudes == has_density) {
    fail(origin, "expected exactly one of \"amplitudes\" or \"density\"");
  }

  try {
    if (has_amplitudes) {
      const json& amps = j["amplitudes"];
      if (!amps.is_array() || static_cast<int>(amps.size()) != d) {
        fail(origin, "amplitudes: expected an array of length " + std::to_string(d));
      }
      Vector v(d);
      for (int i = 0; i < d; ++i) {
        v(i) = read_complex(amps[i], origin, "amplitudes[" + std::to_string(i) + "]");
      }
      PureState pure(structure, std::move(v));
      return LoadedState{from_pure(pure), std::move(pure)};
    }

    const json& rows = j["density"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
      fail(origin, "density: expected " + std::to_string(d) + " rows");
    }
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != d) {
        fail(origin, "density[" + std::to_string(r) + "]: expected " + std::to_string(d) +
                         " entries");
      }
      for (int c = 0; c < d; ++c) {
        m(r, c) = read_complex(row[c], origin,
                               "density[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      }
    }
    return LoadedState{QuantumState(structure, std::move(m)), std::nullopt};
  } catch (const std::invalid_argument& e) {
    // State invariant violations become field-precise input errors.
    fail(origin, e.what());
  }
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return load_state_json(j, path);
}

ordered_json to_json(const ReeResult& result) {
  ordered_json out;
  out["value"] = bits_json(result.value);
  out["gap_estimate"] = round_sig(result.gap_estimate);
  out["iterations_used"] = result.iterations_used;
  out["restarts_agreeing"] = result.restarts_agreeing;
  out["closest"] = ensemble_json(result.closest);
  return out;
}

std::string to_csv(const ReeResult& result) {
  std::ostringstream out;
  out << "value,gap_estimate,iterations_used,restarts_agreeing\n";
  out << csv_bits(result.value) << ',' << format_sig(result.gap_estimate) << ','
      << result.iterations_used << ',' << result.restarts_agreeing << '\n';
  return out.str();
}

ordered_json to_json(const BoundsReport& report) { return bounds_fields(report); }

std::string to_csv(const BoundsReport& report) {
  std::ostringstream out;
  out << kBoundsCsvHeader << '\n' << bounds_csv_row(report) << '\n';
  return out.str();
}

ordered_json to_json(const MregsDecomposition& d) {
  ordered_json out;
  out["g"] = round_sig(d.g);
  out["s_ab"] = round_sig(d.s_ab);
  out["s_ac"] = round_sig(d.s_ac);
  out["s_bc"] = round_sig(d.s_bc);
  out["residual"] = round_sig(d.residual);
  out["predicted_e3"] = bits_json(d.predicted_e3);
  out["approximation"] = d.approximation;
  return out;
}

std::string to_csv(const MregsDecomposition& d) {
  std::ostringstream out;
  out << "g,s_ab,s_ac,s_bc,residual,predicted_e3,approximation\n";
  out << format_sig(d.g) << ',' << format_sig(d.s_ab) << ',' << format_sig(d.s_ac) << ','
      << format_sig(d.s_bc) << ',' << format_sig(d.residual) << ','
      << csv_bits(d.predicted_e3) << ',' << d.approximation << '\n';
  return out.str();
}

ordered_json to_json(const ScanResult& scan) {
  ordered_json out;
  out["samples"] = scan.summary.samples;
  ordered_json rows = ordered_json::array();
  for (const ScanRow& row : scan.rows) {
    ordered_json r;
    r["sample"] = row.sample;
    r["state_seed"] = row.state_seed;
    ordered_json fields = bounds_fields(row.report);
    for (auto& [key, value] : fields.items()) {
      r[key] = value;
    }
    r["conjecture_candidate"] = row.conjecture_candidate;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  ordered_json summary;
  summary["min_slack_lower"] = number_or_inf(scan.summary.min_slack_lower);
  summary["min_slack_upper"] = number_or_inf(scan.summary.min_slack_upper);
  summary["sandwich_violations"] = scan.summary.sandwich_violations;
  summary["conjecture_candidates"] = scan.summary.conjecture_candidates;
  out["summary"] = std::move(summary);
  return out;
}

std::string to_csv(const ScanResult& scan) {
  std::ostringstream out;
  out << "sample,state_seed," << kBoundsCsvHeader << ",conjecture_candidate\n";
  for (const ScanRow& row : scan.rows) {
    out << row.sample << ',' << row.state_seed << ',' << bounds_csv_row(row.report) << ','
        << (row.conjecture_candidate ? "true" : "false") << '\n';
  }
  out << "# min_slack_lower=" << format_sig(scan.summary.min_slack_lower)
      << " min_slack_upper=" << format_sig(scan.summary.min_slack_upper)
      << " sandwich_violations=" << scan.summary.sandwich_violations
      << " conjecture_candidates=" << scan.summary.conjecture_candidates.size() << '\n';
  return out.str();
}

ordered_json to_json(const VerifySummary& verify) {
  ordered_json out;
  out["samples"] = verify.samples;
  out["min_bi"] = number_or_inf(verify.min_bi);
  out["min_tri"] = number_or_inf(verify.min_tri);
  out["violations_bi"] = verify.violations_bi;
  out["violations_tri"] = verify.violations_tri;
  return out;
}

std::string to_csv(const VerifySummary& verify) {
  std::ostringstream out;
  out << "samples,min_bi,min_tri,violations_bi,violations_tri\n";
  out << verify.samples << ',' << format_sig(verify.min_bi) << ',' << format_sig(verify.min_tri)
      << ',' << verify.violations_bi << ',' << verify.violations_tri << '\n';
  return out.str();
}

}  // namespace qree
