#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hspec/harness.hpp"

namespace hspec {

inline const char* csv_header() {
  return "experiment,d,p,q,a,b,r,s,sweep_key,sweep_value,probe,input_norm,output_norm,ratio,"
         "normalized_ratio,seed";
}

namespace detail {
// 17 significant digits, '.' decimal, C locale; round-trips doubles exactly.
inline std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

inline std::string csv_row(const ReportRow& r) {
  std::string s;
  s += r.experiment;
  s += ',';
  s += std::to_string(r.d);
  for (double v : {r.p, r.q, r.a, r.b, r.r, r.s}) {
    s += ',';
    s += detail::num17(v);
  }
  s += ',';
  s += r.sweep_key;
  s += ',';
  s += detail::num17(r.sweep_value);
  s += ',';
  s += r.probe;
  for (double v : {r.input_norm, r.output_norm, r.ratio, r.normalized_ratio}) {
    s += ',';
    s += detail::num17(v);
  }
  s += ',';
  s += std::to_string(r.seed);
  return s;
}

inline std::string csv_text(const SweepResult& res) {
  std::string out = csv_header();
  out += '\n';
  for (const ReportRow& r : res.rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

// Machine-readable key = value block for CI gating.
inline std::string summary_text(const SweepResult& res) {
  std::string out = "experiment = " + res.experiment + "\n";
  for (const auto& [k, v] : res.summary) out += k + " = " + detail::num17(v) + "\n";
  for (const std::string& n : res.notes) out += "note = " + n + "\n";
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw error("cannot open for writing: " + path);
  f << text;
}

}  // namespace hspec
