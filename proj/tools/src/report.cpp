#include "report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace greenball_cli {

namespace {
std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

double rel_of(double abs_err, double reference) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? abs_err / scale : abs_err;
}
}  // namespace

void VerificationReport::add(ReportRow row) { rows.push_back(std::move(row)); }

void VerificationReport::add_abs(const std::string& input, double computed,
                                 double reference, double tol) {
  ReportRow r;
  r.input = input;
  r.computed = computed;
  r.reference = reference;
  r.abs_err = std::abs(computed - reference);
  r.rel_err = rel_of(r.abs_err, reference);
  r.tol = tol;
  r.pass = r.abs_err <= tol;
  rows.push_back(std::move(r));
}

void VerificationReport::add_rel(const std::string& input, double computed,
                                 double reference, double tol) {
  ReportRow r;
  r.input = input;
  r.computed = computed;
  r.reference = reference;
  r.abs_err = std::abs(computed - reference);
  r.rel_err = rel_of(r.abs_err, reference);
  r.tol = tol;
  r.pass = r.rel_err <= tol;
  rows.push_back(std::move(r));
}

void VerificationReport::add_upper(const std::string& input, double computed,
                                   double reference) {
  ReportRow r;
  r.input = input;
  r.computed = computed;
  r.reference = reference;
  r.abs_err = std::fmax(0.0, computed - reference);
  r.rel_err = rel_of(r.abs_err, reference);
  r.tol = 0.0;
  r.pass = computed <= reference;
  rows.push_back(std::move(r));
}

void VerificationReport::add_lower(const std::string& input, double computed,
                                   double reference) {
  ReportRow r;
  r.input = input;
  r.computed = computed;
  r.reference = reference;
  r.abs_err = std::fmax(0.0, reference - computed);
  r.rel_err = rel_of(r.abs_err, reference);
  r.tol = 0.0;
  r.pass = computed >= reference;
  rows.push_back(std::move(r));
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "input,computed,reference,abs_err,rel_err,tol,pass\n";
  for (const ReportRow& r : report.rows) {
    out += r.input;
    out += ',';
    out += num17(r.computed);
    out += ',';
    out += num17(r.reference);
    out += ',';
    out += num17(r.abs_err);
    out += ',';
    out += num17(r.rel_err);
    out += ',';
    out += num17(r.tol);
    out += ',';
    out += r.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : report.parameters) j["parameters"][k] = v;
  j["rows"] = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::json row;
    row["input"] = r.input;
    row["computed"] = r.computed;
    row["reference"] = r.reference;
    row["abs_err"] = r.abs_err;
    row["rel_err"] = r.rel_err;
    row["tol"] = r.tol;
    row["pass"] = r.pass;
    j["rows"].push_back(std::move(row));
  }
  j["pass"] = report.pass;
  j["runtime_ms"] = report.runtime_ms;
  return j.dump(2) + "\n";
}

}  // namespace greenball_cli
