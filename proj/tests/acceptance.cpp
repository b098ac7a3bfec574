// Acceptance runner: one PASS/FAIL line per criterion. Exits 0 once every
// criterion has been evaluated; the verdicts themselves are in the output.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "anisolag/verify_suite.hpp"

namespace {

struct Limit {
  int id;
  double seconds;
};

// Runtime ceilings in seconds; zero means no ceiling.
constexpr std::array<Limit, 8> kLimits{{{1, 5.0}, {2, 30.0}, {3, 60.0}, {4, 0.0}, {5, 0.0}, {6, 10.0}, {7, 0.0}, {8, 0.0}}};

constexpr std::size_t kMaxDetail = 600;

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) c.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

void line(int id, bool pass, const std::string& title, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  " << detail << std::endl;
}

}  // namespace

int main() {
  const anisolag::SuiteOptions options;
  using Fn = anisolag::CriterionResult (*)(const anisolag::SuiteOptions&);
  const std::array<Fn, 8> criteria{anisolag::verify_worked_example,  anisolag::verify_penrose_corpus,
                                   anisolag::verify_representation_identity, anisolag::verify_lift_preservation,
                                   anisolag::verify_zigzag,          anisolag::verify_energy,
                                   anisolag::verify_affine_gap,      anisolag::verify_cc_distance};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    anisolag::CriterionResult r = criteria[k](options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = kLimits[k].seconds;
    const bool in_time = limit <= 0.0 || seconds < limit;
    std::ostringstream detail;
    detail << "time=" << seconds << "s";
    if (limit > 0.0) detail << " (limit " << limit << "s)";
    const bool pass = r.pass && in_time;
    std::string body = r.details.dump();
    if (pass && body.size() > kMaxDetail) body = body.substr(0, kMaxDetail) + "...";
    detail << " details=" << body;
    failed += pass ? 0 : 1;
    line(r.id, pass, r.title, detail.str());
  }

  // Two identical invocations of the command-line tool must agree byte for byte
  // and report success.
  const std::string command = std::string("\"") + ANISOLAG_CLI_PATH + "\" verify-suite --seed 0 2>/dev/null";
  const Captured first = capture(command);
  const Captured second = capture(command);
  const bool identical = !first.out.empty() && first.out == second.out;
  const bool exit_ok = first.status == 0 && second.status == 0;
  std::ostringstream detail;
  detail << "identical_output=" << (identical ? "true" : "false") << " bytes=" << first.out.size()
         << " exit_codes=" << first.status << "," << second.status;
  line(9, identical && exit_ok, "deterministic verify-suite with exit 0", detail.str());
  failed += identical && exit_ok ? 0 : 1;

  std::cout << "acceptance: " << (9 - failed) << "/9 criteria pass" << std::endl;
  return 0;
}
