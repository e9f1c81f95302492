#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"

#include "ipd/scenario.h"

namespace {

int write_error_report(const std::string& out, const std::string& job, const std::string& message) {
  try {
    std::filesystem::create_directories(out);
    nlohmann::json j{{"job", job}, {"pass", false}, {"error", message}, {"checks", nlohmann::json::array()}};
    std::ofstream(std::filesystem::path(out) / "report.json") << j.dump(1) << '\n';
  } catch (...) {
  }
  std::cerr << "ipdlab: " << message << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated prisoner's dilemma laboratory"};
  app.require_subcommand(1);
  std::string scenario, out = "ipdlab_out", mode, seed_range;
  unsigned threads = 0;
  const char* jobs[][2] = {{"simulate", "match"},      {"classify", "classify"},          {"folk", "folk"},
                           {"evo", "evo"},             {"validate-path", "validate-path"}, {"sweep", "sweep"}};
  for (auto& j : jobs) {
    auto* sub = app.add_subcommand(j[0], std::string("run a ") + j[1] + " scenario");
    sub->add_option("--scenario", scenario, "scenario document")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--mode", mode, "arithmetic")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--seed-range", seed_range, "seeds a..b");
    sub->add_option("--threads", threads, "worker threads for sweeps");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  std::string sub = app.get_subcommands().front()->get_name();
  std::string job;
  for (auto& j : jobs)
    if (sub == j[0]) job = j[1];

  ipd::RunOverrides o;
  o.threads = threads;
  if (mode == "rational") o.mode = ipd::Arithmetic::rational;
  if (mode == "float") o.mode = ipd::Arithmetic::floating;
  if (!seed_range.empty()) {
    std::smatch m;
    std::regex re(R"((\d+)\.\.(\d+))");
    if (!std::regex_match(seed_range, m, re)) return write_error_report(out, job, "--seed-range: expected a..b");
    auto a = std::stoull(m[1]), b = std::stoull(m[2]);
    if (b < a) return write_error_report(out, job, "--seed-range: empty range");
    o.seed_range = {{a, b}};
  }

  try {
    auto doc = ipd::load_scenario(scenario);
    std::string declared = doc.value("job", std::string());
    if (declared != job)
      return write_error_report(out, job, "scenario declares job '" + declared + "', not '" + job + "'");
    auto r = ipd::run_scenario(doc, out, o);
    for (const auto& c : r.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << " limit=" << c.limit
                << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    std::cout << "report: " << (std::filesystem::path(out) / "report.json").string() << '\n';
    return r.pass() ? 0 : 1;
  } catch (const ipd::ScenarioError& e) {
    return write_error_report(out, job, e.what());
  } catch (const std::exception& e) {
    return write_error_report(out, job, std::string("error: ") + e.what());
  }
}
