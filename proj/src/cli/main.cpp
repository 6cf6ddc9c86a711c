#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwalog/eval.hpp"
#include "iwalog/suites.hpp"

namespace {

using iwalog::Error;
using iwalog::ErrorCode;
using iwalog::io::json;

struct Globals {
  std::int64_t l = 3;
  int prec = 6;
  int trunc = 40;
  std::string group;
  std::uint64_t seed = 20240601;
  int samples = 100;
  bool json_out = false;
  bool pretty = false;
};

std::vector<std::int64_t> parse_group(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad --group entry '" + part + "'");
    }
  }
  return out;
}

void emit(const json& j, const Globals& g) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << '\n'; }

int fail(ErrorCode code, const std::string& detail, const Globals& g) {
  emit({{"error", iwalog::error_code_name(code)}, {"detail", detail}}, g);
  return iwalog::io::exit_code_for(code);
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"Integral logarithm over Iwasawa algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--l", g.l, "odd prime l");
  app.add_option("--prec-l", g.prec, "l-adic precision N");
  app.add_option("--trunc-T", g.trunc, "T-adic truncation M");
  app.add_option("--group", g.group, "invariant factors, e.g. 3,3");
  app.add_option("--seed", g.seed, "random seed for verify");
  app.add_option("--samples", g.samples, "samples per check");
  app.add_flag("--json", g.json_out, "machine-readable verify output");
  app.add_flag("--pretty", g.pretty, "indent JSON output");

  iwalog::io::EvalOptions eo;
  std::string op;
  std::vector<std::string> operands;
  auto* eval = app.add_subcommand("eval", "evaluate one operation");
  eval->add_option("op", op, "operation name")->required();
  eval->add_option("operands", operands, "JSON operands, inline or @file");
  eval->add_option("--k", eo.k, "binomial index");
  eval->add_option("--h0", eo.h0, "exp-h0 element, e.g. (1,0)");
  eval->add_flag("--determined", eo.determined, "leave undetermined digits unknown");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a randomized identity suite");
  verify->add_option("suite", suite, "suite name")->required();

  auto* selftest = app.add_subcommand("selftest", "check fixed worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorCode::ParseError, e.what(), g);
  }

  try {
    // A group fixes l unless --l says otherwise.
    if (!g.group.empty() && app.count("--l") == 0) g.l = iwalog::io::group_from_orders(parse_group(g.group)).l();
    if (eval->parsed()) {
      eo.defaults = {g.l, g.prec, g.trunc, parse_group(g.group)};
      std::vector<json> xs;
      for (const auto& s : operands) xs.push_back(iwalog::io::read_operand(s));
      emit(iwalog::io::evaluate(op, xs, eo), g);
      return 0;
    }
    iwalog::verify::SuiteReport report;
    if (verify->parsed()) {
      iwalog::verify::JobConfig cfg{g.l, g.prec, g.trunc, parse_group(g.group), g.seed, g.samples};
      report = iwalog::verify::run_suite(suite, cfg);
    } else if (selftest->parsed()) {
      report = iwalog::verify::run_selftest();
    }
    if (g.json_out || g.pretty)
      emit(iwalog::verify::to_json(report), g);
    else
      std::cout << iwalog::verify::to_text(report);
    return report.ok() ? 0 : 1;
  } catch (const Error& e) {
    return fail(e.code(), e.detail(), g);
  } catch (const json::exception& e) {
    return fail(ErrorCode::ParseError, e.what(), g);
  }
}
