#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lfhh/encoding.hpp"
#include "lfhh/harness.hpp"
#include "lfhh/json_io.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/parser.hpp"
#include "lfhh/printer.hpp"
#include "lfhh/prover.hpp"

namespace {

constexpr int kExitDerivable = 0;
constexpr int kExitNotDerivable = 1;
constexpr int kExitError = 2;
constexpr int kExitNonPattern = 3;
constexpr int kExitMismatches = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

lfhh::LfSignature load_signature(const std::string& path) {
  return lfhh::parse_signature(read_file(path));
}

lfhh::KernelOptions kernel_options(const std::string& conversion) {
  lfhh::KernelOptions opt;
  opt.eta_conversion = conversion != "beta";
  return opt;
}

int cmd_check(const std::string& sig_path, const std::string& judgment,
              const std::string& conversion) {
  lfhh::LfSignature sig = load_signature(sig_path);
  lfhh::KernelOptions opt = kernel_options(conversion);

  lfhh::CheckResult sig_check = lfhh::check_signature(sig, opt);
  if (!sig_check.derivable()) {
    std::cerr << "signature rejected: " << sig_check.error->render() << "\n";
    return kExitError;
  }

  auto [m, a] = lfhh::parse_judgment(judgment, sig);
  lfhh::KindOutcome kind = lfhh::check_family(sig, {}, a, opt);
  if (!kind.ok()) {
    std::cerr << "judgment type rejected: " << kind.error->render() << "\n";
    return kExitError;
  }
  if (!(*kind.kind == lfhh::LfKind::type())) {
    std::cerr << "judgment type must have kind type\n";
    return kExitError;
  }

  lfhh::CheckResult result = lfhh::check_object(sig, {}, m, a, opt);
  if (result.derivable()) {
    std::cout << "derivable (" << result.conversion << ")\n";
    return kExitDerivable;
  }
  std::cout << "not derivable (" << result.conversion << "): " << result.error->render() << "\n";
  return kExitNotDerivable;
}

int cmd_encode(const std::string& sig_path, const std::string& out_path, bool emit_reflected) {
  lfhh::LfSignature sig = load_signature(sig_path);
  std::string text;
  if (emit_reflected) {
    std::ostringstream os;
    for (const lfhh::ReflectedConstant& c : lfhh::reflect_signature(sig)) {
      os << c.name << " : " << lfhh::print_simple_type(c.type) << ".\n";
    }
    text = os.str();
  } else {
    text = lfhh::print_program(lfhh::encode_signature(sig));
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  return kExitDerivable;
}

int cmd_prove(const std::string& sig_path, const std::string& judgment, int depth,
              const std::string& trace_path) {
  lfhh::LfSignature sig = load_signature(sig_path);
  auto [m, a] = lfhh::parse_judgment(judgment, sig);
  lfhh::HHProgram program = lfhh::encode_signature(sig);

  lfhh::HHGoal goal = [&] {
    try {
      return lfhh::judgment_to_goal(sig, m, a);
    } catch (const lfhh::EncodeError& e) {
      std::cout << "not provable: encoded judgment is not simply well-formed ("
                << e.what() << ")\n";
      std::exit(kExitNotDerivable);
    }
  }();

  lfhh::SolveResult result = lfhh::solve(program, goal, depth);
  switch (result.status) {
    case lfhh::SolveResult::Status::kProved: {
      bool replay_ok = lfhh::replay_trace(program, goal, *result.trace);
      std::cout << "proved at depth " << depth << " (trace replay "
                << (replay_ok ? "ok" : "FAILED") << ")\n";
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write " + trace_path);
        nlohmann::json doc;
        doc["schema"] = 1;
        doc["goal"] = lfhh::print_goal(goal);
        doc["depth"] = depth;
        doc["trace"] = lfhh::trace_to_json(*result.trace);
        out << doc.dump(2) << "\n";
      }
      return replay_ok ? kExitDerivable : kExitError;
    }
    case lfhh::SolveResult::Status::kFailedNoProof:
      std::cout << "not provable: search space exhausted\n";
      return kExitNotDerivable;
    case lfhh::SolveResult::Status::kExhausted:
      std::cout << "not proved within depth " << depth << "\n";
      return kExitNotDerivable;
    case lfhh::SolveResult::Status::kIncomplete:
      std::cout << "incomplete: non-pattern unification problem";
      if (result.non_pattern) std::cout << " (" << result.non_pattern->note << ")";
      std::cout << "\n";
      return kExitNonPattern;
  }
  return kExitError;
}

int cmd_difftest(const std::string& sig_path, int max_size, int depth_mult, int max_index,
                 int jobs, const std::string& format) {
  lfhh::CampaignConfig config;
  config.signature = load_signature(sig_path);
  config.max_term_size = max_size;
  config.depth_multiplier = depth_mult;
  config.max_index_size = max_index;
  config.parallelism = jobs;

  lfhh::CampaignReport report = lfhh::run_campaign(config);

  if (format == "json") {
    std::cout << lfhh::report_to_json(report, config).dump(2) << "\n";
  } else {
    std::cout << "cases: " << report.total_cases << "\n";
    for (const auto& [classification, count] : report.totals) {
      std::cout << "  " << lfhh::classification_name(classification) << ": " << count << "\n";
    }
    std::cout << report.ordering_note << "\n";
    for (const lfhh::CaseVerdict& v : report.mismatches) {
      std::cout << "unsound mismatch: " << lfhh::print_object(v.term) << " : "
                << lfhh::print_family(v.type) << "\n";
      if (v.kernel_error) std::cout << "  kernel: " << v.kernel_error->render() << "\n";
      std::cout << "  prover: proved at depth bound " << v.depth_bound << " (trace replay "
                << (v.trace_valid ? "ok" : "FAILED") << ")\n";
    }
    for (const lfhh::CaseVerdict& v : report.soundness_errors) {
      std::cout << "soundness error: kernel accepts but prover gave "
                << lfhh::solve_status_name(v.prover) << ": " << lfhh::print_object(v.term)
                << " : " << lfhh::print_family(v.type) << "\n";
    }
  }
  if (!report.mismatches.empty()) return kExitMismatches;
  if (!report.soundness_errors.empty()) return kExitError;
  return kExitDerivable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LF type checking, clause encoding, and uniform proof search"};
  app.require_subcommand(1);

  std::string sig_path;
  std::string judgment;
  std::string conversion = "beta-eta";
  std::string out_path;
  std::string trace_path;
  std::string format = "text";
  bool emit_reflected = false;
  int depth = 0;
  int max_size = 0;
  int depth_mult = 4;
  int max_index = 2;
  int jobs = 1;

  CLI::App* check = app.add_subcommand("check", "decide an LF typing judgment");
  check->add_option("signature", sig_path, "signature file")->required();
  check->add_option("--judgment", judgment, "judgment `m : A`")->required();
  check->add_option("--conversion", conversion, "beta-eta (default) or beta")
      ->check(CLI::IsMember({"beta-eta", "beta"}));

  CLI::App* encode = app.add_subcommand("encode", "translate the signature into clauses");
  encode->add_option("signature", sig_path, "signature file")->required();
  encode->add_option("-o,--output", out_path, "write to a file instead of stdout");
  encode->add_flag("--emit-reflected", emit_reflected,
                   "print the reflected constants instead of the clauses");

  CLI::App* prove = app.add_subcommand("prove", "search for a proof of the encoded judgment");
  prove->add_option("signature", sig_path, "signature file")->required();
  prove->add_option("--judgment", judgment, "judgment `m : A`")->required();
  prove->add_option("--depth", depth, "backchain depth bound")->required();
  prove->add_option("--trace", trace_path, "write the proof trace as JSON");

  CLI::App* difftest = app.add_subcommand("difftest", "cross-check kernel against the prover");
  difftest->add_option("signature", sig_path, "signature file")->required();
  difftest->add_option("--max-size", max_size, "maximum term node count")->required();
  difftest->add_option("--depth-mult", depth_mult, "depth bound multiplier (default 4)");
  difftest->add_option("--max-index", max_index, "type index size bound (default 2)");
  difftest->add_option("--jobs", jobs, "worker threads (default 1)");
  difftest->add_option("--format", format, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(sig_path, judgment, conversion);
    if (encode->parsed()) return cmd_encode(sig_path, out_path, emit_reflected);
    if (prove->parsed()) return cmd_prove(sig_path, judgment, depth, trace_path);
    if (difftest->parsed())
      return cmd_difftest(sig_path, max_size, depth_mult, max_index, jobs, format);
  } catch (const lfhh::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const lfhh::SignatureRejected& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
