// polyforge: reproduces the four {4,8} polytope families from their
// finite presentations and certifies every claimed property on the way.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyforge/action.hpp"
#include "polyforge/coordinate_map.hpp"
#include "polyforge/pipeline.hpp"
#include "polyforge/presets.hpp"

using namespace polyforge;

namespace {

constexpr int kOk = 0;
constexpr int kClaim = 1;
constexpr int kResource = 2;
constexpr int kInput = 3;

struct CliError {
  int code;
  std::string message;
};

std::uint64_t default_limit() {
  const char* env = std::getenv("POLYFORGE_LIMIT");
  if (env == nullptr || *env == '\0') return 2'000'000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0)
    throw CliError{kInput, std::string("POLYFORGE_LIMIT is not a positive "
                                       "integer: '") +
                               env + "'"};
  return v;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CliError{kInput, "cannot write " + out_path};
  out << payload;
  if (!payload.empty() && payload.back() != '\n') out << '\n';
}

int exit_code(const CertifyOutcome& o) {
  if (o.ok()) return kOk;
  const StageResult* f = o.first_failure();
  return (f != nullptr && f->resource_limited) ? kResource : kClaim;
}

int run(int argc, char** argv) {
  CLI::App app{"finitely presented group toolkit for the {4,8} polytope "
               "families"};
  app.require_subcommand(1);

  std::uint64_t limit = default_limit();
  std::string strategy_name = "felsch";
  std::string format = "text";
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--limit", limit, "max cosets per enumeration");
    sub->add_option("--strategy", strategy_name, "hlt or felsch")
        ->check(CLI::IsMember({"hlt", "felsch"}));
    if (with_format)
      sub->add_option("--format", format, "json, csv or text")
          ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_path, "write the report to a file");
  };

  // enumerate
  int enum_case = 0;
  std::string input_file;
  CLI::App* cmd_enum =
      app.add_subcommand("enumerate", "coset enumeration of a preset kernel "
                                      "or a user presentation file");
  cmd_enum->add_option("--case", enum_case, "preset case, 1..4")
      ->check(CLI::Range(1, 4));
  cmd_enum->add_option("--input", input_file,
                       "job file with generators/relators/subgroup lines");
  add_common(cmd_enum, true);

  // certify
  int cert_case = 0;
  long long cert_m = 1;
  long long m_max = 1;
  bool all = false;
  bool mutate_table = false;
  CLI::App* cmd_cert = app.add_subcommand(
      "certify", "full pipeline for one family member or the whole grid");
  cmd_cert->add_option("--case", cert_case, "preset case, 1..4")
      ->check(CLI::Range(1, 4));
  cmd_cert->add_option("--m", cert_m, "family parameter, >= 1");
  cmd_cert->add_flag("--all", all, "run every case");
  cmd_cert->add_option("--m-max", m_max, "largest m for --all");
  cmd_cert->add_flag("--mutate-table", mutate_table,
                     "fault injection: flip one action-matrix entry");
  add_common(cmd_cert, true);

  // action
  int act_case = 0;
  CLI::App* cmd_action = app.add_subcommand(
      "action", "conjugation matrices of a preset case and their relation "
                "check");
  cmd_action->add_option("--case", act_case, "preset case, 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  add_common(cmd_action, true);

  // family
  int fam_case = 0;
  long long fam_m = 1;
  CLI::App* cmd_family = app.add_subcommand(
      "family", "compact JSON record for one family member");
  cmd_family->add_option("--case", fam_case, "preset case, 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  cmd_family->add_option("--m", fam_m, "family parameter, >= 1");
  add_common(cmd_family, false);

  // selftest
  bool quick = false;
  bool inject_snf_bug = false;
  CLI::App* cmd_self = app.add_subcommand(
      "selftest", "property suites against independent oracles");
  cmd_self->add_flag("--quick", quick, "smaller trial counts, < 60 s");
  cmd_self
      ->add_flag("--inject-snf-bug", inject_snf_bug,
                 "fault injection: corrupt one Smith divisor")
      ->group("");  // hidden
  add_common(cmd_self, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  RunConfig cfg;
  cfg.limit = limit;
  cfg.strategy = strategy_name == "hlt" ? Strategy::hlt : Strategy::felsch;
  cfg.mutate_action = mutate_table;

  if (cmd_enum->parsed()) {
    if ((enum_case == 0) == input_file.empty())
      throw CliError{kInput, "enumerate needs exactly one of --case, --input"};
    EnumerateRow row;
    try {
      row = enum_case != 0 ? enumerate_preset(enum_case, cfg)
                           : enumerate_job(parse_job_file(input_file), cfg);
    } catch (const parse_error& e) {
      throw CliError{kInput, e.what()};
    }
    emit(format == "json" ? to_json(row) : to_text(row), out_path);
    return row.complete ? kOk : kResource;
  }

  if (cmd_cert->parsed()) {
    if (!all) {
      if (cert_case == 0)
        throw CliError{kInput, "certify needs --case or --all"};
      if (cert_m < 1) throw CliError{kInput, "--m must be >= 1"};
      CertifyOutcome o = certify_member(cert_case, cert_m, cfg);
      std::string payload;
      if (format == "json")
        payload = to_json(o);
      else if (format == "csv")
        payload = csv_header() + "\n" + to_csv_row(o);
      else
        payload = to_text(o);
      emit(payload, out_path);
      return exit_code(o);
    }
    if (m_max < 1) throw CliError{kInput, "--m-max must be >= 1"};
    std::vector<std::pair<int, long long>> jobs;
    for (int c = 1; c <= 4; ++c)
      for (long long mm = 1; mm <= m_max; ++mm) jobs.emplace_back(c, mm);
    std::vector<CertifyOutcome> results = certify_many(jobs, cfg);
    std::ostringstream payload;
    if (format == "json") {
      payload << "[";
      for (std::size_t i = 0; i < results.size(); ++i)
        payload << (i ? "," : "") << "\n  " << to_json(results[i]);
      payload << "\n]";
    } else if (format == "csv") {
      payload << csv_header();
      for (const auto& o : results) payload << "\n" << to_csv_row(o);
    } else {
      for (const auto& o : results) payload << to_text(o);
    }
    emit(payload.str(), out_path);
    int worst = kOk;
    for (const auto& o : results) {
      int code = exit_code(o);
      if (code == kClaim) return kClaim;
      if (code == kResource) worst = kResource;
    }
    return worst;
  }

  if (cmd_action->parsed()) {
    const CaseData& cd = case_data(act_case);
    EnumConfig ec;
    ec.max_cosets = cfg.limit;
    ec.strategy = cfg.strategy;
    CosetTable t = enumerate(base_group(), cd.basis, ec);
    if (!t.complete()) {
      emit("enumeration incomplete at " + std::to_string(cfg.limit) +
               " cosets",
           out_path);
      return kResource;
    }
    CoordinateMap cm = certify_free_abelian_rank4(base_group(), t, cd.basis);
    if (!cm.certified()) throw CliError{kClaim, cm.detail()};
    ActionPair ap = action_matrices(cm);
    bool relations = verify_action_relations(ap, base_group());
    std::ostringstream s;
    if (format == "json") {
      s << "{\"case\":" << act_case << ",\"matrices\":{";
      for (std::size_t g = 0; g < ap.mats.size(); ++g) {
        s << (g ? "," : "") << "\"" << ap.alphabet[static_cast<int>(g)].name << "\":[";
        for (int i = 0; i < 4; ++i) {
          s << (i ? "," : "") << "[";
          for (int j = 0; j < 4; ++j)
            s << (j ? "," : "") << ap.mats[g].at(i, j).str();
          s << "]";
        }
        s << "]";
      }
      s << "},\"relations_hold\":" << (relations ? "true" : "false") << "}";
    } else {
      for (std::size_t g = 0; g < ap.mats.size(); ++g)
        s << "action of " << ap.alphabet[static_cast<int>(g)].name << ":\n"
          << ap.mats[g].to_string();
      s << "relation check: " << (relations ? "pass" : "FAIL") << "\n";
    }
    emit(s.str(), out_path);
    return relations ? kOk : kClaim;
  }

  if (cmd_family->parsed()) {
    if (fam_m < 1) throw CliError{kInput, "--m must be >= 1"};
    CertifyOutcome o = certify_member(fam_case, fam_m, cfg);
    emit(family_record(o), out_path);
    return exit_code(o);
  }

  // selftest
  SelfTestOptions opt;
  opt.quick = quick;
  opt.inject_snf_bug = inject_snf_bug;
  std::vector<StageResult> suites = run_selftest(opt);
  std::ostringstream s;
  bool all_ok = true;
  for (const auto& r : suites) {
    all_ok = all_ok && r.ok;
    s << (r.ok ? "pass" : "FAIL") << "  " << r.name << ": " << r.detail
      << "\n";
  }
  s << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
  emit(s.str(), out_path);
  return all_ok ? kOk : kClaim;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kClaim;
  }
}
