#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyforge/coset_table.hpp"
#include "polyforge/polytope.hpp"

namespace polyforge {

// Shared knobs for the command pipelines. `limit` bounds every coset
// enumeration; `mutate_action` is a fault-injection hook that flips one
// entry of the first action matrix so downstream verification must trip.
struct RunConfig {
  std::uint64_t limit = 2'000'000;
  Strategy strategy = Strategy::felsch;
  bool mutate_action = false;
  bool with_cross_validation = true;
  bool with_solvability = true;
};

struct StageResult {
  std::string name;
  bool ok = false;
  bool resource_limited = false;  // failed on a budget, not on a claim
  std::string detail;
};

// Everything `certify` learns about one family member. Stages run in order
// and stop at the first failure.
struct CertifyOutcome {
  int case_id = 0;
  long long m = 1;
  std::vector<StageResult> stages;

  std::uint64_t index = 0;
  bool normal = false;
  PolytopeReport report;
  std::uint64_t mirror_order = 0;  // order of the mirrored witness word
  std::string cross_validated = "skipped";  // yes | failed | skipped
  std::string solvable = "skipped";         // yes | no | skipped

  bool ok() const;
  const StageResult* first_failure() const;
};

CertifyOutcome certify_member(int case_id, long long m, const RunConfig& cfg);

// Runs the given (case, m) jobs on a small worker pool; results come back
// in input order regardless of scheduling.
std::vector<CertifyOutcome> certify_many(
    const std::vector<std::pair<int, long long>>& jobs, const RunConfig& cfg);

struct EnumerateRow {
  std::string label;
  std::uint64_t cosets = 0;
  bool complete = false;
  bool normal = false;
};

EnumerateRow enumerate_preset(int case_id, const RunConfig& cfg);

// Job file format: one `key = ["...", ...]` per line with keys generators,
// relators and subgroup; blank lines and #-comments ignored.
struct JobFile {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::vector<std::string> subgroup;
};

JobFile parse_job_file(const std::string& path);
EnumerateRow enumerate_job(const JobFile& job, const RunConfig& cfg);

struct SelfTestOptions {
  bool quick = false;
  bool inject_snf_bug = false;  // mutation hook: corrupt one SNF result
};

std::vector<StageResult> run_selftest(const SelfTestOptions& opt);

// Deterministic renderings; JSON output is byte-identical across runs with
// the same configuration.
std::string to_json(const CertifyOutcome& o);
std::string to_text(const CertifyOutcome& o);
std::string csv_header();
std::string to_csv_row(const CertifyOutcome& o);

std::string to_json(const EnumerateRow& r);
std::string to_text(const EnumerateRow& r);

// Compact record for `family`: order, generator orders, witness-word
// orders and validation status.
std::string family_record(const CertifyOutcome& o);

}  // namespace polyforge
