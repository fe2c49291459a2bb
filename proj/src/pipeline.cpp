#include "polyforge/pipeline.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polyforge/action.hpp"
#include "polyforge/coordinate_map.hpp"
#include "polyforge/pair_group.hpp"
#include "polyforge/presets.hpp"
#include "polyforge/schreier.hpp"
#include "polyforge/stab_chain.hpp"

namespace polyforge {

namespace {

EnumConfig enum_config(const RunConfig& cfg) {
  EnumConfig e;
  e.max_cosets = cfg.limit;
  e.strategy = cfg.strategy;
  return e;
}

std::string order_text(const bigint& o) { return o.str(); }

// true mirror image of the base witness under a -> a^-1, b -> a^2 b
Word mirrored_witness() {
  return substitute(chirality_witness_base(), mirror_substitution());
}

}  // namespace

bool CertifyOutcome::ok() const {
  for (const auto& s : stages)
    if (!s.ok) return false;
  return !stages.empty();
}

const StageResult* CertifyOutcome::first_failure() const {
  for (const auto& s : stages)
    if (!s.ok) return &s;
  return nullptr;
}

CertifyOutcome certify_member(int case_id, long long m, const RunConfig& cfg) {
  CertifyOutcome out;
  out.case_id = case_id;
  out.m = m;
  auto fail = [&](const char* stage, std::string detail,
                  bool resource = false) {
    out.stages.push_back({stage, false, resource, std::move(detail)});
    return out;
  };
  auto pass = [&](const char* stage, std::string detail) {
    out.stages.push_back({stage, true, false, std::move(detail)});
  };
  if (case_id < 1 || case_id > 4) return fail("setup", "case id must be 1..4");
  if (m < 1) return fail("setup", "m must be >= 1");
  const Presentation& base = base_group();
  const CaseData& cd = case_data(case_id);

  // kernel index and normality
  CosetTable table = enumerate(base, cd.basis, enum_config(cfg));
  if (!table.complete())
    return fail("enumerate",
                "incomplete at " + std::to_string(cfg.limit) + " cosets",
                true);
  out.index = table.coset_count();
  out.normal = table.is_normal();
  if (out.index != static_cast<std::uint64_t>(cd.expected_index))
    return fail("enumerate", "index " + std::to_string(out.index) +
                                 ", expected " +
                                 std::to_string(cd.expected_index));
  if (!out.normal) return fail("enumerate", "subgroup is not normal");
  pass("enumerate",
       "index " + std::to_string(out.index) + ", normal");

  // free-abelian rank-4 certificate
  CoordinateMap cm = certify_free_abelian_rank4(base, table, cd.basis);
  if (!cm.certified())
    return fail("kernel rank", cm.detail(),
                cm.verdict() == CoordinateMap::Verdict::unproven);
  pass("kernel rank", "free abelian of rank 4, unimodular basis");

  // conjugation table entries, exact coordinates
  int matched = 0;
  for (int g = 0; g < 2; ++g) {
    Word gw({static_cast<Letter>(g + 1)});
    for (int i = 0; i < 4; ++i) {
      Vec4 got = cm.coordinates(cd.basis[i].conjugate(gw));
      bool row_ok = true;
      for (int j = 0; j < 4; ++j)
        row_ok = row_ok && got[j] == cd.expected_action[g][i][j];
      if (row_ok) ++matched;
    }
  }
  if (matched != 8)
    return fail("conjugation table",
                std::to_string(matched) + "/8 rows reproduce");
  pass("conjugation table", "8/8 rows reproduce");

  // action matrices and their relations
  ActionPair ap = action_matrices(cm);
  if (cfg.mutate_action) {
    for (int j = 0; j < 4; ++j)
      if (ap.mats[0].at(0, j) != 0) {
        ap.mats[0].at(0, j) = -ap.mats[0].at(0, j);
        break;
      }
  }
  if (!verify_action_relations(ap, base))
    return fail("action relations", "matrices violate a base relation");
  pass("action relations", "all base relations hold, det +-1");

  // finite quotient as (coset, vector) pairs
  PairGroup pair = build_pair_group(cd, m, cm);
  bigint want_order = bigint(cd.expected_index) * m * m * m * m;
  if (pair.order() != want_order)
    return fail("pair group", "order " + order_text(pair.order()) +
                                  ", expected " + order_text(want_order));
  pass("pair group", "order " + order_text(pair.order()));

  // direct re-enumeration for small members
  if (cfg.with_cross_validation && pair.order() <= 200'000) {
    try {
      bool agreed = cross_validate(pair, cfg.limit);
      out.cross_validated = agreed ? "yes" : "failed";
      if (!agreed)
        return fail("cross validation",
                    "pair arithmetic disagrees with the coset action");
      pass("cross validation", "orders agree with the direct enumeration");
    } catch (const error& e) {
      return fail("cross validation", e.what(), true);
    }
  }

  // polytope certification
  out.report = certify_polytope(pair);
  out.mirror_order = pair.element_order(mirrored_witness());
  if (out.report.k1 != 4 || out.report.k2 != 8)
    return fail("polytope", "type is not {4,8}");
  if (out.report.order_product != 2 || out.report.intersection != 1)
    return fail("polytope", "intersection condition fails");
  PolytopeVerdict want = (case_id == 1 && m == 1) ? PolytopeVerdict::regular
                                                  : PolytopeVerdict::chiral;
  if (out.report.verdict != want)
    return fail("polytope", std::string("verdict ") +
                                to_string(out.report.verdict) + ", expected " +
                                to_string(want));
  if (want == PolytopeVerdict::chiral && out.report.witness_index != 4)
    return fail("polytope", "unexpected witness relator");
  pass("polytope", std::string("verdict ") + to_string(out.report.verdict) +
                       ", chi " + out.report.chi.str() + ", genus " +
                       out.report.genus.str());

  // solvability of the faithful coset image for small members
  if (cfg.with_solvability && pair.order() <= 20'000) {
    std::vector<Word> subgens;
    for (const Word& x : pair.basis()) subgens.push_back(x.pow(m));
    CosetTable t = enumerate(base, subgens, enum_config(cfg));
    if (!t.complete())
      return fail("solvability", "image enumeration incomplete", true);
    DerivedSeries ds = derived_series(image_of_table(t));
    if (ds.verdict == DerivedSeries::Verdict::solvable)
      out.solvable = "yes";
    else if (ds.verdict == DerivedSeries::Verdict::not_solvable)
      out.solvable = "no";
    if (out.solvable != "yes")
      return fail("solvability", "derived series does not reach 1");
    pass("solvability",
         "derived series length " + std::to_string(ds.orders.size()));
  }

  return out;
}

std::vector<CertifyOutcome> certify_many(
    const std::vector<std::pair<int, long long>>& jobs, const RunConfig& cfg) {
  std::vector<CertifyOutcome> results(jobs.size());
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > jobs.size()) workers = jobs.size();
  std::mutex mu;
  std::size_t next = 0;
  auto work = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= jobs.size()) return;
        i = next++;
      }
      results[i] = certify_member(jobs[i].first, jobs[i].second, cfg);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

EnumerateRow enumerate_preset(int case_id, const RunConfig& cfg) {
  if (case_id < 1 || case_id > 4) throw error("case id must be 1..4");
  const CaseData& cd = case_data(case_id);
  CosetTable t = enumerate(base_group(), cd.basis, enum_config(cfg));
  if (t.complete()) t.standardize();
  EnumerateRow row;
  row.label = "case " + std::to_string(case_id);
  row.complete = t.complete();
  row.cosets = t.coset_count();
  row.normal = row.complete && t.is_normal();
  return row;
}

JobFile parse_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  JobFile job;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string::size_type h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::string::size_type b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": expected key = [\"...\"]");
    std::string key = line.substr(b, line.find_last_not_of(" \t", eq - 1) -
                                         b + 1);
    std::vector<std::string>* target = nullptr;
    if (key == "generators") target = &job.generators;
    else if (key == "relators") target = &job.relators;
    else if (key == "subgroup") target = &job.subgroup;
    else
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    std::string rest = line.substr(eq + 1);
    auto lb = rest.find('[');
    auto rb = rest.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
      throw parse_error(path + ":" + std::to_string(lineno) +
                        ": expected a [...] list");
    std::string body = rest.substr(lb + 1, rb - lb - 1);
    std::string::size_type p = 0;
    while (true) {
      auto q1 = body.find('"', p);
      if (q1 == std::string::npos) break;
      auto q2 = body.find('"', q1 + 1);
      if (q2 == std::string::npos)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": unterminated string");
      target->push_back(body.substr(q1 + 1, q2 - q1 - 1));
      p = q2 + 1;
    }
  }
  if (job.generators.empty())
    throw parse_error(path + ": no generators given");
  return job;
}

EnumerateRow enumerate_job(const JobFile& job, const RunConfig& cfg) {
  Presentation p(job.generators, job.relators);
  std::vector<Word> sub;
  for (const auto& text : job.subgroup) sub.push_back(p.parse(text));
  CosetTable t = enumerate(p, sub, enum_config(cfg));
  if (t.complete()) t.standardize();
  EnumerateRow row;
  row.label = "job";
  row.complete = t.complete();
  row.cosets = t.coset_count();
  row.normal = row.complete && t.is_normal();
  return row;
}

namespace {

// ---- self-test oracles, independent of the library's own algebra ----

using BrutePerm = std::vector<int>;

BrutePerm bmul(const BrutePerm& p, const BrutePerm& q) {
  BrutePerm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

std::set<BrutePerm> bclosure(const std::vector<BrutePerm>& gens, int degree) {
  BrutePerm id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::set<BrutePerm> seen{id};
  std::vector<BrutePerm> frontier{id};
  while (!frontier.empty()) {
    std::vector<BrutePerm> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        BrutePerm q = bmul(p, g);
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return seen;
}

struct SelfTestGroup {
  const char* name;
  Presentation pres;
  std::vector<BrutePerm> perms;
};

const std::vector<SelfTestGroup>& selftest_groups() {
  static const std::vector<SelfTestGroup> gs = {
      {"Z6", Presentation({"a"}, {"a^6"}), {{1, 2, 3, 4, 5, 0}}},
      {"S3", Presentation({"a", "b"}, {"a^2", "b^3", "(a*b)^2"}),
       {{1, 0, 2}, {1, 2, 0}}},
      {"D4", Presentation({"r", "s"}, {"r^4", "s^2", "(r*s)^2"}),
       {{1, 2, 3, 0}, {0, 3, 2, 1}}},
      {"A4", Presentation({"a", "b"}, {"a^3", "b^3", "(a*b)^2"}),
       {{1, 2, 0, 3}, {1, 3, 2, 0}}},
      {"S4", Presentation({"a", "b"}, {"a^4", "b^2", "(a*b)^3"}),
       {{1, 2, 3, 0}, {1, 0, 2, 3}}},
  };
  return gs;
}

Word random_word(std::mt19937& rng, int ngens, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<int> pick(1, ngens);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    Letter l = static_cast<Letter>(pick(rng));
    ls.push_back(sign(rng) ? l : -l);
  }
  return Word(ls);
}

IntMatrix random_int_matrix(std::mt19937& rng, int r, int c) {
  std::uniform_int_distribution<int> d(-6, 6);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937& rng, int n) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3),
      move(0, 2);
  for (int step = 0; step < 12; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    switch (move(rng)) {
      case 0: {
        int c = coef(rng);
        for (int k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
        break;
      }
      case 1:
        for (int k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
        break;
      default:
        for (int k = 0; k < n; ++k) m.at(i, k) = -m.at(i, k);
        break;
    }
  }
  return m;
}

StageResult suite_coset_tables(bool quick) {
  StageResult r{"coset tables vs brute force", true, false, ""};
  int groups = 0;
  for (const auto& g : selftest_groups()) {
    std::size_t order = bclosure(g.perms, g.perms[0].size()).size();
    for (Strategy s : {Strategy::hlt, Strategy::felsch}) {
      EnumConfig cfg;
      cfg.strategy = s;
      CosetTable t = enumerate(g.pres, {}, cfg);
      if (!t.complete() || t.coset_count() != order) {
        r.ok = false;
        r.detail = std::string(g.name) + ": table order mismatch";
        return r;
      }
      if (group_order(image_of_table(t)) != bigint(order)) {
        r.ok = false;
        r.detail = std::string(g.name) + ": image order mismatch";
        return r;
      }
    }
    ++groups;
    if (quick && groups == 3) break;
  }
  r.detail = std::to_string(groups) + " groups, both strategies";
  return r;
}

StageResult suite_evaluate_homomorphism(bool quick) {
  StageResult r{"word evaluation is a homomorphism", true, false, ""};
  const SelfTestGroup& s4 = selftest_groups()[4];
  CosetTable t = enumerate(s4.pres, {});
  PermGroup img = image_of_table(t);
  std::mt19937 rng(40501);
  int trials = quick ? 100 : 500;
  for (int i = 0; i < trials; ++i) {
    Word u = random_word(rng, 2, 10), v = random_word(rng, 2, 10);
    if (evaluate(img, u * v) != evaluate(img, u) * evaluate(img, v)) {
      r.ok = false;
      r.detail = "product word disagrees at trial " + std::to_string(i);
      return r;
    }
    if (evaluate(img, u.inverse()) != evaluate(img, u).inverse()) {
      r.ok = false;
      r.detail = "inverse word disagrees at trial " + std::to_string(i);
      return r;
    }
  }
  r.detail = std::to_string(trials) + " random word pairs";
  return r;
}

StageResult suite_smith_form(bool quick, bool inject_bug) {
  StageResult r{"smith form invariants", true, false, ""};
  std::mt19937 rng(40502);
  std::uniform_int_distribution<int> rd(1, 4), cd(1, 5);
  int trials = quick ? 40 : 200;
  for (int i = 0; i < trials; ++i) {
    int rows = rd(rng), cols = cd(rng);
    IntMatrix a = random_int_matrix(rng, rows, cols);
    std::vector<bigint> base = smith_normal_form(a).divisors;
    if (inject_bug && i == trials / 2 && !base.empty()) base[0] += 1;
    IntMatrix l = random_unimodular(rng, rows);
    IntMatrix q = random_unimodular(rng, cols);
    std::vector<bigint> moved = smith_normal_form(l * a * q).divisors;
    if (base != moved) {
      r.ok = false;
      r.detail = "invariants changed under unimodular moves at trial " +
                 std::to_string(i);
      return r;
    }
  }
  r.detail = std::to_string(trials) + " random matrices";
  return r;
}

StageResult suite_schreier_rank(bool) {
  StageResult r{"schreier rank formula", true, false, ""};
  Presentation f2({"a", "b"}, {});
  struct Probe {
    std::vector<std::string> sub;
    std::uint64_t index;
  };
  const std::vector<Probe> probes = {
      {{"a^2", "a*b", "b*a"}, 2},
      {{"a^3", "b", "a*b*a^-1", "a^2*b*a^-2"}, 3},
  };
  for (const auto& probe : probes) {
    std::vector<Word> sub;
    for (const auto& text : probe.sub) sub.push_back(f2.parse(text));
    CosetTable t = enumerate(f2, sub);
    if (!t.complete() || t.coset_count() != probe.index) {
      r.ok = false;
      r.detail = "unexpected index";
      return r;
    }
    SchreierTransversal tr(t);
    int want = static_cast<int>(probe.index) * (2 - 1) + 1;
    if (tr.rank() != want) {
      r.ok = false;
      r.detail = "rank " + std::to_string(tr.rank()) + ", expected " +
                 std::to_string(want);
      return r;
    }
    SubgroupPresentation sp = rewrite_presentation(f2, tr);
    if (!sp.relators.empty()) {
      r.ok = false;
      r.detail = "free-group subgroup acquired relators";
      return r;
    }
  }
  r.detail = "free-group subgroups of index 2 and 3";
  return r;
}

StageResult suite_record_determinism(bool) {
  StageResult r{"atlas record determinism", true, false, ""};
  RunConfig cfg;
  cfg.with_cross_validation = false;
  cfg.with_solvability = false;
  CertifyOutcome a = certify_member(1, 1, cfg);
  CertifyOutcome b = certify_member(1, 1, cfg);
  if (!a.ok() || !b.ok()) {
    r.ok = false;
    r.detail = "certification failed";
    return r;
  }
  if (to_json(a) != to_json(b) ||
      atlas_record(a.report, 1, 1) != atlas_record(b.report, 1, 1)) {
    r.ok = false;
    r.detail = "repeated runs differ";
    return r;
  }
  r.detail = "byte-identical across repeated runs";
  return r;
}

}  // namespace

std::vector<StageResult> run_selftest(const SelfTestOptions& opt) {
  std::vector<StageResult> out;
  out.push_back(suite_coset_tables(opt.quick));
  out.push_back(suite_evaluate_homomorphism(opt.quick));
  out.push_back(suite_smith_form(opt.quick, opt.inject_snf_bug));
  out.push_back(suite_schreier_rank(opt.quick));
  out.push_back(suite_record_determinism(opt.quick));
  return out;
}

namespace {

nlohmann::json outcome_json(const CertifyOutcome& o) {
  nlohmann::json j;
  j["case"] = o.case_id;
  j["m"] = o.m;
  j["status"] = o.ok() ? "ok" : "failed";
  if (const StageResult* f = o.first_failure()) {
    j["failed_stage"] = f->name;
    j["failure"] = f->detail;
    j["resource_limited"] = f->resource_limited;
  }
  j["index"] = o.index;
  j["normal"] = o.normal;
  if (o.report.k1 != 0) {
    j["order"] = o.report.order.str();
    j["type"] = {o.report.k1, o.report.k2};
    j["product_order"] = o.report.order_product;
    j["intersection"] = o.report.intersection;
    j["verdict"] = to_string(o.report.verdict);
    j["chi"] = o.report.chi.str();
    j["genus"] = o.report.genus.str();
    if (o.report.verdict == PolytopeVerdict::chiral)
      j["witness"] = o.report.witness_text;
    else
      j["witness"] = nullptr;
    j["mirror_order"] = o.mirror_order;
  }
  j["cross_validated"] = o.cross_validated;
  j["solvable"] = o.solvable;
  return j;
}

}  // namespace

std::string to_json(const CertifyOutcome& o) { return outcome_json(o).dump(); }

std::string to_text(const CertifyOutcome& o) {
  std::ostringstream s;
  s << "case " << o.case_id << ", m " << o.m << "\n";
  for (const auto& st : o.stages)
    s << "  " << (st.ok ? "ok  " : "FAIL") << "  " << st.name << ": "
      << st.detail << "\n";
  if (o.report.k1 != 0) {
    s << "  type {" << o.report.k1 << "," << o.report.k2 << "}, order "
      << o.report.order.str() << ", verdict " << to_string(o.report.verdict)
      << ", chi " << o.report.chi.str() << ", genus " << o.report.genus.str()
      << "\n";
  }
  s << "status: " << (o.ok() ? "ok" : "failed") << "\n";
  return s.str();
}

std::string csv_header() {
  return "case,m,status,index,normal,order,k1,k2,product_order,intersection,"
         "verdict,chi,genus,mirror_order,cross_validated,solvable";
}

std::string to_csv_row(const CertifyOutcome& o) {
  std::ostringstream s;
  s << o.case_id << ',' << o.m << ',' << (o.ok() ? "ok" : "failed") << ','
    << o.index << ',' << (o.normal ? "true" : "false") << ',';
  if (o.report.k1 != 0) {
    s << o.report.order.str() << ',' << o.report.k1 << ',' << o.report.k2
      << ',' << o.report.order_product << ',' << o.report.intersection << ','
      << to_string(o.report.verdict) << ',' << o.report.chi.str() << ','
      << o.report.genus.str() << ',' << o.mirror_order << ',';
  } else {
    s << ",,,,,,,,,";
  }
  s << o.cross_validated << ',' << o.solvable;
  return s.str();
}

std::string to_json(const EnumerateRow& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["cosets"] = r.cosets;
  j["complete"] = r.complete;
  j["normal"] = r.normal;
  return j.dump();
}

std::string to_text(const EnumerateRow& r) {
  std::ostringstream s;
  s << r.label << ": ";
  if (!r.complete)
    s << "incomplete, " << r.cosets << " cosets defined";
  else
    s << "index " << r.cosets << ", normal: " << (r.normal ? "true" : "false");
  return s.str();
}

std::string family_record(const CertifyOutcome& o) {
  nlohmann::json j;
  j["case"] = o.case_id;
  j["m"] = o.m;
  j["status"] = o.ok() ? "ok" : "failed";
  if (o.report.k1 != 0) {
    j["order"] = o.report.order.str();
    j["generator_orders"] = {o.report.k1, o.report.k2,
                             o.report.order_product};
    j["witness_orders"] = {{"base", 2}, {"mirrored", o.mirror_order}};
    j["verdict"] = to_string(o.report.verdict);
  }
  j["cross_validated"] = o.cross_validated;
  j["solvable"] = o.solvable;
  return j.dump();
}

}  // namespace polyforge
