// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli.hpp"
#include "matlift/gain.hpp"
#include "matlift/io.hpp"
#include "matlift/isomorphism.hpp"
#include "matlift/krt.hpp"
#include "matlift/lifts.hpp"
#include "matlift/witness.hpp"

namespace matlift::cli {
namespace {

using Json = nlohmann::ordered_json;

Json set_json(Mask m) {
  Json out = Json::array();
  for_each_element(m, [&](int e) { out.push_back(e + 1); });
  return out;
}

Json family_json(std::span<const Mask> family) {
  Json out = Json::array();
  for (Mask c : family) out.push_back(set_json(c));
  return out;
}

std::string base_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

// Collects the report while a command runs.
struct Report {
  Json checks = Json::array();
  Json body = Json::object();
  Json inputs = Json::object();
  std::string conclusion;
  bool failed = false;

  void check(const std::string& name, bool pass, Json witness = nullptr) {
    Json c{{"name", name}, {"pass", pass}};
    if (!witness.is_null()) c["witness"] = std::move(witness);
    checks.push_back(std::move(c));
    failed = failed || !pass;
  }
};

Json matroid_summary(const Matroid& m) {
  return Json{{"elements", m.size()}, {"rank", m.rank()}, {"circuits", m.circuits().size()}};
}

Json matroid_input(const std::string& path, const Matroid& m) {
  Json j{{"file", base_name(path)}};
  j.update(matroid_summary(m));
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

FinGroup load_group(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return builtin_group(arg.substr(prefix.size()));
  return io::read_group(arg);
}

Json group_input(const std::string& arg, const FinGroup& g) {
  const bool builtin = arg.rfind("builtin:", 0) == 0;
  return Json{{builtin ? "builtin" : "file", builtin ? arg.substr(8) : base_name(arg)}, {"order", g.order()}};
}

Json partition_json(const FinGroup& g, const GroupPartition& p) {
  Json out = Json::array();
  for (Mask part : p) {
    Json names = Json::array();
    for_each_element(part, [&](int x) { names.push_back(g.name(x)); });
    out.push_back(names);
  }
  return out;
}

std::string describe(const CircuitReport& r) { return r.ok() ? "" : r.describe(); }

// ---- commands -------------------------------------------------------------

void cmd_check(const std::string& path, Report& rep) {
  const Matroid m = io::read_matroid(path, Matroid::Check::trust);
  rep.inputs["matroid"] = Json{{"file", base_name(path)}, {"elements", m.size()}, {"circuits", m.circuits().size()}};
  const CircuitReport circuits = validate_circuits(m.circuits(), m.ground());
  rep.check("circuit_axioms", circuits.ok(), circuits.ok() ? Json(nullptr) : Json(describe(circuits)));
  if (!circuits.ok()) {
    rep.conclusion = "not a matroid";
    return;
  }
  const AxiomReport axioms = check_rank_axioms(m);
  rep.check("rank_axioms", axioms.ok,
            axioms.ok ? Json(nullptr) : Json{{"failure", axioms.failure}, {"sets", {set_json(axioms.first), set_json(axioms.second)}}});
  rep.body["rank"] = m.rank();
  rep.body["sparse_paving"] = is_sparse_paving(m);
  rep.body["circuit_hyperplanes"] = family_json(circuit_hyperplanes(m));
  rep.conclusion = "valid matroid of rank " + std::to_string(m.rank());
}

void cmd_rank(const std::string& path, const std::string& set, Report& rep) {
  const Matroid m = io::read_matroid(path);
  rep.inputs["matroid"] = matroid_input(path, m);
  const Mask x = io::parse_set(set, m.size());
  rep.inputs["set"] = set_json(x);
  rep.body["rank"] = m.rank(x);
  rep.body["closure"] = set_json(m.closure(x));
  rep.body["independent"] = m.is_independent(x);
  rep.conclusion = "rank " + std::to_string(m.rank(x));
}

std::vector<std::size_t> parse_class(const std::string& arg, const Matroid& m) {
  std::string text = arg;
  if (std::filesystem::is_regular_file(arg)) text = io::detail::slurp(arg);
  std::string cleaned;
  for (char c : text) cleaned += (c == ',' || c == '{' || c == '}') ? ' ' : c;
  std::vector<std::size_t> out;
  std::istringstream in(cleaned);
  for (std::string w; in >> w;) {
    if (w[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    const long long i = io::detail::to_int(w, 0);
    if (i < 1 || static_cast<std::size_t>(i) > m.circuits().size()) {
      throw ParseError("circuit index " + w + " outside 1.." + std::to_string(m.circuits().size()));
    }
    out.push_back(static_cast<std::size_t>(i - 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void report_lift(const Matroid& base, const Matroid& lift, int expected_gain, Report& rep) {
  rep.check("circuit_axioms", validate_circuits(lift.circuits(), lift.ground()).ok());
  rep.check("rank_gain", lift.rank() - base.rank() == expected_gain,
            Json{{"base", base.rank()}, {"lift", lift.rank()}, {"expected_gain", expected_gain}});
  rep.check("quotient", is_quotient(base, lift));
  rep.body["lift"] = matroid_summary(lift);
  rep.body["lift"]["circuit_list"] = family_json(lift.circuits());
}

void cmd_lift_elementary(const std::string& path, const std::string& cls, const std::string& out_path, Report& rep) {
  const Matroid m = io::read_matroid(path);
  rep.inputs["matroid"] = matroid_input(path, m);
  const std::vector<std::size_t> members = parse_class(cls, m);
  Json ids = Json::array();
  for (std::size_t i : members) ids.push_back(i + 1);
  rep.inputs["class"] = ids;
  if (auto v = linear_class_violation(m, members)) {
    rep.check("linear_class", false,
              Json{{"pair", {set_json(m.circuits()[v->first]), set_json(m.circuits()[v->second])}},
                   {"missing", set_json(m.circuits()[v->missing])}});
    rep.conclusion = "not a linear class";
    return;
  }
  rep.check("linear_class", true);
  const Matroid lift = elementary_lift(m, members);
  report_lift(m, lift, members.size() == m.circuits().size() ? 0 : 1, rep);
  if (!out_path.empty()) write_file(out_path, io::write_matroid(lift));
  rep.conclusion = "elementary lift of rank " + std::to_string(lift.rank());
}

Json star_witness(const LiftSpec& spec, const StarCheck& s) {
  Json coll = Json::array();
  for (std::size_t i : s.collection) coll.push_back(set_json(spec.base.circuits()[i]));
  return Json{{"collection", coll}, {"circuit", set_json(spec.base.circuits()[s.circuit])}};
}

void cmd_lift_general(const std::string& path, bool star, bool force, const std::string& out_path, Report& rep) {
  const LiftSpec spec = io::read_lift(path);
  rep.inputs["spec"] = Json{{"file", base_name(path)}, {"base", matroid_summary(spec.base)}, {"overlay_rank", spec.overlay.rank()}};
  const StarCheck prime = check_star_prime(spec);
  rep.check("star_prime", prime.holds, prime.holds ? Json(nullptr) : star_witness(spec, prime));
  if (star) {
    const StarCheck full = check_star(spec);
    rep.check("star", full.holds, full.holds ? Json(nullptr) : star_witness(spec, full));
  }
  if (prime.holds) {
    const Matroid lift = build_lift(spec);
    report_lift(spec.base, lift, spec.overlay.rank(), rep);
    if (!out_path.empty()) write_file(out_path, io::write_matroid(lift));
    rep.conclusion = "lift of rank " + std::to_string(lift.rank());
    return;
  }
  if (!force) {
    rep.conclusion = "condition (*') fails; lift refused";
    return;
  }
  const LiftDiagnostic diag = diagnose_lift(spec);
  rep.check("rank_axioms", diag.axioms.ok,
            diag.axioms.ok ? Json(nullptr)
                           : Json{{"failure", diag.axioms.failure}, {"sets", {set_json(diag.axioms.first), set_json(diag.axioms.second)}}});
  if (diag.lift) {
    rep.body["lift"] = matroid_summary(*diag.lift);
    rep.conclusion = "condition (*') fails but the formula is a matroid rank function";
  } else {
    rep.conclusion = "condition (*') fails and the formula is not a matroid rank function";
  }
}

void cmd_rep_witness(const std::string& path, const std::string& xs, Report& rep) {
  const GfMatrix a = io::read_matrix(path);
  const Mask x = io::parse_set(xs, a.cols());
  rep.inputs["matrix"] = Json{{"file", base_name(path)}, {"p", a.prime()}, {"rows", a.rows()}, {"cols", a.cols()}};
  rep.inputs["x"] = set_json(x);
  if (column_rank(a, x) != popcount(x)) {
    const IndependentReduction red = reduce_to_independent(a, x);
    rep.check("x_independent", false, Json{{"dependent_columns", set_json(red.dropped)}, {"independent_part", set_json(x & ~red.dropped)}});
    rep.conclusion = "X is dependent";
    return;
  }
  rep.check("x_independent", true);
  const Witness w = lift_witness(a, x);
  rep.check("star_prime", check_star_prime(w.spec).holds);
  rep.check("verify_witness", verify_witness(w.spec, w.l));
  rep.body["columns"] = set_json(full_mask(a.cols()) & ~x);
  rep.body["m"] = matroid_summary(w.spec.base);
  rep.body["m"]["circuit_list"] = family_json(w.spec.base.circuits());
  rep.body["l"] = matroid_summary(w.l);
  rep.body["n"] = Json{{"elements", w.spec.overlay.size()}, {"rank", w.spec.overlay.rank()}};
  Json b = Json::array();
  for (int i = 0; i < w.b.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < w.b.cols(); ++j) row.push_back(w.b.at(i, j));
    b.push_back(row);
  }
  rep.body["b"] = b;
  rep.conclusion = "K\\X is the lift of K/X by the column matroid of B";
}

void cmd_krt_build(int r, int t, const std::string& out_path, Report& rep) {
  const KrtSpec spec(r, t);
  rep.body["params"] = Json{{"r", r}, {"t", t}, {"elements", spec.size()}};
  const Matroid k = build_krt(spec);
  rep.check("circuit_axioms", validate_circuits(k.circuits(), k.ground()).ok());
  rep.check("sparse_paving", is_sparse_paving(k));
  rep.check("intersection_certificate", intersection_certificate(spec));
  rep.body["c_prime"] = family_json(spec.c_prime());
  rep.body["c_double_prime"] = family_json(spec.c_double_prime());
  rep.body["circuit_hyperplanes"] = family_json(circuit_hyperplanes(k));
  rep.body["matroid"] = matroid_summary(k);
  if (!out_path.empty()) write_file(out_path, io::write_matroid(k));
  rep.conclusion = "K(" + std::to_string(r) + "," + std::to_string(t) + ") is a rank-" + std::to_string(r) + " sparse paving matroid";
}

Json pair_fact_json(const PairFact& f) {
  return Json{{"blocks", {f.i, f.j}}, {"union", set_json(f.blocks)}, {"nullity_m", f.nullity_m}, {"rank_m", f.rank_m},
              {"rank_l", f.rank_l}, {"holds", f.holds}};
}

Json ingleton_json(const Matroid& k, Report* rep) {
  const std::optional<IngletonWitness> w = find_ingleton_violation(k);
  Json j{{"is_ingleton", !w.has_value()}};
  if (w) {
    const IngletonValue v = ingleton_inequality(k, w->p[0], w->p[1], w->p[2], w->p[3]);
    j["witness"] = Json{{"I", set_json(w->i)},
                        {"P", {set_json(w->p[0]), set_json(w->p[1]), set_json(w->p[2]), set_json(w->p[3])}}};
    j["inequality"] = Json{{"A", set_json(w->i | w->p[0])},
                           {"B", set_json(w->i | w->p[1])},
                           {"C", set_json(w->i | w->p[2])},
                           {"D", set_json(w->i | w->p[3])},
                           {"lhs", v.lhs},
                           {"rhs", v.rhs},
                           {"satisfied", v.satisfied}};
    if (w->i != 0) {
      // With I nonempty the violation lives in the minor contracting I.
      const Matroid minor = contraction(k, w->i, Matroid::Check::trust);
      const Mask keep = k.ground_mask() & ~w->i;
      const IngletonValue mv = ingleton_inequality(minor, compress(w->p[0], keep), compress(w->p[1], keep),
                                                   compress(w->p[2], keep), compress(w->p[3], keep));
      j["inequality"] = Json{{"contract", set_json(w->i)},
                             {"A", set_json(w->p[0])},
                             {"B", set_json(w->p[1])},
                             {"C", set_json(w->p[2])},
                             {"D", set_json(w->p[3])},
                             {"lhs", mv.lhs},
                             {"rhs", mv.rhs},
                             {"satisfied", mv.satisfied}};
    }
  }
  if (rep != nullptr) rep->check("ingleton", !w.has_value(), w ? j["witness"] : Json(nullptr));
  return j;
}

Json vamos_json(const Matroid& k, Report* rep) {
  if (k.size() > 14) return Json{{"scanned", false}};
  const std::vector<VamosMinor> found = scan_vamos_like_minors(k);
  Json list = Json::array();
  for (const VamosMinor& v : found) {
    list.push_back(Json{{"contract", set_json(v.contract)},
                        {"delete", set_json(v.remove)},
                        {"partition", {set_json(v.partition[0]), set_json(v.partition[1]), set_json(v.partition[2]), set_json(v.partition[3])}}});
  }
  if (rep != nullptr) rep->check("no_vamos_like_minor", found.empty(), found.empty() ? Json(nullptr) : list[0]);
  return Json{{"scanned", true}, {"count", found.size()}, {"minors", list}};
}

Json params_json(const KrtSpec& spec) {
  return Json{{"r", spec.r}, {"t", spec.t}, {"elements", spec.size()}, {"antichain_regime", spec.antichain_regime()},
              {"ingleton_regime", spec.ingleton_regime()}};
}

void cmd_krt_certify(int r, int t, Report& rep) {
  const KrtSpec spec(r, t);
  const Matroid k = build_krt(spec);
  rep.body["params"] = params_json(spec);
  rep.body["sparse_paving"] = Json{{"holds", is_sparse_paving(k)}, {"intersection_certificate", intersection_certificate(spec)}};
  const ObstructionReport ob = obstruction_report(spec);
  Json a = Json::array();
  Json c = Json::array();
  for (const PairFact& f : ob.a) a.push_back(pair_fact_json(f));
  for (const PairFact& f : ob.c) c.push_back(pair_fact_json(f));
  rep.body["facts"] = Json{{"blocks_nonloops", ob.blocks_are_nonloops},
                           {"a", {{"holds", ob.fact_a}, {"pairs", a}}},
                           {"b", {{"holds", ob.fact_b}, {"pair", pair_fact_json(ob.b)}}},
                           {"c", {{"holds", ob.fact_c}, {"pairs", c}}},
                           {"d", {{"holds", ob.fact_d}, {"pair", pair_fact_json(ob.d)}}},
                           {"chain_forces_parallel", ob.chain_forces_parallel},
                           {"pair_forces_independent", ob.pair_forces_independent}};
  rep.check("sparse_paving", rep.body["sparse_paving"]["holds"].get<bool>() && intersection_certificate(spec));
  rep.check("blocks_nonloops", ob.blocks_are_nonloops);
  rep.check("fact_a", ob.fact_a);
  rep.check("fact_b", ob.fact_b);
  rep.check("fact_c", ob.fact_c);
  rep.check("fact_d", ob.fact_d);
  rep.check("parallel_contradiction", ob.chain_forces_parallel && ob.pair_forces_independent);
  rep.body["ingleton"] = ingleton_json(k, nullptr);
  rep.body["vamos_like_minors"] = vamos_json(k, nullptr);
  rep.conclusion = ob.certificate() ? "non-representable over every field" : "certificate incomplete";
}

void cmd_krt_ingleton(int r, int t, Report& rep) {
  const KrtSpec spec(r, t);
  rep.body["params"] = params_json(spec);
  rep.body["ingleton"] = ingleton_json(build_krt(spec), &rep);
  rep.conclusion = rep.failed ? "violates Ingleton's inequality" : "Ingleton";
}

void cmd_krt_vamos(int r, int t, Report& rep) {
  const KrtSpec spec(r, t);
  const Matroid k = build_krt(spec);
  if (k.size() > 14) throw PreconditionError("minor scan is limited to 14 elements");
  rep.body["params"] = params_json(spec);
  rep.body["vamos_like_minors"] = vamos_json(k, &rep);
  rep.conclusion = rep.failed ? "has a Vamos-like minor" : "no Vamos-like minor";
}

void cmd_gain_build(const std::string& garg, int n, const std::string& out_path, const std::string& edges_path, Report& rep) {
  const FinGroup g = load_group(garg);
  rep.inputs["group"] = group_input(garg, g);
  rep.inputs["vertices"] = n;
  const GainGraph gg(g, n);
  const Matroid graphic = graphic_matroid(gg);
  const std::vector<std::size_t> balanced = balanced_cycle_indices(gg, graphic);
  rep.body["edges"] = gg.size();
  rep.body["cycles"] = graphic.circuits().size();
  rep.body["balanced_cycles"] = balanced.size();
  rep.check("graphic_rank", graphic.rank() == n - 1);
  rep.check("balanced_linear_class", is_linear_class(graphic, balanced));
  const Matroid lift = zaslavsky_lift(gg);
  const CycleAudit audit = balanced_circuit_audit(lift, gg);
  rep.check("balanced_circuit_audit", audit.pass, audit.pass ? Json(nullptr) : set_json(audit.first_mismatch->cycle));
  rep.check("quotient", is_quotient(graphic, lift));
  rep.body["lift"] = matroid_summary(lift);
  if (!out_path.empty()) write_file(out_path, io::write_matroid(lift));
  if (!edges_path.empty()) {
    std::string text;
    for (int e = 0; e < gg.size(); ++e) {
      const GainEdge& x = gg.edge(e);
      text += std::to_string(x.i) + " " + std::to_string(x.j) + " " + g.name(x.label) + "\n";
    }
    write_file(edges_path, text);
  }
  rep.conclusion = "elementary lift of rank " + std::to_string(lift.rank());
}

void cmd_gain_lift3(const std::string& garg, const std::string& out_path, Report& rep) {
  const FinGroup g = load_group(garg);
  rep.inputs["group"] = group_input(garg, g);
  if (!primitive_partition(g)) {
    rep.check("nontrivial_partition", false);
    rep.conclusion = "no nontrivial partition";
    return;
  }
  rep.check("nontrivial_partition", true);
  const Rank2Lift r = rank2_lift_k3(g);
  rep.body["partition"] = partition_json(g, r.partition);
  rep.body["hyperplanes"] = r.hyperplanes.hyperplanes.size();
  rep.check("hyperplane_axioms", r.hyperplane_report.ok());
  rep.check("rank_4", r.lift.rank() == 4);
  rep.check("balanced_circuit_audit", r.audit.pass);
  rep.check("quotient", r.quotient);
  rep.body["lift"] = matroid_summary(r.lift);
  if (!out_path.empty()) write_file(out_path, io::write_matroid(r.lift));
  rep.conclusion = "rank-2 lift of M(K3) on " + std::to_string(r.lift.size()) + " edges";
}

void cmd_gain_partitions(const std::string& garg, Report& rep) {
  const FinGroup g = load_group(garg);
  rep.inputs["group"] = group_input(garg, g);
  const std::vector<GroupPartition> all = group_partitions(g);
  Json list = Json::array();
  for (const GroupPartition& p : all) list.push_back(partition_json(g, p));
  rep.body["partitions"] = list;
  const std::optional<GroupPartition> primitive = primitive_partition(g);
  if (!primitive) {
    rep.body["primitive"] = nullptr;
    rep.conclusion = "no nontrivial partition";
    return;
  }
  rep.body["primitive"] = partition_json(g, *primitive);
  rep.check("conjugation_closed", is_conjugation_closed(g, *primitive));
  rep.check("universality", std::all_of(all.begin(), all.end(), [&](const GroupPartition& q) { return refines(*primitive, q); }));
  rep.conclusion = "primitive partition has " + std::to_string(primitive->size()) + " parts";
}

void cmd_iso(const std::string& p1, const std::string& p2, Report& rep) {
  const Matroid a = io::read_matroid(p1);
  const Matroid b = io::read_matroid(p2);
  rep.inputs["first"] = matroid_input(p1, a);
  rep.inputs["second"] = matroid_input(p2, b);
  const IsoResult r = find_isomorphism(a, b);
  if (r.status == IsoResult::Status::budget_exceeded) {
    rep.check("isomorphic", false, Json{{"budget_exceeded", true}});
    rep.conclusion = "undecided: node budget exceeded";
    return;
  }
  Json mapping = Json::array();
  for (int f : r.mapping) mapping.push_back(f + 1);
  rep.check("isomorphic", r.found(), r.found() ? Json{{"mapping", mapping}} : Json(nullptr));
  rep.conclusion = r.found() ? "isomorphic" : "not isomorphic";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"matroid lifts, K(r,t) certificates and gain-graph lifts", "matlift"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  app.add_option("--json", json_path, "write the JSON report here ('-' for stdout)");

  Report rep;
  std::function<void()> action;
  std::string p1, p2, set, cls, xs, out_path, edges_path, garg;
  int r = 0, t = 0, n = 0;
  bool star = false, star_prime = false, force = false;

  auto* check = app.add_subcommand("check", "validate a .ckt file");
  check->add_option("matroid", p1)->required();
  check->callback([&] { action = [&] { cmd_check(p1, rep); }; });

  auto* rank = app.add_subcommand("rank", "rank and closure of a set");
  rank->add_option("matroid", p1)->required();
  rank->add_option("set", set)->required();
  rank->callback([&] { action = [&] { cmd_rank(p1, set, rep); }; });

  auto* lift = app.add_subcommand("lift", "elementary and general lifts");
  lift->require_subcommand(1);
  auto* elem = lift->add_subcommand("elementary", "elementary lift from a linear class");
  elem->add_option("matroid", p1)->required();
  elem->add_option("--class", cls, "1-based circuit indices, or a file of them")->required();
  elem->add_option("--out", out_path, "write the lift as .ckt");
  elem->callback([&] { action = [&] { cmd_lift_elementary(p1, cls, out_path, rep); }; });
  auto* general = lift->add_subcommand("general", "lift M^N from a .lift file");
  general->add_option("spec", p1)->required();
  general->add_flag("--check-star", star, "also check condition (*)");
  general->add_flag("--check-star-prime", star_prime, "check condition (*') (always on)");
  general->add_flag("--force", force, "evaluate the rank formula even when (*') fails");
  general->add_option("--out", out_path, "write the lift as .ckt");
  general->callback([&] { action = [&] { cmd_lift_general(p1, star, force, out_path, rep); }; });

  auto* repc = app.add_subcommand("rep", "representable witnesses");
  repc->require_subcommand(1);
  auto* witness = repc->add_subcommand("witness", "build N with (K/X)^N = K\\X from a matrix");
  witness->add_option("matrix", p1)->required();
  witness->add_option("--x", xs, "1-based columns of X")->required();
  witness->callback([&] { action = [&] { cmd_rep_witness(p1, xs, rep); }; });

  auto* krt = app.add_subcommand("krt", "the K(r,t) family");
  krt->require_subcommand(1);
  auto add_rt = [&](CLI::App* sub) {
    sub->add_option("r", r)->required();
    sub->add_option("t", t)->required();
  };
  auto* build = krt->add_subcommand("build", "construct K(r,t)");
  add_rt(build);
  build->add_option("--out", out_path, "write K(r,t) as .ckt");
  build->callback([&] { action = [&] { cmd_krt_build(r, t, out_path, rep); }; });
  auto* certify = krt->add_subcommand("certify", "non-representability certificate");
  add_rt(certify);
  certify->callback([&] { action = [&] { cmd_krt_certify(r, t, rep); }; });
  auto* ingleton = krt->add_subcommand("ingleton", "Ingleton criterion");
  add_rt(ingleton);
  ingleton->callback([&] { action = [&] { cmd_krt_ingleton(r, t, rep); }; });
  auto* vamos = krt->add_subcommand("vamos-scan", "search for Vamos-like minors");
  add_rt(vamos);
  vamos->callback([&] { action = [&] { cmd_krt_vamos(r, t, rep); }; });

  auto* gain = app.add_subcommand("gain", "gain graphs over finite groups");
  gain->require_subcommand(1);
  auto* gbuild = gain->add_subcommand("build", "K_n^G, its cycle matroid and the balanced-cycle lift");
  gbuild->add_option("group", garg, "a .grp file or builtin:<name>")->required();
  gbuild->add_option("n", n)->required();
  gbuild->add_option("--out", out_path, "write the lift as .ckt");
  gbuild->add_option("--edges", edges_path, "write the edges as 'i j label' lines");
  gbuild->callback([&] { action = [&] { cmd_gain_build(garg, n, out_path, edges_path, rep); }; });
  auto* lift3 = gain->add_subcommand("lift3", "rank-2 lift of M(K3^G)");
  lift3->add_option("group", garg, "a .grp file or builtin:<name>")->required();
  lift3->add_option("--out", out_path, "write the lift as .ckt");
  lift3->callback([&] { action = [&] { cmd_gain_lift3(garg, out_path, rep); }; });
  auto* parts = gain->add_subcommand("partitions", "group partitions and the primitive partition");
  parts->add_option("group", garg, "a .grp file or builtin:<name>")->required();
  parts->callback([&] { action = [&] { cmd_gain_partitions(garg, rep); }; });

  auto* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("first", p1)->required();
  iso->add_option("second", p2)->required();
  iso->callback([&] { action = [&] { cmd_iso(p1, p2, rep); }; });

  std::vector<const char*> argv{"matlift"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Json echo = Json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--json") {
      ++i;
      continue;
    }
    if (args[i].rfind("--json=", 0) == 0) continue;
    echo.push_back(std::filesystem::is_regular_file(args[i]) ? base_name(args[i]) : args[i]);
  }

  try {
    action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const AxiomError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // With --json - the report is the whole of stdout.
  std::ostringstream human;
  for (const Json& c : rep.checks) {
    human << "check " << c["name"].get<std::string>() << ": " << (c["pass"].get<bool>() ? "pass" : "FAIL");
    if (c.contains("witness")) human << "  " << c["witness"].dump();
    human << "\n";
  }
  for (const auto& [key, value] : rep.body.items()) human << key << ": " << value.dump() << "\n";
  human << "conclusion: " << rep.conclusion << "\n";
  if (json_path != "-") out << human.str();

  if (!json_path.empty()) {
    Json report{{"command", echo}, {"inputs", rep.inputs}, {"checks", rep.checks}};
    for (const auto& [key, value] : rep.body.items()) report[key] = value;
    report["conclusion"] = rep.conclusion;
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::string text = report.dump(2) + "\n";
    if (json_path == "-") {
      out << text;
    } else {
      try {
        write_file(json_path, text);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
      }
    }
  }
  return rep.failed ? 1 : 0;
}

}  // namespace matlift::cli
