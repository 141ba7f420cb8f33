// Command-line front end: runs the mechanisms, the lottery, the laminar
// fast path, and the audit suite on instance files. Exit codes: 0 success /
// property holds, 2 property violated (witness printed), 1 any error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcm/audit.hpp"
#include "dcm/errors.hpp"
#include "dcm/flows.hpp"
#include "dcm/gen.hpp"
#include "dcm/gps.hpp"
#include "dcm/io.hpp"
#include "dcm/lottery.hpp"
#include "dcm/opt.hpp"
#include "dcm/sdm.hpp"

namespace {

using dcm::io::json;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    dcm::io::write_json(out_path, j);
}

std::vector<int> parse_order(const dcm::Instance& inst, const std::string& spec) {
  std::vector<int> order;
  std::stringstream ss(spec);
  std::string id;
  while (std::getline(ss, id, ',')) {
    const int i = inst.student_index(id);
    if (i < 0) throw dcm::ValidationError("--order: unknown student '" + id + "'");
    order.push_back(i);
  }
  if (static_cast<int>(order.size()) != inst.num_students())
    throw dcm::ValidationError("--order must list every student exactly once");
  std::vector<bool> seen(inst.num_students(), false);
  for (int i : order) {
    if (seen[i]) throw dcm::ValidationError("--order repeats a student");
    seen[i] = true;
  }
  return order;
}

int cmd_opt(const std::string& file) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  const auto [opt, point] = dcm::compute_opt_point(inst);
  json j;
  j["opt"] = dcm::io::rational_to_json(opt);
  json table = json::object();
  for (int t = 0; t < inst.num_types(); ++t) {
    json row = json::object();
    for (int s = 0; s < inst.num_columns(); ++s)
      row[inst.school_name(s)] = dcm::io::rational_to_json(point.at(t, s));
    table[inst.types[t]] = std::move(row);
  }
  j["type_assignment"] = std::move(table);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_sd(const std::string& file, const std::string& order_spec,
           std::optional<unsigned long long> seed, bool trace,
           const std::string& out_path) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  if (!order_spec.empty() && seed)
    throw dcm::ValidationError("--order and --seed are mutually exclusive");
  std::vector<int> order;
  if (!order_spec.empty())
    order = parse_order(inst, order_spec);
  else if (seed)
    order = dcm::shuffled_order(inst.num_students(), *seed);
  else
    for (int i = 0; i < inst.num_students(); ++i) order.push_back(i);
  const dcm::SdmResult result = dcm::run_sdm(inst, order);
  emit(dcm::io::sdm_result_to_json(result, inst, seed, trace), out_path);
  return 0;
}

int cmd_gps(const std::string& file, bool lottery, bool trace,
            const std::string& out_path) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  const dcm::GpsResult result = dcm::run_gps(inst);
  json j = dcm::io::gps_result_to_json(result, inst, trace);
  if (lottery)
    j["lottery"] =
        dcm::io::lottery_to_json(dcm::decompose(result.x, inst, result.opt), inst);
  emit(j, out_path);
  return 0;
}

int cmd_lottery(const std::string& file, const std::string& result_path,
                const std::string& out_path) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  const json stored = dcm::io::read_json(result_path);
  const dcm::StudentAssignment x =
      dcm::io::fractional_matrix_from_result(stored, inst);
  const dcm::Rational opt = dcm::compute_opt(inst);
  const dcm::Lottery lottery = dcm::decompose(x, inst, opt);
  emit(dcm::io::lottery_to_json(lottery, inst), out_path);
  return 0;
}

int cmd_laminar(const std::string& file) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  if (!dcm::is_laminar(inst)) {
    std::cerr << "instance is not laminar\n";
    return 1;
  }
  const std::vector<int> alloc = dcm::integral_opt_laminar(inst);
  json j;
  j["opt"] = dcm::io::rational_to_json(dcm::compute_opt(inst));
  json out = json::object();
  for (size_t i = 0; i < alloc.size(); ++i)
    out[inst.students[i].id] = inst.school_name(alloc[i]);
  j["allocation"] = std::move(out);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int report_exit(const dcm::AuditReport& report) {
  std::cout << report.property << ": " << (report.holds ? "holds" : "violated")
            << '\n';
  if (!report.holds) std::cout << "witness: " << report.witness << '\n';
  return report.holds ? 0 : 2;
}

int cmd_audit(const std::string& file, const std::string& mechanism,
              const std::string& check, const std::string& order_spec,
              long n_seeds) {
  const dcm::Instance inst = dcm::io::parse_instance(file);
  if (mechanism != "sd" && mechanism != "gps")
    throw dcm::ValidationError("--mechanism must be sd or gps");

  std::vector<int> order;
  if (!order_spec.empty())
    order = parse_order(inst, order_spec);
  else
    for (int i = 0; i < inst.num_students(); ++i) order.push_back(i);

  if (check == "feasibility") {
    dcm::ViolationReport violations;
    if (mechanism == "sd") {
      const dcm::SdmResult r = dcm::run_sdm(inst, order);
      const auto [lo, hi] = dcm::SdmState{r.y, r.delta, {}, {}, r.opt}
                                .adjusted_quotas(inst);
      violations = dcm::check_feasible(r.y, lo, hi, inst);
    } else {
      const dcm::GpsResult r = dcm::run_gps(inst);
      violations = dcm::check_feasible(dcm::type_profile(r.x, inst), inst);
    }
    std::cout << "feasibility: " << (violations.empty() ? "holds" : "violated")
              << '\n';
    for (const auto& v : violations)
      std::cout << "witness: constraint " << v.constraint << " "
                << (v.direction == dcm::Direction::Lower ? "below lower" : "above upper")
                << " by " << dcm::rational_str(v.magnitude) << '\n';
    return violations.empty() ? 0 : 2;
  }
  if (check == "pareto") {
    if (mechanism != "sd")
      throw dcm::ValidationError("pareto audits the sd mechanism's integral outcome");
    const dcm::SdmResult r = dcm::run_sdm(inst, order);
    const auto [lo, hi] =
        dcm::SdmState{r.y, r.delta, {}, {}, r.opt}.adjusted_quotas(inst);
    return report_exit(dcm::check_pareto(r.allocation, inst, lo, hi));
  }
  if (check == "sp") return report_exit(dcm::check_strategyproof(inst, order));
  if (check == "wsp") return report_exit(dcm::check_weak_sp(inst));
  if (check == "envy") {
    if (mechanism != "gps")
      throw dcm::ValidationError("envy audits the gps fractional outcome");
    return report_exit(dcm::check_envy_free(dcm::run_gps(inst).x, inst));
  }
  if (check == "ordinal") {
    if (mechanism != "gps")
      throw dcm::ValidationError("ordinal audits the gps fractional outcome");
    return report_exit(dcm::check_ordinal_efficiency(dcm::run_gps(inst).x, inst));
  }
  if (check == "symmetry")
    return report_exit(dcm::check_rsd_symmetry(inst, n_seeds));
  throw dcm::ValidationError("unknown check: '" + check + "'");
}

int cmd_gen(const dcm::GenParams& params, const std::string& style,
            const std::string& out_path) {
  dcm::GenParams p = params;
  p.style = dcm::constraint_style_from_name(style);
  const dcm::Instance inst = dcm::gen_instance(p);
  dcm::io::write_instance(out_path, inst);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch engine for assignment mechanisms under quota constraints"};
  app.require_subcommand(1);

  std::string file, out_path, order_spec, mechanism, check, style = "pairs";
  std::optional<unsigned long long> seed;
  bool trace = false, lottery = false;
  std::string result_path;
  long n_seeds = 1000;
  dcm::GenParams gen_params;

  auto* opt_cmd = app.add_subcommand("opt", "Fractional allocative-efficiency optimum");
  opt_cmd->add_option("file", file)->required();

  auto* sd_cmd = app.add_subcommand("sd", "Serial dictatorship with dynamic menus");
  sd_cmd->add_option("file", file)->required();
  sd_cmd->add_option("--order", order_spec, "comma-separated student ids");
  sd_cmd->add_option("--seed", seed, "random processing order");
  sd_cmd->add_flag("--trace", trace);
  sd_cmd->add_option("-o,--output", out_path);

  auto* gps_cmd = app.add_subcommand("gps", "Generalized probabilistic serial");
  gps_cmd->add_option("file", file)->required();
  gps_cmd->add_flag("--lottery", lottery, "also decompose into a lottery");
  gps_cmd->add_flag("--trace", trace);
  gps_cmd->add_option("-o,--output", out_path);

  auto* lot_cmd = app.add_subcommand("lottery", "Decompose a stored fractional result");
  lot_cmd->add_option("file", file)->required();
  lot_cmd->add_option("--from", result_path, "result file with a fractional matrix")
      ->required();
  lot_cmd->add_option("-o,--output", out_path);

  auto* lam_cmd = app.add_subcommand("laminar", "Integral fast path for laminar instances");
  lam_cmd->add_option("file", file)->required();

  auto* audit_cmd = app.add_subcommand("audit", "Property audits");
  audit_cmd->add_option("file", file)->required();
  audit_cmd->add_option("--mechanism", mechanism)->required();
  audit_cmd
      ->add_option("--check", check,
                   "feasibility|pareto|sp|wsp|envy|ordinal|symmetry")
      ->required();
  audit_cmd->add_option("--order", order_spec);
  audit_cmd->add_option("--seeds", n_seeds, "sample count for symmetry");

  auto* gen_cmd = app.add_subcommand("gen", "Deterministic random instance generator");
  gen_cmd->add_option("--seed", gen_params.seed);
  gen_cmd->add_option("--students", gen_params.n_students);
  gen_cmd->add_option("--schools", gen_params.n_schools);
  gen_cmd->add_option("--types", gen_params.n_types);
  gen_cmd->add_option("--style", style, "pairs|laminar|random-subsets");
  gen_cmd->add_option("--tightness", gen_params.bound_tightness);
  gen_cmd->add_option("-o,--output", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt_cmd->parsed()) return cmd_opt(file);
    if (sd_cmd->parsed()) return cmd_sd(file, order_spec, seed, trace, out_path);
    if (gps_cmd->parsed()) return cmd_gps(file, lottery, trace, out_path);
    if (lot_cmd->parsed()) return cmd_lottery(file, result_path, out_path);
    if (lam_cmd->parsed()) return cmd_laminar(file);
    if (audit_cmd->parsed())
      return cmd_audit(file, mechanism, check, order_spec, n_seeds);
    if (gen_cmd->parsed()) return cmd_gen(gen_params, style, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
