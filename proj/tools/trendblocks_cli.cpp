// Command-line front end for maximin trend-robust block designs.
//
// Exit codes: 0 success, 1 invalid input, 2 infeasible parameters
// (the message names the smallest feasible b where one is known).

#include "trendblocks/builder.hpp"
#include "trendblocks/efficiency.hpp"
#include "trendblocks/io.hpp"
#include "trendblocks/model.hpp"
#include "trendblocks/search.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using namespace trendblocks;
using nlohmann::ordered_json;

namespace {

struct LambdaOpts {
  double lambda0 = std::numeric_limits<double>::quiet_NaN();
  double lambda1 = std::numeric_limits<double>::quiet_NaN();
  std::string eps2, beta2, theta2;  // variance components, "inf" allowed

  bool has_lambdas() const { return !std::isnan(lambda0) && !std::isnan(lambda1); }
  bool has_components() const { return !eps2.empty(); }

  static double parse_component(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad variance component: " + s);
    return x;
  }

  std::pair<double, double> resolve(int k) const {
    if (has_components()) {
      VarianceComponents vc;
      vc.sigma0_eps2 = parse_component(eps2);
      vc.sigma0_beta2 = beta2.empty() ? 0.0 : parse_component(beta2);
      vc.sigma0_theta2 = theta2.empty() ? 0.0 : parse_component(theta2);
      auto [l0, l1] = lambdas_from_components(vc.sigma0_eps2, vc.sigma0_beta2,
                                              vc.sigma0_theta2, k);
      if (has_lambdas() &&
          (std::abs(l0 - lambda0) > 1e-9 || std::abs(l1 - lambda1) > 1e-9))
        throw std::invalid_argument(
            "lambda values disagree with the variance components");
      return {l0, l1};
    }
    if (!has_lambdas())
      throw std::invalid_argument(
          "provide --lambda0/--lambda1 or variance components");
    require_lambda_range(k, lambda0, lambda1);
    return {lambda0, lambda1};
  }

  std::optional<VarianceComponents> components() const {
    if (!has_components()) return std::nullopt;
    VarianceComponents vc;
    vc.sigma0_eps2 = parse_component(eps2);
    vc.sigma0_beta2 = beta2.empty() ? 0.0 : parse_component(beta2);
    vc.sigma0_theta2 = theta2.empty() ? 0.0 : parse_component(theta2);
    return vc;
  }
};

void add_lambda_opts(CLI::App* cmd, LambdaOpts& lo) {
  cmd->add_option("--lambda0", lo.lambda0, "block-variance parameter in [0, 1/k]");
  cmd->add_option("--lambda1", lo.lambda1, "slope-variance parameter in [0, 1]");
  cmd->add_option("--sigma-eps2", lo.eps2, "fluctuation variance (> 0)");
  cmd->add_option("--sigma-beta2", lo.beta2, "block variance (>= 0 or inf)");
  cmd->add_option("--sigma-theta2", lo.theta2, "slope variance (>= 0 or inf)");
}

std::uint64_t oracle_budget(std::uint64_t flag_value) {
  if (const char* env = std::getenv("TRENDBLOCKS_ORACLE_BUDGET"))
    return std::strtoull(env, nullptr, 10);
  return flag_value;
}

ordered_json order_json(const Order& pi, const OrderStats& st) {
  ordered_json j;
  j["k"] = pi.k;
  j["v"] = pi.v;
  j["order"] = pi.entries;
  j["n"] = st.n;
  ordered_json h = ordered_json::array();
  for (double x : st.h) h.push_back(round12(x));
  j["h"] = h;
  j["s"] = st.s;
  j["T"] = round12(st.T);
  j["F"] = round12(st.F);
  return j;
}

void emit(const ordered_json& j, const std::string& format,
          const IntMatrix* csv_cells = nullptr) {
  if (format == "csv" && csv_cells) {
    write_matrix_csv(std::cout, *csv_cells);
    return;
  }
  std::cout << j.dump(2) << "\n";
}

DesignDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  return design_document_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximin trend-robust block designs on ordered units"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  int v = 0, k = 0, b = 0, kstar = 0, q = -1;
  std::string input, output;
  std::uint64_t budget = kDefaultOracleBudget;
  bool table1_flag = false, exhaustive = false;
  LambdaOpts lo;

  auto* design_cmd = app.add_subcommand("design", "build a maximin optimal design");
  design_cmd->add_option("--v", v, "treatments")->required();
  design_cmd->add_option("--k", k, "units per block")->required();
  design_cmd->add_option("--b", b, "blocks")->required();
  add_lambda_opts(design_cmd, lo);
  design_cmd->add_option("--output", output, "write JSON here instead of stdout");

  auto* order_cmd = app.add_subcommand("order", "optimal within-block order");
  order_cmd->add_option("--v", v, "treatments")->required();
  order_cmd->add_option("--k", k, "units per block")->required();
  add_lambda_opts(order_cmd, lo);

  auto* sba_cmd = app.add_subcommand("sba", "construct a semibalanced array");
  sba_cmd->add_option("--v", v, "symbols")->required();
  sba_cmd->add_option("--kstar", kstar, "rows")->required();
  sba_cmd->add_option("--b", b, "columns")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "minimal information matrix of a design file");
  analyze_cmd->add_option("--input", input, "design JSON file")->required();
  add_lambda_opts(analyze_cmd, lo);

  auto* eff_cmd = app.add_subcommand("efficiency", "efficiency table over a lambda grid");
  eff_cmd->add_option("--v", v, "treatments")->required();
  eff_cmd->add_option("--k", k, "units per block")->required();
  eff_cmd->add_flag("--table1", table1_flag, "use the published v=7, k=4 grid");
  std::vector<double> grid0, grid1;
  eff_cmd->add_option("--lambda0-grid", grid0, "lambda0 values");
  eff_cmd->add_option("--lambda1-grid", grid1, "lambda1 values");

  auto* verify_cmd = app.add_subcommand("verify", "certify a design file");
  verify_cmd->add_option("--input", input, "design JSON file")->required();
  verify_cmd->add_flag("--exhaustive", exhaustive, "compare against full design enumeration");
  verify_cmd->add_option("--budget", budget, "enumeration budget");
  add_lambda_opts(verify_cmd, lo);

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive best order");
  oracle_cmd->add_option("--v", v, "treatments")->required();
  oracle_cmd->add_option("--k", k, "units per block")->required();
  oracle_cmd->add_option("--budget", budget, "enumeration budget");
  add_lambda_opts(oracle_cmd, lo);

  auto* breaks_cmd = app.add_subcommand("breakpoints", "optimal-order intervals of lambda0/lambda1");
  breaks_cmd->add_option("--v", v, "treatments")->required();
  breaks_cmd->add_option("--k", k, "units per block")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (design_cmd->parsed()) {
      auto [l0, l1] = lo.resolve(k);
      auto rep = build_optimal_design(v, k, b, l0, l1);
      DesignDocument doc = DesignDocument::from_report(rep, l0, l1);
      doc.variance_components = lo.components();
      ordered_json j = to_json(doc);
      if (!output.empty()) {
        std::ofstream out(output);
        out << j.dump(2) << "\n";
      } else {
        emit(j, format, &doc.cells);
      }
    } else if (order_cmd->parsed()) {
      auto [l0, l1] = lo.resolve(k);
      Order pi = optimal_order(v, k, l0, l1);
      OrderStats st = order_stats(pi, l0, l1);
      ordered_json j = order_json(pi, st);
      OrderChoice c = classify_optimal_order(v, k, l0, l1);
      if (c.tf) {
        const char* names[] = {"TF-A", "TF-B", "TF-C", "NTF"};
        j["family"] = names[static_cast<int>(c.variant)];
      } else {
        j["family"] = "pi_q";
        j["q"] = c.q;
      }
      IntMatrix col(pi.k, 1);
      for (int p = 0; p < pi.k; ++p) col(p, 0) = pi.entries[p];
      emit(j, format, &col);
    } else if (sba_cmd->parsed()) {
      SemibalancedArray a = construct_sba(v, kstar, b);
      ordered_json j;
      j["v"] = a.v;
      j["kstar"] = a.kstar;
      j["b"] = a.b;
      j["cells"] = matrix_to_json(a.cells);
      emit(j, format, &a.cells);
    } else if (analyze_cmd->parsed()) {
      DesignDocument doc = load_document(input);
      double l0 = doc.lambda0, l1 = doc.lambda1;
      if (lo.has_lambdas() || lo.has_components())
        std::tie(l0, l1) = lo.resolve(doc.k);
      Matrix cl = minimal_info_matrix(doc.design(), l0, l1);
      ordered_json j;
      j["lambda0"] = round12(l0);
      j["lambda1"] = round12(l1);
      j["trace"] = round12(cl.trace());
      j["completely_symmetric"] = is_completely_symmetric(cl, 1e-10);
      j["c_minimal"] = matrix_to_json(cl);
      if (format == "csv")
        write_matrix_csv(std::cout, cl);
      else
        std::cout << j.dump(2) << "\n";
    } else if (eff_cmd->parsed()) {
      EfficiencyTable t;
      if (table1_flag) {
        if (v != 7 || k != 4)
          throw std::invalid_argument("--table1 is defined for --v 7 --k 4");
        t = table1();
      } else {
        if (grid0.empty() || grid1.empty())
          throw std::invalid_argument("provide --lambda0-grid and --lambda1-grid");
        std::vector<std::pair<double, double>> grid;
        for (double a : grid0)
          for (double c : grid1) grid.emplace_back(a, c);
        t = efficiency_table(v, k, grid);
      }
      if (format == "csv") {
        std::cout << "order";
        for (auto [a, c] : t.columns) std::cout << ",l0=" << a << ";l1=" << c;
        std::cout << "\n";
        for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
          std::cout << t.row_labels[r];
          for (std::size_t c = 0; c < t.columns.size(); ++c)
            std::cout << "," << t.percents[r][c];
          std::cout << "\n";
        }
      } else {
        ordered_json j;
        j["rows"] = t.row_labels;
        ordered_json cols = ordered_json::array();
        for (auto [a, c] : t.columns)
          cols.push_back({{"lambda0", round12(a)}, {"lambda1", round12(c)}});
        j["columns"] = cols;
        j["percents"] = t.percents;
        ordered_json ratios = ordered_json::array();
        for (const auto& row : t.ratios) {
          ordered_json rj = ordered_json::array();
          for (double x : row) rj.push_back(round12(x));
          ratios.push_back(std::move(rj));
        }
        j["ratios"] = ratios;
        std::cout << j.dump(2) << "\n";
      }
    } else if (verify_cmd->parsed()) {
      DesignDocument doc = load_document(input);
      double l0 = doc.lambda0, l1 = doc.lambda1;
      if (lo.has_lambdas() || lo.has_components())
        std::tie(l0, l1) = lo.resolve(doc.k);
      auto rep = certify_maximin(doc.design(), l0, l1);
      ordered_json j;
      j["m_phi_zero"] = rep.m_phi_zero;
      j["r_equal"] = rep.r_equal;
      j["cs_ok"] = rep.cs_ok;
      j["trace_ok"] = rep.trace_ok;
      j["trace"] = round12(rep.certificate.trace);
      j["term_block"] = round12(rep.certificate.term_block);
      j["term_rr"] = round12(rep.certificate.term_rr);
      j["term_mphi"] = round12(rep.certificate.term_mphi);
      if (exhaustive) {
        auto sweep = max_trace_design(doc.v, doc.k, doc.b, l0, l1,
                                      oracle_budget(budget));
        j["enumeration_max_trace"] = round12(sweep.max_trace);
        j["attains_maximum"] =
            std::abs(sweep.max_trace - rep.certificate.trace) <=
            1e-10 * std::max(1.0, std::abs(sweep.max_trace));
      }
      std::cout << j.dump(2) << "\n";
    } else if (oracle_cmd->parsed()) {
      auto [l0, l1] = lo.resolve(k);
      auto res = brute_force_optimal(v, k, l0, l1, oracle_budget(budget));
      OrderStats st = order_stats(res.order, l0, l1);
      ordered_json j = order_json(res.order, st);
      j["f_max"] = round12(res.f_max);
      j["enumerated"] = res.enumerated;
      emit(j, format);
    } else if (breaks_cmd->parsed()) {
      auto bp = optimality_breakpoints(v, k);
      ordered_json j = ordered_json::array();
      for (const auto& seg : bp) {
        ordered_json s;
        s["order"] = seg.order_label;
        s["ratio_lo"] = round12(seg.lo);
        if (std::isinf(seg.hi))
          s["ratio_hi"] = "inf";
        else
          s["ratio_hi"] = round12(seg.hi);
        j.push_back(std::move(s));
      }
      std::cout << j.dump(2) << "\n";
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    if (e.smallest_feasible_b > 0)
      std::cerr << "smallest feasible b: " << e.smallest_feasible_b << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
