#include "trendblocks/io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace trendblocks {

using nlohmann::ordered_json;

double round12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  std::ostringstream os;
  os.precision(12);
  os << x;
  return std::stod(os.str());
}

DesignDocument DesignDocument::from_report(const OptimalDesignReport& r,
                                           double lambda0, double lambda1) {
  DesignDocument doc;
  doc.v = r.design.v;
  doc.b = r.design.b;
  doc.k = r.design.k;
  // store the emitted precision so a round trip reproduces the same numbers
  doc.lambda0 = round12(lambda0);
  doc.lambda1 = round12(lambda1);
  doc.order = r.order.entries;
  doc.cells = r.design.cells;
  doc.certificate = r;
  return doc;
}

DesignArray DesignDocument::design() const { return DesignArray(v, b, k, cells); }

void DesignDocument::validate() const {
  if (schema_version != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
  design().validate();
  if (static_cast<int>(order.size()) != k)
    throw std::invalid_argument("order length must equal k");
  for (int p = 0; p < k; ++p)
    if (order[p] != cells(p, 0))
      throw std::invalid_argument("order must equal the first design column");
}

namespace {

ordered_json certificate_json(const OptimalDesignReport& r) {
  ordered_json c;
  c["kstar"] = r.kstar;
  c["m_phi_zero"] = r.m_phi_zero;
  c["r_equal"] = r.r_equal;
  c["cs_ok"] = r.cs_ok;
  c["trace_ok"] = r.trace_ok;
  c["trace"] = round12(r.certificate.trace);
  c["term_block"] = round12(r.certificate.term_block);
  c["term_rr"] = round12(r.certificate.term_rr);
  c["term_mphi"] = round12(r.certificate.term_mphi);
  return c;
}

}  // namespace

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json matrix_to_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json to_json(const DesignDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["v"] = doc.v;
  j["b"] = doc.b;
  j["k"] = doc.k;
  j["lambda0"] = round12(doc.lambda0);
  j["lambda1"] = round12(doc.lambda1);
  if (doc.variance_components) {
    // JSON has no infinity literal; spell it "inf"
    auto comp = [](double x) -> ordered_json {
      if (std::isinf(x)) return "inf";
      return round12(x);
    };
    ordered_json vc;
    vc["sigma0_eps2"] = comp(doc.variance_components->sigma0_eps2);
    vc["sigma0_beta2"] = comp(doc.variance_components->sigma0_beta2);
    vc["sigma0_theta2"] = comp(doc.variance_components->sigma0_theta2);
    j["variance_components"] = vc;
  }
  j["order"] = doc.order;
  j["cells"] = matrix_to_json(doc.cells);
  if (doc.certificate) j["certificate"] = certificate_json(*doc.certificate);
  return j;
}

DesignDocument design_document_from_json(const ordered_json& j) {
  DesignDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  doc.v = j.at("v").get<int>();
  doc.b = j.at("b").get<int>();
  doc.k = j.at("k").get<int>();
  doc.lambda0 = j.at("lambda0").get<double>();
  doc.lambda1 = j.at("lambda1").get<double>();
  if (j.contains("variance_components")) {
    auto comp = [](const ordered_json& x) {
      if (x.is_string()) {
        if (x.get<std::string>() == "inf")
          return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("bad variance component");
      }
      return x.get<double>();
    };
    VarianceComponents vc;
    const auto& jv = j.at("variance_components");
    vc.sigma0_eps2 = comp(jv.at("sigma0_eps2"));
    vc.sigma0_beta2 = comp(jv.at("sigma0_beta2"));
    vc.sigma0_theta2 = comp(jv.at("sigma0_theta2"));
    doc.variance_components = vc;
  }
  doc.order = j.at("order").get<std::vector<int>>();
  const auto& rows = j.at("cells");
  doc.cells = IntMatrix(doc.k, doc.b);
  if (static_cast<int>(rows.size()) != doc.k)
    throw std::invalid_argument("cells row count must equal k");
  for (int p = 0; p < doc.k; ++p) {
    if (static_cast<int>(rows[p].size()) != doc.b)
      throw std::invalid_argument("cells column count must equal b");
    for (int jj = 0; jj < doc.b; ++jj) doc.cells(p, jj) = rows[p][jj].get<int>();
  }
  doc.validate();
  if (j.contains("certificate")) {
    const auto& c = j.at("certificate");
    OptimalDesignReport r;
    r.design = doc.design();
    r.order = r.design.column_order(0);
    r.kstar = c.at("kstar").get<int>();
    r.m_phi_zero = c.at("m_phi_zero").get<bool>();
    r.r_equal = c.at("r_equal").get<bool>();
    r.cs_ok = c.at("cs_ok").get<bool>();
    r.trace_ok = c.at("trace_ok").get<bool>();
    r.certificate.trace = c.at("trace").get<double>();
    r.certificate.term_block = c.at("term_block").get<double>();
    r.certificate.term_rr = c.at("term_rr").get<double>();
    r.certificate.term_mphi = c.at("term_mphi").get<double>();
    doc.certificate = std::move(r);
  }
  return doc;
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      std::ostringstream cell;
      cell.precision(12);
      cell << m(i, j);
      os << cell.str();
    }
    os << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

IntMatrix read_int_matrix_csv(std::istream& is) {
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("ragged CSV matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty CSV matrix");
  IntMatrix m(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

}  // namespace trendblocks
