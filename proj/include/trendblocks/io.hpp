#ifndef TRENDBLOCKS_IO_HPP
#define TRENDBLOCKS_IO_HPP

#include "trendblocks/builder.hpp"

#include <iosfwd>
#include "json.hpp"

namespace trendblocks {

inline constexpr const char* kSchemaVersion = "1";

/// On-disk design record. Round-trips losslessly through JSON.
struct DesignDocument {
  std::string schema_version = kSchemaVersion;
  int v = 0, b = 0, k = 0;
  double lambda0 = 0.0, lambda1 = 0.0;
  std::optional<VarianceComponents> variance_components;
  std::vector<int> order;                 // first-column order
  IntMatrix cells;                        // k x b
  std::optional<OptimalDesignReport> certificate;

  static DesignDocument from_report(const OptimalDesignReport& r,
                                    double lambda0, double lambda1);
  DesignArray design() const;
  void validate() const;
};

/// Round to 12 significant digits; all emitted floats go through this so
/// identical invocations are byte-identical.
double round12(double x);

nlohmann::ordered_json to_json(const DesignDocument& doc);
DesignDocument design_document_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
nlohmann::ordered_json matrix_to_json(const IntMatrix& m);

void write_matrix_csv(std::ostream& os, const Matrix& m);
void write_matrix_csv(std::ostream& os, const IntMatrix& m);
IntMatrix read_int_matrix_csv(std::istream& is);

}  // namespace trendblocks

#endif
