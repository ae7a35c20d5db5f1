#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pdsw {

struct LabeledMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;
};

/// `id,<id1>,...,<idn>` header, then `<idi>,v1,...,vn` rows, 17 significant digits.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const Eigen::MatrixXd& values);
void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& ids,
                      const Eigen::MatrixXd& values);

LabeledMatrix read_matrix_csv(std::istream& in);
LabeledMatrix read_matrix_csv(const std::filesystem::path& path);

/// `id,label` per line; blank lines and '#' comments skipped.
std::map<std::string, std::string> read_labels(const std::filesystem::path& path);

}  // namespace pdsw
