#include "pdsw/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pdsw/errors.hpp"

namespace pdsw {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const Eigen::MatrixXd& values) {
  const auto old_precision = out.precision(17);
  out << "id";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << values(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& ids,
                      const Eigen::MatrixXd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix_csv(out, ids, values);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

LabeledMatrix read_matrix_csv(std::istream& in) {
  LabeledMatrix m;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty matrix file");
  auto header = split_csv(strip_cr(line));
  if (header.empty() || header[0] != "id") throw ParseError(1, "header must start with 'id'");
  m.ids.assign(header.begin() + 1, header.end());
  const auto n = static_cast<Eigen::Index>(m.ids.size());
  m.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto line_no = static_cast<std::size_t>(i) + 2;
    if (!std::getline(in, line)) throw ParseError(line_no, "missing matrix row");
    const auto fields = split_csv(strip_cr(line));
    if (static_cast<Eigen::Index>(fields.size()) != n + 1) {
      throw ParseError(line_no, "row has the wrong number of fields");
    }
    if (fields[0] != m.ids[static_cast<std::size_t>(i)]) {
      throw ParseError(line_no, "row id does not match header order");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& f = fields[static_cast<std::size_t>(j) + 1];
      double v = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError(line_no, "not a number: '" + f + "'");
      }
      m.values(i, j) = v;
    }
  }
  return m;
}

LabeledMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix_csv(in);
}

std::map<std::string, std::string> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::string, std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected 'id,label'");
    labels[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return labels;
}

}  // namespace pdsw
