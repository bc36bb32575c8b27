#include "rsvdcur/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace rsvdcur {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

std::vector<std::string> split_on(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& tok, Index line) {
  const std::string t = trim(tok);
  const char* begin = t.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError("invalid numeric value '" + tok + "'", line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + tok + "'", line);
  }
  return value;
}

Index parse_index(const std::string& tok, Index line) {
  const std::string t = trim(tok);
  const char* begin = t.c_str();
  char* end = nullptr;
  errno = 0;
  long long value = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ParseError("invalid integer '" + tok + "'", line);
  }
  return static_cast<Index>(value);
}

// Advances to the next line that is neither blank nor a '%' comment.
bool next_content_line(std::istream& in, std::string& line, Index& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '%') continue;
    return true;
  }
  return false;
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 ||
      static_cast<Index>(data.size()) != rows * cols) {
    throw ParseError("matrix block has inconsistent shape");
  }
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jc = 0; jc < cols; ++jc) m(i, jc) = data[idx++].get<double>();
  }
  return m;
}

std::ifstream open_for_reading(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  Index lineno = 0;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing banner line", 1);
  ++lineno;
  auto banner = split_ws(trim(line));
  if (banner.size() != 5 || lower(banner[0]) != "%%matrixmarket") {
    throw ParseError(
        "malformed banner: expected '%%MatrixMarket matrix <format> real general'",
        lineno);
  }
  if (lower(banner[1]) != "matrix") {
    throw ParseError("unsupported object '" + banner[1] + "'", lineno);
  }
  const std::string format = lower(banner[2]);
  if (format != "array" && format != "coordinate") {
    throw ParseError("unsupported format '" + banner[2] +
                         "': expected array or coordinate",
                     lineno);
  }
  if (lower(banner[3]) != "real") {
    throw ParseError("unsupported field '" + banner[3] + "': expected real",
                     lineno);
  }
  if (lower(banner[4]) != "general") {
    throw ParseError(
        "unsupported symmetry '" + banner[4] + "': expected general", lineno);
  }

  if (!next_content_line(in, line, lineno)) {
    throw ParseError("missing size line", lineno + 1);
  }
  auto size_tokens = split_ws(line);
  const std::size_t expected = format == "array" ? 2 : 3;
  if (size_tokens.size() != expected) {
    throw ParseError("size line must have " + std::to_string(expected) +
                         " fields",
                     lineno);
  }
  const Index rows = parse_index(size_tokens[0], lineno);
  const Index cols = parse_index(size_tokens[1], lineno);
  if (rows <= 0 || cols <= 0) {
    throw ParseError("matrix dimensions must be positive", lineno);
  }

  if (format == "array") {
    Matrix a(rows, cols);
    const Index total = rows * cols;
    Index count = 0;
    while (next_content_line(in, line, lineno)) {
      for (const auto& tok : split_ws(line)) {
        if (count >= total) {
          throw ParseError("more than " + std::to_string(total) + " entries",
                           lineno);
        }
        a(count % rows, count / rows) = parse_double(tok, lineno);
        ++count;
      }
    }
    if (count != total) {
      throw ParseError("expected " + std::to_string(total) +
                           " entries, found " + std::to_string(count),
                       lineno);
    }
    return a;
  }

  const Index nnz = parse_index(size_tokens[2], lineno);
  if (nnz < 0) throw ParseError("entry count must be non-negative", lineno);
  Matrix a = Matrix::Zero(rows, cols);
  Index count = 0;
  while (next_content_line(in, line, lineno)) {
    if (count >= nnz) {
      throw ParseError("more than " + std::to_string(nnz) + " entries",
                       lineno);
    }
    auto tokens = split_ws(line);
    if (tokens.size() != 3) {
      throw ParseError("coordinate entry must be 'row col value'", lineno);
    }
    const Index i = parse_index(tokens[0], lineno);
    const Index j = parse_index(tokens[1], lineno);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("entry index (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") out of range",
                       lineno);
    }
    a(i - 1, j - 1) += parse_double(tokens[2], lineno);
    ++count;
  }
  if (count != nnz) {
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                         std::to_string(count),
                     lineno);
  }
  return a;
}

void write_matrix_market(const std::string& path,
                         const Eigen::Ref<const Matrix>& a) {
  require_nonempty(a, "write_matrix_market");
  require_finite(a, "write_matrix_market");
  std::ofstream out = open_for_writing(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  char buf[64];
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      out << buf << '\n';
    }
  }
  finish_write(out, path);
}

Matrix read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in = open_for_reading(path);
  std::string line;
  Index lineno = 0;
  bool header_pending = skip_header;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto tokens = split_on(line, ',');
    std::vector<double> row;
    row.reserve(tokens.size());
    for (const auto& tok : tokens) row.push_back(parse_double(tok, lineno));
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("row has " + std::to_string(row.size()) +
                           " fields, expected " + std::to_string(width),
                       lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", lineno);
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return a;
}

void write_results(const std::string& path,
                   const std::vector<NoiseRecoveryRow>& rows) {
  std::ofstream out = open_for_writing(path);
  out << "k,svd_err,cur_err,rsvd_err,rsvdcur_err\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.k), r.svd_err, r.cur_err,
                  r.rsvd_err, r.rsvdcur_err);
    out << buf;
  }
  finish_write(out, path);
}

std::vector<NoiseRecoveryRow> read_noise_recovery_csv(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line", 1);
  if (trim(line) != "k,svd_err,cur_err,rsvd_err,rsvdcur_err") {
    throw ParseError("unexpected header '" + trim(line) + "'", 1);
  }
  Index lineno = 1;
  std::vector<NoiseRecoveryRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto tokens = split_on(line, ',');
    if (tokens.size() != 5) {
      throw ParseError("row must have 5 fields", lineno);
    }
    NoiseRecoveryRow row;
    row.k = parse_index(tokens[0], lineno);
    row.svd_err = parse_double(tokens[1], lineno);
    row.cur_err = parse_double(tokens[2], lineno);
    row.rsvd_err = parse_double(tokens[3], lineno);
    row.rsvdcur_err = parse_double(tokens[4], lineno);
    rows.push_back(row);
  }
  return rows;
}

void write_results(const std::string& path,
                   const std::vector<GaussMarkovRow>& rows) {
  std::ofstream out = open_for_writing(path);
  out << "k,avg_residual\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n",
                  static_cast<long long>(r.k), r.avg_residual);
    out << buf;
  }
  finish_write(out, path);
}

std::vector<GaussMarkovRow> read_gauss_markov_csv(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line", 1);
  if (trim(line) != "k,avg_residual") {
    throw ParseError("unexpected header '" + trim(line) + "'", 1);
  }
  Index lineno = 1;
  std::vector<GaussMarkovRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto tokens = split_on(line, ',');
    if (tokens.size() != 2) {
      throw ParseError("row must have 2 fields", lineno);
    }
    GaussMarkovRow row;
    row.k = parse_index(tokens[0], lineno);
    row.avg_residual = parse_double(tokens[1], lineno);
    rows.push_back(row);
  }
  return rows;
}

void write_results(const std::string& path, const DecompositionReport& report) {
  json j;
  j["k"] = report.k;
  j["selector"] = report.selector;
  if (!report.col_indices.empty()) j["col_indices"] = report.col_indices;
  if (!report.row_indices.empty()) j["row_indices"] = report.row_indices;
  if (!report.p_b.empty()) j["p_b"] = report.p_b;
  if (!report.s_g.empty()) j["s_g"] = report.s_g;
  if (report.m.size() > 0) j["m"] = matrix_to_json(report.m);
  if (report.m_a.size() > 0) j["m_a"] = matrix_to_json(report.m_a);
  if (report.m_b.size() > 0) j["m_b"] = matrix_to_json(report.m_b);
  if (report.m_g.size() > 0) j["m_g"] = matrix_to_json(report.m_g);
  json errors = json::object();
  for (const auto& [name, value] : report.errors) errors[name] = value;
  j["errors"] = std::move(errors);
  if (report.has_bounds) {
    j["bounds"] = json{{"eta_p", report.bounds.eta_p},
                       {"eta_s", report.bounds.eta_s},
                       {"eta_pb", report.bounds.eta_pb},
                       {"eta_sg", report.bounds.eta_sg},
                       {"norm_that_z", report.bounds.norm_that_z},
                       {"norm_tz22", report.bounds.norm_tz22},
                       {"norm_that_w", report.bounds.norm_that_w},
                       {"norm_tw22", report.bounds.norm_tw22},
                       {"alpha_k1", report.bounds.alpha_k1},
                       {"gamma_k1", report.bounds.gamma_k1},
                       {"bound_a", report.bounds.bound_a},
                       {"bound_b", report.bounds.bound_b},
                       {"bound_g", report.bounds.bound_g},
                       {"err_a", report.bounds.err_a},
                       {"err_b", report.bounds.err_b},
                       {"err_g", report.bounds.err_g}};
  }
  std::ofstream out = open_for_writing(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

DecompositionReport read_decomposition_json(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  DecompositionReport report;
  try {
    report.k = j.at("k").get<Index>();
    report.selector = j.at("selector").get<std::string>();
    report.col_indices = j.value("col_indices", IndexList{});
    report.row_indices = j.value("row_indices", IndexList{});
    report.p_b = j.value("p_b", IndexList{});
    report.s_g = j.value("s_g", IndexList{});
    if (j.contains("m")) report.m = matrix_from_json(j.at("m"));
    if (j.contains("m_a")) report.m_a = matrix_from_json(j.at("m_a"));
    if (j.contains("m_b")) report.m_b = matrix_from_json(j.at("m_b"));
    if (j.contains("m_g")) report.m_g = matrix_from_json(j.at("m_g"));
    for (const auto& [name, value] : j.at("errors").items()) {
      report.errors.emplace_back(name, value.get<double>());
    }
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      report.has_bounds = true;
      report.bounds.eta_p = b.at("eta_p").get<double>();
      report.bounds.eta_s = b.at("eta_s").get<double>();
      report.bounds.eta_pb = b.at("eta_pb").get<double>();
      report.bounds.eta_sg = b.at("eta_sg").get<double>();
      report.bounds.norm_that_z = b.at("norm_that_z").get<double>();
      report.bounds.norm_tz22 = b.at("norm_tz22").get<double>();
      report.bounds.norm_that_w = b.at("norm_that_w").get<double>();
      report.bounds.norm_tw22 = b.at("norm_tw22").get<double>();
      report.bounds.alpha_k1 = b.at("alpha_k1").get<double>();
      report.bounds.gamma_k1 = b.at("gamma_k1").get<double>();
      report.bounds.bound_a = b.at("bound_a").get<double>();
      report.bounds.bound_b = b.at("bound_b").get<double>();
      report.bounds.bound_g = b.at("bound_g").get<double>();
      report.bounds.err_a = b.at("err_a").get<double>();
      report.bounds.err_b = b.at("err_b").get<double>();
      report.bounds.err_g = b.at("err_g").get<double>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return report;
}

void write_results(const std::string& path, const MultiviewSelection& sel) {
  json j{{"view1", sel.view1}, {"view2", sel.view2}};
  std::ofstream out = open_for_writing(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

MultiviewSelection read_multiview_json(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  MultiviewSelection sel;
  try {
    sel.view1 = j.at("view1").get<IndexList>();
    sel.view2 = j.at("view2").get<IndexList>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed selection: ") + e.what());
  }
  return sel;
}

}  // namespace rsvdcur
