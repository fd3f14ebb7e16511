#include "srgeom/io.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace srgeom {
namespace {

using nlohmann::json;

Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows) {
  std::size_t p = rows.size();
  Eigen::MatrixXd m(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    if (rows[i].size() != p)
      throw ParseError("matrix rows must all have length " + std::to_string(p));
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::isfinite(rows[i][j]))
        throw ParseError("matrix entries must be finite");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Eigen::MatrixXd parse_json_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty())
    throw ParseError("expected a non-empty JSON array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("expected a JSON array of arrays");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

Eigen::MatrixXd parse_text_matrix(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> vals;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + tok + "'");
    }
  }
  if (vals.empty()) throw ParseError("empty matrix input");
  auto p = static_cast<std::size_t>(std::llround(std::sqrt(double(vals.size()))));
  if (p * p != vals.size())
    throw ParseError("expected p*p numbers, got " + std::to_string(vals.size()));
  std::vector<std::vector<double>> rows(p, std::vector<double>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) rows[i][j] = vals[i * p + j];
  return from_rows(rows);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

int checked_samples(int samples) {
  if (samples < 2) throw InvalidInputError("samples must be at least 2");
  return samples;
}

}  // namespace

Eigen::MatrixXd parse_matrix(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' ? parse_json_matrix(text) : parse_text_matrix(text);
  }
  throw ParseError("empty matrix input");
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_json(const Eigen::MatrixXd& m, int indent) {
  return matrix_json(m).dump(indent > 0 ? indent : -1);
}

std::string curve_to_csv(const MssrCurve& c, int samples) {
  checked_samples(samples);
  int p = c.start.U.p();
  std::ostringstream out;
  out << "t";
  for (int i = 1; i <= p; ++i)
    for (int j = i; j <= p; ++j) out << ",x" << i << j;
  out << "\n";
  for (int s = 0; s < samples; ++s) {
    double t = double(s) / (samples - 1);
    Eigen::MatrixXd X = eval_curve(c, t).matrix();
    out << format_double(t);
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) out << "," << format_double(X(i, j));
    out << "\n";
  }
  return out.str();
}

std::string curve_to_json(const MssrCurve& c, int samples) {
  checked_samples(samples);
  json j;
  j["class"] = c.class_label;
  j["length"] = c.length;
  j["start"] = {{"U", matrix_json(c.start.U.matrix())},
                {"D", vector_json(c.start.D.diag())}};
  j["end"] = {{"U", matrix_json(c.end.U.matrix())},
              {"D", vector_json(c.end.D.diag())}};
  j["A"] = matrix_json(c.A);
  j["L"] = vector_json(c.L);
  json arr = json::array();
  for (int s = 0; s < samples; ++s) {
    double t = double(s) / (samples - 1);
    arr.push_back(
        {{"t", t}, {"X", matrix_json(eval_curve(c, t).matrix())}});
  }
  j["samples"] = std::move(arr);
  return j.dump(2);
}

}  // namespace srgeom
