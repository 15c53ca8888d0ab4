#include "symseq/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symseq {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

Json number_or_inf(double v) {
  if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
  return Json(v);
}

}  // namespace

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const NormBounds& nb) {
  Json j;
  j["lower"] = nb.lower;
  j["upper"] = number_or_inf(nb.upper);
  j["method"] = nb.method;
  j["converged"] = nb.converged;
  j["witness"] = to_json(nb.witness);
  return j;
}

Json to_json(const FactorizationCert& cert) {
  Json j;
  j["y1"] = to_json(cert.y1);
  j["y2"] = to_json(cert.y2);
  j["target"] = to_json(cert.target);
  j["product_error"] = cert.product_error;
  j["norm_product"] = cert.norm_product;
  j["reference_norm"] = cert.reference_norm;
  return j;
}

Json to_json(const Gamma2Cert& cert) {
  Json j;
  Json X = Json::array(), Y = Json::array();
  for (const Vec& x : cert.X) X.push_back(to_json(x));
  for (const Vec& y : cert.Y) Y.push_back(to_json(y));
  j["X"] = X;
  j["Y"] = Y;
  j["ambient_dim"] = cert.ambient_dim;
  j["value"] = cert.value;
  j["reconstruction_error"] = cert.reconstruction_error;
  return j;
}

Json to_json(const MultiplierReport& rep) {
  Json j;
  j["bounds"] = to_json(rep.bounds);
  if (rep.certificate) j["certificate"] = to_json(*rep.certificate);
  if (rep.witness_A) j["witness_A"] = to_json(*rep.witness_A);
  return j;
}

Json to_json(const GrowthCurve& curve) {
  Json j;
  j["sizes"] = curve.sizes;
  j["values"] = curve.values;
  j["uppers"] = curve.uppers;
  j["fit"] = Json{{"a", curve.fit_a}, {"b", curve.fit_b}, {"r_squared", curve.r_squared}};
  j["residuals"] = curve.residuals;
  Json flags = Json::array();
  for (bool f : curve.flagged) flags.push_back(f);
  j["flagged"] = flags;
  return j;
}

Json to_json(const ConvexityReport& rep) {
  Json j;
  j["p"] = number_or_inf(rep.p);
  j["direction"] = rep.direction == ConvexityDirection::Convex ? "convex" : "concave";
  j["lower_bound_on_constant"] = rep.lower_bound_on_constant;
  Json w = Json::array();
  for (const Vec& v : rep.witness) w.push_back(to_json(v));
  j["witness"] = w;
  return j;
}

Json to_json(const OrliczConditionReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["detail"] = rep.detail;
  j["grid"] = rep.grid;
  return j;
}

Json to_json(const EmbeddingAuditRecord& rec) {
  Json j;
  j["lower_pq"] = rec.lower_pq;
  j["lower_EF"] = rec.lower_EF;
  j["ratio"] = rec.ratio;
  j["tolerance"] = rec.tolerance;
  j["flagged"] = rec.flagged;
  return j;
}

Json to_json(const AxiomAuditRecord& rec) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : rec.entries)
    entries.push_back(Json{{"axiom", e.axiom}, {"pass", e.pass}, {"worst", e.worst}});
  j["entries"] = entries;
  j["all_pass"] = rec.all_pass;
  return j;
}

Vec parse_vec(const std::string& text) {
  std::string t = text;
  size_t first = t.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("parse_vec: empty input");
  if (t[first] == '[') {
    Json j = Json::parse(t);
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
  }
  std::vector<double> vals;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    vals.push_back(v);
  }
  if (vals.empty()) throw std::invalid_argument("parse_vec: no entries in '" + text + "'");
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

Mat parse_mat(const std::string& text) {
  std::string t = text;
  size_t first = t.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("parse_mat: empty input");
  if (t[first] == '[') {
    Json j = Json::parse(t);
    if (j.empty()) throw std::invalid_argument("parse_mat: empty JSON array");
    size_t rows = j.size(), cols = j[0].size();
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
      if (j[i].size() != cols) throw std::invalid_argument("parse_mat: ragged JSON rows");
      for (size_t k = 0; k < cols; ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
    return m;
  }
  // Row-major CSV; rows split on ';' or newlines.
  std::vector<std::vector<double>> rows;
  std::string normalized = t;
  for (char& c : normalized)
    if (c == ';') c = '\n';
  std::stringstream ss(normalized);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ','))
      if (tok.find_first_not_of(" \t\r") != std::string::npos) row.push_back(std::stod(tok));
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw std::invalid_argument("parse_mat: no rows");
  size_t cols = rows[0].size();
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("parse_mat: ragged CSV rows");
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  }
  return m;
}

Mat read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mat(ss.str());
}

std::string growth_csv(const GrowthCurve& curve) {
  std::ostringstream os;
  os << "n,lower,upper,fit_residual\n";
  for (size_t i = 0; i < curve.sizes.size(); ++i)
    os << curve.sizes[i] << ',' << format_double(curve.values[i]) << ','
       << format_double(curve.uppers[i]) << ',' << format_double(curve.residuals[i]) << '\n';
  os << "# fit a=" << format_double(curve.fit_a) << " b=" << format_double(curve.fit_b)
     << " r_squared=" << format_double(curve.r_squared) << '\n';
  return os.str();
}

}  // namespace symseq
