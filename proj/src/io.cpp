#include "ncg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ncg/errors.hpp"

namespace ncg {

namespace {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

}  // namespace

ThetaMatrix theta_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("theta must be a non-empty array");
  std::vector<std::vector<double>> rows;
  if (j.front().is_array()) {
    for (const auto& row : j) rows.push_back(row.get<std::vector<double>>());
  } else {
    const auto flat = j.get<std::vector<double>>();
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (k * k != flat.size()) throw std::invalid_argument("flat theta must have k*k entries");
    for (std::size_t i = 0; i < k; ++i) rows.emplace_back(flat.begin() + static_cast<long>(i * k), flat.begin() + static_cast<long>((i + 1) * k));
  }
  return ThetaMatrix::from_rows(rows);
}

Json theta_to_json(const ThetaMatrix& theta) { return theta.rows(); }

AlgebraElement element_from_json(const Json& j, const ThetaPtr& theta) {
  if (!j.is_array()) throw std::invalid_argument("element must be an array of terms");
  AlgebraElement out(theta);
  for (const auto& term : j) {
    const auto index = term.at("index").get<MultiIndex>();
    if (static_cast<int>(index.size()) != theta->dim()) throw std::invalid_argument("term index has wrong length");
    const Complex c(term.value("re", 0.0), term.value("im", 0.0));
    out += AlgebraElement::monomial(theta, index, c);
  }
  return out;
}

Json element_to_json(const AlgebraElement& a) {
  Json out = Json::array();
  for (const auto& [k, c] : a.terms()) out.push_back({{"index", k}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

Json report_to_json(const VerificationReport& report) {
  Json out = Json::array();
  for (const auto& e : report.entries()) {
    Json v = std::isfinite(e.violation) ? Json(e.violation) : Json(nullptr);
    out.push_back({{"check", e.check}, {"ref", e.ref}, {"violation", v}, {"radius", e.radius}, {"pass", e.pass}});
  }
  return out;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport report;
  for (const auto& e : j) {
    const double v = e.at("violation").is_null() ? std::nan("") : e.at("violation").get<double>();
    report.add_decided(e.at("check").get<std::string>(), e.value("ref", ""), v, e.value("radius", 0),
                       e.at("pass").get<bool>());
  }
  return report;
}

Json operator_to_json(const LinearOperator& op) {
  const auto dense = to_dense(op);
  Json rows = Json::array();
  for (Index r = 0; r < dense.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < dense.cols(); ++c) row.push_back({dense(r, c).real(), dense(r, c).imag()});
    rows.push_back(std::move(row));
  }
  const auto& s = op.space();
  return {{"space", {{"k", s.k()}, {"lambda", s.cutoff()}, {"spinor_dim", s.spinor_dim()}}},
          {"antilinear", op.antilinear()},
          {"shift_radius", op.shift_radius()},
          {"matrix", std::move(rows)}};
}

LinearOperator operator_from_json(const Json& j) {
  const auto& sp = j.at("space");
  const TruncatedSpace space(sp.at("k").get<int>(), sp.at("lambda").get<int>(), sp.value("spinor_dim", 1));
  const auto& rows = j.at("matrix");
  if (static_cast<Index>(rows.size()) != space.total_dim()) throw std::invalid_argument("matrix size does not match space");
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Index r = 0; r < space.total_dim(); ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Index>(row.size()) != space.total_dim()) throw std::invalid_argument("matrix must be square");
    for (Index c = 0; c < space.total_dim(); ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      const Complex v(e.at(0).get<double>(), e.at(1).get<double>());
      if (v != Complex{}) trips.emplace_back(r, c, v);
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m), j.value("antilinear", false), j.value("shift_radius", 2 * space.cutoff()));
}

Json family_to_json(const ConnectionFamily& family) {
  Json b = Json::array();
  for (const auto& row : family.b) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(element_to_json(x));
    b.push_back(std::move(r));
  }
  Json out = {{"n", family.n}, {"m", family.m}, {"vertical_units", family.vertical_units}, {"b", std::move(b)}};
  const bool has_extra =
      std::any_of(family.extra.begin(), family.extra.end(), [](const Presentation& p) { return !p.empty(); });
  if (has_extra) {
    Json extra = Json::array();
    for (const auto& pres : family.extra) {
      Json row = Json::array();
      for (const auto& [pp, qq] : pres) row.push_back({{"p", element_to_json(pp)}, {"q", element_to_json(qq)}});
      extra.push_back(std::move(row));
    }
    out["extra"] = std::move(extra);
  }
  return out;
}

ConnectionFamily family_from_json(const Json& j, const ThetaPtr& theta) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  if (n + m != theta->dim()) throw std::invalid_argument("family n + m must equal the theta dimension");
  auto family = ConnectionFamily::canonical(theta, n, m);
  family.vertical_units = j.value("vertical_units", true);
  if (j.contains("b")) {
    const auto& b = j.at("b");
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("family b must have n rows");
    for (int i = 0; i < n; ++i) {
      const auto& row = b[static_cast<std::size_t>(i)];
      if (static_cast<int>(row.size()) != m) throw std::invalid_argument("family b rows must have m entries");
      for (int k = 0; k < m; ++k) {
        family.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = element_from_json(row[static_cast<std::size_t>(k)], theta);
      }
    }
  }
  if (j.contains("extra")) {
    const auto& extra = j.at("extra");
    if (static_cast<int>(extra.size()) != n) throw std::invalid_argument("family extra must have n rows");
    for (int i = 0; i < n; ++i) {
      for (const auto& pair : extra[static_cast<std::size_t>(i)]) {
        family.extra[static_cast<std::size_t>(i)].emplace_back(element_from_json(pair.at("p"), theta),
                                                               element_from_json(pair.at("q"), theta));
      }
    }
  }
  return family;
}

Json recipe_to_json(const BaseRecipe& r) {
  return {{"j", r.j},
          {"n", r.n},
          {"d_prime", to_string(r.d_prime)},
          {"j0", to_string(r.j0)},
          {"gamma0", to_string(r.gamma0)},
          {"pathological", r.pathological}};
}

std::vector<SpectrumRow> merge_spectrum(const std::vector<double>& sorted, double resolution) {
  std::vector<SpectrumRow> rows;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t end = i;
    double sum = 0.0;
    while (end < sorted.size() && sorted[end] - sorted[i] <= resolution) sum += sorted[end++];
    rows.push_back({sum / static_cast<double>(end - i), static_cast<int>(end - i)});
    i = end;
  }
  return rows;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::ostringstream out;
  out << "index,eigenvalue,multiplicity\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i << ',' << format_number(rows[i].eigenvalue) << ',' << rows[i].multiplicity << '\n';
  }
  return out.str();
}

std::vector<SpectrumRow> parse_spectrum_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "index,eigenvalue,multiplicity") {
    throw std::invalid_argument("missing spectrum header");
  }
  std::vector<SpectrumRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string idx, value, mult;
    if (!std::getline(fields, idx, ',') || !std::getline(fields, value, ',') || !std::getline(fields, mult)) {
      throw std::invalid_argument("malformed spectrum row: " + line);
    }
    rows.push_back({std::stod(value), std::stoi(mult)});
  }
  return rows;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace ncg
