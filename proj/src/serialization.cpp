#include "spintomo/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spintomo {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out)
    throw std::runtime_error("write failed: " + path);
}

nlohmann::json read_json_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json js;
  in >> js;
  return js;
}

nlohmann::json to_json(const SymbolTable &table) {
  nlohmann::json rows = nlohmann::json::array();
  for (int node = 0; node < table.node_count(); ++node) {
    const auto &qnode = table.quadrature().nodes()[node];
    for (int r = 0; r < table.projection_count(); ++r) {
      Complex v = table.value(r, node);
      rows.push_back({{"twice_m", projection_at(table.spin(), r).twice()},
                      {"theta", qnode.axis.theta()},
                      {"phi", qnode.axis.phi()},
                      {"weight", qnode.weight},
                      {"re", v.real()},
                      {"im", v.imag()}});
    }
  }
  return nlohmann::json{
      {"type", "symbol_table"},
      {"twice_j", table.spin().twice()},
      {"is_probability", table.is_probability()},
      {"quad",
       {{"polar", table.quadrature().polar_order()},
        {"azimuthal", table.quadrature().azimuthal_order()}}},
      {"rows", rows}};
}

SymbolTable symbol_table_from_json(const nlohmann::json &js) {
  if (js.value("type", "") != "symbol_table")
    throw std::runtime_error("symbol_table_from_json: wrong file type");
  SpinQuantum j(js.at("twice_j").get<int>());
  SphereQuadrature quad = SphereQuadrature::product_rule(
      js.at("quad").at("polar").get<int>(),
      js.at("quad").at("azimuthal").get<int>());
  const auto &rows = js.at("rows");
  if (static_cast<int>(rows.size()) != j.dimension() * quad.size())
    throw std::runtime_error("symbol_table_from_json: row count mismatch");

  Eigen::MatrixXcd values(j.dimension(), quad.size());
  int idx = 0;
  for (int node = 0; node < quad.size(); ++node) {
    const auto &qnode = quad.nodes()[node];
    for (int r = 0; r < j.dimension(); ++r, ++idx) {
      const auto &row = rows[idx];
      if (row.at("twice_m").get<int>() != projection_at(j, r).twice())
        throw std::runtime_error("symbol_table_from_json: row order mismatch");
      if (std::abs(row.at("theta").get<double>() - qnode.axis.theta()) > 1e-9 ||
          std::abs(row.at("phi").get<double>() - qnode.axis.phi()) > 1e-9)
        throw std::runtime_error(
            "symbol_table_from_json: node geometry does not match quadrature");
      values(r, node) =
          Complex(row.at("re").get<double>(), row.at("im").get<double>());
    }
  }
  return SymbolTable(j, std::move(quad), std::move(values),
                     js.value("is_probability", false));
}

std::string to_csv(const SymbolTable &table) {
  std::string out = "twice_m,theta,phi,weight,re,im\n";
  for (int node = 0; node < table.node_count(); ++node) {
    const auto &qnode = table.quadrature().nodes()[node];
    for (int r = 0; r < table.projection_count(); ++r) {
      Complex v = table.value(r, node);
      out += std::to_string(projection_at(table.spin(), r).twice());
      out += ',';
      out += format_full(qnode.axis.theta());
      out += ',';
      out += format_full(qnode.axis.phi());
      out += ',';
      out += format_full(qnode.weight);
      out += ',';
      out += format_full(v.real());
      out += ',';
      out += format_full(v.imag());
      out += '\n';
    }
  }
  return out;
}

nlohmann::json to_json(const DensityMatrix &rho) {
  const ComplexMatrix &m = rho.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return nlohmann::json{{"type", "density_matrix"},
                        {"dim", static_cast<int>(m.rows())},
                        {"basis", "descending_m"},
                        {"re", re},
                        {"im", im}};
}

DensityMatrix density_matrix_from_json(const nlohmann::json &js) {
  if (js.value("type", "") != "density_matrix")
    throw std::runtime_error("density_matrix_from_json: wrong file type");
  if (js.value("basis", "descending_m") != "descending_m")
    throw std::runtime_error("density_matrix_from_json: unknown basis tag");
  int dim = js.at("dim").get<int>();
  const auto &re = js.at("re");
  const auto &im = js.at("im");
  if (static_cast<int>(re.size()) != dim * dim ||
      static_cast<int>(im.size()) != dim * dim)
    throw std::runtime_error("density_matrix_from_json: array size mismatch");
  ComplexMatrix m(dim, dim);
  for (int r = 0, k = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c, ++k)
      m(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
  return DensityMatrix(std::move(m));
}

} // namespace spintomo
