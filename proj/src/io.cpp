#include "jframe/io.hpp"

#include <fstream>
#include <string_view>

namespace jframe::io {

namespace {

// Finds group.key, falling back to a top-level key; a non-object group stands
// for its principal key (a bare matrix under "family" is the matrix T).
const json* lookup(const json& root, const char* group, const char* key,
                   bool principal = false) {
  if (root.contains(group)) {
    const json& g = root.at(group);
    if (g.is_object()) {
      if (g.contains(key)) return &g.at(key);
    } else if (principal) {
      return &g;
    }
  }
  if (root.contains(key)) return &root.at(key);
  return nullptr;
}

dcomplex entry_from_json(const json& e) {
  if (e.is_number()) return dcomplex(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return dcomplex(e[0].get<double>(), e[1].get<double>());
  throw ParseError("matrix entry must be a number or an [re, im] pair");
}

std::vector<int> ints_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

KreinSpace space_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("space must be an object");
  if (j.contains("signature")) {
    const auto pq = ints_from_json(j.at("signature"), "signature");
    if (pq.size() != 2 || pq[0] < 0 || pq[1] < 0)
      throw ParseError("signature must be [p, q] with p, q >= 0");
    return KreinSpace::signature(pq[0], pq[1]);
  }
  if (!j.contains("J")) throw ParseError("space needs a J matrix or a signature");
  const Matrix J = matrix_from_json(j.at("J"));
  if (j.contains("dim") &&
      (!j.at("dim").is_number_integer() || j.at("dim").get<Eigen::Index>() != J.rows()))
    throw ParseError("space dim disagrees with the J matrix");
  return KreinSpace::from_symmetry(J);
}

}  // namespace

json to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c)
      M(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  return M;
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  ProblemFile p;
  if (j.contains("space")) p.space = space_from_json(j.at("space"));

  if (const json* T = lookup(j, "family", "T", /*principal=*/true)) {
    std::vector<int> labels;
    if (const json* raw = lookup(j, "family", "labels"))
      labels = ints_from_json(*raw, "labels");
    p.family = VectorFamily::from_columns(matrix_from_json(*T), std::move(labels));
  }
  if (const json* S = lookup(j, "operator", "S", /*principal=*/true))
    p.op = matrix_from_json(*S);
  if (const json* M = lookup(j, "subspace", "M", /*principal=*/true))
    p.subspace = matrix_from_json(*M);
  if (const json* ip = lookup(j, "partition", "I_plus"))
    p.I_plus = ints_from_json(*ip, "I_plus");
  if (const json* im = lookup(j, "partition", "I_minus"))
    p.I_minus = ints_from_json(*im, "I_minus");

  const auto witness = [&](const char* key) -> std::optional<Matrix> {
    if (const json* w = lookup(j, "witnesses", key)) return matrix_from_json(*w);
    return std::nullopt;
  };
  p.Q = witness("Q");
  p.S1 = witness("S1");
  p.S2 = witness("S2");
  p.T1 = witness("T1");
  p.T2 = witness("T2");
  p.T_subspace = witness("T_subspace");
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_problem(j);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json family_file(const KreinSpace& space, const VectorFamily& F) {
  json space_block;
  const Matrix sig =
      KreinSpace::signature(space.dim_plus(), space.dim_minus()).J();
  if ((space.J() - sig).norm() == 0.0)
    space_block = {{"signature", {space.dim_plus(), space.dim_minus()}}};
  else
    space_block = {{"dim", space.dim()}, {"J", to_json(space.J())}};
  return json{{"space", std::move(space_block)},
              {"family", {{"T", to_json(F.T)}, {"labels", F.labels}}}};
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace jframe::io
