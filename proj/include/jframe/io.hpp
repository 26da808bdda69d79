#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jframe/frames.hpp"
#include "jframe/krein.hpp"
#include "jframe/types.hpp"

namespace jframe::io {

using json = nlohmann::json;

// One problem instance as read from disk.  Which fields must be present is the
// business of the command consuming it; the parser only fills what it finds.
struct ProblemFile {
  std::optional<KreinSpace> space;
  std::optional<VectorFamily> family;
  std::optional<Matrix> op;
  std::optional<Matrix> subspace;
  std::optional<std::vector<int>> I_plus;
  std::optional<std::vector<int>> I_minus;
  std::optional<Matrix> Q;
  std::optional<Matrix> S1;
  std::optional<Matrix> S2;
  std::optional<Matrix> T1;
  std::optional<Matrix> T2;
  std::optional<Matrix> T_subspace;
};

// Dense row-major matrix; every entry a [re, im] pair.
json to_json(const Matrix& M);

// Accepts entries as [re, im] pairs or bare reals; rows must be rectangular.
Matrix matrix_from_json(const json& j);

// The space block: either {"signature": [p, q]} or {"J": matrix} with an
// optional consistency "dim".
ProblemFile parse_problem(const json& j);

// ParseError on unreadable files or malformed JSON.
ProblemFile load_problem(const std::string& path);

// A self-contained problem file holding the space and the family, the form
// emitted for a synthesized frame.  Signature spaces keep the shorthand.
json family_file(const KreinSpace& space, const VectorFamily& F);

void save_json(const std::string& path, const json& j);

}  // namespace jframe::io
