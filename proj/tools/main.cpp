#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "jframe/cone.hpp"
#include "jframe/io.hpp"
#include "jframe/jframes.hpp"
#include "jframe/linalg.hpp"
#include "jframe/operator_check.hpp"
#include "jframe/types.hpp"

using namespace jframe;
using io::json;

namespace {

struct Options {
  double tol_scale = 1.0;
  int oracle = 0;
  std::uint64_t seed = 1;
  std::string json_path;
  bool quiet = false;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string num(dcomplex z) {
  if (std::abs(z.imag()) == 0.0) return num(z.real());
  char buf[88];
  std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", z.real(), z.imag());
  return buf;
}

void print_matrix(const char* name, const Matrix& M) {
  std::printf("%s =\n", name);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    std::printf("  [");
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      std::printf(" %s", num(M(i, j)).c_str());
    std::printf(" ]\n");
  }
}

std::string index_list(const std::vector<int>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i)
    out += (i ? ", " : "") + std::to_string(idx[i]);
  return out + "}";
}

json cone_to_json(const ConeAngleReport& r) {
  return {{"c0", r.c0},           {"theta", r.theta}, {"alpha", r.alpha},
          {"K_norm", r.K_norm},   {"phi", r.phi},     {"aperture", r.aperture},
          {"contains_neutral", r.contains_neutral}};
}

void describe_side(const char* name, const SubspaceClassification& cls, bool quiet) {
  if (quiet) return;
  std::printf("%s: kind %s", name, to_string(cls.kind));
  if (cls.definiteness_bound) std::printf(", alpha = %s", num(*cls.definiteness_bound).c_str());
  if (cls.uniformly_definite) std::printf(cls.maximal ? ", maximal" : ", not maximal");
  if (cls.degenerate_part_dim > 0)
    std::printf(", isotropic dim %d", cls.degenerate_part_dim);
  std::printf("\n");
}

Vector probe_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector f(n);
  for (int i = 0; i < n; ++i) f(i) = dcomplex(gauss(rng), gauss(rng));
  return f / f.norm();
}

int run_analyze(const io::ProblemFile& p, const Options& opt, const Tolerances& tol) {
  if (!p.space || !p.family)
    throw ParseError("analyze needs a space and a family");
  const KreinSpace& space = *p.space;
  const JFrameReport rep = is_j_frame(space, *p.family, tol);

  json out = {{"command", "analyze"},
              {"verdict", rep.is_j_frame},
              {"reason", rep.reason},
              {"partition",
               {{"I_plus", rep.partition.I_plus}, {"I_minus", rep.partition.I_minus}}}};
  const bool hilbert = space.dim_minus() == 0;
  if (hilbert) out["note"] = "no negative side: space is Hilbert";

  if (!opt.quiet) {
    std::printf("partition: I+ = %s  I- = %s\n", index_list(rep.partition.I_plus).c_str(),
                index_list(rep.partition.I_minus).c_str());
    if (hilbert) std::printf("no negative side: space is Hilbert\n");
  }
  describe_side("M+", rep.class_plus, opt.quiet);
  describe_side("M-", rep.class_minus, opt.quiet);
  const auto side_json = [](const SubspaceClassification& cls) {
    json s = {{"kind", to_string(cls.kind)},
              {"maximal", cls.maximal},
              {"isotropic_dim", cls.degenerate_part_dim}};
    if (cls.definiteness_bound) s["alpha"] = *cls.definiteness_bound;
    return s;
  };
  out["classification"] = {{"plus", side_json(rep.class_plus)},
                           {"minus", side_json(rep.class_minus)}};

  if (!opt.quiet)
    std::printf("verdict: %s%s%s\n", rep.is_j_frame ? "J-frame" : "not a J-frame",
                rep.reason.empty() ? "" : " - ", rep.reason.c_str());

  if (rep.bounds) {
    const JFrameBounds& b = *rep.bounds;
    json jb;
    if (b.minus) {
      jb["A_minus"] = b.minus->A;
      jb["B_minus"] = b.minus->B;
    }
    if (b.plus) {
      jb["A_plus"] = b.plus->A;
      jb["B_plus"] = b.plus->B;
    }
    if (b.crude_minus) jb["crude_minus"] = {b.crude_minus->A, b.crude_minus->B};
    if (b.crude_plus) jb["crude_plus"] = {b.crude_plus->A, b.crude_plus->B};
    out["bounds"] = jb;
    if (!opt.quiet) {
      std::printf("bounds (B-, A-, A+, B+) = (%s, %s, %s, %s)\n",
                  b.minus ? num(b.minus->B).c_str() : "-",
                  b.minus ? num(b.minus->A).c_str() : "-",
                  b.plus ? num(b.plus->A).c_str() : "-",
                  b.plus ? num(b.plus->B).c_str() : "-");
      if (b.crude_plus || b.crude_minus)
        std::printf("crude  (B-, A-, A+, B+) = (%s, %s, %s, %s)\n",
                    b.crude_minus ? num(b.crude_minus->B).c_str() : "-",
                    b.crude_minus ? num(b.crude_minus->A).c_str() : "-",
                    b.crude_plus ? num(b.crude_plus->A).c_str() : "-",
                    b.crude_plus ? num(b.crude_plus->B).c_str() : "-");
    }
  }

  const ConeAngleReport cone_plus = cone_correlation(space, rep.M_plus, tol);
  const ConeAngleReport cone_minus = cone_correlation(space, rep.M_minus, tol);
  out["cone"] = {{"plus", cone_to_json(cone_plus)}, {"minus", cone_to_json(cone_minus)}};
  if (!opt.quiet)
    std::printf("cone angles: theta(M+) = %s, theta(M-) = %s\n",
                num(cone_plus.theta).c_str(), num(cone_minus.theta).c_str());

  if (rep.S) out["S"] = io::to_json(*rep.S);
  if (rep.S_plus) out["S_plus"] = io::to_json(*rep.S_plus);
  if (rep.S_minus) out["S_minus"] = io::to_json(*rep.S_minus);
  if (rep.Q) out["Q"] = io::to_json(*rep.Q);

  if (rep.is_j_frame) {
    const Vector f = probe_vector(space.dim(), opt.seed);
    const Reconstruction rec = indefinite_reconstruct(space, rep, f, tol);
    const double resid = (f - rec.rebuilt).norm() / f.norm();
    out["reconstruction_residual"] = resid;
    if (!opt.quiet) std::printf("reconstruction residual: %s\n", num(resid).c_str());
    if (!opt.quiet && rep.S) print_matrix("S", *rep.S);
  }

  if (!opt.json_path.empty()) io::save_json(opt.json_path, out);
  return rep.is_j_frame ? 0 : 2;
}

int run_synthesize(const io::ProblemFile& p, const Options& opt, const Tolerances& tol) {
  if (!p.space || !p.S1 || !p.S2)
    throw ParseError("synthesize needs a space and the witnesses S1, S2");
  const KreinSpace& space = *p.space;
  const VectorFamily fam =
      construct_j_frame_from_operator(space, *p.S1, *p.S2, tol, 0, 0, opt.seed);
  const JFrameReport rep = is_j_frame(space, fam, tol);
  const Matrix target = *p.S1 - *p.S2;
  const double resid = linalg::operator_norm(*rep.S - target) /
                       std::max(1.0, linalg::operator_norm(target));

  const json out = io::family_file(space, fam);
  const bool to_stdout = opt.json_path.empty();
  if (!to_stdout) io::save_json(opt.json_path, out);
  if (!opt.quiet) {
    std::FILE* log = to_stdout ? stderr : stdout;
    std::fprintf(log, "synthesized %d vectors, operator residual %s, %s\n", fam.size(),
                 num(resid).c_str(), rep.is_j_frame ? "J-frame" : "not a J-frame");
  }
  if (to_stdout) std::printf("%s\n", out.dump(2).c_str());
  return rep.is_j_frame ? 0 : 2;
}

int run_check_operator(const io::ProblemFile& p, const Options& opt,
                       const Tolerances& tol) {
  if (!p.space || !p.op)
    throw ParseError("check-operator needs a space and an operator");
  const KreinSpace& space = *p.space;
  const Matrix& S = *p.op;
  if (S.rows() != space.dim() || S.cols() != space.dim())
    throw DimensionError("operator does not match the space dimension");

  const Matrix JS = space.J() * S;
  const double herm_resid =
      linalg::operator_norm(JS - JS.adjoint()) / std::max(1.0, linalg::operator_norm(JS));
  const bool selfadjoint = herm_resid <= tol.structure;
  const bool invertible = linalg::numeric_rank(S, tol) == space.dim();

  json out = {{"command", "check-operator"},
              {"j_selfadjoint", selfadjoint},
              {"j_selfadjoint_residual", herm_resid},
              {"invertible", invertible}};
  if (!opt.quiet) {
    std::printf("J-selfadjoint: %s (residual %s)\n", selfadjoint ? "yes" : "no",
                num(herm_resid).c_str());
    std::printf("invertible: %s\n", invertible ? "yes" : "no");
  }
  if (!selfadjoint || !invertible) {
    out["verdict"] = false;
    if (!opt.quiet) std::printf("verdict: not a J-frame operator\n");
    if (!opt.json_path.empty()) io::save_json(opt.json_path, out);
    return 2;
  }

  const auto ind = index_signature(space, S, tol);
  out["ind"] = {ind.first, ind.second};
  if (!opt.quiet) std::printf("ind = (%d, %d)\n", ind.first, ind.second);

  // Candidate witnesses, cheapest first: whatever the file supplies, the
  // fundamental projection, and the spectral projection of JS.
  std::vector<std::pair<std::string, Matrix>> candidates;
  if (p.Q) candidates.emplace_back("supplied Q", *p.Q);
  candidates.emplace_back("(I+J)/2", space.projection_plus());
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::hermitize(JS));
    int neg = 0;
    while (neg < es.eigenvalues().size() && es.eigenvalues()(neg) < 0.0) ++neg;
    const Matrix Bp = es.eigenvectors().rightCols(es.eigenvalues().size() - neg);
    candidates.emplace_back("spectral projection of JS", Bp * Bp.adjoint());
  }

  bool verdict = false;
  json tried = json::array();
  for (const auto& [name, Q] : candidates) {
    json entry = {{"witness", name}};
    try {
      const OperatorCertificate cert = is_j_frame_operator(space, S, Q, tol);
      entry["verdict"] = cert.verdict;
      for (const auto& [key, value] : cert.diagnostics) entry[key] = value;
      if (!opt.quiet) std::printf("witness %s: %s\n", name.c_str(),
                                  cert.verdict ? "accepted" : "rejected");
      verdict = verdict || cert.verdict;
    } catch (const Error& e) {
      entry["error"] = e.what();
      if (!opt.quiet) std::printf("witness %s: error - %s\n", name.c_str(), e.what());
    }
    tried.push_back(std::move(entry));
  }

  if (p.T_subspace) {
    json entry = {{"witness", "image test"}};
    try {
      const OperatorCertificate cert = positive_image_test(
          space, S, SubspaceBasis::from_span(*p.T_subspace, tol), tol);
      entry["verdict"] = cert.verdict;
      for (const auto& [key, value] : cert.diagnostics) entry[key] = value;
      if (!opt.quiet)
        std::printf("image test: %s\n", cert.verdict ? "accepted" : "rejected");
      verdict = verdict || cert.verdict;
    } catch (const Error& e) {
      entry["error"] = e.what();
      if (!opt.quiet) std::printf("image test: error - %s\n", e.what());
    }
    tried.push_back(std::move(entry));
  }

  if (p.T1 && p.T2 && p.family) {
    json entry = {{"witness", "split reordering"}};
    try {
      const OperatorCertificate cert =
          unitary_reordering_test(space, p.family->T, *p.T1, *p.T2, tol);
      entry["verdict"] = cert.verdict;
      for (const auto& [key, value] : cert.diagnostics) entry[key] = value;
      if (!opt.quiet)
        std::printf("split reordering: %s\n", cert.verdict ? "accepted" : "rejected");
      verdict = verdict || cert.verdict;
    } catch (const Error& e) {
      entry["error"] = e.what();
      if (!opt.quiet) std::printf("split reordering: error - %s\n", e.what());
    }
    tried.push_back(std::move(entry));
  }

  out["witnesses"] = std::move(tried);
  out["verdict"] = verdict;
  if (!verdict) {
    const std::string note = "ind=(" + std::to_string(ind.first) + "," +
                             std::to_string(ind.second) +
                             ") but no admissible Q found among tried witnesses";
    out["note"] = note;
    if (!opt.quiet) std::printf("%s\n", note.c_str());
  }
  if (!opt.quiet)
    std::printf("verdict: %s\n",
                verdict ? "J-frame operator" : "not certified as a J-frame operator");
  if (!opt.json_path.empty()) io::save_json(opt.json_path, out);
  return verdict ? 0 : 2;
}

int run_angle(const io::ProblemFile& p, const Options& opt, const Tolerances& tol) {
  if (!p.space || !p.subspace)
    throw ParseError("angle needs a space and a subspace");
  const KreinSpace& space = *p.space;
  const SubspaceBasis M = SubspaceBasis::from_span(*p.subspace, tol);
  const ConeAngleReport rep = cone_correlation(space, M, tol);

  json out = cone_to_json(rep);
  out["command"] = "angle";
  if (!opt.quiet) {
    std::printf("c0 = %s\ntheta = %s\nalpha = %s\n", num(rep.c0).c_str(),
                num(rep.theta).c_str(), num(rep.alpha).c_str());
    std::printf("K_norm = %s\naperture = %s\nphi = %s\n", num(rep.K_norm).c_str(),
                num(rep.aperture).c_str(), num(rep.phi).c_str());
    if (rep.contains_neutral) std::printf("subspace contains neutral vectors\n");
  }
  if (opt.oracle > 0) {
    const double est = cone_correlation_oracle(space, M, opt.oracle, opt.seed, tol);
    out["oracle_c0"] = est;
    if (!opt.quiet) std::printf("oracle c0 (%d samples) = %s\n", opt.oracle, num(est).c_str());
  }
  if (!opt.json_path.empty()) io::save_json(opt.json_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"J-frame analysis on finite dimensional Krein spaces"};
  app.require_subcommand(1);

  Options opt;
  std::string path;
  bool synthesize_flag = false;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", path, "problem file (JSON)")->required();
    cmd->add_option("--tol", opt.tol_scale, "scale every tolerance by this factor");
    cmd->add_option("--oracle", opt.oracle, "sample count for the cone oracle");
    cmd->add_option("--seed", opt.seed, "seed for randomized probes");
    cmd->add_option("--json", opt.json_path, "write the JSON report to this path");
    cmd->add_flag("--quiet", opt.quiet, "suppress the human readable report");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "detect a J-frame and report its data");
  add_common(analyze);
  CLI::App* check =
      app.add_subcommand("check-operator", "certify an operator as a J-frame operator");
  add_common(check);
  check->add_flag("--synthesize", synthesize_flag,
                  "build the frame from the witnesses S1, S2");
  CLI::App* angle = app.add_subcommand("angle", "angles of a subspace to the neutral cone");
  add_common(angle);
  CLI::App* synth =
      app.add_subcommand("synthesize", "build a J-frame from an operator split");
  add_common(synth);

  CLI11_PARSE(app, argc, argv);
  const Tolerances tol = Tolerances{}.scaled(opt.tol_scale);

  try {
    const io::ProblemFile p = io::load_problem(path);
    if (analyze->parsed()) return run_analyze(p, opt, tol);
    if (angle->parsed()) return run_angle(p, opt, tol);
    if (synth->parsed() || synthesize_flag) return run_synthesize(p, opt, tol);
    return run_check_operator(p, opt, tol);
  } catch (const NeutralVectorError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const NotAJFrameError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const NotAFrameError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const NotSurjectiveError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const OperatorError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
