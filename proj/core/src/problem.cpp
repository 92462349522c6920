#include "mergepath/problem.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mergepath/error.hpp"
#include "mergepath/residuals.hpp"

namespace mergepath {
namespace {

double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

// Solves M z = rhs according to the policy.
Vec solve_linear(const Mat& M, const Vec& rhs, SolutionPolicy policy) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
  if (cod.rank() < M.rows() && policy == SolutionPolicy::RequireUnique) {
    throw Error(ErrorCode::SingularSystem, "linear system is singular; the zero set is not a single point");
  }
  Vec z = cod.solve(rhs);
  const double res = (M * z - rhs).norm();
  if (res > 1e-9 * (1.0 + rhs.norm())) {
    throw Error(ErrorCode::SingularSystem, "operator has no zero (least-squares residual " + std::to_string(res) + ")");
  }
  return z;
}

Vec gaussian_vector(std::mt19937_64& rng, Index d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(d);
  for (Index i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

Mat gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat G(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) G(i, j) = normal(rng);
  return G;
}

// mu I + c N with N = H/||H|| + K/||K||, H PSD with a zero eigenvalue and K skew,
// and c >= 0 chosen so the spectral norm equals L. Since N + N' is PSD, the norm
// is nondecreasing in c, so bisection finds c.
Mat monotone_matrix(std::mt19937_64& rng, Index d, double L, double mu) {
  Mat G = gaussian_matrix(rng, d, d);
  Mat H = G * G.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> eig(H, Eigen::EigenvaluesOnly);
  H -= eig.eigenvalues()(0) * Mat::Identity(d, d);
  H = 0.5 * (H + H.transpose());
  Mat S = gaussian_matrix(rng, d, d);
  Mat K = S - S.transpose();

  Mat N = Mat::Zero(d, d);
  if (const double h = spectral_norm(H); h > 0.0) N += H / h;
  if (const double k = spectral_norm(K); k > 0.0) N += K / k;

  const Mat I = Mat::Identity(d, d);
  const double tol = 1e-12 * std::max(1.0, L);
  if (std::abs(L - mu) <= tol || N.isZero(0.0)) {
    if (std::abs(L - mu) > tol) {
      throw Error(ErrorCode::InfeasibleConstants, "dimension 1 forces L = mu");
    }
    return mu * I;
  }
  auto norm_at = [&](double c) { return spectral_norm(mu * I + c * N); };
  double lo = 0.0;
  double hi = 1.0;
  while (norm_at(hi) < L) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) < L ? lo : hi) = mid;
  }
  const double c = std::abs(norm_at(lo) - L) < std::abs(norm_at(hi) - L) ? lo : hi;
  return mu * I + c * N;
}

void check_generated(const Mat& M, double L, double mu, bool full_rank) {
  const double norm = spectral_norm(M);
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  const double lam = eig.eigenvalues()(0);
  const double tol = 1e-9 * std::max(1.0, L);
  if (std::abs(norm - L) > tol || (full_rank && std::abs(lam - mu) > tol)) {
    throw Error(ErrorCode::InfeasibleConstants, "generator could not match the requested constants");
  }
}

ProblemSpec affine_problem(ProblemKind kind, std::string name, const Mat& M, const Vec& b) {
  ProblemSpec p;
  p.kind = kind;
  p.name = std::move(name);
  p.dimension = M.rows();
  p.n_x = M.rows();
  p.n_y = 0;
  if (M.isZero(0.0) && b.isZero(0.0)) {
    p.B = Operator::zero(M.rows());
  } else {
    p.B = Operator::affine(M, b);
  }
  p.L = p.B.lipschitz();
  p.mu = p.B.strong_monotonicity();
  return p;
}

}  // namespace

std::string_view problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Zero: return "zero";
    case ProblemKind::Affine: return "affine";
    case ProblemKind::BilinearSaddle: return "bilinear";
    case ProblemKind::SCSCQuadratic: return "random_scsc";
    case ProblemKind::RandomMonotoneAffine: return "random_monotone_affine";
    case ProblemKind::Figure1Convex: return "figure1";
    case ProblemKind::CompositeSplit: return "composite";
  }
  return "unknown";
}

ProblemSpec make_zero(Index d) {
  if (d <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  ProblemSpec p;
  p.kind = ProblemKind::Zero;
  p.name = "zero";
  p.dimension = d;
  p.n_x = d;
  p.B = Operator::zero(d);
  p.known_solution = Vec::Zero(d);
  return p;
}

ProblemSpec make_affine(const Mat& M, const Vec& b, SolutionPolicy policy) {
  if (M.rows() != M.cols() || M.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "M must be square and nonempty");
  require_dimension(b, M.rows(), "offset b");
  ProblemSpec p = affine_problem(ProblemKind::Affine, "affine", M, b);
  p.known_solution = solve_linear(M, -b, policy);
  return p;
}

ProblemSpec make_bilinear(const Mat& A, const Vec& b, const Vec& c, SolutionPolicy policy) {
  const Index n = A.rows();
  const Index m = A.cols();
  if (n == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "coupling matrix must be nonempty");
  require_dimension(b, n, "b");
  require_dimension(c, m, "c");
  const Index d = n + m;
  Mat M = Mat::Zero(d, d);
  M.topRightCorner(n, m) = A;
  M.bottomLeftCorner(m, n) = -A.transpose();
  Vec q(d);
  q << b, c;
  ProblemSpec p = affine_problem(ProblemKind::BilinearSaddle, "bilinear", M, q);
  p.n_x = n;
  p.n_y = m;
  p.mu = 0.0;
  p.known_solution = solve_linear(M, -q, policy);
  return p;
}

ProblemSpec make_random_scsc(std::uint64_t seed, Index d, double L, double mu, std::optional<Vec> z_star) {
  if (d <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(mu > 0.0) || !std::isfinite(L)) {
    throw Error(ErrorCode::InvalidArgument, "strongly monotone generator requires mu > 0 (use make_bilinear for mu = 0)");
  }
  if (mu > L) throw Error(ErrorCode::InfeasibleConstants, "mu exceeds L");
  ProblemSpec p = make_random_monotone_affine(seed, d, L, mu, std::move(z_star));
  p.kind = ProblemKind::SCSCQuadratic;
  p.name = "random_scsc";
  return p;
}

ProblemSpec make_random_monotone_affine(std::uint64_t seed, Index d, double L, double mu,
                                        std::optional<Vec> z_star, std::optional<Index> rank) {
  if (d <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(mu >= 0.0) || !(L > 0.0) || !std::isfinite(L)) {
    throw Error(ErrorCode::InvalidArgument, "generator requires L > 0 and mu >= 0");
  }
  if (mu > L) throw Error(ErrorCode::InfeasibleConstants, "mu exceeds L");
  const Index r = rank.value_or(d);
  if (r <= 0 || r > d) throw Error(ErrorCode::InvalidArgument, "rank must lie in [1, d]");
  if (r < d && mu > 0.0) throw Error(ErrorCode::InfeasibleConstants, "rank-deficient operators have mu = 0");

  std::mt19937_64 rng(seed);
  Mat M;
  if (r == d) {
    M = monotone_matrix(rng, d, L, mu);
  } else {
    Eigen::HouseholderQR<Mat> qr(gaussian_matrix(rng, d, r));
    Mat V = qr.householderQ() * Mat::Identity(d, r);
    Mat N = monotone_matrix(rng, r, L, 0.0);
    M = V * N * V.transpose();
  }
  check_generated(M, L, mu, r == d);

  Vec zs = z_star ? *z_star : gaussian_vector(rng, d);
  require_dimension(zs, d, "z_star");
  require_point(zs, "z_star");
  const Vec b = -M * zs;

  ProblemSpec p;
  p.kind = ProblemKind::RandomMonotoneAffine;
  p.name = "random_monotone_affine";
  p.dimension = d;
  p.n_x = d;
  p.B = Operator::affine(M, b);
  p.L = L;
  p.mu = mu;
  p.known_solution = std::move(zs);
  return p;
}

ProblemSpec make_figure1() {
  auto f = std::make_shared<SmoothFunction>();
  f->dim = 2;
  f->value = [](const Vec& z) { return 4.0 * z[0] * z[0] / z[1]; };
  f->gradient = [](const Vec& z) {
    Vec g(2);
    g << 8.0 * z[0] / z[1], -4.0 * z[0] * z[0] / (z[1] * z[1]);
    return g;
  };
  f->in_domain = [](const Vec& z) { return z[1] > 0.0; };
  f->domain_description = "the open half-plane x2 > 0";

  ProblemSpec p;
  p.kind = ProblemKind::Figure1Convex;
  p.name = "figure1";
  p.dimension = 2;
  p.n_x = 2;
  // The Hessian (8/x2) [1, -x1/x2]'[1, -x1/x2] has norm (8/x2)(1 + x1^2/x2^2),
  // which is at most 3.86 on |x1| <= 2, x2 >= 3; L = 4 covers that region.
  p.L = 4.0;
  p.mu = 0.0;
  p.B = Operator::gradient_field(f, p.L, p.mu);
  p.objective = f;
  Vec start(2);
  start << -2.0, 3.0;
  p.default_start = start;
  p.step_defaults = {{"AGM", 0.025}, {"anchored", 0.1}};
  return p;
}

ProblemSpec make_composite(const ProxSpec& prox_f, const ProxSpec& prox_g, const ProblemSpec& smooth,
                           std::optional<Index> n_x) {
  if (smooth.composite()) throw Error(ErrorCode::InvalidArgument, "smooth part is already composite");
  if (!smooth.B.forward_evaluable()) throw Error(ErrorCode::InvalidArgument, "smooth part must be forward-evaluable");
  const Index d = smooth.dimension;
  const Index n = n_x.value_or(smooth.n_x);
  if (n < 0 || n > d) throw Error(ErrorCode::DimensionMismatch, "x block does not fit the smooth part");

  ProblemSpec p = smooth;
  p.kind = ProblemKind::CompositeSplit;
  p.name = "composite(" + smooth.name + ")";
  p.n_x = n;
  p.n_y = d - n;
  p.A = Operator::subdifferential(BlockProx{prox_f, prox_g, n, d - n});
  p.known_solution.reset();

  const double alpha = smooth.L > 0.0 ? 1.0 / smooth.L : 1.0;
  if (smooth.known_solution && problem_residual(p, *smooth.known_solution, alpha) <= 1e-9) {
    p.known_solution = smooth.known_solution;
    return p;
  }
  // Exact resolvents are available for affine smooth parts: run averaged
  // Douglas-Rachford to high accuracy and keep the result if it certifies.
  if (p.B.affine_form()) {
    Resolvent JA(*p.A, alpha);
    Resolvent JB(p.B, alpha);
    Vec u = smooth.known_solution.value_or(Vec::Zero(d));
    for (long it = 0; it < 200000; ++it) {
      const Vec w = JB(u);
      const Vec Tu = u - w + JA(2.0 * w - u);
      if ((u - Tu).norm() <= 1e-13 * std::max(1.0, u.norm())) break;
      u = 0.5 * (u + Tu);
    }
    Vec z = JB(u);
    if (problem_residual(p, z, alpha) <= 1e-9) p.known_solution = std::move(z);
  }
  return p;
}

Vec random_point(std::uint64_t seed, Index d, double scale) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return scale * gaussian_vector(rng, d);
}

double problem_residual(const ProblemSpec& problem, const Vec& z, double alpha) {
  if (problem.composite()) return forward_backward_residual(*problem.A, problem.B, alpha, z).norm();
  return problem.B(z).norm();
}

}  // namespace mergepath
