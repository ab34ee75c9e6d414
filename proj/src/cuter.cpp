// Reimplementations of CUTEr test functions. Each follows the published SIF
// formulation and its standard starting point.
#include "nbbl1/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace nbbl1 {

namespace {

void require_dim(const Vector& x, std::size_t n) {
  if (static_cast<std::size_t>(x.size()) != n) {
    throw DimensionError("test problem: point has wrong dimension");
  }
}

class Vardim final : public SmoothObjective {
 public:
  explicit Vardim(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

  double value_and_gradient(const Vector& x, Vector& grad) const override {
    require_dim(x, n_);
    double sq = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double r = x[static_cast<Eigen::Index>(i)] - 1.0;
      sq += r * r;
      s += static_cast<double>(i + 1) * r;
    }
    const double s2 = s * s;
    const double outer = 2.0 * s + 4.0 * s * s2;
    grad.resize(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      grad[ii] = 2.0 * (x[ii] - 1.0) + static_cast<double>(i + 1) * outer;
    }
    return sq + s2 + s2 * s2;
  }

 private:
  std::size_t n_;
};

class Cosine final : public SmoothObjective {
 public:
  explicit Cosine(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

  double value_and_gradient(const Vector& x, Vector& grad) const override {
    require_dim(x, n_);
    grad = Vector::Zero(static_cast<Eigen::Index>(n_));
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double u = x[i] * x[i] - 0.5 * x[i + 1];
      f += std::cos(u);
      const double su = std::sin(u);
      grad[i] -= 2.0 * x[i] * su;
      grad[i + 1] += 0.5 * su;
    }
    return f;
  }

 private:
  std::size_t n_;
};

class Genrose final : public SmoothObjective {
 public:
  explicit Genrose(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

  double value_and_gradient(const Vector& x, Vector& grad) const override {
    require_dim(x, n_);
    grad = Vector::Zero(static_cast<Eigen::Index>(n_));
    double f = 1.0;
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      const double t = x[i] - x[i - 1] * x[i - 1];
      const double r = x[i] - 1.0;
      f += 100.0 * t * t + r * r;
      grad[i] += 200.0 * t + 2.0 * r;
      grad[i - 1] -= 400.0 * t * x[i - 1];
    }
    return f;
  }

 private:
  std::size_t n_;
};

// Wood function block on (a, b, c, d):
//   100(b - a^2)^2 + (1 - a)^2 + 90(d - c^2)^2 + (1 - c)^2
//   + 10(b + d - 2)^2 + 0.1(b - d)^2
double wood_block(const Vector& x, Eigen::Index base, Vector& grad) {
  const double a = x[base], b = x[base + 1], c = x[base + 2], d = x[base + 3];
  const double t1 = b - a * a;
  const double t2 = d - c * c;
  const double e = b + d - 2.0;
  const double g = b - d;
  grad[base] += -400.0 * a * t1 - 2.0 * (1.0 - a);
  grad[base + 1] += 200.0 * t1 + 20.0 * e + 0.2 * g;
  grad[base + 2] += -360.0 * c * t2 - 2.0 * (1.0 - c);
  grad[base + 3] += 180.0 * t2 + 20.0 * e - 0.2 * g;
  return 100.0 * t1 * t1 + (1.0 - a) * (1.0 - a) + 90.0 * t2 * t2 +
         (1.0 - c) * (1.0 - c) + 10.0 * e * e + 0.1 * g * g;
}

class Woods final : public SmoothObjective {
 public:
  explicit Woods(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

  double value_and_gradient(const Vector& x, Vector& grad) const override {
    require_dim(x, n_);
    grad = Vector::Zero(static_cast<Eigen::Index>(n_));
    double f = 0.0;
    for (Eigen::Index base = 0; base < x.size(); base += 4) {
      f += wood_block(x, base, grad);
    }
    return f;
  }

 private:
  std::size_t n_;
};

// Overlapping Wood blocks with stride 2 plus a constant 1.
class Chainwoo final : public SmoothObjective {
 public:
  explicit Chainwoo(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }

  double value_and_gradient(const Vector& x, Vector& grad) const override {
    require_dim(x, n_);
    grad = Vector::Zero(static_cast<Eigen::Index>(n_));
    double f = 1.0;
    for (Eigen::Index base = 0; base + 3 < x.size(); base += 2) {
      f += wood_block(x, base, grad);
    }
    return f;
  }

 private:
  std::size_t n_;
};

[[noreturn]] void inadmissible(CuterName name, std::size_t n, const char* rule) {
  std::ostringstream os;
  os << to_string(name) << ": dimension " << n << " not admissible (" << rule
     << ")";
  throw DimensionError(os.str());
}

}  // namespace

std::string_view to_string(CuterName name) {
  switch (name) {
    case CuterName::VARDIM: return "VARDIM";
    case CuterName::COSINE: return "COSINE";
    case CuterName::GENROSE: return "GENROSE";
    case CuterName::WOODS: return "WOODS";
    case CuterName::CHAINWOO: return "CHAINWOO";
  }
  return "?";
}

std::optional<CuterName> parse_cuter_name(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "CHAIWOO") return CuterName::CHAINWOO;
  for (CuterName name : all_cuter_names()) {
    if (upper == to_string(name)) return name;
  }
  return std::nullopt;
}

const std::vector<CuterName>& all_cuter_names() {
  static const std::vector<CuterName> names = {
      CuterName::VARDIM, CuterName::COSINE, CuterName::GENROSE,
      CuterName::WOODS, CuterName::CHAINWOO};
  return names;
}

TestProblem cuter_problem(CuterName name, std::size_t n) {
  TestProblem p;
  p.name = std::string(to_string(name));
  p.n = n;
  const auto N = static_cast<Eigen::Index>(n);
  switch (name) {
    case CuterName::VARDIM:
      if (n < 1) inadmissible(name, n, "n >= 1");
      p.evaluator = std::make_shared<Vardim>(n);
      p.x0.resize(N);
      for (Eigen::Index i = 0; i < N; ++i) {
        p.x0[i] = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
      }
      break;
    case CuterName::COSINE:
      if (n < 2) inadmissible(name, n, "n >= 2");
      p.evaluator = std::make_shared<Cosine>(n);
      p.x0 = Vector::Ones(N);
      break;
    case CuterName::GENROSE:
      if (n < 2) inadmissible(name, n, "n >= 2");
      p.evaluator = std::make_shared<Genrose>(n);
      p.x0.resize(N);
      for (Eigen::Index i = 0; i < N; ++i) {
        p.x0[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
      }
      break;
    case CuterName::WOODS:
      if (n < 4 || n % 4 != 0) inadmissible(name, n, "n a positive multiple of 4");
      p.evaluator = std::make_shared<Woods>(n);
      p.x0.resize(N);
      for (Eigen::Index i = 0; i < N; ++i) p.x0[i] = (i % 2 == 0) ? -3.0 : -1.0;
      break;
    case CuterName::CHAINWOO:
      if (n < 4 || n % 2 != 0) inadmissible(name, n, "n even and >= 4");
      p.evaluator = std::make_shared<Chainwoo>(n);
      p.x0 = Vector::Constant(N, -2.0);
      p.x0.head(4) << -3.0, -1.0, -3.0, -1.0;
      break;
  }
  return p;
}

}  // namespace nbbl1
