#include "hmsa/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hmsa/errors.hpp"

namespace hmsa {
namespace {

void check_order(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw DomainError("associated Legendre order out of range: n=" + std::to_string(n) +
                      " m=" + std::to_string(m));
  }
}

void check_argument(double z) {
  if (!(z >= -1.0 && z <= 1.0)) throw DomainError("Legendre argument outside [-1, 1]");
}

double sin_from_cos(double z) { return std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z))); }

// Fills P_{n,m}(z) for all n <= max_degree at fixed m.
void recur_in_degree(int max_degree, int m, double z, double p_mm, double* column, int stride) {
  column[m * stride] = p_mm;
  if (m + 1 > max_degree) return;
  double prev = p_mm;
  double cur = z * (2.0 * m + 1.0) * p_mm;
  column[(m + 1) * stride] = cur;
  for (int n = m + 2; n <= max_degree; ++n) {
    const double next = ((2.0 * n - 1.0) * z * cur - (n + m - 1.0) * prev) / (n - m);
    prev = cur;
    cur = next;
    column[n * stride] = cur;
  }
}

// P_{n,m} from z and s = (1 - z^2)^{1/2}; callers holding theta pass sin(theta),
// which keeps full relative accuracy next to the poles.
double legendre_value(int n, int m, double z, double s) {
  double p_mm = 1.0;
  for (int k = 1; k <= m; ++k) p_mm *= (2.0 * k - 1.0) * s;
  if (n == m) return p_mm;
  double prev = p_mm;
  double cur = z * (2.0 * m + 1.0) * p_mm;
  for (int k = m + 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * z * cur - (k + m - 1.0) * prev) / (k - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

bool at_pole(const AngularPoint& p) { return !(p.sin_theta() > 0.0) || std::abs(p.z()) == 1.0; }

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

HarmonicIndex::HarmonicIndex(int degree, int order) : n(degree), m(order) {
  if (degree < 0 || std::abs(order) > degree) {
    throw DomainError("invalid harmonic index (" + std::to_string(degree) + ", " +
                      std::to_string(order) + ")");
  }
}

double assoc_legendre(int n, int m, double z) {
  check_order(n, m);
  check_argument(z);
  return legendre_value(n, m, z, sin_from_cos(z));
}

double assoc_legendre_derivative(int n, int m, double z) {
  check_order(n, m);
  if (!(z > -1.0 && z < 1.0)) throw DomainError("Legendre derivative needs |z| < 1");
  const double s = sin_from_cos(z);
  const double upper = (m + 1 <= n) ? assoc_legendre(n, m + 1, z) : 0.0;
  return upper / s - m * z * assoc_legendre(n, m, z) / (s * s);
}

double normalization(int n, int m) {
  const int am = std::abs(m);
  check_order(n, am);
  const double log_ratio = log_factorial(n - am) - log_factorial(n + am);
  return std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi) * std::exp(log_ratio));
}

Complex sph_harmonic(const HarmonicIndex& idx, const AngularPoint& p) {
  const int am = std::abs(idx.m);
  const double radial = normalization(idx.n, am) * legendre_value(idx.n, am, p.z(), p.sin_theta());
  return std::polar(radial, idx.m * p.phi());
}

AngularGradient sph_harmonic_angular_gradient(const HarmonicIndex& idx, const AngularPoint& p) {
  if (at_pole(p)) throw PoleError("angular gradient requested at a pole");
  const double s = p.sin_theta();
  const int am = std::abs(idx.m);
  const double z = p.z();
  const double upper = (am + 1 <= idx.n) ? legendre_value(idx.n, am + 1, z, s) : 0.0;
  // d/dtheta P_{n,m}(cos theta) = -P_{n,m+1} + m cot(theta) P_{n,m}
  const double dp = -upper + am * (z / s) * legendre_value(idx.n, am, z, s);
  const Complex phase = std::polar(1.0, idx.m * p.phi());
  const double gamma = normalization(idx.n, am);
  return {gamma * dp * phase, Complex(0.0, idx.m) * sph_harmonic(idx, p)};
}

double leading_coeff(int n, int m) {
  check_order(n, m);
  const double log_b = log_factorial(n + m) - 0.5 * m * std::numbers::ln2 - log_factorial(m) -
                       log_factorial(n - m);
  return std::exp(log_b);
}

LegendreTable::LegendreTable(int max_degree, double z) : LegendreTable(max_degree, z, sin_from_cos(z)) {}

LegendreTable::LegendreTable(int max_degree, double z, double s)
    : max_degree_(max_degree), values_(static_cast<size_t>(max_degree + 1) * (max_degree + 2), 0.0) {
  if (max_degree < 0) throw DomainError("negative maximum degree");
  check_argument(z);
  const int stride = max_degree + 2;
  double p_mm = 1.0;
  for (int m = 0; m <= max_degree; ++m) {
    if (m > 0) p_mm *= (2.0 * m - 1.0) * s;
    recur_in_degree(max_degree, m, z, p_mm, values_.data() + m, stride);
  }
}

double LegendreTable::operator()(int n, int m) const {
  if (m > n) return 0.0;
  return values_[static_cast<size_t>(n) * (max_degree_ + 2) + m];
}

HarmonicTable::HarmonicTable(int max_degree, const AngularPoint& p, bool with_derivatives)
    : max_degree_(max_degree), point_(p), y_(harmonic_count(max_degree)) {
  const double s = p.sin_theta();
  const LegendreTable legendre(max_degree, p.z(), s);
  if (with_derivatives) {
    if (at_pole(p)) throw PoleError("angular derivatives requested at a pole");
    dtheta_.resize(y_.size());
  }
  for (int m = 0; m <= max_degree; ++m) {
    const Complex phase = std::polar(1.0, m * p.phi());
    for (int n = m; n <= max_degree; ++n) {
      const double gamma = normalization(n, m);
      const Complex value = gamma * legendre(n, m) * phase;
      y_[harmonic_offset(n, m)] = value;
      y_[harmonic_offset(n, -m)] = std::conj(value);
      if (with_derivatives) {
        const double dp = -legendre(n, m + 1) + m * (p.z() / s) * legendre(n, m);
        const Complex d = gamma * dp * phase;
        dtheta_[harmonic_offset(n, m)] = d;
        dtheta_[harmonic_offset(n, -m)] = std::conj(d);
      }
    }
  }
}

Complex solid_harmonic(const HarmonicIndex& idx, const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) return idx.n == 0 ? sph_harmonic(idx, AngularPoint::from_angles(0.0, 0.0)) : 0.0;
  return std::pow(r, idx.n) * sph_harmonic(idx, AngularPoint::from_direction(x));
}

CVec3 solid_harmonic_gradient(const HarmonicIndex& idx, const Vec3& x) {
  if (idx.n == 0) return CVec3::Zero();
  const double r = x.norm();
  const AngularPoint p = AngularPoint::from_direction(x);
  const AngularGradient g = sph_harmonic_angular_gradient(idx, p);
  const double scale = std::pow(r, idx.n - 1);
  const Complex f_r = scale * static_cast<double>(idx.n) * sph_harmonic(idx, p);
  const Complex f_theta = scale * g.dtheta;
  const Complex f_phi = scale * g.dphi / std::sin(p.theta());
  return frame_to_cartesian<Complex>(f_r, f_theta, f_phi, p);
}

namespace {

// r^n P_{n,|k|}(cos theta) e^{i k phi} without normalization; zero if |k| > n or n < 0.
Complex regular_solid(int n, int k, double r, const AngularPoint& p) {
  const int ak = std::abs(k);
  if (n < 0 || ak > n) return 0.0;
  return std::pow(r, n) * legendre_value(n, ak, p.z(), p.sin_theta()) * std::polar(1.0, k * p.phi());
}

}  // namespace

CVec3 solid_harmonic_gradient_cartesian(const HarmonicIndex& idx, const Vec3& x) {
  if (idx.n == 0) return CVec3::Zero();
  const int n = idx.n;
  const int m = std::abs(idx.m);
  const double r = x.norm();
  const AngularPoint p = r > 0.0 ? AngularPoint::from_direction(x) : AngularPoint::from_angles(0.0, 0.0);
  // Ladder relations for R_n^m = r^n P_{n,m} e^{i m phi}, m >= 0:
  //   d_z R_n^m = (n+m) R_{n-1}^m
  //   (d_x + i d_y) R_n^m = -R_{n-1}^{m+1}
  //   (d_x - i d_y) R_n^m = (n+m)(n+m-1) R_{n-1}^{m-1}  (m >= 1), -R_{n-1}^{-1} (m = 0)
  const Complex raise = -regular_solid(n - 1, m + 1, r, p);
  const Complex lower = m >= 1 ? static_cast<double>((n + m) * (n + m - 1)) *
                                     regular_solid(n - 1, m - 1, r, p)
                               : -regular_solid(n - 1, -1, r, p);
  const Complex dz = static_cast<double>(n + m) * regular_solid(n - 1, m, r, p);
  const Complex dx = 0.5 * (raise + lower);
  const Complex dy = (raise - lower) / Complex(0.0, 2.0);
  CVec3 grad(dx, dy, dz);
  grad *= normalization(n, m);
  if (idx.m < 0) grad = grad.conjugate();
  return grad;
}

}  // namespace hmsa
