#include "tidyup/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace tidyup::rng {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 stream(std::uint64_t master_seed, const std::string& purpose) {
  return std::mt19937_64(master_seed ^ fnv1a(purpose));
}

std::vector<double> hash_to_unit_vector(const std::string& text, int dim) {
  if (dim < 1) throw std::invalid_argument("hash_to_unit_vector: dim must be >= 1");
  std::mt19937_64 gen(fnv1a(text) ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = g(gen);
  normalize(v);
  return v;
}

void normalize(std::vector<double>& v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  if (n2 <= 0.0) throw std::invalid_argument("normalize: zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v) x *= inv;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace tidyup::rng
