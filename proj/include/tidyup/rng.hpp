#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tidyup::rng {

/// FNV-1a over a string; used to derive stable per-purpose seeds.
std::uint64_t fnv1a(const std::string& s);

/// A named substream of a master seed, stable across runs and platforms.
std::mt19937_64 stream(std::uint64_t master_seed, const std::string& purpose);

/// Deterministically maps a text prompt to a unit vector. The same prompt
/// always produces the same embedding, independent of call order.
std::vector<double> hash_to_unit_vector(const std::string& text, int dim);

/// Normalizes in place; zero vectors throw.
void normalize(std::vector<double>& v);

double dot(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tidyup::rng
