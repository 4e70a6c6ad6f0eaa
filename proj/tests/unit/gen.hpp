#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Seeded generators for the property tests.
namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<double> masses(std::size_t n) {
    std::vector<double> m(n);
    double total = 0.0;
    for (double& v : m) total += v = uniform(0.05, 1.0);
    for (double& v : m) v /= total;
    return m;
  }

  std::vector<double> increasing(std::size_t n, double lo, double hi) {
    std::vector<double> x(n);
    double acc = lo;
    for (double& v : x) v = acc += uniform(0.05, 1.0) * (hi - lo) / static_cast<double>(n);
    return x;
  }

  // Smooth expression in r, finite on r in (0, 3].
  std::string expression(int depth) {
    if (depth == 0) {
      if (coin()) return "r";
      return std::to_string(integer(1, 9)) + "." + std::to_string(integer(0, 9));
    }
    const std::string a = expression(depth - 1);
    const std::string b = expression(depth - 1);
    switch (integer(0, 7)) {
      case 0:
        return "(" + a + "+" + b + ")";
      case 1:
        return "(" + a + "-" + b + ")";
      case 2:
        return "(" + a + "*" + b + ")";
      case 3:
        return "(" + a + ")/(1+(" + b + ")^2)";
      case 4:
        return "exp(-(" + a + ")^2/10)";
      case 5:
        return "log(1+(" + a + ")^2)";
      case 6:
        return "(1+r)^" + std::to_string(integer(1, 3));
      default:
        return "-" + a;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
