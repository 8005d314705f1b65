#pragma once

#include "addiviol/tensor.hpp"

#include <string>
#include <vector>

namespace addiviol {

// Entropy order p in [0, inf]. Orders within 1e-9 of 1 are evaluated on the
// von Neumann branch to avoid cancellation in 1/(1-p).
class RenyiOrder {
  public:
    explicit RenyiOrder(double p);

    static RenyiOrder zero() { return RenyiOrder(0.0); }
    static RenyiOrder one() { return RenyiOrder(1.0); }
    static RenyiOrder infinity();
    static RenyiOrder parse(const std::string& text);

    double value() const { return p_; }
    bool is_zero() const { return p_ == 0.0; }
    bool is_one() const;
    bool is_infinity() const;

    std::string to_string() const;

  private:
    double p_;
};

inline constexpr double kDefaultRankEps = 1e-9;

// Number of spectrum entries strictly above eps.
int rank_eps(const std::vector<double>& spectrum, double eps);

// Renyi entropy of a probability spectrum, in bits.
//   generic p: log2(sum lambda^p) / (1-p)
//   p = 1:     -sum lambda log2 lambda   (0 log 0 = 0)
//   p = inf:   -log2 lambda_max
//   p = 0:     log2(rank), rank counted above rank_threshold
double renyi_entropy(const std::vector<double>& spectrum, RenyiOrder p,
                     double rank_threshold = kDefaultRankEps);
double renyi_entropy(const SchmidtSpectrum& spectrum, RenyiOrder p,
                     double rank_threshold = kDefaultRankEps);

// h(x) = -x log2 x - (1-x) log2 (1-x), endpoints mapping to 0.
double binary_entropy(double x);

}  // namespace addiviol
