#include "addiviol/renyi.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace addiviol {

namespace {
constexpr double kOneBranchWidth = 1e-9;
constexpr double kNegativeEntryTol = 1e-9;
constexpr double kSumTol = 1e-8;

void check_spectrum(const std::vector<double>& spectrum) {
    if (spectrum.empty()) throw std::invalid_argument("renyi_entropy: empty spectrum");
    double sum = 0.0;
    for (double x : spectrum) {
        if (x < -kNegativeEntryTol)
            throw std::invalid_argument("renyi_entropy: negative spectrum entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw std::invalid_argument("renyi_entropy: spectrum does not sum to 1");
}
}  // namespace

RenyiOrder::RenyiOrder(double p) : p_(p) {
    if (std::isnan(p) || p < 0.0) throw std::invalid_argument("Renyi order must satisfy p >= 0");
}

RenyiOrder RenyiOrder::infinity() {
    return RenyiOrder(std::numeric_limits<double>::infinity());
}

RenyiOrder RenyiOrder::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    std::size_t pos = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &pos);
    } catch (...) {
        throw std::invalid_argument("cannot parse Renyi order '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("cannot parse Renyi order '" + text + "'");
    return RenyiOrder(p);
}

bool RenyiOrder::is_one() const { return std::abs(p_ - 1.0) < kOneBranchWidth; }

bool RenyiOrder::is_infinity() const { return std::isinf(p_); }

std::string RenyiOrder::to_string() const {
    if (is_infinity()) return "inf";
    std::ostringstream os;
    os << p_;
    return os.str();
}

int rank_eps(const std::vector<double>& spectrum, double eps) {
    int count = 0;
    for (double x : spectrum)
        if (x > eps) ++count;
    return count;
}

double renyi_entropy(const std::vector<double>& spectrum, RenyiOrder p, double rank_threshold) {
    check_spectrum(spectrum);
    if (p.is_zero()) {
        int r = rank_eps(spectrum, rank_threshold);
        if (r == 0) throw std::invalid_argument("renyi_entropy: spectrum has rank 0");
        return std::log2(static_cast<double>(r));
    }
    if (p.is_infinity()) {
        double lmax = 0.0;
        for (double x : spectrum) lmax = std::max(lmax, x);
        return -std::log2(lmax);
    }
    if (p.is_one()) {
        double h = 0.0;
        for (double x : spectrum)
            if (x > 0.0) h -= x * std::log2(x);
        return h;
    }
    // Factor out lambda_max so large orders cannot underflow the sum.
    double lmax = 0.0;
    for (double x : spectrum) lmax = std::max(lmax, x);
    double ratio_sum = 0.0;
    for (double x : spectrum)
        if (x > 0.0) ratio_sum += std::pow(x / lmax, p.value());
    return (p.value() * std::log2(lmax) + std::log2(ratio_sum)) / (1.0 - p.value());
}

double renyi_entropy(const SchmidtSpectrum& spectrum, RenyiOrder p, double rank_threshold) {
    return renyi_entropy(spectrum.lambdas, p, rank_threshold);
}

double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) throw std::invalid_argument("binary_entropy: x outside [0,1]");
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace addiviol
