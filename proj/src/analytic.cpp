#include "seqnet/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seqnet::analytic {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// 1 - (1 - p)^k, accurate for tiny p and huge k.
double at_least_once(double p, double k) {
    if (p >= 1.0) return k > 0 ? 1.0 : 0.0;
    return -std::expm1(k * std::log1p(-p));
}

}  // namespace

double min_distance(double r) {
    require(r >= 1, "min_distance needs r >= 1");
    return 4 * r;
}

double coding_rate(unsigned r, unsigned c) {
    require(r >= 1 && c >= 2, "coding_rate needs r >= 1 and c >= 2");
    return static_cast<double>((c + 1) / 2) / (static_cast<double>(r) * c);
}

double merit_factor(unsigned r, unsigned c) {
    // 4r * floor((c+1)/2) / (r c); every operand is an exact integer in double.
    require(r >= 1 && c >= 2, "merit_factor needs r >= 1 and c >= 2");
    return (4.0 * r * ((c + 1) / 2)) / (static_cast<double>(r) * c);
}

double density_seq(double chi, double l, double sequences, double length) {
    require(chi > 0 && l > 0 && sequences >= 0 && length >= 0, "density_seq needs positive geometry");
    return at_least_once(1.0 / (l * l), sequences * length / chi);
}

double density_seq_approx(double chi, double l, double sequences, double length) {
    require(chi > 0 && l > 0, "density_seq_approx needs positive geometry");
    return sequences * length / (chi * l * l);
}

double density_restricted(double n, double r, double c, double sequences, double length) {
    require(n > 0 && r >= 1 && c >= 1, "density_restricted needs n > 0, r >= 1, c >= 1");
    return at_least_once(r * c * c / (n * n), sequences * length);
}

double structural_sber(double density, double r, double l) {
    require(r >= 1 && l >= 1, "structural_sber needs r >= 1 and l >= 1");
    require(density >= 0 && density <= 1, "density must lie in [0, 1]");
    return at_least_once(std::pow(density, r), l - 1);
}

double sqer_seq(double chi, double l, double r, double length, double sequences) {
    require(r >= 1, "sqer_seq needs r >= 1");
    require(length >= r, "sqer_seq needs L >= r");
    const double d = density_seq(chi, l, sequences, length);
    return at_least_once(std::pow(d, r), (l - 1) * (length - r));
}

double sqer_restricted(double chi, double l, double r, double c, double length, double sequences) {
    require(r >= 1 && c >= 1, "sqer_restricted needs r >= 1 and c >= 1");
    require(length >= r, "sqer_restricted needs L >= r");
    const double n = chi * l;
    const double background = n - r * l - r * c;
    require(background >= 0, "sqer_restricted needs n >= r (l + c)");
    const double d = density_restricted(n, r, c, sequences, length);
    // log of the per-step success probability
    double log_success = 0;
    const auto add = [&](double p, double k) {
        if (p >= 1.0) {
            if (k > 0) log_success = -INFINITY;
            return;
        }
        log_success += k * std::log1p(-p);
    };
    add(std::pow(d, r * c), background);
    for (int i = 1; i <= static_cast<int>(r) - 1; ++i) add(std::pow(d, i * c), c);
    return -std::expm1((length - r) * log_success);
}

double chi_opt(double n, double sequences, double length) {
    require(n > 0 && sequences > 0 && length > 0, "chi_opt needs positive n, S, L");
    return n * n / (std::numbers::e * sequences * length);
}

double capacity_seq(double l, double sequences, double length) {
    return sequences * length * std::log2(l);
}

double memory_bits_seq(double chi, double l, double r) { return r * chi * l * l; }

double efficiency_seq(double chi, double l, double r, double sequences, double length) {
    require(r >= 1, "efficiency_seq needs r >= 1");
    return capacity_seq(l, sequences, length) / memory_bits_seq(chi, l, r);
}

double efficiency_seq_approx(double n, double chi) {
    require(chi > 1, "efficiency_seq_approx needs chi > 1");
    return std::log2(n / chi) / (std::numbers::e * (chi - 1));
}

double pattern_information_bits(double chi, double l, double c) {
    require(c >= 0 && c <= chi, "pattern order must lie in [0, chi]");
    const double log2_binom =
        (std::lgamma(chi + 1) - std::lgamma(c + 1) - std::lgamma(chi - c + 1)) / std::numbers::ln2;
    return c * std::log2(l) + log2_binom;
}

double solve_increasing(const std::function<double(double)>& f, double target, double lo, double hi,
                        double rel_tol) {
    require(lo > 0 && hi > lo, "solve_increasing needs 0 < lo < hi");
    if (f(lo) > target) return lo;
    if (f(hi) <= target) return hi;
    while (hi / lo > 1 + rel_tol) {
        const double mid = std::sqrt(lo * hi);
        if (f(mid) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double max_sequences_seq(double chi, double l, double r, double length, double target) {
    return solve_increasing([&](double s) { return sqer_seq(chi, l, r, length, s); }, target, 1e-3,
                            1e30);
}

double max_sequences_restricted(double chi, double l, double r, double c, double length,
                                double target) {
    return solve_increasing([&](double s) { return sqer_restricted(chi, l, r, c, length, s); },
                            target, 1e-3, 1e30);
}

}  // namespace seqnet::analytic
