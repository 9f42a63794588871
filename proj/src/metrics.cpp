#include "rtleak/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtleak {

double precision_from_epsilon(Tick eps, Tick p_v) {
    if (p_v == 0) throw std::invalid_argument("precision: zero victim period");
    if (eps >= p_v) throw std::invalid_argument("precision: epsilon must be < victim period");
    double half = static_cast<double>(p_v) / 2.0;
    double e = static_cast<double>(eps);
    if (e > half) return 1.0 - (static_cast<double>(p_v) - e) / half;
    return 1.0 - e / half;
}

double precision_ratio(Tick a_hat, Tick a_v, Tick p_v) {
    Tick eps = a_hat > a_v ? a_hat - a_v : a_v - a_hat;
    return precision_from_epsilon(eps, p_v);
}

AggregateStats aggregate(const std::vector<RunOutcome>& outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("aggregate: empty outcome list");
    AggregateStats s;
    s.n = outcomes.size();

    std::vector<double> prec;
    prec.reserve(outcomes.size());
    std::size_t wins = 0;
    for (const RunOutcome& o : outcomes) {
        if (o.success) ++wins;
        prec.push_back(o.precision);
    }
    s.success_rate = static_cast<double>(wins) / static_cast<double>(s.n);

    double sum = 0.0;
    for (double x : prec) sum += x;
    s.precision_mean = sum / static_cast<double>(s.n);

    double var = 0.0;
    for (double x : prec) var += (x - s.precision_mean) * (x - s.precision_mean);
    s.precision_sd = std::sqrt(var / static_cast<double>(s.n));

    std::sort(prec.begin(), prec.end());
    s.precision_min = prec.front();
    s.precision_max = prec.back();
    std::size_t mid = prec.size() / 2;
    s.precision_median =
        prec.size() % 2 ? prec[mid] : 0.5 * (prec[mid - 1] + prec[mid]);
    return s;
}

} // namespace rtleak
