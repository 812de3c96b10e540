#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "vtcs/types.hpp"

namespace vtcs {

enum class PassLabel { Target, Others };
enum class SkillGroup { Group1, Group2, All };

struct LabeledSample {
    double value = 0.0;
    PassLabel label = PassLabel::Target;
    SkillGroup group = SkillGroup::All;
    int sequence_id = 0;
};

struct RankRecord {
    int frame = 0;
    int rank = 0;       // 1 = highest V_frame among non-possessing offense
    int team_size = 0;  // non-possessing offense count that frame
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

namespace detail {

// Asymptotic Kolmogorov survival function, Q_KS(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_q(double lam) {
    if (lam <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lam * lam);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace detail

// Two-sample Kolmogorov-Smirnov: D = max CDF gap, p via the asymptotic
// Kolmogorov distribution with the usual finite-sample correction.
inline TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n = double(a.size()), m = double(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / n - double(j) / m));
    }
    const double en = std::sqrt(n * m / (n + m));
    const double p = detail::kolmogorov_q((en + 0.12 + 0.11 / en) * d);
    return {d, p};
}

// Mann-Whitney U for sample a, with tie correction; two-sided p via normal
// approximation with continuity correction.
inline TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "mann_whitney_u: empty sample");
    const double n = double(a.size()), m = double(b.size());
    // U via pooled midranks
    std::vector<std::pair<double, int>> pooled;  // (value, 0=a 1=b)
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end());
    double rank_sum_a = 0.0, tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        const double t = double(j - i);
        const double midrank = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        tie_term += t * t * t - t;
        i = j;
    }
    const double u = rank_sum_a - n * (n + 1.0) / 2.0;

    const double N = n + m;
    const double mu = n * m / 2.0;
    const double var = n * m / 12.0 * ((N + 1.0) - tie_term / (N * (N - 1.0)));
    double p = 1.0;
    if (var > 0.0) {
        const double z = (std::abs(u - mu) - 0.5) / std::sqrt(var);
        p = std::clamp(2.0 * detail::normal_sf(std::max(z, 0.0)), 0.0, 1.0);
    }
    return {u, p};
}

// Cliff's delta: (#{a_i > b_j} - #{a_i < b_j}) / (n m), exact.
inline double cliffs_delta(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "cliffs_delta: empty sample");
    std::sort(b.begin(), b.end());
    long long gt = 0, lt = 0;
    for (double v : a) {
        gt += std::lower_bound(b.begin(), b.end(), v) - b.begin();
        lt += b.end() - std::upper_bound(b.begin(), b.end(), v);
    }
    return double(gt - lt) / (double(a.size()) * double(b.size()));
}

// Dense rank of the detected player among non-possessing offense by V_frame,
// ties sharing the better rank. values maps player id -> V_frame.
inline RankRecord rank_within_team(const std::map<int, double>& values, int detected_id,
                                   int holder_id, int frame = 0) {
    std::vector<double> vals;
    double detected_value = 0.0;
    bool found = false;
    for (const auto& [id, v] : values) {
        if (id == holder_id) continue;
        vals.push_back(v);
        if (id == detected_id) {
            detected_value = v;
            found = true;
        }
    }
    if (vals.size() < 2 || !found)
        throw Error(ErrorCode::TooFewPlayers, "rank_within_team needs >= 2 non-possessing players");
    std::sort(vals.begin(), vals.end(), std::greater<>());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    RankRecord rec;
    rec.frame = frame;
    rec.team_size = int(values.size()) - (values.count(holder_id) ? 1 : 0);
    rec.rank = 1 + int(std::lower_bound(vals.begin(), vals.end(), detected_value, std::greater<>()) -
                       vals.begin());
    return rec;
}

}  // namespace vtcs
