#include "marketsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace marketsim {

namespace {

// expected R/S of white noise for window size w (Anis-Lloyd, with the
// Peters finite-sample prefactor)
double expected_rs(int w) {
    double c;
    if (w <= 340) {
        c = std::exp(std::lgamma((w - 1) / 2.0) - std::lgamma(w / 2.0)) /
            std::sqrt(M_PI);
    } else {
        c = 1.0 / std::sqrt(w * M_PI / 2.0);
    }
    double s = 0.0;
    for (int i = 1; i < w; ++i) s += std::sqrt(static_cast<double>(w - i) / i);
    return (w - 0.5) / w * c * s;
}

// mean R/S over disjoint windows of size w; NaN when no window has spread
double rescaled_range(std::span<const double> x, int w) {
    int k = static_cast<int>(x.size()) / w;
    double sum = 0.0;
    int used = 0;
    for (int b = 0; b < k; ++b) {
        auto seg = x.subspan(static_cast<std::size_t>(b) * w, w);
        double mean = std::accumulate(seg.begin(), seg.end(), 0.0) / w;
        double var = 0.0, cum = 0.0, zmin = 0.0, zmax = 0.0;
        for (double v : seg) {
            double d = v - mean;
            var += d * d;
            cum += d;
            zmin = std::min(zmin, cum);
            zmax = std::max(zmax, cum);
        }
        double s = std::sqrt(var / w);
        if (s > 0.0) {
            sum += (zmax - zmin) / s;
            ++used;
        }
    }
    return used > 0 ? sum / used : std::nan("");
}

} // namespace

HurstEstimate hurst_rs(std::span<const double> series) {
    if (series.size() < 256)
        throw std::runtime_error("hurst_rs: series length must be >= 256");

    std::vector<double> returns;
    returns.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i] <= 0.0 || series[i - 1] <= 0.0)
            throw std::runtime_error("hurst_rs: series must be positive");
        returns.push_back(std::log(series[i] / series[i - 1]));
    }

    std::vector<double> xs, ys;
    HurstEstimate est;
    est.window_min = 16;
    for (int w = 16; w <= static_cast<int>(returns.size()) / 4; w *= 2) {
        double rs = rescaled_range(returns, w);
        if (std::isnan(rs) || rs <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(w)));
        ys.push_back(std::log(rs) - std::log(expected_rs(w)));
        est.window_max = w;
    }
    if (xs.size() < 3)
        throw std::runtime_error("hurst_rs: too few usable windows");

    const std::size_t m = xs.size();
    double xm = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    double ym = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    double slope = sxy / sxx;
    est.h = 0.5 + slope;

    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = ys[i] - ym - slope * (xs[i] - xm);
        ssr += r * r;
    }
    est.stderr_ = m > 2 ? std::sqrt(ssr / ((m - 2) * sxx)) : 0.0;

    // two-piece fit diagnostic: best split of the ladder into two slopes
    double best = ssr;
    for (std::size_t split = 2; split + 2 <= m; ++split) {
        double total = 0.0;
        for (int half = 0; half < 2; ++half) {
            std::size_t lo = half == 0 ? 0 : split;
            std::size_t hi = half == 0 ? split : m;
            std::size_t cnt = hi - lo;
            double xm2 = 0.0, ym2 = 0.0;
            for (std::size_t i = lo; i < hi; ++i) { xm2 += xs[i]; ym2 += ys[i]; }
            xm2 /= cnt; ym2 /= cnt;
            double sxx2 = 0.0, sxy2 = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                sxx2 += (xs[i] - xm2) * (xs[i] - xm2);
                sxy2 += (xs[i] - xm2) * (ys[i] - ym2);
            }
            double sl = sxx2 > 0.0 ? sxy2 / sxx2 : 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                double r = ys[i] - ym2 - sl * (xs[i] - xm2);
                total += r * r;
            }
        }
        best = std::min(best, total);
    }
    est.piecewise_residual_gain = ssr > 0.0 ? (ssr - best) / ssr : 0.0;
    return est;
}

std::map<Profile, ProfileStats> profile_wealth_stats(const std::vector<Agent>& agents) {
    std::map<Profile, ProfileStats> stats;
    for (const Agent& a : agents) {
        ProfileStats& s = stats[a.profile];
        ++s.count;
        s.mean += a.wealth;
    }
    for (auto& [p, s] : stats) s.mean /= s.count;
    for (const Agent& a : agents) {
        ProfileStats& s = stats[a.profile];
        double d = a.wealth - s.mean;
        s.sd += d * d;
    }
    for (auto& [p, s] : stats)
        s.sd = s.count > 1 ? std::sqrt(s.sd / (s.count - 1)) : 0.0;
    return stats;
}

HistogramSummary return_histogram(std::span<const float> returns) {
    const std::size_t n = returns.size();
    if (n < 100)
        throw std::runtime_error("return_histogram: needs at least 100 samples");

    HistogramSummary h;
    double sum = 0.0;
    float lo = returns[0], hi = returns[0];
    for (float r : returns) {
        sum += r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    h.mean = sum / n;
    double ss = 0.0;
    for (float r : returns) ss += (r - h.mean) * (r - h.mean);
    h.sd = std::sqrt(ss / (n - 1));

    int bins = 1 + static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
    double width = (static_cast<double>(hi) - lo) / bins;
    if (width <= 0.0) width = 1.0;  // all samples identical

    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
    h.counts.assign(bins, 0);
    for (float r : returns) {
        int b = static_cast<int>((r - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
    }

    // least-squares Gaussian A*exp(-(x-mu)^2 / 2s^2) on bin centers,
    // Levenberg-Marquardt from a moment-based start
    if (h.sd > 0.0) {
        std::vector<double> centers(bins);
        double cm = 0.0;
        for (int b = 0; b < bins; ++b) {
            centers[b] = 0.5 * (h.edges[b] + h.edges[b + 1]);
            cm += h.counts[b];
        }
        cm /= bins;

        auto ssr_of = [&](double amp, double mu, double sig) {
            double ssr = 0.0;
            for (int b = 0; b < bins; ++b) {
                double z = (centers[b] - mu) / sig;
                double r = h.counts[b] - amp * std::exp(-0.5 * z * z);
                ssr += r * r;
            }
            return ssr;
        };

        auto amp_for = [&](double mu, double sig) {
            double amp = 0.0, gg = 0.0;
            for (int b = 0; b < bins; ++b) {
                double z = (centers[b] - mu) / sig;
                double g = std::exp(-0.5 * z * z);
                gg += g * g;
                amp += g * h.counts[b];
            }
            return gg > 0.0 ? amp / gg : 0.0;
        };

        // multi-start over the width so the heavy-tailed case still reaches
        // the least-squares optimum
        double mu = h.mean, sig = h.sd, amp = amp_for(mu, sig);
        double ssr = ssr_of(amp, mu, sig);
        for (double scale : {0.25, 0.4, 0.6, 1.5, 2.5}) {
            double s2 = h.sd * scale, a2 = amp_for(h.mean, s2);
            double e2 = ssr_of(a2, h.mean, s2);
            if (e2 < ssr) { amp = a2; sig = s2; ssr = e2; }
        }

        double lambda = 1e-3;
        for (int it = 0; it < 200; ++it) {
            double jtj[3][3] = {}, jtr[3] = {};
            for (int b = 0; b < bins; ++b) {
                double z = (centers[b] - mu) / sig;
                double f = amp * std::exp(-0.5 * z * z);
                double j[3] = {f / std::max(amp, 1e-300), f * z / sig,
                               f * z * z / sig};
                double r = h.counts[b] - f;
                for (int a = 0; a < 3; ++a) {
                    jtr[a] += j[a] * r;
                    for (int c = 0; c < 3; ++c) jtj[a][c] += j[a] * j[c];
                }
            }
            double m[3][4];
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < 3; ++c) m[a][c] = jtj[a][c];
                m[a][a] *= 1.0 + lambda;
                m[a][3] = jtr[a];
            }
            bool singular = false;
            for (int col = 0; col < 3 && !singular; ++col) {
                int piv = col;
                for (int rw = col + 1; rw < 3; ++rw)
                    if (std::abs(m[rw][col]) > std::abs(m[piv][col])) piv = rw;
                if (std::abs(m[piv][col]) < 1e-12) { singular = true; break; }
                std::swap(m[piv], m[col]);
                for (int rw = 0; rw < 3; ++rw) {
                    if (rw == col) continue;
                    double fac = m[rw][col] / m[col][col];
                    for (int c2 = col; c2 < 4; ++c2) m[rw][c2] -= fac * m[col][c2];
                }
            }
            if (singular) break;
            double da = m[0][3] / m[0][0], dmu = m[1][3] / m[1][1],
                   ds = m[2][3] / m[2][2];
            double namp = amp + da, nmu = mu + dmu, nsig = sig + ds;
            if (!(namp > 0.0) || !(nsig > 0.0)) { lambda *= 10.0; continue; }
            double nssr = ssr_of(namp, nmu, nsig);
            if (nssr < ssr) {
                double gain = (ssr - nssr) / std::max(ssr, 1e-300);
                amp = namp; mu = nmu; sig = nsig; ssr = nssr;
                lambda = std::max(lambda * 0.5, 1e-12);
                if (gain < 1e-12) break;
            } else {
                lambda *= 10.0;
                if (lambda > 1e12) break;
            }
        }

        double sst = 0.0;
        for (int b = 0; b < bins; ++b) sst += (h.counts[b] - cm) * (h.counts[b] - cm);
        h.gaussian_r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
        h.fit_amplitude = amp;
        h.fit_mean = mu;
        h.fit_sd = sig;
    } else {
        h.gaussian_r2 = 1.0;
    }
    return h;
}

double interdecile_range(std::span<const float> values) {
    if (values.size() < 10)
        throw std::runtime_error("interdecile_range: needs at least 10 samples");
    std::vector<float> v(values.begin(), values.end());
    auto quantile = [&](double q) {
        std::size_t k = static_cast<std::size_t>(q * (v.size() - 1));
        std::nth_element(v.begin(), v.begin() + k, v.end());
        return static_cast<double>(v[k]);
    };
    double p90 = quantile(0.9);
    double p10 = quantile(0.1);
    return p90 - p10;
}

} // namespace marketsim
