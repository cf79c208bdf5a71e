#include "lcf/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lcf/contfrac.hpp"

namespace lcf {

namespace {

std::uint64_t splitmix_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

HaarSampler::HaarSampler(FieldSpec f, std::uint64_t seed, long chunk)
    : field_(f), seed_(seed), chunk_len_(chunk) {
    if (chunk < 1) throw std::invalid_argument("HaarSampler: chunk must be >= 1");
    rekey();
}

void HaarSampler::rekey() {
    // substream key: two mixing rounds over (seed, chunk index)
    std::uint64_t s = seed_ ^ (0xD1B54A32D192ED03ull * (static_cast<std::uint64_t>(chunk_index_) + 1));
    splitmix_step(s);
    state_ = s;
    in_chunk_ = 0;
}

void HaarSampler::seek_chunk(long chunk_index) {
    if (chunk_index < 0) throw std::invalid_argument("HaarSampler::seek_chunk: negative index");
    chunk_index_ = chunk_index;
    rekey();
}

std::uint64_t HaarSampler::next_u64() { return splitmix_step(state_); }

std::uint32_t HaarSampler::next_symbol() {
    const std::uint64_t q = field_.q;
    const std::uint64_t bound = UINT64_MAX - (UINT64_MAX % q + 1) % q;  // multiple of q
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r > bound);
    return static_cast<std::uint32_t>(r % q);
}

LaurentSeries HaarSampler::next(int precision) {
    if (precision < 0) throw std::invalid_argument("HaarSampler::next: negative precision");
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(precision));
    for (auto& c : frac) c = next_symbol();
    if (++in_chunk_ >= chunk_len_) {
        ++chunk_index_;
        rekey();
    }
    return LaurentSeries::from_frac(field_, std::move(frac));
}

int default_precision(int deepest_position) {
    if (deepest_position < 1) throw std::invalid_argument("default_precision: position must be >= 1");
    return std::max(64, 16 * deepest_position);
}

Rational degree_law(FieldSpec f, int j) {
    if (j < 1) throw std::invalid_argument("degree_law: degree must be >= 1");
    Rational r = Rational(f.q - 1) * q_pow(f.q, -j);
    r.canonicalize();
    return r;
}

double DegreeHistogram::empirical(int j) const {
    if (used == 0) return 0;
    if (j < 1 || j >= static_cast<int>(counts.size())) return 0;
    return static_cast<double>(counts[static_cast<std::size_t>(j)]) / static_cast<double>(used);
}

double DegreeHistogram::z_score(FieldSpec f, int j) const {
    double p = to_double(degree_law(f, j));
    double n = static_cast<double>(used);
    double obs = j < static_cast<int>(counts.size()) ? static_cast<double>(counts[static_cast<std::size_t>(j)]) : 0.0;
    return (obs - n * p) / std::sqrt(n * p * (1 - p));
}

DegreeHistogram degree_distribution(const SamplerConfig& cfg, int position, int degree_cap) {
    if (position < 1) throw std::invalid_argument("degree_distribution: position must be >= 1");
    DegreeHistogram h;
    h.position = position;
    h.counts.assign(static_cast<std::size_t>(degree_cap) + 1, 0);
    HaarSampler sampler(cfg.field, cfg.seed, cfg.chunk);
    for (long it = 0; it < cfg.n_samples; ++it) {
        LaurentSeries x = sampler.next(cfg.precision);
        CFExpansion cf = expand_truncated(x, position);
        if (cf.certified < static_cast<std::size_t>(position)) {
            ++h.discarded;
            continue;
        }
        ++h.used;
        int d = deg(cf.quotients[static_cast<std::size_t>(position) - 1]);
        if (d <= degree_cap)
            ++h.counts[static_cast<std::size_t>(d)];
        else
            ++h.overflow;
    }
    return h;
}

JointHistogram collect_joint(const SamplerConfig& cfg, int pos_i, int pos_j, int degree_cap) {
    if (pos_i < 1 || pos_j < 1 || pos_i == pos_j)
        throw std::invalid_argument("collect_joint: positions must be distinct and >= 1");
    JointHistogram h;
    h.pos_i = pos_i;
    h.pos_j = pos_j;
    h.cap = degree_cap;
    h.counts.assign(static_cast<std::size_t>(degree_cap) + 1,
                    std::vector<long>(static_cast<std::size_t>(degree_cap) + 1, 0));
    const int deepest = std::max(pos_i, pos_j);
    HaarSampler sampler(cfg.field, cfg.seed, cfg.chunk);
    for (long it = 0; it < cfg.n_samples; ++it) {
        LaurentSeries x = sampler.next(cfg.precision);
        CFExpansion cf = expand_truncated(x, deepest);
        if (cf.certified < static_cast<std::size_t>(deepest)) {
            ++h.discarded;
            continue;
        }
        ++h.used;
        int a = std::min(degree_cap, deg(cf.quotients[static_cast<std::size_t>(pos_i) - 1]));
        int b = std::min(degree_cap, deg(cf.quotients[static_cast<std::size_t>(pos_j) - 1]));
        ++h.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    return h;
}

IndependenceReport independence_report(FieldSpec f, const JointHistogram& joint, int cutoff) {
    IndependenceReport rep;
    rep.used = joint.used;
    rep.discarded = joint.discarded;
    if (joint.used == 0) throw std::invalid_argument("independence_report: empty histogram");

    const double n = static_cast<double>(joint.used);
    if (cutoff <= 0) {
        // smallest pooling cutoff whose rarest expected cell stays near 10
        cutoff = 2;
        while (cutoff < joint.cap) {
            double tail = std::pow(static_cast<double>(f.q), 1.0 - (cutoff + 1));
            if (n * tail * tail < 10.0) break;
            ++cutoff;
        }
    }
    cutoff = std::min(cutoff, joint.cap);
    rep.cutoff = cutoff;

    // bins 1..cutoff-1 individually, >= cutoff pooled
    auto bin_of = [&](int d) { return std::min(d, cutoff); };
    auto p_bin = [&](int b) {
        if (b < cutoff) return to_double(degree_law(f, b));
        return std::pow(static_cast<double>(f.q), 1.0 - cutoff);  // P(deg >= cutoff) = q^(1-cutoff)
    };

    std::vector<std::vector<double>> obs(static_cast<std::size_t>(cutoff) + 1,
                                         std::vector<double>(static_cast<std::size_t>(cutoff) + 1, 0));
    for (int a = 1; a <= joint.cap; ++a)
        for (int b = 1; b <= joint.cap; ++b)
            obs[static_cast<std::size_t>(bin_of(a))][static_cast<std::size_t>(bin_of(b))] +=
                static_cast<double>(joint.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);

    double stat = 0;
    for (int a = 1; a <= cutoff; ++a)
        for (int b = 1; b <= cutoff; ++b) {
            double expect = n * p_bin(a) * p_bin(b);
            double diff = obs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] - expect;
            stat += diff * diff / expect;
        }
    rep.statistic = stat;
    rep.df = static_cast<long>(cutoff) * cutoff - 1;  // fully specified law
    rep.p_value = chi_square_sf(stat, rep.df);
    return rep;
}

double TailRow::z_score() const {
    double p = to_double(exact);
    double n = static_cast<double>(used);
    if (n == 0 || p <= 0 || p >= 1) return 0;
    return (static_cast<double>(hits) - n * p) / std::sqrt(n * p * (1 - p));
}

TailReport tail_event_frequency(const SamplerConfig& cfg, int k, const GrowthFunction& phi,
                                long n_lo, long n_hi) {
    if (k < 1) throw std::invalid_argument("tail_event_frequency: k must be >= 1");
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("tail_event_frequency: bad n range");
    TailReport rep;

    // a sample can only certify n+k quotients if 2(n+k) <= precision
    long max_n = cfg.precision / 2 - k;
    rep.n_hi_effective = std::min(n_hi, max_n);
    rep.truncated = rep.n_hi_effective < n_hi;
    if (rep.n_hi_effective < n_lo) return rep;

    for (long n = n_lo; n <= rep.n_hi_effective; ++n) {
        TailRow row;
        row.n = n;
        row.threshold = phi.ceil_at(n);
        row.exact = tail_measure(cfg.field, static_cast<int>(row.threshold), k);
        rep.rows.push_back(std::move(row));
    }

    const int deepest = static_cast<int>(rep.n_hi_effective) + k;
    HaarSampler sampler(cfg.field, cfg.seed, cfg.chunk);
    long long total_hits = 0;
    for (long it = 0; it < cfg.n_samples; ++it) {
        LaurentSeries x = sampler.next(cfg.precision);
        CFExpansion cf = expand_truncated(x, deepest);
        for (TailRow& row : rep.rows) {
            if (cf.certified < static_cast<std::size_t>(row.n + k)) {
                ++row.discarded;
                continue;
            }
            ++row.used;
            long sum = 0;
            for (long i = row.n + 1; i <= row.n + k; ++i)
                sum += deg(cf.quotients[static_cast<std::size_t>(i) - 1]);
            if (sum >= row.threshold) {
                ++row.hits;
                ++total_hits;
            }
        }
    }
    rep.mean_hits = cfg.n_samples ? static_cast<double>(total_hits) / cfg.n_samples : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma, series + continued fraction

namespace {

double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double reg_gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::domain_error("reg_gamma_q: bad arguments");
    if (x == 0) return 1;
    if (x < a + 1) return 1 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

}  // namespace

double chi_square_sf(double x, long df) {
    if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
    if (x <= 0) return 1;
    return reg_gamma_q(df / 2.0, x / 2.0);
}

}  // namespace lcf
