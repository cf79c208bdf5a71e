#pragma once

#include <cstdint>
#include <vector>

#include "lcf/cylinder.hpp"
#include "lcf/dimension.hpp"
#include "lcf/laurent.hpp"

namespace lcf {

/// Haar measure on the valuation ideal is the product of uniform
/// coefficient measures, so sampling draws i.i.d. uniform coefficients.
struct SamplerConfig {
    FieldSpec field;
    int precision;        // N: fractional coefficients per sample
    long n_samples;
    std::uint64_t seed;
    long chunk = 4096;    // substream length; chunks are independently keyed
};

/// Deterministic splittable generator (SplitMix64 core). The stream is a
/// pure function of (seed, chunk layout): identical configuration yields
/// a byte-identical sample stream, and chunk c can be produced in
/// isolation for parallel consumption.
class HaarSampler {
public:
    HaarSampler(FieldSpec f, std::uint64_t seed, long chunk = 4096);

    LaurentSeries next(int precision);
    std::uint32_t next_symbol();

    /// Jump to the start of an arbitrary chunk.
    void seek_chunk(long chunk_index);

private:
    FieldSpec field_;
    std::uint64_t seed_;
    long chunk_len_;
    long chunk_index_ = 0;
    long in_chunk_ = 0;   // samples consumed in the current chunk
    std::uint64_t state_ = 0;

    void rekey();
    std::uint64_t next_u64();
};

/// Precision heuristic for a statistic that needs `deepest` certified
/// quotients. Degree sums over n quotients concentrate near n*q/(q-1),
/// so certification consumes about 2n*q/(q-1) coefficients on average;
/// 16x the deepest position keeps the discard rate negligible for every
/// q, which matters because discards condition the sample.
int default_precision(int deepest_position);

struct DegreeHistogram {
    int position = 1;
    std::vector<long> counts;  // counts[j] = samples with deg A_pos = j; [0] unused
    long overflow = 0;         // degrees beyond the table
    long used = 0;
    long discarded = 0;

    double empirical(int j) const;
    double z_score(FieldSpec f, int j) const;  // against (q-1) q^-j
};

/// P(deg A_i = j) = (q-1) q^-j.
Rational degree_law(FieldSpec f, int j);

DegreeHistogram degree_distribution(const SamplerConfig& cfg, int position, int degree_cap = 40);

struct JointHistogram {
    int pos_i = 1, pos_j = 2;
    int cap = 0;                            // raw degrees 1..cap; larger ones clamp to cap
    std::vector<std::vector<long>> counts;  // (cap+1) x (cap+1), index by degree
    long used = 0;
    long discarded = 0;
};

JointHistogram collect_joint(const SamplerConfig& cfg, int pos_i, int pos_j, int degree_cap = 30);

struct IndependenceReport {
    double statistic = 0;
    long df = 0;
    double p_value = 1;
    int cutoff = 2;  // degrees >= cutoff pooled into one bin
    long used = 0;
    long discarded = 0;
    bool rejected(double alpha) const { return p_value < alpha; }
};

/// Chi-square goodness-of-fit of the joint histogram against the fully
/// specified product law. cutoff <= 0 picks the smallest pooling cutoff
/// whose rarest expected cell count stays above ~10.
IndependenceReport independence_report(FieldSpec f, const JointHistogram& joint, int cutoff = 0);

struct TailRow {
    long n;
    long threshold;   // ceil(Phi(n))
    Rational exact;   // tail_measure(threshold, k)
    long hits = 0;
    long used = 0;
    long discarded = 0;
    double empirical() const { return used ? static_cast<double>(hits) / used : 0.0; }
    double z_score() const;
};

struct TailReport {
    std::vector<TailRow> rows;
    double mean_hits = 0;  // events per sample across the range (certified rows only)
    bool truncated = false;
    long n_hi_effective = 0;
};

/// Empirical frequency of deg A_{n+1} + ... + deg A_{n+k} >= Phi(n)
/// against the exact tail measure, for n in [n_lo, n_hi]. Rows whose
/// certification depth cannot be reached at the configured precision are
/// dropped and the report flagged truncated.
TailReport tail_event_frequency(const SamplerConfig& cfg, int k, const GrowthFunction& phi,
                                long n_lo, long n_hi);

/// Survival function of the chi-square distribution (regularized upper
/// incomplete gamma Q(df/2, x/2)).
double chi_square_sf(double x, long df);

}  // namespace lcf
