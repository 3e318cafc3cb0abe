#include "ornstein/norms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ornstein/parallel.hpp"
#include "ornstein/philox.hpp"

namespace ornstein {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr long long kDenseElemCap = 6'000'000;      // base dense grid (refined is 4x)
constexpr long long kGridOpCap = 3'000'000'000LL;   // evaluations * support, all passes
constexpr long long kGridAxisCap = 1LL << 31;
constexpr long long kMcBatch = 8192;

double kahan_total(const std::vector<double>& parts) {
    double s = 0, c = 0;
    for (double v : parts) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

struct KahanAcc {
    double s = 0, c = 0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

long long axis_extent(const Integer& f, int oversample, const char* what) {
    Integer n = Integer(oversample) * (2 * f + 1);
    if (!n.fits_slong_p() || n.get_si() >= kGridAxisCap)
        throw GridInfeasible(std::string(what) + ": axis extent exceeds the grid budget");
    return n.get_si();
}

struct SparseSupport {
    Integer f1{0}, f2{0};
    long long terms = 0;
};

SparseSupport sparse_support(const SparseTrigPoly& p) {
    SparseSupport s;
    for (const auto& [q, t] : p.terms) {
        Integer ax = abs(q.x), ay = abs(q.y);
        if (ax > s.f1) s.f1 = ax;
        if (ay > s.f2) s.f2 = ay;
        ++s.terms;
    }
    return s;
}

/// Mean |f| over the N1 x N2 uniform grid via one backward FFT of the
/// coefficient array.
double fft_mean_abs(const SparseTrigPoly& p, long long n1, long long n2) {
    size_t total = static_cast<size_t>(n1) * static_cast<size_t>(n2);
    fftw_complex* buf = fftw_alloc_complex(total);
    if (!buf) throw GridInfeasible("grid allocation failed");
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(n1), static_cast<int>(n2), buf, buf,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    for (size_t i = 0; i < total; ++i) buf[i][0] = buf[i][1] = 0;
    for (const auto& [q, t] : p.terms) {
        unsigned long i1 = mpz_fdiv_ui(q.x.get_mpz_t(), static_cast<unsigned long>(n1));
        unsigned long i2 = mpz_fdiv_ui(q.y.get_mpz_t(), static_cast<unsigned long>(n2));
        size_t idx = static_cast<size_t>(i1) * static_cast<size_t>(n2) + i2;
        buf[idx][0] += t.re.get_d();
        buf[idx][1] += t.im.get_d();
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    std::vector<double> rows(static_cast<size_t>(n1));
    parallel_blocks(static_cast<size_t>(n1), [&](size_t r) {
        KahanAcc acc;
        const fftw_complex* row = buf + r * static_cast<size_t>(n2);
        for (long long j = 0; j < n2; ++j) acc.add(std::hypot(row[j][0], row[j][1]));
        rows[r] = acc.s;
    });
    fftw_free(buf);
    return kahan_total(rows) / static_cast<double>(total);
}

/// Direct per-point synthesis for sparse polynomials whose dense coefficient
/// array would not fit. Phases reduce exactly through 64-bit residues.
double direct_mean_abs(const SparseTrigPoly& p, long long n1, long long n2) {
    struct T {
        uint64_t q1, q2;
        double re, im;
    };
    std::vector<T> ts;
    ts.reserve(p.terms.size());
    for (const auto& [q, t] : p.terms)
        ts.push_back({mpz_fdiv_ui(q.x.get_mpz_t(), static_cast<unsigned long>(n1)),
                      mpz_fdiv_ui(q.y.get_mpz_t(), static_cast<unsigned long>(n2)),
                      t.re.get_d(), t.im.get_d()});
    double inv1 = 1.0 / static_cast<double>(n1), inv2 = 1.0 / static_cast<double>(n2);
    std::vector<double> rows(static_cast<size_t>(n1));
    parallel_blocks(static_cast<size_t>(n1), [&](size_t r) {
        KahanAcc acc;
        uint64_t i = static_cast<uint64_t>(r);
        for (long long j = 0; j < n2; ++j) {
            double re = 0, im = 0;
            for (const T& t : ts) {
                uint64_t r1 = (t.q1 * i) % static_cast<uint64_t>(n1);
                uint64_t r2 = (t.q2 * static_cast<uint64_t>(j)) % static_cast<uint64_t>(n2);
                double u = static_cast<double>(r1) * inv1 + static_cast<double>(r2) * inv2;
                if (u >= 1) u -= 1;
                double c = std::cos(kTwoPi * u), s = std::sin(kTwoPi * u);
                re += t.re * c - t.im * s;
                im += t.re * s + t.im * c;
            }
            acc.add(std::hypot(re, im));
        }
        rows[r] = acc.s;
    });
    return kahan_total(rows) / (static_cast<double>(n1) * static_cast<double>(n2));
}

struct StructuralGridResult {
    double mean_abs = 0;
    double min_value = 0;
};

/// Cascade evaluation on the full grid. Per-axis integer residues make every
/// phase exact before the single rounding to double.
StructuralGridResult structural_grid(const StructuralProduct& sp, long long n1, long long n2) {
    size_t n = sp.size();
    std::vector<uint64_t> a1(n), a2(n);
    std::vector<double> w(n);
    bool sine = sp.osc == Oscillator::sine;
    for (size_t k = 0; k < n; ++k) {
        a1[k] = mpz_fdiv_ui(sp.freqs[k].x.get_mpz_t(), static_cast<unsigned long>(n1));
        a2[k] = mpz_fdiv_ui(sp.freqs[k].y.get_mpz_t(), static_cast<unsigned long>(n2));
        w[k] = sp.weights[k].get_d();
    }
    double inv1 = 1.0 / static_cast<double>(n1), inv2 = 1.0 / static_cast<double>(n2);
    std::vector<double> rows(static_cast<size_t>(n1));
    std::vector<double> row_min(static_cast<size_t>(n1));
    parallel_blocks(static_cast<size_t>(n1), [&](size_t r) {
        KahanAcc acc;
        double mn = std::numeric_limits<double>::infinity();
        std::vector<uint64_t> col(n);
        std::vector<double> rowphase(n);
        for (size_t k = 0; k < n; ++k) {
            rowphase[k] =
                static_cast<double>((a1[k] * static_cast<uint64_t>(r)) %
                                    static_cast<uint64_t>(n1)) *
                inv1;
            col[k] = 0;
        }
        for (long long j = 0; j < n2; ++j) {
            double val = 0, running = 1;
            for (size_t k = 0; k < n; ++k) {
                double u = rowphase[k] + static_cast<double>(col[k]) * inv2;
                if (u >= 1) u -= 1;
                double c = std::cos(kTwoPi * u);
                if (w[k] != 0)
                    val += w[k] * (sine ? std::sin(kTwoPi * u) : c) * running;
                running *= 1 + c;
                col[k] += a2[k];
                if (col[k] >= static_cast<uint64_t>(n2)) col[k] -= static_cast<uint64_t>(n2);
            }
            acc.add(std::fabs(val));
            if (val < mn) mn = val;
        }
        rows[r] = acc.s;
        row_min[r] = mn;
    });
    StructuralGridResult out;
    out.mean_abs = kahan_total(rows) / (static_cast<double>(n1) * static_cast<double>(n2));
    out.min_value = row_min[0];
    for (double v : row_min)
        if (v < out.min_value) out.min_value = v;
    return out;
}

struct StructuralDims {
    long long n1, n2;
};

StructuralDims structural_dims(const StructuralProduct& sp, int oversample) {
    if (sp.size() == 0) throw std::invalid_argument("empty cascade");
    if (oversample < 1) throw std::invalid_argument("oversample must be >= 1");
    Integer f1(0), f2(0);
    for (const auto& a : sp.freqs) {
        f1 += abs(a.x);
        f2 += abs(a.y);
    }
    StructuralDims d;
    d.n1 = axis_extent(f1, oversample, "structural grid");
    d.n2 = axis_extent(f2, oversample, "structural grid");
    // both passes: N + 2N grids, 5x the base point count
    double ops = 5.0 * static_cast<double>(d.n1) * static_cast<double>(d.n2) *
                 static_cast<double>(sp.size());
    if (ops > static_cast<double>(kGridOpCap))
        throw GridInfeasible("structural grid: evaluation budget exceeded");
    return d;
}

NormEstimate finish_grid(double est1, double est2, long long n1, long long n2,
                         int oversample) {
    NormEstimate e;
    e.method = "grid";
    e.value = est2;
    e.refinement_delta = std::fabs(est2 - est1);
    e.lower = est2 - e.refinement_delta;
    e.upper = est2 + e.refinement_delta;
    e.grid_n1 = n1;
    e.grid_n2 = n2;
    e.oversample = oversample;
    return e;
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0 && p < 1)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    return x;
}

NormEstimate l1_grid(const SparseTrigPoly& p, int oversample) {
    if (oversample < 1) throw std::invalid_argument("oversample must be >= 1");
    if (p.terms.empty()) {
        NormEstimate e;
        e.method = "grid";
        e.oversample = oversample;
        e.grid_n1 = e.grid_n2 = oversample;
        return e;
    }
    SparseSupport s = sparse_support(p);
    long long n1 = axis_extent(s.f1, oversample, "sparse grid");
    long long n2 = axis_extent(s.f2, oversample, "sparse grid");
    double base_points = static_cast<double>(n1) * static_cast<double>(n2);

    double est1, est2;
    if (base_points <= static_cast<double>(kDenseElemCap)) {
        est1 = fft_mean_abs(p, n1, n2);
        est2 = fft_mean_abs(p, 2 * n1, 2 * n2);
    } else if (5.0 * base_points * static_cast<double>(s.terms) <=
               static_cast<double>(kGridOpCap)) {
        est1 = direct_mean_abs(p, n1, n2);
        est2 = direct_mean_abs(p, 2 * n1, 2 * n2);
    } else {
        throw GridInfeasible("sparse grid: evaluation budget exceeded");
    }
    return finish_grid(est1, est2, n1, n2, oversample);
}

NormEstimate l1_grid(const StructuralProduct& sp, int oversample) {
    StructuralDims d = structural_dims(sp, oversample);
    double est1 = structural_grid(sp, d.n1, d.n2).mean_abs;
    double est2 = structural_grid(sp, 2 * d.n1, 2 * d.n2).mean_abs;
    return finish_grid(est1, est2, d.n1, d.n2, oversample);
}

bool grid_feasible(const StructuralProduct& sp, int oversample) {
    try {
        structural_dims(sp, oversample);
        return true;
    } catch (const GridInfeasible&) {
        return false;
    }
}

double structural_grid_min(const StructuralProduct& sp, int oversample) {
    StructuralDims d = structural_dims(sp, oversample);
    return structural_grid(sp, d.n1, d.n2).min_value;
}

NormEstimate l1_montecarlo(const StructuralProduct& sp, long long samples, uint64_t seed,
                           double confidence) {
    if (sp.size() == 0) throw std::invalid_argument("empty cascade");
    if (samples < 2) throw std::invalid_argument("montecarlo needs at least 2 samples");
    if (!(confidence > 0 && confidence < 1))
        throw std::invalid_argument("confidence must be in (0,1)");

    size_t n = sp.size();
    std::vector<uint64_t> a1(n), a2(n);
    std::vector<double> w(n);
    bool sine = sp.osc == Oscillator::sine;
    Integer two64 = Integer(1) << 64;
    for (size_t k = 0; k < n; ++k) {
        Integer r1, r2;
        mpz_fdiv_r(r1.get_mpz_t(), sp.freqs[k].x.get_mpz_t(), two64.get_mpz_t());
        mpz_fdiv_r(r2.get_mpz_t(), sp.freqs[k].y.get_mpz_t(), two64.get_mpz_t());
        a1[k] = mpz_get_ui(r1.get_mpz_t());
        a2[k] = mpz_get_ui(r2.get_mpz_t());
        w[k] = sp.weights[k].get_d();
    }

    size_t nbatches = static_cast<size_t>((samples + kMcBatch - 1) / kMcBatch);
    std::vector<double> bsum(nbatches), bsum2(nbatches);
    parallel_blocks(nbatches, [&](size_t b) {
        long long lo = static_cast<long long>(b) * kMcBatch;
        long long hi = std::min(samples, lo + kMcBatch);
        KahanAcc s1, s2;
        for (long long i = lo; i < hi; ++i) {
            auto pt = Philox4x32::pair64(seed, 0, static_cast<uint64_t>(i));
            double val = 0, running = 1;
            for (size_t k = 0; k < n; ++k) {
                uint64_t phase = a1[k] * pt[0] + a2[k] * pt[1];  // exact mod 2^64
                double u = static_cast<double>(phase) * 0x1p-64;
                double c = std::cos(kTwoPi * u);
                if (w[k] != 0) val += w[k] * (sine ? std::sin(kTwoPi * u) : c) * running;
                running *= 1 + c;
            }
            double av = std::fabs(val);
            s1.add(av);
            s2.add(av * av);
        }
        bsum[b] = s1.s;
        bsum2[b] = s2.s;
    });
    double total = kahan_total(bsum);
    double total2 = kahan_total(bsum2);
    double nn = static_cast<double>(samples);
    double mean = total / nn;
    double var = std::max(0.0, (total2 - nn * mean * mean) / (nn - 1));
    double se = std::sqrt(var / nn);
    double z = normal_quantile(0.5 * (1 + confidence));

    NormEstimate e;
    e.method = "montecarlo";
    e.value = mean;
    e.lower = mean - z * se;
    e.upper = mean + z * se;
    e.samples = samples;
    e.seed = seed;
    e.std_error = se;
    e.confidence = confidence;
    return e;
}

NormEstimate l1_coeff_bounds(const SparseTrigPoly& p) {
    Rational lo = coeff_max_lower(p);
    Rational hi = coeff_sum(p);
    NormEstimate e;
    e.method = "coeff-bound";
    e.exact_lower = to_string(lo);
    e.exact_upper = to_string(hi);
    // outward rounding keeps the double bracket sound; exactly representable
    // endpoints stay put
    double lod = lo.get_d(), hid = hi.get_d();
    e.lower = Rational(lod) == lo
                  ? lod
                  : std::nextafter(lod, -std::numeric_limits<double>::infinity());
    e.upper = Rational(hid) == hi
                  ? hid
                  : std::nextafter(hid, std::numeric_limits<double>::infinity());
    e.value = 0.5 * (e.lower + e.upper);
    return e;
}

}  // namespace ornstein
