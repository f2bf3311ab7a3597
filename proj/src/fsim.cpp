#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/metrics.hpp"

namespace lumen {

namespace {

// Filter bank and pooling constants of the reference FSIM construction.
constexpr int kScales = 4;
constexpr int kOrients = 4;
constexpr double kMinWaveLength = 6.0;
constexpr double kMult = 2.0;
constexpr double kSigmaOnf = 0.55;
constexpr double kDThetaOnSigma = 1.2;
constexpr double kNoiseK = 2.0;
constexpr double kEpsilon = 1e-4;
constexpr double kLowpassCutoff = 0.45;
constexpr int kLowpassOrder = 15;

constexpr double kT1 = 0.85;
constexpr double kT2 = 160.0;
constexpr double kT3 = 200.0;
constexpr double kT4 = 200.0;
constexpr double kLambda = 0.03;

constexpr int kMinSide = 32;

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

using cplx = std::complex<double>;

class Fft2 {
public:
    Fft2(int rows, int cols) : rows_(rows), cols_(cols), n_(static_cast<std::size_t>(rows) * cols) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_));
        std::lock_guard lock(planner_mutex());
        fwd_ = fftw_plan_dft_2d(rows, cols, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_2d(rows, cols, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft2() {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(fwd_);
            fftw_destroy_plan(inv_);
        }
        fftw_free(buf_);
    }
    Fft2(const Fft2&) = delete;
    Fft2& operator=(const Fft2&) = delete;

    std::vector<cplx> forward(const std::vector<cplx>& in) { return run(in, fwd_, 1.0); }
    // Scaled by 1 / (rows * cols), like ifft2.
    std::vector<cplx> inverse(const std::vector<cplx>& in) { return run(in, inv_, 1.0 / n_); }

private:
    std::vector<cplx> run(const std::vector<cplx>& in, fftw_plan plan, double scale) {
        for (std::size_t i = 0; i < n_; ++i) {
            buf_[i][0] = in[i].real();
            buf_[i][1] = in[i].imag();
        }
        fftw_execute(plan);
        std::vector<cplx> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = cplx(buf_[i][0] * scale, buf_[i][1] * scale);
        return out;
    }

    int rows_;
    int cols_;
    std::size_t n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan inv_ = nullptr;
};

// Normalized frequency coordinate of FFT index i on an axis of length n,
// in [-0.5, 0.5], zero frequency at index 0.
double freq_coord(int i, int n) {
    const int half = n / 2;
    const int k = (i + half) % n;  // position in the centred (pre-ifftshift) grid
    if (n % 2) return (k - (n - 1) / 2.0) / (n - 1);
    return (k - n / 2.0) / n;
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (n % 2) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return (lo + hi) / 2.0;
}

struct FilterBank {
    int rows = 0;
    int cols = 0;
    // filters[s * kOrients + o], real frequency-domain filters
    std::vector<std::vector<double>> filters;
    // Per orientation: noise-energy terms derived from the spatial filters
    std::vector<double> em_n;             // sum(filter_s1^2)
    std::vector<double> sum_an2;          // sum over pixels of sum_s ifft(filter_s)^2
    std::vector<double> sum_aiaj;         // sum over pixels of sum_{i<j} ifft_i * ifft_j
};

FilterBank build_bank(int rows, int cols, Fft2& fft) {
    FilterBank bank;
    bank.rows = rows;
    bank.cols = cols;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;

    std::vector<double> radius(n), sintheta(n), costheta(n), lowpass(n);
    for (int r = 0; r < rows; ++r) {
        const double y = freq_coord(r, rows);
        for (int c = 0; c < cols; ++c) {
            const double x = freq_coord(c, cols);
            const std::size_t i = static_cast<std::size_t>(r) * cols + c;
            const double rad = std::sqrt(x * x + y * y);
            lowpass[i] = 1.0 / (1.0 + std::pow(rad / kLowpassCutoff, 2 * kLowpassOrder));
            radius[i] = rad;
            const double theta = std::atan2(-y, x);
            sintheta[i] = std::sin(theta);
            costheta[i] = std::cos(theta);
        }
    }
    radius[0] = 1.0;

    std::vector<std::vector<double>> log_gabor(kScales, std::vector<double>(n));
    const double log_sigma = std::log(kSigmaOnf);
    for (int s = 0; s < kScales; ++s) {
        const double fo = 1.0 / (kMinWaveLength * std::pow(kMult, s));
        for (std::size_t i = 0; i < n; ++i) {
            const double l = std::log(radius[i] / fo);
            log_gabor[s][i] = std::exp(-(l * l) / (2.0 * log_sigma * log_sigma)) * lowpass[i];
        }
        log_gabor[s][0] = 0.0;
    }

    const double theta_sigma = std::numbers::pi / kOrients / kDThetaOnSigma;
    const double scale = std::sqrt(static_cast<double>(n));
    bank.filters.resize(kScales * kOrients);
    bank.em_n.resize(kOrients);
    bank.sum_an2.resize(kOrients);
    bank.sum_aiaj.resize(kOrients);
    for (int o = 0; o < kOrients; ++o) {
        const double angl = o * std::numbers::pi / kOrients;
        std::vector<double> spread(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ds = sintheta[i] * std::cos(angl) - costheta[i] * std::sin(angl);
            const double dc = costheta[i] * std::cos(angl) + sintheta[i] * std::sin(angl);
            const double dtheta = std::abs(std::atan2(ds, dc));
            spread[i] = std::exp(-(dtheta * dtheta) / (2.0 * theta_sigma * theta_sigma));
        }
        std::vector<std::vector<double>> spatial(kScales, std::vector<double>(n));
        for (int s = 0; s < kScales; ++s) {
            std::vector<double>& f = bank.filters[s * kOrients + o];
            f.resize(n);
            std::vector<cplx> fc(n);
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = log_gabor[s][i] * spread[i];
                fc[i] = f[i];
            }
            const auto sp = fft.inverse(fc);
            for (std::size_t i = 0; i < n; ++i) spatial[s][i] = sp[i].real() * scale;
            if (s == 0) {
                double e = 0.0;
                for (double v : f) e += v * v;
                bank.em_n[o] = e;
            }
        }
        double an2 = 0.0, aiaj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (int s = 0; s < kScales; ++s) an2 += spatial[s][i] * spatial[s][i];
            for (int si = 0; si < kScales - 1; ++si)
                for (int sj = si + 1; sj < kScales; ++sj) aiaj += spatial[si][i] * spatial[sj][i];
        }
        bank.sum_an2[o] = an2;
        bank.sum_aiaj[o] = aiaj;
    }
    return bank;
}

std::vector<double> phase_congruency_with(const std::vector<double>& plane, const FilterBank& bank, Fft2& fft) {
    const std::size_t n = plane.size();
    std::vector<cplx> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = plane[i];
    const auto image_fft = fft.forward(in);

    std::vector<double> energy_all(n, 0.0), an_all(n, 0.0);
    std::vector<cplx> prod(n);
    for (int o = 0; o < kOrients; ++o) {
        std::vector<std::vector<cplx>> eo(kScales);
        std::vector<double> sum_e(n, 0.0), sum_o(n, 0.0), sum_an(n, 0.0);
        for (int s = 0; s < kScales; ++s) {
            const auto& f = bank.filters[s * kOrients + o];
            for (std::size_t i = 0; i < n; ++i) prod[i] = image_fft[i] * f[i];
            eo[s] = fft.inverse(prod);
            for (std::size_t i = 0; i < n; ++i) {
                sum_an[i] += std::abs(eo[s][i]);
                sum_e[i] += eo[s][i].real();
                sum_o[i] += eo[s][i].imag();
            }
        }

        std::vector<double> energy(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double xe = std::sqrt(sum_e[i] * sum_e[i] + sum_o[i] * sum_o[i]) + kEpsilon;
            const double mean_e = sum_e[i] / xe;
            const double mean_o = sum_o[i] / xe;
            double acc = 0.0;
            for (int s = 0; s < kScales; ++s) {
                const double e = eo[s][i].real(), od = eo[s][i].imag();
                acc += e * mean_e + od * mean_o - std::abs(e * mean_o - od * mean_e);
            }
            energy[i] = acc;
        }

        // Noise threshold from the smallest-scale response (Rayleigh model).
        std::vector<double> e2(n);
        for (std::size_t i = 0; i < n; ++i) e2[i] = std::norm(eo[0][i]);
        const double mean_e2n = -median(std::move(e2)) / std::log(0.5);
        const double noise_power = mean_e2n / bank.em_n[o];
        const double est_noise_energy2 = 2.0 * noise_power * bank.sum_an2[o] + 4.0 * noise_power * bank.sum_aiaj[o];
        const double tau = std::sqrt(est_noise_energy2 / 2.0);
        const double est_noise_energy = tau * std::sqrt(std::numbers::pi / 2.0);
        const double est_noise_sigma = std::sqrt((2.0 - std::numbers::pi / 2.0) * tau * tau);
        const double threshold = (est_noise_energy + kNoiseK * est_noise_sigma) / 1.7;

        for (std::size_t i = 0; i < n; ++i) {
            energy_all[i] += std::max(energy[i] - threshold, 0.0);
            an_all[i] += sum_an[i];
        }
    }

    std::vector<double> pc(n);
    for (std::size_t i = 0; i < n; ++i) pc[i] = an_all[i] > 0.0 ? energy_all[i] / an_all[i] : 0.0;
    return pc;
}

// conv2(plane, kernel, 'same') with a 3x3 kernel and zero padding.
std::vector<double> conv3_same(const std::vector<double>& src, int rows, int cols, const double (&k)[3][3]) {
    std::vector<double> out(src.size(), 0.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int u = -1; u <= 1; ++u)
                for (int v = -1; v <= 1; ++v) {
                    const int rr = r - u, cc = c - v;
                    if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
                    acc += src[static_cast<std::size_t>(rr) * cols + cc] * k[u + 1][v + 1];
                }
            out[static_cast<std::size_t>(r) * cols + c] = acc;
        }
    return out;
}

// conv2 'same' with an F x F box filter followed by taking every F-th
// sample, as done before scoring frames larger than 256 pixels.
std::vector<double> box_downsample(const std::vector<double>& src, int rows, int cols, int f, int& out_rows,
                                   int& out_cols) {
    out_rows = (rows + f - 1) / f;
    out_cols = (cols + f - 1) / f;
    const int after = f / 2;          // samples past the centre in 'same' alignment
    const int before = f - 1 - after;
    const double inv = 1.0 / (static_cast<double>(f) * f);
    std::vector<double> out(static_cast<std::size_t>(out_rows) * out_cols);
    for (int r = 0; r < out_rows; ++r)
        for (int c = 0; c < out_cols; ++c) {
            const int r0 = r * f, c0 = c * f;
            double acc = 0.0;
            for (int rr = r0 - before; rr <= r0 + after; ++rr)
                for (int cc = c0 - before; cc <= c0 + after; ++cc)
                    if (rr >= 0 && rr < rows && cc >= 0 && cc < cols)
                        acc += src[static_cast<std::size_t>(rr) * cols + cc];
            out[static_cast<std::size_t>(r) * out_cols + c] = acc * inv;
        }
    return out;
}

struct Yiq {
    int rows = 0;
    int cols = 0;
    std::vector<double> y, i, q;
};

Yiq to_yiq(const RgbImage& img) {
    Yiq out;
    out.rows = img.height();
    out.cols = img.width();
    const std::size_t n = img.size();
    out.y.resize(n);
    out.i.resize(n);
    out.q.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Rgb& px = img.pixels()[k];
        const double r = 255.0 * px.r, g = 255.0 * px.g, b = 255.0 * px.b;
        out.y[k] = 0.299 * r + 0.587 * g + 0.114 * b;
        out.i[k] = 0.596 * r - 0.274 * g - 0.322 * b;
        out.q[k] = 0.211 * r - 0.523 * g + 0.312 * b;
    }
    return out;
}

void downsample(Yiq& img) {
    const int f = std::max(1, static_cast<int>(std::lround(std::min(img.rows, img.cols) / 256.0)));
    if (f <= 1) return;
    int r = 0, c = 0;
    img.y = box_downsample(img.y, img.rows, img.cols, f, r, c);
    img.i = box_downsample(img.i, img.rows, img.cols, f, r, c);
    img.q = box_downsample(img.q, img.rows, img.cols, f, r, c);
    img.rows = r;
    img.cols = c;
}

// MATLAB-style real part of a^lambda for possibly negative a.
double real_pow(double a, double lambda) {
    if (a >= 0.0) return std::pow(a, lambda);
    return std::pow(-a, lambda) * std::cos(lambda * std::numbers::pi);
}

}  // namespace

std::vector<double> phase_congruency(std::span<const double> plane, int width, int height) {
    if (plane.size() != static_cast<std::size_t>(width) * height)
        throw DimensionMismatch("phase_congruency: plane size mismatch");
    Fft2 fft(height, width);
    const FilterBank bank = build_bank(height, width, fft);
    return phase_congruency_with(std::vector<double>(plane.begin(), plane.end()), bank, fft);
}

FsimResult feature_similarity(const RgbImage& ref, const RgbImage& test) {
    if (ref.width() != test.width() || ref.height() != test.height())
        throw DimensionMismatch("fsimc: image dimensions differ");
    if (ref.width() < kMinSide || ref.height() < kMinSide)
        throw DimensionMismatch("fsimc: image smaller than 32x32");

    Yiq a = to_yiq(ref);
    Yiq b = to_yiq(test);
    downsample(a);
    downsample(b);
    const int rows = a.rows, cols = a.cols;

    Fft2 fft(rows, cols);
    const FilterBank bank = build_bank(rows, cols, fft);
    const auto pc1 = phase_congruency_with(a.y, bank, fft);
    const auto pc2 = phase_congruency_with(b.y, bank, fft);

    static constexpr double kDx[3][3] = {{3 / 16.0, 0, -3 / 16.0}, {10 / 16.0, 0, -10 / 16.0}, {3 / 16.0, 0, -3 / 16.0}};
    static constexpr double kDy[3][3] = {{3 / 16.0, 10 / 16.0, 3 / 16.0}, {0, 0, 0}, {-3 / 16.0, -10 / 16.0, -3 / 16.0}};
    const auto ix1 = conv3_same(a.y, rows, cols, kDx), iy1 = conv3_same(a.y, rows, cols, kDy);
    const auto ix2 = conv3_same(b.y, rows, cols, kDx), iy2 = conv3_same(b.y, rows, cols, kDy);

    double sum_sim = 0.0, sum_simc = 0.0, sum_pcm = 0.0;
    for (std::size_t k = 0; k < pc1.size(); ++k) {
        const double gm1 = std::sqrt(ix1[k] * ix1[k] + iy1[k] * iy1[k]);
        const double gm2 = std::sqrt(ix2[k] * ix2[k] + iy2[k] * iy2[k]);
        const double pc_sim = (2.0 * pc1[k] * pc2[k] + kT1) / (pc1[k] * pc1[k] + pc2[k] * pc2[k] + kT1);
        const double g_sim = (2.0 * gm1 * gm2 + kT2) / (gm1 * gm1 + gm2 * gm2 + kT2);
        const double pcm = std::max(pc1[k], pc2[k]);
        const double i_sim = (2.0 * a.i[k] * b.i[k] + kT3) / (a.i[k] * a.i[k] + b.i[k] * b.i[k] + kT3);
        const double q_sim = (2.0 * a.q[k] * b.q[k] + kT4) / (a.q[k] * a.q[k] + b.q[k] * b.q[k] + kT4);
        const double sim = g_sim * pc_sim * pcm;
        sum_sim += sim;
        sum_simc += sim * real_pow(i_sim * q_sim, kLambda);
        sum_pcm += pcm;
    }
    if (!(sum_pcm > 0.0)) throw InvalidArgument("fsimc: no phase structure in either image");
    return FsimResult{sum_sim / sum_pcm, sum_simc / sum_pcm};
}

MetricScore fsimc(const RgbImage& ref, const RgbImage& test) {
    try {
        return MetricScore::success("fsimc", feature_similarity(ref, test).fsimc);
    } catch (const InvalidArgument&) {
        return MetricScore::failure("fsimc", "no_phase_structure");
    }
}

}  // namespace lumen
