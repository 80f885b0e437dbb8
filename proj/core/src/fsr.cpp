#include "qsv/fsr.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "qsv/parallel.hpp"

namespace qsv {
namespace {

using cplx = std::complex<double>;

// FFTW plans for one area size. Plan creation is serialized; execution with
// the new-array interface is thread-safe.
class DftPlans {
 public:
  explicit DftPlans(int n) : n_(n) {
    std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(a.size());
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    constexpr unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);

    // Canonical half of the spectrum: the lower row-major index of each
    // {k, -k} pair. Row r holds canonical columns [0, row_end[r]).
    for (int r = 0; r <= n / 2; ++r) {
      int end = 0;
      for (int c = 0; c < n; ++c) {
        int mirror = ((n - r) % n) * n + (n - c) % n;
        if (r * n + c <= mirror) end = c + 1;
      }
      if (end > 0) row_end_.push_back(end);
    }
  }
  ~DftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  DftPlans(const DftPlans&) = delete;
  DftPlans& operator=(const DftPlans&) = delete;

  void forward(const std::vector<cplx>& in, std::vector<cplx>& out) const {
    fftw_execute_dft(forward_, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
  void backward(const std::vector<cplx>& in, std::vector<cplx>& out) const {
    fftw_execute_dft(backward_, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }

  int size() const { return n_; }
  const std::vector<int>& canonical_row_end() const { return row_end_; }

 private:
  int n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  std::vector<int> row_end_;
};

const DftPlans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<DftPlans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<DftPlans>(n);
  return *slot;
}

double weighted_energy(const SupportArea& support, const std::vector<cplx>& coeffs,
                       const DftPlans& plans) {
  std::vector<cplx> model(coeffs.size());
  plans.backward(coeffs, model);
  double e = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    double r = support.values[i] - model[i].real();
    e += support.weights[i] * r * r;
  }
  return e;
}

}  // namespace

void FsrParams::validate() const {
  if (block_size < 1) throw ConfigError("fsr block_size must be >= 1");
  if (border < 0) throw ConfigError("fsr border must be >= 0");
  if (iterations < 1) throw ConfigError("fsr iterations must be >= 1");
  if (!(spatial_decay > 0.0 && spatial_decay < 1.0)) {
    throw ConfigError("fsr spatial_decay must lie in (0, 1)");
  }
  if (!(freq_decay > 0.0 && freq_decay <= 1.0)) {
    throw ConfigError("fsr freq_decay must lie in (0, 1]");
  }
  if (!(compensation > 0.0 && compensation <= 1.0)) {
    throw ConfigError("fsr compensation must lie in (0, 1]");
  }
  if (!(projected_reliability >= 0.0 && projected_reliability <= 1.0)) {
    throw ConfigError("fsr projected_reliability must lie in [0, 1]");
  }
}

std::vector<double> make_weight(const std::vector<std::uint8_t>& measured,
                                const std::vector<std::uint8_t>& projected, int size,
                                const FsrParams& params) {
  const auto n = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
  if (measured.size() != n || (!projected.empty() && projected.size() != n)) {
    throw DimensionError("weight indicators must be " + dims(size, size));
  }
  const double center = (size - 1) / 2.0;
  std::vector<double> w(n, 0.0);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      auto i = static_cast<std::size_t>(r * size + c);
      double factor = 0.0;
      if (measured[i]) {
        factor = 1.0;
      } else if (!projected.empty() && projected[i]) {
        factor = params.projected_reliability;
      }
      if (factor == 0.0) continue;
      double dist = std::hypot(r - center, c - center);
      w[i] = factor * std::pow(params.spatial_decay, dist);
    }
  }
  return w;
}

std::vector<double> frequency_prior(int size, double freq_decay) {
  std::vector<double> prior(static_cast<std::size_t>(size) * size);
  for (int r = 0; r < size; ++r) {
    int kr = std::min(r, size - r);
    for (int c = 0; c < size; ++c) {
      int kc = std::min(c, size - c);
      prior[static_cast<std::size_t>(r * size + c)] =
          std::pow(freq_decay, std::sqrt(double(kr * kr + kc * kc)));
    }
  }
  return prior;
}

std::vector<double> build_block_model(const SupportArea& support, const FsrParams& params,
                                      BlockModelTrace* trace) {
  const int n = support.size;
  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (n < 1 || support.values.size() != total || support.weights.size() != total) {
    throw DimensionError("support area must hold " + dims(n, n) + " values and weights");
  }
  const DftPlans& plans = plans_for(n);

  std::vector<cplx> buf(total), weight_spec(total), residual_spec(total);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    buf[i] = support.weights[i];
    weight_sum += support.weights[i];
  }
  if (!(weight_sum > 0.0)) throw Error("empty support");
  plans.forward(buf, weight_spec);
  for (std::size_t i = 0; i < total; ++i) buf[i] = support.weights[i] * support.values[i];
  plans.forward(buf, residual_spec);

  const std::vector<double> prior = frequency_prior(n, params.freq_decay);
  const std::vector<int>& row_end = plans.canonical_row_end();
  const int rows = static_cast<int>(row_end.size());
  std::vector<cplx> coeffs(total, cplx{});

  // Split real/imaginary storage keeps the inner loops free of complex
  // library calls.
  std::vector<double> res_re(total), res_im(total), w_re(total), w_im(total);
  for (std::size_t i = 0; i < total; ++i) {
    res_re[i] = residual_spec[i].real();
    res_im[i] = residual_spec[i].imag();
    w_re[i] = weight_spec[i].real();
    w_im[i] = weight_spec[i].imag();
  }

  if (trace) {
    trace->steps.clear();
    trace->initial_energy = weighted_energy(support, coeffs, plans);
  }

  for (int it = 0; it < params.iterations; ++it) {
    int best = 0;
    double best_score = -1.0;
    for (int r = 0; r < rows; ++r) {
      const int base = r * n;
      for (int c = 0; c < row_end[static_cast<std::size_t>(r)]; ++c) {
        const auto k = static_cast<std::size_t>(base + c);
        const double score = prior[k] * (res_re[k] * res_re[k] + res_im[k] * res_im[k]);
        if (score > best_score) {
          best_score = score;
          best = base + c;
        }
      }
    }
    const int sr = best / n, sc = best % n;
    const int mr = (n - sr) % n, mc = (n - sc) % n;
    const bool self_conjugate = (mr == sr && mc == sc);

    const double scale = params.compensation / weight_sum;
    const double a = scale * res_re[static_cast<std::size_t>(best)];
    const double b = self_conjugate ? 0.0 : scale * res_im[static_cast<std::size_t>(best)];
    coeffs[static_cast<std::size_t>(best)] += cplx(a, b);
    if (!self_conjugate) coeffs[static_cast<std::size_t>(mr * n + mc)] += cplx(a, -b);

    // R_w(k) -= c W(k - s) + conj(c) W(k + s) on the canonical half. Each
    // row splits into segments where both shifted column indices are
    // contiguous.
    const int cuts[] = {0, std::min(sc, n - sc), std::max(sc, n - sc), n};
    for (int r = 0; r < rows; ++r) {
      const int base = r * n;
      const int minus_row = ((r - sr + n) % n) * n;
      const int plus_row = ((r + sr) % n) * n;
      const int end = row_end[static_cast<std::size_t>(r)];
      double* rr = res_re.data() + base;
      double* ri = res_im.data() + base;
      for (int seg = 0; seg < 3; ++seg) {
        const int lo = cuts[seg];
        const int hi = std::min(cuts[seg + 1], end);
        if (lo >= hi) continue;
        // Within [lo, hi) neither (c - sc) nor (c + sc) wraps past n.
        const int m_off = lo >= sc ? -sc : n - sc;
        const int p_off = lo + sc >= n ? sc - n : sc;
        const double* mre = w_re.data() + minus_row + m_off;
        const double* mim = w_im.data() + minus_row + m_off;
        if (self_conjugate) {
          for (int c = lo; c < hi; ++c) {
            rr[c] -= a * mre[c];
            ri[c] -= a * mim[c];
          }
        } else {
          const double* pre = w_re.data() + plus_row + p_off;
          const double* pim = w_im.data() + plus_row + p_off;
          for (int c = lo; c < hi; ++c) {
            rr[c] -= (a * mre[c] - b * mim[c]) + (a * pre[c] + b * pim[c]);
            ri[c] -= (a * mim[c] + b * mre[c]) + (a * pim[c] - b * pre[c]);
          }
        }
      }
    }

    if (trace) {
      trace->steps.push_back({sr, sc, weighted_energy(support, coeffs, plans)});
    }
  }

  plans.backward(coeffs, buf);
  std::vector<double> model(total);
  for (std::size_t i = 0; i < total; ++i) model[i] = buf[i].real();
  return model;
}

std::vector<BlockIndex> block_grid(int width, int height, const FsrParams& params) {
  std::vector<BlockIndex> blocks;
  const int rows = (height + params.block_size - 1) / params.block_size;
  const int cols = (width + params.block_size - 1) / params.block_size;
  blocks.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) blocks.push_back({r, c});
  }
  return blocks;
}

std::vector<double> reconstruct_block(const SampledFrame& sampled,
                                      const ProjectionOverlay* projected,
                                      const FsrParams& params, BlockIndex block) {
  const int n = params.area();
  const int top = block.row * params.block_size;
  const int left = block.col * params.block_size;
  const int core_h = std::min(params.block_size, sampled.height() - top);
  const int core_w = std::min(params.block_size, sampled.width() - left);
  if (core_h <= 0 || core_w <= 0) throw DimensionError("block lies outside the frame");

  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  SupportArea support{n, std::vector<double>(total, 0.0), {}};
  std::vector<std::uint8_t> measured(total, 0), proj(total, 0);
  bool any = false;
  for (int r = 0; r < n; ++r) {
    const int fr = top - params.border + r;
    if (fr < 0 || fr >= sampled.height()) continue;
    for (int c = 0; c < n; ++c) {
      const int fc = left - params.border + c;
      if (fc < 0 || fc >= sampled.width()) continue;
      const auto i = static_cast<std::size_t>(r * n + c);
      if (sampled.mask()(fr, fc)) {
        measured[i] = 1;
        support.values[i] = sampled.frame()(fr, fc);
        any = true;
      } else if (projected && projected->mask(fr, fc)) {
        proj[i] = 1;
        support.values[i] = projected->values(fr, fc);
        any = any || params.projected_reliability > 0.0;
      }
    }
  }

  std::vector<double> out(static_cast<std::size_t>(core_h) * static_cast<std::size_t>(core_w), 0.0);
  if (!any) return out;
  support.weights = make_weight(measured, proj, n, params);
  const std::vector<double> model = build_block_model(support, params);
  for (int r = 0; r < core_h; ++r) {
    for (int c = 0; c < core_w; ++c) {
      out[static_cast<std::size_t>(r * core_w + c)] =
          model[static_cast<std::size_t>((params.border + r) * n + params.border + c)];
    }
  }
  return out;
}

Frame reconstruct_frame(const SampledFrame& sampled, const ProjectionBuffer* projected,
                        const FsrParams& params, bool overwrite_projected, int threads) {
  params.validate();
  std::optional<ProjectionOverlay> overlay;
  if (projected && !projected->empty()) {
    if (projected->width() != sampled.width() || projected->height() != sampled.height()) {
      throw DimensionError("projection buffer " + dims(projected->width(), projected->height()) +
                           " vs frame " + dims(sampled.width(), sampled.height()));
    }
    overlay = to_sampled_overlay(*projected);
  }
  const ProjectionOverlay* ov = overlay ? &*overlay : nullptr;

  const auto blocks = block_grid(sampled.width(), sampled.height(), params);
  std::vector<std::vector<double>> models(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t i) {
    models[i] = reconstruct_block(sampled, ov, params, blocks[i]);
  });

  Plane<double> out(sampled.width(), sampled.height(), 0.0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int top = blocks[i].row * params.block_size;
    const int left = blocks[i].col * params.block_size;
    const int core_h = std::min(params.block_size, sampled.height() - top);
    const int core_w = std::min(params.block_size, sampled.width() - left);
    for (int r = 0; r < core_h; ++r) {
      for (int c = 0; c < core_w; ++c) {
        out(top + r, left + c) = models[i][static_cast<std::size_t>(r * core_w + c)];
      }
    }
  }

  for (int r = 0; r < sampled.height(); ++r) {
    for (int c = 0; c < sampled.width(); ++c) {
      if (sampled.mask()(r, c)) {
        out(r, c) = sampled.frame()(r, c);
      } else if (overwrite_projected && ov && ov->mask(r, c)) {
        out(r, c) = ov->values(r, c);
      } else {
        out(r, c) = std::clamp(out(r, c), 0.0, 255.0);
      }
    }
  }
  return Frame(std::move(out), sampled.t());
}

}  // namespace qsv
