#include "lginet/numcore/ops.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "lginet/errors.hpp"

namespace lginet::ops {

namespace {

using ImplPtr = std::shared_ptr<TensorImpl>;

Tape* recording_tape(std::initializer_list<const Tensor*> inputs) {
  Tape* tape = active_tape();
  if (tape == nullptr) return nullptr;
  for (const Tensor* t : inputs) {
    if (t->requires_grad()) return tape;
  }
  return nullptr;
}

Tape* recording_tape(const std::vector<Tensor>& inputs) {
  Tape* tape = active_tape();
  if (tape == nullptr) return nullptr;
  for (const Tensor& t : inputs) {
    if (t.requires_grad()) return tape;
  }
  return nullptr;
}

void round_if_single(Tensor& out) {
  if (current_precision() != Precision::kFloat32) return;
  for (double& v : out.mutable_data()) v = static_cast<double>(static_cast<float>(v));
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + shape_to_string(a.shape()) +
                       " and " + shape_to_string(b.shape()));
}

void require_rank(const char* op, const Tensor& t, std::size_t rank) {
  if (t.rank() != rank) {
    throw DimensionError(std::string(op) + ": expected rank " + std::to_string(rank) +
                         ", got shape " + shape_to_string(t.shape()));
  }
}

// out += a[n,k] * b[k,m]
void gemm_acc(const double* a, const double* b, double* out, std::size_t n, std::size_t k,
              std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    double* out_row = out + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      if (av == 0.0) continue;
      const double* b_row = b + p * m;
      for (std::size_t j = 0; j < m; ++j) out_row[j] += av * b_row[j];
    }
  }
}

// out[n,k] += g[n,m] * b[k,m]^T
void gemm_nt_acc(const double* g, const double* b, double* out, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* g_row = g + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double* b_row = b + p * m;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += g_row[j] * b_row[j];
      out[i * k + p] += acc;
    }
  }
}

// out[k,m] += a[n,k]^T * g[n,m]
void gemm_tn_acc(const double* a, const double* g, double* out, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* g_row = g + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      if (av == 0.0) continue;
      double* out_row = out + p * m;
      for (std::size_t j = 0; j < m; ++j) out_row[j] += av * g_row[j];
    }
  }
}

template <typename Fn>
Tensor unary(const Tensor& x, Fn&& value_fn) {
  Tensor out(x.shape());
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = value_fn(src[i]);
  round_if_single(out);
  return out;
}

}  // namespace

Tensor linear(const Tensor& x, const Tensor& weight, const std::optional<Tensor>& bias) {
  require_rank("linear", weight, 2);
  if (x.rank() == 0 || x.shape().back() != weight.dim(0)) shape_error("linear", x, weight);
  const std::size_t d_in = weight.dim(0);
  const std::size_t d_out = weight.dim(1);
  if (bias && (bias->rank() != 1 || bias->dim(0) != d_out)) shape_error("linear", weight, *bias);
  const std::size_t rows = x.numel() / d_in;

  Shape out_shape = x.shape();
  out_shape.back() = d_out;
  Tensor out(out_shape);
  auto y = out.mutable_data();
  if (bias) {
    auto b = bias->data();
    for (std::size_t r = 0; r < rows; ++r)
      std::copy(b.begin(), b.end(), y.begin() + static_cast<std::ptrdiff_t>(r * d_out));
  }
  gemm_acc(x.data().data(), weight.data().data(), y.data(), rows, d_in, d_out);
  round_if_single(out);

  Tape* tape = bias ? recording_tape({&x, &weight, &*bias}) : recording_tape({&x, &weight});
  if (tape) {
    out.set_requires_grad();
    ImplPtr xi = x.impl(), wi = weight.impl();
    ImplPtr bi = bias ? bias->impl() : nullptr;
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, wi, bi, o, rows, d_in, d_out] {
      const double* g = o->grad.data();
      if (xi->requires_grad) gemm_nt_acc(g, wi->data.data(), xi->grad_buffer().data(), rows, d_in, d_out);
      if (wi->requires_grad) gemm_tn_acc(xi->data.data(), g, wi->grad_buffer().data(), rows, d_in, d_out);
      if (bi && bi->requires_grad) {
        auto& gb = bi->grad_buffer();
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t j = 0; j < d_out; ++j) gb[j] += g[r * d_out + j];
      }
    });
  }
  return out;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_rank("matmul", a, 2);
  require_rank("matmul", b, 2);
  if (a.dim(1) != b.dim(0)) shape_error("matmul", a, b);
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(1);
  Tensor out({n, m});
  gemm_acc(a.data().data(), b.data().data(), out.mutable_data().data(), n, k, m);
  round_if_single(out);
  if (Tape* tape = recording_tape({&a, &b})) {
    out.set_requires_grad();
    ImplPtr ai = a.impl(), bi = b.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [ai, bi, o, n, k, m] {
      const double* g = o->grad.data();
      if (ai->requires_grad) gemm_nt_acc(g, bi->data.data(), ai->grad_buffer().data(), n, k, m);
      if (bi->requires_grad) gemm_tn_acc(ai->data.data(), g, bi->grad_buffer().data(), n, k, m);
    });
  }
  return out;
}

Tensor transpose(const Tensor& a) {
  require_rank("transpose", a, 2);
  const std::size_t n = a.dim(0), m = a.dim(1);
  Tensor out({m, n});
  auto src = a.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) dst[j * n + i] = src[i * m + j];
  if (Tape* tape = recording_tape({&a})) {
    out.set_requires_grad();
    ImplPtr ai = a.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [ai, o, n, m] {
      auto& ga = ai->grad_buffer();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) ga[i * m + j] += o->grad[j * n + i];
    });
  }
  return out;
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (shape_numel(shape) != a.numel()) {
    throw DimensionError("reshape: cannot view " + shape_to_string(a.shape()) + " as " +
                         shape_to_string(shape));
  }
  Tensor out(std::move(shape), std::vector<double>(a.data().begin(), a.data().end()));
  if (Tape* tape = recording_tape({&a})) {
    out.set_requires_grad();
    ImplPtr ai = a.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [ai, o] {
      auto& ga = ai->grad_buffer();
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += o->grad[i];
    });
  }
  return out;
}

namespace {

enum class Binary { kAdd, kSub, kMul };

Tensor binary(const Tensor& a, const Tensor& b, Binary kind, const char* name) {
  if (a.shape() != b.shape()) shape_error(name, a, b);
  Tensor out(a.shape());
  auto x = a.data();
  auto y = b.data();
  auto z = out.mutable_data();
  for (std::size_t i = 0; i < z.size(); ++i) {
    switch (kind) {
      case Binary::kAdd: z[i] = x[i] + y[i]; break;
      case Binary::kSub: z[i] = x[i] - y[i]; break;
      case Binary::kMul: z[i] = x[i] * y[i]; break;
    }
  }
  round_if_single(out);
  if (Tape* tape = recording_tape({&a, &b})) {
    out.set_requires_grad();
    ImplPtr ai = a.impl(), bi = b.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [ai, bi, o, kind] {
      const auto& g = o->grad;
      if (ai->requires_grad) {
        auto& ga = ai->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i)
          ga[i] += kind == Binary::kMul ? g[i] * bi->data[i] : g[i];
      }
      if (bi->requires_grad) {
        auto& gb = bi->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) {
          switch (kind) {
            case Binary::kAdd: gb[i] += g[i]; break;
            case Binary::kSub: gb[i] -= g[i]; break;
            case Binary::kMul: gb[i] += g[i] * ai->data[i]; break;
          }
        }
      }
    });
  }
  return out;
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) { return binary(a, b, Binary::kAdd, "add"); }
Tensor sub(const Tensor& a, const Tensor& b) { return binary(a, b, Binary::kSub, "sub"); }
Tensor mul(const Tensor& a, const Tensor& b) { return binary(a, b, Binary::kMul, "mul"); }

Tensor scale(const Tensor& a, double factor) {
  Tensor out = unary(a, [factor](double v) { return v * factor; });
  if (Tape* tape = recording_tape({&a})) {
    out.set_requires_grad();
    ImplPtr ai = a.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [ai, o, factor] {
      auto& ga = ai->grad_buffer();
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += factor * o->grad[i];
    });
  }
  return out;
}

Tensor relu(const Tensor& x) {
  Tensor out = unary(x, [](double v) { return v > 0.0 ? v : 0.0; });
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o] {
      auto& gx = xi->grad_buffer();
      // Subgradient at exactly 0 is 0.
      for (std::size_t i = 0; i < gx.size(); ++i)
        if (xi->data[i] > 0.0) gx[i] += o->grad[i];
    });
  }
  return out;
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = unary(x, [](double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  });
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o] {
      auto& gx = xi->grad_buffer();
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double s = o->data[i];
        gx[i] += o->grad[i] * s * (1.0 - s);
      }
    });
  }
  return out;
}

Tensor softmax(const Tensor& x, int axis) {
  if (x.rank() == 0) throw DimensionError("softmax: scalar input");
  const int rank = static_cast<int>(x.rank());
  const int ax = axis < 0 ? axis + rank : axis;
  if (ax < 0 || ax >= rank) throw DimensionError("softmax: axis out of range for " + shape_to_string(x.shape()));
  std::size_t outer = 1, inner = 1;
  for (int d = 0; d < ax; ++d) outer *= x.dim(static_cast<std::size_t>(d));
  for (int d = ax + 1; d < rank; ++d) inner *= x.dim(static_cast<std::size_t>(d));
  const std::size_t len = x.dim(static_cast<std::size_t>(ax));
  if (len == 0) throw DimensionError("softmax: empty axis");

  Tensor out(x.shape());
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * len * inner + in;
      double peak = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < len; ++k) peak = std::max(peak, src[base + k * inner]);
      double total = 0.0;
      for (std::size_t k = 0; k < len; ++k) {
        const double e = std::exp(src[base + k * inner] - peak);
        dst[base + k * inner] = e;
        total += e;
      }
      for (std::size_t k = 0; k < len; ++k) dst[base + k * inner] /= total;
    }
  }
  round_if_single(out);
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o, outer, inner, len] {
      auto& gx = xi->grad_buffer();
      for (std::size_t a = 0; a < outer; ++a) {
        for (std::size_t in = 0; in < inner; ++in) {
          const std::size_t base = a * len * inner + in;
          double dot = 0.0;
          for (std::size_t k = 0; k < len; ++k) {
            const std::size_t idx = base + k * inner;
            dot += o->grad[idx] * o->data[idx];
          }
          for (std::size_t k = 0; k < len; ++k) {
            const std::size_t idx = base + k * inner;
            gx[idx] += o->data[idx] * (o->grad[idx] - dot);
          }
        }
      }
    });
  }
  return out;
}

Tensor sum(const Tensor& x) {
  double total = 0.0;
  for (double v : x.data()) total += v;
  Tensor out = Tensor::scalar(total);
  round_if_single(out);
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o] {
      auto& gx = xi->grad_buffer();
      for (double& g : gx) g += o->grad[0];
    });
  }
  return out;
}

Tensor mean_rows(const Tensor& x) {
  require_rank("mean_rows", x, 2);
  const std::size_t n = x.dim(0), d = x.dim(1);
  if (n == 0) throw DimensionError("mean_rows: no rows");
  Tensor out({d});
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) dst[j] += src[i * d + j];
  for (double& v : dst) v /= static_cast<double>(n);
  round_if_single(out);
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o, n, d] {
      auto& gx = xi->grad_buffer();
      const double inv = 1.0 / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) gx[i * d + j] += o->grad[j] * inv;
    });
  }
  return out;
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw DimensionError("concat_cols: no inputs");
  const std::size_t n = parts.front().rank() == 2 ? parts.front().dim(0) : 0;
  std::size_t width = 0;
  for (const Tensor& p : parts) {
    require_rank("concat_cols", p, 2);
    if (p.dim(0) != n) shape_error("concat_cols", parts.front(), p);
    width += p.dim(1);
  }
  Tensor out({n, width});
  auto dst = out.mutable_data();
  std::size_t offset = 0;
  for (const Tensor& p : parts) {
    const std::size_t w = p.dim(1);
    auto src = p.data();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < w; ++j) dst[i * width + offset + j] = src[i * w + j];
    offset += w;
  }
  if (Tape* tape = recording_tape(parts)) {
    out.set_requires_grad();
    std::vector<ImplPtr> impls;
    for (const Tensor& p : parts) impls.push_back(p.impl());
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [impls, o, n, width] {
      std::size_t off = 0;
      for (const ImplPtr& pi : impls) {
        const std::size_t w = pi->shape[1];
        if (pi->requires_grad) {
          auto& gp = pi->grad_buffer();
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < w; ++j) gp[i * w + j] += o->grad[i * width + off + j];
        }
        off += w;
      }
    });
  }
  return out;
}

Tensor concat_rows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw DimensionError("concat_rows: no inputs");
  const std::size_t d = parts.front().rank() == 2 ? parts.front().dim(1) : 0;
  std::size_t rows = 0;
  for (const Tensor& p : parts) {
    require_rank("concat_rows", p, 2);
    if (p.dim(1) != d) shape_error("concat_rows", parts.front(), p);
    rows += p.dim(0);
  }
  std::vector<double> values;
  values.reserve(rows * d);
  for (const Tensor& p : parts) values.insert(values.end(), p.data().begin(), p.data().end());
  Tensor out({rows, d}, std::move(values));
  if (Tape* tape = recording_tape(parts)) {
    out.set_requires_grad();
    std::vector<ImplPtr> impls;
    for (const Tensor& p : parts) impls.push_back(p.impl());
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [impls, o] {
      std::size_t off = 0;
      for (const ImplPtr& pi : impls) {
        const std::size_t count = pi->data.size();
        if (pi->requires_grad) {
          auto& gp = pi->grad_buffer();
          for (std::size_t i = 0; i < count; ++i) gp[i] += o->grad[off + i];
        }
        off += count;
      }
    });
  }
  return out;
}

Tensor slice_cols(const Tensor& x, std::size_t begin, std::size_t count) {
  require_rank("slice_cols", x, 2);
  const std::size_t n = x.dim(0), d = x.dim(1);
  if (begin + count > d) {
    throw DimensionError("slice_cols: columns [" + std::to_string(begin) + ", " +
                         std::to_string(begin + count) + ") outside " + shape_to_string(x.shape()));
  }
  Tensor out({n, count});
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < count; ++j) dst[i * count + j] = src[i * d + begin + j];
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o, n, d, begin, count] {
      auto& gx = xi->grad_buffer();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < count; ++j) gx[i * d + begin + j] += o->grad[i * count + j];
    });
  }
  return out;
}

Tensor gather_rows(const Tensor& x, std::span<const std::size_t> ids) {
  require_rank("gather_rows", x, 2);
  const std::size_t n = x.dim(0), d = x.dim(1);
  std::vector<std::size_t> index(ids.begin(), ids.end());
  for (std::size_t id : index) {
    if (id >= n) {
      throw DimensionError("gather_rows: row " + std::to_string(id) + " outside " +
                           shape_to_string(x.shape()));
    }
  }
  Tensor out({index.size(), d});
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t r = 0; r < index.size(); ++r)
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(index[r] * d), d,
                dst.begin() + static_cast<std::ptrdiff_t>(r * d));
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o, index = std::move(index), d] {
      auto& gx = xi->grad_buffer();
      for (std::size_t r = 0; r < index.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) gx[index[r] * d + j] += o->grad[r * d + j];
    });
  }
  return out;
}

Tensor row(const Tensor& x, std::size_t index) {
  require_rank("row", x, 2);
  const std::size_t ids[1] = {index};
  return reshape(gather_rows(x, ids), {x.dim(1)});
}

Tensor scale_rows(const Tensor& x, std::span<const double> weights) {
  require_rank("scale_rows", x, 2);
  const std::size_t n = x.dim(0), d = x.dim(1);
  if (weights.size() != n) {
    throw DimensionError("scale_rows: " + std::to_string(weights.size()) + " weights for " +
                         shape_to_string(x.shape()));
  }
  std::vector<double> w(weights.begin(), weights.end());
  Tensor out({n, d});
  auto src = x.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) dst[i * d + j] = w[i] * src[i * d + j];
  round_if_single(out);
  if (Tape* tape = recording_tape({&x})) {
    out.set_requires_grad();
    ImplPtr xi = x.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [xi, o, w = std::move(w), d] {
      auto& gx = xi->grad_buffer();
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) gx[i * d + j] += w[i] * o->grad[i * d + j];
    });
  }
  return out;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  require_rank("outer", a, 1);
  require_rank("outer", b, 1);
  return matmul(reshape(a, {a.dim(0), 1}), reshape(b, {1, b.dim(0)}));
}

Tensor dropout(const Tensor& x, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw ContractError("dropout: rate must be in [0, 1)");
  if (rate == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - rate);
  Tensor mask(x.shape());
  for (double& m : mask.mutable_data()) m = rng.bernoulli(rate) ? 0.0 : keep_scale;
  return mul(x, mask);
}

Tensor cross_entropy(const Tensor& probabilities, std::size_t label) {
  require_rank("cross_entropy", probabilities, 1);
  if (label >= probabilities.dim(0)) {
    throw DataError("cross_entropy: label " + std::to_string(label) + " outside " +
                    std::to_string(probabilities.dim(0)) + " classes");
  }
  const double p = probabilities.at(label);
  const bool clipped = !(p >= kProbabilityFloor);
  Tensor out = Tensor::scalar(-std::log(clipped ? kProbabilityFloor : p));
  round_if_single(out);
  if (Tape* tape = recording_tape({&probabilities})) {
    out.set_requires_grad();
    ImplPtr pi = probabilities.impl();
    TensorImpl* o = out.impl().get();
    tape->record(out.impl(), [pi, o, label, clipped] {
      auto& gp = pi->grad_buffer();
      if (!clipped) gp[label] += -o->grad[0] / pi->data[label];
    });
  }
  return out;
}

}  // namespace lginet::ops
