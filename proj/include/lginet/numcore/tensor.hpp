#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lginet {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_to_string(const Shape& shape);

struct TensorImpl {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until a gradient is accumulated
  bool requires_grad = false;

  std::vector<double>& grad_buffer() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
    return grad;
  }
};

// Shared handle to a dense row-major array. Copies alias the same storage,
// which is what lets parameters, tape entries and callers see one gradient.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<double> values);

  static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
  static Tensor scalar(double value) { return Tensor({}, {value}); }
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Tensor full(Shape shape, double value);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const { return impl_->shape; }
  std::size_t rank() const { return impl_->shape.size(); }
  std::size_t dim(std::size_t axis) const { return impl_->shape.at(axis); }
  std::size_t numel() const { return impl_->data.size(); }

  std::span<const double> data() const { return impl_->data; }
  std::span<double> mutable_data() { return impl_->data; }
  double item() const;
  double at(std::size_t i) const { return impl_->data.at(i); }
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const { return impl_->requires_grad; }
  Tensor& set_requires_grad(bool on = true) {
    impl_->requires_grad = on;
    return *this;
  }
  bool has_grad() const { return impl_->grad.size() == impl_->data.size() && numel() > 0; }
  std::span<const double> grad() const { return impl_->grad; }
  std::span<double> mutable_grad() { return impl_->grad_buffer(); }
  void zero_grad() { impl_->grad.assign(impl_->data.size(), 0.0); }

  // Deep copy without gradient or history.
  Tensor clone() const;
  bool same_storage(const Tensor& other) const { return impl_ == other.impl_; }

  const std::shared_ptr<TensorImpl>& impl() const { return impl_; }

 private:
  std::shared_ptr<TensorImpl> impl_;
};

// Reverse-mode record. Ops push a closure per output while a Tape is active
// on the current thread and at least one input requires a gradient;
// backward() replays the closures newest-first.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  void record(std::shared_ptr<TensorImpl> output, std::function<void()> backward_fn);

  // Seeds d(loss)/d(loss) = 1 and propagates to every recorded input.
  // Throws ContractError when loss has more than one element.
  void backward(const Tensor& loss);

  std::size_t size() const { return entries_.size(); }
  void clear() { entries_.clear(); }

 private:
  struct Entry {
    std::shared_ptr<TensorImpl> output;
    std::function<void()> backward_fn;
  };
  std::vector<Entry> entries_;
};

// Makes a tape the recording target for the current thread.
class TapeScope {
 public:
  explicit TapeScope(Tape& tape);
  ~TapeScope();
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape* previous_;
};

Tape* active_tape();

// Runs backward on the active tape.
void backward(const Tensor& loss);

enum class Precision { kFloat64, kFloat32 };

// With kFloat32 every op rounds its result to single precision, so the
// arithmetic behaves like float storage while the containers stay double.
Precision current_precision();

class PrecisionScope {
 public:
  explicit PrecisionScope(Precision precision);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Precision previous_;
};

}  // namespace lginet
