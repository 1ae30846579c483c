#include "lginet/numcore/tensor.hpp"

#include <cmath>
#include <sstream>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

thread_local Tape* g_active_tape = nullptr;
thread_local Precision g_precision = Precision::kFloat64;

}  // namespace

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ", ";
    out << shape[i];
  }
  out << ']';
  return out.str();
}

Tensor::Tensor(Shape shape) : impl_(std::make_shared<TensorImpl>()) {
  impl_->data.assign(shape_numel(shape), 0.0);
  impl_->shape = std::move(shape);
}

Tensor::Tensor(Shape shape, std::vector<double> values) : impl_(std::make_shared<TensorImpl>()) {
  if (shape_numel(shape) != values.size()) {
    throw DimensionError("Tensor: shape " + shape_to_string(shape) + " needs " +
                         std::to_string(shape_numel(shape)) + " values, got " +
                         std::to_string(values.size()));
  }
  impl_->shape = std::move(shape);
  impl_->data = std::move(values);
}

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::full(Shape shape, double value) {
  Tensor t(std::move(shape));
  for (double& v : t.mutable_data()) v = value;
  return t;
}

double Tensor::item() const {
  if (numel() != 1) {
    throw ContractError("Tensor::item on shape " + shape_to_string(shape()));
  }
  return impl_->data[0];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  if (rank() != 2) throw ContractError("Tensor::at(row, col) on non-matrix");
  return impl_->data.at(row * impl_->shape[1] + col);
}

Tensor Tensor::clone() const {
  return Tensor(impl_->shape, impl_->data);
}

void Tape::record(std::shared_ptr<TensorImpl> output, std::function<void()> backward_fn) {
  entries_.push_back({std::move(output), std::move(backward_fn)});
}

void Tape::backward(const Tensor& loss) {
  if (!loss.defined() || loss.numel() != 1) {
    throw ContractError("backward: loss must be a scalar, got shape " +
                        (loss.defined() ? shape_to_string(loss.shape()) : std::string("<undefined>")));
  }
  auto& seed = loss.impl()->grad_buffer();
  seed[0] += 1.0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    // Entries whose output never received a gradient are off the loss path.
    if (it->output->grad.empty()) continue;
    it->backward_fn();
  }
}

TapeScope::TapeScope(Tape& tape) : previous_(g_active_tape) { g_active_tape = &tape; }
TapeScope::~TapeScope() { g_active_tape = previous_; }

Tape* active_tape() { return g_active_tape; }

void backward(const Tensor& loss) {
  if (g_active_tape == nullptr) throw ContractError("backward: no active tape");
  g_active_tape->backward(loss);
}

Precision current_precision() { return g_precision; }

PrecisionScope::PrecisionScope(Precision precision) : previous_(g_precision) {
  g_precision = precision;
}
PrecisionScope::~PrecisionScope() { g_precision = previous_; }

}  // namespace lginet
