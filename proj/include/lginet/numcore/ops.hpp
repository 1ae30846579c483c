#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lginet/numcore/rng.hpp"
#include "lginet/numcore/tensor.hpp"

// Differentiable tensor operations. Every op records onto the active Tape
// when one of its inputs requires a gradient; otherwise it is a plain
// computation. Shape errors raise DimensionError naming both shapes.
namespace lginet::ops {

// y = x W (+ b). x is [..., d_in], W is [d_in, d_out], b is [d_out].
Tensor linear(const Tensor& x, const Tensor& weight, const std::optional<Tensor>& bias = std::nullopt);

// [n, k] x [k, m] -> [n, m]
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
Tensor reshape(const Tensor& a, Shape shape);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);

Tensor relu(const Tensor& x);
Tensor sigmoid(const Tensor& x);

// Max-subtracted softmax along `axis` (negative axis counts from the end).
Tensor softmax(const Tensor& x, int axis = -1);

// Sum of all elements -> scalar.
Tensor sum(const Tensor& x);
// [n, d] -> [d]
Tensor mean_rows(const Tensor& x);

// Row-wise concatenation of 2-D tensors with equal row counts: [n, a] ++ [n, b].
Tensor concat_cols(const std::vector<Tensor>& parts);
// Stacks 2-D tensors with equal column counts.
Tensor concat_rows(const std::vector<Tensor>& parts);
Tensor slice_cols(const Tensor& x, std::size_t begin, std::size_t count);
// out[i] = x[ids[i]]; ids may repeat (gradients accumulate).
Tensor gather_rows(const Tensor& x, std::span<const std::size_t> ids);
// [n, d] -> [d]
Tensor row(const Tensor& x, std::size_t index);
// out[i, :] = weights[i] * x[i, :] with constant weights.
Tensor scale_rows(const Tensor& x, std::span<const double> weights);
// [n] x [d] -> [n, d]
Tensor outer(const Tensor& a, const Tensor& b);

// Inverted dropout. Identity when rate == 0.
Tensor dropout(const Tensor& x, double rate, Rng& rng);

// -log(max(p[label], 1e-12)) for a probability vector p.
Tensor cross_entropy(const Tensor& probabilities, std::size_t label);

inline constexpr double kProbabilityFloor = 1e-12;

}  // namespace lginet::ops
