#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lginet/graphs/syntax_graph.hpp"
#include "lginet/numcore/tensor.hpp"

// Building blocks of one LGI layer and the sentiment decoder. Node-state
// tensors are [n, d]; weights are laid out [d_in, d_out].
namespace lginet {

// w[i] = 1 - |i - tau| / (n + 1).
std::vector<double> position_weights(std::size_t n, std::size_t tau);

// (A + I) with row i divided by d_i + 1, as a constant tensor.
Tensor normalized_adjacency(const SyntaxGraph& graph);

struct GcnParams {
  Tensor weight;  // [d, d]
  Tensor bias;    // [d]
};

// relu(Anorm (w_p * H) W + b)
Tensor pwgcn_layer(const Tensor& h, const Tensor& a_norm, std::span<const double> w_p,
                   const GcnParams& params);

struct R2atnParams {
  Tensor ffn_w1;  // [d_rel, d_rel]
  Tensor ffn_b1;  // [d_rel]
  Tensor ffn_w2;  // [d_rel, heads]
  Tensor ffn_b2;  // [heads]
  std::vector<Tensor> heads;  // [d, d] each
};

struct R2atnOutput {
  Tensor h;       // [n, d]
  Tensor alpha;   // [n - 1, heads], context nodes in index order
  Tensor aspect;  // [1, d]
};

// `rel` holds one relation id per node (ignored at tau). The relation
// embedding table is [vocab, d_rel].
R2atnOutput r2atn_layer(const Tensor& h, std::size_t tau, std::span<const int> rel,
                        const Tensor& relation_embedding, const R2atnParams& params);

struct GateParams {
  Tensor weight;  // [2d, d]
};

// h_other * sigmoid([h_other, h_this] W)
Tensor cg_gate(const Tensor& h_this, const Tensor& h_other, const GateParams& params);

struct MlpParams {
  Tensor w1;  // [2d, d]
  Tensor b1;  // [d]
  Tensor w2;  // [d, d]
  Tensor b2;  // [d]
};

// relu([h_other, h_this] W1 + b1) W2 + b2
Tensor cg_mlp(const Tensor& h_this, const Tensor& h_other, const MlpParams& params);

struct MhaParams {
  Tensor wq, bq, wk, bk, wv, bv;  // [d, d] / [d]
  std::size_t heads = 1;
};

// Multi-head scaled dot-product attention, heads concatenated.
Tensor cg_mha(const Tensor& queries, const Tensor& keys_values, const MhaParams& params);

// Exactly one member is set, matching the configured variant.
struct CgmpParams {
  std::optional<GateParams> gate;
  std::optional<MlpParams> mlp;
  std::optional<MhaParams> mha;
};

Tensor cgmp(const Tensor& h_this, const Tensor& h_other, const CgmpParams& params);

// Per-sample graph constants shared by every layer.
struct GraphContext {
  Tensor a_norm;
  std::vector<double> w_p;
  std::size_t tau = 0;
  std::vector<int> rel;
  Tensor relation_embedding;
};

// A stream whose parameters are absent stays undefined.
struct LgiLayerParams {
  std::vector<GcnParams> gcn;
  std::optional<R2atnParams> r2atn;
  std::optional<CgmpParams> y2x, x2y;
};

struct LgiState {
  Tensor hx;
  Tensor hy;
};

// One LGI layer without dropout. Each stream's intra-graph result receives a
// cross-graph message built from the other stream's layer input.
LgiState lgi_layer(const LgiState& in, const GraphContext& graph, const LgiLayerParams& params);

struct Fa2cParams {
  Tensor weight;  // [d, d]
  Tensor bias;    // [d]
};

struct Fa2cOutput {
  Tensor r;     // [1, d]
  Tensor beta;  // [n, 1]
};

// beta = softmax_i((h_f^i W + b) . R_a), R = sum_i beta_i h_f^i, with R_a = row tau.
Fa2cOutput fa2c_attention(const Tensor& h_f, std::size_t tau, const Fa2cParams& params);

}  // namespace lginet
