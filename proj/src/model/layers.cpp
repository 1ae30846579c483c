#include "lginet/model/layers.hpp"

#include <cmath>
#include <string>

#include "lginet/errors.hpp"
#include "lginet/numcore/ops.hpp"

namespace lginet {

namespace {

void require_rows(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(0) != b.dim(0) || a.dim(1) != b.dim(1)) {
    throw DimensionError(std::string(op) + ": node states " + shape_to_string(a.shape()) + " and " +
                         shape_to_string(b.shape()) + " are not aligned");
  }
}

}  // namespace

std::vector<double> position_weights(std::size_t n, std::size_t tau) {
  if (tau >= n) throw ContractError("position_weights: tau " + std::to_string(tau) + " outside n " + std::to_string(n));
  std::vector<double> w(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double offset = i > tau ? static_cast<double>(i - tau) : static_cast<double>(tau - i);
    w[i] = 1.0 - offset / denom;
  }
  return w;
}

Tensor normalized_adjacency(const SyntaxGraph& graph) {
  const std::size_t n = graph.n;
  Tensor a({n, n});
  auto data = a.mutable_data();
  for (std::size_t i = 0; i < n; ++i) {
    const double norm = 1.0 / static_cast<double>(graph.degree(i) + 1);
    data[i * n + i] = norm;
    for (std::size_t j = 0; j < n; ++j)
      if (graph.adj(i, j)) data[i * n + j] = norm;
  }
  return a;
}

Tensor pwgcn_layer(const Tensor& h, const Tensor& a_norm, std::span<const double> w_p, const GcnParams& params) {
  if (h.rank() != 2 || a_norm.rank() != 2 || a_norm.dim(1) != h.dim(0) || w_p.size() != h.dim(0)) {
    throw DimensionError("pwgcn_layer: states " + shape_to_string(h.shape()) + ", adjacency " +
                         shape_to_string(a_norm.shape()) + ", " + std::to_string(w_p.size()) + " position weights");
  }
  const Tensor mixed = ops::matmul(a_norm, ops::scale_rows(h, w_p));
  return ops::relu(ops::linear(mixed, params.weight, params.bias));
}

R2atnOutput r2atn_layer(const Tensor& h, std::size_t tau, std::span<const int> rel, const Tensor& relation_embedding,
                        const R2atnParams& params) {
  if (h.rank() != 2) throw DimensionError("r2atn_layer: states must be [n, d], got " + shape_to_string(h.shape()));
  const std::size_t n = h.dim(0);
  if (n < 2) throw ContractError("r2atn_layer: no context node to attend (n = " + std::to_string(n) + ")");
  if (tau >= n || rel.size() != n) throw DimensionError("r2atn_layer: relation ids do not match node count");
  if (params.heads.empty()) throw ContractError("r2atn_layer: no attention heads");

  std::vector<std::size_t> context;
  std::vector<std::size_t> rel_ids;
  context.reserve(n - 1);
  rel_ids.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == tau) continue;
    if (rel[i] < 0 || static_cast<std::size_t>(rel[i]) >= relation_embedding.dim(0)) {
      throw ContractError("r2atn_layer: relation id " + std::to_string(rel[i]) + " at node " + std::to_string(i) +
                          " outside the embedding table");
    }
    context.push_back(i);
    rel_ids.push_back(static_cast<std::size_t>(rel[i]));
  }

  const Tensor emb = ops::gather_rows(relation_embedding, rel_ids);
  const Tensor hidden = ops::relu(ops::linear(emb, params.ffn_w1, params.ffn_b1));
  const Tensor scores = ops::linear(hidden, params.ffn_w2, params.ffn_b2);  // [n-1, heads]
  const Tensor alpha = ops::softmax(scores, 0);

  const Tensor h_ctx = ops::gather_rows(h, context);
  const Tensor pooled = ops::matmul(ops::transpose(alpha), h_ctx);  // [heads, d]
  const std::size_t heads = params.heads.size();
  Tensor aspect;
  for (std::size_t m = 0; m < heads; ++m) {
    const std::size_t row_id[] = {m};
    Tensor head = ops::linear(ops::gather_rows(pooled, row_id), params.heads[m]);
    aspect = m == 0 ? head : ops::add(aspect, head);
  }
  aspect = ops::scale(aspect, 1.0 / static_cast<double>(heads));  // [1, d]

  // Reversed edges reuse the attention weights: each context node receives
  // its head-averaged weight times the aggregated aspect state.
  const Tensor head_mean = ops::matmul(alpha, Tensor::full({heads, 1}, 1.0 / static_cast<double>(heads)));
  const Tensor updated_ctx = ops::add(h_ctx, ops::matmul(head_mean, aspect));

  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n - 1; ++k) order[context[k]] = k;
  order[tau] = n - 1;
  return {ops::gather_rows(ops::concat_rows({updated_ctx, aspect}), order), alpha, aspect};
}

Tensor cg_gate(const Tensor& h_this, const Tensor& h_other, const GateParams& params) {
  require_rows(h_this, h_other, "cg_gate");
  const Tensor gate = ops::sigmoid(ops::linear(ops::concat_cols({h_other, h_this}), params.weight));
  return ops::mul(h_other, gate);
}

Tensor cg_mlp(const Tensor& h_this, const Tensor& h_other, const MlpParams& params) {
  require_rows(h_this, h_other, "cg_mlp");
  const Tensor hidden = ops::relu(ops::linear(ops::concat_cols({h_other, h_this}), params.w1, params.b1));
  return ops::linear(hidden, params.w2, params.b2);
}

Tensor cg_mha(const Tensor& queries, const Tensor& keys_values, const MhaParams& params) {
  if (queries.rank() != 2 || keys_values.rank() != 2 || queries.dim(1) != keys_values.dim(1)) {
    throw DimensionError("cg_mha: query states " + shape_to_string(queries.shape()) + " and key/value states " +
                         shape_to_string(keys_values.shape()));
  }
  const std::size_t d = params.wq.dim(1);
  if (params.heads == 0 || d % params.heads != 0) {
    throw ConfigError("cg_mha: hidden size " + std::to_string(d) + " not divisible by " +
                      std::to_string(params.heads) + " heads");
  }
  const std::size_t d_s = d / params.heads;
  const Tensor q = ops::linear(queries, params.wq, params.bq);
  const Tensor k = ops::linear(keys_values, params.wk, params.bk);
  const Tensor v = ops::linear(keys_values, params.wv, params.bv);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(d_s));
  std::vector<Tensor> outputs;
  outputs.reserve(params.heads);
  for (std::size_t m = 0; m < params.heads; ++m) {
    const Tensor qm = ops::slice_cols(q, m * d_s, d_s);
    const Tensor km = ops::slice_cols(k, m * d_s, d_s);
    const Tensor vm = ops::slice_cols(v, m * d_s, d_s);
    const Tensor weights = ops::softmax(ops::scale(ops::matmul(qm, ops::transpose(km)), inv_sqrt), -1);
    outputs.push_back(ops::matmul(weights, vm));
  }
  return params.heads == 1 ? outputs.front() : ops::concat_cols(outputs);
}

Tensor cgmp(const Tensor& h_this, const Tensor& h_other, const CgmpParams& params) {
  if (params.gate) return cg_gate(h_this, h_other, *params.gate);
  if (params.mlp) return cg_mlp(h_this, h_other, *params.mlp);
  if (params.mha) return cg_mha(h_this, h_other, *params.mha);
  throw ContractError("cgmp: no variant parameters");
}

LgiState lgi_layer(const LgiState& in, const GraphContext& graph, const LgiLayerParams& params) {
  LgiState out;
  if (!params.gcn.empty()) {
    out.hx = in.hx;
    for (const GcnParams& gcn : params.gcn) out.hx = pwgcn_layer(out.hx, graph.a_norm, graph.w_p, gcn);
  }
  if (params.r2atn) out.hy = r2atn_layer(in.hy, graph.tau, graph.rel, graph.relation_embedding, *params.r2atn).h;
  if (params.y2x && params.x2y) {
    const Tensor x_hat = out.hx;
    const Tensor y_hat = out.hy;
    out.hx = ops::add(x_hat, cgmp(x_hat, in.hy, *params.y2x));
    out.hy = ops::add(y_hat, cgmp(y_hat, in.hx, *params.x2y));
  }
  return out;
}

Fa2cOutput fa2c_attention(const Tensor& h_f, std::size_t tau, const Fa2cParams& params) {
  if (h_f.rank() != 2 || tau >= h_f.dim(0)) {
    throw DimensionError("fa2c_attention: states " + shape_to_string(h_f.shape()) + " with tau " + std::to_string(tau));
  }
  const std::size_t aspect_row[] = {tau};
  const Tensor r_a = ops::gather_rows(h_f, aspect_row);  // [1, d]
  const Tensor keys = ops::linear(h_f, params.weight, params.bias);
  const Tensor beta = ops::softmax(ops::matmul(keys, ops::transpose(r_a)), 0);  // [n, 1]
  return {ops::matmul(ops::transpose(beta), h_f), beta};
}

}  // namespace lginet
