#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bundlekit/problem.hpp"

namespace bundlekit {

using CutId = std::int64_t;

/// Linearization f(x) + <g, . - x> written as intercept + <g, .>.
struct Cut {
  Vector point;
  double value = 0.0;
  Vector grad;
  double intercept = 0.0;
  CutId id = 0;

  double at(const Vector& u) const { return intercept + grad.dot(u); }
};

Cut make_cut(Vector point, double value, Vector grad, CutId id);
/// Queries f and f' once each.
Cut make_cut(const SubgradientOracle& f, const Vector& x, CutId id);

enum class PolicyKind { keep_all, lean, cap };

struct BundlePolicy {
  PolicyKind kind = PolicyKind::lean;
  std::size_t cap = 0;

  static BundlePolicy keep_all() { return {PolicyKind::keep_all, 0}; }
  static BundlePolicy lean() { return {PolicyKind::lean, 0}; }
  static BundlePolicy capped(std::size_t K);

  std::string to_string() const;
  /// Accepts "lean", "keep_all", "cap(K)".
  static BundlePolicy parse(const std::string& text);
};

class Bundle {
 public:
  explicit Bundle(BundlePolicy policy = BundlePolicy::lean()) : policy_(policy) {}

  const BundlePolicy& policy() const { return policy_; }
  const std::vector<Cut>& cuts() const { return cuts_; }
  std::size_t size() const { return cuts_.size(); }
  bool empty() const { return cuts_.empty(); }
  Index dimension() const { return cuts_.empty() ? 0 : cuts_.front().grad.size(); }

  /// Appends; ids must strictly increase.
  void push_back(Cut cut);

  std::vector<CutId> ids() const;
  bool contains(CutId id) const;
  /// Gradients as columns, one per cut.
  Matrix gradient_matrix() const;
  Vector intercepts() const;

 private:
  BundlePolicy policy_;
  std::vector<Cut> cuts_;
};

struct ModelValue {
  double value = 0.0;
  CutId argmax_id = 0;
};

/// max_i b_i + <g_i, u>; ties resolved to the smallest id. Throws on an empty bundle.
ModelValue eval_model(const Bundle& bundle, const Vector& u);

/// Ids whose cut value at x is within active_set_rel (1 + |model_value|) of the max.
std::vector<CutId> active_set(const Bundle& bundle, const Vector& x, double model_value,
                              const Tolerances& tol);

/// Null-step rule: active ∪ {new} ⊆ result ⊆ old ∪ {new}.
Bundle update_null(const Bundle& bundle, const std::vector<CutId>& active, Cut new_cut);
/// Serious-step rule: new cut plus whatever the policy retains.
Bundle update_serious(const Bundle& bundle, Cut new_cut);

}  // namespace bundlekit
