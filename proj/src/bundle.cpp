#include "bundlekit/bundle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <regex>
#include <stdexcept>
#include <unordered_set>

namespace bundlekit {

Cut make_cut(Vector point, double value, Vector grad, CutId id) {
  if (point.size() != grad.size()) throw std::invalid_argument("cut: point/gradient size mismatch");
  const double intercept = value - grad.dot(point);
  return Cut{std::move(point), value, std::move(grad), intercept, id};
}

Cut make_cut(const SubgradientOracle& f, const Vector& x, CutId id) {
  return make_cut(x, f.value(x), f.subgradient(x), id);
}

BundlePolicy BundlePolicy::capped(std::size_t K) {
  if (K < 1) throw std::invalid_argument("bundle policy: cap must be >= 1");
  return {PolicyKind::cap, K};
}

std::string BundlePolicy::to_string() const {
  switch (kind) {
    case PolicyKind::keep_all: return "keep_all";
    case PolicyKind::lean: return "lean";
    case PolicyKind::cap: return "cap(" + std::to_string(cap) + ")";
  }
  return "unknown";
}

BundlePolicy BundlePolicy::parse(const std::string& text) {
  if (text == "lean") return lean();
  if (text == "keep_all") return keep_all();
  static const std::regex cap_re(R"(cap\((\d+)\))");
  std::smatch m;
  if (std::regex_match(text, m, cap_re)) return capped(std::stoul(m[1].str()));
  throw std::invalid_argument("unknown bundle policy '" + text + "'");
}

void Bundle::push_back(Cut cut) {
  if (!cuts_.empty()) {
    if (cut.id <= cuts_.back().id) throw std::invalid_argument("bundle: cut ids must increase");
    if (cut.grad.size() != dimension()) throw std::invalid_argument("bundle: dimension mismatch");
  }
  cuts_.push_back(std::move(cut));
}

std::vector<CutId> Bundle::ids() const {
  std::vector<CutId> out;
  out.reserve(cuts_.size());
  for (const auto& c : cuts_) out.push_back(c.id);
  return out;
}

bool Bundle::contains(CutId id) const {
  return std::any_of(cuts_.begin(), cuts_.end(), [id](const Cut& c) { return c.id == id; });
}

Matrix Bundle::gradient_matrix() const {
  Matrix G(dimension(), static_cast<Index>(cuts_.size()));
  for (std::size_t i = 0; i < cuts_.size(); ++i) G.col(static_cast<Index>(i)) = cuts_[i].grad;
  return G;
}

Vector Bundle::intercepts() const {
  Vector b(static_cast<Index>(cuts_.size()));
  for (std::size_t i = 0; i < cuts_.size(); ++i) b(static_cast<Index>(i)) = cuts_[i].intercept;
  return b;
}

ModelValue eval_model(const Bundle& bundle, const Vector& u) {
  if (bundle.empty()) throw std::invalid_argument("eval_model: empty bundle");
  if (u.size() != bundle.dimension()) throw std::invalid_argument("eval_model: dimension mismatch");
  ModelValue best{-kInfinity, 0};
  // Cuts are stored in id order, so strict improvement keeps the smallest id.
  for (const auto& c : bundle.cuts()) {
    const double v = c.at(u);
    if (v > best.value) best = {v, c.id};
  }
  return best;
}

std::vector<CutId> active_set(const Bundle& bundle, const Vector& x, double model_value,
                              const Tolerances& tol) {
  const double threshold = model_value - tol.active_set_rel * (1.0 + std::abs(model_value));
  std::vector<CutId> out;
  for (const auto& c : bundle.cuts()) {
    if (c.at(x) >= threshold) out.push_back(c.id);
  }
  return out;
}

Bundle update_null(const Bundle& bundle, const std::vector<CutId>& active, Cut new_cut) {
  const std::unordered_set<CutId> keep_set(active.begin(), active.end());
  const auto& cuts = bundle.cuts();
  const BundlePolicy& policy = bundle.policy();
  std::vector<bool> keep(cuts.size(), false);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (policy.kind == PolicyKind::keep_all || keep_set.count(cuts[i].id)) {
      keep[i] = true;
      ++kept;
    }
  }
  if (policy.kind == PolicyKind::cap) {
    for (std::size_t i = cuts.size(); i-- > 0 && kept + 1 < policy.cap;) {
      if (!keep[i]) {
        keep[i] = true;
        ++kept;
      }
    }
  }
  Bundle out(policy);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (keep[i]) out.push_back(cuts[i]);
  }
  out.push_back(std::move(new_cut));
  for (CutId id : active) {
    assert(out.contains(id) && "null update dropped an active cut");
    (void)id;
  }
  return out;
}

Bundle update_serious(const Bundle& bundle, Cut new_cut) {
  const BundlePolicy& policy = bundle.policy();
  const auto& cuts = bundle.cuts();
  Bundle out(policy);
  std::size_t first = cuts.size();
  if (policy.kind == PolicyKind::keep_all) {
    first = 0;
  } else if (policy.kind == PolicyKind::cap) {
    const std::size_t retained = std::min(cuts.size(), policy.cap - 1);
    first = cuts.size() - retained;
  }
  for (std::size_t i = first; i < cuts.size(); ++i) out.push_back(cuts[i]);
  out.push_back(std::move(new_cut));
  return out;
}

}  // namespace bundlekit
