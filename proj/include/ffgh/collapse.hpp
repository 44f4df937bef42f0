#pragma once

// The collapse presentation B_D(A): the least order C containing a★ for
// a ∈ A, ψ(0), and ψ(2^{α_1}+...+2^{α_{k+1}}) whenever ψ(2^{α_1}+...+2^{α_k})
// ∈ C, α_{k+1} < α_k and α_{k+1} ∈ D(C↾ψ(2^{α_1}+...+2^{α_k})).
//
// A fragment is built stage by stage; stage n only uses elements of earlier
// stages as arguments of exponents.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ffgh/denotation.hpp"
#include "ffgh/fgh.hpp"
#include "ffgh/order.hpp"

namespace ffgh {

using NodeId = std::uint32_t;

struct CollapseCaps {
  constexpr CollapseCaps(std::size_t stages, std::size_t size, std::uint64_t params)
      : stage_cap(stages), size_cap(size), param_cap(params) {}
  std::size_t stage_cap;
  std::size_t size_cap;
  std::uint64_t param_cap;
};

/// Element of a fragment. Exponent arguments are NodeIds of the same
/// fragment.
struct CollapseNode {
  bool star = false;
  std::size_t base_pos = 0;
  std::vector<OrdinalTerm> exps;
  std::size_t stage = 0;
  std::optional<NodeId> prefix;
};

class CollapseFragment {
public:
  /// Builds stages until stabilization or the stage cap.
  CollapseFragment(System d, FiniteOrder base, CollapseCaps caps);

  const DenotationSystem& system() const noexcept { return *d_; }
  const System& system_ptr() const noexcept { return d_; }
  const FiniteOrder& base() const noexcept { return base_; }
  const CollapseCaps& caps() const noexcept { return caps_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  const CollapseNode& node(NodeId id) const { return nodes_.at(id); }
  /// Node ids in increasing order.
  const std::vector<NodeId>& sorted() const noexcept { return sorted_; }
  std::size_t position(NodeId id) const { return position_.at(id); }

  std::strong_ordering compare(NodeId a, NodeId b) const;
  /// Recursive comparison from the defining rules, without positions.
  std::strong_ordering compare_structural(NodeId a, NodeId b) const;

  const std::string& text(NodeId id) const { return text_.at(id); }
  std::optional<NodeId> find_text(std::string_view text) const;
  std::optional<NodeId> find_star(std::size_t base_pos) const;
  std::optional<NodeId> find_psi(const std::vector<OrdinalTerm>& exps) const;

  /// Index of the last stage built; stages beyond it add nothing if the
  /// fragment is stabilized.
  std::size_t stages_built() const noexcept { return stages_built_; }
  bool stabilized() const noexcept { return stabilized_; }
  bool size_truncated() const noexcept { return size_truncated_; }
  bool param_truncated() const noexcept { return param_truncated_; }
  bool truncated() const noexcept { return size_truncated_ || param_truncated_; }
  /// Whether every element of stage <= n is present.
  bool complete_through(std::size_t n) const;

  /// Elements of stage <= n, in increasing order.
  std::vector<NodeId> stage_members(std::size_t n) const;

  std::string to_dot() const;

private:
  bool build_stage(std::size_t n);
  NodeId add(CollapseNode node);
  void resort();
  std::string exps_key(const std::vector<OrdinalTerm>& exps) const;

  System d_;
  FiniteOrder base_;
  CollapseCaps caps_;
  std::vector<CollapseNode> nodes_;
  std::vector<std::string> text_;
  std::vector<NodeId> sorted_;
  std::vector<std::size_t> position_;
  std::unordered_map<std::string, NodeId> by_exps_;
  std::unordered_map<std::string, NodeId> by_text_;
  std::vector<NodeId> stars_;
  std::size_t stages_built_ = 0;
  bool stabilized_ = false;
  bool size_truncated_ = false;
  bool param_truncated_ = false;
  std::optional<std::size_t> first_truncated_stage_;
};

using FragmentPtr = std::shared_ptr<const CollapseFragment>;

FragmentPtr build_fragment(System d, FiniteOrder base, CollapseCaps caps);

/// Candidate collapse term, not tied to a fragment.
struct CollapseExpr;

struct ExprTerm {
  Ctor ctor;
  std::vector<CollapseExpr> args;
};

struct CollapseExpr {
  bool star = false;
  std::size_t base_pos = 0;
  std::vector<ExprTerm> exps;
};

CollapseExpr to_expr(const CollapseFragment& frag, NodeId id);
std::string expr_text(const DenotationSystem& d, const FiniteOrder& base, const CollapseExpr& e);

struct Membership {
  enum class Status { certified, rejected, insufficient };
  Status status = Status::rejected;
  /// For rejections: "a", "b", "c" or "d" (or "star" for a bad base element).
  std::string condition;
  std::string reason;
  std::size_t stage = 0;
  std::vector<std::string> witness;
  std::optional<NodeId> id;
};

std::string to_string(Membership::Status s);

Membership validate_membership(const CollapseFragment& frag, const CollapseExpr& e);

/// B_D(f) between two fragments built with the same caps.
struct CollapseMap {
  std::vector<NodeId> image;  // indexed by source NodeId
};

CollapseMap collapse_morphism(const CollapseFragment& src, const CollapseFragment& tgt,
                              const Morphism& f);
/// Whether `g` is strictly increasing on the source fragment.
bool strictly_increasing(const CollapseFragment& src, const CollapseFragment& tgt,
                         const CollapseMap& g);

struct IsoReport {
  std::uint64_t n = 0;
  std::uint64_t size = 0;  // B_D(n)
  FragmentPtr fragment;
  std::vector<NodeId> eta;  // eta[m] for m < B_D(n)
  bool bijective = false;
  bool order_preserving = false;
  std::vector<std::string> failures;
  bool passed() const { return bijective && order_preserving && failures.empty(); }
};

/// η_n: [0, B_D(n)) -> B_D(n) (collapse presentation).
IsoReport natural_iso(Hierarchy& h, std::uint64_t n, CollapseCaps caps);

/// Whether η_{n'} ∘ B_D(f) = B_D(f) ∘ η_n for f: n -> n'.
std::optional<std::string> check_naturality(Hierarchy& h, const Morphism& f, CollapseCaps caps);

struct CollapseCheckReport {
  bool passed = true;
  bool truncated = false;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void fail(std::string why) {
    passed = false;
    if (failures.size() < 16) failures.push_back(std::move(why));
  }
};

/// Stagewise B_{D,n}(A') ∩ B_{D,n}(A'') = B_{D,n}(A'∩A''), for each pair of
/// suborders (given as position lists of A).
CollapseCheckReport check_collapse_pullbacks(
    System d, const FiniteOrder& order,
    const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>& pairs,
    CollapseCaps caps);

/// For all orders n <= max_size: pullbacks over all pairs of suborders, the
/// union identity, ⊆-preservation, and functor laws of collapse_morphism
/// for all maps between orders of size <= max_size.
CollapseCheckReport check_collapse_functor(System d, std::size_t max_size, CollapseCaps caps);

} // namespace ffgh
