#pragma once

// The weakly finite companion D̂ of a denotation system, its embedding into
// 2^A·D(A), the embedding e: B_D(A) -> B_{D̂}(ω+A), the dilator
// F = (ω+1)D + ω and the fixed-point map θ: D(A) -> A for A = B_F(0).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ffgh/collapse.hpp"
#include "ffgh/denotation.hpp"

namespace ffgh {

/// D̂: constructors d̂_i of arity n_i + i, where d_i is the i-th constructor
/// of D (arity n_i). d̂_i(x̄, ŷ) < d̂_j(z̄, ŵ) iff d_i(x̄) < d_j(z̄), or the
/// two are equal and ŷ <lex ŵ.
System hat_system(System d);

/// F = (ω+1)D + ω: terms (ω+1)α+a with a <= ω, then Λ+n.
System bachmann_F_system(System d);

inline constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();

/// (ω+1)α+a, with a = kOmega for ω.
OrdinalTerm bh_first(const OrdinalTerm& alpha, std::uint64_t a);
/// Λ+n.
OrdinalTerm bh_lambda(std::uint64_t n);

/// The map d̂_i(ā, b̄) ↦ 2^A·d_i(ā) + 2^{b_1}+...+2^{b_i}, landing in
/// product_system(pow2, D).
OrdinalTerm hat_to_product(const OrdinalTerm& hat_term);

struct HatEmbedding {
  System hat;
  System target;
  std::vector<OrdinalTerm> domain;  // D̂(A), increasing
  std::vector<OrdinalTerm> image;
  bool strictly_increasing = false;
};

HatEmbedding hat_embed(System d, const FiniteOrder& order, EnumLimits limits = {});

struct EEmbedding {
  FragmentPtr source;  // B_D(A)
  FragmentPtr target;  // B_{D̂}(K + A), K = nat_count
  std::size_t nat_count = 0;
  std::vector<std::optional<NodeId>> image;  // by source NodeId
  bool sufficient = true;           // every image was found
  bool strictly_increasing = false;
  bool stages_preserved = false;    // stage-n terms land in stage n
  bool chain_consistent = false;    // stage-n map extends the stage-(n-1) map
  std::vector<std::string> issues;
};

/// e_n(a★) = (ω+a)★, e_n(ψ(2^{α_1}+...)) = ψ(2^{α'_1}+...) with
/// α'_i = d̂_j(e_{n-1}(args), (j-1)★, ..., 0★) when α_i = d_j(args).
EEmbedding e_embed(System d, const FiniteOrder& order, CollapseCaps caps);

struct ThetaEntry {
  OrdinalTerm alpha;             // arguments are NodeIds of the fragment
  std::optional<NodeId> theta;   // in the fragment
  std::string alpha_text;
  std::string theta_text;
  bool stabilized = false;       // same value with the stage cap or the parameter cap raised by one
};

struct BhResult {
  System d;
  System f;
  CollapseCaps caps;
  FragmentPtr fragment;      // B_F(0) at caps
  FragmentPtr more_stages;   // stage cap + 1
  FragmentPtr more_params;   // parameter cap + 1
  std::vector<ThetaEntry> thetas;
  std::size_t stabilized_count() const;
};

/// Least element of `frag` of the form ψ(2^{α_1}+...+2^{α_n}+2^{(ω+1)α+ω});
/// `skip` > 0 picks a later candidate instead.
std::optional<NodeId> theta_in(const CollapseFragment& frag, const OrdinalTerm& alpha,
                               std::size_t skip = 0);

BhResult bh_fixed_point(System d, CollapseCaps caps, std::size_t max_domain = 4096);

struct BhReport {
  bool property1 = true;  // α < β, supp(α) < θ(β) ⟹ θ(α) < θ(β)
  bool property2 = true;  // supp(α) < θ(α)
  bool least = true;      // no smaller element of the required shape
  std::size_t stabilized = 0;
  std::size_t unstabilized = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return property1 && property2 && least; }
};

BhReport check_bh_properties(const BhResult& r);

} // namespace ffgh
