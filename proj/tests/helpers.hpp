#pragma once

#include <string>

#include "ffgh/collapse.hpp"
#include "ffgh/denotation.hpp"
#include "ffgh/dsl.hpp"
#include "ffgh/order.hpp"
#include "oracles.hpp"

namespace testing {

inline constexpr ffgh::CollapseCaps kCaps{16, 1u << 14, 4};

inline ffgh::OrdinalTerm term(const ffgh::System& d, const std::string& text, std::size_t n = 32) {
  return ffgh::parse_term(text, *d, ffgh::FiniteOrder::of_size(n));
}

inline ffgh::System system_of(oracle::Sys s) {
  return s == oracle::Sys::identity ? ffgh::identity_system() : ffgh::pow2_system();
}

/// Library term for an oracle index.
inline ffgh::OrdinalTerm index_term(const ffgh::System& d, oracle::Sys s, std::uint64_t beta) {
  if (s == oracle::Sys::identity) return {*d->ctor_at(0), {beta}};
  std::vector<ffgh::Key> exps;
  for (std::uint64_t e = 64; e-- > 0;)
    if (beta >> e & 1) exps.push_back(e);
  return {ffgh::Ctor{0, exps.size(), {}, {}}, exps};
}

inline std::vector<std::string> texts(const ffgh::CollapseFragment& f) {
  std::vector<std::string> out;
  for (ffgh::NodeId id : f.sorted()) out.push_back(f.text(id));
  return out;
}

}  // namespace testing
