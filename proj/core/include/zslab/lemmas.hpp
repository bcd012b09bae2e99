#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "zslab/algebra.hpp"
#include "zslab/group.hpp"
#include "zslab/sequence.hpp"
#include "zslab/subgroup.hpp"

namespace zslab {

// Sufficient conditions for a regular sequence of length 3q + 3 over
// C_3 + C_3q (q >= 5 prime) to be an additive basis.
enum class CertificateVariant { SubgroupSums, CosetGrowth, Vanishing };

struct BasicLemmaCertificate {
  CertificateVariant variant = CertificateVariant::SubgroupSums;
  std::optional<Subgroup> subgroup;     // H', variants SubgroupSums and CosetGrowth
  std::optional<Sequence> subsequence;  // S', CosetGrowth
  std::optional<ElementId> shift;       // a, CosetGrowth
};

enum class CertificateReason {
  Accepted,
  NontrivialityRequired,
  MissingField,
  WrongGroup,
  SumsNotSubgroup,       // sigma_0(S_H') != H'
  NotSubsequence,
  CosetNotContained,     // a + H' not inside sigma_0(S')
  InequalityFails,
  NoVanishingAssignment,
  ContradictsLemma,      // accepted but S is not a basis
};

std::string_view to_string(CertificateReason reason) noexcept;

struct BasicLemmaResult {
  bool accepted = false;
  CertificateReason reason = CertificateReason::Accepted;
  bool basis = false;  // is_basis(S), computed on acceptance
  // CosetGrowth details
  std::optional<Subgroup> stabilizer;  // M
  long growth_lhs = 0;                 // (l - |I_{S_M} u I_{S'}| + 1) |M|
  long growth_rhs = 0;                 // 9q
  // Vanishing details
  std::optional<VanishingAssignment> assignment;
};

// Throws PreconditionFailed if the group is not C_3 + C_3q with q >= 5 prime,
// or S is not regular of length 3q + 3.
BasicLemmaResult lemma_basic_check(const Sequence& s, const BasicLemmaCertificate& certificate);

enum class St0Status { NotApplicable, Holds, Violated };

struct St0Result {
  St0Status status = St0Status::NotApplicable;
  std::string reason;
  int threshold = 0;  // max(|G|/p + p - 2, D(G)), 0 if D(G) is unavailable
  std::optional<Subgroup> stabilizer;
};

// Regular S with |S| >= threshold and sigma(S) != G must have a trivial
// stabilizer of sigma(S). Groups of rank >= 3 are reported NotApplicable
// since D(G) is not available in closed form.
St0Result lemma_st0_check(const Sequence& s);

}  // namespace zslab
