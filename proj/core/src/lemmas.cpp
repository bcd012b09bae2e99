#include "zslab/lemmas.hpp"

#include <algorithm>

#include "zslab/error.hpp"
#include "zslab/invariants.hpp"

namespace zslab {

std::string_view to_string(CertificateReason reason) noexcept {
  switch (reason) {
    case CertificateReason::Accepted: return "Accepted";
    case CertificateReason::NontrivialityRequired: return "NontrivialityRequired";
    case CertificateReason::MissingField: return "MissingField";
    case CertificateReason::WrongGroup: return "WrongGroup";
    case CertificateReason::SumsNotSubgroup: return "SumsNotSubgroup";
    case CertificateReason::NotSubsequence: return "NotSubsequence";
    case CertificateReason::CosetNotContained: return "CosetNotContained";
    case CertificateReason::InequalityFails: return "InequalityFails";
    case CertificateReason::NoVanishingAssignment: return "NoVanishingAssignment";
    case CertificateReason::ContradictsLemma: return "ContradictsLemma";
  }
  return "Unknown";
}

namespace {

// q for a group of shape C_3 + C_3q with q >= 5 prime.
int extremal_q(const AbelianGroup& group) {
  const auto f = group.invariant_factors();
  if (f.size() != 2 || f[0] != 3 || f[1] % 3 != 0 || f[1] / 3 < 5 || !is_prime(f[1] / 3)) {
    throw Error(ErrorCode::PreconditionFailed, "expected C_3 + C_3q with q >= 5 prime, got " + group.literal());
  }
  return f[1] / 3;
}

BasicLemmaResult reject(CertificateReason reason) {
  BasicLemmaResult r;
  r.reason = reason;
  return r;
}

BasicLemmaResult check_subgroup_sums(const Sequence& s, const Subgroup& h) {
  if (!(sigma0_set(restrict(s, h)) == h.members())) return reject(CertificateReason::SumsNotSubgroup);
  BasicLemmaResult r;
  r.accepted = true;
  return r;
}

BasicLemmaResult check_coset_growth(const Sequence& s, const Subgroup& h, const Sequence& sub, ElementId shift, int q) {
  const AbelianGroup& group = s.group();
  if (!(sub.group() == group) || !sub.divides(s)) return reject(CertificateReason::NotSubsequence);
  if (!group.contains(shift)) throw Error(ErrorCode::InvalidElement, "shift outside the group");

  const ElementSet coset = h.members().translate(shift);
  if (!coset.is_subset_of(sigma0_set(sub))) return reject(CertificateReason::CosetNotContained);

  const ElementSet grown = sumset(coset, sigma0_set(s.without(sub)));
  Subgroup m = stabilizer(grown);
  // Indices of S' whose terms lie in M are already indices of S_M.
  long union_size = restrict(s, m).length();
  for (const ElementId g : sub.support()) {
    if (!m.contains(g)) union_size += sub.multiplicity(g);
  }
  BasicLemmaResult r;
  r.growth_lhs = (s.length() - union_size + 1) * static_cast<long>(m.order());
  r.growth_rhs = 9L * q;
  r.accepted = r.growth_lhs >= r.growth_rhs;
  r.reason = r.accepted ? CertificateReason::Accepted : CertificateReason::InequalityFails;
  r.stabilizer = std::move(m);
  return r;
}

BasicLemmaResult check_vanishing(const Sequence& s, int q) {
  const AbelianGroup& group = s.group();
  const Sequence part = restrict(s, torsion_subgroup(group, 3)) * restrict(s, torsion_subgroup(group, q));
  if (part.empty()) return reject(CertificateReason::NoVanishingAssignment);
  auto assignment = exists_vanishing_assignment(part);
  if (!assignment) return reject(CertificateReason::NoVanishingAssignment);
  BasicLemmaResult r;
  r.accepted = true;
  r.assignment = std::move(assignment);
  return r;
}

}  // namespace

BasicLemmaResult lemma_basic_check(const Sequence& s, const BasicLemmaCertificate& certificate) {
  const int q = extremal_q(s.group());
  if (s.length() != 3 * q + 3) {
    throw Error(ErrorCode::PreconditionFailed,
                "sequence length " + std::to_string(s.length()) + " != " + std::to_string(3 * q + 3));
  }
  if (!is_regular(s).regular) throw Error(ErrorCode::PreconditionFailed, "sequence is not regular");

  BasicLemmaResult result;
  if (certificate.variant == CertificateVariant::Vanishing) {
    result = check_vanishing(s, q);
  } else {
    if (!certificate.subgroup) return reject(CertificateReason::MissingField);
    const Subgroup& h = *certificate.subgroup;
    if (!(h.group() == s.group())) return reject(CertificateReason::WrongGroup);
    if (h.is_trivial()) return reject(CertificateReason::NontrivialityRequired);
    if (certificate.variant == CertificateVariant::SubgroupSums) {
      result = check_subgroup_sums(s, h);
    } else {
      if (!certificate.subsequence || !certificate.shift) return reject(CertificateReason::MissingField);
      result = check_coset_growth(s, h, *certificate.subsequence, *certificate.shift, q);
    }
  }
  if (result.accepted) {
    result.basis = is_basis(s);
    if (!result.basis) {
      result.accepted = false;
      result.reason = CertificateReason::ContradictsLemma;
    }
  }
  return result;
}

St0Result lemma_st0_check(const Sequence& s) {
  const AbelianGroup& group = s.group();
  St0Result r;
  if (group.rank() > 2) {
    r.reason = "Davenport constant unavailable for rank " + std::to_string(group.rank());
    return r;
  }
  const int p = smallest_prime_factor(group.order());
  r.threshold = std::max(group.order() / p + p - 2, davenport(group, DavenportMode::Formula));
  if (!is_regular(s).regular) {
    r.reason = "sequence is not regular";
    return r;
  }
  if (s.length() < r.threshold) {
    r.reason = "length " + std::to_string(s.length()) + " below threshold " + std::to_string(r.threshold);
    return r;
  }
  const ElementSet sums = sigma_set(s);
  if (sums.is_full()) {
    r.reason = "sequence is an additive basis";
    return r;
  }
  r.stabilizer = stabilizer(sums);
  r.status = r.stabilizer->is_trivial() ? St0Status::Holds : St0Status::Violated;
  return r;
}

}  // namespace zslab
