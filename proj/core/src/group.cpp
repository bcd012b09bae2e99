#include "zslab/group.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "zslab/error.hpp"

namespace zslab {

namespace {

constexpr std::int64_t kMaxOrder = std::int64_t{1} << 30;
constexpr int kAdditionTableMaxOrder = 256;
constexpr int kCoordinateTableMaxOrder = 1 << 16;

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

struct AbelianGroup::Data {
  std::vector<int> factors;
  std::vector<int> strides;
  int order = 1;
  int exponent = 1;
  std::vector<int> coords;       // order * rank, when small enough
  std::vector<ElementId> table;  // order * order, when small enough
};

AbelianGroup AbelianGroup::from_moduli(std::span<const std::int64_t> moduli) {
  if (moduli.empty()) throw Error(ErrorCode::InvalidGroup, "empty modulus list");

  // prime -> prime-power components, collected across all moduli
  std::map<std::int64_t, std::vector<std::int64_t>> components;
  std::int64_t order = 1;
  for (const std::int64_t m : moduli) {
    if (m < 1) throw Error(ErrorCode::InvalidGroup, "modulus " + std::to_string(m) + " is not positive");
    if (m == 1) continue;
    if (order > kMaxOrder / m) throw Error(ErrorCode::InvalidGroup, "group order exceeds 2^30");
    order *= m;
    for (const auto& [p, e] : factorize(m)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      components[p].push_back(q);
    }
  }
  if (order == 1) throw Error(ErrorCode::InvalidGroup, "trivial group");

  std::size_t rank = 0;
  for (auto& [p, powers] : components) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    rank = std::max(rank, powers.size());
  }
  // k-th largest power of each prime goes into the k-th-from-last factor
  std::vector<int> factors(rank, 1);
  for (const auto& [p, powers] : components) {
    for (std::size_t k = 0; k < powers.size(); ++k) factors[rank - 1 - k] *= static_cast<int>(powers[k]);
  }

  auto data = std::make_shared<Data>();
  data->factors = factors;
  data->order = static_cast<int>(order);
  data->exponent = factors.back();
  data->strides.resize(rank);
  int stride = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    data->strides[i] = stride;
    stride *= factors[i];
  }
  const int n = data->order;
  if (n <= kCoordinateTableMaxOrder) {
    data->coords.resize(static_cast<std::size_t>(n) * rank);
    for (int id = 0; id < n; ++id) {
      int rest = id;
      for (std::size_t i = 0; i < rank; ++i) {
        data->coords[static_cast<std::size_t>(id) * rank + i] = rest % factors[i];
        rest /= factors[i];
      }
    }
  }
  if (n <= kAdditionTableMaxOrder) {
    data->table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int id = 0;
        for (std::size_t i = 0; i < rank; ++i) {
          const int s = data->coords[a * rank + i] + data->coords[b * rank + i];
          id += (s >= factors[i] ? s - factors[i] : s) * data->strides[i];
        }
        data->table[static_cast<std::size_t>(a) * n + b] = id;
      }
    }
  }
  return AbelianGroup(std::move(data));
}

AbelianGroup AbelianGroup::from_moduli(std::initializer_list<std::int64_t> moduli) {
  return from_moduli(std::span<const std::int64_t>(moduli.begin(), moduli.size()));
}

std::span<const int> AbelianGroup::invariant_factors() const noexcept { return data_->factors; }
int AbelianGroup::order() const noexcept { return data_->order; }
int AbelianGroup::exponent() const noexcept { return data_->exponent; }
int AbelianGroup::rank() const noexcept { return static_cast<int>(data_->factors.size()); }

ElementId AbelianGroup::index_of(const GroupElement& element) const {
  const auto& f = data_->factors;
  if (element.coords.size() != f.size()) {
    throw Error(ErrorCode::InvalidElement, "expected " + std::to_string(f.size()) + " coordinates, got " +
                                               std::to_string(element.coords.size()));
  }
  ElementId id = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t c = element.coords[i];
    if (c < 0 || c >= f[i]) {
      throw Error(ErrorCode::InvalidElement,
                  "coordinate " + std::to_string(c) + " outside [0, " + std::to_string(f[i]) + ")");
    }
    id += static_cast<ElementId>(c) * data_->strides[i];
  }
  return id;
}

GroupElement AbelianGroup::element(ElementId id) const {
  if (!contains(id)) throw Error(ErrorCode::InvalidElement, "index " + std::to_string(id) + " out of range");
  GroupElement out;
  out.coords.resize(data_->factors.size());
  for (int i = 0; i < rank(); ++i) out.coords[i] = coordinate(id, i);
  return out;
}

int AbelianGroup::coordinate(ElementId id, int axis) const {
  if (!data_->coords.empty()) return data_->coords[static_cast<std::size_t>(id) * data_->factors.size() + axis];
  return (id / data_->strides[axis]) % data_->factors[axis];
}

ElementId AbelianGroup::add(ElementId a, ElementId b) const {
  if (!data_->table.empty()) return data_->table[static_cast<std::size_t>(a) * data_->order + b];
  ElementId id = 0;
  for (int i = 0; i < rank(); ++i) {
    const int n = data_->factors[i];
    const int s = coordinate(a, i) + coordinate(b, i);
    id += (s >= n ? s - n : s) * data_->strides[i];
  }
  return id;
}

ElementId AbelianGroup::neg(ElementId a) const {
  ElementId id = 0;
  for (int i = 0; i < rank(); ++i) {
    const int c = coordinate(a, i);
    id += (c == 0 ? 0 : data_->factors[i] - c) * data_->strides[i];
  }
  return id;
}

ElementId AbelianGroup::scalar_mul(std::int64_t c, ElementId a) const {
  ElementId id = 0;
  for (int i = 0; i < rank(); ++i) {
    const std::int64_t n = data_->factors[i];
    id += static_cast<ElementId>(mod(mod(c, n) * coordinate(a, i), n)) * data_->strides[i];
  }
  return id;
}

int AbelianGroup::order_of(ElementId a) const {
  std::int64_t result = 1;
  for (int i = 0; i < rank(); ++i) {
    const int n = data_->factors[i];
    result = std::lcm(result, n / std::gcd(n, coordinate(a, i)));
  }
  return static_cast<int>(result);
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  return element(add(index_of(a), index_of(b)));
}

GroupElement AbelianGroup::neg(const GroupElement& a) const { return element(neg(index_of(a))); }

GroupElement AbelianGroup::scalar_mul(std::int64_t c, const GroupElement& a) const {
  return element(scalar_mul(c, index_of(a)));
}

int AbelianGroup::order_of(const GroupElement& a) const { return order_of(index_of(a)); }

int AbelianGroup::pairing(ElementId g, ElementId chi) const {
  const std::int64_t e = data_->exponent;
  std::int64_t k = 0;
  for (int i = 0; i < rank(); ++i) {
    const std::int64_t scale = e / data_->factors[i];
    k = (k + scale * coordinate(g, i) % e * coordinate(chi, i)) % e;
  }
  return static_cast<int>(k);
}

std::string AbelianGroup::literal() const {
  std::string out;
  for (std::size_t i = 0; i < data_->factors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(data_->factors[i]);
  }
  return out;
}

bool operator==(const AbelianGroup& a, const AbelianGroup& b) noexcept {
  return a.data_ == b.data_ || a.data_->factors == b.data_->factors;
}

AbelianGroup make_group(std::span<const std::int64_t> moduli) { return AbelianGroup::from_moduli(moduli); }

AbelianGroup parse_group_literal(const std::string& literal) {
  std::vector<std::int64_t> moduli;
  std::stringstream in(literal);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorCode::InvalidGroup, "empty modulus in '" + literal + "'");
    token = token.substr(first, last - first + 1);
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidGroup, "bad modulus '" + token + "'");
    }
    if (used != token.size()) throw Error(ErrorCode::InvalidGroup, "bad modulus '" + token + "'");
    moduli.push_back(value);
  }
  return make_group(moduli);
}

std::vector<AbelianGroup> groups_up_to(int max_order, int max_rank) {
  std::vector<std::vector<std::int64_t>> chains;
  std::vector<std::int64_t> chain;
  auto extend = [&](auto&& self, std::int64_t order) -> void {
    if (!chain.empty()) chains.push_back(chain);
    if (static_cast<int>(chain.size()) == max_rank) return;
    const std::int64_t step = chain.empty() ? 1 : chain.back();
    for (std::int64_t next = chain.empty() ? 2 : step; order * next <= max_order; next += step) {
      chain.push_back(next);
      self(self, order * next);
      chain.pop_back();
    }
  };
  extend(extend, 1);

  std::vector<AbelianGroup> out;
  out.reserve(chains.size());
  for (const auto& c : chains) out.push_back(make_group(c));
  std::sort(out.begin(), out.end(), [](const AbelianGroup& a, const AbelianGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    const auto fa = a.invariant_factors();
    const auto fb = b.invariant_factors();
    return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
  });
  return out;
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int smallest_prime_factor(std::int64_t n) noexcept {
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return static_cast<int>(d);
  }
  return static_cast<int>(n);
}

}  // namespace zslab
