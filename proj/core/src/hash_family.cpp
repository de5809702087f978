#include "lshlab/hash_family.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lshlab {

namespace {

struct Atoms {
  std::vector<WeightedFunction> functions;
  std::vector<double> cumulative;
  bool uniform = true;
};

std::shared_ptr<const Atoms> make_atoms(std::vector<WeightedFunction> functions) {
  auto atoms = std::make_shared<Atoms>();
  double acc = 0.0;
  for (const auto& f : functions) {
    acc += to_double(f.weight);
    atoms->cumulative.push_back(acc);
    if (f.weight != functions.front().weight) atoms->uniform = false;
  }
  atoms->functions = std::move(functions);
  return atoms;
}

std::vector<std::uint32_t> random_ranks(std::size_t d, CounterRng& rng) {
  std::vector<std::uint32_t> order(d);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t i = d; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }
  std::vector<std::uint32_t> rank(d);
  for (std::size_t pos = 0; pos < d; ++pos) rank[order[pos]] = static_cast<std::uint32_t>(pos);
  return rank;
}

}  // namespace

struct HashFamily::Impl {
  FamilyDescriptor descriptor;
  std::string description;
  bool symmetric = false;
  std::shared_ptr<const Atoms> atoms;  // null for generator-only families
};

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::BitSampling: return "bit-sampling";
    case FamilyKind::MinHash: return "minhash";
    case FamilyKind::Trivial: return "trivial";
    case FamilyKind::Constant: return "constant";
    case FamilyKind::Explicit: return "explicit";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (auto k : {FamilyKind::BitSampling, FamilyKind::MinHash, FamilyKind::Trivial, FamilyKind::Constant,
                 FamilyKind::Explicit}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown family kind '" + std::string(name) + "'");
}

std::size_t HashFamily::dim() const { return impl_->descriptor.dim; }
const FamilyDescriptor& HashFamily::descriptor() const { return impl_->descriptor; }
const std::string& HashFamily::description() const { return impl_->description; }
bool HashFamily::coordinate_symmetric() const { return impl_->symmetric; }

std::optional<std::size_t> HashFamily::support_size() const {
  if (!impl_->atoms) return std::nullopt;
  std::size_t total = 1;
  for (std::size_t j = 0; j < impl_->descriptor.power; ++j) {
    if (__builtin_mul_overflow(total, impl_->atoms->functions.size(), &total)) return std::nullopt;
  }
  return total;
}

std::vector<WeightedFunction> HashFamily::support(std::size_t limit) const {
  const auto size = support_size();
  if (!size) throw std::length_error("family '" + description() + "' has no enumerable support");
  if (*size > limit) {
    throw std::length_error("support of '" + description() + "' has " + std::to_string(*size) +
                            " atoms, above the limit " + std::to_string(limit));
  }
  const auto& atoms = impl_->atoms->functions;
  const std::size_t k = impl_->descriptor.power;
  if (k == 1) return atoms;

  const std::size_t m = atoms.size();
  std::vector<WeightedFunction> out;
  out.reserve(*size);
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t t = 0; t < *size; ++t) {
    std::vector<HashFunction> parts;
    parts.reserve(k);
    Probability w(1);
    for (std::size_t j = 0; j < k; ++j) {
      parts.push_back(atoms[digit[j]].fn);
      w *= atoms[digit[j]].weight;
    }
    out.push_back({HashFunction::tuple(std::move(parts)), w});
    for (std::size_t j = 0; j < k && ++digit[j] == m; ++j) digit[j] = 0;
  }
  return out;
}

HashFunction HashFamily::draw(CounterRng& rng) const {
  auto draw_atom = [&]() -> HashFunction {
    if (impl_->descriptor.kind == FamilyKind::MinHash) {
      return HashFunction::minhash(dim(), random_ranks(dim(), rng));
    }
    const auto& atoms = *impl_->atoms;
    if (atoms.uniform) return atoms.functions[rng.below(atoms.functions.size())].fn;
    const double u = rng.uniform() * atoms.cumulative.back();
    auto it = std::upper_bound(atoms.cumulative.begin(), atoms.cumulative.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - atoms.cumulative.begin()),
                                           atoms.functions.size() - 1);
    return atoms.functions[idx].fn;
  };
  const std::size_t k = impl_->descriptor.power;
  if (k == 1) return draw_atom();
  std::vector<HashFunction> parts;
  parts.reserve(k);
  for (std::size_t j = 0; j < k; ++j) parts.push_back(draw_atom());
  return HashFunction::tuple(std::move(parts));
}

HashFunction HashFamily::sample(std::uint64_t seed, std::uint64_t index) const {
  CounterRng rng(seed, index);
  return draw(rng);
}

HashFamily HashFamily::from_descriptor(const FamilyDescriptor& descriptor) {
  HashFamily base = [&] {
    switch (descriptor.kind) {
      case FamilyKind::BitSampling: return bit_sampling_family(descriptor.dim);
      case FamilyKind::MinHash: return minhash_family(descriptor.dim, descriptor.seed);
      case FamilyKind::Trivial: return trivial_family(descriptor.dim, descriptor.radius);
      case FamilyKind::Constant: return constant_family(descriptor.dim);
      case FamilyKind::Explicit: return explicit_family(descriptor.dim, descriptor.functions);
    }
    throw std::invalid_argument("unknown family kind");
  }();
  if (descriptor.power == 0) throw std::invalid_argument("power k must be >= 1");
  auto impl = std::make_shared<Impl>(*base.impl_);
  impl->descriptor.seed = descriptor.seed;
  HashFamily reseeded(std::move(impl));
  return power(reseeded, descriptor.power);
}

HashFamily bit_sampling_family(std::size_t d) {
  if (d == 0) throw std::invalid_argument("bit-sampling family needs d >= 1");
  std::vector<WeightedFunction> fns;
  fns.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    fns.push_back({HashFunction::projection(d, i), Probability(1, static_cast<std::int64_t>(d))});
  }
  auto impl = std::make_shared<HashFamily::Impl>();
  impl->descriptor = {FamilyKind::BitSampling, d, 0, kDefaultSeed, 1, {}};
  impl->description = "bit-sampling d=" + std::to_string(d);
  impl->symmetric = true;
  impl->atoms = make_atoms(std::move(fns));
  return HashFamily(std::move(impl));
}

HashFamily minhash_family(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("minhash family needs d >= 1");
  auto impl = std::make_shared<HashFamily::Impl>();
  impl->descriptor = {FamilyKind::MinHash, d, 0, seed, 1, {}};
  impl->description = "minhash d=" + std::to_string(d);
  if (d <= 8) {
    std::vector<std::uint32_t> order(d);
    std::iota(order.begin(), order.end(), 0U);
    std::int64_t count = 1;
    for (std::size_t i = 2; i <= d; ++i) count *= static_cast<std::int64_t>(i);
    std::vector<WeightedFunction> fns;
    fns.reserve(static_cast<std::size_t>(count));
    do {
      std::vector<std::uint32_t> rank(d);
      for (std::size_t pos = 0; pos < d; ++pos) rank[order[pos]] = static_cast<std::uint32_t>(pos);
      fns.push_back({HashFunction::minhash(d, std::move(rank)), Probability(1, count)});
    } while (std::next_permutation(order.begin(), order.end()));
    impl->atoms = make_atoms(std::move(fns));
  }
  return HashFamily(std::move(impl));
}

HashFamily trivial_family(std::size_t d, std::size_t r) {
  if (d == 0 || d > 14) throw std::invalid_argument("trivial family requires 1 <= d <= 14");
  if (r == 0) throw std::invalid_argument("trivial family: no pair within r=0");
  constexpr std::size_t kMaxPairs = std::size_t{1} << 22;
  const std::size_t n = std::size_t{1} << d;
  std::vector<WeightedFunction> fns;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (static_cast<std::size_t>(__builtin_popcountll(x ^ y)) > r) continue;
      if (fns.size() == kMaxPairs) throw std::invalid_argument("trivial family too large to enumerate");
      fns.push_back({HashFunction::pair_collapse(Point::from_index(x, d), Point::from_index(y, d)), Probability(0)});
    }
  }
  for (auto& f : fns) f.weight = Probability(1, static_cast<std::int64_t>(fns.size()));
  auto impl = std::make_shared<HashFamily::Impl>();
  impl->descriptor = {FamilyKind::Trivial, d, r, kDefaultSeed, 1, {}};
  impl->description = "trivial d=" + std::to_string(d) + " r=" + std::to_string(r);
  impl->atoms = make_atoms(std::move(fns));
  return HashFamily(std::move(impl));
}

HashFamily constant_family(std::size_t d) {
  if (d == 0) throw std::invalid_argument("constant family needs d >= 1");
  auto impl = std::make_shared<HashFamily::Impl>();
  impl->descriptor = {FamilyKind::Constant, d, 0, kDefaultSeed, 1, {}};
  impl->description = "constant d=" + std::to_string(d);
  impl->symmetric = true;
  impl->atoms = make_atoms({{HashFunction::constant(d), Probability(1)}});
  return HashFamily(std::move(impl));
}

HashFamily explicit_family(std::size_t d, std::vector<WeightedFunction> functions) {
  if (d == 0) throw std::invalid_argument("explicit family needs d >= 1");
  if (functions.empty()) throw std::invalid_argument("explicit family needs at least one function");
  Probability total(0);
  for (const auto& f : functions) {
    if (f.fn.dim() != d) throw std::invalid_argument("explicit family function has wrong dimension");
    if (f.weight < Probability(0)) throw std::invalid_argument("explicit family weight is negative");
    if (std::holds_alternative<kinds::Tuple>(f.fn.kind())) {
      throw std::invalid_argument("explicit family functions cannot be tuples; use the power k");
    }
    total += f.weight;
  }
  if (total != Probability(1)) throw std::invalid_argument("explicit family weights sum to " + to_string(total) + ", not 1");
  auto impl = std::make_shared<HashFamily::Impl>();
  impl->descriptor = {FamilyKind::Explicit, d, 0, kDefaultSeed, 1, functions};
  impl->description = "explicit d=" + std::to_string(d) + " (" + std::to_string(functions.size()) + " functions)";
  impl->atoms = make_atoms(std::move(functions));
  return HashFamily(std::move(impl));
}

HashFamily power(const HashFamily& family, std::size_t k) {
  if (k == 0) throw std::invalid_argument("power k must be >= 1");
  if (k == 1) return family;
  auto impl = std::make_shared<HashFamily::Impl>(*family.impl_);
  std::size_t total = 0;
  if (__builtin_mul_overflow(impl->descriptor.power, k, &total)) throw std::overflow_error("power k overflows");
  impl->descriptor.power = total;
  const auto base = impl->description.substr(0, impl->description.find(" ^"));
  impl->description = base + " ^" + std::to_string(total);
  return HashFamily(std::move(impl));
}

}  // namespace lshlab
