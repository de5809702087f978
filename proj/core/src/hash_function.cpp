#include "lshlab/hash_function.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace lshlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_coords(std::size_t dim, const std::vector<std::size_t>& coords) {
  for (auto c : coords) {
    if (c >= dim) throw std::invalid_argument("coordinate " + std::to_string(c) + " out of range for d=" + std::to_string(dim));
  }
}

// Multiplies with overflow detection; nullopt on overflow.
std::optional<Label> checked_mul(Label a, Label b) {
  Label r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

}  // namespace

std::string to_string(const Probability& p) {
  if (p.denominator() == 1) return std::to_string(p.numerator());
  return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
}

Probability parse_probability(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
      throw std::invalid_argument("malformed probability '" + std::string(s) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Probability(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("probability denominator must be positive");
  return Probability(parse_int(text.substr(0, slash)), den);
}

HashFunction HashFunction::projection(std::size_t dim, std::size_t coord) {
  check_coords(dim, {coord});
  return HashFunction(dim, kinds::Projection{coord});
}

HashFunction HashFunction::subset(std::size_t dim, std::vector<std::size_t> coords) {
  check_coords(dim, coords);
  if (coords.size() > 63) throw std::invalid_argument("subset hash supports at most 63 coordinates");
  return HashFunction(dim, kinds::Subset{std::move(coords)});
}

HashFunction HashFunction::parity(std::size_t dim, std::vector<std::size_t> coords) {
  check_coords(dim, coords);
  return HashFunction(dim, kinds::Parity{std::move(coords)});
}

HashFunction HashFunction::constant(std::size_t dim) { return HashFunction(dim, kinds::Constant{}); }

HashFunction HashFunction::table(std::size_t dim, std::vector<Label> labels) {
  if (dim > 26) throw std::invalid_argument("explicit table hash requires d <= 26");
  if (labels.size() != (std::size_t{1} << dim)) {
    throw std::invalid_argument("explicit table must hold 2^d labels");
  }
  if (std::ranges::find(labels, std::numeric_limits<Label>::max()) != labels.end()) {
    throw std::invalid_argument("explicit table label too large");
  }
  return HashFunction(dim, kinds::Table{std::move(labels)});
}

HashFunction HashFunction::minhash(std::size_t dim, std::vector<std::uint32_t> rank) {
  if (rank.size() != dim) throw std::invalid_argument("minhash rank vector must have length d");
  std::vector<std::uint32_t> sorted = rank;
  std::ranges::sort(sorted);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw std::invalid_argument("minhash rank vector must be a permutation of [d]");
  }
  return HashFunction(dim, kinds::MinHash{std::move(rank)});
}

HashFunction HashFunction::pair_collapse(Point a, Point b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("pair-collapse points differ in dimension");
  if (a.dim() > 63) throw std::invalid_argument("pair-collapse hash requires d <= 63");
  const std::size_t dim = a.dim();
  return HashFunction(dim, kinds::PairCollapse{std::move(a), std::move(b)});
}

HashFunction HashFunction::tuple(std::vector<HashFunction> parts) {
  if (parts.empty()) throw std::invalid_argument("tuple hash needs at least one part");
  const std::size_t dim = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != dim) throw std::invalid_argument("tuple parts differ in dimension");
  }
  return HashFunction(dim, kinds::Tuple{std::move(parts)});
}

std::string HashFunction::kind_name() const {
  return std::visit(overloaded{
                        [](const kinds::Projection&) { return "projection"; },
                        [](const kinds::Subset&) { return "subset"; },
                        [](const kinds::Parity&) { return "parity"; },
                        [](const kinds::Constant&) { return "constant"; },
                        [](const kinds::Table&) { return "table"; },
                        [](const kinds::MinHash&) { return "minhash"; },
                        [](const kinds::PairCollapse&) { return "pair"; },
                        [](const kinds::Tuple&) { return "tuple"; },
                    },
                    kind_);
}

Label HashFunction::operator()(const Point& x) const {
  if (x.dim() != dim_) {
    throw std::invalid_argument("hash expects d=" + std::to_string(dim_) + ", got point of d=" +
                                std::to_string(x.dim()));
  }
  return evaluate(x);
}

Label HashFunction::evaluate(const Point& x) const {
  return std::visit(
      overloaded{
          [&](const kinds::Projection& k) -> Label { return x.bit(k.coord) ? 1 : 0; },
          [&](const kinds::Subset& k) -> Label {
            Label v = 0;
            for (std::size_t j = 0; j < k.coords.size(); ++j) {
              if (x.bit(k.coords[j])) v |= Label{1} << j;
            }
            return v;
          },
          [&](const kinds::Parity& k) -> Label {
            Label v = 0;
            for (auto c : k.coords) v ^= x.bit(c) ? 1 : 0;
            return v;
          },
          [](const kinds::Constant&) -> Label { return 0; },
          [&](const kinds::Table& k) -> Label { return k.labels[x.to_index()]; },
          [&](const kinds::MinHash& k) -> Label {
            Label best = dim_;
            std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
            for (std::size_t i = 0; i < dim_; ++i) {
              if (x.bit(i) && k.rank[i] < best_rank) {
                best_rank = k.rank[i];
                best = i;
              }
            }
            return best;
          },
          [&](const kinds::PairCollapse& k) -> Label {
            if (x == k.a || x == k.b) return 0;
            return 1 + x.to_index();
          },
          [&](const kinds::Tuple& k) -> Label {
            Label packed = 0;
            Label scale = 1;
            for (std::size_t j = 0; j < k.parts.size(); ++j) {
              const Label l = k.parts[j].evaluate(x);
              auto term = checked_mul(l, scale);
              if (!term || __builtin_add_overflow(packed, *term, &packed)) {
                throw std::overflow_error("tuple label does not fit in 64 bits");
              }
              if (j + 1 < k.parts.size()) {
                auto u = k.parts[j].label_count();
                auto next = u ? checked_mul(scale, *u) : std::nullopt;
                if (!next) throw std::overflow_error("tuple label does not fit in 64 bits");
                scale = *next;
              }
            }
            return packed;
          },
      },
      kind_);
}

void HashFunction::components(const Point& x, std::vector<Label>& out) const {
  if (x.dim() != dim_) throw std::invalid_argument("dimension mismatch in hash components");
  out.clear();
  if (const auto* t = std::get_if<kinds::Tuple>(&kind_)) {
    out.reserve(t->parts.size());
    for (const auto& p : t->parts) out.push_back(p.evaluate(x));
  } else {
    out.push_back(evaluate(x));
  }
}

std::optional<Label> HashFunction::label_count() const {
  return std::visit(overloaded{
                        [](const kinds::Projection&) -> std::optional<Label> { return 2; },
                        [](const kinds::Subset& k) -> std::optional<Label> { return Label{1} << k.coords.size(); },
                        [](const kinds::Parity&) -> std::optional<Label> { return 2; },
                        [](const kinds::Constant&) -> std::optional<Label> { return 1; },
                        [](const kinds::Table& k) -> std::optional<Label> {
                          return *std::ranges::max_element(k.labels) + 1;
                        },
                        [&](const kinds::MinHash&) -> std::optional<Label> { return dim_ + 1; },
                        [&](const kinds::PairCollapse&) -> std::optional<Label> { return (Label{1} << dim_) + 1; },
                        [](const kinds::Tuple& k) -> std::optional<Label> {
                          Label total = 1;
                          for (const auto& p : k.parts) {
                            auto u = p.label_count();
                            auto next = u ? checked_mul(total, *u) : std::nullopt;
                            if (!next) return std::nullopt;
                            total = *next;
                          }
                          return total;
                        },
                    },
                    kind_);
}

std::vector<Label> HashFunction::label_table() const {
  if (dim_ > 26) throw std::invalid_argument("label_table requires d <= 26");
  const std::size_t n = std::size_t{1} << dim_;
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = evaluate(Point::from_index(i, dim_));
  return out;
}

bool operator==(const HashFunction& a, const HashFunction& b) {
  if (a.dim_ != b.dim_ || a.kind_.index() != b.kind_.index()) return false;
  return std::visit(
      [&](const auto& ka) -> bool {
        using K = std::decay_t<decltype(ka)>;
        const auto& kb = std::get<K>(b.kind_);
        if constexpr (std::is_same_v<K, kinds::Projection>) {
          return ka.coord == kb.coord;
        } else if constexpr (std::is_same_v<K, kinds::Subset> || std::is_same_v<K, kinds::Parity>) {
          return ka.coords == kb.coords;
        } else if constexpr (std::is_same_v<K, kinds::Constant>) {
          return true;
        } else if constexpr (std::is_same_v<K, kinds::Table>) {
          return ka.labels == kb.labels;
        } else if constexpr (std::is_same_v<K, kinds::MinHash>) {
          return ka.rank == kb.rank;
        } else if constexpr (std::is_same_v<K, kinds::PairCollapse>) {
          return ka.a == kb.a && ka.b == kb.b;
        } else {
          return ka.parts == kb.parts;
        }
      },
      a.kind_);
}

}  // namespace lshlab
