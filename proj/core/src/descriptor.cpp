#include "lshlab/descriptor.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace lshlab {

namespace {

constexpr std::string_view kHeader = "lshlab-family 1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_uint(std::string_view s, std::string_view what) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("descriptor: malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view s, std::string_view what) {
  std::vector<T> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_uint<T>(s.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string format_function(const HashFunction& fn) {
  return std::visit(
      [&](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Projection>) {
          return "projection " + std::to_string(k.coord);
        } else if constexpr (std::is_same_v<K, kinds::Subset>) {
          return "subset " + join(k.coords);
        } else if constexpr (std::is_same_v<K, kinds::Parity>) {
          return "parity " + join(k.coords);
        } else if constexpr (std::is_same_v<K, kinds::Constant>) {
          return "constant";
        } else if constexpr (std::is_same_v<K, kinds::Table>) {
          return "table " + join(k.labels);
        } else if constexpr (std::is_same_v<K, kinds::MinHash>) {
          return "minhash " + join(k.rank);
        } else if constexpr (std::is_same_v<K, kinds::PairCollapse>) {
          return "pair " + k.a.to_string() + " " + k.b.to_string();
        } else {
          throw std::invalid_argument("tuple functions have no descriptor form; use the power k");
        }
      },
      fn.kind());
}

HashFunction parse_function(std::size_t dim, std::string_view text) {
  const auto tok = split_ws(text);
  if (tok.empty()) throw std::invalid_argument("descriptor: empty function");
  const auto kind = tok[0];
  auto arg = [&](std::size_t i) -> std::string_view {
    if (tok.size() <= i) throw std::invalid_argument("descriptor: function '" + std::string(kind) + "' missing argument");
    return tok[i];
  };
  if (kind == "projection") return HashFunction::projection(dim, parse_uint<std::size_t>(arg(1), "coordinate"));
  if (kind == "subset") return HashFunction::subset(dim, parse_list<std::size_t>(tok.size() > 1 ? tok[1] : "", "coordinate"));
  if (kind == "parity") return HashFunction::parity(dim, parse_list<std::size_t>(tok.size() > 1 ? tok[1] : "", "coordinate"));
  if (kind == "constant") return HashFunction::constant(dim);
  if (kind == "table") return HashFunction::table(dim, parse_list<Label>(arg(1), "label"));
  if (kind == "minhash") return HashFunction::minhash(dim, parse_list<std::uint32_t>(arg(1), "rank"));
  if (kind == "pair") {
    auto a = Point::from_string(arg(1));
    auto b = Point::from_string(arg(2));
    if (a.dim() != dim || b.dim() != dim) throw std::invalid_argument("descriptor: pair points must have length d");
    return HashFunction::pair_collapse(std::move(a), std::move(b));
  }
  throw std::invalid_argument("descriptor: unknown function kind '" + std::string(kind) + "'");
}

std::string format_descriptor(const FamilyDescriptor& d) {
  std::ostringstream out;
  out << kHeader << '\n';
  out << "kind " << to_string(d.kind) << '\n';
  out << "d " << d.dim << '\n';
  if (d.kind == FamilyKind::Trivial) out << "r " << d.radius << '\n';
  out << "k " << d.power << '\n';
  out << "seed " << d.seed << '\n';
  for (const auto& f : d.functions) out << "fn " << to_string(f.weight) << ' ' << format_function(f.fn) << '\n';
  return out.str();
}

FamilyDescriptor parse_descriptor(std::string_view text) {
  FamilyDescriptor d;
  bool saw_header = false;
  bool saw_kind = false;
  bool saw_dim = false;
  std::vector<std::pair<std::string, std::string>> pending_functions;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line != kHeader) throw std::invalid_argument("descriptor: expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      continue;
    }
    const auto space = line.find_first_of(" \t");
    const auto key = line.substr(0, space);
    const auto value = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space + 1));
    if (key == "kind") {
      d.kind = parse_family_kind(value);
      saw_kind = true;
    } else if (key == "d") {
      d.dim = parse_uint<std::size_t>(value, "d");
      saw_dim = true;
    } else if (key == "r") {
      d.radius = parse_uint<std::size_t>(value, "r");
    } else if (key == "k") {
      d.power = parse_uint<std::size_t>(value, "k");
    } else if (key == "seed") {
      d.seed = parse_uint<std::uint64_t>(value, "seed");
    } else if (key == "fn") {
      const auto sp = value.find_first_of(" \t");
      if (sp == std::string_view::npos) throw std::invalid_argument("descriptor: fn needs a weight and a function");
      pending_functions.emplace_back(std::string(value.substr(0, sp)), std::string(trim(value.substr(sp + 1))));
    } else {
      throw std::invalid_argument("descriptor: unknown key '" + std::string(key) + "'");
    }
  }
  if (!saw_header) throw std::invalid_argument("descriptor: empty document");
  if (!saw_kind || !saw_dim) throw std::invalid_argument("descriptor: 'kind' and 'd' are required");
  if (d.power == 0) throw std::invalid_argument("descriptor: k must be >= 1");
  if (d.kind != FamilyKind::Explicit && !pending_functions.empty()) {
    throw std::invalid_argument("descriptor: fn lines are only valid for explicit families");
  }
  for (const auto& [w, f] : pending_functions) d.functions.push_back({parse_function(d.dim, f), parse_probability(w)});
  return d;
}

}  // namespace lshlab
