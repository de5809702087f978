#include "lshlab/ann_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lshlab/byte_io.hpp"
#include "lshlab/descriptor.hpp"

namespace lshlab {

namespace {

constexpr char kMagic[8] = {'L', 'S', 'H', 'L', 'A', 'B', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t digest(std::span<const Label> key) {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (Label l : key) h = mix64(h ^ mix64(l + 0x632BE59BD9B4E019ULL));
  return h;
}

std::uint64_t checksum(std::string_view bytes) {
  std::uint64_t h = mix64(bytes.size());
  std::size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) {
    std::uint64_t w;
    std::memcpy(&w, bytes.data() + i, 8);
    h = mix64(h ^ w);
  }
  std::uint64_t tail = 0;
  for (std::size_t j = 0; i + j < bytes.size(); ++j) tail |= std::uint64_t{static_cast<unsigned char>(bytes[i + j])} << (8 * j);
  return mix64(h ^ tail);
}

template <class T>
void put_vector(std::ostream& out, const std::vector<T>& v) {
  detail::put_le<std::uint64_t>(out, v.size());
  for (const auto& x : v) detail::put_le<T>(out, x);
}

template <class T>
std::vector<T> get_vector(std::istream& in, std::uint64_t limit) {
  const auto n = detail::get_le<std::uint64_t>(in);
  if (n > limit) throw std::runtime_error("index vector length out of range");
  std::vector<T> v(n);
  for (auto& x : v) x = detail::get_le<T>(in);
  return v;
}

}  // namespace

IndexParams plan(std::size_t n, const SensitivityProfile& profile, double delta) {
  if (n < 2) throw std::invalid_argument("plan requires n >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("plan requires 0 < delta < 1");
  const double p = profile.p;
  const double q = profile.q;
  if (!(q > 0.0 && q < p && p < 1.0)) throw std::invalid_argument("plan requires 0 < q < p < 1");
  const double ln_n = std::log(static_cast<double>(n));
  if (q < 1.0 / static_cast<double>(n)) {
    throw std::domain_error("q below 1/n: powering degenerates; use the direct parameters k = 1");
  }
  IndexParams params;
  params.r = profile.r;
  params.cr = profile.cr;
  params.delta = delta;
  params.p = p;
  params.q = q;
  params.rho = std::log(p) / std::log(q);
  const double ratio = ln_n / -std::log(q);
  const double nearest = std::round(ratio);
  params.k = static_cast<std::size_t>(std::max(1.0, std::fabs(ratio - nearest) <= 1e-12 * ratio ? nearest : std::ceil(ratio)));
  params.predicted_pk = std::pow(p, static_cast<double>(params.k));
  params.L = static_cast<std::size_t>(std::ceil(-std::log(delta) / params.predicted_pk));
  params.L = std::max<std::size_t>(params.L, 1);
  return params;
}

void NNIndex::make_functions() {
  const auto powered = power(family_, params_.k);
  functions_.clear();
  functions_.reserve(params_.L);
  for (std::size_t j = 0; j < params_.L; ++j) functions_.push_back(powered.sample(params_.seed, j));
}

void NNIndex::key_of(std::size_t table, const Point& x, std::vector<Label>& key) const {
  functions_[table].components(x, key);
}

std::optional<std::size_t> NNIndex::find_bucket(const Table& table, std::span<const Label> key) const {
  const std::uint64_t h = digest(key);
  const std::size_t mask = table.slots.size() - 1;
  const std::size_t width = key.size();
  for (std::size_t s = h & mask;; s = (s + 1) & mask) {
    const std::uint32_t slot = table.slots[s];
    if (slot == 0) return std::nullopt;
    const std::size_t b = slot - 1;
    if (table.digests[b] == h && std::equal(key.begin(), key.end(), table.keys.begin() + b * width)) return b;
  }
}

NNIndex NNIndex::build(std::vector<Point> points, const HashFamily& family, const IndexParams& params) {
  if (points.empty()) throw std::invalid_argument("index build requires at least one point");
  if (points.size() >= std::numeric_limits<std::uint32_t>::max()) throw std::length_error("too many points");
  if (params.k == 0 || params.L == 0) throw std::invalid_argument("index requires k >= 1 and L >= 1");
  for (const auto& x : points) {
    if (x.dim() != family.dim()) throw std::invalid_argument("point dimension does not match the family");
  }
  NNIndex index(family);
  index.params_ = params;
  index.dim_ = family.dim();
  index.points_ = std::move(points);
  index.make_functions();

  const std::size_t n = index.points_.size();
  std::vector<Label> key;
  index.tables_.resize(params.L);
  for (std::size_t j = 0; j < params.L; ++j) {
    Table& t = index.tables_[j];
    t.slots.assign(std::bit_ceil(2 * n), 0);
    const std::size_t mask = t.slots.size() - 1;
    std::vector<std::uint32_t> bucket_of(n);
    std::vector<std::uint32_t> sizes;
    std::size_t width = 0;
    for (std::size_t i = 0; i < n; ++i) {
      index.key_of(j, index.points_[i], key);
      width = key.size();
      auto found = index.find_bucket(t, key);
      if (!found) {
        const std::uint64_t h = digest(key);
        std::size_t s = h & mask;
        while (t.slots[s] != 0) s = (s + 1) & mask;
        t.slots[s] = static_cast<std::uint32_t>(t.digests.size() + 1);
        found = t.digests.size();
        t.digests.push_back(h);
        t.keys.insert(t.keys.end(), key.begin(), key.end());
        sizes.push_back(0);
      }
      bucket_of[i] = static_cast<std::uint32_t>(*found);
      ++sizes[*found];
    }
    (void)width;
    t.offsets.assign(sizes.size() + 1, 0);
    for (std::size_t b = 0; b < sizes.size(); ++b) t.offsets[b + 1] = t.offsets[b] + sizes[b];
    t.ids.resize(n);
    std::vector<std::uint32_t> fill(t.offsets.begin(), t.offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) t.ids[fill[bucket_of[i]]++] = static_cast<std::uint32_t>(i);
  }
  return index;
}

std::span<const std::uint32_t> NNIndex::bucket(std::size_t table, const Point& x) const {
  if (table >= tables_.size()) throw std::out_of_range("table index out of range");
  std::vector<Label> key;
  key_of(table, x, key);
  const Table& t = tables_[table];
  const auto b = find_bucket(t, key);
  if (!b) return {};
  return std::span<const std::uint32_t>(t.ids).subspan(t.offsets[*b], t.offsets[*b + 1] - t.offsets[*b]);
}

QueryResult NNIndex::query(const Point& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("query dimension does not match the index");
  QueryResult res;
  const std::size_t cap = candidate_cap(params_);
  std::vector<Label> key;
  for (std::size_t j = 0; j < tables_.size() && res.candidates < cap; ++j) {
    ++res.tables_probed;
    key_of(j, x, key);
    const Table& t = tables_[j];
    const auto b = find_bucket(t, key);
    if (!b) continue;
    for (std::uint32_t e = t.offsets[*b]; e < t.offsets[*b + 1] && res.candidates < cap; ++e) {
      ++res.candidates;
      const std::size_t id = t.ids[e];
      const std::size_t dist = hamming(points_[id], x);
      if (static_cast<double>(dist) <= params_.cr) {
        res.id = id;
        res.distance = dist;
        return res;
      }
    }
  }
  return res;
}

IndexStats NNIndex::stats() const {
  IndexStats s;
  s.n = points_.size();
  s.tables = tables_.size();
  std::size_t bytes = 0;
  for (const auto& p : points_) bytes += p.words().size() * sizeof(std::uint64_t);
  for (const auto& t : tables_) {
    const std::size_t buckets = t.digests.size();
    s.buckets += buckets;
    s.entries += t.ids.size();
    for (std::size_t b = 0; b < buckets; ++b) s.max_bucket = std::max<std::size_t>(s.max_bucket, t.offsets[b + 1] - t.offsets[b]);
    bytes += t.keys.size() * sizeof(Label) + t.digests.size() * sizeof(std::uint64_t) +
             (t.offsets.size() + t.ids.size() + t.slots.size()) * sizeof(std::uint32_t);
  }
  s.memory_bytes = bytes;
  s.mean_bucket = s.buckets ? static_cast<double>(s.entries) / static_cast<double>(s.buckets) : 0.0;
  if (s.n >= 2) s.space_exponent = std::log(static_cast<double>(s.entries)) / std::log(static_cast<double>(s.n));
  s.predicted_exponent = 1.0 + params_.rho;
  return s;
}

void NNIndex::save(std::ostream& out) const {
  std::ostringstream body(std::ios::binary);
  detail::put_f64(body, params_.r);
  detail::put_f64(body, params_.cr);
  detail::put_le<std::uint64_t>(body, params_.k);
  detail::put_le<std::uint64_t>(body, params_.L);
  detail::put_f64(body, params_.delta);
  detail::put_le<std::uint64_t>(body, params_.seed);
  detail::put_f64(body, params_.p);
  detail::put_f64(body, params_.q);
  detail::put_f64(body, params_.predicted_pk);
  detail::put_f64(body, params_.rho);
  detail::put_string(body, format_descriptor(family_.descriptor()));
  detail::put_le<std::uint64_t>(body, dim_);
  detail::put_le<std::uint64_t>(body, points_.size());
  for (const auto& p : points_) {
    for (auto w : p.words()) detail::put_le<std::uint64_t>(body, w);
  }
  for (const auto& t : tables_) {
    put_vector(body, t.keys);
    put_vector(body, t.digests);
    put_vector(body, t.offsets);
    put_vector(body, t.ids);
    put_vector(body, t.slots);
  }
  const std::string bytes = body.str();
  out.write(kMagic, sizeof kMagic);
  detail::put_le<std::uint32_t>(out, kVersion);
  detail::put_le<std::uint64_t>(out, bytes.size());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  detail::put_le<std::uint64_t>(out, checksum(bytes));
}

NNIndex NNIndex::load(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error("not an index file");
  }
  if (detail::get_le<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported index version");
  const auto size = detail::get_le<std::uint64_t>(in);
  if (size > (std::uint64_t{1} << 40)) throw std::runtime_error("index size out of range");
  std::string bytes(size, '\0');
  if (!in.read(bytes.data(), static_cast<std::streamsize>(size))) throw std::runtime_error("unexpected end of file");
  if (detail::get_le<std::uint64_t>(in) != checksum(bytes)) throw std::runtime_error("index checksum mismatch");

  std::istringstream body(bytes, std::ios::binary);
  IndexParams params;
  params.r = detail::get_f64(body);
  params.cr = detail::get_f64(body);
  params.k = detail::get_le<std::uint64_t>(body);
  params.L = detail::get_le<std::uint64_t>(body);
  params.delta = detail::get_f64(body);
  params.seed = detail::get_le<std::uint64_t>(body);
  params.p = detail::get_f64(body);
  params.q = detail::get_f64(body);
  params.predicted_pk = detail::get_f64(body);
  params.rho = detail::get_f64(body);
  const auto family = HashFamily::from_descriptor(parse_descriptor(detail::get_string(body)));
  if (params.k == 0 || params.L == 0 || params.L > (std::uint64_t{1} << 24)) {
    throw std::runtime_error("index parameters out of range");
  }

  NNIndex index(family);
  index.params_ = params;
  index.dim_ = detail::get_le<std::uint64_t>(body);
  if (index.dim_ != family.dim()) throw std::runtime_error("index dimension does not match its family");
  const auto n = detail::get_le<std::uint64_t>(body);
  if (n == 0 || n >= std::numeric_limits<std::uint32_t>::max()) throw std::runtime_error("index point count out of range");
  index.points_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Point p(index.dim_);
    for (auto& w : p.words()) w = detail::get_le<std::uint64_t>(body);
    index.points_.push_back(std::move(p));
  }
  const std::uint64_t limit = std::uint64_t{1} << 34;
  index.tables_.resize(params.L);
  for (auto& t : index.tables_) {
    t.keys = get_vector<Label>(body, limit);
    t.digests = get_vector<std::uint64_t>(body, limit);
    t.offsets = get_vector<std::uint32_t>(body, limit);
    t.ids = get_vector<std::uint32_t>(body, limit);
    t.slots = get_vector<std::uint32_t>(body, limit);
    const std::size_t buckets = t.digests.size();
    const bool ok = t.offsets.size() == buckets + 1 && t.offsets.front() == 0 && t.offsets.back() == n &&
                    std::ranges::is_sorted(t.offsets) && t.ids.size() == n && std::has_single_bit(t.slots.size()) &&
                    t.slots.size() > buckets && std::ranges::all_of(t.ids, [&](auto id) { return id < n; }) &&
                    std::ranges::all_of(t.slots, [&](auto s) { return s <= buckets; }) &&
                    (buckets == 0 || t.keys.size() % buckets == 0);
    if (!ok) throw std::runtime_error("index table is malformed");
  }
  index.make_functions();
  return index;
}

void NNIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  save(out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

NNIndex NNIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

bool operator==(const NNIndex& a, const NNIndex& b) {
  return a.params_ == b.params_ && a.family_.descriptor() == b.family_.descriptor() && a.points_ == b.points_ &&
         a.tables_ == b.tables_;
}

std::vector<Point> random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    Point p(d);
    for (std::size_t c = 0; c < d; ++c) p.set(c, rng.coin());
    points.push_back(std::move(p));
  }
  return points;
}

ExperimentReport planted_experiment(const ExperimentConfig& config) {
  if (config.queries == 0) throw std::invalid_argument("experiment requires at least one query");
  if (config.r == 0) throw std::invalid_argument("experiment requires r >= 1");
  const auto profile = bit_sampling_profile(config.d, static_cast<double>(config.r), config.c);
  auto params = plan(config.n, profile, config.delta);
  params.seed = mix64(config.seed ^ 0x1D7);
  const auto family = bit_sampling_family(config.d);
  const auto index = NNIndex::build(random_points(config.n, config.d, config.seed), family, params);

  ExperimentReport rep;
  rep.params = params;
  rep.stats = index.stats();
  rep.queries = config.queries;
  rep.hash_evaluations = params.L * params.k;
  std::size_t total_candidates = 0;
  const std::uint64_t query_seed = mix64(config.seed ^ 0x9E7);
  for (std::size_t i = 0; i < config.queries; ++i) {
    CounterRng rng(query_seed, i);
    Point x = index.points()[rng.below(config.n)];
    const std::size_t plant = config.at_radius ? config.r : 1 + rng.below(config.r);
    std::vector<std::size_t> coords(config.d);
    for (std::size_t c = 0; c < config.d; ++c) coords[c] = c;
    for (std::size_t c = 0; c < plant; ++c) {
      std::swap(coords[c], coords[c + rng.below(config.d - c)]);
      x.flip(coords[c]);
    }
    const auto res = index.query(x);
    total_candidates += res.candidates;
    rep.max_candidates = std::max(rep.max_candidates, res.candidates);
    if (res.id) {
      ++rep.successes;
      if (static_cast<double>(hamming(index.points()[*res.id], x)) > params.cr) rep.all_within_cr = false;
    }
  }
  rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(config.queries);
  rep.mean_candidates = static_cast<double>(total_candidates) / static_cast<double>(config.queries);
  return rep;
}

}  // namespace lshlab
