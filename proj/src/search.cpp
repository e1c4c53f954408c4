#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

#include "rng.hpp"

namespace genmetric {

namespace {

std::vector<ClassInstance> all_instances() {
  std::vector<ClassInstance> out;
  for (ClassTag tag : kAllClassTags) {
    if (is_rectangular(tag)) {
      out.emplace_back(tag, PairSemantics::DistinctPairs);
      out.emplace_back(tag, PairSemantics::AllPairs);
    } else {
      out.emplace_back(tag);
    }
  }
  return out;
}

size_t instance_index(const ClassInstance& c) {
  const auto instances = all_instances();
  for (size_t i = 0; i < instances.size(); ++i) {
    if (instances[i] == c) return i;
  }
  return 0;  // unreachable for well-formed instances
}

// Direct edges of the implication lattice; closure is computed below.
const std::vector<std::pair<ClassInstance, ClassInstance>>& lattice_edges() {
  using CI = ClassInstance;
  constexpr auto D = PairSemantics::DistinctPairs;
  constexpr auto A = PairSemantics::AllPairs;
  static const std::vector<std::pair<CI, CI>> edges = [] {
    std::vector<std::pair<CI, CI>> e;
    e.emplace_back(CI(ClassTag::Metric), CI(ClassTag::PM));
    e.emplace_back(CI(ClassTag::PM), CI(ClassTag::MML));
    e.emplace_back(CI(ClassTag::MML), CI(ClassTag::ML));
    for (PairSemantics s : {D, A}) {
      // Triangle inequalities compose into quadrilateral ones.
      e.emplace_back(CI(ClassTag::Metric), CI(ClassTag::RM, s));
      e.emplace_back(CI(ClassTag::PM), CI(ClassTag::RPM, s));
      e.emplace_back(CI(ClassTag::ML), CI(ClassTag::RML, s));
      e.emplace_back(CI(ClassTag::MML), CI(ClassTag::RMML, s));
      // Dropping self-distance information weakens the axioms.
      e.emplace_back(CI(ClassTag::RM, s), CI(ClassTag::RPM, s));
      e.emplace_back(CI(ClassTag::RM, s), CI(ClassTag::RML, s));
      e.emplace_back(CI(ClassTag::RPM, s), CI(ClassTag::RMML, s));
      e.emplace_back(CI(ClassTag::RMML, s), CI(ClassTag::RML, s));
    }
    // The all-pairs quantifier covers strictly more tuples.
    for (ClassTag tag : {ClassTag::RM, ClassTag::RPM, ClassTag::RML, ClassTag::RMML}) {
      e.emplace_back(CI(tag, A), CI(tag, D));
    }
    return e;
  }();
  return edges;
}

const std::vector<std::vector<bool>>& implication_closure() {
  static const std::vector<std::vector<bool>> closure = [] {
    const auto instances = all_instances();
    const size_t n = instances.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& [from, to] : lattice_edges()) {
      reach[instance_index(from)][instance_index(to)] = true;
    }
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        if (!reach[i][k]) continue;
        for (size_t j = 0; j < n; ++j) {
          if (reach[k][j]) reach[i][j] = true;
        }
      }
    }
    return reach;
  }();
  return closure;
}

}  // namespace

bool implies(const ClassInstance& from, const ClassInstance& to) {
  return implication_closure()[instance_index(from)][instance_index(to)];
}

SpaceEnumerator::SpaceEnumerator(int n, std::vector<Rat> values)
    : n_(n), values_(std::move(values)), cells_(n * (n + 1) / 2) {
  if (n < 1) throw InputError("enumerator needs at least one point");
  if (values_.empty()) throw InputError("enumerator needs a nonempty value list");
  for (const Rat& v : values_) {
    if (v < 0) throw InputError("enumerator values must be nonnegative");
  }
  total_ = 1;
  for (int i = 0; i < cells_; ++i) total_ *= static_cast<unsigned long>(values_.size());
}

bool SpaceEnumerator::total_fits_u64() const {
  return total_.fits_ulong_p() ||
         mpz_sizeinbase(total_.get_mpz_t(), 2) <= 64;
}

uint64_t SpaceEnumerator::total_u64() const {
  // mpz export; valid when total_fits_u64().
  uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, total_.get_mpz_t());
  return out;
}

std::vector<std::string> SpaceEnumerator::labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    if (i < 26) {
      out.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      out.push_back("p" + std::to_string(i));
    }
  }
  return out;
}

FiniteSpace SpaceEnumerator::at(uint64_t index) const {
  const size_t base = values_.size();
  std::vector<size_t> digits(static_cast<size_t>(cells_), 0);
  for (int cell = cells_ - 1; cell >= 0; --cell) {
    digits[static_cast<size_t>(cell)] = index % base;
    index /= base;
  }
  return from_digits(digits);
}

FiniteSpace SpaceEnumerator::from_digits(const std::vector<size_t>& digits) const {
  const size_t n = static_cast<size_t>(n_);
  std::vector<Rat> table(n * n);
  size_t cell = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const Rat& v = values_[digits[cell]];
      table[i * n + j] = v;
      table[j * n + i] = v;
      ++cell;
    }
  }
  return FiniteSpace(labels(n_), std::move(table));
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GENMETRIC_THREADS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

namespace {

std::vector<ClassInstance> instantiate(const std::vector<ClassTag>& tags,
                                       std::optional<PairSemantics> sem) {
  std::vector<ClassInstance> out;
  for (ClassTag tag : tags) {
    out.emplace_back(tag, sem && is_rectangular(tag) ? *sem : default_semantics(tag));
  }
  return out;
}

bool matches(const FiniteSpace& space, const std::vector<ClassInstance>& require,
             const std::vector<ClassInstance>& forbid) {
  for (const auto& c : require) {
    if (!check_axioms(space, c.tag, c.sem).holds) return false;
  }
  for (const auto& c : forbid) {
    if (check_axioms(space, c.tag, c.sem).holds) return false;
  }
  return true;
}

// Ascending scan over [0, total) in contiguous chunks claimed by worker
// threads. The smallest matching index wins regardless of which worker finds
// its hit first: a worker abandons chunks that start above the current best.
std::optional<uint64_t> scan_exhaustive(const SpaceEnumerator& en, uint64_t total,
                                        const std::vector<ClassInstance>& require,
                                        const std::vector<ClassInstance>& forbid,
                                        int threads) {
  constexpr uint64_t kNoHit = std::numeric_limits<uint64_t>::max();
  if (threads <= 1 || total < 2048) {
    for (uint64_t i = 0; i < total; ++i) {
      if (matches(en.at(i), require, forbid)) return i;
    }
    return std::nullopt;
  }

  const uint64_t chunk = std::max<uint64_t>(512, total / (static_cast<uint64_t>(threads) * 16));
  std::atomic<uint64_t> next_chunk{0};
  std::atomic<uint64_t> best{kNoHit};
  auto worker = [&] {
    while (true) {
      uint64_t start = next_chunk.fetch_add(chunk);
      if (start >= total || start >= best.load()) return;
      uint64_t end = std::min(total, start + chunk);
      for (uint64_t i = start; i < end; ++i) {
        if (i >= best.load()) break;
        if (matches(en.at(i), require, forbid)) {
          uint64_t seen = best.load();
          while (i < seen && !best.compare_exchange_weak(seen, i)) {
          }
          break;  // later indices in this chunk are larger
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  uint64_t found = best.load();
  if (found == kNoHit) return std::nullopt;
  return found;
}

}  // namespace

std::optional<SeparationWitness> find_separation(const SearchQuery& query,
                                                 const SearchOptions& options) {
  if (query.max_points < 1) throw InputError("max_points must be at least 1");
  if (query.values.empty()) throw InputError("search needs a nonempty value list");
  for (ClassTag r : query.require) {
    if (std::find(query.forbid.begin(), query.forbid.end(), r) != query.forbid.end()) {
      throw InputError("contradictory query: class " + std::string(class_name(r)) +
                       " is both required and forbidden");
    }
  }
  auto require = instantiate(query.require, query.semantics);
  auto forbid = instantiate(query.forbid, query.semantics);

  if (options.use_lattice_fastpath) {
    for (const auto& r : require) {
      for (const auto& f : forbid) {
        if (implies(r, f)) return std::nullopt;  // no space can separate them
      }
    }
  }

  const int threads = resolve_thread_count(options.threads);

  auto build_witness = [&](const FiniteSpace& space, bool canonical) {
    return SeparationWitness{space, classify(space, query.semantics), canonical};
  };

  if (query.mode.exhaustive) {
    for (int n = 1; n <= query.max_points; ++n) {
      SpaceEnumerator en(n, query.values);
      if (!en.total_fits_u64()) {
        // Index arithmetic would overflow; walk the odometer sequentially.
        // Early hits still come out in ascending order.
        std::vector<size_t> digits(static_cast<size_t>(en.cells()), 0);
        const size_t base = query.values.size();
        while (true) {
          FiniteSpace space = en.from_digits(digits);
          if (matches(space, require, forbid)) return build_witness(space, true);
          int pos = en.cells() - 1;
          while (pos >= 0 && digits[static_cast<size_t>(pos)] == base - 1) {
            digits[static_cast<size_t>(pos)] = 0;
            --pos;
          }
          if (pos < 0) break;
          ++digits[static_cast<size_t>(pos)];
        }
        continue;
      }
      uint64_t total = en.total_u64();
      auto hit = scan_exhaustive(en, total, require, forbid, threads);
      if (hit) return build_witness(en.at(*hit), true);
    }
    return std::nullopt;
  }

  // Randomized mode: a SplitMix64 stream of (point count, index) draws,
  // reproducible from the seed. Sampling is with replacement.
  SplitMix64 rng(query.mode.seed);
  std::vector<SpaceEnumerator> enums;
  for (int n = 1; n <= query.max_points; ++n) enums.emplace_back(n, query.values);
  for (uint64_t draw = 0; draw < query.mode.budget; ++draw) {
    size_t which = static_cast<size_t>(rng.bounded(static_cast<uint64_t>(enums.size())));
    const SpaceEnumerator& en = enums[which];
    if (!en.total_fits_u64()) continue;
    uint64_t index = rng.bounded(en.total_u64());
    FiniteSpace space = en.at(index);
    if (matches(space, require, forbid)) return build_witness(space, false);
  }
  return std::nullopt;
}

}  // namespace genmetric
