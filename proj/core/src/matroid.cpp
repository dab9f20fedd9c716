#include "rainbow/matroid.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

struct Matroid::Impl {
  Backend backend;
  int ground = 0;
  int rank = -1;  // filled at construction
  // uniform
  int uniform_rank = 0;
  // graphic
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  // linear
  std::uint32_t prime = 0;
  std::vector<std::vector<std::uint32_t>> columns;  // columns[i].size() == dim
  int dim = 0;
};

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1;
  base %= p;
  while (exp) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

}  // namespace

Matroid Matroid::uniform(int ground_size, int rank) {
  if (ground_size < 0 || rank < 0)
    throw input_error("uniform matroid: ground size and rank must be non-negative");
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::uniform;
  impl->ground = ground_size;
  impl->uniform_rank = rank;
  impl->rank = Matroid(impl).rank_of_all();
  return Matroid(impl);
}

Matroid Matroid::graphic(int vertex_count, std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 0) throw input_error("graphic matroid: negative vertex count");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw input_error("graphic matroid: edge " + std::to_string(i) + " out of range");
  }
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::graphic;
  impl->ground = static_cast<int>(edges.size());
  impl->vertices = vertex_count;
  impl->edges = std::move(edges);
  impl->rank = Matroid(impl).rank_of_all();
  return Matroid(impl);
}

Matroid Matroid::linear(std::uint32_t prime, std::vector<std::vector<std::uint32_t>> columns) {
  if (!is_prime(prime)) throw input_error("linear matroid: modulus must be prime");
  std::size_t dim = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != dim)
      throw input_error("linear matroid: column " + std::to_string(i) + " has inconsistent dimension");
    for (auto& e : columns[i]) e %= prime;
  }
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::linear;
  impl->ground = static_cast<int>(columns.size());
  impl->prime = prime;
  impl->columns = std::move(columns);
  impl->dim = static_cast<int>(dim);
  impl->rank = Matroid(impl).rank_of_all();
  return Matroid(impl);
}

Matroid::Backend Matroid::backend() const { return impl_->backend; }
int Matroid::ground_size() const { return impl_->ground; }
int Matroid::rank() const { return impl_->rank; }
int Matroid::uniform_rank() const { return impl_->uniform_rank; }
int Matroid::graphic_vertices() const { return impl_->vertices; }
const std::vector<std::pair<int, int>>& Matroid::graphic_edges() const { return impl_->edges; }
std::uint32_t Matroid::linear_prime() const { return impl_->prime; }
const std::vector<std::vector<std::uint32_t>>& Matroid::linear_columns() const {
  return impl_->columns;
}

void Matroid::check_ids(std::span<const ElementId> set) const {
  for (ElementId x : set)
    if (x < 0 || x >= impl_->ground)
      throw input_error("element id " + std::to_string(x) + " outside ground set of size " +
                        std::to_string(impl_->ground));
}

bool Matroid::is_independent(std::span<const ElementId> set) const {
  check_ids(set);
  IndependenceProbe p = probe();
  for (ElementId x : set)
    if (!p.try_add(x)) return false;
  return true;
}

int Matroid::rank_of(std::span<const ElementId> set) const {
  check_ids(set);
  std::vector<ElementId> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  IndependenceProbe p = probe();
  for (ElementId x : sorted) p.try_add(x);
  return p.size();
}

std::optional<ElementId> Matroid::augment(std::span<const ElementId> a,
                                          std::span<const ElementId> b) const {
  if (!is_independent(a) || !is_independent(b))
    throw contract_error("augment: both sets must be independent");
  if (a.size() <= b.size()) throw contract_error("augment: |a| must exceed |b|");
  IndependenceProbe p = probe(b);
  std::vector<ElementId> cand(a.begin(), a.end());
  std::sort(cand.begin(), cand.end());
  for (ElementId x : cand) {
    if (std::find(b.begin(), b.end(), x) != b.end()) continue;
    if (p.can_add(x)) return x;
  }
  return std::nullopt;
}

std::vector<ElementId> Matroid::extend_to_size(std::span<const ElementId> base,
                                               std::span<const ElementId> pool, int k) const {
  IndependenceProbe p = probe(base);
  std::vector<ElementId> out(base.begin(), base.end());
  std::sort(out.begin(), out.end());
  std::vector<ElementId> cand(pool.begin(), pool.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (ElementId x : cand) {
    if (static_cast<int>(out.size()) >= k) break;
    if (p.try_add(x)) {
      out.insert(std::upper_bound(out.begin(), out.end(), x), x);
    }
  }
  if (static_cast<int>(out.size()) < k)
    throw contract_error("extend_to_size: no independent extension of size " + std::to_string(k) +
                         " exists in the pool");
  return out;
}

IndependenceProbe Matroid::probe(std::span<const ElementId> base) const {
  check_ids(base);
  IndependenceProbe p = probe();
  for (ElementId x : base)
    if (!p.try_add(x)) throw contract_error("probe: base set is not independent");
  return p;
}

int Matroid::rank_of_all() const {
  IndependenceProbe p = probe();
  for (ElementId x = 0; x < impl_->ground; ++x) p.try_add(x);
  return p.size();
}

IndependenceProbe::IndependenceProbe(const Matroid& m)
    : impl_(m.impl_), in_set_(m.impl_->ground, false) {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  if (d->backend == Matroid::Backend::graphic) {
    dsu_.resize(d->vertices);
    for (int v = 0; v < d->vertices; ++v) dsu_[v] = v;
  }
}

namespace {
// non-compressing find for const contexts
int dsu_root(const std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v];
  return v;
}
}  // namespace

// Reduces column x against the echelon; returns the residual. When coefs is
// non-null it receives the elimination coefficients per echelon row.
std::vector<std::uint32_t> IndependenceProbe::reduce(ElementId x,
                                                     std::vector<std::uint32_t>* coefs) const {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  const std::uint64_t p = d->prime;
  std::vector<std::uint32_t> col = d->columns[x];
  if (coefs) coefs->assign(echelon_.size(), 0);
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    std::uint64_t coef = col[pivots_[i]];
    if (coef == 0) continue;
    if (coefs) (*coefs)[i] = static_cast<std::uint32_t>(coef);
    const auto& row = echelon_[i];
    for (int r = 0; r < d->dim; ++r)
      col[r] = static_cast<std::uint32_t>((col[r] + (p - coef) * row[r]) % p);
  }
  return col;
}

bool IndependenceProbe::can_add(ElementId x) const {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  if (x < 0 || x >= d->ground) throw input_error("probe: element id out of range");
  if (in_set_[x]) return false;
  switch (d->backend) {
    case Matroid::Backend::uniform:
      return count_ < d->uniform_rank;
    case Matroid::Backend::graphic:
      return dsu_root(dsu_, d->edges[x].first) != dsu_root(dsu_, d->edges[x].second);
    case Matroid::Backend::linear: {
      std::vector<std::uint32_t> col = reduce(x, nullptr);
      for (std::uint32_t v : col)
        if (v != 0) return true;
      return false;
    }
  }
  return false;
}

void IndependenceProbe::add(ElementId x) {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  if (!can_add(x)) throw contract_error("probe: add() requires can_add()");
  in_set_[x] = true;
  members_.push_back(x);
  ++count_;
  switch (d->backend) {
    case Matroid::Backend::uniform:
      break;
    case Matroid::Backend::graphic: {
      int a = dsu_root(dsu_, d->edges[x].first);
      int b = dsu_root(dsu_, d->edges[x].second);
      dsu_[a] = b;
      break;
    }
    case Matroid::Backend::linear: {
      const std::uint64_t p = d->prime;
      std::vector<std::uint32_t> coefs;
      std::vector<std::uint32_t> col = reduce(x, &coefs);
      // combo over members_: col == sum combo[j] * columns[members_[j]]
      std::vector<std::uint32_t> combo(members_.size(), 0);
      combo.back() = 1;
      for (std::size_t i = 0; i < coefs.size(); ++i) {
        if (coefs[i] == 0) continue;
        const auto& old = combos_[i];
        for (std::size_t j = 0; j < old.size(); ++j)
          combo[j] = static_cast<std::uint32_t>((combo[j] + (p - coefs[i]) * static_cast<std::uint64_t>(old[j])) % p);
      }
      int pivot = -1;
      for (int r = 0; r < d->dim; ++r)
        if (col[r] != 0) {
          pivot = r;
          break;
        }
      std::uint64_t inv = mod_inv(col[pivot], d->prime);
      for (int r = 0; r < d->dim; ++r)
        col[r] = static_cast<std::uint32_t>(col[r] * inv % p);
      for (auto& v : combo) v = static_cast<std::uint32_t>(v * inv % p);
      echelon_.push_back(std::move(col));
      pivots_.push_back(pivot);
      combos_.push_back(std::move(combo));
      break;
    }
  }
}

std::vector<std::int64_t> IndependenceProbe::addable_classes(
    std::span<const ElementId> candidates) const {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  std::vector<std::int64_t> out(candidates.size(), -1);
  switch (d->backend) {
    case Matroid::Backend::uniform: {
      bool last_slot = count_ + 1 == d->uniform_rank;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!can_add(candidates[i])) continue;
        out[i] = last_slot ? 0 : 1 + candidates[i];
      }
      break;
    }
    case Matroid::Backend::graphic: {
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        ElementId x = candidates[i];
        if (in_set_[x]) continue;
        int a = dsu_root(dsu_, d->edges[x].first);
        int b = dsu_root(dsu_, d->edges[x].second);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        out[i] = static_cast<std::int64_t>(a) * d->vertices + b;
      }
      break;
    }
    case Matroid::Backend::linear: {
      const std::uint64_t p = d->prime;
      std::map<std::vector<std::uint32_t>, std::int64_t> ids;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (in_set_[candidates[i]]) continue;
        std::vector<std::uint32_t> col = reduce(candidates[i], nullptr);
        int lead = -1;
        for (int r = 0; r < d->dim; ++r)
          if (col[r] != 0) {
            lead = r;
            break;
          }
        if (lead < 0) continue;  // dependent
        std::uint64_t inv = mod_inv(col[lead], d->prime);
        for (int r = 0; r < d->dim; ++r)
          col[r] = static_cast<std::uint32_t>(col[r] * inv % p);
        auto [it, fresh] = ids.emplace(std::move(col), static_cast<std::int64_t>(ids.size()));
        out[i] = it->second;
      }
      break;
    }
  }
  return out;
}

std::vector<ElementId> IndependenceProbe::fundamental_circuit(ElementId y) const {
  const auto* d = static_cast<const Matroid::Impl*>(impl_.get());
  if (in_set_[y]) return {y};
  if (can_add(y)) throw contract_error("fundamental_circuit: element is independent of the set");
  std::vector<ElementId> out;
  switch (d->backend) {
    case Matroid::Backend::uniform:
      out = members_;
      break;
    case Matroid::Backend::graphic: {
      // path between the endpoints of y in the current forest
      int from = d->edges[y].first, to = d->edges[y].second;
      if (from == to) break;  // self-loop: empty circuit support
      std::vector<std::vector<std::pair<int, ElementId>>> adj(d->vertices);
      for (ElementId e : members_) {
        auto [u, v] = d->edges[e];
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
      }
      std::vector<ElementId> via(d->vertices, -1);
      std::vector<int> prev(d->vertices, -1), queue{from};
      std::vector<bool> seen(d->vertices, false);
      seen[from] = true;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        if (u == to) break;
        for (auto [v, e] : adj[u])
          if (!seen[v]) {
            seen[v] = true;
            prev[v] = u;
            via[v] = e;
            queue.push_back(v);
          }
      }
      for (int v = to; v != from; v = prev[v]) out.push_back(via[v]);
      break;
    }
    case Matroid::Backend::linear: {
      const std::uint64_t p = d->prime;
      std::vector<std::uint32_t> coefs;
      reduce(y, &coefs);
      std::vector<std::uint64_t> support(members_.size(), 0);
      for (std::size_t i = 0; i < coefs.size(); ++i) {
        if (coefs[i] == 0) continue;
        for (std::size_t j = 0; j < combos_[i].size(); ++j)
          support[j] = (support[j] + static_cast<std::uint64_t>(coefs[i]) * combos_[i][j]) % p;
      }
      for (std::size_t j = 0; j < members_.size(); ++j)
        if (support[j] != 0) out.push_back(members_[j]);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rainbow
