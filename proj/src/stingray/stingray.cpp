#include "nondeg/stingray.hpp"

#include <cmath>
#include <thread>

#include "nondeg/kernels.hpp"

namespace nondeg {

namespace {

constexpr unsigned kStreams = 8;

// All |F|^d vectors, column-major (coordinate j of vector n at
// data[j * count + n]), with the per-vector value the frame condition needs
// on the diagonal: Q(v) for O, beta(v, v) for U.
class VectorCache {
 public:
  VectorCache(const ClassicalSpace& V, const Budget& budget) : V_(V), f_(V.field()), d_(V.dim()) {
    if (f_.order() > 256) throw StingrayError("frame completion needs |F| <= 256");
    BigCount total = 1;
    for (std::size_t j = 0; j < d_; ++j) total *= f_.order();
    if (total > budget.vectors) throw BudgetError("vector table", to_string(total), budget.vectors);
    count_ = static_cast<std::uint64_t>(total);
    if (f_.is_prime_field() && f_.order() <= kernels::kMaxPrime && d_ <= kernels::kMaxDim) {
      table_.emplace(f_.order(), d_);
    } else {
      own_.resize(count_ * d_);
      for (std::uint64_t n = 0; n < count_; ++n) {
        std::uint64_t r = n;
        for (std::size_t j = 0; j < d_; ++j) {
          own_[j * count_ + n] = static_cast<std::uint8_t>(r % f_.order());
          r /= f_.order();
        }
      }
    }
    if (V.kind() == Kind::Orthogonal) {
      if (table_) {
        std::vector<std::uint8_t> upper(d_ * d_);
        for (std::size_t i = 0; i < d_; ++i)
          for (std::size_t j = 0; j < d_; ++j) upper[i * d_ + j] = static_cast<std::uint8_t>(V.quad()(i, j));
        self_ = table_->quadratic_all(upper);
      } else {
        self_.resize(count_);
        for (std::uint64_t n = 0; n < count_; ++n) self_[n] = static_cast<std::uint8_t>(evaluate_quadratic(V, vec(n)));
      }
    } else if (V.kind() == Kind::Unitary) {
      self_.resize(count_);
      for (std::uint64_t n = 0; n < count_; ++n) {
        const Vec v = vec(n);
        self_[n] = static_cast<std::uint8_t>(evaluate_form(V, v, v));
      }
    }
  }

  std::uint64_t count() const { return count_; }
  bool has_self() const { return !self_.empty(); }
  std::uint8_t self(std::uint64_t n) const { return self_[n]; }

  Vec vec(std::uint64_t n) const {
    Vec v(d_);
    for (std::size_t j = 0; j < d_; ++j) v[j] = data()[j * count_ + n];
    return v;
  }

  // beta(v_n, r) for every n.
  std::vector<std::uint8_t> form_against(const Vec& r) const {
    // beta(v, r) = v . w with w = B conj(r)^T.
    const Vec cr = V_.conj(r);
    const Mat& B = V_.gram();
    std::vector<std::uint8_t> w(d_);
    for (std::size_t k = 0; k < d_; ++k) w[k] = static_cast<std::uint8_t>(dot(f_, B.row(k), cr));
    if (table_) return table_->dot_all(w);
    std::vector<std::uint8_t> out(count_, 0);
    std::vector<Elem> mul(f_.order());
    for (std::size_t k = 0; k < d_; ++k) {
      if (w[k] == 0) continue;
      for (Elem x = 0; x < f_.order(); ++x) mul[x] = f_.mul(x, w[k]);
      const std::uint8_t* col = own_.data() + k * count_;
      for (std::uint64_t n = 0; n < count_; ++n) out[n] = static_cast<std::uint8_t>(f_.add(out[n], mul[col[n]]));
    }
    return out;
  }

 private:
  const std::uint8_t* data() const { return table_ ? table_->data() : own_.data(); }

  ClassicalSpace V_;
  Field f_;
  std::size_t d_;
  std::uint64_t count_ = 0;
  std::optional<kernels::VectorTable> table_;
  std::vector<std::uint8_t> own_;
  std::vector<std::uint8_t> self_;
};

// Rows chosen so far, kept with a reduced echelon copy for independence tests.
class Frame {
 public:
  explicit Frame(const Field& f) : f_(f) {}

  std::size_t size() const { return rows_.size(); }
  const Vec& row(std::size_t i) const { return rows_[i]; }

  bool independent(Vec v) const { return !vec_is_zero(reduce(std::move(v))); }

  void push(const Vec& v) {
    Vec r = reduce(v);
    std::size_t p = 0;
    while (r[p] == 0) ++p;
    r = vec_scale(f_, r, f_.inv(r[p]));
    for (std::size_t i = 0; i < ech_.size(); ++i)
      if (ech_[i][p] != 0) ech_[i] = vec_sub(f_, ech_[i], vec_scale(f_, r, ech_[i][p]));
    ech_.push_back(std::move(r));
    piv_.push_back(p);
    rows_.push_back(v);
  }

  void pop() {
    // Rebuild: frames are at most a few rows deep.
    std::vector<Vec> keep(rows_.begin(), rows_.end() - 1);
    rows_.clear();
    ech_.clear();
    piv_.clear();
    for (const auto& v : keep) push(v);
  }

 private:
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < ech_.size(); ++i)
      if (v[piv_[i]] != 0) v = vec_sub(f_, v, vec_scale(f_, ech_[i], v[piv_[i]]));
    return v;
  }

  Field f_;
  std::vector<Vec> rows_;
  std::vector<Vec> ech_;
  std::vector<std::size_t> piv_;
};

// Frame completion: admissible images of basis vector i given the frame.
class Completer {
 public:
  Completer(const ClassicalSpace& V, const Budget& budget) : V_(V), cache_(V, budget) {}

  const ClassicalSpace& space() const { return V_; }

  std::vector<std::uint64_t> candidates(const Frame& frame, const std::vector<std::vector<std::uint8_t>>& forms) const {
    const std::size_t i = frame.size();
    const Mat& B = V_.gram();
    std::vector<std::uint64_t> out;
    const Elem target = V_.kind() == Kind::Orthogonal ? V_.quad()(i, i) : B(i, i);
    for (std::uint64_t n = 0; n < cache_.count(); ++n) {
      if (cache_.has_self() && cache_.self(n) != target) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = forms[j][n] == B(i, j);
      if (ok && frame.independent(cache_.vec(n))) out.push_back(n);
    }
    return out;
  }

  const VectorCache& cache() const { return cache_; }

  Mat to_matrix(const Frame& frame) const {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < frame.size(); ++i) rows.push_back(frame.row(i));
    return Mat::from_rows(V_.field(), V_.dim(), rows);
  }

 private:
  ClassicalSpace V_;
  VectorCache cache_;
};

void enumerate_frames(const Completer& c, Frame& frame, std::vector<std::vector<std::uint8_t>>& forms,
                      std::vector<Mat>& out, std::uint64_t cap) {
  if (frame.size() == c.space().dim()) {
    if (out.size() >= cap) throw BudgetError("isometry enumeration", "more than " + std::to_string(cap), cap);
    out.push_back(c.to_matrix(frame));
    return;
  }
  for (std::uint64_t n : c.candidates(frame, forms)) {
    const Vec v = c.cache().vec(n);
    frame.push(v);
    forms.push_back(c.cache().form_against(v));
    enumerate_frames(c, frame, forms, out, cap);
    forms.pop_back();
    frame.pop();
  }
}

std::uint64_t to_u64(const BigCount& n) { return static_cast<std::uint64_t>(n); }

Sign space_eps(const ClassicalSpace& V) { return V.kind() == Kind::Orthogonal ? V.eps() : Sign::Circ; }

BigCount full_group_order(const ClassicalSpace& V) {
  return group_order(V.kind(), static_cast<unsigned>(V.dim()), V.q(), space_eps(V));
}

Subspace image_of(const ClassicalSpace& V, const Mat& g) {
  return Subspace(V, g - Mat::identity(V.field(), V.dim()));
}

bool duo_rows(const ClassicalSpace& V, const Mat& a, const Mat& b) {
  return determinant(restricted_gram(V, a.stacked(b))) != 0;
}

std::optional<ExactRatio> exact_rho(const DuoKey& key, const Budget& budget) {
  try {
    return compute_rho(key, DuoMethod::Auto, budget).rho;
  } catch (const BudgetError&) {
    return std::nullopt;
  }
}

double to_double(const ExactRatio& r) { return static_cast<double>(r); }

void finish_estimate(Estimate& est) {
  est.estimate = est.samples ? static_cast<double>(est.hits) / static_cast<double>(est.samples) : 0.0;
  est.std_error = est.samples ? std::sqrt(est.estimate * (1 - est.estimate) / static_cast<double>(est.samples)) : 0.0;
  if (est.exact) {
    const double p = to_double(*est.exact);
    const double sigma = est.samples ? std::sqrt(p * (1 - p) / static_cast<double>(est.samples)) : 0.0;
    est.within = std::abs(est.estimate - p) <= 4 * sigma || (sigma == 0 && est.estimate == p);
  }
}

// Runs `body(rng, n)` on kStreams threads, stream s seeded with seed + s and
// given its share of `samples`; returns the summed hits.
template <class Body>
std::uint64_t run_streams(std::uint64_t samples, std::uint64_t seed, Body body) {
  std::vector<std::uint64_t> hits(kStreams, 0);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(kStreams);
  for (unsigned s = 0; s < kStreams; ++s) {
    const std::uint64_t n = samples / kStreams + (s < samples % kStreams ? 1 : 0);
    pool.emplace_back([&, s, n] {
      try {
        std::mt19937_64 rng(seed + s);
        hits[s] = body(rng, n);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

}  // namespace

bool is_isometry(const ClassicalSpace& V, const Mat& g) {
  if (!g.is_square() || g.rows() != V.dim() || !(g.field() == V.field())) return false;
  if (restricted_gram(V, g) != V.gram()) return false;
  if (V.kind() == Kind::Orthogonal && restricted_quad(V, g) != V.quad()) return false;
  return determinant(g) != 0;
}

Isometry::Isometry(ClassicalSpace V, Mat g) : V_(std::move(V)), g_(std::move(g)) {
  if (!is_isometry(V_, g_)) throw StingrayError("matrix is not an isometry of " + V_.describe());
}

bool parity_allowed(Kind kind, unsigned e) {
  switch (kind) {
    case Kind::Unitary: return e % 2 == 1;
    case Kind::Symplectic: return e % 2 == 0;
    case Kind::Orthogonal: return e % 2 == 0 || e == 1;
  }
  return false;
}

StingrayProfile profile(const Isometry& iso) {
  const ClassicalSpace& V = iso.space();
  const Mat& g = iso.matrix();
  const Mat m = g - Mat::identity(V.field(), V.dim());
  StingrayProfile p{g, Subspace(V, m), Subspace(V, kernel(m.transpose())), 0, true, std::nullopt, false, std::nullopt};
  p.e = static_cast<unsigned>(p.U_g.dim());
  if (p.e == 0) return p;
  const Mat& b = p.U_g.basis();
  const Mat bg = b * g;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(coordinates(b, bg.row_vec(i)));
  const Mat r = Mat::from_rows(V.field(), p.e, rows);
  p.trivial_on_U = r.is_identity();
  p.restriction = char_poly(r);
  p.is_stingray = !p.trivial_on_U && is_irreducible(*p.restriction);
  p.type = p.U_g.type();
  return p;
}

std::vector<Subspace> invariant_subspaces(const ClassicalSpace& V, const Mat& g, const Budget& budget) {
  std::vector<Subspace> out;
  for (std::size_t k = 1; k <= V.dim(); ++k)
    for_each_subspace(V.field(), V.dim(), k, budget.subspaces, [&](const Mat& b) {
      if (rank(b.stacked(b * g)) == k) out.emplace_back(V, b);
    });
  return out;
}

std::vector<Subspace> irreducible_nontrivial_invariants(const ClassicalSpace& V, const Mat& g, const Budget& budget) {
  const auto all = invariant_subspaces(V, g, budget);
  const auto inside = [](const Subspace& small, const Subspace& big) {
    for (std::size_t i = 0; i < small.dim(); ++i)
      if (!big.contains(small.basis().row_vec(i))) return false;
    return true;
  };
  std::vector<Subspace> out;
  for (const auto& W : all) {
    if (W.basis() * g == W.basis()) continue;
    bool minimal = true;
    for (const auto& Z : all) {
      if (Z.dim() >= W.dim()) break;
      if (inside(Z, W)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(W);
  }
  return out;
}

StructureReport verify_structure(const StingrayProfile& p, bool search_invariant, const Budget& budget) {
  if (!p.is_stingray) throw StingrayError("verify_structure needs a stingray element");
  const ClassicalSpace& V = p.U_g.ambient();
  const Field& f = V.field();
  StructureReport r;
  const std::uint64_t n = vector_count(f, V.dim(), budget.vectors);
  for (std::uint64_t i = 0; i < n && r.lies_in_image; ++i) {
    const Vec v = nth_vector(f, V.dim(), i);
    if (p.F_g.contains(v)) continue;
    const Vec w = vec_sub(f, vec_mul(v, p.element), v);
    r.lies_in_image = !vec_is_zero(w) && p.U_g.contains(w);
  }
  const Mat cross = p.U_g.basis() * V.gram() * V.conj(p.F_g.basis()).transpose();
  r.perpendicular = cross.is_zero();
  r.nondegenerate = p.U_g.nondegenerate() && p.F_g.nondegenerate();
  r.perp_is_fixed = perp(V, p.U_g) == p.F_g;
  if (V.kind() == Kind::Orthogonal && p.e >= 2) r.minus_type = p.type == Sign::Minus;
  r.parity = parity_allowed(V.kind(), p.e);
  if (search_invariant) {
    const auto irr = irreducible_nontrivial_invariants(V, p.element, budget);
    r.uniqueness_checked = true;
    r.unique_invariant = irr.size() == 1 && irr.front() == p.U_g;
  }
  return r;
}

std::size_t MatHash::operator()(const Mat& m) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Elem x : m.entries()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

IsometryGroup::IsometryGroup(ClassicalSpace V, std::vector<Mat> elements) : V_(std::move(V)), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) inverse_[i] = index_of(inverse(elements_[i]));
}

std::size_t IsometryGroup::index_of(const Mat& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw std::out_of_range("matrix is not in the group");
  return it->second;
}

IsometryGroup IsometryGroup::enumerate(const ClassicalSpace& V, const Budget& budget) {
  const BigCount order = full_group_order(V);
  if (order > budget.group) throw BudgetError("isometry group", to_string(order), budget.group);
  const Completer c(V, budget);
  Frame frame(V.field());
  std::vector<std::vector<std::uint8_t>> forms;
  std::vector<Mat> out;
  out.reserve(to_u64(order));
  enumerate_frames(c, frame, forms, out, budget.group);
  return IsometryGroup(V, std::move(out));
}

struct IsometrySampler::Impl {
  Completer completer;
};

IsometrySampler::IsometrySampler(const ClassicalSpace& V, const Budget& budget)
    : impl_(std::make_unique<Impl>(Impl{Completer(V, budget)})) {}
IsometrySampler::~IsometrySampler() = default;
IsometrySampler::IsometrySampler(IsometrySampler&&) noexcept = default;
IsometrySampler& IsometrySampler::operator=(IsometrySampler&&) noexcept = default;

const ClassicalSpace& IsometrySampler::space() const { return impl_->completer.space(); }

Mat IsometrySampler::sample(std::mt19937_64& rng) const {
  const Completer& c = impl_->completer;
  Frame frame(c.space().field());
  std::vector<std::vector<std::uint8_t>> forms;
  while (frame.size() < c.space().dim()) {
    const auto cand = c.candidates(frame, forms);
    if (cand.empty()) throw std::logic_error("frame completion found no admissible image");
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    const Vec v = c.cache().vec(cand[pick(rng)]);
    frame.push(v);
    forms.push_back(c.cache().form_against(v));
  }
  return c.to_matrix(frame);
}

Isometry sample_isometry(const ClassicalSpace& V, std::uint64_t seed, const Budget& budget) {
  std::mt19937_64 rng(seed);
  return Isometry(V, IsometrySampler(V, budget).sample(rng));
}

std::uint64_t element_order(const Mat& g, std::uint64_t cap) {
  Mat x = g;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (x.is_identity()) return k;
    x = x * g;
  }
  throw StingrayError("element order exceeds cap");
}

ClassCensus class_census(const IsometryGroup& G, const Budget& budget) {
  (void)budget;
  const ClassicalSpace& V = G.space();
  ClassCensus out;
  out.class_of.assign(G.size(), std::nullopt);
  std::vector<std::optional<StingrayProfile>> prof(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    StingrayProfile p = profile(Isometry(V, G[i]));
    if (p.is_stingray) prof[i] = std::move(p);
  }
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!prof[i] || out.class_of[i]) continue;
    const std::size_t id = out.classes.size();
    std::vector<std::size_t> members;
    for (std::size_t h = 0; h < G.size(); ++h) {
      const std::size_t c = G.index_of(G[G.inverse_of(h)] * G[i] * G[h]);
      if (!out.class_of[c]) {
        out.class_of[c] = id;
        members.push_back(c);
      }
    }
    const StingrayProfile& p = *prof[i];
    StingrayClass cls;
    cls.representative = i;
    cls.e = p.e;
    cls.order = element_order(G[i]);
    cls.char_poly = char_poly(G[i]).to_string();
    cls.type = p.type;
    cls.size = members.size();
    cls.parity = parity_allowed(V.kind(), p.e);
    std::map<Subspace, std::uint64_t> fibers;
    for (std::size_t c : members) {
      if (!prof[c]) throw std::logic_error("conjugate of a stingray element is not stingray");
      ++fibers[prof[c]->U_g];
    }
    cls.subspaces = fibers.size();
    cls.fiber = fibers.begin()->second;
    cls.fiber_constant = true;
    for (const auto& [U, n] : fibers) cls.fiber_constant = cls.fiber_constant && n == cls.fiber;
    CensusKey key{V.kind(), static_cast<unsigned>(V.dim()), V.q(), space_eps(V), p.e,
                  V.kind() == Kind::Orthogonal ? p.type : std::nullopt};
    try {
      key.validate();
      cls.orbit_count_matches = formula_count(key) == cls.subspaces;
    } catch (const CensusError&) {
    }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

DuoKey duo_key_for(const ClassicalSpace& V, const Subspace& U, const Subspace& U2) {
  DuoKey k;
  k.kind = V.kind();
  k.d = static_cast<unsigned>(V.dim());
  k.q = V.q();
  k.eps = space_eps(V);
  k.e = static_cast<unsigned>(U.dim());
  k.e2 = static_cast<unsigned>(U2.dim());
  if (V.kind() == Kind::Orthogonal) {
    k.sigma = U.type();
    k.sigma2 = U2.type();
  }
  return k;
}

DuoRate stingray_duo_rate(const IsometryGroup& G, const ClassCensus& census, const ClassSelection& first,
                          const ClassSelection& second, const Budget& budget) {
  if (first.e < second.e) throw StingrayError("stingray duos need e >= e'");
  const ClassicalSpace& V = G.space();
  const auto select = [&](const ClassSelection& s) {
    if (s.class_index && (*s.class_index >= census.classes.size() || census.classes[*s.class_index].e != s.e))
      throw StingrayError("class index does not name an e-stingray class");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (!census.class_of[i]) continue;
      const std::size_t c = *census.class_of[i];
      const bool take = s.class_index ? c == *s.class_index : census.classes[c].e == s.e && census.classes[c].parity;
      if (take) out.push_back(i);
    }
    return out;
  };
  const auto A = select(first), B = select(second);
  DuoRate r;
  if (A.empty() || B.empty()) {
    r.empty = true;
    r.rate = 0;
    return r;
  }
  const BigCount pairs = BigCount(A.size()) * B.size();
  if (pairs > budget.pairs) throw BudgetError("stingray pair scan", to_string(pairs), budget.pairs);
  // Index the image subspaces so each subspace pair is tested once.
  std::map<Subspace, std::size_t> ids;
  std::vector<Mat> bases;
  const auto images = [&](const std::vector<std::size_t>& els) {
    std::vector<std::size_t> out;
    for (std::size_t i : els) {
      const Subspace U = image_of(V, G[i]);
      auto [it, fresh] = ids.emplace(U, bases.size());
      if (fresh) bases.push_back(U.basis());
      out.push_back(it->second);
    }
    return out;
  };
  const auto ia = images(A), ib = images(B);
  std::vector<std::int8_t> memo(bases.size() * bases.size(), -1);
  for (std::size_t a : ia)
    for (std::size_t b : ib) {
      std::int8_t& m = memo[a * bases.size() + b];
      if (m < 0) m = duo_rows(V, bases[a], bases[b]) ? 1 : 0;
      r.duos += static_cast<std::uint64_t>(m);
    }
  r.pairs = to_u64(pairs);
  r.rate = ExactRatio(BigCount(r.duos), pairs);
  DuoKey key = duo_key_for(V, image_of(V, G[A.front()]), image_of(V, G[B.front()]));
  try {
    key.validate();
    r.key = key;
    r.rho = compute_rho(key, DuoMethod::Auto, budget).rho;
    r.equal = r.rate == *r.rho;
  } catch (const DuoError&) {
  }
  return r;
}

Mat stingray_element(const ClassicalSpace& V, unsigned e, std::optional<Sign> sigma, std::uint64_t seed,
                     const Budget& budget) {
  const Subspace U = representative(V, e, sigma, budget);
  const ClassicalSpace R = restrict_to(V, U);
  const IsometrySampler sampler(R, budget);
  std::mt19937_64 rng(seed);
  const Mat P = U.basis().stacked(perp(V, U).basis());
  const Mat Pinv = inverse(P);
  for (std::uint64_t k = 0; k < budget.samples; ++k) {
    const Mat h = sampler.sample(rng);
    if (h.is_identity() || !is_irreducible(char_poly(h))) continue;
    Mat D = Mat::identity(V.field(), V.dim());
    for (std::size_t i = 0; i < e; ++i)
      for (std::size_t j = 0; j < e; ++j) D(i, j) = h(i, j);
    Mat g = Pinv * D * P;
    const StingrayProfile p = profile(Isometry(V, g));
    if (!p.is_stingray || !(p.U_g == U)) throw std::logic_error("constructed element is not a stingray on U");
    return g;
  }
  throw StingrayError("no " + std::to_string(e) + "-stingray element found on a subspace of that type");
}

Estimate stingray_duo_rate_sampled(const ClassicalSpace& V, const Mat& g, const Mat& g2, std::uint64_t samples,
                                   std::uint64_t seed, const Budget& budget) {
  const StingrayProfile p = profile(Isometry(V, g)), p2 = profile(Isometry(V, g2));
  if (!p.is_stingray || !p2.is_stingray) throw StingrayError("class representatives must be stingray elements");
  if (p.e < p2.e) throw StingrayError("stingray duos need e >= e'");
  const IsometrySampler sampler(V, budget);
  const Mat one = Mat::identity(V.field(), V.dim());
  Estimate est;
  est.samples = samples;
  est.seed = seed;
  est.hits = run_streams(samples, seed, [&](std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const Mat h = sampler.sample(rng), h2 = sampler.sample(rng);
      const Mat c = inverse(h) * g * h, c2 = inverse(h2) * g2 * h2;
      hits += duo_rows(V, image(c - one), image(c2 - one));
    }
    return hits;
  });
  DuoKey key = duo_key_for(V, p.U_g, p2.U_g);
  try {
    key.validate();
    est.exact = exact_rho(key, budget);
  } catch (const DuoError&) {
  }
  finish_estimate(est);
  return est;
}

TSetRate t_set_rate(const IsometryGroup& G, const Subspace& U, const Subspace& U2, const Budget& budget) {
  const ClassicalSpace& V = G.space();
  TSetRate r;
  r.key = duo_key_for(V, U, U2);
  r.key.validate();
  for (const Mat& h : G.elements()) r.hits += is_duo_by_complement(V, U, Subspace(V, U2.basis() * h));
  r.total = G.size();
  r.rate = ExactRatio(BigCount(r.hits), BigCount(r.total));
  r.rho = exact_rho(r.key, budget);
  r.equal = r.rho && *r.rho == r.rate;
  r.bound_applies = !(V.kind() == Kind::Orthogonal && V.q() == 2);
  r.above_bound = r.rate > ExactRatio(1, 20);
  return r;
}

TSetRate t_set_rate_sampled(const ClassicalSpace& V, const Subspace& U, const Subspace& U2, std::uint64_t samples,
                            std::uint64_t seed, const Budget& budget) {
  TSetRate r;
  r.exact_mode = false;
  r.key = duo_key_for(V, U, U2);
  r.key.validate();
  const IsometrySampler sampler(V, budget);
  Estimate& est = r.sampled;
  est.samples = samples;
  est.seed = seed;
  est.hits = run_streams(samples, seed, [&](std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < n; ++k) hits += is_duo_by_complement(V, U, Subspace(V, U2.basis() * sampler.sample(rng)));
    return hits;
  });
  est.exact = r.rho = exact_rho(r.key, budget);
  finish_estimate(est);
  r.total = samples;
  r.hits = est.hits;
  r.bound_applies = !(V.kind() == Kind::Orthogonal && V.q() == 2);
  r.above_bound = est.estimate > 0.05;
  return r;
}

}  // namespace nondeg
